#include "hmmsnn/train.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <map>
#include <numeric>

#include "hmmsnn/errors.hpp"
#include "hmmsnn/rng.hpp"

namespace hmmsnn {

namespace {

// Runs fn(p) for p in [0, count), possibly on worker threads. Results are
// written by index, so the outcome is independent of scheduling.
void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& fn) {
    if (jobs <= 1 || count <= 1) {
        for (std::size_t p = 0; p < count; ++p)
            fn(p);
        return;
    }
    std::vector<std::future<void>> futures;
    futures.reserve(count);
    for (std::size_t p = 0; p < count; ++p)
        futures.push_back(std::async(std::launch::async, fn, p));
    for (auto& f : futures)
        f.get();
}

} // namespace

void train_config::validate() const {
    if (num_states == 0 || num_outputs == 0 || num_inputs == 0 || duration_ms == 0 || iterations > 1u << 24)
        throw invalid_input_error("train_config: counts must be positive");
    if (eta0 <= 0.0 || r_max <= 0.0)
        throw invalid_input_error("train_config: eta0 and r_max must be positive");
}

void train_state(wta_network& net, const std::vector<spike_raster>& segment_data,
                 std::size_t iterations, std::uint64_t seed, std::size_t sigma_ms) {
    for (const spike_raster& raster : segment_data)
        if (raster.num_neurons != net.num_inputs)
            throw invalid_input_error("train_state: raster neuron count does not match network inputs");

    rng gen(seed);
    std::vector<std::size_t> order(segment_data.size());
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t it = 0; it < iterations; ++it) {
        gen.shuffle(order);
        for (std::size_t idx : order) {
            const spike_raster& raster = segment_data[idx];
            for (std::size_t t = 0; t < raster.num_steps; ++t) {
                const epsp_values e = epsp_vector(raster, t, sigma_ms);
                const responsibility_vector resp = responsibility(net, e);
                const std::size_t winner = select_winner(resp, gen);
                stdp_update(net, winner, e);
            }
        }
    }
}

namespace {

hmm_model train_model_from_segments(const std::string& label,
                                    const std::vector<std::vector<spike_raster>>& per_state_data,
                                    const train_config& config, std::uint64_t class_id,
                                    std::size_t jobs) {
    hmm_model model;
    model.label = label;
    model.sigma_ms = config.sigma_ms;
    model.states.resize(config.num_states,
                        wta_network{}); // filled below
    parallel_for(config.num_states, jobs, [&](std::size_t p) {
        wta_network net = init_network(config.num_inputs, config.num_outputs, config.eta0,
                                       derive_seed(config.seed, class_id, 2 * p));
        train_state(net, per_state_data[p], config.iterations,
                    derive_seed(config.seed, class_id, 2 * p + 1), config.sigma_ms);
        model.states[p] = std::move(net);
    });
    return model;
}

} // namespace

hmm_model train_class_model(const std::string& label,
                            const std::vector<std::vector<spike_raster>>& samples,
                            const train_config& config, std::uint64_t class_id, std::size_t jobs) {
    config.validate();
    if (samples.empty())
        throw invalid_input_error("train_class_model: need at least one sample");
    std::vector<std::vector<spike_raster>> per_state(config.num_states);
    for (const auto& sample : samples) {
        if (sample.size() != config.num_states)
            throw invalid_input_error("train_class_model: sample segment count does not match P");
        for (std::size_t p = 0; p < config.num_states; ++p)
            per_state[p].push_back(sample[p]);
    }
    return train_model_from_segments(label, per_state, config, class_id, jobs);
}

std::vector<hmm_model> train_synthetic_models(
    const std::vector<std::string>& class_labels,
    const std::vector<std::vector<std::vector<spike_raster>>>& samples_per_class,
    const train_config& config, std::size_t jobs) {
    config.validate();
    if (class_labels.empty() || class_labels.size() != samples_per_class.size())
        throw invalid_input_error("train_synthetic_models: class/sample count mismatch");

    // Pool every segment under its letter, across classes. std::map keeps the
    // letters in a fixed order, so indexing below is deterministic.
    std::map<char, std::vector<spike_raster>> pool;
    for (std::size_t c = 0; c < class_labels.size(); ++c) {
        const std::string& label = class_labels[c];
        if (label.size() != config.num_states)
            throw invalid_input_error("train_synthetic_models: label length does not match P");
        for (const auto& sample : samples_per_class[c]) {
            if (sample.size() != config.num_states)
                throw invalid_input_error("train_synthetic_models: sample segment count does not match P");
            for (std::size_t p = 0; p < config.num_states; ++p)
                pool[label[p]].push_back(sample[p]);
        }
    }

    std::vector<char> letters;
    for (const auto& [letter, data] : pool)
        letters.push_back(letter);
    std::map<char, wta_network> nets;
    for (char letter : letters)
        nets.emplace(letter, wta_network{});
    parallel_for(letters.size(), jobs, [&](std::size_t li) {
        const char letter = letters[li];
        wta_network net = init_network(config.num_inputs, config.num_outputs, config.eta0,
                                       derive_seed(config.seed, 77, static_cast<std::uint64_t>(letter)));
        train_state(net, pool.at(letter), config.iterations,
                    derive_seed(config.seed, 88, static_cast<std::uint64_t>(letter)), config.sigma_ms);
        nets.at(letter) = std::move(net);
    });

    std::vector<hmm_model> models;
    for (const std::string& label : class_labels) {
        hmm_model m;
        m.label = label;
        m.sigma_ms = config.sigma_ms;
        for (char letter : label)
            m.states.push_back(nets.at(letter));
        models.push_back(std::move(m));
    }
    return models;
}

hmm_model train_class_model_speech(const std::string& label,
                                   const std::vector<frame_sequence>& samples,
                                   const train_config& config, std::uint64_t class_id,
                                   std::size_t jobs) {
    config.validate();
    if (samples.empty())
        throw invalid_input_error("train_class_model_speech: need at least one sample");
    std::vector<std::vector<spike_raster>> per_state(config.num_states);
    for (std::size_t s = 0; s < samples.size(); ++s) {
        const frame_sequence& frames = samples[s];
        if (frames.num_frames < config.num_states)
            throw invalid_input_error("train_class_model_speech: sample has fewer frames than states");
        const segment_boundaries bounds = auto_segment(frames, config.num_states);
        for (std::size_t p = 0; p < config.num_states; ++p) {
            for (std::size_t m = bounds.segment_begin(p); m < bounds.segment_end(p); ++m) {
                const rate_vector rates = to_rates(frames.frame_vec(m), config.r_max);
                per_state[p].push_back(
                    encode_poisson(rates, config.duration_ms, derive_seed(config.seed, class_id, (s << 20) | m)));
            }
        }
    }
    return train_model_from_segments(label, per_state, config, class_id, jobs);
}

eval_report evaluate(const std::vector<hmm_model>& models,
                     const std::vector<segmented_observation>& items,
                     const std::vector<std::size_t>& desired) {
    if (models.size() < 2)
        throw invalid_input_error("evaluate: need at least two models");
    if (items.size() != desired.size())
        throw invalid_input_error("evaluate: item/label count mismatch");

    eval_report report;
    for (const hmm_model& m : models)
        report.labels.push_back(m.label);
    const std::size_t C = models.size();
    report.posterior_matrix.assign(C * C, 0.0);
    std::vector<std::size_t> per_class_counts(C, 0);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < items.size(); ++i) {
        const classify_result res = classify(items[i], models);
        const std::size_t c = desired[i];
        if (c >= C)
            throw invalid_input_error("evaluate: desired class index out of range");
        for (std::size_t r = 0; r < C; ++r)
            report.posterior_matrix[r * C + c] += res.posteriors[r];
        ++per_class_counts[c];
        if (res.winner == c)
            ++correct;
    }
    for (std::size_t c = 0; c < C; ++c)
        if (per_class_counts[c] > 0)
            for (std::size_t r = 0; r < C; ++r)
                report.posterior_matrix[r * C + c] /= static_cast<double>(per_class_counts[c]);
    report.accuracy = items.empty() ? 0.0 : static_cast<double>(correct) / static_cast<double>(items.size());
    return report;
}

std::vector<roc_point> prior_ratio_sweep(const hmm_model& model0, const hmm_model& model1,
                                         const std::vector<segmented_observation>& items,
                                         const std::vector<bool>& positive,
                                         const std::vector<double>& ratios) {
    if (items.size() != positive.size())
        throw invalid_input_error("prior_ratio_sweep: item/label count mismatch");
    // Ratio 0 (everything positive) and +infinity (everything negative) are
    // valid limit points of the sweep.
    for (double r : ratios)
        if (r < 0.0 || std::isnan(r))
            throw invalid_input_error("prior_ratio_sweep: ratios must be >= 0");

    std::vector<double> margin(items.size()); // log L1 - log L0
    std::size_t num_pos = 0, num_neg = 0;
    for (std::size_t i = 0; i < items.size(); ++i) {
        margin[i] = log_prob(model1, items[i]) - log_prob(model0, items[i]);
        if (positive[i])
            ++num_pos;
        else
            ++num_neg;
    }

    std::vector<roc_point> points;
    points.reserve(ratios.size());
    for (double ratio : ratios) {
        const double threshold = std::log(ratio);
        std::size_t tp = 0, fp = 0, correct = 0;
        for (std::size_t i = 0; i < items.size(); ++i) {
            const bool predict_positive = margin[i] > threshold;
            if (predict_positive && positive[i])
                ++tp;
            if (predict_positive && !positive[i])
                ++fp;
            if (predict_positive == static_cast<bool>(positive[i]))
                ++correct;
        }
        roc_point pt;
        pt.prior_ratio = ratio;
        pt.true_positive_rate = num_pos ? static_cast<double>(tp) / static_cast<double>(num_pos) : 0.0;
        pt.false_positive_rate = num_neg ? static_cast<double>(fp) / static_cast<double>(num_neg) : 0.0;
        pt.accuracy = items.empty() ? 0.0 : static_cast<double>(correct) / static_cast<double>(items.size());
        points.push_back(pt);
    }
    return points;
}

} // namespace hmmsnn
