#include "hmmsnn/hmm.hpp"

#include <algorithm>
#include <cmath>

#include "hmmsnn/errors.hpp"
#include "hmmsnn/rng.hpp"

namespace hmmsnn {

namespace {

// Sum of log emission probabilities of one raster under one state network.
double segment_log_emission(const wta_network& net, const spike_raster& raster, std::size_t sigma_ms) {
    if (raster.num_neurons != net.num_inputs)
        throw invalid_input_error("hmm: raster neuron count does not match network inputs");
    double lp = 0.0;
    for (std::size_t t = 0; t < raster.num_steps; ++t)
        lp += log_snn_prob(net, epsp_vector(raster, t, sigma_ms));
    return lp;
}

double transitions_log_prob(const hmm_model& model) {
    return std::log(model.initial_prob) +
           static_cast<double>(model.num_states() - 1) * std::log(model.advance_prob);
}

} // namespace

segmented_observation make_subpattern_observation(std::vector<spike_raster> rasters) {
    segmented_observation obs;
    obs.kind = segmented_observation::kind_t::subpattern;
    obs.segments.reserve(rasters.size());
    for (auto& r : rasters)
        obs.segments.push_back({std::move(r)});
    return obs;
}

segmented_observation make_speech_observation(const frame_sequence& frames,
                                              const segment_boundaries& boundaries,
                                              double r_max, std::size_t duration_ms,
                                              std::uint64_t seed) {
    segmented_observation obs;
    obs.kind = segmented_observation::kind_t::speech;
    obs.segments.resize(boundaries.num_segments());
    for (std::size_t p = 0; p < boundaries.num_segments(); ++p) {
        for (std::size_t m = boundaries.segment_begin(p); m < boundaries.segment_end(p); ++m) {
            const rate_vector rates = to_rates(frames.frame_vec(m), r_max);
            obs.segments[p].push_back(encode_poisson(rates, duration_ms, derive_seed(seed, m)));
        }
        if (obs.segments[p].empty())
            throw invalid_input_error("make_speech_observation: empty segment");
    }
    return obs;
}

double log_prob_subpattern(const hmm_model& model, const std::vector<spike_raster>& rasters) {
    if (rasters.size() != model.num_states())
        throw invalid_input_error("log_prob_subpattern: segment count does not match state count");
    double lp = transitions_log_prob(model);
    for (std::size_t p = 0; p < rasters.size(); ++p)
        lp += segment_log_emission(model.states[p], rasters[p], model.sigma_ms);
    return lp;
}

double log_prob_speech(const hmm_model& model, const frame_sequence& frames,
                       const segment_boundaries& boundaries, double r_max, std::uint64_t seed) {
    const segmented_observation obs =
        make_speech_observation(frames, boundaries, r_max, 20, seed);
    return log_prob(model, obs);
}

double log_prob(const hmm_model& model, const segmented_observation& obs) {
    if (obs.segments.size() != model.num_states())
        throw invalid_input_error("log_prob: segment count does not match state count");
    double lp = transitions_log_prob(model);
    const bool speech = obs.kind == segmented_observation::kind_t::speech;
    for (std::size_t p = 0; p < obs.segments.size(); ++p) {
        if (obs.segments[p].empty())
            throw invalid_input_error("log_prob: empty segment");
        for (const spike_raster& raster : obs.segments[p]) {
            if (speech)
                lp += std::log(model.self_prob);
            lp += segment_log_emission(model.states[p], raster, model.sigma_ms);
        }
    }
    return lp;
}

classify_result classify(const segmented_observation& obs, const std::vector<hmm_model>& models) {
    if (models.size() < 2)
        throw invalid_input_error("classify: need at least two models");
    classify_result res;
    res.log_probs.reserve(models.size());
    for (const hmm_model& model : models)
        res.log_probs.push_back(log_prob(model, obs));

    const double m = *std::max_element(res.log_probs.begin(), res.log_probs.end());
    double z = 0.0;
    res.posteriors.resize(models.size());
    for (std::size_t c = 0; c < models.size(); ++c) {
        res.posteriors[c] = std::exp(res.log_probs[c] - m);
        z += res.posteriors[c];
    }
    for (double& p : res.posteriors)
        p /= z;
    res.winner = 0;
    for (std::size_t c = 1; c < models.size(); ++c)
        if (res.log_probs[c] > res.log_probs[res.winner])
            res.winner = c;
    return res;
}

} // namespace hmmsnn
