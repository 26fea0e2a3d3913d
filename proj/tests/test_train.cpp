#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "hmmsnn/errors.hpp"
#include "hmmsnn/hmm.hpp"
#include "hmmsnn/rng.hpp"
#include "hmmsnn/synthetic.hpp"
#include "hmmsnn/train.hpp"

using namespace hmmsnn;

namespace {

std::vector<std::vector<spike_raster>> make_samples(const std::string& label, std::size_t count,
                                                    std::uint64_t seed) {
    std::vector<std::vector<spike_raster>> samples;
    for (std::size_t s = 0; s < count; ++s)
        samples.push_back(synthetic::make_sequence(label, derive_seed(seed, 0, s)));
    return samples;
}

// Per-input weight average over the units, each weighted by how often it
// fired. Units that never win keep their (sign-flippable) initialization and
// a bias pinned at the -1 clip, so the plain bias-scaled average does not
// reflect what was learned; the firing units do.
std::vector<double> fire_weighted_weights(const wta_network& net) {
    std::vector<double> avg(net.num_inputs, 0.0);
    double total = 0.0;
    for (std::size_t k = 0; k < net.num_outputs; ++k) {
        const double wins = net.fire_counts[k] - 1.0;
        for (std::size_t i = 0; i < net.num_inputs; ++i)
            avg[i] += wins * net.weight(k, i);
        total += wins;
    }
    for (double& v : avg)
        v /= total;
    return avg;
}

} // namespace

TEST_CASE("train_state with zero iterations leaves the network unchanged") {
    wta_network net = init_network(80, 8, 1.0, 5);
    const wta_network before = net;
    std::vector<spike_raster> data = {synthetic::make_subpattern('A', 1)};
    train_state(net, data, 0, 9);
    CHECK(net.weights == before.weights);
    CHECK(net.bias == before.bias);
    CHECK(net.fire_counts == before.fire_counts);
}

TEST_CASE("training on sub-pattern A concentrates weight on the informative inputs") {
    wta_network net = init_network(80, 8, 1.0, 5);
    std::vector<spike_raster> data;
    for (int s = 0; s < 10; ++s)
        data.push_back(synthetic::make_subpattern('A', 100 + s));
    train_state(net, data, 10, 9);
    const std::vector<double> avg = fire_weighted_weights(net);
    double info = 0.0, bg = 0.0;
    for (std::size_t i = 0; i < 20; ++i)
        info += avg[i];
    for (std::size_t i = 20; i < 80; ++i)
        bg += avg[i];
    CHECK(info / 20.0 > bg / 60.0);
}

TEST_CASE("train_state rejects mismatched raster widths") {
    wta_network net = init_network(40, 8, 1.0, 5);
    std::vector<spike_raster> data = {synthetic::make_subpattern('A', 1)}; // 80 neurons
    CHECK_THROWS_AS(train_state(net, data, 1, 9), invalid_input_error);
}

TEST_CASE("class model trains state p on segment p only") {
    // train an ABCD model, then check each state's weights peak on the
    // informative block of its own letter
    train_config cfg;
    cfg.iterations = 10;
    cfg.eta0 = 1.0;
    const hmm_model model = train_class_model("ABCD", make_samples("ABCD", 10, 3), cfg, 0);
    REQUIRE(model.num_states() == 4);
    const std::string letters = "ABCD";
    for (std::size_t p = 0; p < 4; ++p) {
        const std::vector<double> avg = fire_weighted_weights(model.states[p]);
        const std::size_t start = synthetic::informative_block_start(letters[p]);
        double best_block = -std::numeric_limits<double>::infinity();
        std::size_t best_start = 0;
        for (std::size_t b = 0; b < 80; b += 20) {
            double sum = 0.0;
            for (std::size_t i = b; i < b + 20; ++i)
                sum += avg[i];
            if (sum > best_block) {
                best_block = sum;
                best_start = b;
            }
        }
        CHECK(best_start == start);
    }
}

TEST_CASE("zero iterations produce an initialization-only model") {
    train_config cfg;
    cfg.iterations = 0;
    const hmm_model model = train_class_model("ABCD", make_samples("ABCD", 2, 7), cfg, 5);
    for (std::size_t p = 0; p < 4; ++p) {
        for (double w : model.states[p].weights)
            CHECK((w >= -0.1 && w <= 0.1)); // untouched initialization range
        for (double b : model.states[p].bias)
            CHECK(b == 0.0);
        for (double c : model.states[p].fire_counts)
            CHECK(c == 1.0);
    }
}

TEST_CASE("parallel state training matches sequential training") {
    train_config cfg;
    cfg.iterations = 3;
    const auto samples = make_samples("ABCD", 5, 17);
    const hmm_model seq = train_class_model("ABCD", samples, cfg, 2, 1);
    const hmm_model par = train_class_model("ABCD", samples, cfg, 2, 8);
    REQUIRE(seq.num_states() == par.num_states());
    for (std::size_t p = 0; p < seq.num_states(); ++p) {
        CHECK(seq.states[p].weights == par.states[p].weights);
        CHECK(seq.states[p].bias == par.states[p].bias);
        CHECK(seq.states[p].fire_counts == par.states[p].fire_counts);
    }
}

TEST_CASE("shared-letter training is independent of job count and class order") {
    train_config cfg;
    cfg.iterations = 3;
    const std::vector<std::string> classes = {"ABCD", "DCBA"};
    std::vector<std::vector<std::vector<spike_raster>>> samples = {
        make_samples("ABCD", 4, 5), make_samples("DCBA", 4, 6)};
    const auto m1 = train_synthetic_models(classes, samples, cfg, 1);
    const auto m8 = train_synthetic_models(classes, samples, cfg, 8);
    REQUIRE(m1.size() == 2);
    for (std::size_t c = 0; c < 2; ++c)
        for (std::size_t p = 0; p < 4; ++p)
            CHECK(m1[c].states[p].weights == m8[c].states[p].weights);
    // both classes use the same letters, so state p of ABCD equals state 3-p of DCBA
    for (std::size_t p = 0; p < 4; ++p)
        CHECK(m1[0].states[p].weights == m1[1].states[3 - p].weights);
}

TEST_CASE("evaluate produces a column-normalized posterior matrix") {
    train_config cfg;
    cfg.iterations = 5;
    const std::vector<std::string> classes = {"ABCD", "DCBA"};
    std::vector<std::vector<std::vector<spike_raster>>> samples = {
        make_samples("ABCD", 8, 21), make_samples("DCBA", 8, 22)};
    const auto models = train_synthetic_models(classes, samples, cfg);

    std::vector<segmented_observation> items;
    std::vector<std::size_t> desired;
    for (std::size_t c = 0; c < 2; ++c)
        for (int s = 0; s < 10; ++s) {
            items.push_back(make_subpattern_observation(
                synthetic::make_sequence(classes[c], derive_seed(77, c, s))));
            desired.push_back(c);
        }
    const eval_report rep = evaluate(models, items, desired);
    for (std::size_t c = 0; c < 2; ++c) {
        double col = 0.0;
        for (std::size_t r = 0; r < 2; ++r)
            col += rep.posterior(r, c);
        CHECK(col == doctest::Approx(1.0).epsilon(1e-9));
    }
    CHECK(rep.accuracy >= 0.0);
    CHECK(rep.accuracy <= 1.0);

    CHECK_THROWS_AS(evaluate({models[0]}, items, desired), invalid_input_error);
}

TEST_CASE("identical models give a uniform posterior matrix") {
    train_config cfg;
    cfg.iterations = 2;
    const hmm_model m = train_class_model("ABCD", make_samples("ABCD", 3, 31), cfg, 0);
    hmm_model m2 = m;
    m2.label = "COPY";
    std::vector<segmented_observation> items;
    std::vector<std::size_t> desired;
    for (int s = 0; s < 5; ++s) {
        items.push_back(make_subpattern_observation(synthetic::make_sequence("ABCD", 900 + s)));
        desired.push_back(0);
    }
    const eval_report rep = evaluate({m, m2}, items, desired);
    CHECK(rep.posterior(0, 0) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(rep.posterior(1, 0) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("prior ratio sweep has degenerate endpoints and a monotone staircase") {
    train_config cfg;
    cfg.iterations = 5;
    const std::vector<std::string> classes = {"ABCD", "DCBA"};
    std::vector<std::vector<std::vector<spike_raster>>> samples = {
        make_samples("ABCD", 8, 41), make_samples("DCBA", 8, 42)};
    const auto models = train_synthetic_models(classes, samples, cfg);

    std::vector<segmented_observation> items;
    std::vector<bool> positive;
    for (std::size_t c = 0; c < 2; ++c)
        for (int s = 0; s < 15; ++s) {
            items.push_back(make_subpattern_observation(
                synthetic::make_sequence(classes[c], derive_seed(99, c, s))));
            positive.push_back(c == 1);
        }

    std::vector<double> ratios = {0.0};
    for (double lr = -700.0; lr <= 700.0; lr += 70.0)
        ratios.push_back(std::exp(lr));
    ratios.push_back(std::numeric_limits<double>::infinity());

    const auto points = prior_ratio_sweep(models[0], models[1], items, positive, ratios);
    REQUIRE(points.size() == ratios.size());
    CHECK(points.front().false_positive_rate == doctest::Approx(1.0));
    CHECK(points.front().true_positive_rate == doctest::Approx(1.0));
    CHECK(points.back().false_positive_rate == doctest::Approx(0.0));
    CHECK(points.back().true_positive_rate == doctest::Approx(0.0));
    for (std::size_t i = 1; i < points.size(); ++i) {
        CHECK(points[i].false_positive_rate <= points[i - 1].false_positive_rate);
        CHECK(points[i].true_positive_rate <= points[i - 1].true_positive_rate);
    }

    CHECK_THROWS_AS(prior_ratio_sweep(models[0], models[1], items, positive, {-1.0}),
                    invalid_input_error);
}

TEST_CASE("config validation rejects non-positive parameters") {
    train_config cfg;
    cfg.eta0 = -0.5;
    CHECK_THROWS_AS(cfg.validate(), invalid_input_error);
    cfg = train_config{};
    cfg.num_states = 0;
    CHECK_THROWS_AS(cfg.validate(), invalid_input_error);
    cfg = train_config{};
    CHECK_NOTHROW(cfg.validate());
}
