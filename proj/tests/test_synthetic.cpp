#include <doctest.h>

#include <cmath>
#include <set>

#include "hmmsnn/errors.hpp"
#include "hmmsnn/synthetic.hpp"

using namespace hmmsnn;

TEST_CASE("informative blocks are disjoint and cover all neurons") {
    std::set<std::size_t> starts;
    for (char label : {'A', 'B', 'C', 'D'})
        starts.insert(synthetic::informative_block_start(label));
    CHECK(starts == std::set<std::size_t>{0, 20, 40, 60});
    CHECK(synthetic::informative_block_start('A') == 0);
    CHECK_THROWS_AS(synthetic::informative_block_start('X'), invalid_input_error);
}

TEST_CASE("sub-pattern rates place 340 Hz on the informative block") {
    const rate_vector rates = synthetic::subpattern_rates('B');
    REQUIRE(rates.rates.size() == 80);
    int informative = 0, background = 0;
    for (std::size_t i = 0; i < 80; ++i) {
        if (i >= 20 && i < 40) {
            CHECK(rates.rates[i] == 340.0);
            ++informative;
        } else {
            CHECK(rates.rates[i] == 50.0);
            ++background;
        }
    }
    CHECK(informative == 20);
    CHECK(background == 60);
}

TEST_CASE("sub-pattern rasters have the expected shape and spike budget") {
    const spike_raster r = synthetic::make_subpattern('A', 5);
    CHECK(r.num_neurons == 80);
    CHECK(r.num_steps == 20);

    // analytic mean count: 20 neurons * 20 * (1 - e^-0.34) + 60 * 20 * (1 - e^-0.05)
    const double per_info = 20.0 * (1.0 - std::exp(-0.34));
    const double per_bg = 20.0 * (1.0 - std::exp(-0.05));
    const double expected = 20.0 * per_info + 60.0 * per_bg;
    // variance of a sum of independent Bernoulli counts
    const double var = 20.0 * 20.0 * (1.0 - std::exp(-0.34)) * std::exp(-0.34) +
                       60.0 * 20.0 * (1.0 - std::exp(-0.05)) * std::exp(-0.05);
    const int trials = 1000;
    double total = 0.0;
    for (int s = 0; s < trials; ++s) {
        const spike_raster raster = synthetic::make_subpattern('A', 9000 + s);
        for (std::uint8_t v : raster.spikes)
            total += v;
    }
    const double se = std::sqrt(var / trials);
    CHECK(std::abs(total / trials - expected) <= 3.0 * se);
}

TEST_CASE("different seeds give different rasters") {
    const spike_raster a = synthetic::make_subpattern('C', 1);
    const spike_raster b = synthetic::make_subpattern('C', 2);
    const spike_raster a2 = synthetic::make_subpattern('C', 1);
    CHECK(a.spikes != b.spikes);
    CHECK(a.spikes == a2.spikes);
}

TEST_CASE("sequences concatenate independently sampled sub-patterns") {
    const std::vector<spike_raster> seq = synthetic::make_sequence("ABCD", 7);
    REQUIRE(seq.size() == 4);
    std::size_t total_ms = 0;
    for (const spike_raster& r : seq) {
        CHECK(r.num_neurons == 80);
        total_ms += r.num_steps;
    }
    CHECK(total_ms == 80);

    const std::vector<spike_raster> single = synthetic::make_sequence("A", 7);
    CHECK(single.size() == 1);

    const std::vector<spike_raster> abab = synthetic::make_sequence("ABAB", 7);
    CHECK(abab[0].spikes != abab[2].spikes); // same spec, independent draws

    CHECK_THROWS_AS(synthetic::make_sequence("ABXE", 7), invalid_input_error);
    CHECK_THROWS_AS(synthetic::make_sequence("", 7), invalid_input_error);
}

TEST_CASE("informative block carries most of the spikes") {
    for (char label : {'A', 'B', 'C', 'D'}) {
        const std::size_t start = synthetic::informative_block_start(label);
        const spike_raster r = synthetic::make_subpattern(label, 123);
        double info_rate = 0.0, bg_rate = 0.0;
        for (std::size_t n = 0; n < 80; ++n) {
            int count = 0;
            for (std::size_t t = 0; t < 20; ++t)
                count += r.at(n, t);
            if (n >= start && n < start + 20)
                info_rate += count;
            else
                bg_rate += count;
        }
        CHECK(info_rate / 20.0 > bg_rate / 60.0);
    }
}
