#include <doctest.h>

#include <cmath>
#include <sstream>

#include "hmmsnn/errors.hpp"
#include "hmmsnn/spike.hpp"

using namespace hmmsnn;

TEST_CASE("zero rates give an all-zero raster") {
    rate_vector rates{std::vector<double>(5, 0.0)};
    const spike_raster r = encode_poisson(rates, 20, 1);
    CHECK(r.num_neurons == 5);
    CHECK(r.num_steps == 20);
    for (std::uint8_t s : r.spikes)
        CHECK(s == 0);
}

TEST_CASE("mean spike count at 340 Hz matches the Bernoulli approximation") {
    // expected per-step p = 1 - exp(-0.34), so 20 steps average ~5.77 spikes
    const double expected = 20.0 * (1.0 - std::exp(-0.34));
    rate_vector rates{{340.0}};
    double total = 0.0;
    const int trials = 10000;
    for (int s = 0; s < trials; ++s) {
        const spike_raster r = encode_poisson(rates, 20, 1000 + s);
        for (std::uint8_t v : r.spikes)
            total += v;
    }
    CHECK(total / trials == doctest::Approx(expected).epsilon(0.2 / expected));
}

TEST_CASE("huge rate saturates at one spike per step") {
    rate_vector rates{{1e6}};
    const spike_raster r = encode_poisson(rates, 20, 7);
    int count = 0;
    for (std::uint8_t v : r.spikes)
        count += v;
    CHECK(count == 20);
}

TEST_CASE("encoding is deterministic in the seed") {
    rate_vector rates{{340.0, 50.0, 120.0}};
    const spike_raster a = encode_poisson(rates, 20, 42);
    const spike_raster b = encode_poisson(rates, 20, 42);
    const spike_raster c = encode_poisson(rates, 20, 43);
    CHECK(a.spikes == b.spikes);
    CHECK(a.spikes != c.spikes);
}

TEST_CASE("expected spike count is non-decreasing in rate") {
    // statistical: 10000 trials per rate, tolerance 3 standard errors
    const int trials = 10000;
    double prev_mean = -1.0;
    for (double rate : {20.0, 60.0, 150.0, 340.0}) {
        double total = 0.0, total_sq = 0.0;
        for (int s = 0; s < trials; ++s) {
            const spike_raster r = encode_poisson(rate_vector{{rate}}, 20, 555 + s);
            int c = 0;
            for (std::uint8_t v : r.spikes)
                c += v;
            total += c;
            total_sq += static_cast<double>(c) * c;
        }
        const double mean = total / trials;
        const double var = total_sq / trials - mean * mean;
        const double se = std::sqrt(var / trials);
        CHECK(mean > prev_mean - 3.0 * se);
        prev_mean = mean;
    }
}

TEST_CASE("encode_poisson rejects bad input") {
    CHECK_THROWS_AS(encode_poisson(rate_vector{{-1.0}}, 20, 1), invalid_input_error);
    CHECK_THROWS_AS(encode_poisson(rate_vector{{100.0}}, 0, 1), invalid_input_error);
}

TEST_CASE("epsp window covers the closed interval [t - sigma, t]") {
    spike_raster r;
    r.num_neurons = 1;
    r.num_steps = 20;
    r.spikes.assign(20, 0);

    r.set(0, 7, 1); // t = 10: spike at t-3
    CHECK(epsp_window(r, 0, 10, 5) == 1);

    r.spikes.assign(20, 0);
    r.set(0, 4, 1); // t = 10: spike at t-6, outside
    CHECK(epsp_window(r, 0, 10, 5) == 0);

    r.spikes.assign(20, 0);
    r.set(0, 5, 1); // t = 10: spike exactly at t-5, closed boundary
    CHECK(epsp_window(r, 0, 10, 5) == 1);
}

TEST_CASE("epsp window truncates at the sequence start") {
    spike_raster r;
    r.num_neurons = 1;
    r.num_steps = 20;
    r.spikes.assign(20, 0);
    r.set(0, 0, 1);
    CHECK(epsp_window(r, 0, 2, 5) == 1);
    CHECK(epsp_window(r, 0, 0, 5) == 1);
}

TEST_CASE("epsp window is monotone in sigma") {
    const spike_raster r = encode_poisson(rate_vector{std::vector<double>(8, 150.0)}, 20, 99);
    for (std::size_t n = 0; n < r.num_neurons; ++n)
        for (std::size_t t = 0; t < r.num_steps; ++t)
            for (std::size_t s1 = 0; s1 < 8; ++s1)
                if (epsp_window(r, n, t, s1) == 1)
                    CHECK(epsp_window(r, n, t, s1 + 1) == 1);
}

TEST_CASE("epsp window rejects out-of-bounds access") {
    const spike_raster r = encode_poisson(rate_vector{{100.0}}, 20, 1);
    CHECK_THROWS_AS(epsp_window(r, 1, 0, 5), invalid_input_error);
    CHECK_THROWS_AS(epsp_window(r, 0, 20, 5), invalid_input_error);
}

TEST_CASE("raster text round trip") {
    const spike_raster r = encode_poisson(rate_vector{{340.0, 50.0, 0.0}}, 20, 11);
    std::stringstream ss;
    save_raster(ss, r);
    const spike_raster back = load_raster(ss);
    CHECK(back.num_neurons == r.num_neurons);
    CHECK(back.num_steps == r.num_steps);
    CHECK(back.spikes == r.spikes);
}

TEST_CASE("raster loader rejects malformed input") {
    std::stringstream empty("");
    CHECK_THROWS_AS(load_raster(empty), format_error);
    std::stringstream bad("1 3\n0x1\n");
    CHECK_THROWS_AS(load_raster(bad), format_error);
    std::stringstream trunc("2 3\n010\n");
    CHECK_THROWS_AS(load_raster(trunc), format_error);
}
