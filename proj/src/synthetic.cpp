#include "hmmsnn/synthetic.hpp"

#include "hmmsnn/errors.hpp"
#include "hmmsnn/rng.hpp"

namespace hmmsnn {
namespace synthetic {

std::size_t informative_block_start(char label) {
    switch (label) {
    case 'A': return 0;
    case 'B': return 20;
    case 'C': return 40;
    case 'D': return 60;
    default:
        throw invalid_input_error(std::string("synthetic: invalid sub-pattern label '") + label + "'");
    }
}

rate_vector subpattern_rates(char label) {
    const std::size_t start = informative_block_start(label);
    rate_vector rates;
    rates.rates.assign(num_neurons, background_rate_hz);
    for (std::size_t i = start; i < start + informative_width; ++i)
        rates.rates[i] = informative_rate_hz;
    return rates;
}

spike_raster make_subpattern(char label, std::uint64_t seed) {
    return encode_poisson(subpattern_rates(label), duration_ms, seed);
}

std::vector<spike_raster> make_sequence(const std::string& labels, std::uint64_t seed) {
    if (labels.empty())
        throw invalid_input_error("make_sequence: label string must be non-empty");
    std::vector<spike_raster> rasters;
    rasters.reserve(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i)
        rasters.push_back(make_subpattern(labels[i], derive_seed(seed, i)));
    return rasters;
}

} // namespace synthetic
} // namespace hmmsnn
