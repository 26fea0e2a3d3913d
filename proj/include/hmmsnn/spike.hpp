#ifndef HMMSNN_SPIKE_HPP
#define HMMSNN_SPIKE_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace hmmsnn {

// Poisson process rates in Hz, one per input neuron.
struct rate_vector {
    std::vector<double> rates;
};

// Binary spike occurrence matrix, neurons x discrete 1 ms time steps.
struct spike_raster {
    std::size_t num_neurons = 0;
    std::size_t num_steps = 0;
    std::vector<std::uint8_t> spikes; // row-major, num_neurons x num_steps

    std::uint8_t at(std::size_t neuron, std::size_t step) const {
        return spikes[neuron * num_steps + step];
    }
    void set(std::size_t neuron, std::size_t step, std::uint8_t v) {
        spikes[neuron * num_steps + step] = v;
    }
};

// Independent per-neuron per-step Bernoulli draws with p = 1 - exp(-rate * 1ms).
// At most one spike per step; deterministic given the seed.
spike_raster encode_poisson(const rate_vector& rates, std::size_t duration_ms, std::uint64_t seed);

// 1 iff the neuron spiked anywhere in the closed step interval
// [max(0, t - sigma), t]. The window truncates at the sequence start.
int epsp_window(const spike_raster& raster, std::size_t neuron, std::size_t t, std::size_t sigma_ms);

// Whole-layer EPSP indicator at step t.
std::vector<std::uint8_t> epsp_vector(const spike_raster& raster, std::size_t t, std::size_t sigma_ms);

// Plain-text raster format: header line "neurons steps", then one row of
// 0/1 characters per neuron.
void save_raster(std::ostream& out, const spike_raster& raster);
spike_raster load_raster(std::istream& in);

} // namespace hmmsnn

#endif
