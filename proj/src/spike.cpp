#include "hmmsnn/spike.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "hmmsnn/errors.hpp"
#include "hmmsnn/rng.hpp"

namespace hmmsnn {

spike_raster encode_poisson(const rate_vector& rates, std::size_t duration_ms, std::uint64_t seed) {
    if (duration_ms < 1)
        throw invalid_input_error("encode_poisson: duration must be >= 1 ms");
    for (double r : rates.rates)
        if (r < 0.0 || !std::isfinite(r))
            throw invalid_input_error("encode_poisson: rates must be finite and >= 0");

    spike_raster raster;
    raster.num_neurons = rates.rates.size();
    raster.num_steps = duration_ms;
    raster.spikes.resize(raster.num_neurons * raster.num_steps);

    rng gen(seed);
    for (std::size_t n = 0; n < raster.num_neurons; ++n) {
        const double p = 1.0 - std::exp(-rates.rates[n] * 1e-3);
        for (std::size_t t = 0; t < duration_ms; ++t) {
            // One draw per cell regardless of p, so the stream layout is
            // independent of the rate values.
            raster.set(n, t, gen.uniform() < p ? 1 : 0);
        }
    }
    return raster;
}

int epsp_window(const spike_raster& raster, std::size_t neuron, std::size_t t, std::size_t sigma_ms) {
    if (neuron >= raster.num_neurons)
        throw invalid_input_error("epsp_window: neuron index out of bounds");
    if (t >= raster.num_steps)
        throw invalid_input_error("epsp_window: time step out of bounds");
    const std::size_t lo = t >= sigma_ms ? t - sigma_ms : 0;
    for (std::size_t s = lo; s <= t; ++s)
        if (raster.at(neuron, s))
            return 1;
    return 0;
}

std::vector<std::uint8_t> epsp_vector(const spike_raster& raster, std::size_t t, std::size_t sigma_ms) {
    if (t >= raster.num_steps)
        throw invalid_input_error("epsp_vector: time step out of bounds");
    const std::size_t lo = t >= sigma_ms ? t - sigma_ms : 0;
    std::vector<std::uint8_t> e(raster.num_neurons, 0);
    for (std::size_t n = 0; n < raster.num_neurons; ++n) {
        const std::uint8_t* row = raster.spikes.data() + n * raster.num_steps;
        for (std::size_t s = lo; s <= t; ++s) {
            if (row[s]) {
                e[n] = 1;
                break;
            }
        }
    }
    return e;
}

void save_raster(std::ostream& out, const spike_raster& raster) {
    out << raster.num_neurons << ' ' << raster.num_steps << '\n';
    for (std::size_t n = 0; n < raster.num_neurons; ++n) {
        for (std::size_t t = 0; t < raster.num_steps; ++t)
            out << (raster.at(n, t) ? '1' : '0');
        out << '\n';
    }
}

spike_raster load_raster(std::istream& in) {
    spike_raster raster;
    if (!(in >> raster.num_neurons >> raster.num_steps))
        throw format_error("raster: missing 'neurons steps' header");
    in.ignore();
    raster.spikes.resize(raster.num_neurons * raster.num_steps);
    std::string line;
    for (std::size_t n = 0; n < raster.num_neurons; ++n) {
        if (!std::getline(in, line) || line.size() < raster.num_steps)
            throw format_error("raster: truncated row " + std::to_string(n));
        for (std::size_t t = 0; t < raster.num_steps; ++t) {
            const char c = line[t];
            if (c != '0' && c != '1')
                throw format_error("raster: invalid character in row " + std::to_string(n));
            raster.set(n, t, static_cast<std::uint8_t>(c - '0'));
        }
    }
    return raster;
}

} // namespace hmmsnn
