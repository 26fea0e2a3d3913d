#ifndef HMMSNN_SYNTHETIC_HPP
#define HMMSNN_SYNTHETIC_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "hmmsnn/spike.hpp"

namespace hmmsnn {

// Spatio-temporal benchmark sub-patterns: 80 Poisson spike trains for 20 ms,
// 20 informative neurons at 340 Hz, 60 background neurons at 50 Hz.
namespace synthetic {

inline constexpr std::size_t num_neurons = 80;
inline constexpr std::size_t informative_width = 20;
inline constexpr std::size_t duration_ms = 20;
inline constexpr double informative_rate_hz = 340.0;
inline constexpr double background_rate_hz = 50.0;

// Disjoint informative blocks: A -> 0..19, B -> 20..39, C -> 40..59, D -> 60..79.
std::size_t informative_block_start(char label);

rate_vector subpattern_rates(char label);

spike_raster make_subpattern(char label, std::uint64_t seed);

// One independently sampled sub-pattern raster per label character, in order.
std::vector<spike_raster> make_sequence(const std::string& labels, std::uint64_t seed);

} // namespace synthetic

} // namespace hmmsnn

#endif
