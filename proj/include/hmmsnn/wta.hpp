#ifndef HMMSNN_WTA_HPP
#define HMMSNN_WTA_HPP

#include <cstdint>
#include <vector>

#include "hmmsnn/rng.hpp"

namespace hmmsnn {

using epsp_values = std::vector<std::uint8_t>;

// Posterior over the K output units; entries >= 0, sum 1.
struct responsibility_vector {
    std::vector<double> probs;
};

// One HMM state's emission model: a K-output winner-take-all spiking
// network trained with the exponential-LTP / constant-LTD STDP rule.
// Weights and biases are kept in [-1, 1] by projection after every update.
struct wta_network {
    std::size_t num_inputs = 0;  // N
    std::size_t num_outputs = 0; // K
    std::vector<double> weights; // row-major K x N, each in [-1, 1]
    std::vector<double> bias;    // K bias weights w_k0
    std::vector<double> fire_counts; // N_k, starts at 1, +1 per win
    double eta0 = 1.0;

    double weight(std::size_t k, std::size_t i) const { return weights[k * num_inputs + i]; }
};

// Uniform random weights in [-0.1, 0.1], zero biases, fire counts 1.
wta_network init_network(std::size_t num_inputs, std::size_t num_outputs, double eta0, std::uint64_t seed);

// u_k = w_k0 + sum_i epsp_i * w_ki.
std::vector<double> membrane_input(const wta_network& net, const epsp_values& epsp);

// Softmax of the membrane inputs, computed with max subtraction.
responsibility_vector responsibility(const wta_network& net, const epsp_values& epsp);

// Samples exactly one winner k with probability probs[k].
std::size_t select_winner(const responsibility_vector& resp, std::uint64_t seed);
std::size_t select_winner(const responsibility_vector& resp, rng& gen);

// STDP learning event for the given winner: the winner's weight row gets
// e^{-w+1}-1 where the input was active and -1 where it was not, the
// winner's bias gets e^{-w0+1}-1, every loser's bias gets -1. Each unit's
// update is scaled by its own learning rate eta0 / N_k, then projected to
// [-1, 1]; the winner's fire count is incremented.
void stdp_update(wta_network& net, std::size_t winner, const epsp_values& epsp);

// pi_k = exp(w_k0) / sum_j exp(w_j0).
std::vector<double> mixing_coefficients(const wta_network& net);

// Emission probability read-out: max_k responsibility. In (0, 1].
double snn_prob(const wta_network& net, const epsp_values& epsp);
double log_snn_prob(const wta_network& net, const epsp_values& epsp);

// Per-input average of the weight rows, each row scaled by its bias.
std::vector<double> average_state_weights(const wta_network& net);

} // namespace hmmsnn

#endif
