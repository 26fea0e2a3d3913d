#ifndef HMMSNN_GMM_HPP
#define HMMSNN_GMM_HPP

#include <cstddef>
#include <vector>

#include "hmmsnn/wta.hpp"

namespace hmmsnn {

// Identity-covariance Gaussian mixture used as the batch EM ground truth
// against which the STDP learner is validated.
struct gmm_state {
    std::size_t num_components = 0; // K
    std::size_t dim = 0;            // N
    std::vector<double> means;      // row-major K x N
    std::vector<double> mixing;     // K, in [0,1], sum 1

    double mean(std::size_t k, std::size_t i) const { return means[k * dim + i]; }
};

// R_k = pi_k exp(-0.5 ||y - mu_k||^2) / sum_j pi_j exp(-0.5 ||y - mu_j||^2).
responsibility_vector gmm_responsibility(const gmm_state& gmm, const std::vector<double>& y);

// One batch EM step: means become responsibility-weighted data averages,
// mixing coefficients become average responsibilities.
// Throws numerical_error if a component's total responsibility collapses.
gmm_state gmm_em_step(const gmm_state& gmm, const std::vector<std::vector<double>>& data);

// Data log-likelihood under the identity-covariance mixture (up to the
// constant (2*pi)^{-N/2} factor shared by all components).
double gmm_log_likelihood(const gmm_state& gmm, const std::vector<std::vector<double>>& data);

// Exact softmax of (w_k . y + w_k0); the algebraic reference for the
// network's responsibility.
responsibility_vector snn_softmax_responsibility(const std::vector<std::vector<double>>& weights,
                                                 const std::vector<double>& biases,
                                                 const std::vector<std::uint8_t>& y);

} // namespace hmmsnn

#endif
