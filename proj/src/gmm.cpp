#include "hmmsnn/gmm.hpp"

#include <algorithm>
#include <cmath>

#include "hmmsnn/errors.hpp"

namespace hmmsnn {

namespace {

// Unnormalized per-component log densities: log pi_k - 0.5 ||y - mu_k||^2.
std::vector<double> component_log_terms(const gmm_state& gmm, const std::vector<double>& y) {
    if (y.size() != gmm.dim)
        throw invalid_input_error("gmm: sample dimension does not match");
    std::vector<double> lt(gmm.num_components);
    for (std::size_t k = 0; k < gmm.num_components; ++k) {
        double d2 = 0.0;
        for (std::size_t i = 0; i < gmm.dim; ++i) {
            const double d = y[i] - gmm.mean(k, i);
            d2 += d * d;
        }
        lt[k] = std::log(gmm.mixing[k]) - 0.5 * d2;
    }
    return lt;
}

double softmax_inplace(std::vector<double>& v) {
    const double m = *std::max_element(v.begin(), v.end());
    double z = 0.0;
    for (double& x : v) {
        x = std::exp(x - m);
        z += x;
    }
    for (double& x : v)
        x /= z;
    return m + std::log(z);
}

} // namespace

responsibility_vector gmm_responsibility(const gmm_state& gmm, const std::vector<double>& y) {
    std::vector<double> lt = component_log_terms(gmm, y);
    softmax_inplace(lt);
    return responsibility_vector{std::move(lt)};
}

gmm_state gmm_em_step(const gmm_state& gmm, const std::vector<std::vector<double>>& data) {
    if (data.empty())
        throw invalid_input_error("gmm_em_step: need at least one sample");

    const std::size_t K = gmm.num_components;
    const std::size_t N = gmm.dim;
    std::vector<double> resp_sums(K, 0.0);
    std::vector<double> weighted(K * N, 0.0);
    for (const auto& y : data) {
        const responsibility_vector r = gmm_responsibility(gmm, y);
        for (std::size_t k = 0; k < K; ++k) {
            resp_sums[k] += r.probs[k];
            for (std::size_t i = 0; i < N; ++i)
                weighted[k * N + i] += r.probs[k] * y[i];
        }
    }

    gmm_state next;
    next.num_components = K;
    next.dim = N;
    next.means.resize(K * N);
    next.mixing.resize(K);
    const double M = static_cast<double>(data.size());
    for (std::size_t k = 0; k < K; ++k) {
        if (resp_sums[k] < 1e-300)
            throw numerical_error("gmm_em_step: degenerate component " + std::to_string(k));
        for (std::size_t i = 0; i < N; ++i)
            next.means[k * N + i] = weighted[k * N + i] / resp_sums[k];
        next.mixing[k] = resp_sums[k] / M;
    }
    // Guard against round-off drift in the mixing sum.
    double s = 0.0;
    for (double p : next.mixing)
        s += p;
    for (double& p : next.mixing)
        p /= s;
    return next;
}

double gmm_log_likelihood(const gmm_state& gmm, const std::vector<std::vector<double>>& data) {
    double ll = 0.0;
    for (const auto& y : data) {
        std::vector<double> lt = component_log_terms(gmm, y);
        ll += softmax_inplace(lt);
    }
    return ll;
}

responsibility_vector snn_softmax_responsibility(const std::vector<std::vector<double>>& weights,
                                                 const std::vector<double>& biases,
                                                 const std::vector<std::uint8_t>& y) {
    if (weights.size() != biases.size())
        throw invalid_input_error("snn_softmax_responsibility: K mismatch");
    std::vector<double> u(weights.size());
    for (std::size_t k = 0; k < weights.size(); ++k) {
        if (weights[k].size() != y.size())
            throw invalid_input_error("snn_softmax_responsibility: N mismatch");
        double s = biases[k];
        for (std::size_t i = 0; i < y.size(); ++i)
            if (y[i])
                s += weights[k][i];
        u[k] = s;
    }
    softmax_inplace(u);
    return responsibility_vector{std::move(u)};
}

} // namespace hmmsnn
