#include "hmmsnn/wta.hpp"

#include <algorithm>
#include <cmath>

#include "hmmsnn/errors.hpp"

namespace hmmsnn {

namespace {

double clip_unit(double x) { return std::clamp(x, -1.0, 1.0); }

// log sum_j exp(u_j) with max subtraction.
double log_sum_exp(const std::vector<double>& u) {
    const double m = *std::max_element(u.begin(), u.end());
    double s = 0.0;
    for (double v : u)
        s += std::exp(v - m);
    return m + std::log(s);
}

} // namespace

wta_network init_network(std::size_t num_inputs, std::size_t num_outputs, double eta0, std::uint64_t seed) {
    if (num_inputs == 0 || num_outputs == 0)
        throw invalid_input_error("init_network: N and K must be positive");
    if (eta0 <= 0.0)
        throw invalid_input_error("init_network: eta0 must be positive");
    wta_network net;
    net.num_inputs = num_inputs;
    net.num_outputs = num_outputs;
    net.eta0 = eta0;
    net.weights.resize(num_outputs * num_inputs);
    net.bias.assign(num_outputs, 0.0);
    net.fire_counts.assign(num_outputs, 1.0);
    rng gen(seed);
    for (double& w : net.weights)
        w = gen.uniform(-0.1, 0.1);
    return net;
}

std::vector<double> membrane_input(const wta_network& net, const epsp_values& epsp) {
    if (epsp.size() != net.num_inputs)
        throw invalid_input_error("membrane_input: EPSP length does not match N");
    std::vector<double> u(net.num_outputs);
    for (std::size_t k = 0; k < net.num_outputs; ++k) {
        const double* row = net.weights.data() + k * net.num_inputs;
        double s = net.bias[k];
        for (std::size_t i = 0; i < net.num_inputs; ++i)
            if (epsp[i])
                s += row[i];
        u[k] = s;
    }
    return u;
}

responsibility_vector responsibility(const wta_network& net, const epsp_values& epsp) {
    std::vector<double> u = membrane_input(net, epsp);
    const double m = *std::max_element(u.begin(), u.end());
    double z = 0.0;
    for (double& v : u) {
        v = std::exp(v - m);
        z += v;
    }
    for (double& v : u)
        v /= z;
    return responsibility_vector{std::move(u)};
}

std::size_t select_winner(const responsibility_vector& resp, rng& gen) {
    const double x = gen.uniform();
    double acc = 0.0;
    for (std::size_t k = 0; k < resp.probs.size(); ++k) {
        acc += resp.probs[k];
        if (x < acc)
            return k;
    }
    return resp.probs.size() - 1;
}

std::size_t select_winner(const responsibility_vector& resp, std::uint64_t seed) {
    rng gen(seed);
    return select_winner(resp, gen);
}

void stdp_update(wta_network& net, std::size_t winner, const epsp_values& epsp) {
    if (winner >= net.num_outputs)
        throw invalid_input_error("stdp_update: winner index out of range");
    if (epsp.size() != net.num_inputs)
        throw invalid_input_error("stdp_update: EPSP length does not match N");

    const double eta_w = net.eta0 / net.fire_counts[winner];
    double* row = net.weights.data() + winner * net.num_inputs;
    for (std::size_t i = 0; i < net.num_inputs; ++i) {
        const double dw = epsp[i] ? std::exp(-row[i] + 1.0) - 1.0 : -1.0;
        row[i] = clip_unit(row[i] + eta_w * dw);
    }
    for (std::size_t k = 0; k < net.num_outputs; ++k) {
        const double eta_k = net.eta0 / net.fire_counts[k];
        const double db = k == winner ? std::exp(-net.bias[k] + 1.0) - 1.0 : -1.0;
        net.bias[k] = clip_unit(net.bias[k] + eta_k * db);
    }
    net.fire_counts[winner] += 1.0;
}

std::vector<double> mixing_coefficients(const wta_network& net) {
    std::vector<double> pi = net.bias;
    const double m = *std::max_element(pi.begin(), pi.end());
    double z = 0.0;
    for (double& v : pi) {
        v = std::exp(v - m);
        z += v;
    }
    for (double& v : pi)
        v /= z;
    return pi;
}

double snn_prob(const wta_network& net, const epsp_values& epsp) {
    const responsibility_vector r = responsibility(net, epsp);
    return *std::max_element(r.probs.begin(), r.probs.end());
}

double log_snn_prob(const wta_network& net, const epsp_values& epsp) {
    const std::vector<double> u = membrane_input(net, epsp);
    return *std::max_element(u.begin(), u.end()) - log_sum_exp(u);
}

std::vector<double> average_state_weights(const wta_network& net) {
    std::vector<double> avg(net.num_inputs, 0.0);
    for (std::size_t k = 0; k < net.num_outputs; ++k) {
        const double* row = net.weights.data() + k * net.num_inputs;
        for (std::size_t i = 0; i < net.num_inputs; ++i)
            avg[i] += row[i] * net.bias[k];
    }
    for (double& v : avg)
        v /= static_cast<double>(net.num_outputs);
    return avg;
}

} // namespace hmmsnn
