#include "hmmsnn/model_io.hpp"

#include <fstream>

#include <json.hpp>

#include "hmmsnn/errors.hpp"

namespace hmmsnn {

namespace {

using nlohmann::json;

json config_to_json(const train_config& c) {
    return json{{"num_states", c.num_states},   {"num_outputs", c.num_outputs},
                {"num_inputs", c.num_inputs},   {"duration_ms", c.duration_ms},
                {"sigma_ms", c.sigma_ms},       {"iterations", c.iterations},
                {"eta0", c.eta0},               {"r_max", c.r_max},
                {"seed", c.seed}};
}

train_config config_from_json(const json& j) {
    train_config c;
    c.num_states = j.at("num_states").get<std::size_t>();
    c.num_outputs = j.at("num_outputs").get<std::size_t>();
    c.num_inputs = j.at("num_inputs").get<std::size_t>();
    c.duration_ms = j.at("duration_ms").get<std::size_t>();
    c.sigma_ms = j.at("sigma_ms").get<std::size_t>();
    c.iterations = j.at("iterations").get<std::size_t>();
    c.eta0 = j.at("eta0").get<double>();
    c.r_max = j.at("r_max").get<double>();
    c.seed = j.at("seed").get<std::uint64_t>();
    return c;
}

json network_to_json(const wta_network& net) {
    json rows = json::array();
    for (std::size_t k = 0; k < net.num_outputs; ++k)
        rows.push_back(std::vector<double>(net.weights.begin() + k * net.num_inputs,
                                           net.weights.begin() + (k + 1) * net.num_inputs));
    return json{{"num_inputs", net.num_inputs}, {"num_outputs", net.num_outputs},
                {"eta0", net.eta0},             {"fire_counts", net.fire_counts},
                {"bias", net.bias},             {"weights", rows}};
}

wta_network network_from_json(const json& j) {
    wta_network net;
    net.num_inputs = j.at("num_inputs").get<std::size_t>();
    net.num_outputs = j.at("num_outputs").get<std::size_t>();
    net.eta0 = j.at("eta0").get<double>();
    net.fire_counts = j.at("fire_counts").get<std::vector<double>>();
    net.bias = j.at("bias").get<std::vector<double>>();
    net.weights.reserve(net.num_inputs * net.num_outputs);
    for (const auto& row : j.at("weights")) {
        const auto values = row.get<std::vector<double>>();
        if (values.size() != net.num_inputs)
            throw format_error("model: weight row length does not match num_inputs");
        net.weights.insert(net.weights.end(), values.begin(), values.end());
    }
    if (net.weights.size() != net.num_inputs * net.num_outputs ||
        net.bias.size() != net.num_outputs || net.fire_counts.size() != net.num_outputs)
        throw format_error("model: inconsistent network dimensions");
    return net;
}

json model_to_json(const hmm_model& m) {
    json states = json::array();
    for (const wta_network& net : m.states)
        states.push_back(network_to_json(net));
    return json{{"label", m.label},
                {"self_prob", m.self_prob},
                {"advance_prob", m.advance_prob},
                {"initial_prob", m.initial_prob},
                {"sigma_ms", m.sigma_ms},
                {"states", states}};
}

hmm_model model_from_json(const json& j) {
    hmm_model m;
    m.label = j.at("label").get<std::string>();
    m.self_prob = j.at("self_prob").get<double>();
    m.advance_prob = j.at("advance_prob").get<double>();
    m.initial_prob = j.at("initial_prob").get<double>();
    m.sigma_ms = j.at("sigma_ms").get<std::size_t>();
    for (const auto& s : j.at("states"))
        m.states.push_back(network_from_json(s));
    return m;
}

} // namespace

void save_model_file(std::ostream& out, const model_file& file) {
    json models = json::array();
    for (const hmm_model& m : file.models)
        models.push_back(model_to_json(m));
    const json j{{"format_version", file.format_version},
                 {"kind", file.kind},
                 {"config", config_to_json(file.config)},
                 {"models", models}};
    out << j.dump(2) << '\n';
}

void save_model_file(const std::string& path, const model_file& file) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw format_error("model: cannot open " + path + " for writing");
    save_model_file(out, file);
}

model_file load_model_file(std::istream& in) {
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw format_error(std::string("model: invalid JSON: ") + e.what());
    }
    try {
        model_file file;
        file.format_version = j.at("format_version").get<int>();
        if (file.format_version != model_format_version)
            throw format_error("model: unsupported format_version " +
                               std::to_string(file.format_version) + " (expected " +
                               std::to_string(model_format_version) + ")");
        file.kind = j.at("kind").get<std::string>();
        if (file.kind != "synthetic" && file.kind != "speech")
            throw format_error("model: unknown kind '" + file.kind + "'");
        file.config = config_from_json(j.at("config"));
        for (const auto& m : j.at("models"))
            file.models.push_back(model_from_json(m));
        return file;
    } catch (const json::exception& e) {
        throw format_error(std::string("model: missing or mistyped field: ") + e.what());
    }
}

model_file load_model_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw format_error("model: cannot open " + path);
    return load_model_file(in);
}

} // namespace hmmsnn
