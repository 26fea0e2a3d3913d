// Command-line front end: dataset generation, segmentation, training,
// classification, and evaluation on top of the hmmsnn library.
//
// Exit codes: 0 success, 2 usage error, 3 data/format error, 4 numerical
// failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hmmsnn/errors.hpp"
#include "hmmsnn/hmm.hpp"
#include "hmmsnn/model_io.hpp"
#include "hmmsnn/rng.hpp"
#include "hmmsnn/segmentation.hpp"
#include "hmmsnn/speech.hpp"
#include "hmmsnn/spike.hpp"
#include "hmmsnn/synthetic.hpp"
#include "hmmsnn/train.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace hmmsnn;

namespace {

constexpr int exit_data_error = 3;
constexpr int exit_numerical_error = 4;

struct manifest_item {
    std::string label;
    std::string file; // relative to the manifest directory
};

struct manifest {
    std::string kind; // "synthetic" or "speech"
    std::vector<std::string> classes;
    std::vector<manifest_item> items;
};

manifest load_manifest(const fs::path& dir) {
    const fs::path path = dir / "manifest.json";
    std::ifstream in(path);
    if (!in)
        throw format_error("cannot open manifest: " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw format_error("manifest " + path.string() + ": " + e.what());
    }
    manifest m;
    try {
        m.kind = j.at("kind").get<std::string>();
        for (const auto& c : j.at("classes"))
            m.classes.push_back(c.get<std::string>());
        for (const auto& it : j.at("items"))
            m.items.push_back({it.at("label").get<std::string>(), it.at("file").get<std::string>()});
    } catch (const json::exception& e) {
        throw format_error("manifest " + path.string() + ": " + e.what());
    }
    if (m.kind != "synthetic" && m.kind != "speech")
        throw format_error("manifest kind must be synthetic or speech, got '" + m.kind + "'");
    for (const manifest_item& it : m.items)
        if (std::find(m.classes.begin(), m.classes.end(), it.label) == m.classes.end())
            throw format_error("manifest item label '" + it.label + "' is not in the class list");
    return m;
}

std::vector<spike_raster> load_raster_blocks(const fs::path& path) {
    std::ifstream in(path);
    if (!in)
        throw format_error("cannot open raster file: " + path.string());
    std::vector<spike_raster> rasters;
    while (in >> std::ws, in.peek() != EOF)
        rasters.push_back(load_raster(in));
    if (rasters.empty())
        throw format_error("raster file is empty: " + path.string());
    return rasters;
}

bool has_extension(const fs::path& path, const char* ext) {
    std::string got = path.extension().string();
    std::transform(got.begin(), got.end(), got.begin(), [](unsigned char c) { return std::tolower(c); });
    return got == ext;
}

frame_sequence load_speech_frames(const fs::path& path) {
    if (has_extension(path, ".wav"))
        return extract_frames(load_pcm(path.string()));
    std::ifstream in(path);
    if (!in)
        throw format_error("cannot open frames file: " + path.string());
    return load_frames_csv(in);
}

// Flat key=value configuration text; '#' starts a comment. Returns the set
// of keys that were present.
std::set<std::string> apply_config_file(const std::string& path, train_config& cfg) {
    std::ifstream in(path);
    if (!in)
        throw format_error("cannot open config file: " + path);
    std::set<std::string> seen;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        std::string trimmed;
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c)))
                trimmed += c;
        if (trimmed.empty())
            continue;
        const std::size_t eq = trimmed.find('=');
        if (eq == std::string::npos)
            throw format_error(path + ":" + std::to_string(lineno) + ": expected key=value");
        const std::string key = trimmed.substr(0, eq);
        const std::string value = trimmed.substr(eq + 1);
        seen.insert(key);
        try {
            if (key == "states")
                cfg.num_states = std::stoul(value);
            else if (key == "outputs")
                cfg.num_outputs = std::stoul(value);
            else if (key == "inputs")
                cfg.num_inputs = std::stoul(value);
            else if (key == "duration_ms")
                cfg.duration_ms = std::stoul(value);
            else if (key == "sigma_ms")
                cfg.sigma_ms = std::stoul(value);
            else if (key == "iterations")
                cfg.iterations = std::stoul(value);
            else if (key == "eta0")
                cfg.eta0 = std::stod(value);
            else if (key == "r_max")
                cfg.r_max = std::stod(value);
            else if (key == "seed")
                cfg.seed = std::stoull(value);
            else
                throw format_error(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
        } catch (const std::invalid_argument&) {
            throw format_error(path + ":" + std::to_string(lineno) + ": bad value for '" + key + "'");
        } catch (const std::out_of_range&) {
            throw format_error(path + ":" + std::to_string(lineno) + ": value out of range for '" + key + "'");
        }
    }
    return seen;
}

segmented_observation make_observation(const std::string& kind, const fs::path& path,
                                       const train_config& cfg, std::uint64_t encode_seed) {
    if (kind == "synthetic") {
        std::vector<spike_raster> rasters = load_raster_blocks(path);
        if (rasters.size() != cfg.num_states)
            throw format_error(path.string() + ": has " + std::to_string(rasters.size()) +
                               " segments, model expects " + std::to_string(cfg.num_states));
        return make_subpattern_observation(std::move(rasters));
    }
    const frame_sequence frames = load_speech_frames(path);
    if (frames.num_frames < cfg.num_states)
        throw format_error(path.string() + ": fewer frames than model states");
    const segment_boundaries bounds = auto_segment(frames, cfg.num_states);
    return make_speech_observation(frames, bounds, cfg.r_max, cfg.duration_ms, encode_seed);
}

// ---- gen-synthetic ---------------------------------------------------------

int cmd_gen_synthetic(const std::string& out_dir, const std::vector<std::string>& classes,
                      std::size_t count, std::uint64_t seed) {
    for (const std::string& label : classes) {
        if (label.empty())
            throw invalid_input_error("class labels must be non-empty");
        for (char c : label)
            synthetic::informative_block_start(c); // throws on letters outside A..D
    }
    fs::create_directories(out_dir);

    json items = json::array();
    for (std::size_t c = 0; c < classes.size(); ++c) {
        for (std::size_t s = 0; s < count; ++s) {
            const std::uint64_t item_seed = derive_seed(seed, 1000 + c, s);
            const std::vector<spike_raster> seq = synthetic::make_sequence(classes[c], item_seed);
            char name[64];
            std::snprintf(name, sizeof(name), "%s_%04zu.spk", classes[c].c_str(), s);
            std::ofstream out(fs::path(out_dir) / name);
            if (!out)
                throw format_error(std::string("cannot write ") + name + " in " + out_dir);
            for (const spike_raster& raster : seq)
                save_raster(out, raster);
            items.push_back({{"label", classes[c]}, {"file", name}, {"seed", item_seed}});
        }
    }
    json root = {{"kind", "synthetic"}, {"classes", classes}, {"items", items}};
    std::ofstream out(fs::path(out_dir) / "manifest.json");
    if (!out)
        throw format_error("cannot write manifest in " + out_dir);
    out << root.dump(2) << "\n";
    std::cout << "wrote " << items.size() << " sequences to " << out_dir << "\n";
    return 0;
}

// ---- segment ----------------------------------------------------------------

int cmd_segment(const std::string& input, std::size_t num_states) {
    const frame_sequence frames = load_speech_frames(input);
    const segment_boundaries bounds = auto_segment(frames, num_states);
    for (std::size_t p = 0; p < bounds.num_segments(); ++p)
        std::cout << (p ? "," : "") << bounds.last_index[p];
    std::cout << "\n";
    return 0;
}

// ---- train -------------------------------------------------------------------

int cmd_train(const std::string& data_dir, const std::string& model_out, train_config cfg,
              bool states_set, bool iterations_set, std::size_t jobs) {
    const manifest m = load_manifest(data_dir);
    if (m.items.empty())
        throw format_error("manifest has no items");

    // kind-specific defaults unless overridden by config file or flag
    if (m.kind == "speech") {
        if (!states_set)
            cfg.num_states = 10;
        if (!iterations_set)
            cfg.iterations = 100;
    }
    cfg.validate();

    model_file out;
    out.kind = m.kind;
    out.config = cfg;

    if (m.kind == "synthetic") {
        for (const std::string& label : m.classes)
            if (label.size() != cfg.num_states)
                throw format_error("class '" + label + "' has " + std::to_string(label.size()) +
                                   " sub-patterns but states=" + std::to_string(cfg.num_states));
        std::vector<std::vector<std::vector<spike_raster>>> samples(m.classes.size());
        for (const manifest_item& it : m.items) {
            const std::size_t c = static_cast<std::size_t>(
                std::find(m.classes.begin(), m.classes.end(), it.label) - m.classes.begin());
            samples[c].push_back(load_raster_blocks(fs::path(data_dir) / it.file));
        }
        for (std::size_t c = 0; c < m.classes.size(); ++c)
            if (samples[c].empty())
                throw format_error("no training items for class '" + m.classes[c] + "'");
        out.models = train_synthetic_models(m.classes, samples, cfg, jobs);
    } else {
        std::vector<std::vector<frame_sequence>> samples(m.classes.size());
        for (const manifest_item& it : m.items) {
            const std::size_t c = static_cast<std::size_t>(
                std::find(m.classes.begin(), m.classes.end(), it.label) - m.classes.begin());
            samples[c].push_back(load_speech_frames(fs::path(data_dir) / it.file));
        }
        for (std::size_t c = 0; c < m.classes.size(); ++c) {
            if (samples[c].empty())
                throw format_error("no training items for class '" + m.classes[c] + "'");
            out.models.push_back(train_class_model_speech(m.classes[c], samples[c], cfg, c, jobs));
        }
    }

    save_model_file(model_out, out);
    std::cout << "trained " << out.models.size() << " class models -> " << model_out << "\n";
    return 0;
}

// ---- classify ----------------------------------------------------------------

int cmd_classify(const std::string& model_path, const std::string& input, std::uint64_t seed) {
    const model_file mf = load_model_file(model_path);
    if (mf.models.empty())
        throw format_error("model file has no class models");

    const segmented_observation obs =
        make_observation(mf.kind, input, mf.config, derive_seed(seed, 500));

    if (mf.models.size() == 1) {
        std::cout << mf.models[0].label << " 1.0\n";
        std::cout << "winner: " << mf.models[0].label << "\n";
        return 0;
    }
    const classify_result res = classify(obs, mf.models);
    for (std::size_t i = 0; i < mf.models.size(); ++i) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.6f", res.posteriors[i]);
        std::cout << mf.models[i].label << " " << buf << "\n";
    }
    std::cout << "winner: " << mf.models[res.winner].label << "\n";
    return 0;
}

// ---- eval / roc ----------------------------------------------------------------

void load_test_items(const model_file& mf, const std::string& data_dir, std::uint64_t seed,
                     std::vector<segmented_observation>& items, std::vector<std::size_t>& desired,
                     std::vector<std::string>& labels) {
    const manifest m = load_manifest(data_dir);
    if (m.kind != mf.kind)
        throw format_error("test manifest kind '" + m.kind + "' does not match model kind '" + mf.kind + "'");
    if (m.items.empty())
        throw format_error("test manifest has no items");
    for (std::size_t i = 0; i < m.items.size(); ++i) {
        const manifest_item& it = m.items[i];
        std::size_t c = mf.models.size();
        for (std::size_t r = 0; r < mf.models.size(); ++r)
            if (mf.models[r].label == it.label)
                c = r;
        if (c == mf.models.size())
            throw format_error("test item label '" + it.label + "' has no model");
        items.push_back(make_observation(mf.kind, fs::path(data_dir) / it.file, mf.config,
                                         derive_seed(seed, 600, i)));
        desired.push_back(c);
        labels.push_back(it.label);
    }
}

int cmd_eval(const std::string& model_path, const std::string& data_dir,
             const std::string& report_out, std::uint64_t seed) {
    const model_file mf = load_model_file(model_path);
    std::vector<segmented_observation> items;
    std::vector<std::size_t> desired;
    std::vector<std::string> labels;
    load_test_items(mf, data_dir, seed, items, desired, labels);

    const eval_report rep = evaluate(mf.models, items, desired);

    std::ofstream out(report_out);
    if (!out)
        throw format_error("cannot write report: " + report_out);
    out << "model";
    for (const std::string& l : rep.labels)
        out << "," << l;
    out << "\n";
    char buf[64];
    for (std::size_t r = 0; r < rep.labels.size(); ++r) {
        out << rep.labels[r];
        for (std::size_t c = 0; c < rep.labels.size(); ++c) {
            std::snprintf(buf, sizeof(buf), "%.6f", rep.posterior(r, c));
            out << "," << buf;
        }
        out << "\n";
    }
    std::snprintf(buf, sizeof(buf), "%.6f", rep.accuracy);
    out << "accuracy," << buf << "\n";
    std::cout << "accuracy " << buf << " (" << items.size() << " items) -> " << report_out << "\n";
    return 0;
}

int cmd_roc(const std::string& model_path, const std::string& data_dir,
            const std::string& ratios_path, const std::string& out_path,
            std::string positive_label, std::uint64_t seed) {
    const model_file mf = load_model_file(model_path);
    if (mf.models.size() != 2)
        throw format_error("roc needs a two-class model file");
    if (positive_label.empty())
        positive_label = mf.models[1].label;
    std::size_t pos_idx = 2;
    for (std::size_t r = 0; r < 2; ++r)
        if (mf.models[r].label == positive_label)
            pos_idx = r;
    if (pos_idx == 2)
        throw format_error("positive label '" + positive_label + "' has no model");

    std::vector<segmented_observation> items;
    std::vector<std::size_t> desired;
    std::vector<std::string> labels;
    load_test_items(mf, data_dir, seed, items, desired, labels);
    std::vector<bool> positive;
    for (const std::string& l : labels)
        positive.push_back(l == positive_label);

    std::vector<double> ratios;
    {
        std::ifstream in(ratios_path);
        if (!in)
            throw format_error("cannot open ratios file: " + ratios_path);
        std::string tok;
        while (in >> tok) {
            if (tok == "inf" || tok == "infinity") {
                ratios.push_back(std::numeric_limits<double>::infinity());
                continue;
            }
            try {
                ratios.push_back(std::stod(tok));
            } catch (const std::exception&) {
                throw format_error(ratios_path + ": bad ratio '" + tok + "'");
            }
        }
        if (ratios.empty())
            throw format_error(ratios_path + ": no ratios");
    }

    const std::vector<roc_point> points = prior_ratio_sweep(
        mf.models[1 - pos_idx], mf.models[pos_idx], items, positive, ratios);

    std::ofstream out(out_path);
    if (!out)
        throw format_error("cannot write roc output: " + out_path);
    out << "prior_ratio,fp_percent,tp_percent,accuracy_percent\n";
    char buf[160];
    for (const roc_point& p : points) {
        std::snprintf(buf, sizeof(buf), "%g,%.2f,%.2f,%.2f", p.prior_ratio,
                      100.0 * p.false_positive_rate, 100.0 * p.true_positive_rate,
                      100.0 * p.accuracy);
        out << buf << "\n";
    }
    std::cout << "wrote " << points.size() << " sweep points -> " << out_path << "\n";
    return 0;
}

// ---- inspect -----------------------------------------------------------------

int cmd_inspect(const std::string& model_path) {
    const model_file mf = load_model_file(model_path);
    std::cout << "format_version " << mf.format_version << "\n"
              << "kind " << mf.kind << "\n"
              << "states " << mf.config.num_states << " outputs " << mf.config.num_outputs
              << " inputs " << mf.config.num_inputs << "\n"
              << "duration_ms " << mf.config.duration_ms << " sigma_ms " << mf.config.sigma_ms
              << " iterations " << mf.config.iterations << "\n"
              << "eta0 " << mf.config.eta0 << " r_max " << mf.config.r_max << " seed "
              << mf.config.seed << "\n";
    for (const hmm_model& m : mf.models) {
        std::cout << "model " << m.label << "\n";
        for (std::size_t p = 0; p < m.num_states(); ++p) {
            const std::vector<double> pi = mixing_coefficients(m.states[p]);
            std::cout << "  state " << p << " mixing";
            for (double v : pi) {
                char buf[32];
                std::snprintf(buf, sizeof(buf), " %.3f", v);
                std::cout << buf;
            }
            std::cout << "\n";
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"HMM-over-spiking-WTA sequence classifier"};
    app.require_subcommand(1);

    // gen-synthetic
    auto* gen = app.add_subcommand("gen-synthetic", "Generate the synthetic sub-pattern benchmark");
    std::string gen_out;
    std::vector<std::string> gen_classes = {"ABCD", "DCBA", "ABDC", "BACD"};
    std::size_t gen_count = 20;
    std::uint64_t gen_seed = 1;
    gen->add_option("--out", gen_out, "Output directory")->required();
    gen->add_option("--classes", gen_classes, "Class label strings (letters A-D)");
    gen->add_option("--count", gen_count, "Sequences per class");
    gen->add_option("--seed", gen_seed, "Master seed");

    // segment
    auto* seg = app.add_subcommand("segment", "Segment a frame sequence into P parts");
    std::string seg_input;
    std::size_t seg_states = 10;
    seg->add_option("--input", seg_input, "WAV file or frame CSV")->required();
    seg->add_option("--states", seg_states, "Number of segments");

    // train
    auto* tr = app.add_subcommand("train", "Train class models from a data directory");
    std::string tr_data, tr_out, tr_config;
    std::size_t tr_jobs = 1;
    train_config tr_cfg;
    tr->add_option("--data", tr_data, "Directory containing manifest.json")->required();
    tr->add_option("--out", tr_out, "Model file to write")->required();
    tr->add_option("--config", tr_config, "key=value config file");
    auto* tr_states_opt = tr->add_option("--states", tr_cfg.num_states, "States per model (P)");
    tr->add_option("--outputs", tr_cfg.num_outputs, "WTA outputs per state (K)");
    tr->add_option("--inputs", tr_cfg.num_inputs, "Input neurons (N)");
    tr->add_option("--duration", tr_cfg.duration_ms, "Raster duration in ms (T)");
    tr->add_option("--sigma", tr_cfg.sigma_ms, "EPSP window in ms");
    auto* tr_iters_opt = tr->add_option("--iterations", tr_cfg.iterations, "Training iterations");
    tr->add_option("--eta0", tr_cfg.eta0, "Base learning rate");
    tr->add_option("--rmax", tr_cfg.r_max, "Peak encoding rate in Hz");
    tr->add_option("--seed", tr_cfg.seed, "Master seed");
    tr->add_option("--jobs", tr_jobs, "Worker threads (result is independent of this)");

    // classify
    auto* cl = app.add_subcommand("classify", "Classify one observation file");
    std::string cl_model, cl_input;
    std::uint64_t cl_seed = 1;
    cl->add_option("--model", cl_model, "Trained model file")->required();
    cl->add_option("--input", cl_input, "Raster file (.spk), WAV, or frame CSV")->required();
    cl->add_option("--seed", cl_seed, "Encoding seed for speech inputs");

    // eval
    auto* ev = app.add_subcommand("eval", "Evaluate a model on a test directory");
    std::string ev_model, ev_data, ev_report = "report.csv";
    std::uint64_t ev_seed = 1;
    ev->add_option("--model", ev_model, "Trained model file")->required();
    ev->add_option("--data", ev_data, "Test directory containing manifest.json")->required();
    ev->add_option("--report", ev_report, "Report CSV to write");
    ev->add_option("--seed", ev_seed, "Encoding seed for speech inputs");

    // roc
    auto* rc = app.add_subcommand("roc", "Prior-ratio sweep for a two-class model");
    std::string rc_model, rc_data, rc_ratios, rc_out = "roc.csv", rc_positive;
    std::uint64_t rc_seed = 1;
    rc->add_option("--model", rc_model, "Trained two-class model file")->required();
    rc->add_option("--data", rc_data, "Test directory containing manifest.json")->required();
    rc->add_option("--ratios", rc_ratios, "Text file with one prior ratio per line")->required();
    rc->add_option("--out", rc_out, "Sweep CSV to write");
    rc->add_option("--positive", rc_positive, "Positive class label (default: second model)");
    rc->add_option("--seed", rc_seed, "Encoding seed for speech inputs");

    // inspect
    auto* ins = app.add_subcommand("inspect", "Summarize a model file");
    std::string ins_model;
    ins->add_option("--model", ins_model, "Model file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed())
            return cmd_gen_synthetic(gen_out, gen_classes, gen_count, gen_seed);
        if (seg->parsed())
            return cmd_segment(seg_input, seg_states);
        if (tr->parsed()) {
            std::set<std::string> file_keys;
            if (!tr_config.empty()) {
                // precedence: defaults < config file < flags; tr_cfg currently
                // holds defaults with flag overrides applied
                train_config from_file;
                file_keys = apply_config_file(tr_config, from_file);
                const auto take_file = [&](const char* key, const char* flag) {
                    return file_keys.count(key) > 0 && tr->count(flag) == 0;
                };
                if (take_file("states", "--states"))
                    tr_cfg.num_states = from_file.num_states;
                if (take_file("outputs", "--outputs"))
                    tr_cfg.num_outputs = from_file.num_outputs;
                if (take_file("inputs", "--inputs"))
                    tr_cfg.num_inputs = from_file.num_inputs;
                if (take_file("duration_ms", "--duration"))
                    tr_cfg.duration_ms = from_file.duration_ms;
                if (take_file("sigma_ms", "--sigma"))
                    tr_cfg.sigma_ms = from_file.sigma_ms;
                if (take_file("iterations", "--iterations"))
                    tr_cfg.iterations = from_file.iterations;
                if (take_file("eta0", "--eta0"))
                    tr_cfg.eta0 = from_file.eta0;
                if (take_file("r_max", "--rmax"))
                    tr_cfg.r_max = from_file.r_max;
                if (take_file("seed", "--seed"))
                    tr_cfg.seed = from_file.seed;
            }
            const bool states_set = tr_states_opt->count() > 0 || file_keys.count("states") > 0;
            const bool iters_set = tr_iters_opt->count() > 0 || file_keys.count("iterations") > 0;
            return cmd_train(tr_data, tr_out, tr_cfg, states_set, iters_set, tr_jobs);
        }
        if (cl->parsed())
            return cmd_classify(cl_model, cl_input, cl_seed);
        if (ev->parsed())
            return cmd_eval(ev_model, ev_data, ev_report, ev_seed);
        if (rc->parsed())
            return cmd_roc(rc_model, rc_data, rc_ratios, rc_out, rc_positive, rc_seed);
        if (ins->parsed())
            return cmd_inspect(ins_model);
    } catch (const numerical_error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return exit_numerical_error;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_data_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_data_error;
    }
    return 0;
}
