#include <doctest.h>

#include <sstream>

#include "hmmsnn/errors.hpp"
#include "hmmsnn/model_io.hpp"
#include "hmmsnn/rng.hpp"
#include "hmmsnn/synthetic.hpp"
#include "hmmsnn/train.hpp"

using namespace hmmsnn;

namespace {

model_file make_trained_file() {
    train_config cfg;
    cfg.iterations = 2;
    std::vector<std::vector<std::vector<spike_raster>>> samples(2);
    for (int s = 0; s < 3; ++s) {
        samples[0].push_back(synthetic::make_sequence("ABCD", derive_seed(1, 0, s)));
        samples[1].push_back(synthetic::make_sequence("DCBA", derive_seed(1, 1, s)));
    }
    model_file f;
    f.kind = "synthetic";
    f.config = cfg;
    f.models = train_synthetic_models({"ABCD", "DCBA"}, samples, cfg);
    return f;
}

} // namespace

TEST_CASE("save -> load -> save is byte-identical") {
    const model_file f = make_trained_file();
    std::stringstream first;
    save_model_file(first, f);

    std::stringstream input(first.str());
    const model_file loaded = load_model_file(input);
    std::stringstream second;
    save_model_file(second, loaded);

    CHECK(first.str() == second.str());
    CHECK(loaded.kind == "synthetic");
    REQUIRE(loaded.models.size() == 2);
    CHECK(loaded.models[0].label == "ABCD");
    CHECK(loaded.models[0].states[0].weights == f.models[0].states[0].weights);
    CHECK(loaded.config.seed == f.config.seed);
    CHECK(loaded.config.eta0 == f.config.eta0);
}

TEST_CASE("loader validates the format version") {
    const model_file f = make_trained_file();
    std::stringstream out;
    save_model_file(out, f);
    std::string text = out.str();
    const std::string needle = "\"format_version\": 1";
    const std::size_t pos = text.find(needle);
    REQUIRE(pos != std::string::npos);
    text.replace(pos, needle.size(), "\"format_version\": 99");
    std::stringstream in(text);
    CHECK_THROWS_WITH_AS(load_model_file(in), doctest::Contains("format_version"), format_error);
}

TEST_CASE("loader rejects unknown kinds and malformed JSON") {
    const model_file f = make_trained_file();
    std::stringstream out;
    save_model_file(out, f);
    std::string text = out.str();
    const std::string needle = "\"kind\": \"synthetic\"";
    const std::size_t pos = text.find(needle);
    REQUIRE(pos != std::string::npos);
    text.replace(pos, needle.size(), "\"kind\": \"mystery\"");
    std::stringstream in(text);
    CHECK_THROWS_AS(load_model_file(in), format_error);

    std::stringstream garbage("{ not json");
    CHECK_THROWS_AS(load_model_file(garbage), format_error);

    std::stringstream missing(R"({"format_version": 1, "kind": "synthetic"})");
    CHECK_THROWS_AS(load_model_file(missing), format_error);
}

TEST_CASE("missing file paths fail loudly") {
    CHECK_THROWS_AS(load_model_file("/nonexistent/path/model.json"), format_error);
}
