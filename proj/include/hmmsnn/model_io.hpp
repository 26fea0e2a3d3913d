#ifndef HMMSNN_MODEL_IO_HPP
#define HMMSNN_MODEL_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "hmmsnn/hmm.hpp"
#include "hmmsnn/train.hpp"

namespace hmmsnn {

inline constexpr int model_format_version = 1;

// Persisted bundle: the training configuration snapshot plus one trained
// HMM per class. JSON with full-precision decimal floats; save -> load ->
// save is byte-identical.
struct model_file {
    int format_version = model_format_version;
    std::string kind = "synthetic"; // or "speech"
    train_config config;
    std::vector<hmm_model> models;
};

void save_model_file(std::ostream& out, const model_file& file);
void save_model_file(const std::string& path, const model_file& file);

model_file load_model_file(std::istream& in);
model_file load_model_file(const std::string& path);

} // namespace hmmsnn

#endif
