#ifndef HMMSNN_TRAIN_HPP
#define HMMSNN_TRAIN_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "hmmsnn/hmm.hpp"
#include "hmmsnn/segmentation.hpp"
#include "hmmsnn/speech.hpp"
#include "hmmsnn/spike.hpp"
#include "hmmsnn/wta.hpp"

namespace hmmsnn {

struct train_config {
    std::size_t num_states = 4;  // P (4 synthetic, 10 speech)
    std::size_t num_outputs = 8; // K
    std::size_t num_inputs = 80; // N
    std::size_t duration_ms = 20;
    std::size_t sigma_ms = 5;
    std::size_t iterations = 10; // 10 synthetic, 100 speech
    double eta0 = 0.05;
    double r_max = 340.0;
    std::uint64_t seed = 1;

    void validate() const;
};

// Presents the rasters in randomized order once per iteration; every 1 ms
// step is one learning event (EPSP vector, sampled winner, STDP update).
void train_state(wta_network& net, const std::vector<spike_raster>& segment_data,
                 std::size_t iterations, std::uint64_t seed, std::size_t sigma_ms = 5);

// Builds and trains the P state networks of one class model on
// segment-aligned raster samples (each sample holds one raster per state).
// State p trains on all segment-p rasters across samples. Per-state seeds
// are derived from (config.seed, class_id, state), so training the states
// in parallel gives the same model as training them sequentially.
hmm_model train_class_model(const std::string& label,
                            const std::vector<std::vector<spike_raster>>& samples,
                            const train_config& config, std::uint64_t class_id,
                            std::size_t jobs = 1);

// Synthetic benchmark path: trains one network per distinct sub-pattern
// letter on the pooled segments of that letter across all classes, then
// assembles each class model from the shared letter networks in label
// order. Letter networks are seeded from the letter alone, so the result
// is independent of class order and of jobs.
std::vector<hmm_model> train_synthetic_models(
    const std::vector<std::string>& class_labels,
    const std::vector<std::vector<std::vector<spike_raster>>>& samples_per_class,
    const train_config& config, std::size_t jobs = 1);

// Speech path: auto-segments each utterance into P segments, Poisson-encodes
// the frames, then trains as above.
hmm_model train_class_model_speech(const std::string& label,
                                   const std::vector<frame_sequence>& samples,
                                   const train_config& config, std::uint64_t class_id,
                                   std::size_t jobs = 1);

struct roc_point {
    double prior_ratio = 1.0;
    double false_positive_rate = 0.0;
    double true_positive_rate = 0.0;
    double accuracy = 0.0;
};

struct eval_report {
    std::vector<std::string> labels;      // model labels, row order
    std::vector<double> posterior_matrix; // row-major |models| x |classes|
    double accuracy = 0.0;
    std::vector<roc_point> roc_points;

    double posterior(std::size_t model, std::size_t desired) const {
        return posterior_matrix[model * labels.size() + desired];
    }
};

// Classifies every test item; posterior_matrix(r, c) is the mean normalized
// posterior of model r over items whose desired class is c.
eval_report evaluate(const std::vector<hmm_model>& models,
                     const std::vector<segmented_observation>& items,
                     const std::vector<std::size_t>& desired);

// Binary decision sweep: predict the positive class (model1) iff
// log L1 > log L0 + log(ratio). Emits FP/TP/accuracy per ratio.
std::vector<roc_point> prior_ratio_sweep(const hmm_model& model0, const hmm_model& model1,
                                         const std::vector<segmented_observation>& items,
                                         const std::vector<bool>& positive,
                                         const std::vector<double>& ratios);

} // namespace hmmsnn

#endif
