#ifndef HMMSNN_HMM_HPP
#define HMMSNN_HMM_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "hmmsnn/segmentation.hpp"
#include "hmmsnn/speech.hpp"
#include "hmmsnn/spike.hpp"
#include "hmmsnn/wta.hpp"

namespace hmmsnn {

// Left-to-right HMM backbone with fixed transition parameters; one
// winner-take-all network per state provides the emission probabilities.
struct hmm_model {
    std::string label;
    double self_prob = 0.5;    // a_{p,p}
    double advance_prob = 0.5; // a_{p-1,p}
    double initial_prob = 1.0; // always starts in state 1
    std::size_t sigma_ms = 5;  // EPSP window used when scoring rasters
    std::vector<wta_network> states;

    std::size_t num_states() const { return states.size(); }
};

// A test item aligned to the state sequence: one or more 20 ms rasters per
// state. Sub-pattern observations carry exactly one raster per state and are
// scored without self transitions; speech observations carry one raster per
// frame and pay a self-transition factor per frame.
struct segmented_observation {
    enum class kind_t { subpattern, speech };
    kind_t kind = kind_t::subpattern;
    std::vector<std::vector<spike_raster>> segments;
};

segmented_observation make_subpattern_observation(std::vector<spike_raster> rasters);

// Poisson-encodes every frame for duration_ms and groups the rasters by the
// given boundaries. Encoding seeds are derived per frame so the observation
// is deterministic and shared by all models that score it.
segmented_observation make_speech_observation(const frame_sequence& frames,
                                              const segment_boundaries& boundaries,
                                              double r_max, std::size_t duration_ms,
                                              std::uint64_t seed);

// log Gamma + sum_{p>=2} log a_{p-1,p} + sum_p sum_t log snn_prob(state_p, epsp_p(t)).
double log_prob_subpattern(const hmm_model& model, const std::vector<spike_raster>& rasters);

// Speech variant: every frame of segment p additionally contributes log a_{p,p}.
double log_prob_speech(const hmm_model& model, const frame_sequence& frames,
                       const segment_boundaries& boundaries, double r_max, std::uint64_t seed);

double log_prob(const hmm_model& model, const segmented_observation& obs);

struct classify_result {
    std::size_t winner = 0;            // ties broken to the lowest model index
    std::vector<double> log_probs;     // one per model
    std::vector<double> posteriors;    // softmax-normalized across models
};

classify_result classify(const segmented_observation& obs, const std::vector<hmm_model>& models);

} // namespace hmmsnn

#endif
