#ifndef HMMSNN_SPEECH_HPP
#define HMMSNN_SPEECH_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "hmmsnn/spike.hpp"

namespace hmmsnn {

struct audio_signal {
    std::vector<double> samples; // amplitudes in [-1, 1]
    double sample_rate = 0.0;    // Hz
};

// M feature frames of num_features non-negative magnitudes each.
struct frame_sequence {
    std::size_t num_frames = 0;
    std::size_t num_features = 0;
    std::vector<double> data; // row-major num_frames x num_features

    const double* frame(std::size_t m) const { return data.data() + m * num_features; }
    std::vector<double> frame_vec(std::size_t m) const {
        return {frame(m), frame(m) + num_features};
    }
};

// 16-bit signed little-endian mono PCM WAV; amplitudes divided by 32768.
audio_signal load_pcm(const std::string& path);
audio_signal load_pcm(std::istream& in);

// Fixed-length frames with the given overlap fraction; the trailing
// remainder is dropped. 20 ms / 0.5 gives length 160, hop 80 at 8 kHz.
std::vector<std::vector<double>> frame_signal(const audio_signal& signal,
                                              double frame_ms = 20.0,
                                              double overlap = 0.5);

// Magnitudes of DFT bins 1..n/2 (positive frequencies, DC excluded),
// so a 160-sample frame yields 80 features.
std::vector<double> magnitude_spectrum(const std::vector<double>& frame);

// Per-frame linear normalization: rates = r_max * mags / max(mags);
// an all-zero frame maps to all-zero rates.
rate_vector to_rates(const std::vector<double>& magnitudes, double r_max);

// Full front end: frame, transform, stack into a frame sequence.
frame_sequence extract_frames(const audio_signal& signal, double frame_ms = 20.0, double overlap = 0.5);

// CSV: one frame per line, comma-separated decimals.
void save_frames_csv(std::ostream& out, const frame_sequence& frames);
frame_sequence load_frames_csv(std::istream& in);

} // namespace hmmsnn

#endif
