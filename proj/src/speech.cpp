#include "hmmsnn/speech.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <numbers>
#include <sstream>

#include "hmmsnn/errors.hpp"

namespace hmmsnn {

namespace {

std::uint32_t read_u32(std::istream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

std::uint16_t read_u16(std::istream& in) {
    unsigned char b[2];
    in.read(reinterpret_cast<char*>(b), 2);
    return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
}

std::string read_tag(std::istream& in) {
    char tag[4];
    in.read(tag, 4);
    return in ? std::string(tag, 4) : std::string();
}

} // namespace

audio_signal load_pcm(std::istream& in) {
    if (read_tag(in) != "RIFF")
        throw format_error("wav: missing RIFF tag");
    read_u32(in); // riff size
    if (read_tag(in) != "WAVE")
        throw format_error("wav: missing WAVE tag");

    audio_signal signal;
    bool have_fmt = false;
    while (in) {
        const std::string tag = read_tag(in);
        if (tag.empty())
            break;
        const std::uint32_t chunk_size = read_u32(in);
        if (tag == "fmt ") {
            const std::uint16_t format = read_u16(in);
            const std::uint16_t channels = read_u16(in);
            const std::uint32_t rate = read_u32(in);
            read_u32(in); // byte rate
            read_u16(in); // block align
            const std::uint16_t bits = read_u16(in);
            if (format != 1)
                throw format_error("wav: unsupported format code (want 1 = PCM)");
            if (channels != 1)
                throw format_error("wav: unsupported channel count (want mono)");
            if (bits != 16)
                throw format_error("wav: unsupported bit depth (want 16)");
            signal.sample_rate = static_cast<double>(rate);
            have_fmt = true;
            if (chunk_size > 16)
                in.ignore(chunk_size - 16);
        } else if (tag == "data") {
            if (!have_fmt)
                throw format_error("wav: data chunk before fmt chunk");
            const std::size_t count = chunk_size / 2;
            signal.samples.resize(count);
            for (std::size_t i = 0; i < count; ++i) {
                unsigned char b[2];
                in.read(reinterpret_cast<char*>(b), 2);
                if (!in)
                    throw format_error("wav: truncated data chunk");
                const std::int16_t v = static_cast<std::int16_t>(b[0] | (b[1] << 8));
                signal.samples[i] = static_cast<double>(v) / 32768.0;
            }
            return signal;
        } else {
            in.ignore(chunk_size + (chunk_size & 1));
        }
    }
    throw format_error("wav: no data chunk found");
}

audio_signal load_pcm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw format_error("wav: cannot open " + path);
    return load_pcm(in);
}

std::vector<std::vector<double>> frame_signal(const audio_signal& signal, double frame_ms, double overlap) {
    if (signal.sample_rate <= 0.0)
        throw invalid_input_error("frame_signal: sample rate must be positive");
    const std::size_t frame_len = static_cast<std::size_t>(std::lround(signal.sample_rate * frame_ms * 1e-3));
    const std::size_t hop = static_cast<std::size_t>(std::lround(frame_len * (1.0 - overlap)));
    if (frame_len == 0 || hop == 0)
        throw invalid_input_error("frame_signal: degenerate frame length or hop");
    if (signal.samples.size() < frame_len)
        throw invalid_input_error("frame_signal: signal shorter than one frame");

    const std::size_t count = (signal.samples.size() - frame_len) / hop + 1;
    std::vector<std::vector<double>> frames(count);
    for (std::size_t m = 0; m < count; ++m) {
        const std::size_t start = m * hop;
        frames[m].assign(signal.samples.begin() + start, signal.samples.begin() + start + frame_len);
    }
    return frames;
}

std::vector<double> magnitude_spectrum(const std::vector<double>& frame) {
    const std::size_t n = frame.size();
    if (n < 2 || n % 2 != 0)
        throw invalid_input_error("magnitude_spectrum: frame length must be even and >= 2");
    const std::size_t bins = n / 2;
    std::vector<double> mags(bins);
    const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
    for (std::size_t k = 1; k <= bins; ++k) {
        double re = 0.0, im = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double a = step * static_cast<double>(k) * static_cast<double>(i);
            re += frame[i] * std::cos(a);
            im -= frame[i] * std::sin(a);
        }
        mags[k - 1] = std::hypot(re, im);
    }
    return mags;
}

rate_vector to_rates(const std::vector<double>& magnitudes, double r_max) {
    for (double m : magnitudes)
        if (m < 0.0)
            throw invalid_input_error("to_rates: magnitudes must be >= 0");
    const double peak = magnitudes.empty() ? 0.0 : *std::max_element(magnitudes.begin(), magnitudes.end());
    rate_vector rates;
    rates.rates.assign(magnitudes.size(), 0.0);
    if (peak > 0.0)
        for (std::size_t i = 0; i < magnitudes.size(); ++i)
            rates.rates[i] = r_max * magnitudes[i] / peak;
    return rates;
}

frame_sequence extract_frames(const audio_signal& signal, double frame_ms, double overlap) {
    const auto raw = frame_signal(signal, frame_ms, overlap);
    frame_sequence seq;
    seq.num_frames = raw.size();
    seq.num_features = raw.front().size() / 2;
    seq.data.reserve(seq.num_frames * seq.num_features);
    for (const auto& frame : raw) {
        const std::vector<double> mags = magnitude_spectrum(frame);
        seq.data.insert(seq.data.end(), mags.begin(), mags.end());
    }
    return seq;
}

void save_frames_csv(std::ostream& out, const frame_sequence& frames) {
    out.precision(12);
    for (std::size_t m = 0; m < frames.num_frames; ++m) {
        const double* row = frames.frame(m);
        for (std::size_t i = 0; i < frames.num_features; ++i)
            out << (i ? "," : "") << row[i];
        out << '\n';
    }
}

frame_sequence load_frames_csv(std::istream& in) {
    frame_sequence seq;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::istringstream ls(line);
        std::string cell;
        std::size_t count = 0;
        while (std::getline(ls, cell, ',')) {
            try {
                seq.data.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw format_error("frames csv: invalid number '" + cell + "'");
            }
            ++count;
        }
        if (seq.num_features == 0)
            seq.num_features = count;
        else if (count != seq.num_features)
            throw format_error("frames csv: ragged row");
        ++seq.num_frames;
    }
    if (seq.num_frames == 0)
        throw format_error("frames csv: empty input");
    return seq;
}

} // namespace hmmsnn
