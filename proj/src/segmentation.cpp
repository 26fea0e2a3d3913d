#include "hmmsnn/segmentation.hpp"

#include <algorithm>

#include "hmmsnn/errors.hpp"

namespace hmmsnn {

namespace {

double sq_distance(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

// Mean of the frames whose label equals p.
std::vector<double> centroid_of(const frame_sequence& frames, const std::vector<std::size_t>& labels,
                                std::size_t p) {
    std::vector<double> c(frames.num_features, 0.0);
    std::size_t count = 0;
    for (std::size_t m = 0; m < frames.num_frames; ++m) {
        if (labels[m] != p)
            continue;
        const double* row = frames.frame(m);
        for (std::size_t i = 0; i < frames.num_features; ++i)
            c[i] += row[i];
        ++count;
    }
    if (count > 0)
        for (double& v : c)
            v /= static_cast<double>(count);
    return c;
}

} // namespace

segment_boundaries equal_width_boundaries(std::size_t num_frames, std::size_t num_segments) {
    if (num_segments == 0 || num_frames < num_segments)
        throw invalid_input_error("equal_width_boundaries: need M >= P >= 1");
    segment_boundaries b;
    b.last_index.resize(num_segments);
    for (std::size_t p = 0; p < num_segments; ++p)
        b.last_index[p] = (p + 1) * num_frames / num_segments - 1;
    return b;
}

segment_boundaries auto_segment(const frame_sequence& frames, std::size_t num_segments,
                                std::size_t threshold, std::size_t max_iter) {
    const std::size_t M = frames.num_frames;
    const std::size_t P = num_segments;
    if (P == 0 || M < P)
        throw invalid_input_error("auto_segment: need M >= P >= 1");

    segment_boundaries bounds = equal_width_boundaries(M, P);
    if (P == 1 || M == P)
        return bounds;

    std::vector<std::size_t> labels(M);
    for (std::size_t p = 0, m = 0; p < P; ++p)
        for (; m <= bounds.last_index[p]; ++m)
            labels[m] = p;

    std::vector<std::vector<double>> centroids(P);
    for (std::size_t p = 0; p < P; ++p)
        centroids[p] = centroid_of(frames, labels, p);

    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        const std::vector<std::size_t> prev_labels = labels;
        std::size_t pos = 0;
        for (std::size_t p = 0; p + 1 < P; ++p) {
            // The segment keeps the frame at `pos`; the sweep may then claim
            // further frames, but must leave one frame per remaining segment.
            const std::size_t limit = M - (P - 1 - p); // max exclusive end of segment p
            std::size_t last = pos;
            while (last + 1 < limit &&
                   sq_distance(frames.frame(last + 1), centroids[p].data(), frames.num_features) <=
                       sq_distance(frames.frame(last + 1), centroids[p + 1].data(), frames.num_features)) {
                ++last;
            }
            bounds.last_index[p] = last;
            for (std::size_t m = pos; m <= last; ++m)
                labels[m] = p;
            // Frames displaced past the new boundary fall to the next segment.
            for (std::size_t m = last + 1; m < M && labels[m] <= p; ++m)
                labels[m] = p + 1;
            centroids[p] = centroid_of(frames, labels, p);
            centroids[p + 1] = centroid_of(frames, labels, p + 1);
            pos = last + 1;
        }
        bounds.last_index[P - 1] = M - 1;
        for (std::size_t m = pos; m < M; ++m)
            labels[m] = P - 1;

        std::size_t changed = 0;
        for (std::size_t m = 0; m < M; ++m)
            if (labels[m] != prev_labels[m])
                ++changed;
        if (changed <= threshold)
            break;
    }
    return bounds;
}

} // namespace hmmsnn
