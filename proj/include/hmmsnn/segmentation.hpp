#ifndef HMMSNN_SEGMENTATION_HPP
#define HMMSNN_SEGMENTATION_HPP

#include <cstddef>
#include <vector>

#include "hmmsnn/speech.hpp"

namespace hmmsnn {

// Contiguous partition of M frames into P segments, stored as the last
// frame index of each segment. Strictly increasing; the final entry is M-1.
struct segment_boundaries {
    std::vector<std::size_t> last_index;

    std::size_t num_segments() const { return last_index.size(); }
    std::size_t segment_begin(std::size_t p) const { return p == 0 ? 0 : last_index[p - 1] + 1; }
    std::size_t segment_end(std::size_t p) const { return last_index[p] + 1; } // exclusive
};

segment_boundaries equal_width_boundaries(std::size_t num_frames, std::size_t num_segments);

// Contiguity-constrained k-means: starting from equal-width segments,
// repeatedly sweep the boundaries forward while the next frame is at least
// as close (Euclidean) to the current segment's centroid as to the next
// segment's, recomputing centroids as the partition changes. Stops when the
// number of frames that changed segment is <= threshold or after max_iter
// passes. Every segment keeps at least one frame.
segment_boundaries auto_segment(const frame_sequence& frames,
                                std::size_t num_segments,
                                std::size_t threshold = 0,
                                std::size_t max_iter = 100);

} // namespace hmmsnn

#endif
