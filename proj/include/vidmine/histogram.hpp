#ifndef VIDMINE_HISTOGRAM_HPP
#define VIDMINE_HISTOGRAM_HPP

#include "vidmine/descriptor.hpp"
#include "vidmine/image.hpp"

#include <cstddef>
#include <vector>

namespace vidmine {

// Concatenated per-channel color histogram: R bins, then G, then B.
// Each channel block is normalized to sum 1, so the vector sums to 3.
struct FrameHistogram {
    std::size_t bins_per_channel = 0;
    std::vector<double> values; // length 3 * bins_per_channel
};

// Bins channel value v into floor(v * bins / 256); v = 255 lands in the
// last bin. Requires bins >= 2.
FrameHistogram frame_histogram(const FrameImage& frame, std::size_t bins_per_channel);

// Sum of |a_t - b_t| over all 3B components; range [0, 6].
double histogram_l1(const FrameHistogram& a, const FrameHistogram& b);

// L2-normalizes the histogram vector into a unit descriptor.
Descriptor to_descriptor(const FrameHistogram& h);

} // namespace vidmine

#endif
