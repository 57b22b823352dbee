#include "vidmine/histogram.hpp"

#include "vidmine/errors.hpp"
#include "vidmine/vec.hpp"

#include <cmath>
#include <sstream>

namespace vidmine {

FrameHistogram frame_histogram(const FrameImage& frame, std::size_t bins_per_channel) {
    if (bins_per_channel < 2)
        throw ConfigError("bins_per_channel must be >= 2");
    if (frame.width == 0 || frame.height == 0 ||
        frame.pixels.size() != frame.width * frame.height)
        throw InputError("frame pixel buffer does not match its dimensions");

    const std::size_t bins = bins_per_channel;
    std::vector<std::size_t> counts(3 * bins, 0);
    for (const Rgb& px : frame.pixels) {
        counts[px.r * bins / 256]++;
        counts[bins + px.g * bins / 256]++;
        counts[2 * bins + px.b * bins / 256]++;
    }

    FrameHistogram h;
    h.bins_per_channel = bins;
    h.values.resize(3 * bins);
    const double total = static_cast<double>(frame.pixels.size());
    for (std::size_t i = 0; i < counts.size(); ++i)
        h.values[i] = static_cast<double>(counts[i]) / total;
    return h;
}

double histogram_l1(const FrameHistogram& a, const FrameHistogram& b) {
    if (a.bins_per_channel != b.bins_per_channel ||
        a.values.size() != b.values.size()) {
        std::ostringstream msg;
        msg << "histogram dimension mismatch: " << a.values.size() << " vs "
            << b.values.size();
        throw InputError(msg.str());
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        sum += std::abs(a.values[i] - b.values[i]);
    return sum;
}

Descriptor to_descriptor(const FrameHistogram& h) {
    const double norm = vec::l2_norm(h.values);
    if (norm == 0.0)
        throw InputError("degenerate histogram: zero vector cannot be normalized");
    return Descriptor{vec::scaled(h.values, 1.0 / norm)};
}

bool is_unit_norm(const Descriptor& d, double tol) {
    return std::abs(vec::l2_norm(d.values) - 1.0) <= tol;
}

} // namespace vidmine
