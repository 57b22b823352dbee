#include "vidmine/keyframes.hpp"

#include "vidmine/errors.hpp"
#include "vidmine/vec.hpp"

#include <stdexcept>
#include <string>

namespace vidmine {

KeyFrameTriple select_keyframes(const Shot& shot) {
    if (shot.start > shot.end)
        throw std::invalid_argument("select_keyframes: shot start exceeds end");
    return KeyFrameTriple{shot.start, (shot.start + shot.end) / 2, shot.end};
}

Descriptor shot_descriptor(const KeyFrameTriple& triple,
                           std::span<const FrameHistogram> histograms) {
    auto resolve = [&](std::size_t frame) -> const FrameHistogram& {
        if (frame >= histograms.size())
            throw InputError("shot_descriptor: frame index " + std::to_string(frame) +
                             " outside histogram store of size " +
                             std::to_string(histograms.size()));
        return histograms[frame];
    };

    const Descriptor a = to_descriptor(resolve(triple.first));
    const Descriptor b = to_descriptor(resolve(triple.middle));
    const Descriptor c = to_descriptor(resolve(triple.last));
    if (b.values.size() != a.values.size() || c.values.size() != a.values.size())
        throw InputError("shot_descriptor: key frames have mismatched histogram dimensions");

    std::vector<double> mean = a.values;
    vec::add_in_place(mean, b.values);
    vec::add_in_place(mean, c.values);
    for (double& v : mean)
        v /= 3.0;

    const double norm = vec::l2_norm(mean);
    if (norm == 0.0)
        throw InputError("shot_descriptor: key-frame descriptors cancel to zero");
    return Descriptor{vec::scaled(mean, 1.0 / norm)};
}

} // namespace vidmine
