#ifndef VIDMINE_KEYFRAMES_HPP
#define VIDMINE_KEYFRAMES_HPP

#include "vidmine/histogram.hpp"
#include "vidmine/shots.hpp"

#include <span>

namespace vidmine {

// First, middle, and last frame of a shot; middle = floor((start+end)/2).
// All three coincide for single-frame shots.
struct KeyFrameTriple {
    std::size_t first = 0;
    std::size_t middle = 0;
    std::size_t last = 0;
};

KeyFrameTriple select_keyframes(const Shot& shot);

// Fuses the three key frames into one shot descriptor: mean of the three
// frames' unit descriptors, re-normalized to unit length.
Descriptor shot_descriptor(const KeyFrameTriple& triple,
                           std::span<const FrameHistogram> histograms);

} // namespace vidmine

#endif
