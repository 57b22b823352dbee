#ifndef VIDMINE_SHOTS_HPP
#define VIDMINE_SHOTS_HPP

#include "vidmine/histogram.hpp"

#include <cstddef>
#include <vector>

namespace vidmine {

// Contiguous frame range [start, end], both inclusive. Shots of one video
// tile [0, num_frames - 1] with no gaps or overlaps.
struct Shot {
    std::size_t id = 0;
    std::size_t start = 0;
    std::size_t end = 0;
};

enum class CutMode { Fixed, Adaptive };

// Fixed mode: boundary where distance > tau.
// Adaptive mode: boundary where distance > mean + alpha * population stddev.
struct CutPolicy {
    CutMode mode = CutMode::Fixed;
    double tau = 1.0;
    double alpha = 3.0;
};

// Pairwise L1 distance between consecutive frame histograms; output length
// is histograms.size() - 1. Requires at least two frames.
std::vector<double> consecutive_distances(const std::vector<FrameHistogram>& histograms);

// Cut positions t, each meaning a boundary between frames t and t+1.
// Strict '>' at the threshold, so an all-identical video yields no cuts.
std::vector<std::size_t> detect_cuts(const std::vector<double>& distances,
                                     const CutPolicy& policy);

// Cuts {c1 < ... < ck} produce shots [0,c1], [c1+1,c2], ..., [ck+1, n-1].
std::vector<Shot> build_shots(std::size_t num_frames,
                              const std::vector<std::size_t>& cuts);

} // namespace vidmine

#endif
