#include "vidmine/shots.hpp"

#include "vidmine/errors.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace vidmine {

std::vector<double> consecutive_distances(const std::vector<FrameHistogram>& histograms) {
    if (histograms.size() < 2)
        throw InputError("video too short: need at least 2 frames, got " +
                         std::to_string(histograms.size()));
    std::vector<double> distances(histograms.size() - 1);
    for (std::size_t t = 0; t + 1 < histograms.size(); ++t)
        distances[t] = histogram_l1(histograms[t], histograms[t + 1]);
    return distances;
}

std::vector<std::size_t> detect_cuts(const std::vector<double>& distances,
                                     const CutPolicy& policy) {
    if (distances.empty())
        throw InputError("no frame-to-frame distances to threshold");

    double threshold = 0.0;
    if (policy.mode == CutMode::Fixed) {
        if (policy.tau <= 0.0)
            throw ConfigError("fixed cut policy requires tau > 0");
        threshold = policy.tau;
    } else {
        if (policy.alpha <= 0.0)
            throw ConfigError("adaptive cut policy requires alpha > 0");
        double mean = 0.0;
        for (double d : distances)
            mean += d;
        mean /= static_cast<double>(distances.size());
        // Population (not sample) stddev: well defined for one distance.
        double var = 0.0;
        for (double d : distances)
            var += (d - mean) * (d - mean);
        var /= static_cast<double>(distances.size());
        threshold = mean + policy.alpha * std::sqrt(var);
    }

    std::vector<std::size_t> cuts;
    for (std::size_t t = 0; t < distances.size(); ++t)
        if (distances[t] > threshold)
            cuts.push_back(t);
    return cuts;
}

std::vector<Shot> build_shots(std::size_t num_frames,
                              const std::vector<std::size_t>& cuts) {
    if (num_frames == 0)
        throw std::invalid_argument("build_shots: num_frames must be >= 1");
    for (std::size_t i = 0; i < cuts.size(); ++i) {
        if (cuts[i] + 1 >= num_frames) {
            std::ostringstream msg;
            msg << "build_shots: cut position " << cuts[i] << " out of range [0, "
                << num_frames - 2 << "]";
            throw std::invalid_argument(msg.str());
        }
        if (i > 0 && cuts[i] <= cuts[i - 1])
            throw std::invalid_argument("build_shots: cut positions must be strictly ascending");
    }

    std::vector<Shot> shots;
    std::size_t start = 0;
    for (std::size_t cut : cuts) {
        shots.push_back(Shot{shots.size(), start, cut});
        start = cut + 1;
    }
    shots.push_back(Shot{shots.size(), start, num_frames - 1});
    return shots;
}

} // namespace vidmine
