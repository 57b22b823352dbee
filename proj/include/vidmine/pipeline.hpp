#ifndef VIDMINE_PIPELINE_HPP
#define VIDMINE_PIPELINE_HPP

#include "vidmine/clustering.hpp"
#include "vidmine/grouping.hpp"
#include "vidmine/keyframes.hpp"
#include "vidmine/shots.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace vidmine {

enum class InputFormat { PpmDir, FeaturesJsonl };

enum class ClusterAlgo { Lsc, Kmeans, KmeansThenLsc };

struct PipelineConfig {
    std::filesystem::path input;
    InputFormat format = InputFormat::PpmDir;
    std::size_t bins_per_channel = 16;
    CutPolicy cut_policy;
    std::size_t k = 1;
    ClusterAlgo algo = ClusterAlgo::KmeansThenLsc;
    std::uint64_t seed = 0;
    std::size_t restarts = 1;
    GroupingStop grouping_stop; // defaults to target_count = k when unset
    std::size_t threads = 1;    // ingestion parallelism; results are
                                // assembled in frame order regardless
};

struct PipelineResult {
    std::size_t num_frames = 0;
    CutPolicy policy;
    std::vector<Shot> shots;
    std::vector<KeyFrameTriple> keyframes;
    std::vector<Descriptor> shot_descriptors;
    ClusterRun clustering;
    std::string algo_name;
    GroupingResult grouping;
    std::map<std::string, double> timings_ms;
};

// Loads per-frame histograms. PPM directories are read in ascending
// lexicographic filename order (only *.ppm files); JSON Lines records must
// be {"frame": t, "hist": [..]} with frames contiguous from 0. For JSONL
// the per-channel bin count is inferred from the first record.
std::vector<FrameHistogram> ingest(const std::filesystem::path& path,
                                   InputFormat format, std::size_t bins_per_channel,
                                   std::size_t threads = 1);

// Runs ingest -> distances -> cuts -> shots -> key frames -> shot
// descriptors -> clustering (restarts keep the best objective, seeds
// seed+0 .. seed+restarts-1) -> agglomeration. Deterministic given the
// config and seed; stage errors carry the stage name.
PipelineResult run_pipeline(const PipelineConfig& cfg);

// Clustering over precomputed shot descriptors, honoring cfg.algo and
// cfg.restarts. Exposed separately so partial CLI runs share one code path.
ClusterRun cluster_descriptors(const std::vector<Descriptor>& descriptors,
                               const PipelineConfig& cfg);

const char* to_string(ClusterAlgo algo);
const char* to_string(InputFormat format);
const char* to_string(CutMode mode);

} // namespace vidmine

#endif
