#ifndef VIDMINE_GROUPING_HPP
#define VIDMINE_GROUPING_HPP

#include "vidmine/descriptor.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace vidmine {

// One agglomeration step: clusters a and b (creation ids; leaves are
// 0..N-1, the cluster created by merge t gets id N+t) joined at the stated
// average-linkage cosine similarity.
struct Merge {
    std::size_t a = 0;
    std::size_t b = 0;
    double similarity = 0.0;
};

struct Dendrogram {
    std::size_t leaf_count = 0;
    std::vector<Merge> merges;
};

// Stop rule: reach target_count clusters, or stop once the best available
// merge similarity drops below similarity_floor. Unset fields do not
// constrain; with neither set the agglomeration runs to a single cluster.
struct GroupingStop {
    std::optional<std::size_t> target_count;
    std::optional<double> similarity_floor;
};

// Final cluster labels, numbered by creation order of the surviving
// clusters, plus the dendrogram of performed merges.
struct GroupingResult {
    Dendrogram dendrogram;
    std::vector<std::size_t> labels;
};

// Ranked retrieval hit.
struct ShotScore {
    std::size_t shot = 0;
    double score = 0.0;
};

// Dot product of two unit descriptors, clamped to [-1, 1].
double cosine_sim(const Descriptor& a, const Descriptor& b);

// Average-linkage agglomerative clustering under cosine similarity. Each
// step merges the active pair of highest average pairwise similarity; ties
// resolve to the lowest creation ids.
GroupingResult agglomerate(const std::vector<Descriptor>& descriptors,
                           const GroupingStop& stop);

// Ranks every shot descriptor by cosine similarity to the query, ties to
// the lower shot id, truncated to top_k.
std::vector<ShotScore> query_shots(const Descriptor& query,
                                   const std::vector<Descriptor>& shot_descriptors,
                                   std::size_t top_k);

} // namespace vidmine

#endif
