#ifndef VIDMINE_CLUSTERING_HPP
#define VIDMINE_CLUSTERING_HPP

#include "vidmine/descriptor.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace vidmine {

// Per-cluster cached state. The cohesion of a cluster is the norm of its
// descriptor sum; the concept vector is that sum normalized.
struct ClusterState {
    std::set<std::size_t> members;
    std::vector<double> sum;            // D_i = sum of member descriptors
    double norm = 0.0;                  // ||D_i||
    std::vector<double> concept_vector; // D_i / ||D_i||
};

// Candidate relocation of one descriptor with its objective gain.
struct MoveDelta {
    std::size_t doc = 0;
    std::size_t source = 0;
    std::size_t target = 0;
    double gain = 0.0;
};

struct LscConfig {
    std::uint64_t seed = 0;
    // Maximum accepted moves per run; unset means 10 * N * K.
    std::optional<std::size_t> max_moves;
    // Minimal accepted gain: a move is taken only when its gain exceeds this.
    double epsilon = 1e-12;
    std::size_t restarts = 1;
    // Full recomputation of every cluster sum after this many moves.
    std::size_t refresh_interval = 256;
};

// K disjoint non-empty clusters over N unit descriptors. Owns a copy of
// the descriptors so moves can be evaluated from the partition alone.
class Partition {
public:
    Partition() = default;

    // Validates: assignment in range, every cluster non-empty, descriptors
    // unit-norm with one shared dimension, no cluster sum exactly zero.
    static Partition create(std::vector<Descriptor> docs,
                            std::vector<std::size_t> assignment,
                            std::size_t k);

    std::size_t k() const { return clusters_.size(); }
    std::size_t size() const { return docs_.size(); }
    std::size_t dim() const { return docs_.empty() ? 0 : docs_[0].values.size(); }
    const std::vector<Descriptor>& docs() const { return docs_; }
    const std::vector<std::size_t>& assignment() const { return assignment_; }
    const ClusterState& cluster(std::size_t i) const { return clusters_.at(i); }

    // Applies a validated move: membership, sum vectors (D_i -= d, D_j += d),
    // norms and concept vectors are all updated.
    void apply_move(const MoveDelta& move);

    // Replaces the whole assignment and rebuilds every cluster.
    void set_assignment(std::vector<std::size_t> assignment);

    // Recomputes every cluster sum from its members, clearing drift.
    void refresh_sums();

    // Largest |cached - recomputed| over all sum components.
    double max_sum_drift() const;

private:
    void rebuild();

    std::vector<Descriptor> docs_;
    std::vector<std::size_t> assignment_;
    std::vector<ClusterState> clusters_;
};

// Outcome of a clustering run: final partition, objective trace (initial
// value, then after each accepted move or sweep), accepted move count and
// the seed of the winning restart.
struct ClusterRun {
    Partition partition;
    std::vector<double> trace;
    std::size_t moves = 0;
    std::uint64_t seed = 0;
};

// Cohesion E(S) = ||D||.
double cohesion(const ClusterState& cluster);

// Partition objective E(P) = sum of cluster cohesions, maximized.
double objective(const Partition& p);

// Spherical k-means reassignment score d . (c_j - c_i) under the current
// concept vectors. Requires doc to live in source and target != source.
double kmeans_delta(const Partition& p, std::size_t doc, std::size_t source,
                    std::size_t target);

// Exact objective gain of moving one descriptor, computed incrementally
// from cached norms and concept dots:
//   (sqrt(||Di||^2 - 2||Di|| d.ci + 1) - ||Di||)
// + (sqrt(||Dj||^2 + 2||Dj|| d.cj + 1) - ||Dj||).
// The move must not empty its source cluster.
double incremental_delta(const Partition& p, std::size_t doc, std::size_t source,
                         std::size_t target);

// Steepest-ascent scan over every non-emptying single-descriptor move;
// returns the one of maximal gain if that gain exceeds epsilon. Ties break
// to the lowest doc id, then the lowest target cluster index.
std::optional<MoveDelta> best_move(const Partition& p, double epsilon);

// One local-search step: apply best_move if present. Returns the updated
// partition plus the move taken, or the input unchanged and nullopt.
std::pair<Partition, std::optional<MoveDelta>> tcls_step(const Partition& p,
                                                         double epsilon);

// Seeded random partition with no empty cluster: after a seeded shuffle the
// first K items are dealt one per cluster, the rest assigned uniformly.
Partition init_partition(const std::vector<Descriptor>& docs, std::size_t k,
                         std::uint64_t seed);

// Local-search clustering: repeat tcls_step until no move gains more than
// epsilon or max_moves is reached. With cfg.restarts = r, runs seeds
// cfg.seed .. cfg.seed + r - 1 independently and keeps the best objective.
ClusterRun lsc_cluster(const std::vector<Descriptor>& docs, std::size_t k,
                       const LscConfig& cfg);

// Single local-search run from a supplied starting partition.
ClusterRun lsc_refine(Partition p, const LscConfig& cfg);

// Batch spherical k-means: per sweep, freeze concept vectors, send each
// descriptor to its best positive-delta target (skipping moves that would
// empty their source given earlier accepted moves in the sweep), then
// recompute all cluster state. Stops on a sweep with no accepted move.
ClusterRun kmeans_cluster(const std::vector<Descriptor>& docs, std::size_t k,
                          const LscConfig& cfg);

// Exhaustive test oracle: enumerates every assignment with all clusters
// non-empty and returns one maximizing the objective (ties resolve to the
// lexicographically smallest assignment vector). Guarded to K^N <= 1e6.
Partition brute_force_optimum(const std::vector<Descriptor>& docs, std::size_t k);

} // namespace vidmine

#endif
