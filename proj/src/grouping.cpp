#include "vidmine/grouping.hpp"

#include "vidmine/errors.hpp"
#include "vidmine/vec.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace vidmine {

namespace {

struct ActiveCluster {
    std::size_t creation_id = 0;
    std::vector<std::size_t> members;
    std::vector<double> sum; // members are unit vectors, so average-linkage
                             // similarity is dot(sum_a, sum_b) / (|a| * |b|)
};

void validate_unit_descriptors(const std::vector<Descriptor>& descriptors) {
    if (descriptors.empty())
        throw InputError("need at least one descriptor");
    const std::size_t dim = descriptors[0].values.size();
    for (std::size_t i = 0; i < descriptors.size(); ++i) {
        if (descriptors[i].values.size() != dim)
            throw InputError("descriptor " + std::to_string(i) +
                             " has mismatched dimension");
        if (!is_unit_norm(descriptors[i]))
            throw InputError("descriptor " + std::to_string(i) +
                             " is not unit-norm within 1e-9");
    }
}

} // namespace

double cosine_sim(const Descriptor& a, const Descriptor& b) {
    if (a.values.size() != b.values.size()) {
        std::ostringstream msg;
        msg << "descriptor dimension mismatch: " << a.values.size() << " vs "
            << b.values.size();
        throw InputError(msg.str());
    }
    return std::clamp(vec::dot(a.values, b.values), -1.0, 1.0);
}

GroupingResult agglomerate(const std::vector<Descriptor>& descriptors,
                           const GroupingStop& stop) {
    validate_unit_descriptors(descriptors);
    const std::size_t n = descriptors.size();
    if (stop.target_count && (*stop.target_count < 1 || *stop.target_count > n)) {
        std::ostringstream msg;
        msg << "target cluster count " << *stop.target_count
            << " outside [1, " << n << "]";
        throw ConfigError(msg.str());
    }
    const std::size_t target = stop.target_count.value_or(1);

    std::vector<ActiveCluster> active(n);
    for (std::size_t i = 0; i < n; ++i) {
        active[i].creation_id = i;
        active[i].members = {i};
        active[i].sum = descriptors[i].values;
    }

    GroupingResult result;
    result.dendrogram.leaf_count = n;
    std::size_t next_id = n;

    while (active.size() > target) {
        // Naive scan of all active pairs; active stays ordered by creation
        // id, so strict '>' picks the lowest (a, b) among exact ties.
        std::size_t best_a = 0, best_b = 0;
        double best_sim = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < active.size(); ++i) {
            for (std::size_t j = i + 1; j < active.size(); ++j) {
                const double sim =
                    vec::dot(active[i].sum, active[j].sum) /
                    (static_cast<double>(active[i].members.size()) *
                     static_cast<double>(active[j].members.size()));
                if (sim > best_sim) {
                    best_sim = sim;
                    best_a = i;
                    best_b = j;
                }
            }
        }
        if (stop.similarity_floor && best_sim < *stop.similarity_floor)
            break;

        ActiveCluster merged;
        merged.creation_id = next_id++;
        merged.members = active[best_a].members;
        merged.members.insert(merged.members.end(), active[best_b].members.begin(),
                              active[best_b].members.end());
        merged.sum = active[best_a].sum;
        vec::add_in_place(merged.sum, active[best_b].sum);

        result.dendrogram.merges.push_back(
            Merge{active[best_a].creation_id, active[best_b].creation_id, best_sim});

        // best_a < best_b; erase the later element first.
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(best_b));
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(best_a));
        active.push_back(std::move(merged));
    }

    // Surviving clusters are labeled in creation order.
    std::sort(active.begin(), active.end(),
              [](const ActiveCluster& x, const ActiveCluster& y) {
                  return x.creation_id < y.creation_id;
              });
    result.labels.assign(n, 0);
    for (std::size_t label = 0; label < active.size(); ++label)
        for (std::size_t member : active[label].members)
            result.labels[member] = label;
    return result;
}

std::vector<ShotScore> query_shots(const Descriptor& query,
                                   const std::vector<Descriptor>& shot_descriptors,
                                   std::size_t top_k) {
    if (top_k < 1)
        throw ConfigError("top_k must be >= 1");
    if (shot_descriptors.empty())
        throw InputError("no shot descriptors to query");

    std::vector<ShotScore> ranked(shot_descriptors.size());
    for (std::size_t i = 0; i < shot_descriptors.size(); ++i)
        ranked[i] = ShotScore{i, cosine_sim(query, shot_descriptors[i])};

    std::sort(ranked.begin(), ranked.end(), [](const ShotScore& x, const ShotScore& y) {
        if (x.score != y.score)
            return x.score > y.score;
        return x.shot < y.shot;
    });
    if (ranked.size() > top_k)
        ranked.resize(top_k);
    return ranked;
}

} // namespace vidmine
