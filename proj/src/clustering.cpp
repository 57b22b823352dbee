#include "vidmine/clustering.hpp"

#include "vidmine/errors.hpp"
#include "vidmine/rng.hpp"
#include "vidmine/vec.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace vidmine {

namespace {

void validate_docs(const std::vector<Descriptor>& docs, std::size_t k) {
    if (k < 1)
        throw ConfigError("cluster count must be >= 1");
    if (docs.size() < k) {
        std::ostringstream msg;
        msg << "not enough items: " << docs.size() << " descriptors for k=" << k;
        throw ConfigError(msg.str());
    }
    const std::size_t dim = docs.empty() ? 0 : docs[0].values.size();
    if (dim == 0)
        throw InputError("descriptors must have dimension >= 1");
    for (std::size_t i = 0; i < docs.size(); ++i) {
        if (docs[i].values.size() != dim)
            throw InputError("descriptor " + std::to_string(i) +
                             " has mismatched dimension");
        if (!is_unit_norm(docs[i]))
            throw InputError("descriptor " + std::to_string(i) +
                             " is not unit-norm within 1e-9");
    }
}

void finish_cluster_state(ClusterState& c) {
    c.norm = vec::l2_norm(c.sum);
    if (c.norm == 0.0)
        throw InternalError("cluster sum cancelled to the zero vector");
    c.concept_vector = vec::scaled(c.sum, 1.0 / c.norm);
}

std::size_t effective_max_moves(const LscConfig& cfg, std::size_t n, std::size_t k) {
    if (cfg.max_moves) {
        if (*cfg.max_moves < 1)
            throw ConfigError("max_moves must be >= 1");
        return *cfg.max_moves;
    }
    return std::max<std::size_t>(1, 10 * n * k);
}

void validate_config(const LscConfig& cfg) {
    if (cfg.epsilon < 0.0)
        throw ConfigError("epsilon must be >= 0");
    if (cfg.restarts < 1)
        throw ConfigError("restarts must be >= 1");
    if (cfg.refresh_interval < 1)
        throw ConfigError("refresh_interval must be >= 1");
}

// Gain of removing doc d from a cluster, by the cached-norm identity
// ||Di - d|| - ||Di|| with d.d = 1.
double removal_term(const ClusterState& c, std::span<const double> d) {
    const double arg =
        c.norm * c.norm - 2.0 * c.norm * vec::dot(d, c.concept_vector) + 1.0;
    return std::sqrt(std::max(arg, 0.0)) - c.norm;
}

// Gain of inserting doc d into a cluster: ||Dj + d|| - ||Dj||.
double insertion_term(const ClusterState& c, std::span<const double> d) {
    const double arg =
        c.norm * c.norm + 2.0 * c.norm * vec::dot(d, c.concept_vector) + 1.0;
    return std::sqrt(std::max(arg, 0.0)) - c.norm;
}

} // namespace

Partition Partition::create(std::vector<Descriptor> docs,
                            std::vector<std::size_t> assignment,
                            std::size_t k) {
    validate_docs(docs, k);
    if (assignment.size() != docs.size())
        throw std::invalid_argument("assignment size does not match descriptor count");
    for (std::size_t a : assignment)
        if (a >= k)
            throw std::invalid_argument("assignment index out of range");

    Partition p;
    p.docs_ = std::move(docs);
    p.assignment_ = std::move(assignment);
    p.clusters_.resize(k);
    p.rebuild();
    return p;
}

void Partition::rebuild() {
    const std::size_t d = dim();
    for (ClusterState& c : clusters_) {
        c.members.clear();
        c.sum.assign(d, 0.0);
    }
    for (std::size_t doc = 0; doc < docs_.size(); ++doc) {
        ClusterState& c = clusters_[assignment_[doc]];
        c.members.insert(doc);
        vec::add_in_place(c.sum, docs_[doc].values);
    }
    for (std::size_t i = 0; i < clusters_.size(); ++i) {
        if (clusters_[i].members.empty())
            throw std::invalid_argument("cluster " + std::to_string(i) + " is empty");
        finish_cluster_state(clusters_[i]);
    }
}

void Partition::apply_move(const MoveDelta& move) {
    if (move.doc >= docs_.size() || move.source >= k() || move.target >= k())
        throw std::invalid_argument("apply_move: index out of range");
    if (move.source == move.target)
        throw std::invalid_argument("apply_move: source equals target");
    if (assignment_[move.doc] != move.source)
        throw std::invalid_argument("apply_move: doc is not in the stated source cluster");
    if (clusters_[move.source].members.size() < 2)
        throw std::invalid_argument("apply_move: move would empty cluster " +
                                    std::to_string(move.source));

    ClusterState& src = clusters_[move.source];
    ClusterState& tgt = clusters_[move.target];
    const std::vector<double>& d = docs_[move.doc].values;

    src.members.erase(move.doc);
    vec::sub_in_place(src.sum, d);
    finish_cluster_state(src);

    tgt.members.insert(move.doc);
    vec::add_in_place(tgt.sum, d);
    finish_cluster_state(tgt);

    assignment_[move.doc] = move.target;
}

void Partition::set_assignment(std::vector<std::size_t> assignment) {
    if (assignment.size() != docs_.size())
        throw std::invalid_argument("assignment size does not match descriptor count");
    for (std::size_t a : assignment)
        if (a >= k())
            throw std::invalid_argument("assignment index out of range");
    assignment_ = std::move(assignment);
    rebuild();
}

void Partition::refresh_sums() {
    const std::size_t d = dim();
    for (ClusterState& c : clusters_) {
        c.sum.assign(d, 0.0);
        for (std::size_t doc : c.members)
            vec::add_in_place(c.sum, docs_[doc].values);
        finish_cluster_state(c);
    }
}

double Partition::max_sum_drift() const {
    double worst = 0.0;
    for (const ClusterState& c : clusters_) {
        std::vector<double> fresh(dim(), 0.0);
        for (std::size_t doc : c.members)
            vec::add_in_place(fresh, docs_[doc].values);
        for (std::size_t t = 0; t < fresh.size(); ++t)
            worst = std::max(worst, std::abs(fresh[t] - c.sum[t]));
    }
    return worst;
}

double cohesion(const ClusterState& cluster) {
    return cluster.norm;
}

double objective(const Partition& p) {
    double e = 0.0;
    for (std::size_t i = 0; i < p.k(); ++i)
        e += p.cluster(i).norm;
    return e;
}

double kmeans_delta(const Partition& p, std::size_t doc, std::size_t source,
                    std::size_t target) {
    if (doc >= p.size() || source >= p.k() || target >= p.k())
        throw std::invalid_argument("kmeans_delta: index out of range");
    if (target == source)
        throw std::invalid_argument("kmeans_delta: target equals source");
    if (p.assignment()[doc] != source)
        throw std::invalid_argument("kmeans_delta: doc is not in the stated source cluster");
    const std::vector<double>& d = p.docs()[doc].values;
    return vec::dot(d, p.cluster(target).concept_vector) -
           vec::dot(d, p.cluster(source).concept_vector);
}

double incremental_delta(const Partition& p, std::size_t doc, std::size_t source,
                         std::size_t target) {
    if (doc >= p.size() || source >= p.k() || target >= p.k())
        throw std::invalid_argument("incremental_delta: index out of range");
    if (target == source)
        throw std::invalid_argument("incremental_delta: target equals source");
    if (p.assignment()[doc] != source)
        throw std::invalid_argument("incremental_delta: doc is not in the stated source cluster");
    if (p.cluster(source).members.size() < 2)
        throw std::invalid_argument("incremental_delta: move would empty cluster " +
                                    std::to_string(source));
    const std::vector<double>& d = p.docs()[doc].values;
    return removal_term(p.cluster(source), d) + insertion_term(p.cluster(target), d);
}

std::optional<MoveDelta> best_move(const Partition& p, double epsilon) {
    std::optional<MoveDelta> best;
    double best_gain = -std::numeric_limits<double>::infinity();
    for (std::size_t doc = 0; doc < p.size(); ++doc) {
        const std::size_t source = p.assignment()[doc];
        if (p.cluster(source).members.size() < 2)
            continue;
        const std::vector<double>& d = p.docs()[doc].values;
        const double removal = removal_term(p.cluster(source), d);
        for (std::size_t target = 0; target < p.k(); ++target) {
            if (target == source)
                continue;
            const double gain = removal + insertion_term(p.cluster(target), d);
            // Strict '>' keeps the lowest doc id, then lowest target index,
            // among exactly tied gains.
            if (gain > best_gain) {
                best_gain = gain;
                best = MoveDelta{doc, source, target, gain};
            }
        }
    }
    if (!best || best->gain <= epsilon)
        return std::nullopt;
    return best;
}

std::pair<Partition, std::optional<MoveDelta>> tcls_step(const Partition& p,
                                                         double epsilon) {
    Partition next = p;
    std::optional<MoveDelta> move = best_move(next, epsilon);
    if (move)
        next.apply_move(*move);
    return {std::move(next), move};
}

Partition init_partition(const std::vector<Descriptor>& docs, std::size_t k,
                         std::uint64_t seed) {
    validate_docs(docs, k);
    std::mt19937_64 gen(seed);
    std::vector<std::size_t> order(docs.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    rng::shuffle(order, gen);

    std::vector<std::size_t> assignment(docs.size());
    for (std::size_t t = 0; t < docs.size(); ++t)
        assignment[order[t]] = t < k ? t : rng::bounded(gen, k);
    return Partition::create(docs, std::move(assignment), k);
}

ClusterRun lsc_refine(Partition p, const LscConfig& cfg) {
    validate_config(cfg);
    const std::size_t max_moves = effective_max_moves(cfg, p.size(), p.k());

    ClusterRun run;
    run.seed = cfg.seed;
    run.trace.push_back(objective(p));
    while (run.moves < max_moves) {
        std::optional<MoveDelta> move = best_move(p, cfg.epsilon);
        if (!move)
            break;
        p.apply_move(*move);
        ++run.moves;
        if (run.moves % cfg.refresh_interval == 0)
            p.refresh_sums();
        run.trace.push_back(objective(p));
    }
    p.refresh_sums();
    run.partition = std::move(p);
    return run;
}

ClusterRun lsc_cluster(const std::vector<Descriptor>& docs, std::size_t k,
                       const LscConfig& cfg) {
    validate_docs(docs, k);
    validate_config(cfg);

    std::optional<ClusterRun> best;
    double best_objective = -std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < cfg.restarts; ++r) {
        LscConfig one = cfg;
        one.seed = cfg.seed + r;
        one.restarts = 1;
        ClusterRun run = lsc_refine(init_partition(docs, k, one.seed), one);
        const double obj = objective(run.partition);
        if (obj > best_objective) {
            best_objective = obj;
            best = std::move(run);
        }
    }
    return std::move(*best);
}

ClusterRun kmeans_cluster(const std::vector<Descriptor>& docs, std::size_t k,
                          const LscConfig& cfg) {
    validate_docs(docs, k);
    validate_config(cfg);
    const std::size_t max_moves = effective_max_moves(cfg, docs.size(), k);

    std::optional<ClusterRun> best;
    double best_objective = -std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < cfg.restarts; ++r) {
        const std::uint64_t seed = cfg.seed + r;
        Partition p = init_partition(docs, k, seed);

        ClusterRun run;
        run.seed = seed;
        run.trace.push_back(objective(p));
        bool budget_left = true;
        while (budget_left) {
            // Freeze this sweep's concept vectors and sizes.
            std::vector<std::vector<double>> concepts(k);
            std::vector<std::size_t> sizes(k);
            for (std::size_t i = 0; i < k; ++i) {
                concepts[i] = p.cluster(i).concept_vector;
                sizes[i] = p.cluster(i).members.size();
            }

            std::vector<std::size_t> assignment = p.assignment();
            std::size_t applied = 0;
            for (std::size_t doc = 0; doc < docs.size() && budget_left; ++doc) {
                const std::size_t source = assignment[doc];
                const std::vector<double>& d = docs[doc].values;
                const double at_source = vec::dot(d, concepts[source]);
                std::size_t best_target = source;
                double best_delta = -std::numeric_limits<double>::infinity();
                for (std::size_t j = 0; j < k; ++j) {
                    if (j == source)
                        continue;
                    const double delta = vec::dot(d, concepts[j]) - at_source;
                    if (delta > best_delta) { // ties resolve to the lowest j
                        best_delta = delta;
                        best_target = j;
                    }
                }
                if (best_target == source || best_delta <= cfg.epsilon)
                    continue;
                if (sizes[source] < 2)
                    continue; // would empty its source after earlier accepted moves
                assignment[doc] = best_target;
                --sizes[source];
                ++sizes[best_target];
                ++applied;
                ++run.moves;
                if (run.moves >= max_moves)
                    budget_left = false;
            }

            if (applied == 0)
                break;
            p.set_assignment(std::move(assignment));
            run.trace.push_back(objective(p));
        }

        run.partition = std::move(p);
        const double obj = objective(run.partition);
        if (obj > best_objective) {
            best_objective = obj;
            best = std::move(run);
        }
    }
    return std::move(*best);
}

Partition brute_force_optimum(const std::vector<Descriptor>& docs, std::size_t k) {
    validate_docs(docs, k);
    const std::size_t n = docs.size();

    double combinations = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        combinations *= static_cast<double>(k);
        if (combinations > 1e6)
            throw ConfigError("brute_force_optimum: K^N exceeds the 1e6 guard");
    }

    const std::size_t dim = docs[0].values.size();
    std::vector<std::size_t> assignment(n, 0);
    std::vector<std::size_t> best_assignment;
    double best_objective = -std::numeric_limits<double>::infinity();
    std::vector<double> sums(k * dim);
    std::vector<std::size_t> counts(k);

    // Odometer over assignment vectors in ascending lexicographic order;
    // keeping strictly better objectives leaves the lexicographically
    // smallest vector among exact ties.
    while (true) {
        std::fill(counts.begin(), counts.end(), 0);
        for (std::size_t a : assignment)
            ++counts[a];
        if (std::all_of(counts.begin(), counts.end(),
                        [](std::size_t c) { return c > 0; })) {
            std::fill(sums.begin(), sums.end(), 0.0);
            for (std::size_t doc = 0; doc < n; ++doc) {
                const std::vector<double>& d = docs[doc].values;
                double* s = sums.data() + assignment[doc] * dim;
                for (std::size_t t = 0; t < dim; ++t)
                    s[t] += d[t];
            }
            double obj = 0.0;
            for (std::size_t i = 0; i < k; ++i)
                obj += vec::l2_norm(std::span<const double>(sums.data() + i * dim, dim));
            if (obj > best_objective) {
                best_objective = obj;
                best_assignment = assignment;
            }
        }

        std::size_t pos = n;
        while (pos > 0 && assignment[pos - 1] == k - 1)
            assignment[--pos] = 0;
        if (pos == 0)
            break;
        ++assignment[pos - 1];
    }

    return Partition::create(docs, std::move(best_assignment), k);
}

} // namespace vidmine
