#include "vidmine/errors.hpp"
#include "vidmine/grouping.hpp"
#include "vidmine/vec.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <random>
#include <set>
#include <vector>

using namespace vidmine;
using namespace testsupport;

namespace {

// Independent agglomeration oracle: explicit member lists, per-pair double
// loops over raw dot products (no sum-vector shortcut), same tie rule.
struct NaiveCluster {
    std::size_t id;
    std::vector<std::size_t> members;
};

double naive_linkage(const std::vector<Descriptor>& docs, const NaiveCluster& a,
                     const NaiveCluster& b) {
    double total = 0.0;
    for (std::size_t x : a.members)
        for (std::size_t y : b.members)
            total += vec::dot(docs[x].values, docs[y].values);
    return total / (static_cast<double>(a.members.size()) *
                    static_cast<double>(b.members.size()));
}

GroupingResult naive_agglomerate(const std::vector<Descriptor>& docs,
                                 std::size_t target) {
    std::vector<NaiveCluster> active;
    for (std::size_t i = 0; i < docs.size(); ++i)
        active.push_back(NaiveCluster{i, {i}});

    GroupingResult result;
    result.dendrogram.leaf_count = docs.size();
    std::size_t next_id = docs.size();

    while (active.size() > target) {
        std::size_t bi = 0, bj = 0;
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < active.size(); ++i)
            for (std::size_t j = i + 1; j < active.size(); ++j) {
                const double sim = naive_linkage(docs, active[i], active[j]);
                if (sim > best) {
                    best = sim;
                    bi = i;
                    bj = j;
                }
            }
        NaiveCluster merged{next_id++, active[bi].members};
        merged.members.insert(merged.members.end(), active[bj].members.begin(),
                              active[bj].members.end());
        result.dendrogram.merges.push_back(Merge{active[bi].id, active[bj].id, best});
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(bj));
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(bi));
        active.push_back(std::move(merged));
    }

    std::sort(active.begin(), active.end(),
              [](const NaiveCluster& x, const NaiveCluster& y) { return x.id < y.id; });
    result.labels.assign(docs.size(), 0);
    for (std::size_t label = 0; label < active.size(); ++label)
        for (std::size_t member : active[label].members)
            result.labels[member] = label;
    return result;
}

} // namespace

TEST_CASE("cosine_sim analytic values and symmetry") {
    const Descriptor a = basis(3, 0);
    const Descriptor b = basis(3, 1);
    CHECK(cosine_sim(a, a) == doctest::Approx(1.0));
    CHECK(cosine_sim(a, b) == doctest::Approx(0.0));

    std::mt19937_64 gen(211);
    for (int trial = 0; trial < 20; ++trial) {
        const Descriptor x = random_unit_descriptor(gen, 5);
        const Descriptor y = random_unit_descriptor(gen, 5);
        CHECK(cosine_sim(x, y) == doctest::Approx(cosine_sim(y, x)));
        CHECK(cosine_sim(x, y) >= -1.0);
        CHECK(cosine_sim(x, y) <= 1.0);
    }
}

TEST_CASE("cosine_sim rejects mismatched dimensions") {
    CHECK_THROWS_AS(cosine_sim(basis(3, 0), basis(4, 0)), InputError);
}

TEST_CASE("agglomerate merges identical pairs before crossing orthogonal ones") {
    std::vector<Descriptor> docs = {basis(2, 0), basis(2, 0), basis(2, 1), basis(2, 1)};
    GroupingStop stop;
    stop.target_count = 2;
    const GroupingResult r = agglomerate(docs, stop);
    REQUIRE(r.dendrogram.merges.size() == 2);
    CHECK(r.dendrogram.merges[0].a == 0);
    CHECK(r.dendrogram.merges[0].b == 1);
    CHECK(r.dendrogram.merges[0].similarity == doctest::Approx(1.0));
    CHECK(r.dendrogram.merges[1].a == 2);
    CHECK(r.dendrogram.merges[1].b == 3);
    CHECK(r.dendrogram.merges[1].similarity == doctest::Approx(1.0));
    CHECK(r.labels == std::vector<std::size_t>{0, 0, 1, 1});
}

TEST_CASE("agglomerate with target N performs no merges") {
    std::mt19937_64 gen(223);
    const auto docs = random_unit_descriptors(gen, 5, 3);
    GroupingStop stop;
    stop.target_count = 5;
    const GroupingResult r = agglomerate(docs, stop);
    CHECK(r.dendrogram.merges.empty());
    CHECK(r.labels == std::vector<std::size_t>{0, 1, 2, 3, 4});
}

TEST_CASE("agglomerate to one cluster performs exactly N-1 merges") {
    std::mt19937_64 gen(227);
    const auto docs = random_unit_descriptors(gen, 7, 3);
    const GroupingResult r = agglomerate(docs, GroupingStop{});
    CHECK(r.dendrogram.merges.size() == 6);
    CHECK(r.dendrogram.leaf_count == 7);
    for (std::size_t label : r.labels) CHECK(label == 0);
}

TEST_CASE("agglomerate matches the naive oracle on random instances") {
    std::mt19937_64 gen(229);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t n = 4 + rng::bounded(gen, 9); // 4..12
        const std::size_t target = 1 + rng::bounded(gen, n);
        const auto docs = random_unit_descriptors(gen, n, 4);

        GroupingStop stop;
        stop.target_count = target;
        const GroupingResult fast = agglomerate(docs, stop);
        const GroupingResult slow = naive_agglomerate(docs, target);

        CHECK(fast.labels == slow.labels);
        REQUIRE(fast.dendrogram.merges.size() == slow.dendrogram.merges.size());
        for (std::size_t m = 0; m < fast.dendrogram.merges.size(); ++m) {
            CHECK(fast.dendrogram.merges[m].a == slow.dendrogram.merges[m].a);
            CHECK(fast.dendrogram.merges[m].b == slow.dendrogram.merges[m].b);
            CHECK(fast.dendrogram.merges[m].similarity ==
                  doctest::Approx(slow.dendrogram.merges[m].similarity).epsilon(1e-9));
        }
    }
}

TEST_CASE("agglomerate labels partition the shot set") {
    std::mt19937_64 gen(233);
    const auto docs = random_unit_descriptors(gen, 10, 3);
    GroupingStop stop;
    stop.target_count = 3;
    const GroupingResult r = agglomerate(docs, stop);
    REQUIRE(r.labels.size() == 10);
    std::set<std::size_t> used(r.labels.begin(), r.labels.end());
    CHECK(used.size() == 3);
    for (std::size_t label : r.labels) CHECK(label < 3);
}

TEST_CASE("similarity floor halts agglomeration early") {
    std::vector<Descriptor> docs = {basis(2, 0), basis(2, 0), basis(2, 1), basis(2, 1)};
    GroupingStop stop;
    stop.similarity_floor = 0.5;
    const GroupingResult r = agglomerate(docs, stop);
    // The two within-pair merges (similarity 1) happen; the cross-pair merge
    // (similarity 0) falls below the floor.
    CHECK(r.dendrogram.merges.size() == 2);
    std::set<std::size_t> used(r.labels.begin(), r.labels.end());
    CHECK(used.size() == 2);

    GroupingStop no_floor;
    no_floor.similarity_floor = -1.5; // nothing is below this
    CHECK(agglomerate(docs, no_floor).dendrogram.merges.size() == 3);
}

TEST_CASE("agglomerate validates the target count and descriptors") {
    std::mt19937_64 gen(239);
    const auto docs = random_unit_descriptors(gen, 4, 3);
    GroupingStop stop;
    stop.target_count = 0;
    CHECK_THROWS_AS(agglomerate(docs, stop), ConfigError);
    stop.target_count = 5;
    CHECK_THROWS_AS(agglomerate(docs, stop), ConfigError);

    CHECK_THROWS_AS(agglomerate({}, GroupingStop{}), InputError);

    std::vector<Descriptor> bad = docs;
    bad[2].values[0] *= 3.0;
    CHECK_THROWS_AS(agglomerate(bad, GroupingStop{}), InputError);
}

TEST_CASE("query_shots ranks an exact match first with similarity one") {
    std::mt19937_64 gen(241);
    const auto docs = random_unit_descriptors(gen, 6, 4);
    const auto results = query_shots(docs[3], docs, 6);
    REQUIRE(!results.empty());
    CHECK(results[0].shot == 3);
    CHECK(results[0].score == doctest::Approx(1.0));
}

TEST_CASE("query_shots truncates to top_k and tolerates oversized top_k") {
    std::mt19937_64 gen(251);
    const auto docs = random_unit_descriptors(gen, 5, 3);
    const Descriptor q = random_unit_descriptor(gen, 3);
    CHECK(query_shots(q, docs, 2).size() == 2);
    CHECK(query_shots(q, docs, 50).size() == 5);
}

TEST_CASE("query_shots ranking equals an independent sort of dot products") {
    std::mt19937_64 gen(257);
    const auto docs = random_unit_descriptors(gen, 8, 4);
    const Descriptor q = random_unit_descriptor(gen, 4);
    const auto results = query_shots(q, docs, 8);
    REQUIRE(results.size() == 8);

    std::vector<std::size_t> ids(8);
    for (std::size_t i = 0; i < 8; ++i) ids[i] = i;
    std::stable_sort(ids.begin(), ids.end(), [&](std::size_t a, std::size_t b) {
        return vec::dot(q.values, docs[a].values) > vec::dot(q.values, docs[b].values);
    });
    for (std::size_t i = 0; i < 8; ++i) {
        CHECK(results[i].shot == ids[i]);
        CHECK(results[i].score ==
              doctest::Approx(vec::dot(q.values, docs[ids[i]].values)));
        if (i > 0) CHECK(results[i].score <= results[i - 1].score + 1e-12);
    }
}

TEST_CASE("query_shots breaks score ties by the lower shot id") {
    std::vector<Descriptor> docs = {basis(2, 1), basis(2, 0), basis(2, 0)};
    const auto results = query_shots(basis(2, 0), docs, 3);
    REQUIRE(results.size() == 3);
    CHECK(results[0].shot == 1);
    CHECK(results[1].shot == 2);
    CHECK(results[2].shot == 0);
}

TEST_CASE("query_shots validates its inputs") {
    CHECK_THROWS_AS(query_shots(basis(2, 0), {basis(2, 0)}, 0), ConfigError);
    CHECK_THROWS_AS(query_shots(basis(2, 0), {}, 3), InputError);
}
