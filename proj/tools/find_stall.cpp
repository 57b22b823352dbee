// Randomized search for instances where batch k-means halts at a partition
// that a single-move local search still improves. Prints the first hit as a
// ready-to-paste tests/stall_fixture.hpp so the case is pinned forever.

#include "vidmine/clustering.hpp"
#include "vidmine/rng.hpp"

#include <cstdio>
#include <random>
#include <vector>

using namespace vidmine;

int main(int argc, char** argv) {
    std::uint64_t search_seed = 2024;
    if (argc > 1)
        search_seed = std::strtoull(argv[1], nullptr, 10);

    std::mt19937_64 gen(search_seed);
    for (std::size_t trial = 0; trial < 200000; ++trial) {
        const std::size_t n = 3 + rng::bounded(gen, 6);   // 3..8 descriptors
        const std::size_t dim = 2 + rng::bounded(gen, 3); // 2..4 dims
        const std::size_t k = 2 + rng::bounded(gen, 2);   // 2..3 clusters
        if (n < k)
            continue;

        std::vector<Descriptor> docs;
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<double> v(dim);
            double norm = 0.0;
            do {
                for (double& x : v)
                    x = 2.0 * rng::unit_real(gen) - 1.0;
                norm = 0.0;
                for (double x : v)
                    norm += x * x;
                norm = std::sqrt(norm);
            } while (norm < 1e-6);
            for (double& x : v)
                x /= norm;
            docs.push_back(Descriptor{std::move(v)});
        }

        const std::uint64_t run_seed = rng::bounded(gen, 1000);
        LscConfig cfg;
        cfg.seed = run_seed;

        const ClusterRun stalled = kmeans_cluster(docs, k, cfg);
        const auto move = best_move(stalled.partition, 1e-9);
        if (!move)
            continue;
        const ClusterRun refined = lsc_refine(stalled.partition, cfg);
        if (objective(refined.partition) <= objective(stalled.partition) + 1e-9)
            continue;

        std::printf("// found after %zu trials (search seed %llu): kmeans objective "
                    "%.17g, best_move gain %.17g, refined objective %.17g\n",
                    trial + 1, static_cast<unsigned long long>(search_seed),
                    objective(stalled.partition), move->gain,
                    objective(refined.partition));
        std::printf("#ifndef VIDMINE_TESTS_STALL_FIXTURE_HPP\n");
        std::printf("#define VIDMINE_TESTS_STALL_FIXTURE_HPP\n\n");
        std::printf("// Regression instance found by the tools/find_stall randomized\n"
                    "// search: kmeans_cluster on these descriptors with the recorded\n"
                    "// seed halts at a partition that best_move still improves by more\n"
                    "// than 1e-9. Hexfloats keep the replay bit-exact.\n\n");
        std::printf("#include \"vidmine/descriptor.hpp\"\n\n");
        std::printf("#include <cstdint>\n#include <vector>\n\n");
        std::printf("namespace stallcase {\n\n");
        std::printf("inline constexpr std::size_t k = %zu;\n", k);
        std::printf("inline constexpr std::uint64_t seed = %llu;\n\n",
                    static_cast<unsigned long long>(run_seed));
        std::printf("inline std::vector<vidmine::Descriptor> descriptors() {\n");
        std::printf("    return {\n");
        for (const Descriptor& d : docs) {
            std::printf("        vidmine::Descriptor{{");
            for (std::size_t t = 0; t < d.values.size(); ++t)
                std::printf("%s%a", t ? ", " : "", d.values[t]);
            std::printf("}},\n");
        }
        std::printf("    };\n}\n\n");
        std::printf("} // namespace stallcase\n\n#endif\n");
        return 0;
    }

    std::fprintf(stderr, "no stalled instance found in 200000 trials\n");
    return 1;
}
