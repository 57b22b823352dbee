// vidmine: batch video mining over frame directories or precomputed
// features. Subcommands cover shot detection, key-frame selection,
// descriptor clustering, hierarchical grouping, and query-by-example.

#include "vidmine/errors.hpp"
#include "vidmine/json_io.hpp"
#include "vidmine/pipeline.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>

namespace {

using namespace vidmine;

struct CliOptions {
    PipelineConfig cfg;
    std::string format = "ppm-dir";
    std::string cut_mode = "fixed";
    std::string algo = "kmeans-then-lsc";
    std::optional<std::size_t> groups;
    std::optional<double> sim_floor;
    std::string out_dir;
    // query
    std::string query_frame;
    std::optional<std::size_t> query_shot;
    std::size_t top_k = 5;
};

void add_input_flags(CLI::App& cmd, CliOptions& opt) {
    cmd.add_option("--input", opt.cfg.input, "Frame directory or features file")
        ->required();
    cmd.add_option("--format", opt.format, "Input format")
        ->check(CLI::IsMember({"ppm-dir", "features-jsonl"}))
        ->capture_default_str();
    cmd.add_option("--bins", opt.cfg.bins_per_channel,
                   "Histogram bins per color channel (PPM input)")
        ->capture_default_str();
    cmd.add_option("--cut-mode", opt.cut_mode, "Shot boundary thresholding mode")
        ->check(CLI::IsMember({"fixed", "adaptive"}))
        ->capture_default_str();
    cmd.add_option("--tau", opt.cfg.cut_policy.tau, "Fixed cut threshold")
        ->capture_default_str();
    cmd.add_option("--alpha", opt.cfg.cut_policy.alpha,
                   "Adaptive threshold multiplier (mean + alpha * stddev)")
        ->capture_default_str();
    cmd.add_option("--threads", opt.cfg.threads, "Ingestion worker threads")
        ->capture_default_str();
    cmd.add_option("--out", opt.out_dir, "Output directory for JSON reports");
}

void add_cluster_flags(CLI::App& cmd, CliOptions& opt) {
    cmd.add_option("--k", opt.cfg.k, "Number of clusters")->required();
    cmd.add_option("--algo", opt.algo, "Clustering algorithm")
        ->check(CLI::IsMember({"lsc", "kmeans", "kmeans-then-lsc"}))
        ->capture_default_str();
    cmd.add_option("--seed", opt.cfg.seed, "Random seed")->capture_default_str();
    cmd.add_option("--restarts", opt.cfg.restarts,
                   "Independent runs; the best objective wins")
        ->capture_default_str();
}

void add_group_flags(CLI::App& cmd, CliOptions& opt) {
    cmd.add_option("--groups", opt.groups, "Stop agglomeration at this many groups");
    cmd.add_option("--sim-floor", opt.sim_floor,
                   "Stop agglomeration when the best merge similarity drops below this");
}

void finalize_config(CliOptions& opt) {
    opt.cfg.format = opt.format == "ppm-dir" ? InputFormat::PpmDir
                                             : InputFormat::FeaturesJsonl;
    opt.cfg.cut_policy.mode =
        opt.cut_mode == "fixed" ? CutMode::Fixed : CutMode::Adaptive;
    if (opt.algo == "lsc")
        opt.cfg.algo = ClusterAlgo::Lsc;
    else if (opt.algo == "kmeans")
        opt.cfg.algo = ClusterAlgo::Kmeans;
    else
        opt.cfg.algo = ClusterAlgo::KmeansThenLsc;
    opt.cfg.grouping_stop.target_count = opt.groups;
    opt.cfg.grouping_stop.similarity_floor = opt.sim_floor;
}

std::filesystem::path ensure_out_dir(const CliOptions& opt) {
    std::filesystem::path dir = opt.out_dir.empty() ? "." : opt.out_dir;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw InputError("cannot create output directory " + dir.string() + ": " +
                         ec.message());
    return dir;
}

// Shared stage prefix: ingest and segment into shots.
struct ShotStage {
    std::vector<FrameHistogram> histograms;
    std::vector<Shot> shots;
};

ShotStage run_shot_stage(const CliOptions& opt) {
    ShotStage stage;
    stage.histograms =
        ingest(opt.cfg.input, opt.cfg.format, opt.cfg.bins_per_channel, opt.cfg.threads);
    stage.shots = build_shots(
        stage.histograms.size(),
        detect_cuts(consecutive_distances(stage.histograms), opt.cfg.cut_policy));
    return stage;
}

std::vector<KeyFrameTriple> triples_for(const std::vector<Shot>& shots) {
    std::vector<KeyFrameTriple> triples;
    triples.reserve(shots.size());
    for (const Shot& shot : shots)
        triples.push_back(select_keyframes(shot));
    return triples;
}

std::vector<Descriptor> descriptors_for(const std::vector<KeyFrameTriple>& triples,
                                        const std::vector<FrameHistogram>& histograms) {
    std::vector<Descriptor> descriptors;
    descriptors.reserve(triples.size());
    for (const KeyFrameTriple& triple : triples)
        descriptors.push_back(shot_descriptor(triple, histograms));
    return descriptors;
}

int cmd_detect_shots(CliOptions& opt) {
    const auto out = ensure_out_dir(opt);
    const ShotStage stage = run_shot_stage(opt);
    write_json(out / "shots.json",
               shots_json(stage.histograms.size(), opt.cfg.cut_policy, stage.shots));
    std::cout << stage.shots.size() << " shots over " << stage.histograms.size()
              << " frames -> " << (out / "shots.json").string() << "\n";
    return 0;
}

int cmd_keyframes(CliOptions& opt) {
    const auto out = ensure_out_dir(opt);
    const ShotStage stage = run_shot_stage(opt);
    const auto triples = triples_for(stage.shots);
    write_json(out / "shots.json",
               shots_json(stage.histograms.size(), opt.cfg.cut_policy, stage.shots));
    write_json(out / "keyframes.json", keyframes_json(stage.shots, triples));
    std::cout << "key frames for " << stage.shots.size() << " shots -> "
              << (out / "keyframes.json").string() << "\n";
    return 0;
}

int cmd_cluster(CliOptions& opt) {
    const auto out = ensure_out_dir(opt);
    const ShotStage stage = run_shot_stage(opt);
    const auto triples = triples_for(stage.shots);
    const auto descriptors = descriptors_for(triples, stage.histograms);
    const ClusterRun run = cluster_descriptors(descriptors, opt.cfg);

    write_json(out / "shots.json",
               shots_json(stage.histograms.size(), opt.cfg.cut_policy, stage.shots));
    write_json(out / "keyframes.json", keyframes_json(stage.shots, triples));
    write_json(out / "descriptors.json", descriptors_json(descriptors));
    write_json(out / "clusters.json", clusters_json(run));
    std::cout << "clustered " << descriptors.size() << " shots into " << opt.cfg.k
              << " clusters, objective " << objective(run.partition) << " -> "
              << (out / "clusters.json").string() << "\n";
    return 0;
}

int cmd_group(CliOptions& opt) {
    const auto out = ensure_out_dir(opt);
    const ShotStage stage = run_shot_stage(opt);
    const auto triples = triples_for(stage.shots);
    const auto descriptors = descriptors_for(triples, stage.histograms);

    GroupingStop stop = opt.cfg.grouping_stop;
    if (!stop.target_count && !stop.similarity_floor)
        stop.target_count = 1; // full dendrogram
    const GroupingResult grouping = agglomerate(descriptors, stop);

    write_json(out / "shots.json",
               shots_json(stage.histograms.size(), opt.cfg.cut_policy, stage.shots));
    write_json(out / "keyframes.json", keyframes_json(stage.shots, triples));
    write_json(out / "descriptors.json", descriptors_json(descriptors));
    write_json(out / "groups.json", groups_json(grouping));
    std::cout << grouping.dendrogram.merges.size() << " merges over "
              << descriptors.size() << " shots -> " << (out / "groups.json").string()
              << "\n";
    return 0;
}

int cmd_query(CliOptions& opt) {
    const ShotStage stage = run_shot_stage(opt);
    const auto descriptors = descriptors_for(triples_for(stage.shots), stage.histograms);

    if (opt.query_frame.empty() == !opt.query_shot.has_value())
        throw ConfigError("query needs exactly one of --query-frame or --query-shot");

    Descriptor query;
    std::string description;
    if (!opt.query_frame.empty()) {
        // Histogram the query frame with the store's bin count so the
        // descriptor dimensions line up for either input format.
        const std::size_t bins = stage.histograms[0].bins_per_channel;
        query = to_descriptor(frame_histogram(decode_ppm_file(opt.query_frame), bins));
        description = opt.query_frame;
    } else {
        if (*opt.query_shot >= descriptors.size())
            throw InputError("query shot id " + std::to_string(*opt.query_shot) +
                             " out of range (have " +
                             std::to_string(descriptors.size()) + " shots)");
        query = descriptors[*opt.query_shot];
        description = "shot:" + std::to_string(*opt.query_shot);
    }

    const auto results = query_shots(query, descriptors, opt.top_k);
    const nlohmann::json report = query_json(description, results);
    std::cout << report.dump(2) << "\n";
    if (!opt.out_dir.empty())
        write_json(ensure_out_dir(opt) / "query.json", report);
    return 0;
}

int cmd_pipeline(CliOptions& opt) {
    const auto out = ensure_out_dir(opt);
    const PipelineResult result = run_pipeline(opt.cfg);

    write_json(out / "shots.json",
               shots_json(result.num_frames, result.policy, result.shots));
    write_json(out / "keyframes.json", keyframes_json(result.shots, result.keyframes));
    write_json(out / "descriptors.json", descriptors_json(result.shot_descriptors));
    write_json(out / "clusters.json", clusters_json(result.clustering));
    write_json(out / "groups.json", groups_json(result.grouping));
    write_json(out / "run.json", run_json(opt.cfg, result));
    std::cout << result.shots.size() << " shots, objective "
              << objective(result.clustering.partition) << ", reports in "
              << out.string() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"vidmine: shot detection, clustering and retrieval over frame sequences"};
    app.require_subcommand(1);

    CliOptions opt;

    CLI::App* detect = app.add_subcommand("detect-shots", "Segment frames into shots");
    add_input_flags(*detect, opt);

    CLI::App* keyframes = app.add_subcommand("keyframes", "Select per-shot key frames");
    add_input_flags(*keyframes, opt);

    CLI::App* cluster = app.add_subcommand("cluster", "Cluster shot descriptors");
    add_input_flags(*cluster, opt);
    add_cluster_flags(*cluster, opt);

    CLI::App* group = app.add_subcommand("group", "Agglomerate similar shots");
    add_input_flags(*group, opt);
    add_group_flags(*group, opt);

    CLI::App* query = app.add_subcommand("query", "Rank shots against an example");
    add_input_flags(*query, opt);
    query->add_option("--query-frame", opt.query_frame, "PPM frame to query with");
    query->add_option("--query-shot", opt.query_shot, "Existing shot id to query with");
    query->add_option("--top-k", opt.top_k, "Number of results")->capture_default_str();

    CLI::App* pipeline = app.add_subcommand("pipeline", "Run every stage and write all reports");
    add_input_flags(*pipeline, opt);
    add_cluster_flags(*pipeline, opt);
    add_group_flags(*pipeline, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        finalize_config(opt);
        if (detect->parsed())
            return cmd_detect_shots(opt);
        if (keyframes->parsed())
            return cmd_keyframes(opt);
        if (cluster->parsed())
            return cmd_cluster(opt);
        if (group->parsed())
            return cmd_group(opt);
        if (query->parsed())
            return cmd_query(opt);
        return cmd_pipeline(opt);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
