#include "vidmine/json_io.hpp"

#include "vidmine/errors.hpp"

#include <fstream>

namespace vidmine {

using nlohmann::json;

namespace {

json policy_json(const CutPolicy& policy) {
    return json{{"mode", to_string(policy.mode)},
                {"tau", policy.tau},
                {"alpha", policy.alpha}};
}

json shot_record(const Shot& shot) {
    return json{{"id", shot.id}, {"start", shot.start}, {"end", shot.end}};
}

} // namespace

json shots_json(std::size_t num_frames, const CutPolicy& policy,
                const std::vector<Shot>& shots) {
    json list = json::array();
    for (const Shot& shot : shots)
        list.push_back(shot_record(shot));
    return json{{"num_frames", num_frames},
                {"policy", policy_json(policy)},
                {"shots", std::move(list)}};
}

json keyframes_json(const std::vector<Shot>& shots,
                    const std::vector<KeyFrameTriple>& triples) {
    if (shots.size() != triples.size())
        throw InternalError("keyframes_json: shot and triple counts differ");
    json list = json::array();
    for (std::size_t i = 0; i < shots.size(); ++i) {
        json record = shot_record(shots[i]);
        record["keyframes"] = {triples[i].first, triples[i].middle, triples[i].last};
        list.push_back(std::move(record));
    }
    return json{{"shots", std::move(list)}};
}

json descriptors_json(const std::vector<Descriptor>& descriptors) {
    json list = json::array();
    for (std::size_t i = 0; i < descriptors.size(); ++i)
        list.push_back(json{{"shot", i}, {"values", descriptors[i].values}});
    const std::size_t dim = descriptors.empty() ? 0 : descriptors[0].values.size();
    return json{{"dim", dim}, {"descriptors", std::move(list)}};
}

json clusters_json(const ClusterRun& run) {
    return json{{"k", run.partition.k()},
                {"objective", objective(run.partition)},
                {"moves", run.moves},
                {"trace", run.trace},
                {"assignment", run.partition.assignment()},
                {"seed", run.seed}};
}

json groups_json(const GroupingResult& grouping) {
    json merges = json::array();
    for (const Merge& m : grouping.dendrogram.merges)
        merges.push_back(json::array({m.a, m.b, m.similarity}));
    return json{{"merges", std::move(merges)}, {"labels", grouping.labels}};
}

json query_json(const std::string& query_description,
                const std::vector<ShotScore>& results) {
    json list = json::array();
    for (const ShotScore& hit : results)
        list.push_back(json{{"shot", hit.shot}, {"score", hit.score}});
    return json{{"query", query_description}, {"results", std::move(list)}};
}

json config_json(const PipelineConfig& cfg) {
    json stop;
    if (cfg.grouping_stop.target_count)
        stop["target_count"] = *cfg.grouping_stop.target_count;
    if (cfg.grouping_stop.similarity_floor)
        stop["similarity_floor"] = *cfg.grouping_stop.similarity_floor;
    return json{{"input", cfg.input.string()},
                {"format", to_string(cfg.format)},
                {"bins", cfg.bins_per_channel},
                {"policy", policy_json(cfg.cut_policy)},
                {"k", cfg.k},
                {"algo", to_string(cfg.algo)},
                {"seed", cfg.seed},
                {"restarts", cfg.restarts},
                {"grouping_stop", std::move(stop)},
                {"threads", cfg.threads}};
}

json run_json(const PipelineConfig& cfg, const PipelineResult& result) {
    return json{{"config", config_json(cfg)},
                {"num_frames", result.num_frames},
                {"num_shots", result.shots.size()},
                {"objective", objective(result.clustering.partition)},
                {"timings_ms", result.timings_ms}};
}

void write_json(const std::filesystem::path& path, const json& value) {
    std::ofstream out(path);
    if (!out)
        throw InputError("cannot write " + path.string());
    out << value.dump(2) << '\n';
    if (!out)
        throw InputError("failed while writing " + path.string());
}

} // namespace vidmine
