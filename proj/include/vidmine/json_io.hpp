#ifndef VIDMINE_JSON_IO_HPP
#define VIDMINE_JSON_IO_HPP

#include "vidmine/pipeline.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace vidmine {

// {"num_frames": n, "policy": {...}, "shots": [{"id","start","end"}...]}
nlohmann::json shots_json(std::size_t num_frames, const CutPolicy& policy,
                          const std::vector<Shot>& shots);

// Shot records with the key-frame triple appended.
nlohmann::json keyframes_json(const std::vector<Shot>& shots,
                              const std::vector<KeyFrameTriple>& triples);

// {"dim": d, "descriptors": [{"shot": id, "values": [...]}...]}
nlohmann::json descriptors_json(const std::vector<Descriptor>& descriptors);

// {"k","objective","moves","trace","assignment","seed"}
nlohmann::json clusters_json(const ClusterRun& run);

// {"merges": [[a,b,sim]...], "labels": [...]}
nlohmann::json groups_json(const GroupingResult& grouping);

// {"query": description, "results": [{"shot","score"}...]}
nlohmann::json query_json(const std::string& query_description,
                          const std::vector<ShotScore>& results);

nlohmann::json run_json(const PipelineConfig& cfg, const PipelineResult& result);

nlohmann::json config_json(const PipelineConfig& cfg);

// Writes pretty-printed JSON with a trailing newline.
void write_json(const std::filesystem::path& path, const nlohmann::json& value);

} // namespace vidmine

#endif
