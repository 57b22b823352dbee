#include "vidmine/pipeline.hpp"

#include "vidmine/errors.hpp"
#include "vidmine/vec.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

namespace vidmine {

namespace {

using nlohmann::json;

// Re-throws stage failures with the stage name attached, preserving the
// error category so exit codes survive.
template <typename Fn>
auto with_stage(const std::string& stage, Fn&& fn) {
    try {
        return fn();
    } catch (const InputError& e) {
        throw InputError(stage + ": " + e.what());
    } catch (const ConfigError& e) {
        throw ConfigError(stage + ": " + e.what());
    } catch (const InternalError& e) {
        throw InternalError(stage + ": " + e.what());
    }
}

std::vector<FrameHistogram> ingest_ppm_dir(const std::filesystem::path& path,
                                           std::size_t bins, std::size_t threads) {
    if (!std::filesystem::is_directory(path))
        throw InputError(path.string() + " is not a directory");

    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(path))
        if (entry.is_regular_file() && entry.path().extension() == ".ppm")
            files.push_back(entry.path());
    if (files.empty())
        throw InputError("no .ppm frames in " + path.string());
    std::sort(files.begin(), files.end(),
              [](const std::filesystem::path& a, const std::filesystem::path& b) {
                  return a.filename().string() < b.filename().string();
              });

    // Per-frame extraction is pure, so any thread split assembled in frame
    // order is bitwise identical to a sequential run.
    std::vector<FrameHistogram> histograms(files.size());
    std::vector<std::exception_ptr> failures(files.size());
    const std::size_t workers = std::max<std::size_t>(1, std::min(threads, files.size()));

    auto work = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            try {
                histograms[i] = frame_histogram(decode_ppm_file(files[i]), bins);
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    };

    if (workers == 1) {
        work(0, files.size());
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (files.size() + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t lo = w * chunk;
            const std::size_t hi = std::min(files.size(), lo + chunk);
            if (lo < hi)
                pool.emplace_back(work, lo, hi);
        }
        for (std::thread& t : pool)
            t.join();
    }
    // First failing frame wins, independent of scheduling.
    for (const std::exception_ptr& failure : failures)
        if (failure)
            std::rethrow_exception(failure);
    return histograms;
}

[[noreturn]] void jsonl_fail(const std::filesystem::path& path, std::size_t line,
                             const std::string& what) {
    std::ostringstream msg;
    msg << path.string() << ":" << line << ": " << what;
    throw InputError(msg.str());
}

std::vector<FrameHistogram> ingest_features_jsonl(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw InputError(path.string() + ": cannot open file");

    std::vector<FrameHistogram> histograms;
    std::size_t dim = 0;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;

        json record;
        try {
            record = json::parse(line);
        } catch (const json::exception& e) {
            jsonl_fail(path, line_no, std::string("malformed record: ") + e.what());
        }
        if (!record.is_object() || !record.contains("frame") || !record.contains("hist"))
            jsonl_fail(path, line_no, "malformed record: need {\"frame\", \"hist\"}");
        if (!record["frame"].is_number_integer() || record["frame"].get<long long>() < 0)
            jsonl_fail(path, line_no, "malformed record: \"frame\" must be a non-negative integer");
        if (!record["hist"].is_array())
            jsonl_fail(path, line_no, "malformed record: \"hist\" must be an array");

        const std::size_t frame = record["frame"].get<std::size_t>();
        const std::size_t expected = histograms.size();
        if (frame > expected)
            jsonl_fail(path, line_no, "missing frame " + std::to_string(expected));
        if (frame < expected)
            jsonl_fail(path, line_no, "out-of-order frame " + std::to_string(frame) +
                                          ", expected " + std::to_string(expected));

        std::vector<double> values;
        values.reserve(record["hist"].size());
        for (const json& v : record["hist"]) {
            if (!v.is_number())
                jsonl_fail(path, line_no, "malformed record: non-numeric histogram value");
            values.push_back(v.get<double>());
        }
        if (histograms.empty()) {
            if (values.size() < 6 || values.size() % 3 != 0)
                jsonl_fail(path, line_no,
                           "histogram length " + std::to_string(values.size()) +
                               " is not 3*B with B >= 2");
            dim = values.size();
        } else if (values.size() != dim) {
            jsonl_fail(path, line_no,
                       "dimension inconsistency: got " + std::to_string(values.size()) +
                           " values, expected " + std::to_string(dim));
        }

        const std::size_t bins = dim / 3;
        for (std::size_t channel = 0; channel < 3; ++channel) {
            double sum = 0.0;
            for (std::size_t b = 0; b < bins; ++b) {
                const double v = values[channel * bins + b];
                if (!std::isfinite(v) || v < 0.0)
                    jsonl_fail(path, line_no, "histogram values must be finite and >= 0");
                sum += v;
            }
            if (std::abs(sum - 1.0) > 1e-6) {
                std::ostringstream msg;
                msg << "channel " << "RGB"[channel] << " block sums to " << sum
                    << ", beyond the 1e-6 normalization tolerance";
                jsonl_fail(path, line_no, msg.str());
            }
            // Within tolerance: repair by renormalizing the block.
            for (std::size_t b = 0; b < bins; ++b)
                values[channel * bins + b] /= sum;
        }

        histograms.push_back(FrameHistogram{bins, std::move(values)});
    }
    if (histograms.empty())
        throw InputError(path.string() + ": no feature records");
    return histograms;
}

} // namespace

std::vector<FrameHistogram> ingest(const std::filesystem::path& path,
                                   InputFormat format, std::size_t bins_per_channel,
                                   std::size_t threads) {
    if (format == InputFormat::PpmDir) {
        if (bins_per_channel < 2)
            throw ConfigError("bins_per_channel must be >= 2");
        return ingest_ppm_dir(path, bins_per_channel, threads);
    }
    return ingest_features_jsonl(path);
}

ClusterRun cluster_descriptors(const std::vector<Descriptor>& descriptors,
                               const PipelineConfig& cfg) {
    if (descriptors.size() < cfg.k) {
        std::ostringstream msg;
        msg << "k=" << cfg.k << " exceeds the " << descriptors.size()
            << " available shots; reduce K";
        throw ConfigError(msg.str());
    }

    LscConfig base;
    base.seed = cfg.seed;
    base.restarts = 1;

    switch (cfg.algo) {
    case ClusterAlgo::Lsc: {
        LscConfig one = base;
        one.restarts = cfg.restarts;
        return lsc_cluster(descriptors, cfg.k, one);
    }
    case ClusterAlgo::Kmeans: {
        LscConfig one = base;
        one.restarts = cfg.restarts;
        return kmeans_cluster(descriptors, cfg.k, one);
    }
    case ClusterAlgo::KmeansThenLsc:
        break;
    }

    // Chain: each restart runs k-means and refines its output with local
    // search; the best final objective wins.
    std::optional<ClusterRun> best;
    double best_objective = -std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < cfg.restarts; ++r) {
        LscConfig one = base;
        one.seed = cfg.seed + r;
        ClusterRun km = kmeans_cluster(descriptors, cfg.k, one);
        ClusterRun refined = lsc_refine(std::move(km.partition), one);

        ClusterRun combined;
        combined.partition = std::move(refined.partition);
        combined.seed = one.seed;
        combined.moves = km.moves + refined.moves;
        combined.trace = std::move(km.trace);
        // The refinement trace starts at the k-means final objective.
        combined.trace.insert(combined.trace.end(), refined.trace.begin() + 1,
                              refined.trace.end());

        const double obj = objective(combined.partition);
        if (obj > best_objective) {
            best_objective = obj;
            best = std::move(combined);
        }
    }
    return std::move(*best);
}

PipelineResult run_pipeline(const PipelineConfig& cfg) {
    using clock = std::chrono::steady_clock;
    PipelineResult result;
    result.policy = cfg.cut_policy;
    result.algo_name = to_string(cfg.algo);

    auto timed = [&](const char* name, auto&& fn) {
        const auto start = clock::now();
        auto value = with_stage(name, fn);
        result.timings_ms[name] =
            std::chrono::duration<double, std::milli>(clock::now() - start).count();
        return value;
    };

    const std::vector<FrameHistogram> histograms = timed("ingest", [&] {
        return ingest(cfg.input, cfg.format, cfg.bins_per_channel, cfg.threads);
    });
    result.num_frames = histograms.size();

    result.shots = timed("detect-shots", [&] {
        const std::vector<double> distances = consecutive_distances(histograms);
        return build_shots(histograms.size(), detect_cuts(distances, cfg.cut_policy));
    });

    result.keyframes = timed("keyframes", [&] {
        std::vector<KeyFrameTriple> triples;
        triples.reserve(result.shots.size());
        for (const Shot& shot : result.shots)
            triples.push_back(select_keyframes(shot));
        return triples;
    });

    result.shot_descriptors = timed("descriptors", [&] {
        std::vector<Descriptor> descriptors;
        descriptors.reserve(result.keyframes.size());
        for (const KeyFrameTriple& triple : result.keyframes)
            descriptors.push_back(shot_descriptor(triple, histograms));
        return descriptors;
    });

    result.clustering = timed("cluster", [&] {
        return cluster_descriptors(result.shot_descriptors, cfg);
    });

    result.grouping = timed("group", [&] {
        GroupingStop stop = cfg.grouping_stop;
        if (!stop.target_count && !stop.similarity_floor)
            stop.target_count = std::min(cfg.k, result.shot_descriptors.size());
        return agglomerate(result.shot_descriptors, stop);
    });

    return result;
}

const char* to_string(ClusterAlgo algo) {
    switch (algo) {
    case ClusterAlgo::Lsc:
        return "lsc";
    case ClusterAlgo::Kmeans:
        return "kmeans";
    case ClusterAlgo::KmeansThenLsc:
        return "kmeans-then-lsc";
    }
    return "?";
}

const char* to_string(InputFormat format) {
    return format == InputFormat::PpmDir ? "ppm-dir" : "features-jsonl";
}

const char* to_string(CutMode mode) {
    return mode == CutMode::Fixed ? "fixed" : "adaptive";
}

} // namespace vidmine
