// skytrack command-line interface.
//
// Subcommands:
//   detect  — run the full pipeline on a sequence and write the trajectory
//   synth   — generate a synthetic scene (sequence + ground truth files)
//   eval    — score a predicted trajectory against ground truth
//   inspect — dump clusters and score breakdowns as JSON
//
// Exit codes: 0 success, 2 no candidate trajectory, 1 any other error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "skytrack/config.hpp"
#include "skytrack/eval.hpp"
#include "skytrack/ingest.hpp"
#include "skytrack/pipeline.hpp"
#include "skytrack/synth.hpp"

namespace {

using nlohmann::json;

constexpr int kExitError = 1;
constexpr int kExitNoDetection = 2;

skytrack::PipelineConfig make_config(const std::string& config_path,
                                     const std::vector<std::string>& overrides,
                                     int threads_flag) {
    skytrack::PipelineConfig cfg;
    if (!config_path.empty()) cfg = skytrack::load_config_file(config_path);
    for (const std::string& assignment : overrides)
        skytrack::apply_config_override(cfg, assignment);
    if (threads_flag >= 0) cfg.threads = threads_flag;
    cfg.validate();
    return cfg;
}

skytrack::SequenceCloud load_input(const std::string& path, const std::string& format,
                                   skytrack::LoadDiagnostics* diag) {
    skytrack::SequenceFormat fmt = skytrack::format_from_path(path);
    if (format == "csv") fmt = skytrack::SequenceFormat::CSV;
    if (format == "bin") fmt = skytrack::SequenceFormat::BIN;
    return skytrack::load_sequence(path, fmt, diag);
}

// Timestamps file: one timestamp per line; extra comma-separated columns
// (e.g. a full ground-truth CSV) are ignored.
std::vector<double> load_timestamps(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw skytrack::Error("cannot open file: " + path);
    std::vector<double> ts;
    std::string line;
    std::size_t ln = 0;
    while (std::getline(in, line)) {
        ++ln;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::size_t comma = line.find(',');
        const std::string field = comma == std::string::npos ? line : line.substr(0, comma);
        double t = 0.0;
        if (!skytrack::detail::parse_double(field, t)) {
            if (ln == 1) continue;  // tolerate a header line
            throw skytrack::Error("line " + std::to_string(ln) + ": malformed timestamp");
        }
        if (!ts.empty() && t < ts.back())
            throw skytrack::Error("line " + std::to_string(ln) + ": time regression");
        if (ts.empty() || t > ts.back()) ts.push_back(t);
    }
    if (ts.empty()) throw skytrack::Error("empty timestamps file");
    return ts;
}

json timings_to_json(const std::vector<skytrack::StageTiming>& timings) {
    json j = json::object();
    for (const skytrack::StageTiming& t : timings) j[t.stage] = t.ms;
    return j;
}

json breakdown_summary(const skytrack::ScoreBreakdown& b) {
    return {{"id", b.cluster_id},
            {"total", b.total},
            {"score_dens", b.score_dens},
            {"score_iou", b.score_iou},
            {"active_windows", b.active_window_count}};
}

json breakdown_full(const skytrack::ScoreBreakdown& b) {
    json j = breakdown_summary(b);
    j["window_start_frames"] = b.window_start_frames;
    j["relative_densities"] = b.relative_densities;
    j["ious"] = b.ious;
    return j;
}

json excluded_to_json(const std::vector<skytrack::ExcludedCluster>& excluded) {
    json j = json::array();
    for (const skytrack::ExcludedCluster& e : excluded)
        j.push_back({{"id", e.id}, {"reason", e.reason}});
    return j;
}

void write_json(const json& j, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw skytrack::Error("cannot open file for writing: " + path);
    out << j.dump(2) << "\n";
}

int cmd_detect(const std::string& input, const std::string& format,
               const std::string& config_path, const std::vector<std::string>& overrides,
               int threads, const std::string& timestamps_path, const std::string& out_path,
               const std::string& report_path) {
    const skytrack::PipelineConfig cfg = make_config(config_path, overrides, threads);
    skytrack::LoadDiagnostics diag;
    const skytrack::SequenceCloud seq = load_input(input, format, &diag);

    std::vector<double> query_ts;
    if (!timestamps_path.empty()) query_ts = load_timestamps(timestamps_path);

    const skytrack::DetectResult result = skytrack::run_detect(seq, cfg, query_ts);
    skytrack::save_trajectory(result.trajectory, out_path);

    std::size_t detected = 0;
    for (const skytrack::TrajectorySample& s : result.trajectory.samples)
        if (s.detected) ++detected;

    if (!report_path.empty()) {
        json scores = json::array();
        for (const skytrack::ScoreBreakdown& b : result.scoring.breakdowns)
            scores.push_back(breakdown_summary(b));
        const json report = {
            {"input", input},
            {"effective_config", skytrack::config_to_json(cfg)},
            {"points",
             {{"total", result.scoring.total_points},
              {"kept", result.scoring.kept.size()},
              {"removed", result.scoring.removed_points},
              {"rejected_nonfinite", diag.rejected_nonfinite}}},
            {"clusters",
             {{"count", result.scoring.clusters.size()},
              {"excluded", excluded_to_json(result.scoring.excluded)},
              {"selected", result.scoring.selected}}},
            {"scores", scores},
            {"trajectory",
             {{"samples", result.trajectory.samples.size()},
              {"detected_samples", detected},
              {"sda", result.sda},
              {"out", out_path}}},
            {"timings_ms", timings_to_json(result.timings)},
        };
        write_json(report, report_path);
    }

    std::cout << "detect: selected cluster " << result.scoring.selected << " of "
              << result.scoring.clusters.size() << " clusters, " << detected << "/"
              << result.trajectory.samples.size() << " samples detected, SDA "
              << result.sda << "\n";
    return 0;
}

int cmd_synth(const std::string& spec_path, const std::string& scene_name,
              const std::string& out_dir, const std::string& format) {
    skytrack::synth::SceneSpec spec;
    if (!scene_name.empty()) {
        spec = skytrack::synth::standard_scene(scene_name);
    } else {
        std::ifstream in(spec_path);
        if (!in) throw skytrack::Error("cannot open file: " + spec_path);
        json j;
        try {
            in >> j;
        } catch (const json::exception& e) {
            throw skytrack::Error("bad scene JSON: " + std::string(e.what()));
        }
        spec = skytrack::synth::scene_spec_from_json(j);
    }

    const skytrack::synth::SyntheticScene scene = skytrack::synth::generate(spec);
    std::filesystem::create_directories(out_dir);
    const bool csv = format == "csv";
    const std::string seq_path =
        (std::filesystem::path(out_dir) / (csv ? "sequence.csv" : "sequence.bin")).string();
    const std::string gt_path = (std::filesystem::path(out_dir) / "gt.csv").string();
    skytrack::save_sequence(scene.sequence, seq_path,
                            csv ? skytrack::SequenceFormat::CSV : skytrack::SequenceFormat::BIN);
    skytrack::save_ground_truth(scene.gt, gt_path);

    std::cout << "synth: " << (spec.name.empty() ? "scene" : spec.name) << ": "
              << scene.sequence.n() << " frames, " << scene.sequence.total_points()
              << " points -> " << seq_path << ", " << gt_path << "\n";
    return 0;
}

int cmd_eval(const std::string& pred_path, const std::string& gt_path,
             const std::string& report_path, double total_time) {
    const skytrack::Trajectory pred = skytrack::load_trajectory(pred_path);
    const skytrack::GroundTruth gt = skytrack::load_ground_truth(gt_path);

    if (total_time <= 0.0) {
        // Default: prediction time span plus one mean sample interval.
        const double t0 = pred.samples.front().t;
        const double t1 = pred.samples.back().t;
        const double span = t1 - t0;
        total_time = pred.samples.size() > 1
                         ? span + span / static_cast<double>(pred.samples.size() - 1)
                         : t1;
        if (total_time <= 0.0) throw skytrack::Error("bad total time");
    }

    const skytrack::EvalReport report = skytrack::evaluate(pred, gt, total_time);
    const json j = {{"pred", pred_path},
                    {"gt", gt_path},
                    {"total_time", total_time},
                    {"mse", report.mse},
                    {"sda", report.sda},
                    {"matched_count", report.matched_count},
                    {"undetected_time", report.undetected_time}};
    if (!report_path.empty()) write_json(j, report_path);

    std::cout << "metric           value\n";
    std::cout << "mse (m^2)        " << report.mse << "\n";
    std::cout << "sda              " << report.sda << "\n";
    std::cout << "matched          " << report.matched_count << "\n";
    std::cout << "undetected (s)   " << report.undetected_time << "\n";
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_inspect(const std::string& input, const std::string& format,
                const std::string& config_path, const std::vector<std::string>& overrides,
                int threads, const std::string& out_path, const std::string& points_dir) {
    const skytrack::PipelineConfig cfg = make_config(config_path, overrides, threads);
    skytrack::LoadDiagnostics diag;
    const skytrack::SequenceCloud seq = load_input(input, format, &diag);

    std::vector<skytrack::StageTiming> timings;
    const skytrack::ScoringOutcome outcome = skytrack::run_scoring(seq, cfg, &timings);

    json clusters = json::array();
    for (const skytrack::Cluster& c : outcome.clusters)
        clusters.push_back({{"id", c.id},
                            {"num", c.stats.num},
                            {"voxel_count", c.stats.voxels.size()},
                            {"volume", c.stats.voxels.volume()},
                            {"density", c.stats.density}});
    json breakdowns = json::array();
    for (const skytrack::ScoreBreakdown& b : outcome.breakdowns)
        breakdowns.push_back(breakdown_full(b));

    json j = {{"input", input},
              {"effective_config", skytrack::config_to_json(cfg)},
              {"points",
               {{"total", outcome.total_points},
                {"kept", outcome.kept.size()},
                {"removed", outcome.removed_points},
                {"rejected_nonfinite", diag.rejected_nonfinite}}},
              {"clusters", clusters},
              {"breakdowns", breakdowns},
              {"excluded", excluded_to_json(outcome.excluded)},
              {"timings_ms", timings_to_json(timings)}};
    j["selected"] = outcome.has_selection() ? json(outcome.selected) : json(nullptr);

    if (out_path.empty())
        std::cout << j.dump(2) << "\n";
    else
        write_json(j, out_path);

    if (!points_dir.empty()) {
        std::filesystem::create_directories(points_dir);
        for (const skytrack::Cluster& c : outcome.clusters) {
            std::string csv = "frame,t,sensor,x,y,z\n";
            for (std::size_t i : c.point_indices) {
                const skytrack::TimedPoint& p = outcome.kept[i];
                csv += std::to_string(p.frame_index);
                csv += ',';
                csv += skytrack::detail::format_double(p.t);
                csv += ',';
                csv += skytrack::sensor_name(p.sensor);
                csv += ',';
                csv += skytrack::detail::format_double(p.x);
                csv += ',';
                csv += skytrack::detail::format_double(p.y);
                csv += ',';
                csv += skytrack::detail::format_double(p.z);
                csv += '\n';
            }
            const std::string path =
                (std::filesystem::path(points_dir) / ("cluster_" + std::to_string(c.id) + ".csv"))
                    .string();
            skytrack::detail::write_file(path, csv);
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Unsupervised LiDAR UAV trajectory detection"};
    app.require_subcommand(1);

    std::string input, format = "auto", config_path, timestamps_path;
    std::string out_path, report_path, points_dir;
    std::string spec_path, scene_name, out_dir, synth_format = "bin";
    std::string pred_path, gt_path;
    double total_time = 0.0;
    int threads = -1;
    std::vector<std::string> overrides;

    CLI::App* detect = app.add_subcommand("detect", "Detect a UAV trajectory in a sequence");
    detect->add_option("--input", input, "Sequence file (.csv or .bin)")->required();
    detect->add_option("--config", config_path, "Pipeline config JSON");
    detect->add_option("--timestamps", timestamps_path,
                       "Query timestamps file (defaults to frame timestamps)");
    detect->add_option("--out", out_path, "Output trajectory CSV")->required();
    detect->add_option("--report", report_path, "Run report JSON");
    detect->add_option("--format", format, "Input format: auto|csv|bin");
    detect->add_option("--set", overrides, "Config override key=value (repeatable)");
    detect->add_option("--threads", threads, "Worker threads (0 = hardware)");

    CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic scene");
    synth->add_option("--spec", spec_path, "Scene spec JSON");
    synth->add_option("--scene", scene_name, "Built-in scene name (see --list)");
    synth->add_option("--out", out_dir, "Output directory")->required();
    synth->add_option("--format", synth_format, "Sequence format: bin|csv");
    bool list_scenes = false;
    synth->add_flag("--list", list_scenes, "List built-in scene names");

    CLI::App* eval = app.add_subcommand("eval", "Evaluate a trajectory against ground truth");
    eval->add_option("--pred", pred_path, "Predicted trajectory CSV")->required();
    eval->add_option("--gt", gt_path, "Ground truth CSV")->required();
    eval->add_option("--report", report_path, "Report JSON");
    eval->add_option("--total-time", total_time,
                     "Sequence duration in seconds (default: prediction span)");

    CLI::App* inspect = app.add_subcommand("inspect", "Dump clusters and score breakdowns");
    inspect->add_option("--input", input, "Sequence file (.csv or .bin)")->required();
    inspect->add_option("--config", config_path, "Pipeline config JSON");
    inspect->add_option("--out", out_path, "Output JSON (default: stdout)");
    inspect->add_option("--points-out", points_dir, "Directory for per-cluster point CSVs");
    inspect->add_option("--format", format, "Input format: auto|csv|bin");
    inspect->add_option("--set", overrides, "Config override key=value (repeatable)");
    inspect->add_option("--threads", threads, "Worker threads (0 = hardware)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (detect->parsed())
            return cmd_detect(input, format, config_path, overrides, threads, timestamps_path,
                              out_path, report_path);
        if (synth->parsed()) {
            if (list_scenes) {
                for (const skytrack::synth::SceneSpec& s : skytrack::synth::standard_suite())
                    std::cout << s.name << "\n";
                return 0;
            }
            if (spec_path.empty() && scene_name.empty())
                throw skytrack::Error("one of --spec or --scene is required");
            return cmd_synth(spec_path, scene_name, out_dir, synth_format);
        }
        if (eval->parsed()) return cmd_eval(pred_path, gt_path, report_path, total_time);
        if (inspect->parsed())
            return cmd_inspect(input, format, config_path, overrides, threads, out_path,
                               points_dir);
    } catch (const skytrack::NoCandidateError& e) {
        std::cerr << "detect: " << e.what() << "\n";
        return kExitNoDetection;
    } catch (const std::exception& e) {
        std::cerr << app.get_subcommands().front()->get_name() << ": " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
