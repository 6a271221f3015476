// Command-line driver: experiment configs in, CSV/JSON reports out.

#include <filesystem>
#include <iostream>
#include <string>
#include <unistd.h>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "diskdyn/action.hpp"
#include "diskdyn/calabi.hpp"
#include "diskdyn/config.hpp"
#include "diskdyn/ergodic.hpp"
#include "diskdyn/errors.hpp"
#include "diskdyn/intersection.hpp"
#include "diskdyn/parallel.hpp"
#include "diskdyn/report.hpp"
#include "diskdyn/verification.hpp"
#include "diskdyn/winding.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace diskdyn;

namespace {

struct CliOptions {
    std::string config_path;
    std::string out_dir = "out";
    unsigned threads = 0;
    std::uint64_t seed = 0;
    bool seed_given = false;
};

std::string artifact_path(const CliOptions& opt, const std::string& command,
                          const std::string& ext) {
    return (fs::path(opt.out_dir) / (command + "-" + std::to_string(opt.seed) + "." + ext))
        .string();
}

ExperimentConfig load(const CliOptions& opt) {
    ExperimentConfig cfg;
    if (!opt.config_path.empty()) {
        cfg = load_config(opt.config_path);
    }
    if (opt.seed_given) {
        cfg.seed = opt.seed;
        cfg.quadrature.seed = cfg.quadrature_seed_given ? cfg.quadrature.seed : opt.seed;
    }
    return cfg;
}

Point2 require_point(const std::optional<Point2>& p, const char* name) {
    if (!p) {
        throw ConfigError(std::string("this command requires \"") + name + "\" in the config");
    }
    return *p;
}

json point_json(const Point2& p) { return json::array({p.x, p.y}); }

int run_flow(const CliOptions& opt, const ExperimentConfig& cfg) {
    const Point2 x = require_point(cfg.x, "x");
    const Trajectory traj = advance(cfg.hamiltonian, x, 0.0, cfg.n, cfg.flow);
    CsvWriter csv(artifact_path(opt, "flow", "csv"), {"t", "x", "y", "vx", "vy"});
    for (std::size_t i = 0; i <= traj.steps(); ++i) {
        csv.row_values({traj.time(i), traj.point(i).x, traj.point(i).y, traj.velocity(i).x,
                        traj.velocity(i).y});
    }
    json summary{{"command", "flow"},
                 {"seed", cfg.seed},
                 {"n", cfg.n},
                 {"x", point_json(x)},
                 {"endpoint", point_json(traj.endpoint())}};
    write_text_file(artifact_path(opt, "flow", "json"), summary.dump(2) + "\n");
    return 0;
}

int run_action(const CliOptions& opt, const ExperimentConfig& cfg) {
    const auto samples = disk_quadrature(cfg.quadrature);
    std::vector<ActionValue> values(samples.size());
    parallel_for(samples.size(), opt.threads, [&](std::size_t i) {
        values[i] = action(cfg.hamiltonian, cfg.primitive, samples[i].point, cfg.flow);
    });
    CsvWriter csv(artifact_path(opt, "action", "csv"),
                  {"x", "y", "value", "path_term", "hamiltonian_term"});
    std::vector<double> weighted(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        csv.row_values({samples[i].point.x, samples[i].point.y, values[i].value,
                        values[i].path_term, values[i].hamiltonian_term});
        weighted[i] = values[i].value * samples[i].weight;
    }
    json summary{{"command", "action"},
                 {"seed", cfg.seed},
                 {"samples", samples.size()},
                 {"integral", pairwise_sum(weighted)}};
    write_text_file(artifact_path(opt, "action", "json"), summary.dump(2) + "\n");
    return 0;
}

int run_winding(const CliOptions& opt, const ExperimentConfig& cfg) {
    if (cfg.x && cfg.y && (*cfg.x - *cfg.y).norm() < 1e-12) {
        throw ConfigError("winding: x and y must be distinct points");
    }
    CsvWriter csv(artifact_path(opt, "winding", "csv"),
                  {"x1", "y1", "x2", "y2", "W", "min_sep", "substeps"});
    json summary{{"command", "winding"}, {"seed", cfg.seed}, {"n", cfg.n}};
    if (cfg.x && cfg.y) {
        const WindingResult w = cfg.n == 1
                                    ? winding(cfg.hamiltonian, *cfg.x, *cfg.y, cfg.flow)
                                    : winding_iterate(cfg.hamiltonian, *cfg.x, *cfg.y, cfg.n, cfg.flow);
        csv.row_values({cfg.x->x, cfg.x->y, cfg.y->x, cfg.y->y, w.value, w.min_separation,
                        static_cast<double>(w.substeps_used)});
        summary["value"] = w.value;
    } else {
        const PairSet pairs = pair_quadrature(cfg.quadrature, cfg.min_separation);
        std::vector<WindingResult> results(pairs.samples.size());
        parallel_for(pairs.samples.size(), opt.threads, [&](std::size_t i) {
            results[i] = winding(cfg.hamiltonian, pairs.samples[i].first, pairs.samples[i].second,
                                 cfg.flow);
        });
        std::vector<double> values(results.size());
        for (std::size_t i = 0; i < results.size(); ++i) {
            const auto& s = pairs.samples[i];
            csv.row_values({s.first.x, s.first.y, s.second.x, s.second.y, results[i].value,
                            results[i].min_separation,
                            static_cast<double>(results[i].substeps_used)});
            values[i] = results[i].value;
        }
        const MonteCarloMoments m = weighted_mean(values, kPi * kPi);
        summary["pair_integral"] = m.value;
        summary["pair_integral_std_error"] = m.std_error;
        summary["resample_fraction"] = pairs.resample_fraction;
    }
    write_text_file(artifact_path(opt, "winding", "json"), summary.dump(2) + "\n");
    return 0;
}

int run_intersect(const CliOptions& opt, const ExperimentConfig& cfg) {
    const Point2 x = require_point(cfg.x, "x");
    const Point2 e = require_point(cfg.e, "e");
    json summary{{"command", "intersect"}, {"seed", cfg.seed}, {"n", cfg.n}};
    CsvWriter csv(artifact_path(opt, "intersect", "csv"),
                  {"t", "sign", "angle_rate", "radial_fraction"});
    if (cfg.y) {
        const IntersectionResult r =
            intersection_number(cfg.hamiltonian, x, *cfg.y, e, cfg.n, cfg.flow);
        for (const auto& ev : r.crossings) {
            csv.row_values({ev.time, static_cast<double>(ev.sign), ev.angle_rate,
                            ev.radial_fraction});
        }
        summary["value"] = r.value;
        summary["crossings"] = r.crossings.size();
        summary["min_angle_rate"] = r.min_angle_rate;
    } else {
        const IntegralEstimate est =
            intersection_integral(cfg.hamiltonian, x, e, cfg.n, cfg.quadrature, cfg.flow,
                                  opt.threads);
        summary["integral"] = est.value;
        summary["std_error"] = est.std_error;
        summary["retries"] = est.retries;
    }
    write_text_file(artifact_path(opt, "intersect", "json"), summary.dump(2) + "\n");
    return 0;
}

int run_asymptotic(const CliOptions& opt, const ExperimentConfig& cfg) {
    const Point2 x = require_point(cfg.x, "x");
    const int n = std::max(cfg.n, 4);
    const double budget = (1.5 * kPi + 4.0 * cfg.primitive.sup_bound()) / n;
    CsvWriter csv(artifact_path(opt, "asymptotic", "csv"),
                  {"x1", "x2", "y1", "y2", "estimate", "n", "cauchy_gap", "budget", "pass"});
    json summary{{"command", "asymptotic"}, {"seed", cfg.seed}, {"n", n}};

    const BirkhoffEstimate a = asymptotic_action(cfg.hamiltonian, cfg.primitive, x, n, cfg.flow);
    csv.row({format_double(x.x), format_double(x.y), "", "", format_double(a.value),
             std::to_string(n), format_double(a.cauchy_gap), format_double(budget),
             a.cauchy_gap <= budget ? "1" : "0"});
    summary["asymptotic_action"] = a.value;
    summary["action_cauchy_gap"] = a.cauchy_gap;

    if (cfg.y) {
        const BirkhoffEstimate w = asymptotic_winding(cfg.hamiltonian, x, *cfg.y, n, cfg.flow);
        csv.row({format_double(x.x), format_double(x.y), format_double(cfg.y->x),
                 format_double(cfg.y->y), format_double(w.value), std::to_string(n),
                 format_double(w.cauchy_gap), format_double(budget),
                 w.cauchy_gap <= budget ? "1" : "0"});
        summary["asymptotic_winding"] = w.value;
    }
    write_text_file(artifact_path(opt, "asymptotic", "json"), summary.dump(2) + "\n");
    return 0;
}

int run_calabi(const CliOptions& opt, const ExperimentConfig& cfg) {
    const CalabiReport report = calabi_report(cfg.hamiltonian, cfg.primitive, cfg.quadrature,
                                              cfg.flow, cfg.min_separation, opt.threads);
    CsvWriter csv(artifact_path(opt, "calabi", "csv"),
                  {"via_action", "action_error", "via_hamiltonian", "hamiltonian_error",
                   "via_winding", "winding_error", "max_pairwise_gap"});
    csv.row_values({report.via_action.value, report.via_action.error,
                    report.via_hamiltonian.value, report.via_hamiltonian.error,
                    report.via_winding.value, report.via_winding.error, report.max_pairwise_gap});
    json summary{{"command", "calabi"},
                 {"seed", cfg.seed},
                 {"via_action", {{"value", report.via_action.value}, {"error", report.via_action.error}}},
                 {"via_hamiltonian",
                  {{"value", report.via_hamiltonian.value}, {"error", report.via_hamiltonian.error}}},
                 {"via_winding",
                  {{"value", report.via_winding.value}, {"error", report.via_winding.error}}},
                 {"max_pairwise_gap", report.max_pairwise_gap}};
    write_text_file(artifact_path(opt, "calabi", "json"), summary.dump(2) + "\n");
    return 0;
}

int run_verify_theorem(const CliOptions& opt, const ExperimentConfig& cfg) {
    const Point2 x = require_point(cfg.x, "x");
    const int n = std::max(cfg.n, 4);
    const TheoremReport report = verify_main_theorem(cfg.hamiltonian, x, cfg.primitive, n,
                                                     cfg.quadrature, cfg.flow, cfg.flow,
                                                     opt.threads);
    CsvWriter csv(artifact_path(opt, "verify-theorem", "csv"),
                  {"x1", "x2", "y1", "y2", "estimate", "n", "cauchy_gap", "budget", "pass"});
    csv.row({format_double(x.x), format_double(x.y), "", "", format_double(report.residual),
             std::to_string(n), "", format_double(report.budget),
             report.within_budget ? "1" : "0"});
    json summary{{"command", "verify-theorem"},
                 {"seed", cfg.seed},
                 {"n", n},
                 {"action_side", report.action_side},
                 {"winding_side", report.winding_side},
                 {"winding_std_error", report.winding_std_error},
                 {"residual", report.residual},
                 {"budget",
                  {{"crossing_bound_term", report.crossing_bound_term},
                   {"segment_term", report.segment_term},
                   {"mc_term", report.mc_term},
                   {"total", report.budget}}},
                 {"pass", report.within_budget}};
    write_text_file(artifact_path(opt, "verify-theorem", "json"), summary.dump(2) + "\n");
    return report.within_budget ? 0 : 1;
}

int run_verify_all(const CliOptions& opt, const ExperimentConfig& cfg) {
    verify::Profile profile;
    profile.seed = cfg.seed;
    profile.threads = opt.threads;
    profile.scale = cfg.profile_scale;
    profile.criteria = cfg.criteria;
    if (cfg.hamiltonian_given) profile.custom_spec = cfg.hamiltonian;
    profile.work_dir = (fs::path(opt.out_dir) / "scratch").string();
    std::error_code ec;
    fs::create_directories(profile.work_dir, ec);
    char self[4096];
    const ssize_t len = ::readlink("/proc/self/exe", self, sizeof(self) - 1);
    if (len > 0) {
        self[len] = '\0';
        profile.cli_path = self;
    }

    const auto results = verify::run_all(profile, &std::cout);

    CsvWriter csv(artifact_path(opt, "verify-all", "csv"),
                  {"criterion", "item", "value", "budget", "pass"});
    json criteria = json::array();
    for (const auto& r : results) {
        for (const auto& row : r.rows) {
            csv.row({row.criterion, row.item, format_double(row.value), format_double(row.budget),
                     row.pass ? "1" : "0"});
        }
        criteria.push_back({{"id", r.id}, {"pass", r.pass}, {"detail", r.detail}});
    }
    json summary{{"command", "verify-all"},
                 {"seed", cfg.seed},
                 {"scale", profile.scale},
                 {"criteria", criteria},
                 {"pass", verify::all_pass(results)}};
    write_text_file(artifact_path(opt, "verify-all", "json"), summary.dump(2) + "\n");
    return verify::all_pass(results) ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical toolkit for compactly supported area-preserving disk maps: "
                 "Hamiltonian flows, actions, winding and intersection numbers, Birkhoff "
                 "averages, and the Calabi invariant"};
    app.require_subcommand(1);

    CliOptions opt;
    app.add_option("--config", opt.config_path, "JSON experiment config");
    app.add_option("--out", opt.out_dir, "output directory for CSV/JSON artifacts");
    app.add_option("--threads", opt.threads, "worker threads (0 = hardware)");
    auto* seed_opt = app.add_option("--seed", opt.seed, "override the config seed");

    const std::vector<std::string> commands = {"flow",  "action",     "winding",
                                               "intersect", "asymptotic", "calabi",
                                               "verify-theorem", "verify-all"};
    for (const auto& name : commands) {
        app.add_subcommand(name)->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    opt.seed_given = seed_opt->count() > 0;

    try {
        fs::create_directories(opt.out_dir);
        const ExperimentConfig cfg = load(opt);
        opt.seed = cfg.seed;
        const std::string command = app.get_subcommands().front()->get_name();
        if (command == "flow") return run_flow(opt, cfg);
        if (command == "action") return run_action(opt, cfg);
        if (command == "winding") return run_winding(opt, cfg);
        if (command == "intersect") return run_intersect(opt, cfg);
        if (command == "asymptotic") return run_asymptotic(opt, cfg);
        if (command == "calabi") return run_calabi(opt, cfg);
        if (command == "verify-theorem") return run_verify_theorem(opt, cfg);
        if (command == "verify-all") return run_verify_all(opt, cfg);
        std::cerr << "unknown command: " << command << "\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "computation failed: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
