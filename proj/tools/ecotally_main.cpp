// ecotally: turn GPU-cluster run logs into compute analytics and a
// multi-indicator environmental assessment.
//
// Exit codes: 0 success, 1 I/O or internal failure, 2 usage error,
// 3 invalid configuration, 4 invalid or unparsable log.

#include "ecotally/ecotally.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace ecotally;

struct CommonArgs {
    std::string log_path;
    std::string config_path;
    std::string locations_path;
    std::string out_dir;
    std::string format = "json";
    double compute = -1.0;  // < 0: not given
    bool include_llm = false;
    std::vector<double> buckets;
};

// --config accepts the file name with or without the .json suffix.
AssessmentConfig load_config_arg(const std::string& path) {
    if (path.empty()) return reference_config();
    namespace fs = std::filesystem;
    if (!fs::exists(path) && fs::exists(path + ".json")) return load_config(path + ".json");
    return load_config(path);
}

std::vector<GridProfile> load_locations_arg(const std::string& path) {
    if (path.empty()) return reference_locations();
    return load_locations(path);
}

struct InvalidLog : std::runtime_error {
    using std::runtime_error::runtime_error;
};

RunLog load_valid_log(const std::string& path) {
    RunLog log = load_log(path);
    auto issues = validate_log(log);
    if (!issues.empty()) {
        for (const Diagnostic& d : issues)
            std::cerr << path << ": " << d.run_id << ": " << d.field << ": " << d.reason << "\n";
        throw InvalidLog(std::to_string(issues.size()) + " validation issue(s) in " + path);
    }
    return log;
}

double log_compute_total(const RunLog& log) {
    ExactSum sum;
    for (const RunRecord& r : log.runs) sum.add(run_compute(r).gpu_hours);
    return sum.value();
}

// Compute precedence: --compute beats the log-derived total beats the
// config's project default.
std::optional<ComputeQuantity> pick_compute(const CommonArgs& a, const RunLog* log) {
    if (a.compute >= 0.0) return ComputeQuantity{a.compute};
    if (log) return ComputeQuantity{log_compute_total(*log)};
    return std::nullopt;
}

ReportFormat parse_format(const std::string& s) {
    auto f = report_format_from_string(s);
    if (!f) throw CLI::ValidationError("--format", "expected json, csv, or plotdata");
    return *f;
}

AnalyticsOptions analytics_options(const CommonArgs& a) {
    AnalyticsOptions opt;
    opt.include_llm = a.include_llm;
    if (!a.buckets.empty()) {
        opt.buckets.thresholds = a.buckets;
        opt.buckets.labels.clear();
        opt.buckets.validate();
    }
    return opt;
}

void print_lca_summary(const Assessment& a) {
    ImpactVector t = a.totals.total();
    std::printf("compute %.10g GPU-h\n", a.compute_gpu_hours);
    std::printf("energy %.10g kWh IT, %.10g kWh total\n",
                a.operational.energy.computation_total_kwh(), a.operational.energy.total_kwh());
    std::printf("PE    %.4g MJ\n", t.pe_mj);
    std::printf("GWP   %.4g kgCO2eq\n", t.gwp_kgco2eq);
    std::printf("ADP   %.4g kgSbeq\n", t.adp_kgsbeq);
    std::printf("water %.4g L\n", a.totals.water_cooling_l + a.totals.water_electricity_l);
}

int cmd_validate(const CommonArgs& a) {
    RunLog log = load_valid_log(a.log_path);
    std::printf("ok: %zu runs, %.10g GPU-hours\n", log.runs.size(), log_compute_total(log));
    return 0;
}

int cmd_analyze(const CommonArgs& a) {
    RunLog log = load_valid_log(a.log_path);
    Report r;
    add_analytics(r, log, analytics_options(a));
    write_report(r, a.out_dir, parse_format(a.format));
    std::printf("analytics for %zu runs -> %s\n", log.runs.size(), a.out_dir.c_str());
    return 0;
}

int cmd_lca(const CommonArgs& a) {
    AssessmentConfig cfg = load_config_arg(a.config_path);
    std::optional<RunLog> log;
    if (!a.log_path.empty()) log = load_valid_log(a.log_path);
    Report r;
    add_lca(r, cfg, pick_compute(a, log ? &*log : nullptr));
    if (!a.out_dir.empty()) write_report(r, a.out_dir, parse_format(a.format));
    print_lca_summary(r.lca);
    return 0;
}

int cmd_scenario(const CommonArgs& a) {
    AssessmentConfig cfg = load_config_arg(a.config_path);
    std::optional<RunLog> log;
    if (!a.log_path.empty()) log = load_valid_log(a.log_path);
    if (auto c = pick_compute(a, log ? &*log : nullptr)) cfg.compute_gpu_hours = c->gpu_hours;
    ScenarioSet set{cfg, load_locations_arg(a.locations_path)};
    Report r;
    add_scenarios(r, set);
    if (!a.out_dir.empty()) write_report(r, a.out_dir, parse_format(a.format));
    for (const LocationImpact& li : r.locations)
        std::printf("%-12s GWP %.4g kgCO2eq, water %.4g L\n", li.name.c_str(), li.gwp_kgco2eq,
                    li.water_l);
    return 0;
}

int cmd_report(const CommonArgs& a) {
    RunLog log = load_valid_log(a.log_path);
    AssessmentConfig cfg = load_config_arg(a.config_path);
    Report r;
    add_analytics(r, log, analytics_options(a));
    add_lca(r, cfg, pick_compute(a, &log));
    ScenarioSet set{cfg, load_locations_arg(a.locations_path)};
    set.base.compute_gpu_hours = r.lca.compute_gpu_hours;
    add_scenarios(r, set);
    r.log_path = a.log_path;
    write_report(r, a.out_dir, parse_format(a.format));
    std::printf("report for %zu runs -> %s\n", log.runs.size(), a.out_dir.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"GPU training-run analytics and environmental life-cycle assessment"};
    app.require_subcommand(1);
    CommonArgs a;

    auto add_log = [&](CLI::App* c, bool required) {
        auto* o = c->add_option("--log", a.log_path, "run log (JSONL)");
        if (required) o->required();
    };
    auto add_output = [&](CLI::App* c, bool required) {
        auto* o = c->add_option("--out", a.out_dir, "output directory");
        if (required) o->required();
        c->add_option("--format", a.format, "output format: json, csv, plotdata")
            ->check(CLI::IsMember({"json", "csv", "plotdata"}));
    };
    auto add_lca_inputs = [&](CLI::App* c) {
        c->add_option("--config", a.config_path,
                      "assessment config (JSON; reference cluster when omitted)");
        c->add_option("--compute", a.compute, "total compute in GPU-hours (overrides the log)");
    };
    auto add_analytics_flags = [&](CLI::App* c) {
        c->add_option("--include-llm", a.include_llm,
                      "count LLM-backbone runs in run-phase and intensity aggregates");
        c->add_option("--buckets", a.buckets,
                      "intensity bucket upper bounds in GPU-hours, comma-separated")
            ->delimiter(',');
    };

    CLI::App* validate = app.add_subcommand("validate", "parse and sanity-check a run log");
    add_log(validate, true);

    CLI::App* analyze = app.add_subcommand("analyze", "compute-distribution analytics");
    add_log(analyze, true);
    add_output(analyze, true);
    add_analytics_flags(analyze);

    CLI::App* lca = app.add_subcommand("lca", "environmental life-cycle assessment");
    add_log(lca, false);
    add_lca_inputs(lca);
    add_output(lca, false);

    CLI::App* scenario = app.add_subcommand("scenario", "relocate the cluster across grids");
    add_log(scenario, false);
    add_lca_inputs(scenario);
    scenario->add_option("--locations", a.locations_path,
                         "grid profiles JSON (reference set when omitted)");
    add_output(scenario, false);

    CLI::App* report = app.add_subcommand("report", "full pipeline: analytics + LCA + scenarios");
    add_log(report, true);
    add_lca_inputs(report);
    report->add_option("--locations", a.locations_path,
                       "grid profiles JSON (reference set when omitted)");
    add_output(report, true);
    add_analytics_flags(report);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(validate)) return cmd_validate(a);
        if (app.got_subcommand(analyze)) return cmd_analyze(a);
        if (app.got_subcommand(lca)) return cmd_lca(a);
        if (app.got_subcommand(scenario)) return cmd_scenario(a);
        if (app.got_subcommand(report)) return cmd_report(a);
    } catch (const LogParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const InvalidLog& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
