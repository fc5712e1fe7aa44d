// SPDX-License-Identifier: Apache-2.0
//
// Report assembly and rendering. A Report bundles the analytics, assessment,
// and scenario results into one value that serializes losslessly to JSON and
// renders to CSV or plot-data tables. All outputs are deterministic: keys are
// sorted, numbers use shortest round-trip form, and nothing time-varying is
// written into data files (source metadata lives in its own file).
#pragma once

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "ecotally/analytics.hpp"
#include "ecotally/assessment.hpp"
#include "ecotally/scenarios.hpp"

namespace ecotally {

inline constexpr std::string_view kToolVersion = "1.0.0";

struct ReportError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Everything a single invocation produced. Sections are optional so the same
// container serves `analyze`, `lca`, `scenario`, and the combined `report`.
struct Report {
    std::string tool_version = std::string(kToolVersion);
    std::string config_name;
    std::string config_hash;  // FNV-1a 64 over the canonical config JSON
    std::string log_path;
    std::size_t run_count = 0;

    bool has_analytics = false;
    bool analytics_include_llm = false;  // applied to run_phase and intensity
    Distribution<RunPhaseKind> run_phase;
    Distribution<ResearchPhaseKind> research_phase;
    Distribution<SectorKey> module_phase;
    Distribution<ModulePhase> failed_by_cell;
    Distribution<ModulePhase> finals;
    RatioResult ratios;
    IntensityResult intensity;
    std::map<TrainingPhaseKind, IntensityResult> intensity_by_phase;
    TimelineSeries timeline;
    FlowGraph flows;

    bool has_lca = false;
    Assessment lca;

    bool has_scenarios = false;
    std::vector<LocationImpact> locations;

    friend bool operator==(const Report&, const Report&) = default;
};

namespace detail {

// Shortest decimal that parses back to the identical double.
inline std::string dtos(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

// Display form: 3 significant figures.
inline std::string sig3(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

inline nlohmann::json num_cell(double raw, std::string_view unit) {
    return {{"display", sig3(raw)}, {"raw", raw}, {"unit", unit}};
}

inline nlohmann::json count_cell(std::size_t raw) {
    return {{"display", sig3(static_cast<double>(raw))}, {"raw", raw}, {"unit", "runs"}};
}

inline double cell_raw(const nlohmann::json& cell) { return cell.at("raw").get<double>(); }
inline std::size_t cell_count(const nlohmann::json& cell) {
    return cell.at("raw").get<std::size_t>();
}

inline std::string_view adp_basis_name(AdpBasis b) {
    switch (b) {
        case AdpBasis::ElementsOnly: return "elements_only";
        case AdpBasis::ElementsAndFossil: return "elements_and_fossil";
        case AdpBasis::Mixed: return "mixed";
    }
    return "elements_only";
}

inline AdpBasis adp_basis_from_name(std::string_view s) {
    if (s == "elements_only") return AdpBasis::ElementsOnly;
    if (s == "elements_and_fossil") return AdpBasis::ElementsAndFossil;
    if (s == "mixed") return AdpBasis::Mixed;
    throw ReportError("report: unknown adp_basis '" + std::string(s) + "'");
}

inline std::string fnv1a_hex(std::string_view s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

template <typename Key>
nlohmann::json dist_to_json(const Distribution<Key>& d) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& [k, c] : d.compute) {
        nlohmann::json row;
        row["key"] = std::string(to_string(k));
        row["compute"] = num_cell(c, "GPUh");
        row["runs"] = count_cell(d.count.at(k));
        rows.push_back(std::move(row));
    }
    return {{"rows", rows}};
}

template <typename Key, typename ParseFn>
Distribution<Key> dist_from_json(const nlohmann::json& j, ParseFn parse, const char* where) {
    Distribution<Key> d;
    for (const auto& row : j.at("rows")) {
        std::string name = row.at("key").get<std::string>();
        auto k = parse(name);
        if (!k) throw ReportError(std::string(where) + ": unknown key '" + name + "'");
        d.compute[*k] = cell_raw(row.at("compute"));
        d.count[*k] = cell_count(row.at("runs"));
    }
    return d;
}

inline nlohmann::json diagnostics_to_json(const std::vector<Diagnostic>& ds) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Diagnostic& d : ds)
        arr.push_back({{"field", d.field}, {"reason", d.reason}, {"run_id", d.run_id}});
    return arr;
}

inline std::vector<Diagnostic> diagnostics_from_json(const nlohmann::json& j) {
    std::vector<Diagnostic> out;
    for (const auto& e : j)
        out.push_back({e.at("run_id").get<std::string>(), e.at("field").get<std::string>(),
                       e.at("reason").get<std::string>()});
    return out;
}

inline nlohmann::json intensity_to_json(const IntensityResult& r) {
    return {{"buckets",
             {{"labels", r.buckets.labels}, {"thresholds_gpu_hours", r.buckets.thresholds}}},
            {"compute_gpu_hours", r.compute},
            {"diagnostics", diagnostics_to_json(r.diagnostics)},
            {"runs", r.count}};
}

inline IntensityResult intensity_from_json(const nlohmann::json& j) {
    IntensityResult r;
    const nlohmann::json& b = j.at("buckets");
    r.buckets.thresholds = b.at("thresholds_gpu_hours").get<std::vector<double>>();
    r.buckets.labels = b.at("labels").get<std::vector<std::string>>();
    r.compute = j.at("compute_gpu_hours").get<std::vector<double>>();
    r.count = j.at("runs").get<std::vector<std::size_t>>();
    r.diagnostics = diagnostics_from_json(j.at("diagnostics"));
    return r;
}

inline nlohmann::json impact_to_json(const ImpactVector& v) {
    return {{"adp_basis", adp_basis_name(v.adp_basis)},
            {"adp_kgsbeq", num_cell(v.adp_kgsbeq, "kgSbeq")},
            {"gwp_kgco2eq", num_cell(v.gwp_kgco2eq, "kgCO2eq")},
            {"pe_mj", num_cell(v.pe_mj, "MJ")},
            {"water_l", num_cell(v.water_l, "L")}};
}

inline ImpactVector impact_from_json(const nlohmann::json& j) {
    ImpactVector v;
    v.pe_mj = cell_raw(j.at("pe_mj"));
    v.gwp_kgco2eq = cell_raw(j.at("gwp_kgco2eq"));
    v.adp_kgsbeq = cell_raw(j.at("adp_kgsbeq"));
    v.water_l = cell_raw(j.at("water_l"));
    v.adp_basis = adp_basis_from_name(j.at("adp_basis").get<std::string>());
    return v;
}

inline nlohmann::json analytics_to_json(const Report& r) {
    nlohmann::json a;
    a["include_llm"] = r.analytics_include_llm;
    a["run_phase"] = dist_to_json(r.run_phase);
    a["research_phase"] = dist_to_json(r.research_phase);
    a["module_phase"] = dist_to_json(r.module_phase);
    a["failed_by_cell"] = dist_to_json(r.failed_by_cell);
    a["final_breakdown"] = dist_to_json(r.finals);

    nlohmann::json ratio_rows = nlohmann::json::array();
    for (const auto& [k, pct] : r.ratios.percent)
        ratio_rows.push_back({{"key", to_string(k)}, {"percent", num_cell(pct, "%")}});
    a["final_ratios"] = {{"diagnostics", diagnostics_to_json(r.ratios.diagnostics)},
                         {"rows", ratio_rows}};

    a["intensity"] = intensity_to_json(r.intensity);
    nlohmann::json per_phase;
    for (const auto& [phase, res] : r.intensity_by_phase)
        per_phase[std::string(to_string(phase))] = intensity_to_json(res);
    a["intensity_by_phase"] = per_phase.is_null() ? nlohmann::json::object() : per_phase;

    nlohmann::json samples = nlohmann::json::array();
    for (const TimelineSample& s : r.timeline.samples) {
        nlohmann::json cum;
        for (const auto& [sector, gh] : s.cumulative) cum[to_string(sector)] = gh;
        samples.push_back({{"concurrent_runs", s.concurrent_runs},
                           {"cumulative_gpu_hours", cum.is_null() ? nlohmann::json::object() : cum},
                           {"gpus_in_use", s.gpus_in_use},
                           {"gpus_in_use_smoothed", s.gpus_in_use_smoothed},
                           {"concurrent_runs_smoothed", s.concurrent_runs_smoothed},
                           {"timestamp_s", s.timestamp}});
    }
    a["timeline"] = {{"sample_interval_s", r.timeline.sample_interval_s}, {"samples", samples}};

    nlohmann::json edges = nlohmann::json::array();
    for (const FlowGraph::Edge& e : r.flows.edges)
        edges.push_back({{"from", e.from}, {"gpu_hours", e.gpu_hours}, {"to", e.to}});
    a["flows"] = {{"edges", edges}, {"nodes", r.flows.nodes}, {"unit", "GPUh"}};
    return a;
}

inline void analytics_from_json(const nlohmann::json& a, Report& r) {
    r.has_analytics = true;
    r.analytics_include_llm = a.at("include_llm").get<bool>();
    r.run_phase = dist_from_json<RunPhaseKind>(a.at("run_phase"), run_phase_from_string,
                                               "analytics.run_phase");
    r.research_phase = dist_from_json<ResearchPhaseKind>(
        a.at("research_phase"), research_phase_from_string, "analytics.research_phase");
    r.module_phase = dist_from_json<SectorKey>(a.at("module_phase"), sector_from_string,
                                               "analytics.module_phase");
    r.failed_by_cell = dist_from_json<ModulePhase>(a.at("failed_by_cell"),
                                                   module_phase_from_string,
                                                   "analytics.failed_by_cell");
    r.finals = dist_from_json<ModulePhase>(a.at("final_breakdown"), module_phase_from_string,
                                           "analytics.final_breakdown");

    const nlohmann::json& ratios = a.at("final_ratios");
    r.ratios = {};
    for (const auto& row : ratios.at("rows")) {
        std::string name = row.at("key").get<std::string>();
        auto k = module_phase_from_string(name);
        if (!k) throw ReportError("analytics.final_ratios: unknown key '" + name + "'");
        r.ratios.percent[*k] = cell_raw(row.at("percent"));
    }
    r.ratios.diagnostics = diagnostics_from_json(ratios.at("diagnostics"));

    r.intensity = intensity_from_json(a.at("intensity"));
    r.intensity_by_phase.clear();
    for (const auto& [name, sub] : a.at("intensity_by_phase").items()) {
        auto phase = training_phase_from_string(name);
        if (!phase) throw ReportError("analytics.intensity_by_phase: unknown phase '" + name + "'");
        r.intensity_by_phase[*phase] = intensity_from_json(sub);
    }

    const nlohmann::json& tl = a.at("timeline");
    r.timeline = {};
    r.timeline.sample_interval_s = tl.at("sample_interval_s").get<std::int64_t>();
    for (const auto& sj : tl.at("samples")) {
        TimelineSample s;
        s.timestamp = sj.at("timestamp_s").get<std::int64_t>();
        s.gpus_in_use = sj.at("gpus_in_use").get<int>();
        s.concurrent_runs = sj.at("concurrent_runs").get<int>();
        s.gpus_in_use_smoothed = sj.at("gpus_in_use_smoothed").get<double>();
        s.concurrent_runs_smoothed = sj.at("concurrent_runs_smoothed").get<double>();
        for (const auto& [name, gh] : sj.at("cumulative_gpu_hours").items()) {
            auto sector = sector_from_string(name);
            if (!sector)
                throw ReportError("analytics.timeline: unknown sector '" + name + "'");
            s.cumulative[*sector] = gh.get<double>();
        }
        r.timeline.samples.push_back(std::move(s));
    }

    const nlohmann::json& flows = a.at("flows");
    r.flows = {};
    r.flows.nodes = flows.at("nodes").get<std::vector<std::string>>();
    for (const auto& ej : flows.at("edges"))
        r.flows.edges.push_back({ej.at("from").get<std::string>(), ej.at("to").get<std::string>(),
                                 ej.at("gpu_hours").get<double>()});
}

inline nlohmann::json lca_to_json(const Assessment& a) {
    nlohmann::json l;
    l["compute"] = num_cell(a.compute_gpu_hours, "GPUh");

    nlohmann::json comp, dc;
    for (const auto& [k, kwh] : a.operational.energy.computation_kwh)
        comp[std::string(to_string(k))] = num_cell(kwh, "kWh");
    for (const auto& [k, kwh] : a.operational.energy.datacenter_kwh)
        dc[std::string(to_string(k))] = num_cell(kwh, "kWh");
    l["energy"] = {{"computation_kwh", comp.is_null() ? nlohmann::json::object() : comp},
                   {"datacenter_kwh", dc.is_null() ? nlohmann::json::object() : dc},
                   {"overhead", num_cell(a.operational.energy.overhead, "ratio")}};

    nlohmann::json op_rows = nlohmann::json::array();
    for (const auto& row : a.operational.rows)
        op_rows.push_back({{"component", to_string(row.kind)},
                           {"computation", impact_to_json(row.computation)},
                           {"computation_kwh", num_cell(row.computation_kwh, "kWh")},
                           {"datacenter", impact_to_json(row.datacenter)},
                           {"datacenter_kwh", num_cell(row.datacenter_kwh, "kWh")},
                           {"water_cooling_l", num_cell(row.water_cooling_l, "L")},
                           {"water_electricity_l", num_cell(row.water_electricity_l, "L")}});
    l["operational"] = {
        {"computation_total", impact_to_json(a.operational.computation_total)},
        {"datacenter_total", impact_to_json(a.operational.datacenter_total)},
        {"rows", op_rows},
        {"water_total",
         {{"cooling_l", num_cell(a.operational.water_total.cooling_l, "L")},
          {"electricity_l", num_cell(a.operational.water_total.electricity_l, "L")}}}};

    nlohmann::json emb_rows = nlohmann::json::array();
    for (const auto& row : a.embodied.rows) {
        nlohmann::json quantity = {{"display", sig3(row.quantity_per_node)},
                                   {"raw", row.quantity_per_node},
                                   {"unit", "units"}};
        emb_rows.push_back({{"allocated", impact_to_json(row.allocated)},
                            {"family", to_string(row.family)},
                            {"name", row.name},
                            {"quantity_per_node", quantity},
                            {"share_adp", num_cell(row.share_adp, "%")},
                            {"share_gwp", num_cell(row.share_gwp, "%")},
                            {"share_pe", num_cell(row.share_pe, "%")},
                            {"unit", impact_to_json(row.unit)}});
    }
    l["embodied"] = {{"rows", emb_rows}, {"total", impact_to_json(a.embodied.total)}};

    l["totals"] = {{"computation", impact_to_json(a.totals.computation)},
                   {"datacenter", impact_to_json(a.totals.datacenter)},
                   {"embodied", impact_to_json(a.totals.embodied)},
                   {"embodied_water_assessed", a.totals.embodied_water_assessed},
                   {"water_cooling_l", num_cell(a.totals.water_cooling_l, "L")},
                   {"water_electricity_l", num_cell(a.totals.water_electricity_l, "L")}};
    return l;
}

inline Assessment lca_from_json(const nlohmann::json& l) {
    Assessment a;
    a.compute_gpu_hours = cell_raw(l.at("compute"));

    const nlohmann::json& energy = l.at("energy");
    for (const auto& [name, cell] : energy.at("computation_kwh").items())
        a.operational.energy.computation_kwh[kind_from_name(name, kAllPowerComponents,
                                                            "report.lca.energy")] =
            cell_raw(cell);
    for (const auto& [name, cell] : energy.at("datacenter_kwh").items())
        a.operational.energy.datacenter_kwh[kind_from_name(name, kAllPowerComponents,
                                                           "report.lca.energy")] = cell_raw(cell);
    a.operational.energy.overhead = cell_raw(energy.at("overhead"));

    const nlohmann::json& op = l.at("operational");
    for (const auto& rj : op.at("rows")) {
        OperationalAssessment::Row row;
        row.kind = kind_from_name(rj.at("component").get<std::string>(), kAllPowerComponents,
                                  "report.lca.operational");
        row.computation_kwh = cell_raw(rj.at("computation_kwh"));
        row.datacenter_kwh = cell_raw(rj.at("datacenter_kwh"));
        row.computation = impact_from_json(rj.at("computation"));
        row.datacenter = impact_from_json(rj.at("datacenter"));
        row.water_cooling_l = cell_raw(rj.at("water_cooling_l"));
        row.water_electricity_l = cell_raw(rj.at("water_electricity_l"));
        a.operational.rows.push_back(std::move(row));
    }
    a.operational.computation_total = impact_from_json(op.at("computation_total"));
    a.operational.datacenter_total = impact_from_json(op.at("datacenter_total"));
    a.operational.water_total.cooling_l = cell_raw(op.at("water_total").at("cooling_l"));
    a.operational.water_total.electricity_l = cell_raw(op.at("water_total").at("electricity_l"));

    const nlohmann::json& emb = l.at("embodied");
    for (const auto& rj : emb.at("rows")) {
        EmbodiedAssessment::Row row;
        row.name = rj.at("name").get<std::string>();
        row.family = kind_from_name(rj.at("family").get<std::string>(), kAllComponentFamilies,
                                    "report.lca.embodied");
        row.quantity_per_node = rj.at("quantity_per_node").at("raw").get<int>();
        row.unit = impact_from_json(rj.at("unit"));
        row.allocated = impact_from_json(rj.at("allocated"));
        row.share_pe = cell_raw(rj.at("share_pe"));
        row.share_gwp = cell_raw(rj.at("share_gwp"));
        row.share_adp = cell_raw(rj.at("share_adp"));
        a.embodied.rows.push_back(std::move(row));
    }
    a.embodied.total = impact_from_json(emb.at("total"));

    const nlohmann::json& totals = l.at("totals");
    a.totals.computation = impact_from_json(totals.at("computation"));
    a.totals.datacenter = impact_from_json(totals.at("datacenter"));
    a.totals.embodied = impact_from_json(totals.at("embodied"));
    a.totals.water_cooling_l = cell_raw(totals.at("water_cooling_l"));
    a.totals.water_electricity_l = cell_raw(totals.at("water_electricity_l"));
    a.totals.embodied_water_assessed = totals.at("embodied_water_assessed").get<bool>();
    return a;
}

}  // namespace detail

inline nlohmann::json report_to_json(const Report& r) {
    using namespace detail;
    nlohmann::json j;
    j["meta"] = {{"config_hash", r.config_hash},
                 {"config_name", r.config_name},
                 {"log_path", r.log_path},
                 {"run_count", r.run_count},
                 {"tool_version", r.tool_version}};
    if (r.has_analytics) j["analytics"] = analytics_to_json(r);
    if (r.has_lca) j["lca"] = lca_to_json(r.lca);
    if (r.has_scenarios) {
        nlohmann::json rows = nlohmann::json::array();
        for (const LocationImpact& li : r.locations)
            rows.push_back({{"gwp_kgco2eq", num_cell(li.gwp_kgco2eq, "kgCO2eq")},
                            {"name", li.name},
                            {"water_l", num_cell(li.water_l, "L")}});
        j["scenarios"] = {{"locations", rows}};
    }
    return j;
}

inline Report report_from_json(const nlohmann::json& j) {
    using namespace detail;
    try {
        Report r;
        const nlohmann::json& meta = j.at("meta");
        r.tool_version = meta.at("tool_version").get<std::string>();
        r.config_name = meta.at("config_name").get<std::string>();
        r.config_hash = meta.at("config_hash").get<std::string>();
        r.log_path = meta.at("log_path").get<std::string>();
        r.run_count = meta.at("run_count").get<std::size_t>();

        if (j.contains("analytics")) analytics_from_json(j.at("analytics"), r);
        if (j.contains("lca")) {
            r.has_lca = true;
            r.lca = lca_from_json(j.at("lca"));
        }
        if (j.contains("scenarios")) {
            r.has_scenarios = true;
            for (const auto& row : j.at("scenarios").at("locations"))
                r.locations.push_back({row.at("name").get<std::string>(),
                                       cell_raw(row.at("gwp_kgco2eq")),
                                       cell_raw(row.at("water_l"))});
        }
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw ReportError(std::string("report: malformed document: ") + e.what());
    } catch (const ConfigError& e) {
        throw ReportError(std::string("report: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// Builders

struct AnalyticsOptions {
    IntensityBuckets buckets = IntensityBuckets::defaults();
    bool include_llm = false;
    std::int64_t timeline_interval_s = 1800;
    int timeline_smooth_window = 100;
};

inline void add_analytics(Report& r, const RunLog& log, const AnalyticsOptions& opt = {}) {
    r.has_analytics = true;
    r.analytics_include_llm = opt.include_llm;
    r.run_count = log.runs.size();
    r.run_phase = by_run_phase(log, opt.include_llm);
    r.research_phase = by_research_phase(log);
    r.module_phase = by_module_phase(log);
    r.failed_by_cell = failed_drilldown(log);
    r.finals = final_breakdown(log);
    r.ratios = final_to_total_ratios(log);
    r.intensity = intensity_histogram(log, opt.buckets, opt.include_llm);
    r.intensity_by_phase = intensity_by_training_phase(log, opt.buckets);
    r.timeline = timeline(log, opt.timeline_interval_s, opt.timeline_smooth_window);
    r.flows = sankey_flows(log);
}

inline std::string config_hash(const AssessmentConfig& cfg) {
    return detail::fnv1a_hex(config_to_json(cfg).dump());
}

inline void add_lca(Report& r, const AssessmentConfig& cfg,
                    std::optional<ComputeQuantity> compute = std::nullopt) {
    r.has_lca = true;
    r.config_name = cfg.name;
    r.config_hash = config_hash(cfg);
    r.lca = assess(cfg, compute);
}

inline void add_scenarios(Report& r, const ScenarioSet& set) {
    r.has_scenarios = true;
    if (r.config_name.empty()) r.config_name = set.base.name;
    if (r.config_hash.empty()) r.config_hash = config_hash(set.base);
    r.locations = location_scenarios(set);
}

// ---------------------------------------------------------------------------
// Rendering

enum class ReportFormat { Json, Csv, PlotData };

inline std::optional<ReportFormat> report_format_from_string(std::string_view s) {
    if (s == "json") return ReportFormat::Json;
    if (s == "csv") return ReportFormat::Csv;
    if (s == "plotdata") return ReportFormat::PlotData;
    return std::nullopt;
}

struct RenderedFile {
    std::string name;
    std::string content;
};

namespace detail {

// Writes one delimited table; the two text formats differ only in separator,
// file suffix, and how a not-assessed cell is spelled.
struct TableWriter {
    char sep;
    std::string out;

    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out.push_back(sep);
            out += cells[i];
        }
        out.push_back('\n');
    }
};

inline std::string itos(std::int64_t v) { return std::to_string(v); }
inline std::string utos(std::size_t v) { return std::to_string(v); }

template <typename Key>
void render_distribution(std::vector<RenderedFile>& files, const std::string& stem, char sep,
                         const char* ext, const char* key_header, const Distribution<Key>& d) {
    TableWriter t{sep, {}};
    t.row({key_header, "gpu_hours", "runs"});
    for (const auto& [k, c] : d.compute)
        t.row({std::string(to_string(k)), dtos(c), utos(d.count.at(k))});
    files.push_back({stem + ext, std::move(t.out)});
}

inline void render_text(const Report& r, char sep, const char* ext,
                        const char* missing_cell, std::vector<RenderedFile>& files) {
    if (r.has_analytics) {
        render_distribution(files, "run_phase", sep, ext, "run_phase", r.run_phase);
        render_distribution(files, "research_phase", sep, ext, "research_phase",
                            r.research_phase);
        render_distribution(files, "module_phase", sep, ext, "sector", r.module_phase);
        render_distribution(files, "failed_breakdown", sep, ext, "sector", r.failed_by_cell);
        render_distribution(files, "final_breakdown", sep, ext, "sector", r.finals);

        {
            TableWriter t{sep, {}};
            t.row({"sector", "final_share_pct"});
            for (const auto& [k, pct] : r.ratios.percent) t.row({to_string(k), dtos(pct)});
            files.push_back({std::string("final_ratios") + ext, std::move(t.out)});
        }
        {
            TableWriter t{sep, {}};
            t.row({"bucket", "label", "upper_gpu_hours", "runs", "gpu_hours"});
            for (std::size_t b = 0; b < r.intensity.buckets.size(); ++b)
                t.row({utos(b), r.intensity.buckets.labels[b],
                       dtos(r.intensity.buckets.thresholds[b]), utos(r.intensity.count[b]),
                       dtos(r.intensity.compute[b])});
            files.push_back({std::string("intensity") + ext, std::move(t.out)});
        }
        {
            TableWriter t{sep, {}};
            t.row({"training_phase", "bucket", "label", "runs", "gpu_hours"});
            for (const auto& [phase, res] : r.intensity_by_phase)
                for (std::size_t b = 0; b < res.buckets.size(); ++b)
                    t.row({std::string(to_string(phase)), utos(b), res.buckets.labels[b],
                           utos(res.count[b]), dtos(res.compute[b])});
            files.push_back({std::string("intensity_by_phase") + ext, std::move(t.out)});
        }
        {
            TableWriter t{sep, {}};
            t.row({"timestamp_s", "gpus_in_use", "concurrent_runs", "gpus_in_use_smoothed",
                   "concurrent_runs_smoothed", "cumulative_total_gpu_hours"});
            for (const TimelineSample& s : r.timeline.samples) {
                ExactSum total;
                for (const auto& [sector, gh] : s.cumulative) total.add(gh);
                t.row({itos(s.timestamp), itos(s.gpus_in_use), itos(s.concurrent_runs),
                       dtos(s.gpus_in_use_smoothed), dtos(s.concurrent_runs_smoothed),
                       dtos(total.value())});
            }
            files.push_back({std::string("timeline") + ext, std::move(t.out)});
        }
        {
            TableWriter t{sep, {}};
            t.row({"from", "to", "gpu_hours"});
            for (const FlowGraph::Edge& e : r.flows.edges)
                t.row({e.from, e.to, dtos(e.gpu_hours)});
            files.push_back({std::string("sankey") + ext, std::move(t.out)});
        }
    }

    if (r.has_lca) {
        const Assessment& a = r.lca;
        {
            TableWriter t{sep, {}};
            t.row({"component", "computation_kwh", "datacenter_kwh"});
            ExactSum comp, dc;
            for (const auto& row : a.operational.rows) {
                t.row({std::string(to_string(row.kind)), dtos(row.computation_kwh),
                       dtos(row.datacenter_kwh)});
                comp.add(row.computation_kwh);
                dc.add(row.datacenter_kwh);
            }
            t.row({"total", dtos(comp.value()), dtos(dc.value())});
            files.push_back({std::string("lca_energy") + ext, std::move(t.out)});
        }
        {
            // Table A.1 shape: one row per indicator and scope, columns by
            // power component; embodied folds non-{GPU,CPU,RAM} into "other".
            std::map<PowerComponentKind, const OperationalAssessment::Row*> op;
            for (const auto& row : a.operational.rows) op[row.kind] = &row;
            std::map<PowerComponentKind, ImpactVector> emb;
            for (const auto& row : a.embodied.rows) {
                PowerComponentKind col = PowerComponentKind::Other;
                if (row.family == ComponentFamily::Gpu) col = PowerComponentKind::Gpu;
                else if (row.family == ComponentFamily::Cpu) col = PowerComponentKind::Cpu;
                else if (row.family == ComponentFamily::Ram) col = PowerComponentKind::Ram;
                auto [it, fresh] = emb.try_emplace(col, row.allocated);
                if (!fresh) it->second = add_widened(it->second, row.allocated);
            }

            struct Indicator {
                const char* name;
                const char* unit;
                double ImpactVector::* field;
                bool embodied_assessed;
            };
            const Indicator indicators[] = {
                {"primary_energy", "MJ", &ImpactVector::pe_mj, true},
                {"gwp", "kgCO2eq", &ImpactVector::gwp_kgco2eq, true},
                {"adp", "kgSbeq", &ImpactVector::adp_kgsbeq, true},
                {"water", "L", &ImpactVector::water_l, false},
            };

            TableWriter t{sep, {}};
            t.row({"indicator", "unit", "scope", "gpu", "cpu", "ram", "other", "total"});
            for (const Indicator& ind : indicators) {
                std::map<PowerComponentKind, double> emb_col, dc_col, comp_col;
                for (PowerComponentKind k : kAllPowerComponents) {
                    auto it = emb.find(k);
                    emb_col[k] = it == emb.end() ? 0.0 : it->second.*(ind.field);
                    dc_col[k] = op.count(k) ? op[k]->datacenter.*(ind.field) : 0.0;
                    comp_col[k] = op.count(k) ? op[k]->computation.*(ind.field) : 0.0;
                }
                auto emit = [&](const char* scope, const std::map<PowerComponentKind, double>& col,
                                bool assessed) {
                    std::vector<std::string> cells{ind.name, ind.unit, scope};
                    ExactSum total;
                    for (PowerComponentKind k : kAllPowerComponents) {
                        if (!assessed) {
                            cells.push_back(missing_cell);
                        } else {
                            cells.push_back(dtos(col.at(k)));
                            total.add(col.at(k));
                        }
                    }
                    cells.push_back(assessed ? dtos(total.value()) : missing_cell);
                    t.row(cells);
                };
                emit("embodied", emb_col, ind.embodied_assessed);
                emit("datacenter", dc_col, true);
                emit("computation", comp_col, true);
                std::map<PowerComponentKind, double> total_col;
                for (PowerComponentKind k : kAllPowerComponents) {
                    ExactSum s;
                    if (ind.embodied_assessed) s.add(emb_col[k]);
                    s.add(dc_col[k]);
                    s.add(comp_col[k]);
                    total_col[k] = s.value();
                }
                emit("total", total_col, true);
            }
            files.push_back({std::string("lca_impacts") + ext, std::move(t.out)});
        }
        {
            TableWriter t{sep, {}};
            t.row({"component", "family", "quantity_per_node", "pe_mj", "gwp_kgco2eq",
                   "adp_kgsbeq", "adp_basis"});
            for (const auto& row : a.embodied.rows)
                t.row({row.name, std::string(to_string(row.family)), itos(row.quantity_per_node),
                       dtos(row.unit.pe_mj), dtos(row.unit.gwp_kgco2eq),
                       dtos(row.unit.adp_kgsbeq), std::string(adp_basis_name(row.unit.adp_basis))});
            files.push_back({std::string("lca_per_unit") + ext, std::move(t.out)});
        }
        {
            TableWriter t{sep, {}};
            t.row({"component", "pe_mj", "gwp_kgco2eq", "adp_kgsbeq", "share_pe_pct",
                   "share_gwp_pct", "share_adp_pct"});
            for (const auto& row : a.embodied.rows)
                t.row({row.name, dtos(row.allocated.pe_mj), dtos(row.allocated.gwp_kgco2eq),
                       dtos(row.allocated.adp_kgsbeq), dtos(row.share_pe), dtos(row.share_gwp),
                       dtos(row.share_adp)});
            t.row({"total", dtos(a.embodied.total.pe_mj), dtos(a.embodied.total.gwp_kgco2eq),
                   dtos(a.embodied.total.adp_kgsbeq), "100", "100", "100"});
            files.push_back({std::string("lca_embodied") + ext, std::move(t.out)});
        }
        {
            TableWriter t{sep, {}};
            t.row({"component", "cooling_l", "electricity_l", "total_l"});
            for (const auto& row : a.operational.rows)
                t.row({std::string(to_string(row.kind)), dtos(row.water_cooling_l),
                       dtos(row.water_electricity_l),
                       dtos(row.water_cooling_l + row.water_electricity_l)});
            t.row({"total", dtos(a.operational.water_total.cooling_l),
                   dtos(a.operational.water_total.electricity_l),
                   dtos(a.operational.water_total.total())});
            files.push_back({std::string("lca_water") + ext, std::move(t.out)});
        }
    }

    if (r.has_scenarios) {
        TableWriter t{sep, {}};
        t.row({"location", "gwp_kgco2eq", "water_l"});
        for (const LocationImpact& li : r.locations)
            t.row({li.name, dtos(li.gwp_kgco2eq), dtos(li.water_l)});
        files.push_back({std::string("locations") + ext, std::move(t.out)});
    }
}

}  // namespace detail

// Deterministic file set for one report. Source metadata (paths, hashes) goes
// to meta.json in every format; data files carry no volatile content.
inline std::vector<RenderedFile> render_report(const Report& r, ReportFormat format) {
    std::vector<RenderedFile> files;
    nlohmann::json full = report_to_json(r);
    files.push_back({"meta.json", full.at("meta").dump(2) + "\n"});
    switch (format) {
        case ReportFormat::Json: {
            full.erase("meta");
            files.push_back({"report.json", full.dump(2) + "\n"});
            break;
        }
        case ReportFormat::Csv:
            detail::render_text(r, ',', ".csv", "", files);
            break;
        case ReportFormat::PlotData:
            detail::render_text(r, ' ', ".dat", "nan", files);
            break;
    }
    return files;
}

inline void write_files(const std::vector<RenderedFile>& files,
                        const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw ReportError("report: cannot create directory '" + dir.string() + "'");
    for (const RenderedFile& f : files) {
        std::ofstream out(dir / f.name, std::ios::binary);
        out.write(f.content.data(), static_cast<std::streamsize>(f.content.size()));
        if (!out) throw ReportError("report: cannot write '" + (dir / f.name).string() + "'");
    }
}

inline void write_report(const Report& r, const std::filesystem::path& dir, ReportFormat format) {
    write_files(render_report(r, format), dir);
}

// Reads back a JSON-format report directory written by write_report.
inline Report load_report(const std::filesystem::path& dir) {
    auto slurp = [](const std::filesystem::path& p) {
        std::ifstream in(p, std::ios::binary);
        if (!in) throw ReportError("report: cannot read '" + p.string() + "'");
        return std::string(std::istreambuf_iterator<char>(in), {});
    };
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(slurp(dir / "report.json"));
        j["meta"] = nlohmann::json::parse(slurp(dir / "meta.json"));
    } catch (const nlohmann::json::exception& e) {
        throw ReportError(std::string("report: malformed JSON: ") + e.what());
    }
    return report_from_json(j);
}

}  // namespace ecotally
