// SPDX-License-Identifier: Apache-2.0
//
// Aggregations over a run log: phase/research/module distributions, compute
// intensity histograms, cluster usage timeline, and final-vs-development
// flow decomposition. All reductions use exact summation so results are
// independent of run order.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ecotally/domain.hpp"

namespace ecotally {

// (module, training phase) cell; the unit of the paper's per-module budgets.
struct ModulePhase {
    ModuleKind module;
    TrainingPhaseKind phase;
    auto operator<=>(const ModulePhase&) const = default;
};

// Sector key for budget views that pool failed runs across modules into one
// sector; nullopt is that pooled Failed sector.
using SectorKey = std::optional<ModulePhase>;

inline std::string to_string(ModulePhase mp) {
    return std::string(to_string(mp.module)) + ":" + std::string(to_string(mp.phase));
}
inline std::string to_string(const SectorKey& k) { return k ? to_string(*k) : "failed"; }

inline std::optional<ModulePhase> module_phase_from_string(std::string_view s) {
    std::size_t colon = s.find(':');
    if (colon == std::string_view::npos) return std::nullopt;
    auto module = module_from_string(s.substr(0, colon));
    auto phase = training_phase_from_string(s.substr(colon + 1));
    if (!module || !phase) return std::nullopt;
    return ModulePhase{*module, *phase};
}

// Engaged-but-null result is the pooled Failed sector; nullopt means unparsable.
inline std::optional<SectorKey> sector_from_string(std::string_view s) {
    if (s == "failed") return SectorKey{};
    auto mp = module_phase_from_string(s);
    if (!mp) return std::nullopt;
    return SectorKey{*mp};
}

template <typename Key>
struct Distribution {
    std::map<Key, double> compute;       // GPU-hours per category
    std::map<Key, std::size_t> count;    // runs per category

    double at(const Key& k) const {
        auto it = compute.find(k);
        return it == compute.end() ? 0.0 : it->second;
    }
    double total() const {
        ExactSum s;
        for (const auto& [k, v] : compute) s.add(v);
        return s.value();
    }

    friend bool operator==(const Distribution&, const Distribution&) = default;
};

namespace detail {

template <typename Key>
class DistributionBuilder {
  public:
    void add(const Key& k, double gpu_hours, std::size_t runs = 1) {
        auto& e = acc_[k];
        e.first.add(gpu_hours);
        e.second += runs;
    }
    Distribution<Key> finish() const {
        Distribution<Key> d;
        for (const auto& [k, e] : acc_) {
            d.compute[k] = e.first.value();
            d.count[k] = e.second;
        }
        return d;
    }

  private:
    std::map<Key, std::pair<ExactSum, std::size_t>> acc_;
};

}  // namespace detail

// Compute split across run phases (optimization / validation / evaluation /
// sample generation) via per-run fractions. LLM-backbone development is
// excluded from this view unless include_llm is set.
inline Distribution<RunPhaseKind> by_run_phase(const RunLog& log, bool include_llm = false) {
    detail::DistributionBuilder<RunPhaseKind> b;
    for (RunPhaseKind p : kAllRunPhases) b.add(p, 0.0, 0);
    for (const RunRecord& r : log.runs) {
        if (!include_llm && is_llm_backbone(r)) continue;
        double c = run_compute(r).gpu_hours;
        for (RunPhaseKind p : kAllRunPhases) b.add(p, c * r.phase_fractions[p], 0);
    }
    return b.finish();
}

inline Distribution<ResearchPhaseKind> by_research_phase(const RunLog& log) {
    detail::DistributionBuilder<ResearchPhaseKind> b;
    for (ResearchPhaseKind p : kAllResearchPhases) b.add(p, 0.0, 0);
    for (const RunRecord& r : log.runs) b.add(r.research_phase, run_compute(r).gpu_hours);
    return b.finish();
}

inline bool is_failed(const RunRecord& r) {
    return r.research_phase == ResearchPhaseKind::Failed;
}

// Per-(module, phase) budget with failed runs pooled into their own sector.
inline Distribution<SectorKey> by_module_phase(const RunLog& log) {
    detail::DistributionBuilder<SectorKey> b;
    for (const RunRecord& r : log.runs) {
        SectorKey key = is_failed(r) ? SectorKey{}
                                     : SectorKey{ModulePhase{r.module, r.training_phase}};
        b.add(key, run_compute(r).gpu_hours);
    }
    return b.finish();
}

// Module attribution of failed runs, retained for drill-down.
inline Distribution<ModulePhase> failed_drilldown(const RunLog& log) {
    detail::DistributionBuilder<ModulePhase> b;
    for (const RunRecord& r : log.runs)
        if (is_failed(r)) b.add({r.module, r.training_phase}, run_compute(r).gpu_hours);
    return b.finish();
}

inline Distribution<ModulePhase> final_breakdown(const RunLog& log) {
    detail::DistributionBuilder<ModulePhase> b;
    for (const RunRecord& r : log.runs)
        if (r.research_phase == ResearchPhaseKind::FinalTraining)
            b.add({r.module, r.training_phase}, run_compute(r).gpu_hours);
    return b.finish();
}

struct RatioResult {
    std::map<ModulePhase, double> percent;  // final / total per cell, in %
    std::vector<Diagnostic> diagnostics;

    friend bool operator==(const RatioResult&, const RatioResult&) = default;
};

// Final-run share of each (module, phase) cell's non-failed compute.
inline RatioResult final_to_total_ratios(const RunLog& log) {
    Distribution<SectorKey> totals = by_module_phase(log);
    Distribution<ModulePhase> finals = final_breakdown(log);
    RatioResult out;
    for (const auto& [cell, final_c] : finals.compute) {
        double denom = totals.at(SectorKey{cell});
        if (denom <= 0.0) {
            out.diagnostics.push_back(
                {to_string(cell), "total", "zero denominator; ratio excluded"});
            continue;
        }
        out.percent[cell] = 100.0 * final_c / denom;
    }
    return out;
}

struct IntensityBuckets {
    std::vector<double> thresholds;  // strictly increasing upper bounds, GPU-h
    std::vector<std::string> labels;

    // Bucket i covers [thresholds[i-1], thresholds[i]), with bucket 0
    // starting at zero. Values at or above the top threshold overflow into
    // the last bucket (diagnosed by the histogram).
    std::size_t size() const { return thresholds.size(); }
    std::size_t bucket_of(double gpu_hours) const {
        auto it = std::upper_bound(thresholds.begin(), thresholds.end(), gpu_hours);
        std::size_t i = static_cast<std::size_t>(it - thresholds.begin());
        return std::min(i, thresholds.size() - 1);
    }

    static IntensityBuckets defaults() {
        return IntensityBuckets{{1, 24, 168, 730, 8760, 26280, 43800, 87600},
                                {"<1h", "1h-1d", "1d-1w", "1w-1mo", "1mo-1y", "1y-3y", "3y-5y",
                                 "5y-10y"}};
    }

    void validate() const {
        if (thresholds.empty()) throw std::invalid_argument("buckets: no thresholds");
        for (std::size_t i = 0; i + 1 < thresholds.size(); ++i)
            if (!(thresholds[i] < thresholds[i + 1]))
                throw std::invalid_argument("buckets: thresholds must be strictly increasing");
        if (!(thresholds.front() > 0.0))
            throw std::invalid_argument("buckets: thresholds must be positive");
        if (!labels.empty() && labels.size() != thresholds.size())
            throw std::invalid_argument("buckets: label count must match threshold count");
    }

    friend bool operator==(const IntensityBuckets&, const IntensityBuckets&) = default;
};

struct IntensityResult {
    IntensityBuckets buckets;
    std::vector<std::size_t> count;   // runs per bucket
    std::vector<double> compute;      // GPU-hours per bucket
    std::vector<Diagnostic> diagnostics;

    double total() const {
        ExactSum s;
        for (double v : compute) s.add(v);
        return s.value();
    }
    std::size_t total_count() const {
        std::size_t n = 0;
        for (std::size_t c : count) n += c;
        return n;
    }

    friend bool operator==(const IntensityResult&, const IntensityResult&) = default;
};

inline IntensityResult intensity_histogram(const RunLog& log,
                                           IntensityBuckets buckets = IntensityBuckets::defaults(),
                                           bool include_llm = false) {
    buckets.validate();
    std::size_t n = buckets.size();
    std::vector<ExactSum> sums(n);
    IntensityResult out;
    out.count.assign(n, 0);
    for (const RunRecord& r : log.runs) {
        if (!include_llm && is_llm_backbone(r)) continue;
        double c = run_compute(r).gpu_hours;
        std::size_t i = buckets.bucket_of(c);
        if (c >= buckets.thresholds.back())
            out.diagnostics.push_back({r.run_id, "compute",
                                       "exceeds top bucket threshold; assigned to top bucket"});
        out.count[i] += 1;
        sums[i].add(c);
    }
    out.compute.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.compute[i] = sums[i].value();
    out.buckets = std::move(buckets);
    return out;
}

// Intensity histograms of one module's non-failed runs, keyed by training
// phase (failed runs form their own sector elsewhere and are not curriculum
// representatives).
inline std::map<TrainingPhaseKind, IntensityResult> intensity_by_training_phase(
    const RunLog& log, const IntensityBuckets& buckets = IntensityBuckets::defaults(),
    ModuleKind module = ModuleKind::MainModel) {
    std::map<TrainingPhaseKind, RunLog> split;
    for (const RunRecord& r : log.runs)
        if (r.module == module && !is_failed(r)) split[r.training_phase].runs.push_back(r);
    std::map<TrainingPhaseKind, IntensityResult> out;
    for (auto& [phase, sublog] : split) out.emplace(phase, intensity_histogram(sublog, buckets, true));
    return out;
}

struct TimelineSample {
    std::int64_t timestamp = 0;  // unix seconds (sample instant)
    int gpus_in_use = 0;
    int concurrent_runs = 0;
    double gpus_in_use_smoothed = 0.0;
    double concurrent_runs_smoothed = 0.0;
    std::map<SectorKey, double> cumulative;  // GPU-hours accrued through this sample's interval

    friend bool operator==(const TimelineSample&, const TimelineSample&) = default;
};

struct TimelineSeries {
    std::int64_t sample_interval_s = 1800;
    std::vector<TimelineSample> samples;

    friend bool operator==(const TimelineSeries&, const TimelineSeries&) = default;
};

// Cluster usage resampled on a fixed grid. gpus_in_use/concurrent_runs count
// runs whose [start, end) covers the sample instant; cumulative integrates
// per-sector GPU-hours through the end of each sample's interval, so the
// last sample holds the by_module_phase totals.
inline TimelineSeries timeline(const RunLog& log, std::int64_t interval_s = 1800,
                               std::size_t smooth_window = 100) {
    TimelineSeries series;
    series.sample_interval_s = interval_s;
    if (log.runs.empty() || interval_s <= 0) return series;

    std::int64_t t0 = log.runs.front().start;
    std::int64_t tmax = log.runs.front().end;
    for (const RunRecord& r : log.runs) {
        t0 = std::min(t0, r.start);
        tmax = std::max(tmax, r.end);
    }
    std::size_t n = static_cast<std::size_t>(
        std::max<std::int64_t>(1, (tmax - t0 + interval_s - 1) / interval_s));

    // index runs by start for the sweep
    std::vector<const RunRecord*> by_start;
    by_start.reserve(log.runs.size());
    for (const RunRecord& r : log.runs) by_start.push_back(&r);
    std::sort(by_start.begin(), by_start.end(), [](const RunRecord* a, const RunRecord* b) {
        return a->start != b->start ? a->start < b->start : a->run_id < b->run_id;
    });

    std::map<SectorKey, ExactSum> cumulative;
    // active runs ordered by end time for cheap expiry
    std::multimap<std::int64_t, const RunRecord*> active;
    std::size_t next = 0;
    std::vector<double> gpus_hist, runs_hist;
    gpus_hist.reserve(n);
    runs_hist.reserve(n);
    series.samples.reserve(n);

    for (std::size_t k = 0; k < n; ++k) {
        std::int64_t tk = t0 + static_cast<std::int64_t>(k) * interval_s;
        std::int64_t tnext = tk + interval_s;
        while (next < by_start.size() && by_start[next]->start < tnext) {
            const RunRecord* r = by_start[next++];
            if (r->end > tk) active.emplace(r->end, r);
        }
        while (!active.empty() && active.begin()->first <= tk) active.erase(active.begin());

        TimelineSample s;
        s.timestamp = tk;
        for (const auto& [end, r] : active) {
            if (r->start <= tk) {
                s.gpus_in_use += r->gpus;
                s.concurrent_runs += 1;
            }
            std::int64_t overlap = std::min(end, tnext) - std::max(r->start, tk);
            if (overlap > 0) {
                SectorKey key = is_failed(*r)
                                    ? SectorKey{}
                                    : SectorKey{ModulePhase{r->module, r->training_phase}};
                cumulative[key].add(static_cast<double>(overlap) / 3600.0 *
                                    static_cast<double>(r->gpus));
            }
        }
        for (const auto& [key, sum] : cumulative) s.cumulative[key] = sum.value();

        gpus_hist.push_back(static_cast<double>(s.gpus_in_use));
        runs_hist.push_back(static_cast<double>(s.concurrent_runs));
        std::size_t w = std::min(smooth_window == 0 ? std::size_t{1} : smooth_window, k + 1);
        double gs = 0.0, rs = 0.0;
        for (std::size_t i = k + 1 - w; i <= k; ++i) {
            gs += gpus_hist[i];
            rs += runs_hist[i];
        }
        s.gpus_in_use_smoothed = gs / static_cast<double>(w);
        s.concurrent_runs_smoothed = rs / static_cast<double>(w);
        series.samples.push_back(std::move(s));
    }
    return series;
}

struct FlowGraph {
    struct Edge {
        std::string from;
        std::string to;
        double gpu_hours = 0.0;

        friend bool operator==(const Edge&, const Edge&) = default;
    };
    std::vector<std::string> nodes;
    std::vector<Edge> edges;

    // Largest relative in/out imbalance across nodes that have outgoing
    // edges (sources excepted); sinks are exempt by construction.
    double max_conservation_error() const {
        std::map<std::string, double> in, out;
        for (const Edge& e : edges) {
            in[e.to] += e.gpu_hours;
            out[e.from] += e.gpu_hours;
        }
        double worst = 0.0;
        for (const auto& [node, o] : out) {
            auto it = in.find(node);
            if (it == in.end()) continue;  // source
            double denom = std::max(it->second, o);
            if (denom > 0.0) worst = std::max(worst, std::abs(it->second - o) / denom);
        }
        return worst;
    }

    friend bool operator==(const FlowGraph&, const FlowGraph&) = default;
};

// Three-layer decomposition of the budget: total -> module sectors (failed
// pooled) -> training phases -> final vs. residual development compute.
inline FlowGraph sankey_flows(const RunLog& log) {
    FlowGraph g;
    if (log.runs.empty()) return g;

    Distribution<SectorKey> cells = by_module_phase(log);
    Distribution<ModulePhase> finals = final_breakdown(log);

    std::map<ModuleKind, ExactSum> module_totals;
    bool has_failed = false;
    for (const auto& [key, c] : cells.compute) {
        if (key)
            module_totals[key->module].add(c);
        else
            has_failed = true;
    }

    auto add_node = [&](const std::string& name) {
        if (std::find(g.nodes.begin(), g.nodes.end(), name) == g.nodes.end())
            g.nodes.push_back(name);
    };

    add_node("total");
    double final_total = 0.0;
    for (const auto& [module, sum] : module_totals) {
        std::string mnode{to_string(module)};
        add_node(mnode);
        g.edges.push_back({"total", mnode, sum.value()});
    }
    if (has_failed) {
        add_node("failed");
        g.edges.push_back({"total", "failed", cells.at(SectorKey{})});
    }
    for (const auto& [key, c] : cells.compute) {
        if (!key) continue;
        std::string pnode = to_string(*key);
        add_node(pnode);
        g.edges.push_back({std::string(to_string(key->module)), pnode, c});
        double f = finals.at(*key);
        if (f > 0.0) {
            add_node("final");
            g.edges.push_back({pnode, "final", f});
            final_total += f;
        }
        if (c - f > 0.0) {
            add_node("development");
            g.edges.push_back({pnode, "development", c - f});
        }
    }
    (void)final_total;
    return g;
}

}  // namespace ecotally
