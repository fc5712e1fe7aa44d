// SPDX-License-Identifier: Apache-2.0
//
// What-if analysis: the same cluster and workload under alternative grids,
// and single-parameter sweeps over the assessment configuration.
#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ecotally/assessment.hpp"
#include "ecotally/config.hpp"

namespace ecotally {

struct SweepError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ScenarioSet {
    AssessmentConfig base;
    std::vector<GridProfile> grids;

    void validate() const {
        std::set<std::string> names;
        for (const GridProfile& g : grids) {
            g.validate();
            if (!names.insert(g.name).second)
                throw ConfigError("scenarios: duplicate grid name '" + g.name + "'");
        }
    }
};

struct LocationImpact {
    std::string name;
    double gwp_kgco2eq = 0.0;
    double water_l = 0.0;

    friend bool operator==(const LocationImpact&, const LocationImpact&) = default;
};

// Operational GWP and water for each grid, embodied impacts excluded. The
// datacenter (and its WUE) stays put; only the electricity supply moves.
inline std::vector<LocationImpact> location_scenarios(const ScenarioSet& s) {
    s.validate();
    EnergyBreakdown e = total_energy(ComputeQuantity{s.base.compute_gpu_hours}, s.base);
    double total_kwh = e.total_kwh();
    double cooling_l =
        s.base.datacenter.wue_l_per_kwh * s.base.datacenter.o_cluster * e.computation_total_kwh();
    std::vector<LocationImpact> out;
    out.reserve(s.grids.size());
    for (const GridProfile& g : s.grids)
        out.push_back({g.name, total_kwh * g.ci_g_per_kwh / 1000.0,
                       cooling_l + g.ewif_l_per_kwh * total_kwh});
    return out;
}

namespace detail {

// Numeric config fields addressable by sweep paths.
inline double* sweep_field(AssessmentConfig& cfg, std::string_view path) {
    if (path == "compute_gpu_hours") return &cfg.compute_gpu_hours;
    if (path == "datacenter.pue") return &cfg.datacenter.pue;
    if (path == "datacenter.wue_l_per_kwh") return &cfg.datacenter.wue_l_per_kwh;
    if (path == "datacenter.o_cluster") return &cfg.datacenter.o_cluster;
    if (path == "grid.ci_g_per_kwh") return &cfg.grid.ci_g_per_kwh;
    if (path == "grid.ewif_l_per_kwh") return &cfg.grid.ewif_l_per_kwh;
    if (path == "grid.adpf_mj_per_kwh") return &cfg.grid.adpf_mj_per_kwh;
    if (path == "grid.adpe_kgsbeq_per_kwh") return &cfg.grid.adpe_kgsbeq_per_kwh;
    if (path == "grid.renewable_share") return &cfg.grid.renewable_share;
    if (path == "allocation.lifespan_hours") return &cfg.allocation.lifespan_hours;
    if (path == "allocation.utilization_rate") return &cfg.allocation.utilization_rate;
    return nullptr;
}

}  // namespace detail

inline const std::vector<std::string>& sweep_paths() {
    static const std::vector<std::string> paths = {
        "compute_gpu_hours",      "datacenter.pue",
        "datacenter.wue_l_per_kwh", "datacenter.o_cluster",
        "grid.ci_g_per_kwh",      "grid.ewif_l_per_kwh",
        "grid.adpf_mj_per_kwh",   "grid.adpe_kgsbeq_per_kwh",
        "grid.renewable_share",   "allocation.lifespan_hours",
        "allocation.utilization_rate"};
    return paths;
}

struct SweepPoint {
    double value = 0.0;
    Assessment assessment;
};

// Re-runs the full assessment once per value of one numeric parameter,
// everything else held at the base configuration.
inline std::vector<SweepPoint> sweep(std::string_view param_path,
                                     const std::vector<double>& values,
                                     const AssessmentConfig& base) {
    {
        AssessmentConfig probe = base;
        if (!detail::sweep_field(probe, param_path))
            throw SweepError("sweep: unknown or non-numeric parameter path '" +
                             std::string(param_path) + "'");
    }
    std::vector<SweepPoint> out;
    out.reserve(values.size());
    for (double v : values) {
        AssessmentConfig cfg = base;
        *detail::sweep_field(cfg, param_path) = v;
        cfg.finalize();
        out.push_back({v, assess(cfg)});
    }
    return out;
}

}  // namespace ecotally
