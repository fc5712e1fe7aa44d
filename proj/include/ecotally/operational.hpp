// SPDX-License-Identifier: Apache-2.0
//
// Use-phase assessment: node energy from per-component power models, the
// datacenter/cluster overhead split, and the conversion of each kWh into
// primary energy, emissions, abiotic depletion, and water consumption.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "ecotally/config.hpp"
#include "ecotally/units.hpp"

namespace ecotally {

struct UnknownSourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Energy drawn by one component class across the whole project, in kWh.
// Per-GPU-hour accounting: every GPU-hour keeps q_hw/q_gpu units of this
// component busy alongside the GPU.
inline double component_energy(ComputeQuantity c, const PowerModel& m, int q_gpu) {
    if (q_gpu < 1) throw ConfigError("component_energy: q_gpu must be >= 1");
    double units_per_gpu = static_cast<double>(m.quantity) / static_cast<double>(q_gpu);
    return c.gpu_hours * units_per_gpu * m.unit_watts() / 1000.0;
}

// Extra energy per unit of computation energy: datacenter facility overhead
// (PUE - 1) applied on top of cluster services, plus the cluster services
// themselves (o_cluster - 1).
inline double overhead_factor(const DatacenterParams& dc) {
    return (dc.pue - 1.0) * dc.o_cluster + (dc.o_cluster - 1.0);
}

struct EnergyBreakdown {
    std::map<PowerComponentKind, double> computation_kwh;
    std::map<PowerComponentKind, double> datacenter_kwh;
    double overhead = 0.0;

    double computation_total_kwh() const {
        ExactSum s;
        for (const auto& [k, v] : computation_kwh) s.add(v);
        return s.value();
    }
    double datacenter_total_kwh() const {
        ExactSum s;
        for (const auto& [k, v] : datacenter_kwh) s.add(v);
        return s.value();
    }
    double total_kwh() const { return computation_total_kwh() + datacenter_total_kwh(); }

    friend bool operator==(const EnergyBreakdown&, const EnergyBreakdown&) = default;
};

inline EnergyBreakdown total_energy(ComputeQuantity c, const AssessmentConfig& cfg) {
    int q_gpu = cfg.gpus_per_node();
    EnergyBreakdown e;
    e.overhead = overhead_factor(cfg.datacenter);
    for (PowerComponentKind k : kAllPowerComponents) {
        const PowerModel* m = cfg.find_power(k);
        if (!m)
            throw ConfigError(std::string("total_energy: missing power model for '") +
                              std::string(to_string(k)) + "'");
        double kwh = component_energy(c, *m, q_gpu);
        e.computation_kwh[k] = kwh;
        e.datacenter_kwh[k] = kwh * e.overhead;
    }
    return e;
}

// One value per operational scope (IT-load computation vs. overheads).
struct ScopeSplit {
    double computation = 0.0;
    double datacenter = 0.0;

    double total() const { return computation + datacenter; }

    friend bool operator==(const ScopeSplit&, const ScopeSplit&) = default;
};

// Primary energy factor of delivered electricity, MJ/kWh: fossil depletion
// of the non-renewable share scaled up to cover the whole mix.
inline double pe_mj_per_kwh(const GridProfile& g) {
    if (!(g.renewable_share < 1.0))
        throw ConfigError("primary_energy: renewable share must be < 1");
    return g.adpf_mj_per_kwh / (1.0 - g.renewable_share);
}

inline ScopeSplit primary_energy(const EnergyBreakdown& e, const GridProfile& g) {
    double f = pe_mj_per_kwh(g);
    return {e.computation_total_kwh() * f, e.datacenter_total_kwh() * f};
}

inline ScopeSplit gwp(const EnergyBreakdown& e, const GridProfile& g) {
    double f = g.ci_g_per_kwh / 1000.0;
    return {e.computation_total_kwh() * f, e.datacenter_total_kwh() * f};
}

inline ScopeSplit adpe_use(const EnergyBreakdown& e, const GridProfile& g) {
    double f = g.adpe_kgsbeq_per_kwh;
    return {e.computation_total_kwh() * f, e.datacenter_total_kwh() * f};
}

// Water drawn by mechanism: evaporative datacenter cooling scales with the
// cluster's computation energy; power-plant cooling scales with everything
// drawn from the grid.
struct WaterSplit {
    double cooling_l = 0.0;
    double electricity_l = 0.0;

    double total() const { return cooling_l + electricity_l; }

    friend bool operator==(const WaterSplit&, const WaterSplit&) = default;
};

inline WaterSplit water(const EnergyBreakdown& e, const DatacenterParams& dc,
                        const GridProfile& g) {
    double comp = e.computation_total_kwh();
    return {dc.wue_l_per_kwh * dc.o_cluster * comp,
            g.ewif_l_per_kwh * (comp + e.datacenter_total_kwh())};
}

// Mix-weighted water intensity of generation, L/kWh.
inline double ewif_from_mix(const std::map<std::string, double>& mix,
                            const std::map<std::string, double>& intensities) {
    double sum = 0.0;
    for (const auto& [src, share] : mix) {
        if (share < 0) throw ConfigError("ewif_from_mix: share for '" + src + "' < 0");
        sum += share;
    }
    if (std::abs(sum - 1.0) > 1e-6) throw ConfigError("ewif_from_mix: shares must sum to 1");
    ExactSum acc;
    for (const auto& [src, share] : mix) {
        auto it = intensities.find(src);
        if (it == intensities.end())
            throw UnknownSourceError("ewif_from_mix: no water intensity for source '" + src +
                                     "'");
        acc.add(share * it->second);
    }
    return acc.value();
}

// Full per-component operational assessment; the Table A.1 rows.
struct OperationalAssessment {
    struct Row {
        PowerComponentKind kind = PowerComponentKind::Other;
        double computation_kwh = 0.0;
        double datacenter_kwh = 0.0;
        ImpactVector computation;  // water_l covers cooling plus generation
        ImpactVector datacenter;   // water_l covers generation only
        double water_cooling_l = 0.0;
        double water_electricity_l = 0.0;

        friend bool operator==(const Row&, const Row&) = default;
    };

    EnergyBreakdown energy;
    std::vector<Row> rows;  // GPU, CPU, RAM, Other
    ImpactVector computation_total;
    ImpactVector datacenter_total;
    WaterSplit water_total;

    ImpactVector operational_total() const { return computation_total + datacenter_total; }

    friend bool operator==(const OperationalAssessment&, const OperationalAssessment&) = default;
};

inline OperationalAssessment assess_operational(ComputeQuantity c, const AssessmentConfig& cfg) {
    OperationalAssessment out;
    out.energy = total_energy(c, cfg);
    double pe_f = pe_mj_per_kwh(cfg.grid);
    double gwp_f = cfg.grid.ci_g_per_kwh / 1000.0;
    double adp_f = cfg.grid.adpe_kgsbeq_per_kwh;
    double cool_f = cfg.datacenter.wue_l_per_kwh * cfg.datacenter.o_cluster;
    double ewif = cfg.grid.ewif_l_per_kwh;

    ExactSum pe_c, pe_d, gwp_c, gwp_d, adp_c, adp_d, wat_c, wat_d, cool, elec;
    for (PowerComponentKind k : kAllPowerComponents) {
        OperationalAssessment::Row r;
        r.kind = k;
        r.computation_kwh = out.energy.computation_kwh.at(k);
        r.datacenter_kwh = out.energy.datacenter_kwh.at(k);

        r.computation = {r.computation_kwh * pe_f, r.computation_kwh * gwp_f,
                         r.computation_kwh * adp_f,
                         (cool_f + ewif) * r.computation_kwh, AdpBasis::ElementsOnly};
        r.datacenter = {r.datacenter_kwh * pe_f, r.datacenter_kwh * gwp_f,
                        r.datacenter_kwh * adp_f, ewif * r.datacenter_kwh,
                        AdpBasis::ElementsOnly};
        r.water_cooling_l = cool_f * r.computation_kwh;
        r.water_electricity_l = ewif * (r.computation_kwh + r.datacenter_kwh);

        pe_c.add(r.computation.pe_mj);
        gwp_c.add(r.computation.gwp_kgco2eq);
        adp_c.add(r.computation.adp_kgsbeq);
        wat_c.add(r.computation.water_l);
        pe_d.add(r.datacenter.pe_mj);
        gwp_d.add(r.datacenter.gwp_kgco2eq);
        adp_d.add(r.datacenter.adp_kgsbeq);
        wat_d.add(r.datacenter.water_l);
        cool.add(r.water_cooling_l);
        elec.add(r.water_electricity_l);
        out.rows.push_back(r);
    }
    out.computation_total = {pe_c.value(), gwp_c.value(), adp_c.value(), wat_c.value(),
                             AdpBasis::ElementsOnly};
    out.datacenter_total = {pe_d.value(), gwp_d.value(), adp_d.value(), wat_d.value(),
                            AdpBasis::ElementsOnly};
    out.water_total = {cool.value(), elec.value()};
    return out;
}

}  // namespace ecotally
