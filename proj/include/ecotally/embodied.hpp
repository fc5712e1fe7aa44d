// SPDX-License-Identifier: Apache-2.0
//
// Production-phase assessment: per-unit impacts from component specs and
// family factors, allocated to the project by its share of the hardware's
// useful lifetime.
#pragma once

#include <string>
#include <vector>

#include "ecotally/config.hpp"
#include "ecotally/units.hpp"

namespace ecotally {

// Production impacts of a single unit of hardware. Water is not assessed by
// the underlying factor databases and stays 0; callers must not read it as
// a measured zero.
inline ImpactVector unit_impact(const ComponentSpec& spec, const FamilyFactors& f) {
    spec.validate();
    ImpactVector v;
    v.adp_basis = f.adp_basis;
    switch (spec.family) {
        case ComponentFamily::Cpu: {
            v.pe_mj = f.base.pe_mj + spec.die_size_cm2 * f.die.pe_mj;
            v.gwp_kgco2eq = f.base.gwp_kgco2eq + spec.die_size_cm2 * f.die.gwp_kgco2eq;
            v.adp_kgsbeq = f.base.adp_kgsbeq + spec.die_size_cm2 * f.die.adp_kgsbeq;
            break;
        }
        case ComponentFamily::Ram:
        case ComponentFamily::Ssd: {
            double die_cm2 = spec.capacity_gb / spec.density_gb_per_cm2;
            v.pe_mj = f.base.pe_mj + die_cm2 * f.die.pe_mj;
            v.gwp_kgco2eq = f.base.gwp_kgco2eq + die_cm2 * f.die.gwp_kgco2eq;
            v.adp_kgsbeq = f.base.adp_kgsbeq + die_cm2 * f.die.adp_kgsbeq;
            break;
        }
        case ComponentFamily::Psu: {
            v.pe_mj = spec.weight_kg * f.base.pe_mj;
            v.gwp_kgco2eq = spec.weight_kg * f.base.gwp_kgco2eq;
            v.adp_kgsbeq = spec.weight_kg * f.base.adp_kgsbeq;
            break;
        }
        case ComponentFamily::Gpu:
        case ComponentFamily::Motherboard:
        case ComponentFamily::Case:
        case ComponentFamily::Assembly: {
            v.pe_mj = f.base.pe_mj;
            v.gwp_kgco2eq = f.base.gwp_kgco2eq;
            v.adp_kgsbeq = f.base.adp_kgsbeq;
            break;
        }
    }
    return v;
}

// Share of a unit's production impacts carried by this project: project
// GPU-hours over lifetime service hours, times units kept busy per GPU.
inline ImpactVector allocate(ComputeQuantity c, const AllocationParams& a, int q_hw, int q_gpu,
                             const ImpactVector& unit) {
    a.validate();
    if (q_gpu < 1) throw ConfigError("allocate: q_gpu must be >= 1");
    if (q_hw < 1) throw ConfigError("allocate: q_hw must be >= 1");
    double share = (c.gpu_hours / a.allocated_hours()) *
                   (static_cast<double>(q_hw) / static_cast<double>(q_gpu));
    return unit * share;
}

struct EmbodiedAssessment {
    struct Row {
        std::string name;
        ComponentFamily family = ComponentFamily::Assembly;
        int quantity_per_node = 1;
        ImpactVector unit;       // one manufactured unit
        ImpactVector allocated;  // this project's share across the node
        double share_pe = 0.0;   // percent of the allocated node total
        double share_gwp = 0.0;
        double share_adp = 0.0;

        friend bool operator==(const Row&, const Row&) = default;
    };

    std::vector<Row> rows;
    ImpactVector total;  // mixed ADP basis when sources disagree (GPU vs. rest)

    friend bool operator==(const EmbodiedAssessment&, const EmbodiedAssessment&) = default;
};

inline EmbodiedAssessment node_embodied(const AssessmentConfig& cfg, ComputeQuantity c) {
    if (cfg.components.empty()) throw ConfigError("node_embodied: no components configured");
    int q_gpu = cfg.gpus_per_node();
    EmbodiedAssessment out;
    ExactSum pe, gwp, adp;
    bool any = false;
    AdpBasis basis = AdpBasis::ElementsOnly;
    for (const ComponentSpec& spec : cfg.components) {
        auto fit = cfg.factors.find(spec.family);
        if (fit == cfg.factors.end())
            throw ConfigError("node_embodied: no factors for family '" +
                              std::string(to_string(spec.family)) + "'");
        EmbodiedAssessment::Row r;
        r.name = spec.name;
        r.family = spec.family;
        r.quantity_per_node = spec.quantity_per_node;
        r.unit = unit_impact(spec, fit->second);
        r.allocated = allocate(c, cfg.allocation, spec.quantity_per_node, q_gpu, r.unit);
        pe.add(r.allocated.pe_mj);
        gwp.add(r.allocated.gwp_kgco2eq);
        adp.add(r.allocated.adp_kgsbeq);
        basis = any ? (basis == r.unit.adp_basis ? basis : AdpBasis::Mixed) : r.unit.adp_basis;
        any = true;
        out.rows.push_back(std::move(r));
    }
    out.total = {pe.value(), gwp.value(), adp.value(), 0.0, basis};
    for (auto& r : out.rows) {
        r.share_pe = out.total.pe_mj > 0 ? 100.0 * r.allocated.pe_mj / out.total.pe_mj : 0.0;
        r.share_gwp =
            out.total.gwp_kgco2eq > 0 ? 100.0 * r.allocated.gwp_kgco2eq / out.total.gwp_kgco2eq
                                      : 0.0;
        r.share_adp =
            out.total.adp_kgsbeq > 0 ? 100.0 * r.allocated.adp_kgsbeq / out.total.adp_kgsbeq
                                     : 0.0;
    }
    return out;
}

}  // namespace ecotally
