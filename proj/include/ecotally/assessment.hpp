// SPDX-License-Identifier: Apache-2.0
//
// Whole-project assessment: operational and embodied results combined into
// one scoped impact summary.
#pragma once

#include <optional>

#include "ecotally/config.hpp"
#include "ecotally/embodied.hpp"
#include "ecotally/operational.hpp"

namespace ecotally {

struct Assessment {
    double compute_gpu_hours = 0.0;
    OperationalAssessment operational;
    EmbodiedAssessment embodied;
    ScopedImpact totals;

    friend bool operator==(const Assessment&, const Assessment&) = default;
};

// Runs the full model. Compute defaults to the configured project total.
inline Assessment assess(const AssessmentConfig& cfg,
                         std::optional<ComputeQuantity> compute = std::nullopt) {
    ComputeQuantity c = compute.value_or(ComputeQuantity{cfg.compute_gpu_hours});
    Assessment a;
    a.compute_gpu_hours = c.gpu_hours;
    a.operational = assess_operational(c, cfg);
    a.embodied = node_embodied(cfg, c);
    a.totals.computation = a.operational.computation_total;
    a.totals.datacenter = a.operational.datacenter_total;
    a.totals.embodied = a.embodied.total;
    a.totals.water_cooling_l = a.operational.water_total.cooling_l;
    a.totals.water_electricity_l = a.operational.water_total.electricity_l;
    a.totals.embodied_water_assessed = false;
    return a;
}

}  // namespace ecotally
