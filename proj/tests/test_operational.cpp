// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "ecotally/operational.hpp"

using namespace ecotally;
using Catch::Approx;

namespace {

const AssessmentConfig& ref() {
    static AssessmentConfig cfg = reference_config();
    return cfg;
}

constexpr double kProjectGpuHours = 3'256'263.0;

const OperationalAssessment& ref_assessment() {
    static OperationalAssessment a =
        assess_operational(ComputeQuantity{kProjectGpuHours}, ref());
    return a;
}

const OperationalAssessment::Row& row(PowerComponentKind k) {
    for (const OperationalAssessment::Row& r : ref_assessment().rows)
        if (r.kind == k) return r;
    throw std::logic_error("missing row");
}

}  // namespace

TEST_CASE("derived node power soaks up the residual draw") {
    const PowerModel* other = ref().find_power(PowerComponentKind::Other);
    REQUIRE(other != nullptr);
    // 10200 - (8x700 + 2x350 + 32x3.94) W
    CHECK(other->watts == Approx(3773.92).margin(1e-9));
    CHECK(other->unit_watts() == other->watts);

    const PowerModel* gpu = ref().find_power(PowerComponentKind::Gpu);
    CHECK(gpu->unit_watts() == Approx(665.0).margin(1e-12));  // 0.95 x 700
    CHECK(ref().gpus_per_node() == 8);
}

TEST_CASE("overhead and primary-energy factors") {
    CHECK(overhead_factor(ref().datacenter) == Approx(0.3875).margin(1e-12));
    CHECK(pe_mj_per_kwh(ref().grid) == Approx(9.31 / 0.728).epsilon(1e-12));

    GridProfile all_renewable = ref().grid;
    all_renewable.renewable_share = 1.0;
    CHECK_THROWS_AS(pe_mj_per_kwh(all_renewable), ConfigError);
}

TEST_CASE("project energy by component") {
    EnergyBreakdown e = total_energy(ComputeQuantity{kProjectGpuHours}, ref());

    CHECK(e.computation_kwh.at(PowerComponentKind::Gpu) == Approx(2.1655e6).epsilon(1e-4));
    CHECK(e.computation_kwh.at(PowerComponentKind::Cpu) == Approx(1.4246e4).epsilon(1e-4));
    CHECK(e.computation_kwh.at(PowerComponentKind::Ram) == Approx(51318.70).epsilon(1e-4));
    CHECK(e.computation_kwh.at(PowerComponentKind::Other) == Approx(1.5361e6).epsilon(1e-4));
    CHECK(e.computation_total_kwh() == Approx(3767089.258125).epsilon(1e-9));

    CHECK(e.overhead == Approx(0.3875).margin(1e-12));
    for (PowerComponentKind k : kAllPowerComponents)
        CHECK(e.datacenter_kwh.at(k) == e.computation_kwh.at(k) * e.overhead);
    CHECK(e.total_kwh() == Approx(5226836.346).epsilon(1e-6));
}

TEST_CASE("computation-scope impacts match the reference table") {
    const double tol = 0.02;
    struct Gold {
        PowerComponentKind k;
        double pe, gwp, adp;
    };
    const Gold gold[] = {
        {PowerComponentKind::Gpu, 2.77e7, 8.83e4, 1.05e-1},
        {PowerComponentKind::Cpu, 1.82e5, 5.81e2, 6.92e-4},
        {PowerComponentKind::Ram, 6.56e5, 2.09e3, 2.49e-3},
        {PowerComponentKind::Other, 1.97e7, 6.27e4, 7.46e-2},
    };
    for (const Gold& g : gold) {
        const auto& r = row(g.k);
        CHECK(r.computation.pe_mj == Approx(g.pe).epsilon(tol));
        CHECK(r.computation.gwp_kgco2eq == Approx(g.gwp).epsilon(tol));
        CHECK(r.computation.adp_kgsbeq == Approx(g.adp).epsilon(tol));
        CHECK(r.computation.adp_basis == AdpBasis::ElementsOnly);
    }
    const ImpactVector& t = ref_assessment().computation_total;
    CHECK(t.pe_mj == Approx(4.82e7).epsilon(tol));
    CHECK(t.gwp_kgco2eq == Approx(1.54e5).epsilon(tol));
    CHECK(t.adp_kgsbeq == Approx(1.83e-1).epsilon(tol));
}

TEST_CASE("datacenter-scope impacts match the reference table") {
    const double tol = 0.02;
    struct Gold {
        PowerComponentKind k;
        double pe, gwp, adp;
    };
    const Gold gold[] = {
        {PowerComponentKind::Gpu, 1.08e7, 3.44e4, 4.09e-2},
        {PowerComponentKind::Cpu, 7.09e4, 2.26e2, 2.69e-4},
        {PowerComponentKind::Ram, 2.55e5, 8.14e2, 9.69e-4},
        {PowerComponentKind::Other, 7.64e6, 2.44e4, 2.90e-2},
    };
    for (const Gold& g : gold) {
        const auto& r = row(g.k);
        CHECK(r.datacenter.pe_mj == Approx(g.pe).epsilon(tol));
        CHECK(r.datacenter.gwp_kgco2eq == Approx(g.gwp).epsilon(tol));
        CHECK(r.datacenter.adp_kgsbeq == Approx(g.adp).epsilon(tol));
    }
    const ImpactVector& t = ref_assessment().datacenter_total;
    CHECK(t.pe_mj == Approx(1.87e7).epsilon(tol));
    CHECK(t.gwp_kgco2eq == Approx(5.98e4).epsilon(tol));
    CHECK(t.adp_kgsbeq == Approx(7.12e-2).epsilon(tol));

    CHECK(ref_assessment().operational_total().pe_mj == Approx(6.68e7).epsilon(tol));
}

TEST_CASE("water split by mechanism matches the reference table") {
    const double tol = 0.02;
    CHECK(row(PowerComponentKind::Gpu).water_cooling_l == Approx(6.02e5).epsilon(tol));
    CHECK(row(PowerComponentKind::Cpu).water_cooling_l == Approx(3.96e3).epsilon(tol));
    CHECK(row(PowerComponentKind::Ram).water_cooling_l == Approx(1.42e4).epsilon(tol));
    CHECK(row(PowerComponentKind::Other).water_cooling_l == Approx(4.27e5).epsilon(tol));

    CHECK(row(PowerComponentKind::Gpu).water_electricity_l == Approx(1.00e7).epsilon(tol));
    CHECK(row(PowerComponentKind::Cpu).water_electricity_l == Approx(6.60e4).epsilon(tol));
    CHECK(row(PowerComponentKind::Ram).water_electricity_l == Approx(2.38e5).epsilon(tol));
    CHECK(row(PowerComponentKind::Other).water_electricity_l == Approx(7.12e6).epsilon(tol));

    const WaterSplit& w = ref_assessment().water_total;
    CHECK(w.cooling_l == Approx(1.05e6).epsilon(tol));
    CHECK(w.electricity_l == Approx(1.75e7).epsilon(tol));
    CHECK(w.total() == Approx(1.85e7).epsilon(tol));

    // The mechanism split and the scope split cover the same water.
    double by_scope = ref_assessment().computation_total.water_l +
                      ref_assessment().datacenter_total.water_l;
    CHECK(w.total() == Approx(by_scope).epsilon(1e-12));

    EnergyBreakdown e = total_energy(ComputeQuantity{kProjectGpuHours}, ref());
    WaterSplit direct = water(e, ref().datacenter, ref().grid);
    CHECK(direct.cooling_l == Approx(w.cooling_l).epsilon(1e-12));
    CHECK(direct.electricity_l == Approx(w.electricity_l).epsilon(1e-12));
}

TEST_CASE("operational assessment is exactly linear in compute") {
    OperationalAssessment a = assess_operational(ComputeQuantity{123456.0}, ref());
    OperationalAssessment b = assess_operational(ComputeQuantity{246912.0}, ref());

    CHECK(b.computation_total == a.computation_total * 2.0);
    CHECK(b.datacenter_total == a.datacenter_total * 2.0);
    CHECK(b.water_total.cooling_l == 2.0 * a.water_total.cooling_l);
    CHECK(b.water_total.electricity_l == 2.0 * a.water_total.electricity_l);
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(b.rows[i].computation == a.rows[i].computation * 2.0);
        CHECK(b.rows[i].computation_kwh == 2.0 * a.rows[i].computation_kwh);
    }

    OperationalAssessment zero = assess_operational(ComputeQuantity{0.0}, ref());
    CHECK(zero.computation_total == ImpactVector{});
    CHECK(zero.water_total.total() == 0.0);
}

TEST_CASE("mix-weighted water intensity") {
    std::map<std::string, double> intensities{{"coal", 1.9}, {"nuclear", 2.5}, {"hydro", 17.0}};

    CHECK(ewif_from_mix({{"coal", 0.5}, {"nuclear", 0.5}}, intensities) == Approx(2.2));
    CHECK(ewif_from_mix({{"hydro", 1.0}}, intensities) == 17.0);

    CHECK_THROWS_AS(ewif_from_mix({{"coal", 0.5}}, intensities), ConfigError);  // sum != 1
    CHECK_THROWS_AS(ewif_from_mix({{"coal", 1.5}, {"nuclear", -0.5}}, intensities), ConfigError);
    CHECK_THROWS_AS(ewif_from_mix({{"wind", 1.0}}, intensities), UnknownSourceError);
}

TEST_CASE("energy model guards its inputs") {
    PowerModel m{PowerComponentKind::Gpu, 8, PowerModel::Mode::Constant, 0.0, 0.0, 665.0};
    CHECK_THROWS_AS(component_energy(ComputeQuantity{1.0}, m, 0), ConfigError);
    CHECK(component_energy(ComputeQuantity{1000.0}, m, 8) == Approx(665.0));

    AssessmentConfig broken = reference_config();
    broken.node_power.erase(broken.node_power.begin() + 2);  // drop RAM
    CHECK_THROWS_AS(total_energy(ComputeQuantity{1.0}, broken), ConfigError);
}
