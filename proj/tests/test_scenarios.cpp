// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include "ecotally/scenarios.hpp"

using namespace ecotally;
using Catch::Approx;

namespace {

ScenarioSet ref_set() { return {reference_config(), reference_locations()}; }

const LocationImpact& by_name(const std::vector<LocationImpact>& v, const std::string& n) {
    for (const LocationImpact& li : v)
        if (li.name == n) return li;
    throw std::logic_error("missing location " + n);
}

}  // namespace

TEST_CASE("relocation scenarios match the reference table") {
    std::vector<LocationImpact> got = location_scenarios(ref_set());
    REQUIRE(got.size() == 6);

    struct Gold {
        const char* name;
        double gwp, water;
    };
    const Gold gold[] = {
        {"Sweden", 1.83e5, 2.69e7}, {"France", 2.13e5, 1.85e7}, {"USA", 2.01e6, 1.31e7},
        {"Australia", 2.90e6, 1.67e7}, {"China", 2.90e6, 2.49e7}, {"Poland", 3.20e6, 6.91e6},
    };
    for (const Gold& g : gold) {
        const LocationImpact& li = by_name(got, g.name);
        INFO(g.name);
        CHECK(li.gwp_kgco2eq == Approx(g.gwp).epsilon(0.02));
        CHECK(li.water_l == Approx(g.water).epsilon(0.02));
    }
}

TEST_CASE("cooling water does not move with the grid") {
    ScenarioSet s = ref_set();
    std::vector<LocationImpact> got = location_scenarios(s);

    EnergyBreakdown e = total_energy(ComputeQuantity{s.base.compute_gpu_hours}, s.base);
    double cooling = s.base.datacenter.wue_l_per_kwh * s.base.datacenter.o_cluster *
                     e.computation_total_kwh();
    double total_kwh = e.total_kwh();

    for (const LocationImpact& li : got) {
        const GridProfile* g = nullptr;
        for (const GridProfile& cand : s.grids)
            if (cand.name == li.name) g = &cand;
        REQUIRE(g != nullptr);
        CHECK(li.water_l - g->ewif_l_per_kwh * total_kwh == Approx(cooling).epsilon(1e-9));
        CHECK(li.gwp_kgco2eq == Approx(total_kwh * g->ci_g_per_kwh / 1000.0).epsilon(1e-12));
    }

    // Carbon orders the locations by grid intensity; water does not follow.
    CHECK(by_name(got, "Sweden").gwp_kgco2eq < by_name(got, "Poland").gwp_kgco2eq);
    CHECK(by_name(got, "Sweden").water_l > by_name(got, "Poland").water_l);
}

TEST_CASE("scenario sets reject duplicate grid names") {
    ScenarioSet s = ref_set();
    s.grids.push_back(s.grids.front());
    CHECK_THROWS_AS(s.validate(), ConfigError);
    CHECK_THROWS_AS(location_scenarios(s), ConfigError);

    ScenarioSet bad = ref_set();
    bad.grids[0].ci_g_per_kwh = -1.0;
    CHECK_THROWS_AS(location_scenarios(bad), ConfigError);
}

TEST_CASE("parameter sweeps rebuild the assessment per value") {
    AssessmentConfig base = reference_config();
    std::vector<SweepPoint> pts = sweep("datacenter.pue", {1.0, 1.25, 1.5}, base);
    REQUIRE(pts.size() == 3);
    CHECK(pts[0].value == 1.0);

    // PUE feeds only the overhead share: computation energy is flat, the
    // datacenter share grows, and embodied impacts are untouched.
    double comp0 = pts[0].assessment.operational.energy.computation_total_kwh();
    double comp2 = pts[2].assessment.operational.energy.computation_total_kwh();
    CHECK(comp0 == comp2);
    CHECK(pts[0].assessment.operational.energy.datacenter_total_kwh() <
          pts[2].assessment.operational.energy.datacenter_total_kwh());
    CHECK(pts[0].assessment.embodied.total == pts[2].assessment.embodied.total);
    // At PUE 1 the overhead is only the cluster services share.
    CHECK(pts[0].assessment.operational.energy.overhead == Approx(0.11).margin(1e-12));

    std::vector<SweepPoint> compute_pts = sweep("compute_gpu_hours", {1000.0, 2000.0}, base);
    CHECK(compute_pts[1].assessment.totals.total().gwp_kgco2eq ==
          Approx(2.0 * compute_pts[0].assessment.totals.total().gwp_kgco2eq).epsilon(1e-12));

    CHECK_THROWS_AS(sweep("grid.name", {1.0}, base), SweepError);
    CHECK_THROWS_AS(sweep("datacenter.pue", {0.5}, base), ConfigError);  // invalid value
    CHECK(sweep("datacenter.pue", {}, base).empty());
}

TEST_CASE("every advertised sweep path resolves") {
    AssessmentConfig base = reference_config();
    for (const std::string& path : sweep_paths()) {
        INFO(path);
        // Sweeping the base value through unchanged must succeed everywhere.
        AssessmentConfig probe = base;
        double* field = detail::sweep_field(probe, path);
        REQUIRE(field != nullptr);
        std::vector<SweepPoint> pts = sweep(path, {*field}, base);
        REQUIRE(pts.size() == 1);
        CHECK(pts[0].assessment.compute_gpu_hours > 0.0);
    }
}
