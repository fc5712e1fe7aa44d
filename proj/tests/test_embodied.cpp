// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <string>

#include "ecotally/embodied.hpp"

using namespace ecotally;
using Catch::Approx;

namespace {

const AssessmentConfig& ref() {
    static AssessmentConfig cfg = reference_config();
    return cfg;
}

const EmbodiedAssessment& ref_embodied() {
    static EmbodiedAssessment e = node_embodied(ref(), ComputeQuantity{3'256'263.0});
    return e;
}

const EmbodiedAssessment::Row& row(const std::string& name) {
    for (const EmbodiedAssessment::Row& r : ref_embodied().rows)
        if (r.name == name) return r;
    throw std::logic_error("missing row " + name);
}

// Reference values carry three significant figures; allow one ulp of the
// third digit.
void check_3sf(double computed, double golden) {
    double tol = std::pow(10.0, std::floor(std::log10(std::fabs(golden))) - 2.0);
    CHECK_THAT(computed, Catch::Matchers::WithinAbs(golden, tol));
}

}  // namespace

TEST_CASE("per-unit production impacts match the factor database") {
    struct Gold {
        const char* name;
        double gwp, pe, adp;
    };
    const Gold gold[] = {
        {"gpu", 2.70e2, 3.69e3, 8.94e-3},  {"cpu", 4.67e1, 6.62e2, 2.04e-2},
        {"ram", 5.81e1, 7.30e2, 3.20e-3},  {"ssd1", 3.93e1, 4.83e2, 1.51e-3},
        {"ssd2", 7.23e1, 8.93e2, 2.45e-3}, {"psu", 7.29e1, 1.06e3, 2.49e-2},
        {"motherboard", 6.61e1, 8.36e2, 3.69e-3}, {"case", 1.50e2, 2.20e3, 2.02e-2},
        {"assembly", 6.68, 6.86e1, 1.41e-6},
    };
    REQUIRE(ref_embodied().rows.size() == 9);
    for (const Gold& g : gold) {
        const ImpactVector& u = row(g.name).unit;
        INFO(g.name);
        check_3sf(u.gwp_kgco2eq, g.gwp);
        check_3sf(u.pe_mj, g.pe);
        check_3sf(u.adp_kgsbeq, g.adp);
        CHECK(u.water_l == 0.0);  // not assessed by the production databases
    }
}

TEST_CASE("die-area scaling drives memory and storage impacts") {
    const ComponentSpec* ssd1 = nullptr;
    const ComponentSpec* ssd2 = nullptr;
    for (const ComponentSpec& c : ref().components) {
        if (c.name == "ssd1") ssd1 = &c;
        if (c.name == "ssd2") ssd2 = &c;
    }
    REQUIRE((ssd1 && ssd2));
    // Same family factors; the 2x capacity doubles only the die term.
    const FamilyFactors& f = ref().factors.at(ComponentFamily::Ssd);
    ImpactVector u1 = unit_impact(*ssd1, f);
    ImpactVector u2 = unit_impact(*ssd2, f);
    double die1 = ssd1->capacity_gb / ssd1->density_gb_per_cm2;
    CHECK(die1 == 15.0);
    CHECK(u2.gwp_kgco2eq - f.base.gwp_kgco2eq ==
          Approx(2.0 * (u1.gwp_kgco2eq - f.base.gwp_kgco2eq)));

    ComponentSpec bad = *ssd1;
    bad.capacity_gb = 0.0;
    CHECK_THROWS_AS(unit_impact(bad, f), ConfigError);
}

TEST_CASE("lifetime allocation shares impacts by served GPU-hours") {
    CHECK(ref().allocation.allocated_hours() == 21024.0);  // 4 y x 8760 h x 0.6

    ImpactVector unit{100.0, 10.0, 1.0, 0.0, AdpBasis::ElementsAndFossil};
    ImpactVector got = allocate(ComputeQuantity{21024.0}, ref().allocation, 8, 8, unit);
    CHECK(got.pe_mj == Approx(100.0));  // exactly one lifetime, one unit per GPU
    CHECK(got.adp_basis == AdpBasis::ElementsAndFossil);

    // Six PSUs across eight GPUs: 6/8 of a unit per GPU-lifetime.
    ImpactVector psu = allocate(ComputeQuantity{21024.0}, ref().allocation, 6, 8, unit);
    CHECK(psu.gwp_kgco2eq == Approx(7.5));

    CHECK_THROWS_AS(allocate(ComputeQuantity{1.0}, ref().allocation, 0, 8, unit), ConfigError);
    CHECK_THROWS_AS(allocate(ComputeQuantity{1.0}, ref().allocation, 8, 0, unit), ConfigError);
    AllocationParams bad{0.0, 0.6};
    CHECK_THROWS_AS(allocate(ComputeQuantity{1.0}, bad, 8, 8, unit), ConfigError);
}

TEST_CASE("allocated node impacts match the reference table") {
    const double tol = 0.02;
    struct Gold {
        const char* name;
        double pe, gwp, adp;
    };
    const Gold gold[] = {
        {"gpu", 5.71e5, 4.19e4, 1.38},        {"cpu", 2.56e4, 1.81e3, 7.90e-1},
        {"ram", 4.52e5, 3.60e4, 1.99},        {"ssd1", 1.87e4, 1.52e3, 5.84e-2},
        {"ssd2", 1.38e5, 1.12e4, 3.80e-1},    {"psu", 1.23e5, 8.47e3, 2.89},
        {"motherboard", 1.62e4, 1.28e3, 7.14e-2}, {"case", 4.26e4, 2.90e3, 3.91e-1},
        {"assembly", 1.33e3, 1.29e2, 2.73e-5},
    };
    for (const Gold& g : gold) {
        const ImpactVector& a = row(g.name).allocated;
        INFO(g.name);
        CHECK(a.pe_mj == Approx(g.pe).epsilon(tol));
        CHECK(a.gwp_kgco2eq == Approx(g.gwp).epsilon(tol));
        CHECK(a.adp_kgsbeq == Approx(g.adp).epsilon(tol));
    }

    const ImpactVector& t = ref_embodied().total;
    CHECK(t.pe_mj == Approx(1.39e6).epsilon(tol));
    CHECK(t.gwp_kgco2eq == Approx(1.05e5).epsilon(tol));
    CHECK(t.adp_kgsbeq == Approx(7.95).epsilon(tol));
}

TEST_CASE("ADP bases: GPU is elements-only, the rest fold fossil in") {
    CHECK(row("gpu").unit.adp_basis == AdpBasis::ElementsOnly);
    for (const char* n : {"cpu", "ram", "ssd1", "ssd2", "psu", "motherboard", "case", "assembly"})
        CHECK(row(n).unit.adp_basis == AdpBasis::ElementsAndFossil);
    CHECK(ref_embodied().total.adp_basis == AdpBasis::Mixed);

    // A single-source config keeps its basis unmixed.
    AssessmentConfig gpu_only = reference_config();
    gpu_only.components = {gpu_only.components[0]};
    EmbodiedAssessment e = node_embodied(gpu_only, ComputeQuantity{1000.0});
    CHECK(e.total.adp_basis == AdpBasis::ElementsOnly);
}

TEST_CASE("power supplies dominate embodied element depletion") {
    double share = row("psu").share_adp;
    CHECK(share == Approx(36.0).margin(2.0));

    ExactSum pe_shares;
    for (const auto& r : ref_embodied().rows) pe_shares.add(r.share_pe);
    CHECK(pe_shares.value() == Approx(100.0).epsilon(1e-9));
}

TEST_CASE("embodied allocation is exactly linear in compute") {
    EmbodiedAssessment a = node_embodied(ref(), ComputeQuantity{433.25});
    EmbodiedAssessment b = node_embodied(ref(), ComputeQuantity{866.5});
    CHECK(b.total == a.total * 2.0);
    for (std::size_t i = 0; i < a.rows.size(); ++i)
        CHECK(b.rows[i].allocated == a.rows[i].allocated * 2.0);
}

TEST_CASE("embodied assessment guards its configuration") {
    AssessmentConfig empty = reference_config();
    empty.components.clear();
    CHECK_THROWS_AS(node_embodied(empty, ComputeQuantity{1.0}), ConfigError);

    AssessmentConfig orphan = reference_config();
    orphan.factors.erase(ComponentFamily::Psu);
    CHECK_THROWS_AS(node_embodied(orphan, ComputeQuantity{1.0}), ConfigError);
}
