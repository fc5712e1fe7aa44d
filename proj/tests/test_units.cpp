#include "ecotally/units.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <vector>

using namespace ecotally;

TEST_CASE("ComputeQuantity rejects unusable values") {
    CHECK(ComputeQuantity{0.0}.gpu_hours == 0.0);
    CHECK(ComputeQuantity{3256263.0}.gpu_hours == 3256263.0);
    CHECK_THROWS_AS(ComputeQuantity{-1.0}, std::invalid_argument);
    CHECK_THROWS_AS(ComputeQuantity{std::numeric_limits<double>::quiet_NaN()},
                    std::invalid_argument);
    CHECK_THROWS_AS(ComputeQuantity{std::numeric_limits<double>::infinity()},
                    std::invalid_argument);
}

TEST_CASE("GPU-year conversion constant") {
    CHECK(kGpuHoursPerYear == 8760.0);
    CHECK(to_gpu_years(ComputeQuantity{8760.0}) == 1.0);
}

TEST_CASE("ImpactVector accumulates only on a matching ADP basis") {
    ImpactVector a{1.0, 2.0, 3.0, 4.0, AdpBasis::ElementsOnly};
    ImpactVector b{10.0, 20.0, 30.0, 40.0, AdpBasis::ElementsOnly};
    a += b;
    CHECK(a.pe_mj == 11.0);
    CHECK(a.gwp_kgco2eq == 22.0);
    CHECK(a.adp_kgsbeq == 33.0);
    CHECK(a.water_l == 44.0);
    CHECK(a.adp_basis == AdpBasis::ElementsOnly);

    ImpactVector c{1.0, 1.0, 1.0, 1.0, AdpBasis::ElementsAndFossil};
    CHECK_THROWS_AS(a += c, BasisMismatchError);
}

TEST_CASE("add_widened records the mixed basis instead of throwing") {
    ImpactVector a{1.0, 2.0, 3.0, 0.0, AdpBasis::ElementsOnly};
    ImpactVector b{1.0, 2.0, 3.0, 0.0, AdpBasis::ElementsAndFossil};
    ImpactVector m = add_widened(a, b);
    CHECK(m.adp_basis == AdpBasis::Mixed);
    CHECK(m.pe_mj == 2.0);
    CHECK(m.adp_kgsbeq == 6.0);

    // Same basis stays narrow.
    CHECK(add_widened(a, a).adp_basis == AdpBasis::ElementsOnly);
    // Mixed is absorbing.
    CHECK(add_widened(m, a).adp_basis == AdpBasis::Mixed);
}

TEST_CASE("ImpactVector scaling") {
    ImpactVector a{1.5, 2.5, 3.5, 4.5, AdpBasis::ElementsAndFossil};
    a *= 2.0;
    CHECK(a.pe_mj == 3.0);
    CHECK(a.gwp_kgco2eq == 5.0);
    CHECK(a.adp_kgsbeq == 7.0);
    CHECK(a.water_l == 9.0);
    CHECK(a.adp_basis == AdpBasis::ElementsAndFossil);
}

TEST_CASE("ExactSum is immune to cancellation that breaks naive summation") {
    ExactSum s;
    s.add(1e16);
    s.add(1.0);
    s.add(-1e16);
    CHECK(s.value() == 1.0);  // naive left-to-right gives 0.0
}

TEST_CASE("ExactSum is permutation invariant to the bit") {
    std::mt19937 rng(20240816);
    std::uniform_real_distribution<double> mag(-12.0, 12.0);
    std::vector<double> xs(400);
    for (double& x : xs) x = std::pow(10.0, mag(rng)) * (rng() % 2 ? 1 : -1);

    ExactSum ref;
    for (double x : xs) ref.add(x);

    for (int trial = 0; trial < 20; ++trial) {
        std::shuffle(xs.begin(), xs.end(), rng);
        ExactSum s;
        for (double x : xs) s.add(x);
        REQUIRE(s.value() == ref.value());
    }
}

TEST_CASE("ScopedImpact rolls scopes up in order") {
    ScopedImpact s;
    s.computation = {10.0, 1.0, 0.1, 8.0, AdpBasis::ElementsOnly};
    s.datacenter = {20.0, 2.0, 0.2, 4.0, AdpBasis::ElementsOnly};
    s.embodied = {30.0, 3.0, 0.3, 0.0, AdpBasis::Mixed};
    s.water_cooling_l = 5.0;
    s.water_electricity_l = 7.0;

    ImpactVector op = s.operational();
    CHECK(op.pe_mj == 30.0);
    CHECK(op.adp_basis == AdpBasis::ElementsOnly);
    CHECK(op.water_l == 12.0);

    ImpactVector tot = s.total();
    CHECK(tot.pe_mj == 60.0);
    CHECK(tot.gwp_kgco2eq == 6.0);
    CHECK(tot.adp_basis == AdpBasis::Mixed);
}
