// SPDX-License-Identifier: Apache-2.0
//
// Core quantities: GPU-hour compute amounts, multi-indicator environmental
// impact vectors, and an exact (order-insensitive) floating-point accumulator.
#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ecotally {

inline constexpr double kGpuHoursPerYear = 8760.0;

// Non-negative amount of compute, in GPU-hours (1 GPU busy for 1 hour).
struct ComputeQuantity {
    double gpu_hours = 0.0;

    ComputeQuantity() = default;
    explicit ComputeQuantity(double hours) : gpu_hours(hours) {
        if (!(hours >= 0.0) || !std::isfinite(hours))
            throw std::invalid_argument("ComputeQuantity: GPU-hours must be finite and >= 0");
    }

    ComputeQuantity& operator+=(ComputeQuantity other) {
        gpu_hours += other.gpu_hours;
        return *this;
    }
    friend ComputeQuantity operator+(ComputeQuantity a, ComputeQuantity b) { return a += b; }
    friend auto operator<=>(ComputeQuantity, ComputeQuantity) = default;
};

inline double to_gpu_years(ComputeQuantity c) { return c.gpu_hours / kGpuHoursPerYear; }

// Which abiotic-depletion flows an ADP figure covers. Use-phase ADP counts
// mineral/metal elements only; Boavizta embodied factors fold fossil ADP in.
// Sums across the two are explicitly "mixed" and never produced silently.
enum class AdpBasis : unsigned char { ElementsOnly, ElementsAndFossil, Mixed };

struct BasisMismatchError : std::logic_error {
    using std::logic_error::logic_error;
};

// One value per assessed indicator. Water is 0 where the source method does
// not assess it (embodied); callers track assessability separately.
struct ImpactVector {
    double pe_mj = 0.0;         // primary energy
    double gwp_kgco2eq = 0.0;   // global warming potential
    double adp_kgsbeq = 0.0;    // abiotic depletion
    double water_l = 0.0;       // water consumption
    AdpBasis adp_basis = AdpBasis::ElementsOnly;

    bool adp_includes_fossil() const { return adp_basis != AdpBasis::ElementsOnly; }

    ImpactVector& operator+=(const ImpactVector& other) {
        if (adp_basis != other.adp_basis)
            throw BasisMismatchError("ImpactVector: adding impacts with different ADP bases; "
                                     "use add_widened for an explicit mixed-basis sum");
        pe_mj += other.pe_mj;
        gwp_kgco2eq += other.gwp_kgco2eq;
        adp_kgsbeq += other.adp_kgsbeq;
        water_l += other.water_l;
        return *this;
    }
    friend ImpactVector operator+(ImpactVector a, const ImpactVector& b) { return a += b; }

    ImpactVector& operator*=(double s) {
        pe_mj *= s;
        gwp_kgco2eq *= s;
        adp_kgsbeq *= s;
        water_l *= s;
        return *this;
    }
    friend ImpactVector operator*(ImpactVector v, double s) { return v *= s; }
    friend ImpactVector operator*(double s, ImpactVector v) { return v *= s; }
    friend bool operator==(const ImpactVector&, const ImpactVector&) = default;
};

// Sum allowing different ADP bases; the result is marked Mixed when they differ.
inline ImpactVector add_widened(ImpactVector a, const ImpactVector& b) {
    AdpBasis basis = (a.adp_basis == b.adp_basis) ? a.adp_basis : AdpBasis::Mixed;
    a.adp_basis = b.adp_basis;  // allow +=
    a += b;
    a.adp_basis = basis;
    return a;
}

// Impacts split by assessment scope. Water splits by mechanism instead
// (cooling evaporation vs. upstream electricity production); the two views
// cover the same operational total.
struct ScopedImpact {
    ImpactVector computation;
    ImpactVector datacenter;
    ImpactVector embodied;
    double water_cooling_l = 0.0;
    double water_electricity_l = 0.0;
    bool embodied_water_assessed = false;  // embodied method reports "not assessed"

    ImpactVector operational() const { return computation + datacenter; }
    ImpactVector total() const { return add_widened(operational(), embodied); }

    friend bool operator==(const ScopedImpact&, const ScopedImpact&) = default;
};

// Exact streaming sum of doubles (Shewchuk partials, fsum-style rounding).
// The result is the correctly rounded real sum, so it is independent of
// insertion order; analytics reductions rely on that for determinism.
class ExactSum {
  public:
    void add(double x) {
        std::size_t used = 0;
        for (std::size_t i = 0; i < partials_.size(); ++i) {
            double y = partials_[i];
            if (std::fabs(x) < std::fabs(y)) std::swap(x, y);
            double hi = x + y;
            double lo = y - (hi - x);
            if (lo != 0.0) partials_[used++] = lo;
            x = hi;
        }
        partials_.resize(used);
        partials_.push_back(x);
    }

    double value() const {
        if (partials_.empty()) return 0.0;
        std::size_t i = partials_.size();
        double hi = partials_[--i];
        double lo = 0.0;
        while (i > 0) {
            double x = hi;
            double y = partials_[--i];
            hi = x + y;
            double yr = hi - x;
            lo = y - yr;
            if (lo != 0.0) break;
        }
        // round-half-even correction against the next lower partial
        if (i > 0 && ((lo < 0.0 && partials_[i - 1] < 0.0) ||
                      (lo > 0.0 && partials_[i - 1] > 0.0))) {
            double y = lo * 2.0;
            double x = hi + y;
            if (y == x - hi) hi = x;
        }
        return hi;
    }

    void reset() { partials_.clear(); }

  private:
    std::vector<double> partials_;
};

}  // namespace ecotally
