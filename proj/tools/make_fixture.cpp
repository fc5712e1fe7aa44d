// Generates the synthetic run log shipped as fixtures/runs.jsonl.
//
// The log is built from integer tick budgets (1 tick = 1/16 GPU-hour = one
// 225-second scheduler slot on one GPU) so that every published aggregate
// lands exactly. Groups of runs share a (module, phase, research, bucket)
// cell; each group's tick budget is carved into per-run durations, GPU
// widths come from a fixed ladder, and starts are packed into a 1,016-GPU
// window under a hard cluster-capacity constraint.
//
// Everything is deterministic: no RNG, only hashed jitter.

#include "ecotally/domain.hpp"
#include "ecotally/log_io.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

using ecotally::ModuleKind;
using ecotally::PhaseFractions;
using ecotally::ResearchPhaseKind;
using ecotally::RunLog;
using ecotally::RunRecord;
using ecotally::TrainingPhaseKind;

constexpr std::int64_t kSlotSeconds = 225;       // 1 GPU-slot = 1 tick
constexpr std::int64_t kTicksPerHour = 16;
constexpr std::int64_t kWindowStart = 1698796800;  // 2023-11-01T00:00:00Z
constexpr std::int64_t kWindowSlots = 110592;      // ~289 days
constexpr int kClusterGpus = 1016;
constexpr std::int64_t kMaxRunSlots = 16128;  // 42 days of wall time

// Half-open intensity bucket bounds in ticks: <1h, 1d, 1w, 1mo, 1y, 3y, 5y, 10y.
constexpr std::int64_t kBucketLo[8] = {1, 16, 384, 2688, 11680, 140160, 420480, 700800};
constexpr std::int64_t kBucketHi[8] = {16, 384, 2688, 11680, 140160, 420480, 700800, 1401600};

// Allowed GPU widths, descending. Partition sizes are biased toward
// divisibility by these so runs get realistic (width, wall-time) shapes.
constexpr int kLadder[] = {1016, 512, 384, 256, 192, 128, 96, 64, 48,
                           32,   24,  16,  12,  8,   6,   4,  3,  2, 1};

constexpr auto MM = ModuleKind::MainModel;
constexpr auto TOK = ModuleKind::Tokenizer;
constexpr auto DG = ModuleKind::DataGenerator;
constexpr auto LLM = ModuleKind::LlmBackbone;
constexpr auto EXP = TrainingPhaseKind::Experimentation;
constexpr auto PRE = TrainingPhaseKind::PreTraining;
constexpr auto POST = TrainingPhaseKind::PostTraining;
constexpr auto FT = TrainingPhaseKind::FineTuning;
constexpr auto TRAIN = TrainingPhaseKind::Train;
constexpr auto DBG = ResearchPhaseKind::Debugging;
constexpr auto FAIL = ResearchPhaseKind::Failed;
constexpr auto TUN = ResearchPhaseKind::DesignAndTuning;
constexpr auto ABL = ResearchPhaseKind::Ablation;
constexpr auto FIN = ResearchPhaseKind::FinalTraining;

// Leading runs of a group with a fixed size. mult > 0 marks a phase-fraction
// carrier with that contribution multiplier (ticks = mult * 16384); mult == 0
// pins the /1024 fraction numerators (v, e, s) directly.
struct FixedBlock {
    int n = 0;
    std::int64_t each = 0;
    int mult = 0;
    int v = 0, e = 0, s = 0;
};

// Failed-pool groups split one tick budget across several (module, phase)
// labels; counts are floor(num/den * count) with the remainder going to the
// leading labels.
struct Label {
    ModuleKind module;
    TrainingPhaseKind phase;
    int num = 0, den = 1;
};

struct Group {
    ModuleKind module;
    TrainingPhaseKind phase;
    ResearchPhaseKind research;
    int bucket;
    int count;
    std::int64_t ticks;
    std::vector<FixedBlock> fixed;
    std::vector<Label> labels;
};

std::vector<Group> plan() {
    return {
        // MainModel / PreTraining
        {MM, PRE, TUN, 4, 10, 992496, {}, {}},
        {MM, PRE, TUN, 5, 12, 3059648, {{11, 256000, 0, 0, 48, 16}}, {}},
        {MM, PRE, ABL, 5, 12, 2560000, {}, {}},
        {MM, PRE, TUN, 6, 7, 3582608, {}, {}},
        {MM, PRE, TUN, 7, 8, 6987328, {}, {}},
        {MM, PRE, FIN, 7, 1, 712960, {}, {}},
        // MainModel / PostTraining
        {MM, POST, TUN, 3, 5, 43424, {}, {}},
        {MM, POST, TUN, 4, 24, 2708480, {{16, 131072, 8}}, {}},
        {MM, POST, FIN, 4, 1, 42144, {}, {}},
        {MM, POST, TUN, 5, 5, 1414400, {}, {}},
        {MM, POST, TUN, 6, 1, 475136, {}, {}},
        // MainModel / FineTuning
        {MM, FT, TUN, 1, 130, 33216, {}, {}},
        {MM, FT, TUN, 2, 160, 264016, {}, {}},
        {MM, FT, TUN, 3, 20, 141584, {}, {}},
        {MM, FT, FIN, 3, 1, 9120, {}, {}},
        // DataGenerator / FineTuning
        {DG, FT, TUN, 1, 6, 1104, {}, {}},
        {DG, FT, TUN, 2, 5, 4800, {}, {}},
        {DG, FT, FIN, 2, 1, 528, {}, {}},
        // Tokenizer / Train
        {TOK, TRAIN, DBG, 0, 60, 480, {}, {}},
        {TOK, TRAIN, DBG, 1, 70, 15200, {}, {}},
        {TOK, TRAIN, DBG, 2, 60, 96000, {}, {}},
        {TOK, TRAIN, ABL, 3, 24, 128000, {}, {}},
        {TOK, TRAIN, ABL, 4, 5, 89728, {}, {}},
        {TOK, TRAIN, TUN, 3, 80, 544000, {}, {}},
        {TOK, TRAIN, TUN, 4, 55, 2010368, {{1, 16384, 0, 101, 203, 102}, {20, 32768, 2}}, {}},
        {TOK, TRAIN, FIN, 4, 1, 28176, {}, {}},
        // MainModel / Experimentation
        {MM, EXP, DBG, 0, 150, 1200, {}, {}},
        {MM, EXP, DBG, 1, 180, 38400, {}, {}},
        {MM, EXP, DBG, 2, 180, 320000, {}, {}},
        {MM, EXP, DBG, 3, 60, 355056, {}, {}},
        {MM, EXP, ABL, 3, 34, 192000, {}, {}},
        {MM, EXP, ABL, 4, 25, 768000, {}, {}},
        {MM, EXP, TUN, 4, 55, 3333168, {{40, 65536, 4}}, {}},
        {MM, EXP, TUN, 5, 17, 3396368, {{8, 262144, 16}}, {}},
        // DataGenerator / Experimentation
        {DG, EXP, DBG, 0, 120, 960, {}, {}},
        {DG, EXP, DBG, 1, 120, 27200, {}, {}},
        {DG, EXP, DBG, 2, 110, 216000, {}, {}},
        {DG, EXP, DBG, 3, 40, 192000, {}, {}},
        {DG, EXP, ABL, 3, 24, 128000, {}, {}},
        {DG, EXP, ABL, 4, 15, 512000, {}, {}},
        {DG, EXP, TUN, 3, 30, 320000, {}, {}},
        {DG, EXP, TUN, 4, 70, 3290816, {{30, 65536, 4}}, {}},
        // DataGenerator / PostTraining
        {DG, POST, TUN, 2, 30, 36080, {}, {}},
        {DG, POST, TUN, 3, 25, 160000, {}, {}},
        {DG, POST, TUN, 4, 5, 160032, {}, {}},
        {DG, POST, FIN, 4, 1, 42048, {}, {}},
        // Failed pool: pinned pre-training casualties plus mixed-label slack.
        {MM, PRE, FAIL, 7, 2, 1798688, {}, {}},
        {MM, PRE, FAIL, 5, 3, 528000, {}, {}},
        {MM, EXP, FAIL, 0, 213, 1708, {}, {{MM, EXP, 1, 2}, {DG, EXP, 3, 10}, {TOK, TRAIN, 1, 5}}},
        {MM, EXP, FAIL, 1, 442, 27312, {},
         {{MM, EXP, 2, 5}, {DG, EXP, 3, 10}, {MM, POST, 1, 10}, {TOK, TRAIN, 1, 5}}},
        {MM, EXP, FAIL, 2, 482, 276672, {},
         {{MM, EXP, 2, 5}, {DG, EXP, 3, 10}, {MM, PRE, 1, 10}, {TOK, TRAIN, 1, 5}}},
        {MM, EXP, FAIL, 3, 208, 1221232, {},
         {{MM, EXP, 1, 2}, {DG, EXP, 3, 10}, {MM, POST, 1, 5}}},
        {MM, EXP, FAIL, 4, 129, 1772324, {},
         {{MM, EXP, 1, 2}, {DG, EXP, 1, 4}, {MM, PRE, 1, 4}}},
    };
}

// LLM backbone runs are few enough to list directly (ticks, research phase).
struct LlmRun {
    std::int64_t ticks;
    ResearchPhaseKind research;
};

std::vector<LlmRun> llm_plan() {
    return {{2048000, TUN}, {1920000, TUN}, {1600000, TUN},
            {256000, TUN},  {127984, TUN},  {1088000, FIN}};
}

// Run-phase tick shares carried by non-default phase fractions, in GPU-hours
// over the non-LLM log: validation / evaluation / sample generation.
constexpr std::int64_t kValidationGpuHours = 78309;
constexpr std::int64_t kEvaluationGpuHours = 160871;
constexpr std::int64_t kSampleGenGpuHours = 41110;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

[[noreturn]] void die(const std::string& msg) {
    std::cerr << "make_fixture: " << msg << "\n";
    std::exit(1);
}

void check(bool ok, const std::string& msg) {
    if (!ok) die("internal check failed: " + msg);
}

struct Width {
    int gpus = 0;
    std::int64_t slots = 0;
};

// Widest ladder entry dividing t whose wall time stays within the run cap
// and lasts at least 8 slots (30 minutes) unless the run is shorter than
// that outright. gpus == 0 means no ladder width fits under the cap.
Width pick_width(std::int64_t t) {
    for (int g : kLadder) {
        if (t % g) continue;
        std::int64_t s = t / g;
        if (s < 8 && t >= 8) continue;
        if (s > kMaxRunSlots) break;
        return {g, s};
    }
    return {0, 0};
}

int width_score(std::int64_t t) { return pick_width(t).gpus; }

// Splits a group budget into per-run tick counts within [lo, hi). The base
// near-equal split is nudged toward ladder-friendly sizes: all runs but the
// first are rounded to a power-of-two grain (the first absorbs the residue),
// then symmetric pairs trade grain-sized deltas to maximize the worse of the
// two widths. Budget and bounds are preserved exactly.
std::vector<std::int64_t> partition_group(std::int64_t total, int n, std::int64_t lo,
                                          std::int64_t hi) {
    check(n >= 1, "partition: empty group");
    check(total >= n * lo && total <= n * (hi - 1), "partition: budget outside bucket");
    std::vector<std::int64_t> t(static_cast<std::size_t>(n), total / n);
    for (int i = 0; i < total % n; ++i) ++t[static_cast<std::size_t>(i)];

    double mean = static_cast<double>(total) / n;
    std::int64_t grain = 1;
    if (mean >= 512.0 && n >= 2) {
        std::int64_t a = 16;
        while (a * 64 <= static_cast<std::int64_t>(mean) && a < 1024) a *= 2;
        std::vector<std::int64_t> shaved = t;
        std::int64_t pool = 0;
        for (int i = 1; i < n; ++i) {
            pool += shaved[static_cast<std::size_t>(i)] % a;
            shaved[static_cast<std::size_t>(i)] -= shaved[static_cast<std::size_t>(i)] % a;
        }
        for (int i = 1; pool >= a; i = (i % (n - 1)) + 1) {
            shaved[static_cast<std::size_t>(i)] += a;
            pool -= a;
        }
        shaved[0] += pool;
        bool ok = true;
        for (std::int64_t v : shaved) ok = ok && v >= lo && v < hi;
        if (ok) {
            t = shaved;
            grain = a;
        }
    }

    auto improve = [&](std::size_t i, std::size_t j) {
        std::int64_t bestDelta = 0;
        int best = std::min(width_score(t[i]), width_score(t[j]));
        auto consider = [&](std::int64_t di, std::int64_t dj, std::int64_t delta) {
            std::int64_t x = t[i] + di, y = t[j] + dj;
            if (x < lo || x >= hi || y < lo || y >= hi || x < 1 || y < 1) return;
            int sc = std::min(width_score(x), width_score(y));
            if (sc > best) {
                best = sc;
                bestDelta = delta;
            }
        };
        for (std::int64_t k = 1; k <= 64; ++k) {
            std::int64_t d = k * grain;
            if (d > t[i] / 4 && d > t[j] / 4) break;
            consider(-d, d, -d);
            consider(d, -d, d);
        }
        t[i] += bestDelta;
        t[j] -= bestDelta;
    };

    for (std::size_t i = 0, j = static_cast<std::size_t>(n) - 1; i < j; ++i, --j) improve(i, j);
    if (n >= 3 && n % 2 == 1) improve(0, static_cast<std::size_t>(n) / 2);

    std::int64_t sum = 0;
    for (std::int64_t v : t) {
        check(v >= lo && v < hi, "partition: run outside bucket");
        sum += v;
    }
    check(sum == total, "partition: budget drift");
    return t;
}

// Lazy range-add / range-max segment tree over schedule slots; tracks GPUs
// in use so placement can enforce cluster capacity.
class SegTree {
  public:
    explicit SegTree(std::int64_t n) : n_(1) {
        while (n_ < n) n_ *= 2;
        mx_.assign(static_cast<std::size_t>(2 * n_), 0);
        lz_.assign(static_cast<std::size_t>(2 * n_), 0);
    }

    void add(std::int64_t l, std::int64_t r, int v) { add(1, 0, n_, l, r, v); }

    // Rightmost slot in [l, r) with load > limit, or -1 if none.
    std::int64_t rightmost_above(std::int64_t l, std::int64_t r, int limit) {
        return rightmost(1, 0, n_, l, r, limit);
    }

    int max_load() { return mx_[1]; }

  private:
    void push(std::size_t k) {
        for (std::size_t c : {2 * k, 2 * k + 1}) {
            mx_[c] += lz_[k];
            lz_[c] += lz_[k];
        }
        lz_[k] = 0;
    }

    void add(std::size_t k, std::int64_t nl, std::int64_t nr, std::int64_t l, std::int64_t r,
             int v) {
        if (r <= nl || nr <= l) return;
        if (l <= nl && nr <= r) {
            mx_[k] += v;
            lz_[k] += v;
            return;
        }
        push(k);
        std::int64_t mid = (nl + nr) / 2;
        add(2 * k, nl, mid, l, r, v);
        add(2 * k + 1, mid, nr, l, r, v);
        mx_[k] = std::max(mx_[2 * k], mx_[2 * k + 1]);
    }

    std::int64_t rightmost(std::size_t k, std::int64_t nl, std::int64_t nr, std::int64_t l,
                           std::int64_t r, int limit) {
        if (r <= nl || nr <= l || mx_[k] <= limit) return -1;
        if (nr - nl == 1) return nl;
        push(k);
        std::int64_t mid = (nl + nr) / 2;
        std::int64_t hit = rightmost(2 * k + 1, mid, nr, l, r, limit);
        if (hit >= 0) return hit;
        return rightmost(2 * k, nl, mid, l, r, limit);
    }

    std::int64_t n_;
    std::vector<int> mx_, lz_;
};

struct PendingRun {
    ModuleKind module;
    TrainingPhaseKind phase;
    ResearchPhaseKind research;
    std::int64_t ticks = 0;
    int carrier_mult = 0;  // > 0: receives greedily assigned phase fractions
    int v = 0, e = 0, s = 0;
    int gpus = 0;
    std::int64_t slots = 0;
    std::int64_t start_slot = -1;
    std::size_t seq = 0;
};

// Project eras steer when each kind of work happens, as fractions of the
// window. Debugging dominates early, final runs land late, the LLM backbone
// is trained up front because everything else depends on it.
struct Band {
    double lo, hi;
};

Band era_of(const PendingRun& r) {
    if (r.module == LLM) return r.research == FIN ? Band{0.30, 0.48} : Band{0.02, 0.40};
    switch (r.research) {
        case DBG: return {0.00, 0.52};
        case ABL: return {0.14, 0.72};
        case TUN: return {0.06, 0.90};
        case FIN: return {0.80, 0.97};
        case FAIL: return {0.02, 0.88};
    }
    return {0.0, 1.0};
}

void assign_carrier_fractions(std::vector<PendingRun>& runs) {
    // Fixed-fraction runs already account for part of the targets.
    std::int64_t v = kValidationGpuHours, e = kEvaluationGpuHours, s = kSampleGenGpuHours;
    std::vector<PendingRun*> carriers;
    for (PendingRun& r : runs) {
        if (r.carrier_mult > 0) {
            carriers.push_back(&r);
        } else if (r.v || r.e || r.s) {
            std::int64_t gpuh = r.ticks / kTicksPerHour;
            v -= r.v * gpuh / 1024;
            e -= r.e * gpuh / 1024;
            s -= r.s * gpuh / 1024;
        }
    }
    std::stable_sort(carriers.begin(), carriers.end(),
                     [](const PendingRun* a, const PendingRun* b) {
                         return a->carrier_mult > b->carrier_mult;
                     });
    // Each carrier takes up to 640/1024 of its compute as non-training work,
    // greedily in (validation, evaluation, sample generation) order; one
    // GPU-hour of share per numerator unit times the carrier multiplier.
    for (PendingRun* r : carriers) {
        std::int64_t m = r->carrier_mult;
        std::int64_t budget = 640;
        r->v = static_cast<int>(std::min(budget, v / m));
        budget -= r->v;
        r->e = static_cast<int>(std::min(budget, e / m));
        budget -= r->e;
        r->s = static_cast<int>(std::min(budget, s / m));
        v -= r->v * m;
        e -= r->e * m;
        s -= r->s * m;
    }
    check(v == 0 && e == 0 && s == 0, "carrier fractions do not close the run-phase targets");
}

PhaseFractions fractions_of(const PendingRun& r) {
    PhaseFractions f;
    if (r.v == 0 && r.e == 0 && r.s == 0) return f;
    f[ecotally::RunPhaseKind::Optimization] = (1024.0 - r.v - r.e - r.s) / 1024.0;
    f[ecotally::RunPhaseKind::Validation] = r.v / 1024.0;
    f[ecotally::RunPhaseKind::Evaluation] = r.e / 1024.0;
    f[ecotally::RunPhaseKind::SampleGeneration] = r.s / 1024.0;
    return f;
}

void schedule(std::vector<PendingRun>& runs) {
    SegTree tree(kWindowSlots);
    std::vector<PendingRun*> order;
    order.reserve(runs.size());
    for (PendingRun& r : runs) order.push_back(&r);
    std::stable_sort(order.begin(), order.end(), [](const PendingRun* a, const PendingRun* b) {
        return a->slots > b->slots;
    });
    for (PendingRun* r : order) {
        Band band = era_of(*r);
        auto lo = static_cast<std::int64_t>(band.lo * kWindowSlots);
        auto hi = static_cast<std::int64_t>(band.hi * kWindowSlots);
        std::int64_t room = std::max<std::int64_t>(1, hi - lo - r->slots);
        std::int64_t hint = lo + static_cast<std::int64_t>(
                                     splitmix64(0x5EED0000ull + r->seq) % static_cast<std::uint64_t>(room));
        auto scan = [&](std::int64_t from) -> std::int64_t {
            std::int64_t s = from;
            while (s + r->slots <= kWindowSlots) {
                std::int64_t blocker = tree.rightmost_above(s, s + r->slots, kClusterGpus - r->gpus);
                if (blocker < 0) return s;
                s = blocker + 1;
            }
            return -1;
        };
        std::int64_t s = scan(hint);
        if (s < 0) s = scan(0);
        check(s >= 0, "cluster window cannot hold the schedule");
        tree.add(s, s + r->slots, r->gpus);
        r->start_slot = s;
    }
    check(tree.max_load() <= kClusterGpus, "cluster capacity exceeded");
}

void verify_aggregates(const std::vector<PendingRun>& runs) {
    auto cell_ticks = [&](ModuleKind m, TrainingPhaseKind p) {
        std::int64_t t = 0;
        for (const PendingRun& r : runs)
            if (r.research != FAIL && r.module == m && r.phase == p) t += r.ticks;
        return t;
    };
    check(cell_ticks(TOK, TRAIN) == 2911952, "tokenizer cell");
    check(cell_ticks(MM, EXP) == 8404192, "main-model experimentation cell");
    check(cell_ticks(MM, PRE) == 17895040, "main-model pre-training cell");
    check(cell_ticks(MM, POST) == 4683584, "main-model post-training cell");
    check(cell_ticks(MM, FT) == 447936, "main-model fine-tuning cell");
    check(cell_ticks(DG, EXP) == 4686976, "data-generator experimentation cell");
    check(cell_ticks(DG, POST) == 398160, "data-generator post-training cell");
    check(cell_ticks(DG, FT) == 6432, "data-generator fine-tuning cell");
    check(cell_ticks(LLM, TRAIN) == 7039984, "llm cell");

    std::int64_t failed = 0, total = 0;
    std::array<std::int64_t, 5> research{};
    for (const PendingRun& r : runs) {
        total += r.ticks;
        if (r.research == FAIL) failed += r.ticks;
        research[static_cast<std::size_t>(r.research)] += r.ticks;
    }
    check(failed == 5625936, "failed pool");
    check(total == 52100192, "grand total");
    check(research[static_cast<std::size_t>(DBG)] == 78906 * kTicksPerHour, "debugging total");
    check(research[static_cast<std::size_t>(ABL)] == 273608 * kTicksPerHour, "ablation total");
    check(research[static_cast<std::size_t>(TUN)] == 2431941 * kTicksPerHour, "tuning total");
    check(research[static_cast<std::size_t>(FIN)] == 120186 * kTicksPerHour, "final total");

    std::array<std::int64_t, 8> bucketCount{};
    for (const PendingRun& r : runs) {
        if (r.module == LLM) continue;
        int b = -1;
        for (int i = 0; i < 8; ++i)
            if (r.ticks >= kBucketLo[i] && r.ticks < kBucketHi[i]) b = i;
        check(b >= 0, "run outside every intensity bucket");
        ++bucketCount[static_cast<std::size_t>(b)];
    }
    constexpr std::array<std::int64_t, 8> want{543, 948, 1028, 551, 396, 49, 8, 11};
    check(bucketCount == want, "intensity bucket counts");
}

}  // namespace

int main(int argc, char** argv) {
    std::string outPath = argc > 1 ? argv[1] : "fixtures/runs.jsonl";

    std::vector<PendingRun> runs;
    std::size_t seq = 0;
    for (const Group& g : plan()) {
        std::vector<std::int64_t> sizes;
        std::vector<const FixedBlock*> blockOf;
        int fixedCount = 0;
        std::int64_t fixedTicks = 0;
        for (const FixedBlock& f : g.fixed) {
            fixedCount += f.n;
            fixedTicks += static_cast<std::int64_t>(f.n) * f.each;
            for (int i = 0; i < f.n; ++i) {
                sizes.push_back(f.each);
                blockOf.push_back(&f);
            }
        }
        int rest = g.count - fixedCount;
        if (rest > 0) {
            auto parts = partition_group(g.ticks - fixedTicks, rest, kBucketLo[g.bucket],
                                         kBucketHi[g.bucket]);
            sizes.insert(sizes.end(), parts.begin(), parts.end());
        } else {
            check(g.ticks == fixedTicks, "fixed blocks do not cover the group budget");
        }

        // Failed-pool labels: floor shares, remainder to the leading labels.
        std::vector<std::pair<ModuleKind, TrainingPhaseKind>> labelOf(sizes.size(),
                                                                      {g.module, g.phase});
        if (!g.labels.empty()) {
            std::vector<int> n(g.labels.size());
            int used = 0;
            for (std::size_t i = 0; i < g.labels.size(); ++i) {
                n[i] = static_cast<int>(static_cast<std::int64_t>(g.labels[i].num) * g.count /
                                        g.labels[i].den);
                used += n[i];
            }
            check(g.count - used >= 0 && g.count - used <= static_cast<int>(g.labels.size()),
                  "failed label shares drift from the group count");
            for (int i = 0; i < g.count - used; ++i) ++n[static_cast<std::size_t>(i)];
            std::size_t k = 0;
            for (std::size_t i = 0; i < g.labels.size(); ++i)
                for (int j = 0; j < n[i]; ++j) labelOf.at(k++) = {g.labels[i].module,
                                                                  g.labels[i].phase};
            check(k == sizes.size(), "failed labels do not cover the group");
        }

        for (std::size_t i = 0; i < sizes.size(); ++i) {
            PendingRun r;
            r.module = labelOf[i].first;
            r.phase = labelOf[i].second;
            r.research = g.research;
            r.ticks = sizes[i];
            if (i < blockOf.size()) {
                const FixedBlock& f = *blockOf[i];
                if (f.mult > 0) {
                    r.carrier_mult = f.mult;
                } else {
                    r.v = f.v;
                    r.e = f.e;
                    r.s = f.s;
                }
            }
            r.seq = seq++;
            runs.push_back(r);
        }
    }
    for (const LlmRun& l : llm_plan()) {
        PendingRun r;
        r.module = LLM;
        r.phase = TRAIN;
        r.research = l.research;
        r.ticks = l.ticks;
        r.seq = seq++;
        runs.push_back(r);
    }

    assign_carrier_fractions(runs);
    verify_aggregates(runs);

    for (PendingRun& r : runs) {
        Width w = pick_width(r.ticks);
        check(w.gpus > 0, "no ladder width fits run of " + std::to_string(r.ticks) + " ticks");
        r.gpus = w.gpus;
        r.slots = w.slots;
    }
    schedule(runs);

    std::stable_sort(runs.begin(), runs.end(), [](const PendingRun& a, const PendingRun& b) {
        return a.start_slot < b.start_slot;
    });

    RunLog log;
    char id[32];
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const PendingRun& r = runs[i];
        std::snprintf(id, sizeof id, "run-%04u", static_cast<unsigned>(i + 1));
        std::int64_t start = kWindowStart + r.start_slot * kSlotSeconds;
        std::int64_t end = start + r.slots * kSlotSeconds;
        log.runs.push_back(
            RunRecord::create(id, r.module, r.phase, r.research, start, end, r.gpus,
                              fractions_of(r)));
    }

    auto issues = ecotally::validate_log(log);
    if (!issues.empty())
        die("generated log fails validation: " + issues.front().run_id + ": " +
            issues.front().reason);

    std::ofstream out(outPath, std::ios::binary);
    if (!out) die("cannot open " + outPath);
    ecotally::serialize_log(log, out);
    out.close();

    std::int64_t totalTicks = 0;
    for (const PendingRun& r : runs) totalTicks += r.ticks;
    std::cout << "wrote " << log.runs.size() << " runs, " << totalTicks / 16.0
              << " GPU-hours -> " << outPath << "\n";
    return 0;
}
