// SPDX-License-Identifier: Apache-2.0
//
// Run-log domain model: module/phase enumerations with their validity matrix,
// per-run records, and compute derivation.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ecotally/units.hpp"

namespace ecotally {

enum class ModuleKind : unsigned char { Tokenizer, LlmBackbone, MainModel, DataGenerator };
enum class TrainingPhaseKind : unsigned char {
    Experimentation,
    PreTraining,
    PostTraining,
    FineTuning,
    Train,  // single-phase modules (tokenizer, LLM backbone)
};
enum class ResearchPhaseKind : unsigned char {
    Debugging,
    Failed,
    DesignAndTuning,
    Ablation,
    FinalTraining,
};
enum class RunPhaseKind : unsigned char { Optimization, Validation, Evaluation, SampleGeneration };

inline constexpr std::size_t kModuleCount = 4;
inline constexpr std::size_t kTrainingPhaseCount = 5;
inline constexpr std::size_t kResearchPhaseCount = 5;
inline constexpr std::size_t kRunPhaseCount = 4;

inline constexpr std::array<ModuleKind, kModuleCount> kAllModules{
    ModuleKind::Tokenizer, ModuleKind::LlmBackbone, ModuleKind::MainModel,
    ModuleKind::DataGenerator};
inline constexpr std::array<TrainingPhaseKind, kTrainingPhaseCount> kAllTrainingPhases{
    TrainingPhaseKind::Experimentation, TrainingPhaseKind::PreTraining,
    TrainingPhaseKind::PostTraining, TrainingPhaseKind::FineTuning, TrainingPhaseKind::Train};
inline constexpr std::array<ResearchPhaseKind, kResearchPhaseCount> kAllResearchPhases{
    ResearchPhaseKind::Debugging, ResearchPhaseKind::Failed, ResearchPhaseKind::DesignAndTuning,
    ResearchPhaseKind::Ablation, ResearchPhaseKind::FinalTraining};
inline constexpr std::array<RunPhaseKind, kRunPhaseCount> kAllRunPhases{
    RunPhaseKind::Optimization, RunPhaseKind::Validation, RunPhaseKind::Evaluation,
    RunPhaseKind::SampleGeneration};

// --- wire names (log file vocabulary) ---

inline std::string_view to_string(ModuleKind m) {
    switch (m) {
        case ModuleKind::Tokenizer: return "tokenizer";
        case ModuleKind::LlmBackbone: return "llm_backbone";
        case ModuleKind::MainModel: return "main_model";
        case ModuleKind::DataGenerator: return "data_generator";
    }
    throw std::logic_error("bad ModuleKind");
}

inline std::string_view to_string(TrainingPhaseKind p) {
    switch (p) {
        case TrainingPhaseKind::Experimentation: return "exp";
        case TrainingPhaseKind::PreTraining: return "pre";
        case TrainingPhaseKind::PostTraining: return "post";
        case TrainingPhaseKind::FineTuning: return "ft";
        case TrainingPhaseKind::Train: return "train";
    }
    throw std::logic_error("bad TrainingPhaseKind");
}

inline std::string_view to_string(ResearchPhaseKind p) {
    switch (p) {
        case ResearchPhaseKind::Debugging: return "debug";
        case ResearchPhaseKind::Failed: return "failed";
        case ResearchPhaseKind::DesignAndTuning: return "tuning";
        case ResearchPhaseKind::Ablation: return "ablation";
        case ResearchPhaseKind::FinalTraining: return "final";
    }
    throw std::logic_error("bad ResearchPhaseKind");
}

inline std::string_view to_string(RunPhaseKind p) {
    switch (p) {
        case RunPhaseKind::Optimization: return "optimization";
        case RunPhaseKind::Validation: return "validation";
        case RunPhaseKind::Evaluation: return "evaluation";
        case RunPhaseKind::SampleGeneration: return "sample_generation";
    }
    throw std::logic_error("bad RunPhaseKind");
}

template <typename Kind, std::size_t N>
std::optional<Kind> kind_from_string(std::string_view name, const std::array<Kind, N>& all) {
    for (Kind k : all)
        if (to_string(k) == name) return k;
    return std::nullopt;
}

inline std::optional<ModuleKind> module_from_string(std::string_view s) {
    return kind_from_string(s, kAllModules);
}
inline std::optional<TrainingPhaseKind> training_phase_from_string(std::string_view s) {
    return kind_from_string(s, kAllTrainingPhases);
}
inline std::optional<ResearchPhaseKind> research_phase_from_string(std::string_view s) {
    return kind_from_string(s, kAllResearchPhases);
}
inline std::optional<RunPhaseKind> run_phase_from_string(std::string_view s) {
    return kind_from_string(s, kAllRunPhases);
}

// Multi-phase curricula exist only for the two end-product model families;
// tokenizer and LLM-backbone training is a single undifferentiated phase,
// and the data generator is trained from an existing base model (no
// pre-training of its own).
inline bool valid_combination(ModuleKind m, TrainingPhaseKind p) {
    switch (m) {
        case ModuleKind::Tokenizer:
        case ModuleKind::LlmBackbone: return p == TrainingPhaseKind::Train;
        case ModuleKind::MainModel: return p != TrainingPhaseKind::Train;
        case ModuleKind::DataGenerator:
            return p == TrainingPhaseKind::Experimentation ||
                   p == TrainingPhaseKind::PostTraining || p == TrainingPhaseKind::FineTuning;
    }
    return false;
}

// Fractions of a run's compute spent in each run phase; indexed by RunPhaseKind.
struct PhaseFractions {
    std::array<double, kRunPhaseCount> value{1.0, 0.0, 0.0, 0.0};

    double operator[](RunPhaseKind p) const { return value[static_cast<std::size_t>(p)]; }
    double& operator[](RunPhaseKind p) { return value[static_cast<std::size_t>(p)]; }
    double sum() const { return value[0] + value[1] + value[2] + value[3]; }
    friend bool operator==(const PhaseFractions&, const PhaseFractions&) = default;
};

struct RunRecord {
    std::string run_id;
    ModuleKind module = ModuleKind::MainModel;
    TrainingPhaseKind training_phase = TrainingPhaseKind::Experimentation;
    ResearchPhaseKind research_phase = ResearchPhaseKind::DesignAndTuning;
    std::int64_t start = 0;  // unix seconds, UTC
    std::int64_t end = 0;
    int gpus = 1;
    PhaseFractions phase_fractions;

    // Checked construction: the module/phase matrix is a hard invariant.
    static RunRecord create(std::string run_id, ModuleKind module, TrainingPhaseKind phase,
                            ResearchPhaseKind research, std::int64_t start, std::int64_t end,
                            int gpus, PhaseFractions fractions = {}) {
        if (!valid_combination(module, phase))
            throw std::invalid_argument("RunRecord: module '" + std::string(to_string(module)) +
                                        "' cannot have training phase '" +
                                        std::string(to_string(phase)) + "'");
        return RunRecord{std::move(run_id), module, phase, research, start, end, gpus, fractions};
    }

    friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

struct RunLog {
    std::vector<RunRecord> runs;
    std::string source_path;
};

// Duration in hours times GPU count (definition of run compute intensity).
// Non-fatal data-quality note attached to a record or derived quantity.
struct Diagnostic {
    std::string run_id;
    std::string field;
    std::string reason;

    friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

inline ComputeQuantity run_compute(const RunRecord& r) {
    double hours = static_cast<double>(r.end - r.start) / 3600.0;
    return ComputeQuantity(hours * static_cast<double>(r.gpus));
}

inline bool is_llm_backbone(const RunRecord& r) { return r.module == ModuleKind::LlmBackbone; }

// The eligible set for figure-matching aggregations that exclude LLM
// development (run-phase split, intensity histogram, usage timeline).
inline RunLog exclude_llm(const RunLog& log) {
    RunLog out;
    out.source_path = log.source_path;
    out.runs.reserve(log.runs.size());
    for (const RunRecord& r : log.runs)
        if (!is_llm_backbone(r)) out.runs.push_back(r);
    return out;
}

}  // namespace ecotally
