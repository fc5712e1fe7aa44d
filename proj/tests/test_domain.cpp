// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include "ecotally/domain.hpp"

using namespace ecotally;

TEST_CASE("enum wire names round-trip") {
    for (ModuleKind m : kAllModules) CHECK(module_from_string(to_string(m)) == m);
    for (TrainingPhaseKind p : kAllTrainingPhases)
        CHECK(training_phase_from_string(to_string(p)) == p);
    for (ResearchPhaseKind p : kAllResearchPhases)
        CHECK(research_phase_from_string(to_string(p)) == p);
    for (RunPhaseKind p : kAllRunPhases) CHECK(run_phase_from_string(to_string(p)) == p);

    CHECK(to_string(ModuleKind::LlmBackbone) == "llm_backbone");
    CHECK(to_string(TrainingPhaseKind::Experimentation) == "exp");
    CHECK(to_string(ResearchPhaseKind::DesignAndTuning) == "tuning");
    CHECK(to_string(RunPhaseKind::SampleGeneration) == "sample_generation");
}

TEST_CASE("unknown wire names map to nullopt") {
    CHECK(!module_from_string("gpu"));
    CHECK(!module_from_string("Tokenizer"));  // case-sensitive
    CHECK(!training_phase_from_string("pretraining"));
    CHECK(!research_phase_from_string(""));
    CHECK(!run_phase_from_string("opt"));
}

TEST_CASE("module/training-phase validity matrix") {
    auto valid_for = [](ModuleKind m) {
        int n = 0;
        for (TrainingPhaseKind p : kAllTrainingPhases)
            if (valid_combination(m, p)) ++n;
        return n;
    };

    CHECK(valid_combination(ModuleKind::Tokenizer, TrainingPhaseKind::Train));
    CHECK(valid_for(ModuleKind::Tokenizer) == 1);
    CHECK(valid_combination(ModuleKind::LlmBackbone, TrainingPhaseKind::Train));
    CHECK(valid_for(ModuleKind::LlmBackbone) == 1);

    CHECK(!valid_combination(ModuleKind::MainModel, TrainingPhaseKind::Train));
    CHECK(valid_for(ModuleKind::MainModel) == 4);

    CHECK(valid_combination(ModuleKind::DataGenerator, TrainingPhaseKind::Experimentation));
    CHECK(valid_combination(ModuleKind::DataGenerator, TrainingPhaseKind::PostTraining));
    CHECK(valid_combination(ModuleKind::DataGenerator, TrainingPhaseKind::FineTuning));
    CHECK(!valid_combination(ModuleKind::DataGenerator, TrainingPhaseKind::PreTraining));
    CHECK(!valid_combination(ModuleKind::DataGenerator, TrainingPhaseKind::Train));
}

TEST_CASE("phase fractions default to pure optimization") {
    PhaseFractions f;
    CHECK(f[RunPhaseKind::Optimization] == 1.0);
    CHECK(f[RunPhaseKind::Validation] == 0.0);
    CHECK(f.sum() == 1.0);
    CHECK(f == PhaseFractions{});

    f[RunPhaseKind::Validation] = 0.25;
    f[RunPhaseKind::Optimization] = 0.75;
    CHECK(f.sum() == 1.0);
    CHECK(f != PhaseFractions{});
}

TEST_CASE("checked record construction enforces the matrix") {
    CHECK_THROWS_AS(RunRecord::create("r1", ModuleKind::Tokenizer,
                                      TrainingPhaseKind::Experimentation,
                                      ResearchPhaseKind::Debugging, 0, 3600, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(RunRecord::create("r2", ModuleKind::MainModel, TrainingPhaseKind::Train,
                                      ResearchPhaseKind::FinalTraining, 0, 3600, 8),
                    std::invalid_argument);

    RunRecord r = RunRecord::create("r3", ModuleKind::DataGenerator, TrainingPhaseKind::FineTuning,
                                    ResearchPhaseKind::DesignAndTuning, 1000, 8200, 4);
    CHECK(r.run_id == "r3");
    CHECK(r.gpus == 4);
    CHECK(r.phase_fractions == PhaseFractions{});
}

TEST_CASE("run compute is duration in hours times GPU count") {
    RunRecord r = RunRecord::create("r", ModuleKind::MainModel, TrainingPhaseKind::PreTraining,
                                    ResearchPhaseKind::FinalTraining, 0, 7200, 128);
    CHECK(run_compute(r).gpu_hours == 256.0);

    // 225 s on 16 GPUs is exactly one GPU-hour.
    RunRecord t = RunRecord::create("t", ModuleKind::Tokenizer, TrainingPhaseKind::Train,
                                    ResearchPhaseKind::Debugging, 1000, 1225, 16);
    CHECK(run_compute(t).gpu_hours == 1.0);
}

TEST_CASE("LLM-backbone filter preserves order and source path") {
    RunLog log;
    log.source_path = "somewhere.jsonl";
    log.runs.push_back(RunRecord::create("a", ModuleKind::MainModel,
                                         TrainingPhaseKind::Experimentation,
                                         ResearchPhaseKind::Debugging, 0, 3600, 1));
    log.runs.push_back(RunRecord::create("b", ModuleKind::LlmBackbone, TrainingPhaseKind::Train,
                                         ResearchPhaseKind::DesignAndTuning, 0, 3600, 2));
    log.runs.push_back(RunRecord::create("c", ModuleKind::Tokenizer, TrainingPhaseKind::Train,
                                         ResearchPhaseKind::Ablation, 0, 3600, 3));

    CHECK(is_llm_backbone(log.runs[1]));
    CHECK(!is_llm_backbone(log.runs[0]));

    RunLog filtered = exclude_llm(log);
    REQUIRE(filtered.runs.size() == 2);
    CHECK(filtered.runs[0].run_id == "a");
    CHECK(filtered.runs[1].run_id == "c");
    CHECK(filtered.source_path == "somewhere.jsonl");
}
