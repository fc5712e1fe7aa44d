// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <sstream>
#include <string>

#include "ecotally/log_io.hpp"

using namespace ecotally;

TEST_CASE("timestamps parse and format as seconds-resolution UTC") {
    CHECK(parse_timestamp("1970-01-01T00:00:00Z") == 0);
    CHECK(parse_timestamp("2023-11-01T00:00:00Z") == 1698796800);
    CHECK(parse_timestamp("2024-02-29T12:34:56Z") == 1709210096);  // leap day

    for (std::int64_t t : {std::int64_t{0}, std::int64_t{1698796800}, std::int64_t{1709210096},
                           std::int64_t{4102444799}}) {
        CHECK(parse_timestamp(format_timestamp(t)) == t);
    }
    CHECK(format_timestamp(1698796800) == "2023-11-01T00:00:00Z");
}

TEST_CASE("timestamp variants: fractional seconds truncate, +00:00 accepted") {
    CHECK(parse_timestamp("2023-11-01T00:00:00.500Z") == 1698796800);
    CHECK(parse_timestamp("2023-11-01T00:00:00+00:00") == 1698796800);

    CHECK_THROWS_AS(parse_timestamp("2023-11-01T00:00:00"), std::invalid_argument);  // no zone
    CHECK_THROWS_AS(parse_timestamp("2023-11-01T00:00:00+01:00"), std::invalid_argument);
    CHECK_THROWS_AS(parse_timestamp("2023-11-01 00:00:00Z"), std::invalid_argument);
    CHECK_THROWS_AS(parse_timestamp("2023-13-01T00:00:00Z"), std::invalid_argument);
    CHECK_THROWS_AS(parse_timestamp("not a date"), std::invalid_argument);
}

static const char* kTwoRuns =
    R"({"run_id":"run-0001","module":"main_model","training_phase":"pre","research_phase":"final","start":"2024-01-01T00:00:00Z","end":"2024-01-02T00:00:00Z","gpus":512})"
    "\n"
    "\n"  // blank lines are skipped
    R"({"run_id":"run-0002","module":"tokenizer","training_phase":"train","research_phase":"debug","start":"2024-01-01T06:00:00Z","end":"2024-01-01T06:30:00Z","gpus":4,"phase_fractions":{"optimization":0.5,"evaluation":0.5}})"
    "\n";

TEST_CASE("parse_log reads JSONL records") {
    std::istringstream in(kTwoRuns);
    RunLog log = parse_log(in, "test.jsonl");
    REQUIRE(log.runs.size() == 2);
    CHECK(log.source_path == "test.jsonl");

    const RunRecord& a = log.runs[0];
    CHECK(a.run_id == "run-0001");
    CHECK(a.module == ModuleKind::MainModel);
    CHECK(a.training_phase == TrainingPhaseKind::PreTraining);
    CHECK(a.research_phase == ResearchPhaseKind::FinalTraining);
    CHECK(a.end - a.start == 86400);
    CHECK(a.gpus == 512);
    CHECK(a.phase_fractions == PhaseFractions{});

    const RunRecord& b = log.runs[1];
    CHECK(b.phase_fractions[RunPhaseKind::Optimization] == 0.5);
    CHECK(b.phase_fractions[RunPhaseKind::Evaluation] == 0.5);
    CHECK(b.phase_fractions[RunPhaseKind::Validation] == 0.0);
}

TEST_CASE("parse_log reports the offending line") {
    auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return parse_log(in);
    };
    std::string good =
        R"({"run_id":"a","module":"tokenizer","training_phase":"train","research_phase":"debug","start":"2024-01-01T00:00:00Z","end":"2024-01-01T01:00:00Z","gpus":1})";

    SECTION("malformed JSON") {
        try {
            parse(good + "\n{not json\n");
            FAIL("expected LogParseError");
        } catch (const LogParseError& e) {
            CHECK(e.kind == LogParseError::Kind::Malformed);
            CHECK(e.line == 2);
        }
    }
    SECTION("non-object line") {
        try {
            parse("[1,2,3]\n");
            FAIL("expected LogParseError");
        } catch (const LogParseError& e) {
            CHECK(e.kind == LogParseError::Kind::Malformed);
            CHECK(e.line == 1);
        }
    }
    SECTION("missing key") {
        std::string no_gpus =
            R"({"run_id":"b","module":"tokenizer","training_phase":"train","research_phase":"debug","start":"2024-01-01T00:00:00Z","end":"2024-01-01T01:00:00Z"})";
        try {
            parse(good + "\n" + no_gpus + "\n");
            FAIL("expected LogParseError");
        } catch (const LogParseError& e) {
            CHECK(e.kind == LogParseError::Kind::Malformed);
            CHECK(e.line == 2);
        }
    }
    SECTION("unknown category") {
        std::string bad_module =
            R"({"run_id":"b","module":"reward_model","training_phase":"train","research_phase":"debug","start":"2024-01-01T00:00:00Z","end":"2024-01-01T01:00:00Z","gpus":1})";
        try {
            parse(bad_module + "\n");
            FAIL("expected LogParseError");
        } catch (const LogParseError& e) {
            CHECK(e.kind == LogParseError::Kind::UnknownCategory);
            CHECK(e.line == 1);
        }
    }
    SECTION("duplicate run id") {
        try {
            parse(good + "\n" + good + "\n");
            FAIL("expected LogParseError");
        } catch (const LogParseError& e) {
            CHECK(e.kind == LogParseError::Kind::DuplicateId);
            CHECK(e.line == 2);
        }
    }
    SECTION("invalid module/phase combination") {
        std::string bad_combo =
            R"({"run_id":"b","module":"tokenizer","training_phase":"pre","research_phase":"debug","start":"2024-01-01T00:00:00Z","end":"2024-01-01T01:00:00Z","gpus":1})";
        CHECK_THROWS_AS(parse(bad_combo + "\n"), LogParseError);
    }
}

TEST_CASE("serialization omits default fractions and zero entries") {
    RunRecord plain = RunRecord::create("p", ModuleKind::MainModel, TrainingPhaseKind::PostTraining,
                                        ResearchPhaseKind::Ablation, 1698796800, 1698800400, 64);
    nlohmann::ordered_json j = record_to_json(plain);
    CHECK(!j.contains("phase_fractions"));
    CHECK(j["start"] == "2023-11-01T00:00:00Z");

    PhaseFractions f;
    f[RunPhaseKind::Optimization] = 0.75;
    f[RunPhaseKind::SampleGeneration] = 0.25;
    RunRecord split = RunRecord::create("s", ModuleKind::DataGenerator,
                                        TrainingPhaseKind::Experimentation,
                                        ResearchPhaseKind::DesignAndTuning, 0, 3600, 1, f);
    nlohmann::ordered_json js = record_to_json(split);
    REQUIRE(js.contains("phase_fractions"));
    CHECK(js["phase_fractions"].size() == 2);  // zero entries omitted
    CHECK(!js["phase_fractions"].contains("validation"));
    CHECK(js["phase_fractions"]["sample_generation"] == 0.25);
}

TEST_CASE("serialize then parse round-trips the log") {
    std::istringstream in(kTwoRuns);
    RunLog log = parse_log(in);

    std::ostringstream out;
    serialize_log(log, out);
    std::istringstream back(out.str());
    RunLog reparsed = parse_log(back);

    CHECK(log.runs == reparsed.runs);

    // Byte-stable: serializing the reparse reproduces the bytes.
    std::ostringstream out2;
    serialize_log(reparsed, out2);
    CHECK(out.str() == out2.str());
}

TEST_CASE("validate_log flags data-quality issues without throwing") {
    RunLog log;
    log.runs.push_back(RunRecord::create("ok", ModuleKind::Tokenizer, TrainingPhaseKind::Train,
                                         ResearchPhaseKind::Debugging, 0, 3600, 2));
    CHECK(validate_log(log).empty());

    RunRecord bad = log.runs[0];
    bad.run_id = "bad";
    bad.start = 7200;  // ends before it starts
    bad.gpus = 0;
    bad.phase_fractions[RunPhaseKind::Optimization] = 0.5;  // sum 0.5
    log.runs.push_back(bad);

    std::vector<Diagnostic> issues = validate_log(log);
    REQUIRE(issues.size() == 3);
    for (const Diagnostic& d : issues) CHECK(d.run_id == "bad");
    CHECK(issues[0].field == "end");
    CHECK(issues[1].field == "gpus");
    CHECK(issues[2].field == "phase_fractions");

    RunRecord neg = log.runs[0];
    neg.run_id = "neg";
    neg.phase_fractions[RunPhaseKind::Validation] = -0.25;
    neg.phase_fractions[RunPhaseKind::Optimization] = 1.25;
    log.runs = {neg};
    issues = validate_log(log);
    REQUIRE(issues.size() == 2);
    // diagnostics follow the canonical phase order, not insertion order
    CHECK(issues[0].field == "phase_fractions.optimization");
    CHECK(issues[1].field == "phase_fractions.validation");
}

TEST_CASE("fixture log loads, validates, and round-trips byte-for-byte") {
    std::string path = std::string(ECOTALLY_SOURCE_DIR) + "/fixtures/runs.jsonl";
    RunLog log = load_log(path);
    CHECK(log.runs.size() == 3540);
    CHECK(validate_log(log).empty());

    std::ostringstream out;
    serialize_log(log, out);
    std::ifstream raw(path, std::ios::binary);
    std::stringstream orig;
    orig << raw.rdbuf();
    CHECK(out.str() == orig.str());
}
