// SPDX-License-Identifier: Apache-2.0
//
// Run-log ingestion: one JSON object per line, UTF-8, seconds-resolution
// ISO-8601 UTC timestamps. See docs/formats.md for the schema.
#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

#include "ecotally/domain.hpp"

namespace ecotally {

struct LogParseError : std::runtime_error {
    enum class Kind { Malformed, DuplicateId, UnknownCategory };

    LogParseError(Kind k, std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what),
          kind(k),
          line(line) {}

    Kind kind;
    std::size_t line;
};

namespace detail {

inline std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

inline void civil_from_days(std::int64_t z, std::int64_t& y, unsigned& m, unsigned& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp + (mp < 10 ? 3 : -9);
    y += m <= 2;
}

}  // namespace detail

// "YYYY-MM-DDThh:mm:ssZ" -> unix seconds; fractional seconds are truncated.
inline std::int64_t parse_timestamp(std::string_view s) {
    int y, mo, d, h, mi, se;
    int consumed = 0;
    std::string buf(s);
    if (std::sscanf(buf.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d%n", &y, &mo, &d, &h, &mi, &se,
                    &consumed) != 6)
        throw std::invalid_argument("timestamp: expected YYYY-MM-DDThh:mm:ssZ, got '" + buf + "'");
    std::string_view rest = s.substr(static_cast<std::size_t>(consumed));
    if (!rest.empty() && rest.front() == '.') {  // drop sub-second digits
        rest.remove_prefix(1);
        while (!rest.empty() && rest.front() >= '0' && rest.front() <= '9') rest.remove_prefix(1);
    }
    if (rest != "Z" && rest != "+00:00")
        throw std::invalid_argument("timestamp: must be UTC ('Z'), got '" + buf + "'");
    if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || se > 60 || h < 0 || mi < 0 ||
        se < 0)
        throw std::invalid_argument("timestamp: field out of range in '" + buf + "'");
    return detail::days_from_civil(y, static_cast<unsigned>(mo), static_cast<unsigned>(d)) *
               86400 +
           h * 3600 + mi * 60 + se;
}

inline std::string format_timestamp(std::int64_t unix_s) {
    std::int64_t days = unix_s / 86400;
    std::int64_t rem = unix_s % 86400;
    if (rem < 0) {
        rem += 86400;
        days -= 1;
    }
    std::int64_t y;
    unsigned mo, d;
    detail::civil_from_days(days, y, mo, d);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04lld-%02u-%02uT%02lld:%02lld:%02lldZ",
                  static_cast<long long>(y), mo, d, static_cast<long long>(rem / 3600),
                  static_cast<long long>(rem / 60 % 60), static_cast<long long>(rem % 60));
    return buf;
}

namespace detail {

inline RunRecord record_from_json(const nlohmann::json& j, std::size_t line) {
    using Kind = LogParseError::Kind;
    auto require = [&](const char* key) -> const nlohmann::json& {
        auto it = j.find(key);
        if (it == j.end())
            throw LogParseError(Kind::Malformed, line, std::string("missing key '") + key + "'");
        return *it;
    };
    auto str = [&](const char* key) -> std::string {
        const auto& v = require(key);
        if (!v.is_string())
            throw LogParseError(Kind::Malformed, line, std::string("key '") + key + "' must be a string");
        return v.get<std::string>();
    };

    std::string module_s = str("module");
    auto module = module_from_string(module_s);
    if (!module)
        throw LogParseError(Kind::UnknownCategory, line, "unknown module '" + module_s + "'");
    std::string tp_s = str("training_phase");
    auto tp = training_phase_from_string(tp_s);
    if (!tp)
        throw LogParseError(Kind::UnknownCategory, line, "unknown training_phase '" + tp_s + "'");
    std::string rp_s = str("research_phase");
    auto rp = research_phase_from_string(rp_s);
    if (!rp)
        throw LogParseError(Kind::UnknownCategory, line, "unknown research_phase '" + rp_s + "'");

    const auto& gpus_v = require("gpus");
    if (!gpus_v.is_number_integer())
        throw LogParseError(Kind::Malformed, line, "'gpus' must be an integer");

    PhaseFractions fractions;
    if (auto it = j.find("phase_fractions"); it != j.end()) {
        if (!it->is_object())
            throw LogParseError(Kind::Malformed, line, "'phase_fractions' must be an object");
        fractions.value = {0.0, 0.0, 0.0, 0.0};
        for (const auto& [key, val] : it->items()) {
            auto phase = run_phase_from_string(key);
            if (!phase)
                throw LogParseError(Kind::UnknownCategory, line, "unknown run phase '" + key + "'");
            if (!val.is_number())
                throw LogParseError(Kind::Malformed, line, "phase fraction '" + key + "' must be a number");
            fractions[*phase] = val.get<double>();
        }
    }

    std::int64_t start, end;
    try {
        start = parse_timestamp(str("start"));
        end = parse_timestamp(str("end"));
    } catch (const std::invalid_argument& e) {
        throw LogParseError(Kind::Malformed, line, e.what());
    }

    try {
        return RunRecord::create(str("run_id"), *module, *tp, *rp, start, end,
                                 gpus_v.get<int>(), fractions);
    } catch (const std::invalid_argument& e) {
        throw LogParseError(Kind::Malformed, line, e.what());
    }
}

}  // namespace detail

inline RunLog parse_log(std::istream& in, std::string source_path = {}) {
    using Kind = LogParseError::Kind;
    RunLog log;
    log.source_path = std::move(source_path);
    std::unordered_set<std::string> seen;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object())
            throw LogParseError(Kind::Malformed, lineno, "not a JSON object");
        RunRecord r = detail::record_from_json(j, lineno);
        if (!seen.insert(r.run_id).second)
            throw LogParseError(Kind::DuplicateId, lineno, "duplicate run_id '" + r.run_id + "'");
        log.runs.push_back(std::move(r));
    }
    return log;
}

inline RunLog load_log(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open run log '" + path + "'");
    return parse_log(in, path);
}

inline nlohmann::ordered_json record_to_json(const RunRecord& r) {
    nlohmann::ordered_json j;
    j["run_id"] = r.run_id;
    j["module"] = to_string(r.module);
    j["training_phase"] = to_string(r.training_phase);
    j["research_phase"] = to_string(r.research_phase);
    j["start"] = format_timestamp(r.start);
    j["end"] = format_timestamp(r.end);
    j["gpus"] = r.gpus;
    if (r.phase_fractions != PhaseFractions{}) {
        nlohmann::ordered_json f;
        for (RunPhaseKind p : kAllRunPhases)
            if (r.phase_fractions[p] != 0.0) f[std::string(to_string(p))] = r.phase_fractions[p];
        j["phase_fractions"] = std::move(f);
    }
    return j;
}

inline void serialize_log(const RunLog& log, std::ostream& out) {
    for (const RunRecord& r : log.runs) out << record_to_json(r).dump() << '\n';
}

inline std::vector<Diagnostic> validate_log(const RunLog& log) {
    std::vector<Diagnostic> out;
    for (const RunRecord& r : log.runs) {
        if (r.end < r.start)
            out.push_back({r.run_id, "end", "negative duration (end precedes start)"});
        if (r.gpus < 1) out.push_back({r.run_id, "gpus", "gpu count must be >= 1"});
        bool range_ok = true;
        for (RunPhaseKind p : kAllRunPhases) {
            double f = r.phase_fractions[p];
            if (f < 0.0 || f > 1.0) {
                out.push_back({r.run_id, std::string("phase_fractions.") +
                                             std::string(to_string(p)),
                               "fraction outside [0, 1]"});
                range_ok = false;
            }
        }
        if (range_ok && std::abs(r.phase_fractions.sum() - 1.0) > 1e-6)
            out.push_back({r.run_id, "phase_fractions", "fractions not normalized (sum != 1)"});
        if (!valid_combination(r.module, r.training_phase))
            out.push_back({r.run_id, "training_phase", "invalid module/phase combination"});
    }
    return out;
}

}  // namespace ecotally
