#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace eprweyl {

inline constexpr const char* kToolVersion = "eprweyl 0.3.0";

struct CheckRecord {
    std::string name;
    std::string anchor;        // the claim this check exercises
    std::string inputs_digest; // FNV-1a of the canonical input description
    nlohmann::json measured = nlohmann::json::object();
    double tolerance = 0.0;
    bool pass = false;
    double wall_ms = 0.0;

    friend bool operator==(const CheckRecord&, const CheckRecord&) = default;
};

/// Structured verification output. overall pass is the conjunction of the records.
struct VerificationReport {
    std::string tool_version = kToolVersion;
    nlohmann::json state = nlohmann::json::object();
    std::vector<CheckRecord> records;
    nlohmann::json details = nlohmann::json::object();

    [[nodiscard]] bool pass() const;
    [[nodiscard]] std::vector<std::string> failing() const;

    [[nodiscard]] nlohmann::json to_json() const;
    /// Throws UsageError on schema violations or an inconsistent "pass" field.
    static VerificationReport from_json(const nlohmann::json& j);

    friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

/// 16 hex digits of the 64-bit FNV-1a hash of the JSON dump of `inputs`.
std::string inputs_digest(const nlohmann::json& inputs);

/// Removes every "wall_ms" member, leaving the deterministic report body.
nlohmann::json strip_timing(nlohmann::json j);

} // namespace eprweyl
