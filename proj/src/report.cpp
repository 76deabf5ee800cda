#include "eprweyl/report.hpp"

#include <cstdint>
#include <cstdio>

#include "eprweyl/errors.hpp"

namespace eprweyl {

bool VerificationReport::pass() const {
    for (const auto& r : records)
        if (!r.pass) return false;
    return true;
}

std::vector<std::string> VerificationReport::failing() const {
    std::vector<std::string> out;
    for (const auto& r : records)
        if (!r.pass) out.push_back(r.name);
    return out;
}

nlohmann::json VerificationReport::to_json() const {
    nlohmann::json recs = nlohmann::json::array();
    for (const auto& r : records)
        recs.push_back({{"name", r.name},
                        {"anchor", r.anchor},
                        {"inputs_digest", r.inputs_digest},
                        {"measured", r.measured},
                        {"tolerance", r.tolerance},
                        {"pass", r.pass},
                        {"wall_ms", r.wall_ms}});
    nlohmann::json j = {{"tool_version", tool_version}, {"state", state}, {"records", recs}, {"pass", pass()}};
    if (!details.empty()) j["details"] = details;
    return j;
}

VerificationReport VerificationReport::from_json(const nlohmann::json& j) {
    VerificationReport rep;
    try {
        rep.tool_version = j.at("tool_version").get<std::string>();
        rep.state = j.at("state");
        for (const auto& r : j.at("records")) {
            CheckRecord c;
            c.name = r.at("name").get<std::string>();
            c.anchor = r.at("anchor").get<std::string>();
            c.inputs_digest = r.at("inputs_digest").get<std::string>();
            c.measured = r.at("measured");
            c.tolerance = r.at("tolerance").get<double>();
            c.pass = r.at("pass").get<bool>();
            c.wall_ms = r.value("wall_ms", 0.0);
            rep.records.push_back(std::move(c));
        }
        if (j.contains("details")) rep.details = j.at("details");
        if (j.at("pass").get<bool>() != rep.pass()) throw UsageError("report 'pass' disagrees with its records");
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("malformed verification report: ") + e.what());
    }
    return rep;
}

std::string inputs_digest(const nlohmann::json& inputs) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : inputs.dump()) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

nlohmann::json strip_timing(nlohmann::json j) {
    if (j.is_object()) {
        j.erase("wall_ms");
        for (auto& [k, v] : j.items()) v = strip_timing(v);
    } else if (j.is_array()) {
        for (auto& v : j) v = strip_timing(v);
    }
    return j;
}

} // namespace eprweyl
