#include "finmod/report.hpp"

#include <sstream>

#include "json.hpp"

namespace finmod {

bool ExperimentReport::pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

void ExperimentReport::check(const std::string& description, const std::string& expected,
                             const std::string& observed) {
    checks.push_back({description, expected, observed, expected == observed});
}

void ExperimentReport::check_bool(const std::string& description, bool expected, bool observed) {
    check(description, expected ? "true" : "false", observed ? "true" : "false");
}

std::string ExperimentReport::to_json() const {
    nlohmann::ordered_json j;
    j["experiment"] = name;
    j["parameters"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : parameters) j["parameters"][k] = v;
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        nlohmann::ordered_json jc;
        jc["description"] = c.description;
        jc["expected"] = c.expected;
        jc["observed"] = c.observed;
        jc["pass"] = c.pass;
        j["checks"].push_back(jc);
    }
    j["pass"] = pass();
    j["wall_seconds"] = wall_seconds;
    j["budget_used"] = budget_used;
    j["budget_limit"] = budget_limit;
    return j.dump(2);
}

ExperimentReport ExperimentReport::from_json(const std::string& text) {
    auto j = nlohmann::ordered_json::parse(text);
    ExperimentReport r;
    r.name = j.at("experiment").get<std::string>();
    for (const auto& [k, v] : j.at("parameters").items()) r.parameters[k] = v.get<std::string>();
    for (const auto& jc : j.at("checks")) {
        CheckRecord c;
        c.description = jc.at("description").get<std::string>();
        c.expected = jc.at("expected").get<std::string>();
        c.observed = jc.at("observed").get<std::string>();
        c.pass = jc.at("pass").get<bool>();
        r.checks.push_back(c);
    }
    r.wall_seconds = j.at("wall_seconds").get<double>();
    r.budget_used = j.at("budget_used").get<std::uint64_t>();
    r.budget_limit = j.at("budget_limit").get<std::uint64_t>();
    return r;
}

std::string ExperimentReport::to_text() const {
    std::ostringstream out;
    out << "experiment " << name << "\n";
    for (const auto& [k, v] : parameters) out << "  param " << k << " = " << v << "\n";
    for (const auto& c : checks)
        out << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.description << " (expected "
            << c.expected << ", observed " << c.observed << ")\n";
    out << "  result: " << (pass() ? "PASS" : "FAIL") << "  wall " << wall_seconds << "s  budget "
        << budget_used << "/" << budget_limit << "\n";
    return out.str();
}

}  // namespace finmod
