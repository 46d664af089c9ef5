#ifndef FINMOD_REPORT_HPP
#define FINMOD_REPORT_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace finmod {

struct CheckRecord {
    std::string description;
    std::string expected;
    std::string observed;
    bool pass = false;
};

/// Deterministic experiment record; serialization round-trips through JSON
/// with stable key order.
struct ExperimentReport {
    std::string name;
    std::map<std::string, std::string> parameters;
    std::vector<CheckRecord> checks;
    double wall_seconds = 0.0;
    std::uint64_t budget_used = 0;
    std::uint64_t budget_limit = 0;

    bool pass() const;
    void check(const std::string& description, const std::string& expected,
               const std::string& observed);
    void check_bool(const std::string& description, bool expected, bool observed);

    std::string to_json() const;
    static ExperimentReport from_json(const std::string& text);
    std::string to_text() const;
};

}  // namespace finmod

#endif
