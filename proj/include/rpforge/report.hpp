#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rpforge/subset.hpp"

namespace rpforge {

// One failed instance of a checked condition, with enough data to reproduce it.
struct Violation {
    std::string condition;
    std::vector<Subset> sets;
    std::vector<int> elements;
    std::string message;
};

// Outcome of a condition check. Only the first `kMaxStoredViolations` are
// kept; `violation_count` is the full tally.
struct ConditionReport {
    static constexpr std::size_t kMaxStoredViolations = 256;

    std::string name;
    std::uint64_t checked = 0;
    std::uint64_t violation_count = 0;
    std::vector<Violation> violations;

    bool passed() const { return violation_count == 0; }

    void add(Violation v) {
        ++violation_count;
        if (violations.size() < kMaxStoredViolations) violations.push_back(std::move(v));
    }
    void merge(const ConditionReport& other) {
        checked += other.checked;
        for (const auto& v : other.violations) add(v);
        violation_count += other.violation_count - other.violations.size();
    }
};

} // namespace rpforge
