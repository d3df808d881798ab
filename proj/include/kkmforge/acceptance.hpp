#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kkmforge/complex.hpp"

namespace kkmforge {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0;
    /// Wall-clock budget in seconds; exceeding it fails the criterion.
    double budget = 0;
};

struct AcceptanceOptions {
    std::uint64_t seed = 20240917;
    /// Replaces the generated RP^2 in the cohomology criterion.
    std::optional<SimplicialComplex> rp2_override;
};

constexpr int kCriterionCount = 9;

/// Runs criterion `id` (1..9). Exceptions are caught and reported as failures.
CriterionResult run_criterion(int id, const AcceptanceOptions& options);

/// All criteria in order; `progress` (if set) sees each result as it finishes.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options,
                                            const std::function<void(const CriterionResult&)>& progress = {});

/// "[PASS] 3 name (1.23 s / 120 s): detail".
std::string format_result(const CriterionResult& result);

}  // namespace kkmforge
