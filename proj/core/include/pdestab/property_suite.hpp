#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pdestab/report.hpp"

namespace pdestab {

enum class PropertySuite { wirtinger, boundary, agmon, all };

std::string_view to_string(PropertySuite s) noexcept;
std::optional<PropertySuite> parse_property_suite(std::string_view name) noexcept;

struct SuiteOptions {
    std::size_t trials = 1000;
    std::uint64_t seed = 42;
    std::size_t n_points = 401;
    double relative_slack = 1e-9;
};

struct SuiteResult {
    std::string name;
    std::size_t trials = 0;
    std::size_t violations = 0;
    double worst_margin = 0.0;        // min over trials of (rhs - lhs) / scale
    std::optional<double> equality_margin;  // sharp case, wirtinger only
};

/// Random test functions are sine polynomials of degree <= 8 with
/// coefficients uniform in [-1, 1] (plus a random a*x term where only
/// u(0) = 0 is required). Derivatives are exact, not finite differences.
/// The generator is std::mt19937_64 with doubles built from its top 53 bits.
std::vector<SuiteResult> run_property_suite(PropertySuite suite, const SuiteOptions& options);

KeyValueReport suite_report(const std::vector<SuiteResult>& results);

}  // namespace pdestab
