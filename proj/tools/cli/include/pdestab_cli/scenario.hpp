#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pdestab/kernel.hpp"
#include "pdestab/reaction.hpp"
#include "pdestab/solver.hpp"

namespace pdestab::cli {

struct ReactionSpec {
    std::string kind = "cubic";  // cubic | polynomial_odd | custom_polynomial
    double q = 11.0;
    double B = 1.0;
    double b = 4.0;
    std::optional<double> gamma;
    std::optional<double> delta;
    std::vector<double> coefficients;  // custom_polynomial: f(u) = sum_j c_j u^j
};

struct KernelSpec {
    std::string family = "linear";
    double parameter = 0.0;
};

struct InitialSpec {
    std::string kind = "bump";  // scaled_mode | bump | custom_samples
    std::size_t mode = 1;
    double amplitude = 0.1;
    double center = 0.5;
    double width = 0.1;
    std::vector<double> samples;
};

struct Scenario {
    std::string name = "chafee_infante";
    double p = 1.0;
    double r = 0.0;
    std::optional<double> epsilon;
    ReactionSpec reaction;
    KernelSpec kernel;
    SolverConfig solver;
    InitialSpec initial;

    Kernel make_kernel() const;
    ReactionTerm make_reaction() const;
    /// Profile described by the ic.* fields, before any correction.
    GridFunction make_raw_profile() const;
    /// Raw profile passed through the linear boundary correction.
    InitialCondition make_initial_condition(const Kernel& k) const;

    /// Checks every field; throws Error(parse or domain). The boundary
    /// correction is left to the commands that need an initial condition.
    void validate() const;
};

inline constexpr std::string_view kBuiltinScenario = "chafee_infante";

/// Cubic reaction q = 11, B = 1 under the linear kernel, with the gain
/// r = 5^(1/4) (7/3)^(3/4) at which the damping hypothesis is tight.
Scenario builtin_scenario();

/// Unknown keys are rejected; missing keys take the builtin's values.
Scenario parse_scenario(std::string_view text);
void apply_override(Scenario& s, std::string_view key_equals_value);
void set_field(Scenario& s, const std::string& key, const std::string& value);

/// Canonical key = value text, every field, fixed order, %.17g reals.
std::string serialize(const Scenario& s);
/// Hex FNV-1a of serialize(s).
std::string scenario_hash(const Scenario& s);

/// Reads a scenario file, or returns the builtin when `ref` names it and no
/// such file exists. Throws Error(io) / Error(parse).
Scenario load_scenario(const std::string& ref, const std::vector<std::string>& overrides = {});

}  // namespace pdestab::cli
