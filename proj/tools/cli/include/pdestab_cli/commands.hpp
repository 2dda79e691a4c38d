#pragma once

#include <ostream>
#include <string>

#include "pdestab/property_suite.hpp"
#include "pdestab_cli/scenario.hpp"

namespace pdestab::cli {

enum ExitCode : int { ok = 0, failure = 1, input_error = 2, blowup = 3, io_error = 4 };

/// Maps a library error onto the exit-code contract.
int exit_code_for(const Error& e) noexcept;

enum class Method { fd, spectral };

int run_certify(const Scenario& s, std::ostream& out, std::ostream& err);
int run_simulate(const Scenario& s, Method method, const std::string& out_prefix, std::ostream& out,
                 std::ostream& err);
int run_verify(const Scenario& s, const std::string& trace_prefix, std::ostream& out, std::ostream& err);
int run_properties(PropertySuite suite, const SuiteOptions& options, std::ostream& out);

/// Certifies, simulates (fd) and verifies every regular file in dir, in
/// name order; outputs go to <dir>/out/. Runs up to PDE_STAB_THREADS
/// scenarios at once. Returns the largest exit code seen.
int run_batch(const std::string& dir, std::ostream& out, std::ostream& err);

}  // namespace pdestab::cli
