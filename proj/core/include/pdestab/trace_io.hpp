#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "pdestab/solver.hpp"

namespace pdestab {

/// Metadata carried on the leading `#` line of both CSV files:
///   # scenario_hash=<16 hex digits> method=<fd|spectral> terminated_by=<...>
struct TraceHeader {
    std::string scenario_hash;
    std::string method;
    Termination terminated_by = Termination::t_end_reached;
};

/// Columns t,l2,sup,h1,V,U, one row per recorded time.
void write_trace_csv(std::ostream& out, const SimulationTrace& trace, std::string_view scenario_hash);

/// First row: grid x coordinates prefixed by "x". Then rows t,u(t,x_0..x_N).
void write_snapshots_csv(std::ostream& out, const SimulationTrace& trace, std::string_view scenario_hash);

/// Reads the norm columns back into a trace (snapshots left empty).
/// Throws Error(parse) on malformed input.
SimulationTrace read_trace_csv(std::istream& in, TraceHeader& header);

/// Reads snapshot rows into trace.snapshot_times / trace.snapshots.
void read_snapshots_csv(std::istream& in, SimulationTrace& trace, TraceHeader& header);

std::string hash_hex(std::uint64_t hash);

}  // namespace pdestab
