#include "pdestab/trace_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include "pdestab/report.hpp"

namespace pdestab {

std::string hash_hex(std::uint64_t hash) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

namespace {

void write_header(std::ostream& out, const SimulationTrace& trace, std::string_view hash) {
    out << "# scenario_hash=" << hash << " method=" << (trace.method.empty() ? "unknown" : trace.method)
        << " terminated_by=" << to_string(trace.terminated_by) << '\n';
}

TraceHeader parse_header(const std::string& line) {
    if (line.rfind("#", 0) != 0) throw Error(ErrorKind::parse, "trace file lacks the # metadata line");
    TraceHeader h;
    bool have_hash = false;
    std::istringstream ss(line.substr(1));
    std::string token;
    while (ss >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = token.substr(0, eq);
        const std::string value = token.substr(eq + 1);
        if (key == "scenario_hash") {
            h.scenario_hash = value;
            have_hash = true;
        } else if (key == "method") {
            h.method = value;
        } else if (key == "terminated_by") {
            const auto t = parse_termination(value);
            if (!t) throw Error(ErrorKind::parse, "unknown terminated_by value '" + value + "'");
            h.terminated_by = *t;
        }
    }
    if (!have_hash) throw Error(ErrorKind::parse, "trace header lacks scenario_hash");
    return h;
}

std::vector<double> split_reals(const std::string& line, std::size_t line_no) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= line.size()) {
        const auto comma = line.find(',', pos);
        const std::string cell = line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        char* end = nullptr;
        const double v = std::strtod(cell.c_str(), &end);
        if (cell.empty() || end == cell.c_str()) {
            throw Error(ErrorKind::parse, "line " + std::to_string(line_no) + ": bad number '" + cell + "'");
        }
        out.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

}  // namespace

void write_trace_csv(std::ostream& out, const SimulationTrace& trace, std::string_view scenario_hash) {
    write_header(out, trace, scenario_hash);
    out << "t,l2,sup,h1,V,U\n";
    for (std::size_t i = 0; i < trace.size(); ++i) {
        out << format_real(trace.times[i]) << ',' << format_real(trace.l2_norms[i]) << ','
            << format_real(trace.sup_norms[i]) << ',' << format_real(trace.h1_seminorms[i]) << ','
            << format_real(trace.lyapunov_values[i]) << ',' << format_real(trace.boundary_inputs[i]) << '\n';
    }
}

void write_snapshots_csv(std::ostream& out, const SimulationTrace& trace, std::string_view scenario_hash) {
    write_header(out, trace, scenario_hash);
    if (trace.snapshots.empty()) return;
    const std::size_t n = trace.snapshots.front().size();
    out << 'x';
    for (std::size_t i = 0; i < n; ++i) out << ',' << format_real(trace.snapshots.front().x(i));
    out << '\n';
    for (std::size_t s = 0; s < trace.snapshots.size(); ++s) {
        out << format_real(trace.snapshot_times[s]);
        for (double v : trace.snapshots[s].values()) out << ',' << format_real(v);
        out << '\n';
    }
}

SimulationTrace read_trace_csv(std::istream& in, TraceHeader& header) {
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorKind::parse, "empty trace file");
    header = parse_header(line);
    if (!std::getline(in, line) || line != "t,l2,sup,h1,V,U") {
        throw Error(ErrorKind::parse, "trace columns must be t,l2,sup,h1,V,U");
    }
    SimulationTrace trace;
    trace.method = header.method;
    trace.terminated_by = header.terminated_by;
    std::size_t line_no = 2;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto v = split_reals(line, line_no);
        if (v.size() != 6) throw Error(ErrorKind::parse, "line " + std::to_string(line_no) + ": expected 6 columns");
        trace.times.push_back(v[0]);
        trace.l2_norms.push_back(v[1]);
        trace.sup_norms.push_back(v[2]);
        trace.h1_seminorms.push_back(v[3]);
        trace.lyapunov_values.push_back(v[4]);
        trace.boundary_inputs.push_back(v[5]);
    }
    return trace;
}

void read_snapshots_csv(std::istream& in, SimulationTrace& trace, TraceHeader& header) {
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorKind::parse, "empty snapshot file");
    header = parse_header(line);
    trace.snapshot_times.clear();
    trace.snapshots.clear();
    if (!std::getline(in, line)) return;
    if (line.rfind("x,", 0) != 0) throw Error(ErrorKind::parse, "snapshot grid row must start with x");
    const std::size_t n = split_reals(line.substr(2), 2).size();
    std::size_t line_no = 2;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto v = split_reals(line, line_no);
        if (v.size() != n + 1) throw Error(ErrorKind::parse, "line " + std::to_string(line_no) + ": row length");
        trace.snapshot_times.push_back(v.front());
        trace.snapshots.emplace_back(std::vector<double>(v.begin() + 1, v.end()));
    }
}

}  // namespace pdestab
