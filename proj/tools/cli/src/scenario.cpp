#include "pdestab_cli/scenario.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pdestab/report.hpp"
#include "pdestab/trace_io.hpp"

namespace pdestab::cli {

namespace {

double parse_real(const std::string& key, const std::string& v) {
    if (v == "inf") return kInfinity;
    char* end = nullptr;
    errno = 0;
    const double d = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE) {
        throw Error(ErrorKind::parse, key + ": expected a real number, got '" + v + "'");
    }
    return d;
}

std::size_t parse_count(const std::string& key, const std::string& v) {
    char* end = nullptr;
    errno = 0;
    const long long n = std::strtoll(v.c_str(), &end, 10);
    if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE || n < 0) {
        throw Error(ErrorKind::parse, key + ": expected a non-negative integer, got '" + v + "'");
    }
    return static_cast<std::size_t>(n);
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        const auto a = cell.find_first_not_of(" \t");
        const auto b = cell.find_last_not_of(" \t");
        if (a == std::string::npos) throw Error(ErrorKind::parse, key + ": empty list entry");
        out.push_back(parse_real(key, cell.substr(a, b - a + 1)));
    }
    return out;
}

std::string list_text(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + format_real(v[i]);
    return out;
}

}  // namespace

Kernel Scenario::make_kernel() const {
    const auto fam = parse_kernel_family(kernel.family);
    if (!fam) throw Error(ErrorKind::parse, "kernel.family: unknown family '" + kernel.family + "'");
    return Kernel::make(*fam, kernel.parameter, solver.n_points);
}

ReactionTerm Scenario::make_reaction() const {
    const ReactionSpec& rs = reaction;
    if (rs.kind == "cubic" || rs.kind == "polynomial_odd") {
        ReactionTerm f = rs.kind == "cubic" ? ReactionTerm::cubic(rs.q, rs.B) : ReactionTerm::polynomial_odd(rs.q, rs.B, rs.b);
        if (rs.gamma || rs.delta) f = f.with_bounds(rs.gamma.value_or(0.0), rs.delta.value_or(rs.B));
        return f;
    }
    if (rs.kind == "custom_polynomial") {
        if (rs.coefficients.empty()) throw Error(ErrorKind::parse, "reaction.coefficients required for custom_polynomial");
        if (!rs.gamma || !rs.delta) {
            throw Error(ErrorKind::parse, "custom_polynomial must declare reaction.gamma and reaction.delta");
        }
        const std::vector<double> c = rs.coefficients;
        auto fn = [c](double, double u) {
            double acc = 0.0;
            for (std::size_t j = c.size(); j-- > 0;) acc = acc * u + c[j];
            return acc;
        };
        return ReactionTerm::custom(fn, SectorConstants{rs.q, *rs.gamma, *rs.delta, rs.B, rs.b}, "custom_polynomial");
    }
    throw Error(ErrorKind::parse, "reaction.kind: unknown kind '" + rs.kind + "'");
}

GridFunction Scenario::make_raw_profile() const {
    const std::size_t n = solver.n_points;
    GridFunction raw = GridFunction::zeros(n);
    if (initial.kind == "bump") {
        raw = bump_profile(n, initial.center, initial.width, initial.amplitude);
    } else if (initial.kind == "scaled_mode") {
        raw = mode_profile(n, initial.mode, initial.amplitude);
    } else if (initial.kind == "custom_samples") {
        if (initial.samples.size() != n) {
            throw Error(ErrorKind::parse, "ic.samples must hold solver.n_points values");
        }
        raw = GridFunction(initial.samples);
    } else {
        throw Error(ErrorKind::parse, "ic.kind: unknown kind '" + initial.kind + "'");
    }
    return raw;
}

InitialCondition Scenario::make_initial_condition(const Kernel& k) const {
    return InitialCondition::corrected(make_raw_profile(), k, r);
}

void Scenario::validate() const {
    if (name.empty() || name.find_first_of(" \t=#") != std::string::npos) {
        throw Error(ErrorKind::parse, "name must be a non-empty token");
    }
    if (!(p > 0.0) || !std::isfinite(p)) throw Error(ErrorKind::domain, "p must be positive");
    if (!std::isfinite(r)) throw Error(ErrorKind::domain, "r must be finite");
    if (epsilon && !(*epsilon >= 0.0)) throw Error(ErrorKind::domain, "epsilon must be >= 0");
    (void)make_kernel();
    (void)make_reaction();
    solver.validate(reaction.q);
    (void)make_raw_profile();
}

Scenario builtin_scenario() {
    Scenario s;
    s.r = std::pow(5.0, 0.25) * std::pow(7.0 / 3.0, 0.75);
    s.solver.t_end = 2.0;
    return s;
}

void set_field(Scenario& s, const std::string& key, const std::string& v) {
    auto& rs = s.reaction;
    auto& cfg = s.solver;
    auto& ic = s.initial;
    if (key == "name") s.name = v;
    else if (key == "p") s.p = parse_real(key, v);
    else if (key == "r") s.r = parse_real(key, v);
    else if (key == "epsilon") s.epsilon = v == "auto" ? std::nullopt : std::optional<double>(parse_real(key, v));
    else if (key == "reaction.kind") rs.kind = v;
    else if (key == "reaction.q") rs.q = parse_real(key, v);
    else if (key == "reaction.B") rs.B = parse_real(key, v);
    else if (key == "reaction.b") rs.b = parse_real(key, v);
    else if (key == "reaction.gamma") rs.gamma = v == "auto" ? std::nullopt : std::optional<double>(parse_real(key, v));
    else if (key == "reaction.delta") rs.delta = v == "auto" ? std::nullopt : std::optional<double>(parse_real(key, v));
    else if (key == "reaction.coefficients") rs.coefficients = v.empty() ? std::vector<double>{} : parse_list(key, v);
    else if (key == "kernel.family") s.kernel.family = v;
    else if (key == "kernel.parameter") s.kernel.parameter = parse_real(key, v);
    else if (key == "solver.n_points") cfg.n_points = parse_count(key, v);
    else if (key == "solver.dt") cfg.dt = parse_real(key, v);
    else if (key == "solver.t_end") cfg.t_end = parse_real(key, v);
    else if (key == "solver.n_modes") cfg.n_modes = parse_count(key, v);
    else if (key == "solver.picard_tol") cfg.picard_tol = parse_real(key, v);
    else if (key == "solver.picard_max_iter") cfg.picard_max_iter = parse_count(key, v);
    else if (key == "solver.window_steps") cfg.window_steps = parse_count(key, v);
    else if (key == "solver.blowup_threshold") cfg.blowup_threshold = parse_real(key, v);
    else if (key == "solver.snapshot_stride") cfg.snapshot_stride = parse_count(key, v);
    else if (key == "ic.kind") ic.kind = v;
    else if (key == "ic.mode") ic.mode = parse_count(key, v);
    else if (key == "ic.amplitude") ic.amplitude = parse_real(key, v);
    else if (key == "ic.center") ic.center = parse_real(key, v);
    else if (key == "ic.width") ic.width = parse_real(key, v);
    else if (key == "ic.samples") ic.samples = v.empty() ? std::vector<double>{} : parse_list(key, v);
    else throw Error(ErrorKind::parse, "unknown key '" + key + "'");
}

void apply_override(Scenario& s, std::string_view kv) {
    const auto eq = kv.find('=');
    if (eq == std::string_view::npos) throw Error(ErrorKind::parse, "override must read key=value");
    const auto entries = parse_key_values(std::string(kv));
    for (const auto& [k, v] : entries) set_field(s, k, v);
}

Scenario parse_scenario(std::string_view text) {
    Scenario s = builtin_scenario();
    for (const auto& [k, v] : parse_key_values(text)) set_field(s, k, v);
    return s;
}

std::string serialize(const Scenario& s) {
    KeyValueReport rep;
    rep.add("name", s.name);
    rep.add("p", s.p);
    rep.add("r", s.r);
    rep.add("epsilon", s.epsilon ? format_real(*s.epsilon) : std::string("auto"));
    rep.add("reaction.kind", s.reaction.kind);
    rep.add("reaction.q", s.reaction.q);
    rep.add("reaction.B", s.reaction.B);
    rep.add("reaction.b", s.reaction.b);
    rep.add("reaction.gamma", s.reaction.gamma ? format_real(*s.reaction.gamma) : std::string("auto"));
    rep.add("reaction.delta", s.reaction.delta ? format_real(*s.reaction.delta) : std::string("auto"));
    rep.add("reaction.coefficients", list_text(s.reaction.coefficients));
    rep.add("kernel.family", s.kernel.family);
    rep.add("kernel.parameter", s.kernel.parameter);
    rep.add("solver.n_points", s.solver.n_points);
    rep.add("solver.dt", s.solver.dt);
    rep.add("solver.t_end", s.solver.t_end);
    rep.add("solver.n_modes", s.solver.n_modes);
    rep.add("solver.picard_tol", s.solver.picard_tol);
    rep.add("solver.picard_max_iter", s.solver.picard_max_iter);
    rep.add("solver.window_steps", s.solver.window_steps);
    rep.add("solver.blowup_threshold", s.solver.blowup_threshold);
    rep.add("solver.snapshot_stride", s.solver.snapshot_stride);
    rep.add("ic.kind", s.initial.kind);
    rep.add("ic.mode", s.initial.mode);
    rep.add("ic.amplitude", s.initial.amplitude);
    rep.add("ic.center", s.initial.center);
    rep.add("ic.width", s.initial.width);
    rep.add("ic.samples", list_text(s.initial.samples));
    return rep.str();
}

std::string scenario_hash(const Scenario& s) { return hash_hex(fnv1a64(serialize(s))); }

Scenario load_scenario(const std::string& ref, const std::vector<std::string>& overrides) {
    Scenario s;
    std::error_code ec;
    if (std::filesystem::is_regular_file(ref, ec)) {
        std::ifstream in(ref);
        if (!in) throw Error(ErrorKind::io, "cannot read scenario '" + ref + "'");
        std::stringstream buf;
        buf << in.rdbuf();
        s = parse_scenario(buf.str());
    } else if (ref == kBuiltinScenario) {
        s = builtin_scenario();
    } else {
        throw Error(ErrorKind::parse, "no scenario file '" + ref + "'");
    }
    for (const auto& o : overrides) apply_override(s, o);
    s.validate();
    return s;
}

}  // namespace pdestab::cli
