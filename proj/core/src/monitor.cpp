#include "pdestab/monitor.hpp"

#include <algorithm>
#include <cmath>

namespace pdestab {

double lyapunov(const GridFunction& u, const GridFunction& k_samples, double r) {
    const double l2sq = inner_product(u, u);
    const double kin = inner_product(k_samples, u);
    return 0.5 * l2sq + 0.5 * r * kin * kin;
}

double lyapunov(const GridFunction& u, const Kernel& k, double r) {
    return lyapunov(u, k.sampled(u.size()), r);
}

namespace {

double slack(double bound) { return 1e-9 + 1e-6 * std::abs(bound); }

void require_boundary_zero(const GridFunction& u, bool both) {
    if (std::abs(u.front()) > 1e-8 || (both && std::abs(u.back()) > 1e-8)) {
        throw Error(ErrorKind::precondition, both ? "u must vanish at both endpoints" : "u must vanish at x = 0");
    }
}

}  // namespace

EstimateReport check_estimates(const SimulationTrace& trace, const StabilityCertificate& cert, const PsiBound& psi,
                               const Kernel& k, const InitialCondition& u0) {
    const GridFunction& u0p = u0.profile();
    const double l2_0 = lp_norm(u0p, 2.0);
    const double sup_0 = lp_norm(u0p, kInfinity);
    const double h1_0 = lp_norm(derivative(u0p), 2.0);
    const double knorm = std::sqrt(k.norm2_sq());

    EstimateReport rep;
    rep.sup_cap = sup_norm_cap(cert, k, sup_0, l2_0);
    rep.psi_at_cap = psi(rep.sup_cap);
    rep.h1_bound = h1_0 + rep.psi_at_cap * l2_0;
    const double h1_sum = h1_0 + l2_0;
    rep.h1_lagrange_bound =
        h1_sum * (1.0 + cert.G + psi(cert.k_bar + (1.0 + cert.G * std::abs(cert.r) * knorm) * h1_sum));
    const double agmon_core = std::sqrt(l2_0 * (h1_0 + rep.psi_at_cap * l2_0));
    rep.sup_decay_constant = std::sqrt(2.0 * cert.G) * agmon_core;
    rep.sup_decay_constant_alt = kSqrt2 * cert.G * agmon_core;

    const double inf = kInfinity;
    rep.l2_decay_margin = inf;
    rep.sup_decay_margin = inf;
    rep.h1_bound_margin = inf;
    rep.sup_cap_margin = inf;
    rep.h1_lagrange_margin = inf;
    rep.lyapunov_margin = inf;
    rep.l2_decay_ok = rep.sup_decay_shape_ok = rep.h1_bound_ok = rep.sup_cap_ok = rep.h1_lagrange_ok =
        rep.lyapunov_monotone_ok = true;

    auto check = [](double value, double bound, double& margin, bool& ok) {
        margin = std::min(margin, bound - value);
        if (!(value <= bound + slack(bound))) ok = false;
    };

    for (std::size_t i = 0; i < trace.size(); ++i) {
        const double t = trace.times[i];
        const double l2 = trace.l2_norms[i];
        const double sup = trace.sup_norms[i];
        const double h1 = trace.h1_seminorms[i];
        check(l2, cert.G * std::exp(-cert.sigma * t) * l2_0, rep.l2_decay_margin, rep.l2_decay_ok);
        check(sup, rep.sup_decay_constant * std::exp(-0.5 * cert.sigma * t), rep.sup_decay_margin,
              rep.sup_decay_shape_ok);
        check(h1, rep.h1_bound, rep.h1_bound_margin, rep.h1_bound_ok);
        check(sup, rep.sup_cap, rep.sup_cap_margin, rep.sup_cap_ok);
        check(h1 + l2, rep.h1_lagrange_bound, rep.h1_lagrange_margin, rep.h1_lagrange_ok);
        if (sup_0 > 0.0) rep.sup_decay_ratio = std::max(rep.sup_decay_ratio, sup * std::exp(0.5 * cert.sigma * t) / sup_0);
        if (i > 0) {
            const double prev = trace.lyapunov_values[i - 1];
            const double rise = trace.lyapunov_values[i] - prev;
            rep.lyapunov_margin = std::min(rep.lyapunov_margin, -rise);
            if (!(rise <= slack(prev))) rep.lyapunov_monotone_ok = false;
        }
        if (!std::isfinite(l2) || !std::isfinite(sup) || !std::isfinite(h1)) {
            rep.l2_decay_ok = rep.sup_decay_shape_ok = rep.h1_bound_ok = rep.sup_cap_ok = rep.h1_lagrange_ok = false;
        }
    }
    if (trace.terminated_by == Termination::blowup_detected) {
        rep.sup_cap_ok = false;
    }

    if (trace.terminated_by == Termination::t_end_reached) {
        try {
            rep.sigma_fitted = fit_decay_rate(trace.times, trace.l2_norms);
        } catch (const Error&) {
            rep.sigma_fitted = std::numeric_limits<double>::quiet_NaN();
        }
    }
    return rep;
}

KeyValueReport estimate_report(const EstimateReport& r) {
    KeyValueReport rep;
    rep.add("all_ok", r.all_ok());
    rep.add("sigma_fitted", r.sigma_fitted);
    rep.add("l2_decay_ok", r.l2_decay_ok);
    rep.add("l2_decay_margin", r.l2_decay_margin);
    rep.add("sup_decay_shape_ok", r.sup_decay_shape_ok);
    rep.add("sup_decay_margin", r.sup_decay_margin);
    rep.add("sup_decay_constant", r.sup_decay_constant);
    rep.add("sup_decay_constant_alt", r.sup_decay_constant_alt);
    rep.add("sup_decay_ratio", r.sup_decay_ratio);
    rep.add("h1_bound_ok", r.h1_bound_ok);
    rep.add("h1_bound", r.h1_bound);
    rep.add("h1_bound_margin", r.h1_bound_margin);
    rep.add("sup_cap_ok", r.sup_cap_ok);
    rep.add("sup_cap", r.sup_cap);
    rep.add("sup_cap_margin", r.sup_cap_margin);
    rep.add("psi_at_cap", r.psi_at_cap);
    rep.add("h1_lagrange_ok", r.h1_lagrange_ok);
    rep.add("h1_lagrange_bound", r.h1_lagrange_bound);
    rep.add("h1_lagrange_margin", r.h1_lagrange_margin);
    rep.add("lyapunov_monotone_ok", r.lyapunov_monotone_ok);
    rep.add("lyapunov_margin", r.lyapunov_margin);
    return rep;
}

double fit_decay_rate(std::span<const double> times, std::span<const double> norms) {
    if (times.size() != norms.size()) throw Error(ErrorKind::precondition, "times and norms differ in length");
    std::vector<double> ts, ls;
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (norms[i] > 0.0 && std::isfinite(norms[i]) && std::isfinite(times[i])) {
            ts.push_back(times[i]);
            ls.push_back(std::log(norms[i]));
        }
    }
    if (ts.size() < 10) throw Error(ErrorKind::insufficient_data, "need at least 10 positive samples");
    const std::size_t start = ts.size() / 2;
    const double m = static_cast<double>(ts.size() - start);
    double st = 0.0, sl = 0.0;
    for (std::size_t i = start; i < ts.size(); ++i) {
        st += ts[i];
        sl += ls[i];
    }
    const double tbar = st / m;
    const double lbar = sl / m;
    double stt = 0.0, stl = 0.0;
    for (std::size_t i = start; i < ts.size(); ++i) {
        stt += (ts[i] - tbar) * (ts[i] - tbar);
        stl += (ts[i] - tbar) * (ls[i] - lbar);
    }
    if (!(stt > 0.0)) throw Error(ErrorKind::insufficient_data, "sample times are not distinct");
    return -stl / stt;
}

namespace {

double sine_moment(const GridFunction& k) {
    return inner_product(k, sine_mode(1, k.size()));
}

InequalitySides wirtinger_sides(double u_sq, double du_sq, double ku, double k_sq, double k1, double epsilon) {
    const double d = (1.0 + epsilon) * k_sq - k1 * k1;
    if (!(d > 0.0)) throw Error(ErrorKind::degenerate_kernel, "(1+eps)|k|^2 - k1^2 must be positive");
    const double c = ((1.0 + epsilon) * k_sq + (3.0 * epsilon - 1.0) * k1 * k1) / d;
    const double pi2 = kPi * kPi;
    return {c * pi2 * u_sq, du_sq + 3.0 * pi2 * epsilon * (1.0 + epsilon) / d * ku * ku};
}

}  // namespace

InequalitySides kernel_wirtinger_check(const GridFunction& u, const GridFunction& du, const GridFunction& k,
                                       double epsilon) {
    require_same_grid(u, du);
    require_same_grid(u, k);
    require_boundary_zero(u, true);
    if (!(epsilon >= 0.0)) throw Error(ErrorKind::domain, "epsilon must be >= 0");
    const double k_sq = inner_product(k, k);
    if (!(k_sq > 0.0)) throw Error(ErrorKind::degenerate_kernel, "kernel must be nonzero");
    return wirtinger_sides(inner_product(u, u), inner_product(du, du), inner_product(k, u), k_sq, sine_moment(k),
                           epsilon);
}

InequalitySides kernel_wirtinger_check(const GridFunction& u, const GridFunction& k, double epsilon) {
    return kernel_wirtinger_check(u, derivative(u), k, epsilon);
}

InequalitySides boundary_wirtinger_check(const GridFunction& u, const GridFunction& du, const Kernel& k,
                                         double epsilon) {
    require_same_grid(u, du);
    require_boundary_zero(u, false);
    if (!(epsilon >= 0.0)) throw Error(ErrorKind::domain, "epsilon must be >= 0");
    const std::size_t n = u.size();
    const GridFunction ks = k.sampled(n);
    const GridFunction dks = k.sampled_derivative(n);
    const double ku = inner_product(ks, u);
    InequalitySides s = wirtinger_sides(inner_product(u, u), inner_product(du, du), ku, k.norm2_sq(), k.k1(), epsilon);
    const double e3 = 3.0 * epsilon - 1.0;
    const double pi2 = kPi * kPi;
    const double u1 = u.back();
    s.rhs += u1 * u1 * (k.norm_dk_sq() + e3 * pi2 * k.norm2_sq()) - 2.0 * u1 * (e3 * pi2 * ku + inner_product(dks, du));
    return s;
}

InequalitySides boundary_wirtinger_check(const GridFunction& u, const Kernel& k, double epsilon) {
    return boundary_wirtinger_check(u, derivative(u), k, epsilon);
}

InequalitySides agmon_check(const GridFunction& u, const GridFunction& du) {
    require_same_grid(u, du);
    require_boundary_zero(u, false);
    return {lp_norm(u, kInfinity), kSqrt2 * std::sqrt(lp_norm(u, 2.0) * lp_norm(du, 2.0))};
}

InequalitySides agmon_check(const GridFunction& u) { return agmon_check(u, derivative(u)); }

EnergyIdentityReport check_energy_identity(const SimulationTrace& trace, double skip_time) {
    const auto& e = trace.transformed_energy;
    const auto& rate = trace.transformed_energy_rate;
    if (e.size() != rate.size() || e.size() > trace.times.size()) {
        throw Error(ErrorKind::precondition, "trace carries no aligned energy diagnostics");
    }
    EnergyIdentityReport rep;
    for (std::size_t i = 1; i + 1 < e.size(); ++i) {
        if (trace.times[i] < skip_time) {
            ++rep.skipped;
            continue;
        }
        const double dedt = (e[i + 1] - e[i - 1]) / (trace.times[i + 1] - trace.times[i - 1]);
        rep.max_error = std::max(rep.max_error, std::abs(dedt - rate[i]));
        rep.max_rate = std::max(rep.max_rate, std::abs(rate[i]));
        ++rep.checked;
    }
    if (rep.checked == 0) throw Error(ErrorKind::insufficient_data, "no samples left for the energy check");
    return rep;
}

}  // namespace pdestab
