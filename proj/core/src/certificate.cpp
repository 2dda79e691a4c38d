#include "pdestab/certificate.hpp"

#include <algorithm>
#include <cmath>

namespace pdestab {

namespace {

double projection_gap(const Kernel& k, double epsilon) {
    const double d = (1.0 + epsilon) * k.norm2_sq() - k.k1() * k.k1();
    if (!(d > 0.0)) throw Error(ErrorKind::degenerate_kernel, "(1+eps)|k|^2 - k1^2 must be positive");
    return d;
}

void check_inputs(double p, double epsilon) {
    if (!(p > 0.0)) throw Error(ErrorKind::domain, "diffusivity p must be positive");
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) throw Error(ErrorKind::domain, "epsilon must be >= 0");
}

}  // namespace

ConditionSides stabilization_condition_sides(const Kernel& k, double r, double p, const ReactionTerm& f,
                                             double epsilon) {
    check_inputs(p, epsilon);
    const SectorConstants& c = f.constants();
    const double pi2 = kPi * kPi;
    const double nk = k.norm2_sq();
    const double k1sq = k.k1() * k.k1();
    const double d = projection_gap(k, epsilon);
    const double e3 = 3.0 * epsilon - 1.0;

    const double quad = r * r * (k.norm_dk_sq() + e3 * pi2 * nk - k.k_prime_1());
    const double lin = r * (2.0 * e3 * pi2 + c.q / p - k.mu());
    const double proj = 3.0 * pi2 * epsilon * (1.0 + epsilon) / d;

    ConditionSides s;
    s.lhs = std::max(0.0, quad + lin + proj);
    s.rhs = ((1.0 + epsilon) * nk + e3 * k1sq) / (d * nk) * pi2
            - (c.q + c.gamma * (1.0 + std::abs(r) * nk)) / (p * nk);
    return s;
}

double wirtinger_coefficient_ratio(const Kernel& k, double epsilon) {
    if (!(epsilon >= 0.0)) throw Error(ErrorKind::domain, "epsilon must be >= 0");
    const double k1sq = k.k1() * k.k1();
    return ((1.0 + epsilon) * k.norm2_sq() + (3.0 * epsilon - 1.0) * k1sq) / projection_gap(k, epsilon);
}

EpsilonSearch find_epsilon(const Kernel& k, double r, double p, const ReactionTerm& f) {
    auto margin = [&](double e) { return stabilization_condition_sides(k, r, p, f, e).margin(); };

    std::vector<double> grid;
    grid.reserve(kEpsilonScanPoints + 1);
    grid.push_back(0.0);
    const double l0 = std::log10(kEpsilonScanMin);
    const double l1 = std::log10(kEpsilonScanMax);
    for (std::size_t i = 0; i < kEpsilonScanPoints; ++i) {
        grid.push_back(std::pow(10.0, l0 + (l1 - l0) * static_cast<double>(i) / (kEpsilonScanPoints - 1)));
    }

    std::size_t best = 0;
    double best_m = margin(grid[0]);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double m = margin(grid[i]);
        if (m > best_m) {
            best_m = m;
            best = i;
        }
    }

    // Golden-section on the bracketing neighbours.
    double a = grid[best == 0 ? 0 : best - 1];
    double b = grid[std::min(best + 1, grid.size() - 1)];
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = margin(x1);
    double f2 = margin(x2);
    for (int it = 0; it < 100 && (b - a) > 1e-14 * std::max(1.0, b); ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = margin(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = margin(x1);
        }
    }
    double best_e = grid[best];
    for (double e : {x1, x2}) {
        const double m = margin(e);
        if (m > best_m) {
            best_m = m;
            best_e = e;
        }
    }

    EpsilonSearch out;
    out.best_epsilon = best_e;
    out.best_margin = best_m;
    out.scan_min = 0.0;
    out.scan_max = kEpsilonScanMax;
    if (best_m > kConditionMargin) out.epsilon = best_e;
    return out;
}

std::vector<std::string> StabilityCertificate::failures() const {
    std::vector<std::string> out;
    if (!r_sign_ok) out.emplace_back("r_sign");
    if (!damping_ok) out.emplace_back("damping");
    if (!condition_ok) out.emplace_back("condition");
    if (!truncation_ok) out.emplace_back("truncation");
    return out;
}

StabilityCertificate build_certificate(const Kernel& k, double r, double p, const ReactionTerm& f,
                                       std::optional<double> epsilon) {
    if (!std::isfinite(r)) throw Error(ErrorKind::domain, "gain r must be finite");
    if (!(p > 0.0)) throw Error(ErrorKind::domain, "diffusivity p must be positive");
    const double nk = k.norm2_sq();
    if (!(1.0 + nk * r > 0.0)) {
        throw Error(ErrorKind::hypothesis_violation, "r_sign: 1 + |k|^2 r must be positive");
    }

    StabilityCertificate c;
    c.r = r;
    c.p = p;
    c.r_sign_ok = true;

    if (epsilon) {
        check_inputs(p, *epsilon);
        c.epsilon = *epsilon;
    } else {
        const EpsilonSearch s = find_epsilon(k, r, p, f);
        c.epsilon = s.best_epsilon;
        c.epsilon_searched = true;
        c.scan_min = s.scan_min;
        c.scan_max = s.scan_max;
    }

    const ConditionSides sides = stabilization_condition_sides(k, r, p, f, c.epsilon);
    c.lhs = sides.lhs;
    c.rhs = sides.rhs;
    c.condition_ok = sides.margin() > kConditionMargin;
    c.phi = p * nk * sides.margin();
    c.c1 = 0.5 * (1.0 + std::min(0.0, r) * nk);
    c.c2 = 0.5 * (1.0 + std::max(0.0, r) * nk);
    c.G = std::sqrt(c.c2 / c.c1);
    c.sigma = c.phi / (2.0 * c.c2);

    const SectorConstants& sc = f.constants();
    if (sc.delta > 0.0 && r != 0.0) {
        const double conj = sc.b / (sc.b - 1.0);
        c.damping_required = sc.delta * std::abs(r) * k.lp_norm(sc.b) * k.lp_norm(conj);
    }
    // The worked example sits exactly on B = delta |r| |k|_b |k|_b', so
    // allow for rounding in the product.
    c.damping_ok = sc.B >= c.damping_required * (1.0 - 1e-12);

    try {
        c.k_bar = truncation_level(f).k_bar;
        c.truncation_ok = true;
    } catch (const Error&) {
        c.k_bar = kInfinity;
        c.truncation_ok = false;
    }
    return c;
}

KeyValueReport certificate_report(const StabilityCertificate& c) {
    KeyValueReport rep;
    rep.add("valid", c.valid());
    rep.add("epsilon", c.epsilon);
    rep.add("epsilon_searched", c.epsilon_searched);
    if (c.epsilon_searched) {
        rep.add("epsilon_scan_min", c.scan_min);
        rep.add("epsilon_scan_max", c.scan_max);
    }
    rep.add("condition_lhs", c.lhs);
    rep.add("condition_rhs", c.rhs);
    rep.add("condition_margin", c.rhs - c.lhs);
    rep.add("phi", c.phi);
    rep.add("c1", c.c1);
    rep.add("c2", c.c2);
    rep.add("G", c.G);
    rep.add("sigma", c.sigma);
    rep.add("k_bar", c.k_bar);
    rep.add("damping_required", c.damping_required);
    rep.add("r_sign_ok", c.r_sign_ok);
    rep.add("damping_ok", c.damping_ok);
    rep.add("condition_ok", c.condition_ok);
    rep.add("truncation_ok", c.truncation_ok);
    std::string fails;
    for (const auto& s : c.failures()) fails += (fails.empty() ? "" : ",") + s;
    rep.add("failed", fails.empty() ? std::string("none") : fails);
    return rep;
}

double PsiBound::g(double s) const noexcept {
    const double growth = b_ > 2.0 ? std::pow(std::abs(s), b_ - 2.0) : 1.0;
    return p_ * g_op_ + k_op_ * (gamma_ + q_abs_ + delta_ * growth);
}

double PsiBound::operator()(double s) const noexcept {
    const double gs = g(s);
    const double g_bar = gs * gs / (2.0 * p_);
    return G_ * std::sqrt(g_bar / (2.0 * sigma_)) + offset_;
}

PsiBound psi_bound(const StabilityCertificate& cert, const Kernel& k, const ReactionTerm& f) {
    if (!cert.valid()) throw Error(ErrorKind::certificate_inapplicable, "psi bound needs a valid certificate");
    const double ar = std::abs(cert.r);
    const SectorConstants& sc = f.constants();
    PsiBound b;
    b.k_op_ = 1.0 + ar * k.hs_norm();
    b.g_op_ = 2.0 * ar * k.sup_dk() + ar * k.hs_norm_second();
    b.p_ = cert.p;
    b.G_ = cert.G;
    b.sigma_ = cert.sigma;
    b.gamma_ = sc.gamma;
    b.q_abs_ = std::abs(sc.q);
    b.delta_ = sc.delta;
    b.b_ = sc.b;
    b.offset_ = (1.0 + cert.G) * ar * std::sqrt(k.norm2_sq());
    return b;
}

double sup_norm_cap(const StabilityCertificate& cert, const Kernel& k, double u0_sup, double u0_l2) {
    return std::max({cert.k_bar, std::abs(u0_sup), cert.G * std::abs(cert.r) * std::sqrt(k.norm2_sq()) * std::abs(u0_l2)});
}

}  // namespace pdestab
