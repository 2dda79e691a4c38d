#include "pdestab/reaction.hpp"

#include <algorithm>
#include <limits>

namespace pdestab {

std::string_view to_string(ReactionKind kind) noexcept {
    switch (kind) {
        case ReactionKind::polynomial_odd: return "polynomial_odd";
        case ReactionKind::cubic: return "cubic";
        case ReactionKind::custom: return "custom";
    }
    return "custom";
}

namespace {

void validate(const SectorConstants& c) {
    for (double v : {c.q, c.gamma, c.delta, c.B, c.b}) {
        if (!std::isfinite(v)) throw Error(ErrorKind::domain, "reaction constants must be finite");
    }
    if (c.b < 2.0) throw Error(ErrorKind::domain, "reaction exponent b must be >= 2");
    if (c.gamma < 0.0 || c.delta < 0.0 || c.B < 0.0) {
        throw Error(ErrorKind::domain, "reaction constants gamma, delta, B must be >= 0");
    }
}

}  // namespace

ReactionTerm::ReactionTerm(ReactionKind kind, SectorConstants c, std::shared_ptr<const Pointwise> fn,
                           std::string label)
    : kind_(kind), c_(c), fn_(std::move(fn)), label_(std::move(label)) {
    validate(c_);
}

ReactionTerm ReactionTerm::polynomial_odd(double q, double B, double b) {
    return ReactionTerm(ReactionKind::polynomial_odd, SectorConstants{q, 0.0, B, B, b}, nullptr,
                        "polynomial_odd");
}

ReactionTerm ReactionTerm::cubic(double q, double B) {
    return ReactionTerm(ReactionKind::cubic, SectorConstants{q, 0.0, B, B, 4.0}, nullptr, "cubic");
}

ReactionTerm ReactionTerm::custom(Pointwise f, SectorConstants declared, std::string label) {
    if (!f) throw Error(ErrorKind::precondition, "custom reaction needs a callable");
    return ReactionTerm(ReactionKind::custom, declared, std::make_shared<const Pointwise>(std::move(f)),
                        std::move(label));
}

ReactionTerm ReactionTerm::with_bounds(double gamma, double delta) const {
    SectorConstants c = c_;
    c.gamma = gamma;
    c.delta = delta;
    return ReactionTerm(kind_, c, fn_, label_);
}

double ReactionTerm::operator()(double x, double u) const {
    switch (kind_) {
        case ReactionKind::cubic: return c_.q * u - c_.B * (u * u * u);
        case ReactionKind::polynomial_odd: {
            const double m = c_.B * std::pow(std::abs(u), c_.b - 1.0);
            return c_.q * u - (u > 0.0 ? m : (u < 0.0 ? -m : 0.0));
        }
        case ReactionKind::custom: return (*fn_)(x, u);
    }
    return 0.0;
}

GridFunction ReactionTerm::apply(const GridFunction& u) const {
    std::vector<double> v(u.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = (*this)(u.x(i), u[i]);
    return GridFunction(std::move(v));
}

double ReactionTerm::lipschitz_modulus(double s) const {
    s = std::abs(s);
    if (kind_ != ReactionKind::custom) {
        return std::abs(c_.q) + c_.B * (c_.b - 1.0) * std::pow(s, c_.b - 2.0);
    }
    constexpr std::size_t nu = 2001;
    constexpr std::size_t nx = 51;
    double worst = 0.0;
    for (std::size_t ix = 0; ix < nx; ++ix) {
        const double x = static_cast<double>(ix) / (nx - 1);
        double prev = (*this)(x, -s);
        for (std::size_t iu = 1; iu < nu; ++iu) {
            const double u = -s + 2.0 * s * static_cast<double>(iu) / (nu - 1);
            const double cur = (*this)(x, u);
            if (s > 0.0) worst = std::max(worst, std::abs(cur - prev) / (2.0 * s / (nu - 1)));
            prev = cur;
        }
    }
    return worst;
}

double evaluate(const ReactionTerm& f, double x, double u) {
    if (!(x >= 0.0 && x <= 1.0)) throw Error(ErrorKind::domain, "x must lie in [0, 1]");
    return f(x, u);
}

SectorVerdict check_sector_bounds(const ReactionTerm& f, double u_max, std::size_t samples,
                                  std::size_t x_samples) {
    if (!(u_max > 0.0)) throw Error(ErrorKind::precondition, "u_max must be positive");
    if (samples < 100) throw Error(ErrorKind::precondition, "need at least 100 u samples");
    if (x_samples < 2) x_samples = 2;

    const SectorConstants& c = f.constants();
    SectorVerdict v;
    v.growth_margin = std::numeric_limits<double>::infinity();
    v.bound_margin = std::numeric_limits<double>::infinity();
    v.growth_ok = true;
    v.bound_ok = true;
    double worst_scaled = std::numeric_limits<double>::infinity();

    for (std::size_t ix = 0; ix < x_samples; ++ix) {
        const double x = static_cast<double>(ix) / static_cast<double>(x_samples - 1);
        for (std::size_t iu = 0; iu < samples; ++iu) {
            const double u = -u_max + 2.0 * u_max * static_cast<double>(iu) / static_cast<double>(samples - 1);
            const double fu = f(x, u);
            const double au = std::abs(u);
            const double excess = fu - c.q * u;
            const double ub = std::pow(au, c.b);

            const double growth_lhs = u * excess;
            const double growth_rhs = c.gamma * u * u - c.B * ub;
            const double bound_lhs = std::abs(excess);
            const double bound_rhs = c.gamma * au + c.delta * std::pow(au, c.b - 1.0);

            // Cancellation in f - qu leaves rounding noise of order eps times
            // the largest term involved.
            const double scale = std::abs(fu) + std::abs(c.q * u) + c.gamma * au + c.B * ub / std::max(au, 1e-300)
                                 + c.delta * std::pow(au, c.b - 1.0);
            const double tol = 64.0 * std::numeric_limits<double>::epsilon() * scale;

            const double gm = growth_rhs - growth_lhs;
            const double bm = bound_rhs - bound_lhs;
            if (gm < -tol * au) v.growth_ok = false;
            if (bm < -tol) v.bound_ok = false;
            v.growth_margin = std::min(v.growth_margin, gm);
            v.bound_margin = std::min(v.bound_margin, bm);
            const double scaled = std::min(gm / std::max(1.0, au * scale), bm / std::max(1.0, scale));
            if (scaled < worst_scaled) {
                worst_scaled = scaled;
                v.worst_x = x;
                v.worst_u = u;
            }
        }
    }
    if (f.kind() != ReactionKind::custom) {
        // u (f - qu) = -B|u|^b exactly, so the growth condition holds for any
        // gamma >= 0 and the bound condition needs delta >= B.
        v.analytic = c.delta >= c.B;
    }
    return v;
}

TruncationLevel truncation_level(const ReactionTerm& f) {
    const SectorConstants& c = f.constants();
    if (c.q <= 0.0) return {0.0};
    if (!(c.B > 0.0) || !(c.b > 2.0)) {
        throw Error(ErrorKind::certificate_inapplicable, "q > 0 requires B > 0 and b > 2");
    }
    return {std::pow(c.q / c.B, 1.0 / (c.b - 2.0))};
}

}  // namespace pdestab
