#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "pdestab/funcspace.hpp"

namespace pdestab {

enum class ReactionKind { polynomial_odd, cubic, custom };

std::string_view to_string(ReactionKind kind) noexcept;

/// Declared constants of the sector conditions
///   u (f(x,u) - q u) <= gamma u^2 - B |u|^b
///   |f(x,u) - q u|   <= gamma |u| + delta |u|^(b-1)
struct SectorConstants {
    double q = 0.0;
    double gamma = 0.0;
    double delta = 0.0;
    double B = 0.0;
    double b = 2.0;
};

/// Pointwise reaction f(x, u).
///
/// polynomial_odd: f = q u - B sgn(u) |u|^(b-1)
/// cubic:          f = q u - B u^3             (declares b = 4)
/// custom:         caller-supplied pure callable with declared constants
///
/// The analytic kinds declare gamma = 0 and delta = B unless overridden
/// with with_bounds(). Constants are never inferred for custom kinds.
class ReactionTerm {
public:
    using Pointwise = std::function<double(double x, double u)>;

    static ReactionTerm polynomial_odd(double q, double B, double b);
    static ReactionTerm cubic(double q, double B);
    static ReactionTerm custom(Pointwise f, SectorConstants declared, std::string label = "custom");

    /// Copy with different declared gamma and delta.
    ReactionTerm with_bounds(double gamma, double delta) const;

    ReactionKind kind() const noexcept { return kind_; }
    const SectorConstants& constants() const noexcept { return c_; }
    const std::string& label() const noexcept { return label_; }

    double operator()(double x, double u) const;

    /// F(u): f applied at every grid node.
    GridFunction apply(const GridFunction& u) const;

    /// Upper bound on |f(x,u) - f(x,v)| / |u - v| for |u|, |v| <= s.
    /// Closed form for the analytic kinds; sampled difference quotients
    /// for custom kinds.
    double lipschitz_modulus(double s) const;

private:
    ReactionTerm(ReactionKind kind, SectorConstants c, std::shared_ptr<const Pointwise> fn, std::string label);

    ReactionKind kind_;
    SectorConstants c_;
    std::shared_ptr<const Pointwise> fn_;
    std::string label_;
};

double evaluate(const ReactionTerm& f, double x, double u);

struct SectorVerdict {
    bool growth_ok = false;           // u(f - qu) <= gamma u^2 - B|u|^b on the sample grid
    bool bound_ok = false;            // |f - qu| <= gamma|u| + delta|u|^(b-1)
    double growth_margin = 0.0;       // min of rhs - lhs
    double bound_margin = 0.0;
    double worst_x = 0.0;
    double worst_u = 0.0;
    std::optional<bool> analytic;     // set for polynomial_odd and cubic

    bool pass() const noexcept { return growth_ok && bound_ok; }
};

/// Audits both sector inequalities on a uniform (x, u) grid over
/// [0,1] x [-u_max, u_max]. Needs u_max > 0 and samples >= 100.
SectorVerdict check_sector_bounds(const ReactionTerm& f, double u_max, std::size_t samples = 1000,
                                  std::size_t x_samples = 100);

struct TruncationLevel {
    double k_bar = 0.0;
};

/// (q/B)^(1/(b-2)) for q > 0, else 0. Throws certificate_inapplicable when
/// q > 0 but B = 0 or b = 2.
TruncationLevel truncation_level(const ReactionTerm& f);

}  // namespace pdestab
