#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pdestab/kernel.hpp"
#include "pdestab/reaction.hpp"
#include "pdestab/report.hpp"

namespace pdestab {

/// Two sides of the stabilization condition at a given epsilon; the
/// condition holds when lhs < rhs.
struct ConditionSides {
    double lhs = 0.0;
    double rhs = 0.0;
    double margin() const noexcept { return rhs - lhs; }
};

ConditionSides stabilization_condition_sides(const Kernel& k, double r, double p, const ReactionTerm& f,
                                             double epsilon);

/// ((1+e)|k|^2 + (3e-1) k1^2) / ((1+e)|k|^2 - k1^2); always below 4.
double wirtinger_coefficient_ratio(const Kernel& k, double epsilon);

inline constexpr double kConditionMargin = 1e-10;
inline constexpr double kEpsilonScanMin = 1e-4;
inline constexpr double kEpsilonScanMax = 10.0;
inline constexpr std::size_t kEpsilonScanPoints = 200;

struct EpsilonSearch {
    std::optional<double> epsilon;  // absent when the best margin is not positive
    double best_epsilon = 0.0;
    double best_margin = 0.0;
    double scan_min = 0.0;
    double scan_max = kEpsilonScanMax;
};

/// Scans {0} and a log-spaced grid on [1e-4, 10], then refines the best
/// bracket by golden-section search.
EpsilonSearch find_epsilon(const Kernel& k, double r, double p, const ReactionTerm& f);

struct StabilityCertificate {
    double r = 0.0;
    double p = 0.0;
    double epsilon = 0.0;
    bool epsilon_searched = false;
    double scan_min = 0.0;
    double scan_max = 0.0;

    double lhs = 0.0;
    double rhs = 0.0;
    double phi = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
    double G = 0.0;
    double sigma = 0.0;
    double k_bar = 0.0;

    // Damping hypothesis B >= delta |r| |k|_b |k|_{b/(b-1)}.
    double damping_required = 0.0;

    bool r_sign_ok = false;
    bool damping_ok = false;
    bool condition_ok = false;
    bool truncation_ok = false;

    bool valid() const noexcept { return r_sign_ok && damping_ok && condition_ok && truncation_ok; }
    /// Names of the hypotheses that fail, in a fixed order.
    std::vector<std::string> failures() const;
};

/// Throws hypothesis_violation when 1 + |k|^2 r <= 0. When epsilon is
/// absent it is chosen by find_epsilon; if no positive margin exists the
/// margin-maximizing epsilon is kept and condition_ok is false.
StabilityCertificate build_certificate(const Kernel& k, double r, double p, const ReactionTerm& f,
                                       std::optional<double> epsilon = std::nullopt);

KeyValueReport certificate_report(const StabilityCertificate& cert);

/// Constructive bound psi(s) on the H1 growth, together with the operator
/// norm majorants it is built from.
class PsiBound {
public:
    double K_op_norm_bound() const noexcept { return k_op_; }
    double G_op_norm_bound() const noexcept { return g_op_; }

    double g(double s) const noexcept;
    double operator()(double s) const noexcept;

private:
    friend PsiBound psi_bound(const StabilityCertificate&, const Kernel&, const ReactionTerm&);

    double k_op_ = 1.0;
    double g_op_ = 0.0;
    double p_ = 1.0;
    double G_ = 1.0;
    double sigma_ = 1.0;
    double gamma_ = 0.0;
    double q_abs_ = 0.0;
    double delta_ = 0.0;
    double b_ = 2.0;
    double offset_ = 0.0;  // (1 + G)|r| |k|_2
};

/// Requires a valid certificate (certificate_inapplicable otherwise).
PsiBound psi_bound(const StabilityCertificate& cert, const Kernel& k, const ReactionTerm& f);

/// M = max{K_bar, |u0|_inf, G |r| |k|_2 |u0|_2}.
double sup_norm_cap(const StabilityCertificate& cert, const Kernel& k, double u0_sup, double u0_l2);

}  // namespace pdestab
