#pragma once

#include <limits>
#include <span>

#include "pdestab/certificate.hpp"
#include "pdestab/kernel.hpp"
#include "pdestab/report.hpp"
#include "pdestab/solver.hpp"

namespace pdestab {

/// V(u) = |u|^2 / 2 + (r/2) <k, u>^2
double lyapunov(const GridFunction& u, const Kernel& k, double r);
double lyapunov(const GridFunction& u, const GridFunction& k_samples, double r);

struct EstimateReport {
    double sigma_fitted = std::numeric_limits<double>::quiet_NaN();

    bool l2_decay_ok = false;          // |u(t)|_2 <= G e^{-sigma t} |u0|_2
    bool sup_decay_shape_ok = false;   // |u(t)|_inf <= C e^{-sigma t / 2}
    bool h1_bound_ok = false;          // |u_x(t)|_2 <= |u0'|_2 + psi(M) |u0|_2
    bool sup_cap_ok = false;           // |u(t)|_inf <= M
    bool h1_lagrange_ok = false;       // |u_x|_2 + |u|_2 <= combined H1 bound
    bool lyapunov_monotone_ok = false; // V non-increasing up to slack

    // Smallest (bound - value) seen along the trace, per estimate.
    double l2_decay_margin = 0.0;
    double sup_decay_margin = 0.0;
    double h1_bound_margin = 0.0;
    double sup_cap_margin = 0.0;
    double h1_lagrange_margin = 0.0;
    double lyapunov_margin = 0.0;

    double sup_cap = 0.0;                 // M
    double psi_at_cap = 0.0;              // psi(M)
    double h1_bound = 0.0;
    double h1_lagrange_bound = 0.0;
    double sup_decay_constant = 0.0;      // sqrt(2G) sqrt(|u0|(|u0'| + psi(M)|u0|)), enforced
    double sup_decay_constant_alt = 0.0;  // sqrt(2) G sqrt(...), reported only
    double sup_decay_ratio = 0.0;         // max_t sup(t) e^{sigma t / 2} / sup(0)

    bool all_ok() const noexcept {
        return l2_decay_ok && sup_decay_shape_ok && h1_bound_ok && sup_cap_ok && h1_lagrange_ok &&
               lyapunov_monotone_ok;
    }
};

/// Checks every decay and boundedness estimate pointwise along the trace.
/// Initial norms come from u0, not from the trace. Pointwise slack on
/// upper bounds is 1e-9 + 1e-6 * bound; Lyapunov steps may rise by at
/// most 1e-9 + 1e-6 * V.
EstimateReport check_estimates(const SimulationTrace& trace, const StabilityCertificate& cert, const PsiBound& psi,
                               const Kernel& k, const InitialCondition& u0);

KeyValueReport estimate_report(const EstimateReport& report);

/// Least-squares slope of log(norm) against time over the trailing half
/// of the positive samples; returns minus the slope. Needs >= 10 positive
/// samples (insufficient_data otherwise).
double fit_decay_rate(std::span<const double> times, std::span<const double> norms);

struct InequalitySides {
    double lhs = 0.0;
    double rhs = 0.0;
    double margin() const noexcept { return rhs - lhs; }
    /// Holds up to rel * scale.
    bool holds(double scale, double rel = 1e-9) const noexcept { return lhs <= rhs + rel * scale; }
};

/// Extended Wirtinger inequality for u(0) = u(1) = 0 and nonzero k:
///   C pi^2 |u|^2 <= |u'|^2 + 3 pi^2 e (1+e) / D <k,u>^2
/// with D = (1+e)|k|^2 - k1^2 and C = ((1+e)|k|^2 + (3e-1)k1^2) / D.
/// The overload taking du uses it in place of the finite-difference u'.
InequalitySides kernel_wirtinger_check(const GridFunction& u, const GridFunction& k, double epsilon);
InequalitySides kernel_wirtinger_check(const GridFunction& u, const GridFunction& du, const GridFunction& k,
                                       double epsilon);

/// The same inequality for u(0) = 0 only, with the boundary terms in u(1)
/// that appear after subtracting u(1) k.
InequalitySides boundary_wirtinger_check(const GridFunction& u, const Kernel& k, double epsilon);
InequalitySides boundary_wirtinger_check(const GridFunction& u, const GridFunction& du, const Kernel& k,
                                         double epsilon);

/// |u|_inf <= sqrt(2) sqrt(|u|_2 |u'|_2) for u(0) = 0.
InequalitySides agmon_check(const GridFunction& u);
InequalitySides agmon_check(const GridFunction& u, const GridFunction& du);

struct EnergyIdentityReport {
    double max_error = 0.0;       // max |dE/dt - rate| over checked samples
    double max_rate = 0.0;        // max |rate| over checked samples
    std::size_t checked = 0;
    std::size_t skipped = 0;
    double relative_error() const noexcept { return max_rate > 0.0 ? max_error / max_rate : max_error; }
};

/// Compares central differences of trace.transformed_energy with
/// trace.transformed_energy_rate, ignoring samples with t < skip_time.
EnergyIdentityReport check_energy_identity(const SimulationTrace& trace, double skip_time = 0.0);

}  // namespace pdestab
