#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pdestab/funcspace.hpp"
#include "pdestab/kernel.hpp"
#include "pdestab/reaction.hpp"

namespace pdestab {

struct SolverConfig {
    std::size_t n_points = kDefaultPoints;
    double dt = 1e-4;
    double t_end = 1.0;
    std::size_t n_modes = 48;
    double picard_tol = 1e-10;
    std::size_t picard_max_iter = 50;
    std::size_t window_steps = 50;
    double blowup_threshold = 1e6;
    std::size_t snapshot_stride = 100;

    /// Throws precondition unless the grid is admissible, dt, t_end and the
    /// threshold are positive and dt <= 0.1 / max(1, |q|).
    void validate(double q) const;
};

enum class Termination { t_end_reached, blowup_detected };

std::string_view to_string(Termination t) noexcept;
std::optional<Termination> parse_termination(std::string_view name) noexcept;

/// Residuals of u(0) = 0 and u(1) = -r <k, u>.
struct Compatibility {
    double left = 0.0;
    double right = 0.0;
    double worst() const noexcept { return std::max(std::abs(left), std::abs(right)); }
};

Compatibility compatibility_residual(const GridFunction& u, const Kernel& k, double r);

/// Initial profile satisfying the closed-loop boundary conditions.
class InitialCondition {
public:
    inline static constexpr double kTolerance = 1e-8;

    /// Rejects (precondition) a profile whose residuals exceed kTolerance.
    static InitialCondition exact(GridFunction profile, const Kernel& k, double r);

    /// Adds c0 (1 - x) + a x to the raw profile so that both boundary
    /// conditions hold; c0 and a solve the affine boundary equations.
    static InitialCondition corrected(const GridFunction& raw, const Kernel& k, double r);

    const GridFunction& profile() const noexcept { return profile_; }

private:
    explicit InitialCondition(GridFunction profile) : profile_(std::move(profile)) {}
    GridFunction profile_;
};

GridFunction mode_profile(std::size_t n_points, std::size_t mode, double amplitude);
GridFunction bump_profile(std::size_t n_points, double center, double width, double amplitude);

struct SimulationTrace {
    std::string method;
    std::vector<double> times;
    std::vector<double> l2_norms;
    std::vector<double> sup_norms;
    std::vector<double> h1_seminorms;
    std::vector<double> lyapunov_values;
    std::vector<double> boundary_inputs;  // U(t) = -r <k, u[t]>

    std::vector<double> snapshot_times;
    std::vector<GridFunction> snapshots;

    // Spectral path only, aligned with times: |w_x|^2 and the right side
    // -2p |w_xx|^2 - 2 <F(w), w_xx> of its evolution law.
    std::vector<double> transformed_energy;
    std::vector<double> transformed_energy_rate;
    std::size_t max_picard_iterations = 0;

    Termination terminated_by = Termination::t_end_reached;

    std::size_t size() const noexcept { return times.size(); }
};

/// Crank-Nicolson diffusion with Heun reaction. The feedback boundary
/// value is eliminated exactly at each stage by superposing the response
/// to a unit boundary value.
SimulationTrace simulate_fd(const SolverConfig& cfg, const Kernel& k, double r, double p, const ReactionTerm& f,
                            const InitialCondition& u0);

/// Works on w = K u with homogeneous Dirichlet data. Each window of
/// window_steps * dt solves the truncated sine-mode Duhamel equation by
/// Picard iteration, with exponential product integration of the
/// piecewise-linear forcing. Throws oracle_divergence naming the window
/// when Picard does not converge.
SimulationTrace simulate_spectral(const SolverConfig& cfg, const Kernel& k, double r, double p,
                                  const ReactionTerm& f, const InitialCondition& u0);

/// sum_{n>=1} n^(-4/3)
double zeta_four_thirds();

/// Admissible window length of the local existence argument:
///   (9 p^2 pi^4 / 4) (sqrt2 L zeta(4/3) max(2, (sqrt2 w0 + M) M^(-1/3)))^-3
/// with L_value = L(sqrt2 w0_sup + M) supplied by the caller.
double picard_window(double w0_sup, double M, double L_value, double p);

}  // namespace pdestab
