#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "pdestab/error.hpp"

namespace pdestab {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSqrt2 = 1.41421356237309504880;
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

inline constexpr std::size_t kDefaultPoints = 201;
inline constexpr std::size_t kDefaultModes = 64;

/// Real function sampled on the uniform grid x_i = i/(n-1) over [0, 1].
///
/// The number of samples is odd and at least 3 so that composite Simpson
/// quadrature applies on every grid. Values must be finite.
class GridFunction {
public:
    explicit GridFunction(std::vector<double> values);

    static GridFunction zeros(std::size_t n_points);

    template <typename Fn>
    static GridFunction sample(std::size_t n_points, Fn&& fn) {
        check_size(n_points);
        std::vector<double> v(n_points);
        const double h = 1.0 / static_cast<double>(n_points - 1);
        for (std::size_t i = 0; i < n_points; ++i) {
            v[i] = fn(static_cast<double>(i) * h);
        }
        return GridFunction(std::move(v));
    }

    std::size_t size() const noexcept { return values_.size(); }
    double spacing() const noexcept { return 1.0 / static_cast<double>(values_.size() - 1); }
    double x(std::size_t i) const noexcept { return static_cast<double>(i) * spacing(); }

    double operator[](std::size_t i) const noexcept { return values_[i]; }
    double front() const noexcept { return values_.front(); }
    double back() const noexcept { return values_.back(); }
    std::span<const double> values() const noexcept { return values_; }

    static void check_size(std::size_t n_points);

private:
    std::vector<double> values_;
};

GridFunction operator+(const GridFunction& a, const GridFunction& b);
GridFunction operator-(const GridFunction& a, const GridFunction& b);
GridFunction operator*(double s, const GridFunction& a);
GridFunction pointwise_product(const GridFunction& a, const GridFunction& b);

void require_same_grid(const GridFunction& a, const GridFunction& b);

/// Composite Simpson approximation of the integral over [0, 1].
double integrate(const GridFunction& u);

double inner_product(const GridFunction& u, const GridFunction& v);

/// L^p norm for p >= 1; pass kInfinity for the sup norm (max over samples).
double lp_norm(const GridFunction& u, double p);

/// Second-order central differences in the interior, second-order
/// one-sided stencils at both endpoints.
GridFunction derivative(const GridFunction& u);

/// Running integral F(x_i) = int_0^{x_i} f. Composite Simpson at even
/// nodes; at odd nodes i >= 3 the last three panels use the 3/8 rule and
/// node 1 uses the trapezoid rule. Every entry depends only on f[0..i].
std::vector<double> cumulative_integral(std::span<const double> f, double h);
GridFunction cumulative_integral(const GridFunction& f);

/// Fourier coefficients in the orthonormal basis phi_m = sqrt(2) sin(m pi x).
struct SineCoefficients {
    std::vector<double> modes;  // modes[m-1] = <u, phi_m>

    double coefficient(std::size_t m) const { return modes.at(m - 1); }
    std::size_t size() const noexcept { return modes.size(); }
};

/// Samples of phi_m = sqrt(2) sin(m pi x).
GridFunction sine_mode(std::size_t m, std::size_t n_points);

/// Precomputed table of phi_1..phi_M on one grid, with Simpson weights.
/// Shared by sine_project/sine_reconstruct and the spectral solver.
class SineBasis {
public:
    SineBasis(std::size_t n_points, std::size_t n_modes);

    std::size_t n_points() const noexcept { return n_points_; }
    std::size_t n_modes() const noexcept { return n_modes_; }

    /// out[m-1] = Simpson(<u, phi_m>)
    void project(std::span<const double> u, std::span<double> out) const;
    /// out[i] = sum_m c[m-1] phi_m(x_i)
    void reconstruct(std::span<const double> c, std::span<double> out) const;

private:
    std::size_t n_points_;
    std::size_t n_modes_;
    std::vector<double> table_;     // row-major [mode][point]
    std::vector<double> weighted_;  // table_ times Simpson weights
};

/// Requires u(0) = u(1) = 0 within 1e-8.
SineCoefficients sine_project(const GridFunction& u, std::size_t n_modes = kDefaultModes);
GridFunction sine_reconstruct(const SineCoefficients& c, std::size_t n_points = kDefaultPoints);

}  // namespace pdestab
