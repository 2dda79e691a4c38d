#include "pdestab/funcspace.hpp"

#include <algorithm>
#include <string>

namespace pdestab {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::grid_mismatch: return "grid mismatch";
        case ErrorKind::domain: return "domain error";
        case ErrorKind::precondition: return "precondition violated";
        case ErrorKind::degenerate_kernel: return "degenerate kernel";
        case ErrorKind::certificate_inapplicable: return "certificate inapplicable";
        case ErrorKind::hypothesis_violation: return "hypothesis violated";
        case ErrorKind::oracle_divergence: return "oracle divergence";
        case ErrorKind::insufficient_data: return "insufficient data";
        case ErrorKind::parse: return "parse error";
        case ErrorKind::io: return "i/o error";
    }
    return "error";
}

namespace {

double simpson_weight(std::size_t i, std::size_t n) {
    if (i == 0 || i + 1 == n) return 1.0;
    return (i % 2 == 1) ? 4.0 : 2.0;
}

}  // namespace

void GridFunction::check_size(std::size_t n_points) {
    if (n_points < 3 || n_points % 2 == 0) {
        throw Error(ErrorKind::precondition,
                    "grid needs an odd number of points >= 3, got " + std::to_string(n_points));
    }
}

GridFunction::GridFunction(std::vector<double> values) : values_(std::move(values)) {
    check_size(values_.size());
    for (double v : values_) {
        if (!std::isfinite(v)) throw Error(ErrorKind::domain, "grid function values must be finite");
    }
}

GridFunction GridFunction::zeros(std::size_t n_points) {
    check_size(n_points);
    return GridFunction(std::vector<double>(n_points, 0.0));
}

void require_same_grid(const GridFunction& a, const GridFunction& b) {
    if (a.size() != b.size()) {
        throw Error(ErrorKind::grid_mismatch,
                    std::to_string(a.size()) + " vs " + std::to_string(b.size()) + " points");
    }
}

namespace {

template <typename Op>
GridFunction zip(const GridFunction& a, const GridFunction& b, Op op) {
    require_same_grid(a, b);
    std::vector<double> v(a.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = op(a[i], b[i]);
    return GridFunction(std::move(v));
}

}  // namespace

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
    return zip(a, b, [](double x, double y) { return x + y; });
}

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
    return zip(a, b, [](double x, double y) { return x - y; });
}

GridFunction pointwise_product(const GridFunction& a, const GridFunction& b) {
    return zip(a, b, [](double x, double y) { return x * y; });
}

GridFunction operator*(double s, const GridFunction& a) {
    std::vector<double> v(a.values().begin(), a.values().end());
    for (double& e : v) e *= s;
    return GridFunction(std::move(v));
}

double integrate(const GridFunction& u) {
    const std::size_t n = u.size();
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += simpson_weight(i, n) * u[i];
    return acc * u.spacing() / 3.0;
}

double inner_product(const GridFunction& u, const GridFunction& v) {
    require_same_grid(u, v);
    const std::size_t n = u.size();
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += simpson_weight(i, n) * u[i] * v[i];
    return acc * u.spacing() / 3.0;
}

double lp_norm(const GridFunction& u, double p) {
    if (std::isnan(p) || p < 1.0) {
        throw Error(ErrorKind::domain, "lp_norm needs p >= 1");
    }
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : u.values()) m = std::max(m, std::abs(v));
        return m;
    }
    const std::size_t n = u.size();
    double acc = 0.0;
    if (p == 2.0) {
        for (std::size_t i = 0; i < n; ++i) acc += simpson_weight(i, n) * u[i] * u[i];
        return std::sqrt(std::max(0.0, acc * u.spacing() / 3.0));
    }
    for (std::size_t i = 0; i < n; ++i) acc += simpson_weight(i, n) * std::pow(std::abs(u[i]), p);
    return std::pow(std::max(0.0, acc * u.spacing() / 3.0), 1.0 / p);
}

GridFunction derivative(const GridFunction& u) {
    const std::size_t n = u.size();
    const double h = u.spacing();
    std::vector<double> d(n);
    d[0] = (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * h);
    for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (u[i + 1] - u[i - 1]) / (2.0 * h);
    d[n - 1] = (3.0 * u[n - 1] - 4.0 * u[n - 2] + u[n - 3]) / (2.0 * h);
    return GridFunction(std::move(d));
}

std::vector<double> cumulative_integral(std::span<const double> f, double h) {
    const std::size_t n = f.size();
    std::vector<double> out(n, 0.0);
    if (n < 2) return out;
    // First panel: quadratic through the first three nodes.
    out[1] = n > 2 ? h / 12.0 * (5.0 * f[0] + 8.0 * f[1] - f[2]) : 0.5 * h * (f[0] + f[1]);
    for (std::size_t i = 2; i < n; i += 2) {
        out[i] = out[i - 2] + h / 3.0 * (f[i - 2] + 4.0 * f[i - 1] + f[i]);
    }
    for (std::size_t i = 3; i < n; i += 2) {
        out[i] = out[i - 3] + 3.0 * h / 8.0 * (f[i - 3] + 3.0 * f[i - 2] + 3.0 * f[i - 1] + f[i]);
    }
    return out;
}

GridFunction cumulative_integral(const GridFunction& f) {
    return GridFunction(cumulative_integral(f.values(), f.spacing()));
}

GridFunction sine_mode(std::size_t m, std::size_t n_points) {
    GridFunction::check_size(n_points);
    const double w = static_cast<double>(m) * kPi;
    const double h = 1.0 / static_cast<double>(n_points - 1);
    std::vector<double> v(n_points, 0.0);
    for (std::size_t i = 1; i + 1 < n_points; ++i) v[i] = kSqrt2 * std::sin(w * static_cast<double>(i) * h);
    return GridFunction(std::move(v));
}

SineBasis::SineBasis(std::size_t n_points, std::size_t n_modes)
    : n_points_(n_points), n_modes_(n_modes), table_(n_points * n_modes), weighted_(n_points * n_modes) {
    GridFunction::check_size(n_points);
    if (n_modes == 0) throw Error(ErrorKind::precondition, "sine basis needs at least one mode");
    const double h = 1.0 / static_cast<double>(n_points - 1);
    for (std::size_t m = 0; m < n_modes; ++m) {
        const double w = static_cast<double>(m + 1) * kPi;
        for (std::size_t i = 0; i < n_points; ++i) {
            // sin(m pi) is not exactly zero in floating point; pin the endpoints.
            const double s = (i == 0 || i + 1 == n_points) ? 0.0
                                                          : kSqrt2 * std::sin(w * static_cast<double>(i) * h);
            table_[m * n_points + i] = s;
            weighted_[m * n_points + i] = s * simpson_weight(i, n_points) * h / 3.0;
        }
    }
}

void SineBasis::project(std::span<const double> u, std::span<double> out) const {
    for (std::size_t m = 0; m < n_modes_; ++m) {
        const double* row = &weighted_[m * n_points_];
        double acc = 0.0;
        for (std::size_t i = 0; i < n_points_; ++i) acc += row[i] * u[i];
        out[m] = acc;
    }
}

void SineBasis::reconstruct(std::span<const double> c, std::span<double> out) const {
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t m = 0; m < n_modes_; ++m) {
        const double a = c[m];
        if (a == 0.0) continue;
        const double* row = &table_[m * n_points_];
        for (std::size_t i = 0; i < n_points_; ++i) out[i] += a * row[i];
    }
}

SineCoefficients sine_project(const GridFunction& u, std::size_t n_modes) {
    if (std::abs(u.front()) > 1e-8 || std::abs(u.back()) > 1e-8) {
        throw Error(ErrorKind::precondition, "sine projection needs u(0) = u(1) = 0");
    }
    SineBasis basis(u.size(), n_modes);
    SineCoefficients c{std::vector<double>(n_modes)};
    basis.project(u.values(), c.modes);
    return c;
}

GridFunction sine_reconstruct(const SineCoefficients& c, std::size_t n_points) {
    if (c.modes.empty()) return GridFunction::zeros(n_points);
    SineBasis basis(n_points, c.modes.size());
    std::vector<double> out(n_points);
    basis.reconstruct(c.modes, out);
    return GridFunction(std::move(out));
}

}  // namespace pdestab
