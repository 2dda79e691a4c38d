#include "pdestab/kernel.hpp"

#include <algorithm>
#include <string>

namespace pdestab {

std::string_view to_string(KernelFamily family) noexcept {
    switch (family) {
        case KernelFamily::linear: return "linear";
        case KernelFamily::sinh: return "sinh";
        case KernelFamily::sin: return "sin";
    }
    return "linear";
}

std::optional<KernelFamily> parse_kernel_family(std::string_view name) noexcept {
    if (name == "linear") return KernelFamily::linear;
    if (name == "sinh") return KernelFamily::sinh;
    if (name == "sin") return KernelFamily::sin;
    return std::nullopt;
}

namespace {

// sinh(x) - x and x - sin(x) without cancellation near zero.
double sinh_minus_x(double x) {
    if (std::abs(x) < 0.5) {
        const double x2 = x * x;
        return x * x2 * (1.0 / 6 + x2 * (1.0 / 120 + x2 * (1.0 / 5040 + x2 * (1.0 / 362880 + x2 / 39916800))));
    }
    return std::sinh(x) - x;
}

double x_minus_sin(double x) {
    if (std::abs(x) < 0.5) {
        const double x2 = x * x;
        return x * x2 * (1.0 / 6 - x2 * (1.0 / 120 - x2 * (1.0 / 5040 - x2 * (1.0 / 362880 - x2 / 39916800))));
    }
    return x - std::sin(x);
}

constexpr std::size_t kDenseQuadraturePoints = 20001;

}  // namespace

Kernel::Kernel(KernelFamily family, double parameter, std::size_t n_points)
    : family_(family), parameter_(parameter), samples_(GridFunction::zeros(n_points)) {}

Kernel Kernel::make(KernelFamily family, double parameter, std::size_t n_points) {
    GridFunction::check_size(n_points);
    Kernel k(family, family == KernelFamily::linear ? 0.0 : parameter, n_points);
    switch (family) {
        case KernelFamily::linear: {
            k.mu_ = 0.0;
            k.k_prime_1_ = 1.0;
            k.norm2_sq_ = 1.0 / 3.0;
            k.k1_ = kSqrt2 / kPi;
            k.norm_dk_sq_ = 1.0;
            k.sup_dk_ = 1.0;
            k.hs_norm_ = std::sqrt(1.0 / 12.0);
            break;
        }
        case KernelFamily::sinh: {
            const double c = parameter;
            if (!(c > 0.0) || !std::isfinite(c) || c > 300.0) {
                throw Error(ErrorKind::domain, "sinh kernel needs 0 < c <= 300");
            }
            const double sh = std::sinh(c);
            const double sh2 = sh * sh;
            k.mu_ = c * c;
            k.k_prime_1_ = c * std::cosh(c) / sh;
            k.norm2_sq_ = sinh_minus_x(2.0 * c) / (4.0 * c * sh2);
            k.k1_ = kSqrt2 * kPi / (c * c + kPi * kPi);
            k.norm_dk_sq_ = c * (std::sinh(2.0 * c) + 2.0 * c) / (4.0 * sh2);
            k.sup_dk_ = k.k_prime_1_;
            k.hs_norm_ = std::sqrt(sinh_minus_x(c) * (sh + c) / (4.0 * c * c * sh2));
            break;
        }
        case KernelFamily::sin: {
            const double w = parameter;
            if (!(w > 0.0) || !std::isfinite(w)) {
                throw Error(ErrorKind::domain, "sin kernel needs w > 0");
            }
            const double n = std::round(w / kPi);
            if (n >= 1.0 && std::abs(w - n * kPi) <= 1e-9) {
                throw Error(ErrorKind::degenerate_kernel, "sin kernel parameter is a multiple of pi");
            }
            const double s = std::sin(w);
            const double s2 = s * s;
            k.mu_ = -w * w;
            k.k_prime_1_ = w * std::cos(w) / s;
            k.norm2_sq_ = x_minus_sin(2.0 * w) / (4.0 * w * s2);
            k.k1_ = kSqrt2 * kPi / (kPi * kPi - w * w);
            k.norm_dk_sq_ = w * (2.0 * w + std::sin(2.0 * w)) / (4.0 * s2);
            k.sup_dk_ = w / std::abs(s);
            k.hs_norm_ = std::sqrt(x_minus_sin(w) * (w + s) / (4.0 * w * w * s2));
            break;
        }
    }
    k.samples_ = k.sampled(n_points);
    return k;
}

double Kernel::value(double x) const noexcept {
    switch (family_) {
        case KernelFamily::linear: return x;
        case KernelFamily::sinh: {
            const double c = parameter_;
            return std::exp(c * (x - 1.0)) * std::expm1(-2.0 * c * x) / std::expm1(-2.0 * c);
        }
        case KernelFamily::sin: return std::sin(parameter_ * x) / std::sin(parameter_);
    }
    return x;
}

double Kernel::derivative(double x) const noexcept {
    switch (family_) {
        case KernelFamily::linear: return 1.0;
        case KernelFamily::sinh: {
            const double c = parameter_;
            return -c * std::exp(c * (x - 1.0)) * (1.0 + std::exp(-2.0 * c * x)) / std::expm1(-2.0 * c);
        }
        case KernelFamily::sin: return parameter_ * std::cos(parameter_ * x) / std::sin(parameter_);
    }
    return 1.0;
}

double Kernel::second_derivative(double x) const noexcept {
    switch (family_) {
        case KernelFamily::linear: return 0.0;
        case KernelFamily::sinh: {
            const double c = parameter_;
            return c * c * std::sinh(c * x) / std::sinh(c);
        }
        case KernelFamily::sin: {
            const double w = parameter_;
            return -w * w * std::sin(w * x) / std::sin(w);
        }
    }
    return 0.0;
}

double Kernel::antiderivative(double x) const noexcept {
    switch (family_) {
        case KernelFamily::linear: return 0.5 * x * x;
        case KernelFamily::sinh: {
            const double c = parameter_;
            const double t = std::sinh(0.5 * c * x);
            return 2.0 * t * t / (c * std::sinh(c));
        }
        case KernelFamily::sin: {
            const double w = parameter_;
            const double t = std::sin(0.5 * w * x);
            return 2.0 * t * t / (w * std::sin(w));
        }
    }
    return 0.5 * x * x;
}

GridFunction Kernel::sampled(std::size_t n_points) const {
    GridFunction::check_size(n_points);
    std::vector<double> v(n_points);
    const double h = 1.0 / static_cast<double>(n_points - 1);
    for (std::size_t i = 0; i < n_points; ++i) v[i] = value(static_cast<double>(i) * h);
    v.front() = 0.0;
    v.back() = 1.0;
    return GridFunction(std::move(v));
}

GridFunction Kernel::sampled_derivative(std::size_t n_points) const {
    return GridFunction::sample(n_points, [this](double x) { return derivative(x); });
}

Kernel Kernel::resampled(std::size_t n_points) const {
    if (n_points == samples_.size()) return *this;
    return make(family_, parameter_, n_points);
}

double Kernel::lp_norm(double p) const {
    if (std::isnan(p) || p < 1.0) throw Error(ErrorKind::domain, "lp_norm needs p >= 1");
    if (std::isinf(p)) {
        if (family_ == KernelFamily::sin && parameter_ >= 0.5 * kPi) return 1.0 / std::abs(std::sin(parameter_));
        return 1.0;
    }
    if (family_ == KernelFamily::linear) return std::pow(1.0 / (p + 1.0), 1.0 / p);
    return pdestab::lp_norm(sampled(kDenseQuadraturePoints), p);
}

double Kernel::mu_residual() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        const double x = samples_.x(i);
        worst = std::max(worst, std::abs(second_derivative(x) - mu_ * value(x)));
    }
    return worst;
}

double kernel_lp_norm(const Kernel& k, double p) { return lp_norm(k.samples(), p); }

}  // namespace pdestab
