#pragma once

#include <optional>
#include <string_view>

#include "pdestab/funcspace.hpp"

namespace pdestab {

/// The three solution families of k'' = mu k with k(0) = 0, k(1) = 1.
enum class KernelFamily { linear, sinh, sin };

std::string_view to_string(KernelFamily family) noexcept;
std::optional<KernelFamily> parse_kernel_family(std::string_view name) noexcept;

/// Admissible feedback kernel k with its closed-form scalars.
///
/// linear: k(x) = x                      (mu = 0)
/// sinh:   k(x) = sinh(c x) / sinh(c)    (mu = c^2,     c > 0)
/// sin:    k(x) = sin(w x) / sin(w)      (mu = -w^2,    w > 0, w != n pi)
///
/// Every derived scalar comes from a closed form; samples() is filled
/// from the same closed form on the requested grid.
class Kernel {
public:
    static Kernel make(KernelFamily family, double parameter = 0.0,
                       std::size_t n_points = kDefaultPoints);
    static Kernel linear(std::size_t n_points = kDefaultPoints) {
        return make(KernelFamily::linear, 0.0, n_points);
    }

    KernelFamily family() const noexcept { return family_; }
    double parameter() const noexcept { return parameter_; }
    double mu() const noexcept { return mu_; }
    const GridFunction& samples() const noexcept { return samples_; }
    std::size_t n_points() const noexcept { return samples_.size(); }

    double k_prime_1() const noexcept { return k_prime_1_; }   // k'(1)
    double norm2_sq() const noexcept { return norm2_sq_; }     // ||k||_2^2
    double k1() const noexcept { return k1_; }                 // sqrt(2) int k sin(pi x)
    double norm_dk_sq() const noexcept { return norm_dk_sq_; } // ||k'||_2^2
    double sup_dk() const noexcept { return sup_dk_; }         // ||k'||_inf

    /// sqrt(int_0^1 int_0^x k(s)^2 ds dx), the Hilbert-Schmidt norm of the
    /// Volterra operator u -> int_0^x k u.
    double hs_norm() const noexcept { return hs_norm_; }
    /// Same quantity for k'' = mu k.
    double hs_norm_second() const noexcept { return std::abs(mu_) * hs_norm_; }

    double value(double x) const noexcept;
    double derivative(double x) const noexcept;
    double second_derivative(double x) const noexcept;
    /// int_0^x k(s) ds
    double antiderivative(double x) const noexcept;

    GridFunction sampled_derivative(std::size_t n_points) const;
    GridFunction sampled(std::size_t n_points) const;
    Kernel resampled(std::size_t n_points) const;

    /// ||k||_p: exact for the linear family, dense Simpson otherwise.
    double lp_norm(double p) const;

    /// max_i |k''(x_i) - mu k(x_i)| using the separately coded k''.
    double mu_residual() const;

private:
    Kernel(KernelFamily family, double parameter, std::size_t n_points);

    KernelFamily family_;
    double parameter_;
    double mu_ = 0.0;
    double k_prime_1_ = 0.0;
    double norm2_sq_ = 0.0;
    double k1_ = 0.0;
    double norm_dk_sq_ = 0.0;
    double sup_dk_ = 0.0;
    double hs_norm_ = 0.0;
    GridFunction samples_;
};

/// ||k||_p evaluated on the kernel's own samples.
double kernel_lp_norm(const Kernel& k, double p);

}  // namespace pdestab
