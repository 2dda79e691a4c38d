#pragma once

#include "pdestab/funcspace.hpp"
#include "pdestab/kernel.hpp"
#include "pdestab/reaction.hpp"

namespace pdestab {

/// The Volterra pair that homogenizes the feedback boundary condition
///   (K u)(x)    = u(x) + r int_0^x k u
///   (K^-1 w)(x) = w(x) + int_0^x kb(t) exp(int_t^x kb) w(t) dt,  kb = -r k
/// and the operator that appears when K is commuted past the Laplacian
///   (G_op u)(x) = -2 r k'(x) u(x) + r int_0^x k'' u.
///
/// Running integrals use the causal cumulative rule from funcspace, so
/// every output node depends only on inputs at or left of it.
class VolterraTransform {
public:
    VolterraTransform(const Kernel& kernel, double r, std::size_t n_points);
    VolterraTransform(const Kernel& kernel, double r) : VolterraTransform(kernel, r, kernel.n_points()) {}

    std::size_t n_points() const noexcept { return k_.size(); }
    double r() const noexcept { return r_; }
    const GridFunction& k_bar() const noexcept { return k_bar_; }

    GridFunction apply_K(const GridFunction& u) const;
    GridFunction apply_K_inverse(const GridFunction& w) const;
    GridFunction apply_G_op(const GridFunction& u) const;

    /// p G_op(K^-1 w) + K(F(K^-1 w)).
    GridFunction transformed_reaction(const ReactionTerm& f, double p, const GridFunction& w) const;

private:
    void check(const GridFunction& u) const;

    double r_;
    double mu_;
    std::vector<double> k_;
    std::vector<double> dk_;
    GridFunction k_bar_;
    std::vector<double> exp_plus_;   // exp(int_0^x kb)
    std::vector<double> exp_minus_;  // exp(-int_0^x kb)
};

}  // namespace pdestab
