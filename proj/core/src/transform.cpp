#include "pdestab/transform.hpp"

#include <string>

namespace pdestab {

VolterraTransform::VolterraTransform(const Kernel& kernel, double r, std::size_t n_points)
    : r_(r), mu_(kernel.mu()), k_bar_(GridFunction::zeros(n_points)) {
    if (!std::isfinite(r)) throw Error(ErrorKind::domain, "gain r must be finite");
    const GridFunction ks = kernel.sampled(n_points);
    k_.assign(ks.values().begin(), ks.values().end());
    const GridFunction dks = kernel.sampled_derivative(n_points);
    dk_.assign(dks.values().begin(), dks.values().end());

    std::vector<double> kb(n_points);
    for (std::size_t i = 0; i < n_points; ++i) kb[i] = -r * k_[i];
    const double h = 1.0 / static_cast<double>(n_points - 1);
    const std::vector<double> kb_int = cumulative_integral(kb, h);
    exp_plus_.resize(n_points);
    exp_minus_.resize(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
        exp_plus_[i] = std::exp(kb_int[i]);
        exp_minus_[i] = std::exp(-kb_int[i]);
    }
    k_bar_ = GridFunction(std::move(kb));
}

void VolterraTransform::check(const GridFunction& u) const {
    if (u.size() != k_.size()) {
        throw Error(ErrorKind::grid_mismatch, "transform built for " + std::to_string(k_.size()) +
                                                  " points, got " + std::to_string(u.size()));
    }
}

GridFunction VolterraTransform::apply_K(const GridFunction& u) const {
    check(u);
    const std::size_t n = u.size();
    std::vector<double> ku(n);
    for (std::size_t i = 0; i < n; ++i) ku[i] = k_[i] * u[i];
    const std::vector<double> c = cumulative_integral(ku, u.spacing());
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = u[i] + r_ * c[i];
    return GridFunction(std::move(w));
}

GridFunction VolterraTransform::apply_K_inverse(const GridFunction& w) const {
    check(w);
    const std::size_t n = w.size();
    std::vector<double> integrand(n);
    for (std::size_t i = 0; i < n; ++i) integrand[i] = k_bar_[i] * exp_minus_[i] * w[i];
    const std::vector<double> c = cumulative_integral(integrand, w.spacing());
    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = w[i] + exp_plus_[i] * c[i];
    return GridFunction(std::move(u));
}

GridFunction VolterraTransform::apply_G_op(const GridFunction& u) const {
    check(u);
    const std::size_t n = u.size();
    std::vector<double> out(n);
    if (mu_ != 0.0) {
        std::vector<double> ku(n);
        for (std::size_t i = 0; i < n; ++i) ku[i] = k_[i] * u[i];
        const std::vector<double> c = cumulative_integral(ku, u.spacing());
        for (std::size_t i = 0; i < n; ++i) out[i] = r_ * mu_ * c[i];
    }
    for (std::size_t i = 0; i < n; ++i) out[i] -= 2.0 * r_ * dk_[i] * u[i];
    return GridFunction(std::move(out));
}

GridFunction VolterraTransform::transformed_reaction(const ReactionTerm& f, double p, const GridFunction& w) const {
    const GridFunction u = apply_K_inverse(w);
    const GridFunction ku = apply_K(f.apply(u));
    if (r_ == 0.0) return ku;
    return ku + p * apply_G_op(u);
}

}  // namespace pdestab
