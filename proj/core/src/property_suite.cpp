#include "pdestab/property_suite.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "pdestab/kernel.hpp"
#include "pdestab/monitor.hpp"

namespace pdestab {

std::string_view to_string(PropertySuite s) noexcept {
    switch (s) {
        case PropertySuite::wirtinger: return "wirtinger";
        case PropertySuite::boundary: return "boundary";
        case PropertySuite::agmon: return "agmon";
        case PropertySuite::all: return "all";
    }
    return "all";
}

std::optional<PropertySuite> parse_property_suite(std::string_view name) noexcept {
    for (auto s : {PropertySuite::wirtinger, PropertySuite::boundary, PropertySuite::agmon, PropertySuite::all}) {
        if (name == to_string(s)) return s;
    }
    return std::nullopt;
}

namespace {

constexpr std::size_t kMaxDegree = 8;

class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : gen_(seed) {}

    double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * unit(); }
    std::size_t index(std::size_t n) { return std::min(n - 1, static_cast<std::size_t>(unit() * static_cast<double>(n))); }

private:
    std::mt19937_64 gen_;
};

/// u = slope x + sum_m c_m sin(m pi x), with exact derivative.
struct TestFunction {
    GridFunction u;
    GridFunction du;
};

TestFunction random_function(Sampler& rng, std::size_t n, bool with_slope) {
    const std::size_t degree = 1 + rng.index(kMaxDegree);
    std::vector<double> c(degree);
    for (auto& v : c) v = rng.uniform(-1.0, 1.0);
    const double slope = with_slope ? rng.uniform(-1.0, 1.0) : 0.0;
    auto u = GridFunction::sample(n, [&](double x) {
        double s = slope * x;
        for (std::size_t m = 0; m < degree; ++m) s += c[m] * std::sin(static_cast<double>(m + 1) * kPi * x);
        return s;
    });
    auto du = GridFunction::sample(n, [&](double x) {
        double s = slope;
        for (std::size_t m = 0; m < degree; ++m) {
            const double w = static_cast<double>(m + 1) * kPi;
            s += c[m] * w * std::cos(w * x);
        }
        return s;
    });
    std::vector<double> pinned(u.values().begin(), u.values().end());
    pinned.front() = 0.0;
    if (!with_slope) pinned.back() = 0.0;
    return {GridFunction(std::move(pinned)), std::move(du)};
}

Kernel random_kernel(Sampler& rng, std::size_t n) {
    switch (rng.index(3)) {
        case 0: return Kernel::make(KernelFamily::linear, 0.0, n);
        case 1: return Kernel::make(KernelFamily::sinh, rng.uniform(0.1, 5.0), n);
        default: {
            for (;;) {
                const double w = rng.uniform(0.1, 10.0);
                const double nearest = std::round(w / kPi) * kPi;
                if (std::abs(w - nearest) > 0.05) return Kernel::make(KernelFamily::sin, w, n);
            }
        }
    }
}

double scale_of(const InequalitySides& s) { return std::max({1.0, std::abs(s.lhs), std::abs(s.rhs)}); }

void tally(SuiteResult& r, const InequalitySides& s, double rel) {
    const double scale = scale_of(s);
    r.worst_margin = std::min(r.worst_margin, s.margin() / scale);
    if (!s.holds(scale, rel)) ++r.violations;
    ++r.trials;
}

SuiteResult wirtinger_suite(const SuiteOptions& o) {
    Sampler rng(o.seed);
    SuiteResult r{"wirtinger", 0, 0, kInfinity, std::nullopt};
    const std::size_t n = o.n_points;
    for (std::size_t t = 0; t < o.trials; ++t) {
        const TestFunction u = random_function(rng, n, false);
        // Kernel: sine polynomial plus a ramp, so it is not a multiple of phi_1.
        const TestFunction kf = random_function(rng, n, true);
        const double eps = rng.uniform(0.0, 10.0);
        tally(r, kernel_wirtinger_check(u.u, u.du, kf.u, eps), o.relative_slack);
    }
    // Sharp case: eps = 0 and u = phi_1.
    const GridFunction phi = sine_mode(1, n);
    const GridFunction dphi = GridFunction::sample(n, [](double x) { return kSqrt2 * kPi * std::cos(kPi * x); });
    const InequalitySides sharp = kernel_wirtinger_check(phi, dphi, Kernel::linear(n).samples(), 0.0);
    r.equality_margin = sharp.margin() / scale_of(sharp);
    return r;
}

SuiteResult boundary_suite(const SuiteOptions& o) {
    Sampler rng(o.seed ^ 0x9e3779b97f4a7c15ULL);
    SuiteResult r{"boundary", 0, 0, kInfinity, std::nullopt};
    const std::size_t n = o.n_points;
    constexpr double eps_choices[] = {0.0, 0.1, 1.0, 10.0};
    for (std::size_t t = 0; t < o.trials; ++t) {
        const TestFunction u = random_function(rng, n, true);
        const Kernel k = random_kernel(rng, n);
        const double eps = eps_choices[rng.index(4)];
        tally(r, boundary_wirtinger_check(u.u, u.du, k, eps), o.relative_slack);
    }
    return r;
}

SuiteResult agmon_suite(const SuiteOptions& o) {
    Sampler rng(o.seed ^ 0xbf58476d1ce4e5b9ULL);
    SuiteResult r{"agmon", 0, 0, kInfinity, std::nullopt};
    const std::size_t n = o.n_points;
    for (std::size_t t = 0; t < o.trials; ++t) {
        const TestFunction u = random_function(rng, n, true);
        tally(r, agmon_check(u.u, u.du), o.relative_slack);
        // Companion bound |u|_inf <= |u'|_2.
        const InequalitySides cheap{lp_norm(u.u, kInfinity), lp_norm(u.du, 2.0)};
        if (!cheap.holds(scale_of(cheap), o.relative_slack)) ++r.violations;
    }
    return r;
}

}  // namespace

std::vector<SuiteResult> run_property_suite(PropertySuite suite, const SuiteOptions& options) {
    if (options.trials == 0) throw Error(ErrorKind::precondition, "trials must be >= 1");
    GridFunction::check_size(options.n_points);
    std::vector<SuiteResult> out;
    if (suite == PropertySuite::wirtinger || suite == PropertySuite::all) out.push_back(wirtinger_suite(options));
    if (suite == PropertySuite::boundary || suite == PropertySuite::all) out.push_back(boundary_suite(options));
    if (suite == PropertySuite::agmon || suite == PropertySuite::all) out.push_back(agmon_suite(options));
    return out;
}

KeyValueReport suite_report(const std::vector<SuiteResult>& results) {
    KeyValueReport rep;
    std::size_t total = 0;
    for (const auto& r : results) {
        rep.add(r.name + ".trials", r.trials);
        rep.add(r.name + ".violations", r.violations);
        rep.add(r.name + ".worst_margin", r.worst_margin);
        if (r.equality_margin) rep.add(r.name + ".equality_margin", *r.equality_margin);
        total += r.violations;
    }
    rep.add("violations", total);
    return rep;
}

}  // namespace pdestab
