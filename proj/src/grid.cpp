#include "nv/grid.hpp"

namespace nv {

namespace {
constexpr double kPi = 3.14159265358979323846;

// Neumaier compensated accumulator; keeps the reduce order-independent noise
// below 1e-13 for the persisted values.
struct Kahan {
    double sum = 0.0, comp = 0.0;
    void add(double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

struct KahanC {
    Kahan re, im;
    void add(cplx z) {
        re.add(z.real());
        im.add(z.imag());
    }
    cplx value() const { return {re.value(), im.value()}; }
};
}  // namespace

RadialGrid::RadialGrid(GridConfig cfg) {
    if (cfg.n_r < 2 || cfg.n_r % 2 != 0) throw ConfigError("RadialGrid: n_r must be even, >= 2");
    if (cfg.n_theta < 4 || cfg.n_theta % 2 != 0)
        throw ConfigError("RadialGrid: n_theta must be even, >= 4");
    if (!(cfg.s_max > 0.0)) throw ConfigError("RadialGrid: s_max must be > 0");

    s_max_ = cfg.s_max;
    n_r_ = cfg.n_r;
    n_theta_ = cfg.n_theta;
    ds_ = 2.0 * s_max_ / n_r_;
    dtheta_ = 2.0 * kPi / n_theta_;

    s_.resize(n_r_);
    rho_.resize(n_r_);
    ring_w_.resize(n_r_);
    nodes_.resize(static_cast<std::size_t>(n_r_) * n_theta_);

    const double cell = std::sinh(ds_) * dtheta_;
    for (int j = 0; j < n_r_; ++j) {
        s_[j] = -s_max_ + (j + 0.5) * ds_;
        rho_[j] = std::exp(s_[j]);
        ring_w_[j] = std::exp(2.0 * s_[j]) * cell;
        for (int k = 0; k < n_theta_; ++k)
            nodes_[index(j, k)] = std::polar(rho_[j], theta(k));
    }
}

double RadialGrid::total_weight() const {
    Kahan acc;
    for (int j = 0; j < n_r_; ++j) acc.add(ring_w_[j] * n_theta_);
    return acc.value();
}

cplx integrate_samples(const RadialGrid& grid, std::span<const cplx> f) {
    KahanC acc;
    for (int j = 0; j < grid.n_r(); ++j) {
        const double w = grid.ring_weight(j);
        for (int k = 0; k < grid.n_theta(); ++k) {
            const cplx v = f[grid.index(j, k)];
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw NonFiniteSample("integrate_samples: non-finite node value");
            acc.add(w * v);
        }
    }
    return acc.value();
}

QuadratureResult integrate(const RadialGrid& grid, const Integrand& f) {
    const auto samples = grid.sample(f);
    return {integrate_samples(grid, samples), 0.0};
}

QuadratureResult integrate_with_error(const RadialGrid& grid, const Integrand& f) {
    const cplx coarse = integrate(grid, f).value;
    RadialGrid fine({grid.s_max(), 2 * grid.n_r(), 2 * grid.n_theta()});
    const cplx refined = integrate(fine, f).value;
    return {coarse, std::abs(coarse - refined)};
}

namespace {

cplx cauchy_direct(const RadialGrid& grid, const Integrand& f, cplx lambda) {
    const double delta = cauchy_delta(grid, lambda);
    KahanC acc;
    KahanC local;  // Σ w η_δ(|ζ-λ|)/(ζ-λ)
    bool any_local = false;
    for (int j = 0; j < grid.n_r(); ++j) {
        const double w = grid.ring_weight(j);
        for (int k = 0; k < grid.n_theta(); ++k) {
            const cplx zeta = grid.node(j, k);
            const cplx d = zeta - lambda;
            const double ad = std::abs(d);
            if (ad == 0.0) continue;  // bounded patched integrand, one cell dropped
            const cplx v = f(zeta);
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw NonFiniteSample("integrate_cauchy: non-finite node value");
            acc.add(w * v / d);
            if (ad < delta) {
                local.add(w * cauchy_cutoff(ad, delta) / d);
                any_local = true;
            }
        }
    }
    cplx out = acc.value();
    if (any_local) out -= f(lambda) * local.value();
    return out;
}

}  // namespace

QuadratureResult integrate_cauchy(const RadialGrid& grid, const Integrand& f, cplx lambda) {
    return {cauchy_direct(grid, f, lambda), 0.0};
}

QuadratureResult integrate_cauchy_with_error(const RadialGrid& grid, const Integrand& f,
                                             cplx lambda) {
    const cplx coarse = cauchy_direct(grid, f, lambda);
    RadialGrid fine({grid.s_max(), 2 * grid.n_r(), 2 * grid.n_theta()});
    const cplx refined = cauchy_direct(fine, f, lambda);
    return {coarse, std::abs(coarse - refined)};
}

}  // namespace nv
