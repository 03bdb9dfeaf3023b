#include "nv/dbar.hpp"

#include <cmath>

namespace nv {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

DbarSolver::DbarSolver(const RadialGrid& grid, ScatteringData data, SolverConfig cfg)
    : grid_(grid), data_(data), cfg_(cfg) {
    if (!(cfg_.tol_mu > 0.0)) throw ConfigError("DbarSolver: tol_mu must be > 0");
    if (cfg_.max_iter < 1) throw ConfigError("DbarSolver: max_iter must be >= 1");
    if (!(cfg_.stencil_h > 0.0)) throw ConfigError("DbarSolver: stencil_h must be > 0");
    r_nodes_.resize(grid_.size());
    for (int i = 0; i < grid_.size(); ++i) r_nodes_[i] = data_.r_static(grid_.nodes()[i]);
    cauchy_ = std::make_unique<CauchyTransform>(grid_);
}

std::vector<cplx> DbarSolver::phase_field(cplx z, double t) const {
    std::vector<cplx> rp(grid_.size());
    for (int i = 0; i < grid_.size(); ++i) {
        if (r_nodes_[i] == cplx(0.0)) {
            rp[i] = 0.0;
            continue;
        }
        const cplx zeta = grid_.nodes()[i];
        const double S = phase_raw(z, t, zeta);
        const double damp = phase_cell_average(zeta, phase_raw_dzeta(z, t, zeta), grid_.ds(),
                                               grid_.dtheta());
        rp[i] = r_nodes_[i] * damp * cplx(std::cos(S), std::sin(S));
    }
    return rp;
}

void DbarSolver::apply_A_ws(std::span<const cplx> rphase, std::span<const cplx> f,
                            std::span<cplx> out, std::span<cplx> scratch) const {
    for (std::size_t i = 0; i < f.size(); ++i) scratch[i] = rphase[i] * std::conj(f[i]);
    cauchy_->apply(scratch, out);
    const double scale = -1.0 / kPi;
    for (auto& v : out) v *= scale;
}

cplx DbarSolver::apply_B_ws(std::span<const cplx> rphase, std::span<const cplx> f) const {
    std::vector<cplx> g(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) g[i] = rphase[i] * std::conj(f[i]);
    return integrate_samples(grid_, g);
}

std::vector<cplx> DbarSolver::apply_A(cplx z, double t, std::span<const cplx> f) const {
    const auto rp = phase_field(z, t);
    std::vector<cplx> out(f.size()), scratch(f.size());
    apply_A_ws(rp, f, out, scratch);
    for (const auto& v : out)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw NonFiniteSample("apply_A: non-finite output");
    return out;
}

cplx DbarSolver::apply_B(cplx z, double t, std::span<const cplx> f) const {
    return apply_B_ws(phase_field(z, t), f);
}

MuSolution DbarSolver::solve_ws(std::span<const cplx> rphase,
                                const std::vector<cplx>* warm) const {
    const int n = grid_.size();
    std::vector<cplx> mu(n), next(n), scratch(n);

    const auto sup = [](std::span<const cplx> v) {
        double m = 0.0;
        for (const auto& x : v) m = std::max(m, std::abs(x));
        return m;
    };

    if (warm == nullptr) {
        // contraction gate on ‖A²·1‖_∞
        std::vector<cplx> ones(n, cplx(1.0)), a1(n), a2(n);
        apply_A_ws(rphase, ones, a1, scratch);
        apply_A_ws(rphase, a1, a2, scratch);
        const double gate = sup(a2);
        if (!(gate < cfg_.contraction_gate))
            throw NoConvergence("solve_mu: contraction gate ||A^2 1|| = " +
                                    std::to_string(gate) + " >= " +
                                    std::to_string(cfg_.contraction_gate),
                                gate, 0);
        for (int i = 0; i < n; ++i) mu[i] = 1.0 + a1[i] + a2[i];
    } else {
        mu = *warm;
    }

    MuSolution sol;
    double prev_res = 1e300;
    int stall = 0;
    for (int it = 1; it <= cfg_.max_iter; ++it) {
        apply_A_ws(rphase, mu, next, scratch);
        double res = 0.0;
        for (int i = 0; i < n; ++i) {
            next[i] += 1.0;
            res = std::max(res, std::abs(next[i] - mu[i]));
        }
        if (!std::isfinite(res)) throw NonFiniteSample("solve_mu: non-finite iterate");
        mu.swap(next);
        sol.iterations = it;
        sol.residual = res;
        if (res < cfg_.tol_mu) break;
        if (res > 0.9 * prev_res) {
            if (++stall >= 3)
                throw NoConvergence("solve_mu: iteration stalled, residual " +
                                        std::to_string(res),
                                    res, it);
        } else {
            stall = 0;
        }
        prev_res = res;
        if (it == cfg_.max_iter)
            throw NoConvergence("solve_mu: no convergence after " + std::to_string(it) +
                                    " iterations, residual " + std::to_string(res),
                                res, it);
    }

    sol.b1 = [&] {
        std::vector<cplx> ones(n, cplx(1.0));
        return apply_B_ws(rphase, ones);
    }();
    sol.a1 = sol.b1 / kPi;
    sol.mu_minus1 = apply_B_ws(rphase, mu) / kPi;
    sol.mu = std::move(mu);
    return sol;
}

MuSolution DbarSolver::solve_mu(cplx z, double t) const { return solve_mu(z, t, nullptr); }

MuSolution DbarSolver::solve_mu(cplx z, double t, const std::vector<cplx>* warm) const {
    const auto rp = phase_field(z, t);
    return solve_ws(rp, warm);
}

PotentialSample DbarSolver::reconstruct_v(cplx z, double t) const {
    const double h = cfg_.stencil_h;
    const MuSolution center = solve_mu(z, t);

    const cplx offsets[4] = {cplx(h, 0.0), cplx(-h, 0.0), cplx(0.0, h), cplx(0.0, -h)};
    cplx m[4];
    int iters = center.iterations;
    double res = center.residual;
    for (int k = 0; k < 4; ++k) {
        const MuSolution s = solve_mu(z + offsets[k], t, &center.mu);
        m[k] = s.mu_minus1;
        iters = std::max(iters, s.iterations);
        res = std::max(res, s.residual);
    }

    // ∂_z = ½(∂_x₁ - i ∂_x₂) by central differences
    const cplx dx = (m[0] - m[1]) / (2.0 * h);
    const cplx dy = (m[2] - m[3]) / (2.0 * h);
    const cplx dz = 0.5 * (dx - cplx(0.0, 1.0) * dy);
    const cplx v = 2.0 * cplx(0.0, 1.0) * dz;

    PotentialSample out;
    out.z = z;
    out.t = t;
    out.v = v;
    out.imag_leak = std::abs(v.imag());
    out.iterations = iters;
    out.residual = res;
    return out;
}

std::vector<double> DbarSolver::even_power_norms(cplx z, double t, int count) const {
    const auto rp = phase_field(z, t);
    const int n = grid_.size();
    std::vector<cplx> f(n, cplx(1.0)), out(n), scratch(n);
    std::vector<double> norms;
    for (int k = 1; k <= 2 * count; ++k) {
        apply_A_ws(rp, f, out, scratch);
        f.swap(out);
        if (k % 2 == 0) {
            double m = 0.0;
            for (const auto& x : f) m = std::max(m, std::abs(x));
            norms.push_back(m);
        }
    }
    return norms;
}

}  // namespace nv
