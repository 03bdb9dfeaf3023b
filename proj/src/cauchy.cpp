#include "nv/cauchy.hpp"

#include <cmath>

namespace nv {

CauchyTransform::CauchyTransform(const RadialGrid& grid)
    : grid_(grid), n_r_(grid.n_r()), n_t_(grid.n_theta()), fft_(grid.n_theta()) {
    const int N = n_t_;

    phase_conj_.resize(N);
    for (int k = 0; k < N; ++k) phase_conj_[k] = std::polar(1.0, -grid.theta(k));

    // kernel rows K_{j'j}(m) = 1/(ρ_j e^{iθ_m} - ρ_{j'}), self entry zeroed
    spectral_.assign(static_cast<std::size_t>(N) * n_r_ * n_r_, cplx(0.0));
    std::vector<cplx> row(N), rowhat(N);
    for (int jt = 0; jt < n_r_; ++jt) {
        const double rt = grid.rho(jt);
        for (int js = 0; js < n_r_; ++js) {
            const double rs = grid.rho(js);
            for (int m = 0; m < N; ++m) {
                if (jt == js && m == 0) {
                    row[m] = 0.0;
                    continue;
                }
                row[m] = 1.0 / (std::polar(rs, grid.theta(m)) - rt);
            }
            fft_.forward(row.data(), rowhat.data());
            const double w = grid.ring_weight(js);
            for (int p = 0; p < N; ++p) {
                const int pneg = (N - p) % N;
                spectral_[(static_cast<std::size_t>(p) * n_r_ + jt) * n_r_ + js] =
                    w * rowhat[pneg];
            }
        }
    }

    // subtraction sums D_{j'} = Σ w η_δ(|ζ-λ₀|)/(ζ-λ₀) at the θ = 0 node;
    // other angles follow by rotation.
    local_.assign(n_r_, cplx(0.0));
    for (int jt = 0; jt < n_r_; ++jt) {
        const cplx lam(grid.rho(jt), 0.0);
        const double delta = cauchy_delta(grid, lam);
        cplx acc(0.0);
        for (int js = 0; js < n_r_; ++js) {
            if (std::abs(grid.rho(js) - grid.rho(jt)) >= delta) continue;
            const double w = grid.ring_weight(js);
            for (int k = 0; k < N; ++k) {
                const cplx d = grid.node(js, k) - lam;
                const double ad = std::abs(d);
                if (ad == 0.0 || ad >= delta) continue;
                acc += w * cauchy_cutoff(ad, delta) / d;
            }
        }
        local_[jt] = acc;
    }
}

void CauchyTransform::apply(std::span<const cplx> g, std::span<cplx> out) const {
    const int N = n_t_;

    std::vector<cplx> ghat(g.size());
    for (int j = 0; j < n_r_; ++j)
        fft_.forward(g.data() + static_cast<std::size_t>(j) * N,
                     ghat.data() + static_cast<std::size_t>(j) * N);

    // R̂_{j'}(p) = Σ_j spectral[p][j'][j] · ĝ_j(p)
    std::vector<cplx> rhat(static_cast<std::size_t>(n_r_) * N);
    for (int p = 0; p < N; ++p) {
        const cplx* M = &spectral_[static_cast<std::size_t>(p) * n_r_ * n_r_];
        for (int jt = 0; jt < n_r_; ++jt) {
            const cplx* Mrow = M + static_cast<std::size_t>(jt) * n_r_;
            double re = 0.0, im = 0.0;
            for (int js = 0; js < n_r_; ++js) {
                const cplx gh = ghat[static_cast<std::size_t>(js) * N + p];
                const double a = gh.real(), b = gh.imag();
                const double c = Mrow[js].real(), d = Mrow[js].imag();
                re += a * c - b * d;
                im += a * d + b * c;
            }
            rhat[static_cast<std::size_t>(jt) * N + p] = cplx(re, im);
        }
    }

    std::vector<cplx> corr(g.size());
    for (int j = 0; j < n_r_; ++j)
        fft_.inverse(rhat.data() + static_cast<std::size_t>(j) * N,
                     corr.data() + static_cast<std::size_t>(j) * N);

    for (int jt = 0; jt < n_r_; ++jt) {
        const cplx D = local_[jt];
        for (int k = 0; k < N; ++k) {
            const std::size_t idx = static_cast<std::size_t>(jt) * N + k;
            out[idx] = phase_conj_[k] * (corr[idx] - g[idx] * D);
        }
    }
}

}  // namespace nv
