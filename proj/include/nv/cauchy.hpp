#pragma once

/*
 * Simultaneous evaluation of the Cauchy sums
 *
 *     C[g](λ) = Σ_ζ w(ζ) g(ζ) / (ζ - λ),    λ over all grid nodes,
 *
 * with the same singularity subtraction as integrate_cauchy. The log-polar
 * grid makes the kernel block-circulant in the angle: with λ = ρ' e^{iθ'}
 * and ζ = ρ e^{iθ},
 *
 *     1/(ζ - λ) = e^{-iθ'} / ( ρ e^{i(θ-θ')} - ρ' ),
 *
 * so each target-ring/source-ring pair is a circular correlation in θ,
 * evaluated spectrally. The result is the exact direct sum up to roundoff,
 * at O(n_r² n_θ) per application instead of O(n_r² n_θ²).
 */

#include <complex>
#include <span>
#include <vector>

#include "nv/fft.hpp"
#include "nv/grid.hpp"

namespace nv {

class CauchyTransform {
  public:
    explicit CauchyTransform(const RadialGrid& grid);

    // out[idx] = Σ_{ζ != λ_idx} w g(ζ)/(ζ-λ_idx) - g(λ_idx)·Σ w η_δ/(ζ-λ_idx)
    void apply(std::span<const cplx> g, std::span<cplx> out) const;

    std::vector<cplx> apply(std::span<const cplx> g) const {
        std::vector<cplx> out(g.size());
        apply(g, out);
        return out;
    }

  private:
    const RadialGrid& grid_;
    int n_r_, n_t_;
    Fft fft_;
    std::vector<cplx> spectral_;    // [p][j'][j] = w_j · K̂_{j'j}(-p)
    std::vector<cplx> local_;       // per-ring subtraction sums at θ' = 0
    std::vector<cplx> phase_conj_;  // e^{-iθ_k}
};

}  // namespace nv
