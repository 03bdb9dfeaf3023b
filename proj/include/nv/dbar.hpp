#pragma once

/*
 * Solver for the spectral function μ(z,λ,t) of the transparent-potential
 * reconstruction at E = 1:
 *
 *     μ(z,λ,t) = 1 - (1/π) ∬ r(ζ,z,t) conj(μ(z,ζ,t)) dA / (ζ - λ),
 *     r(ζ,z,t) = exp(iS(ζ,z,t)) r(ζ).
 *
 * Written with the conjugate-linear operator A_{z,t},
 *
 *     (A_{z,t} f)(λ) = -(1/π) ∬ r(ζ) e^{iS} conj(f(ζ)) / (ζ - λ) dA,
 *     B_{z,t} · f   =        ∬ r(ζ) e^{iS} conj(f(ζ)) dA,
 *
 * the equation is μ = 1 + A μ, solved by the Neumann fixed point. The
 * large-λ expansion μ = 1 + μ₋₁(z,t)/λ + o(1/λ) gives the coefficient by
 * the integral identity
 *
 *     μ₋₁(z,t) = (1/π) ∬ r(ζ) e^{iS} conj(μ(ζ)) dA = (1/π) B_{z,t} · μ,
 *
 * and the potential by v(z,t) = 2i ∂_z μ₋₁, with ∂_z = ½(∂_x₁ - i ∂_x₂)
 * taken by central differences over a 4-point stencil.
 *
 * An empirical contraction gate ‖A²·1‖_∞ < 0.5 guards the iteration: the
 * admissible strength for which the series provably converges is not known
 * in closed form, so over-strong data surfaces as NoConvergence.
 */

#include <complex>
#include <memory>
#include <span>
#include <vector>

#include "nv/cauchy.hpp"
#include "nv/grid.hpp"
#include "nv/phase.hpp"
#include "nv/scattering.hpp"

namespace nv {

struct SolverConfig {
    double tol_mu = 1e-9;
    int max_iter = 50;
    double stencil_h = 1e-3;
    double contraction_gate = 0.5;
};

struct MuSolution {
    std::vector<cplx> mu;  // node field
    cplx mu_minus1;
    int iterations = 0;
    double residual = 0.0;
    cplx a1;  // (1/π) B·1 diagnostic
    cplx b1;  // B·1 diagnostic (π-free convention)
};

struct PotentialSample {
    cplx z;
    double t = 0.0;
    cplx v;
    double imag_leak = 0.0;  // |Im v|
    int iterations = 0;      // max over the stencil solves
    double residual = 0.0;   // max over the stencil solves
};

class DbarSolver {
  public:
    DbarSolver(const RadialGrid& grid, ScatteringData data, SolverConfig cfg = {});

    const RadialGrid& grid() const { return grid_; }
    const ScatteringData& data() const { return data_; }
    const SolverConfig& config() const { return cfg_; }

    // r(ζ)·e^{iS(ζ,z,t)} sampled at the nodes
    std::vector<cplx> phase_field(cplx z, double t) const;

    std::vector<cplx> apply_A(cplx z, double t, std::span<const cplx> f) const;
    cplx apply_B(cplx z, double t, std::span<const cplx> f) const;

    // fixed point of μ = 1 + Aμ; optional warm start skips the gate probe
    MuSolution solve_mu(cplx z, double t) const;
    MuSolution solve_mu(cplx z, double t, const std::vector<cplx>* warm_start) const;

    PotentialSample reconstruct_v(cplx z, double t) const;

    // ‖A^{2n}·1‖_∞ for n = 1..count (Neumann-decay diagnostics)
    std::vector<double> even_power_norms(cplx z, double t, int count) const;

  private:
    void apply_A_ws(std::span<const cplx> rphase, std::span<const cplx> f,
                    std::span<cplx> out, std::span<cplx> scratch) const;
    cplx apply_B_ws(std::span<const cplx> rphase, std::span<const cplx> f) const;
    MuSolution solve_ws(std::span<const cplx> rphase, const std::vector<cplx>* warm) const;

    const RadialGrid& grid_;
    ScatteringData data_;
    SolverConfig cfg_;
    std::vector<cplx> r_nodes_;  // static r(ζ)
    std::unique_ptr<CauchyTransform> cauchy_;
};

}  // namespace nv
