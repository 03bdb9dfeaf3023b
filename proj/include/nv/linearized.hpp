#pragma once

/*
 * Explicit solutions of the linearized Novikov–Veselov equation at E = 1,
 *
 *     I(t,z) =    ∬ f(ζ) e^{iS(ζ,z,t)} dA,
 *     J(t,z) = -3 ∬ (ζ̄/ζ) f(ζ) e^{iS(ζ,z,t)} dA,
 *
 * their finite-difference PDE residual, the Born-approximation transparency
 * probe (the Fourier transform of z ↦ I vanishes on |p| < 2), and the
 * stationary-phase decomposition over D_ε, the union of ε-disks around the
 * six stationary points of S:
 *
 *     I = I_int + I_ext,
 *     I_ext = -(1/t)( I₁ - I₂ - I₃ ),
 *       I₁ =  ½ ∮_{∂D_ε} f e^{itS} / S'_ζ dζ̄            (counterclockwise)
 *       I₂ =  i ∬_{ℂ\D_ε} f'_ζ e^{itS} / S'_ζ dA
 *       I₃ = -i ∬_{ℂ\D_ε} f e^{itS} S''_ζζ / (S'_ζ)² dA.
 *
 * The boundary term uses a 64-point trapezoid rule per circle; when disks
 * overlap the circles are clipped against each other so only the union
 * boundary contributes, and D_ε-membership of grid nodes partitions the area
 * terms exactly.
 */

#include <complex>
#include <vector>

#include "nv/grid.hpp"
#include "nv/phase.hpp"
#include "nv/scattering.hpp"

namespace nv {

// Radial profile f(ζ) = c·exp(-s² - 1/s²), s = ln|ζ|: real, even under
// ζ -> -ζ, flat on |ζ| = 1, Schwartz-type decay at 0 and ∞. Satisfies the
// reality route conj(f(ζ)) = f(-ζ).
struct RadialProfile {
    double c = 1.0;

    double value(cplx zeta) const { return default_b(zeta, c).real(); }

    // ∂_ζ f = -f(ζ)·(2s - 2/s³)/(2ζ)
    cplx dzeta(cplx zeta) const {
        const double f = value(zeta);
        if (f == 0.0) return 0.0;
        const double s = std::log(std::abs(zeta));
        const double gp = 2.0 * s - 2.0 / (s * s * s);
        return -f * gp / (2.0 * zeta);
    }
};

// max node deviation of the first reality condition conj(f(ζ)) = f(-ζ)
double reality_defect(const RadialGrid& grid, const RadialProfile& f);

// deviation of the alternative condition conj(f(ζ)) = -|ζ|⁻⁴ f(-1/ζ̄)
// (not satisfied by the default family; exposed as an optional validator)
double reality_defect_inverted(const RadialGrid& grid, const RadialProfile& f);

// Cell damping: on = oscillation-safe quadrature (cell-averaged phase
// factors); off = plain point sampling. The PDE residual check must run
// undamped: the plain discrete sum is an exact superposition of mode
// solutions, which a t-dependent window would spoil.
enum class Damping { on, off };

cplx eval_I(const RadialGrid& grid, const RadialProfile& f, double t, cplx u,
            Damping damping = Damping::on);
cplx eval_J(const RadialGrid& grid, const RadialProfile& f, double t, cplx u,
            Damping damping = Damping::on);

// raw (z,t) form, valid at t = 0
cplx eval_I_raw(const RadialGrid& grid, const RadialProfile& f, double t, cplx z,
                Damping damping = Damping::on);
cplx eval_J_raw(const RadialGrid& grid, const RadialProfile& f, double t, cplx z,
                Damping damping = Damping::on);

struct PdeResidual {
    double residual;             // |∂_t v - 4Re(4∂_z³v - ∂_z w)| at steps (h_t, h_z)
    double residual_refined;     // same at (h_t/2, h_z/2)
    double ratio;                // residual / residual_refined, ~4 for 2nd order
    double constraint;           // |∂_z̄ w + 3 ∂_z v|
    double constraint_refined;
    double constraint_ratio;
};

PdeResidual check_linearized_pde(const RadialGrid& grid, const RadialProfile& f, double t,
                                 cplx z, double h_t, double h_z);

struct BornGap {
    double max_in_gap;     // max |v̂(p)| over |p| < 1.6 relative to max |v̂|
    double boundary_frac;  // max boundary |I| / max |I| (window check)
};

// Windowed discrete Fourier transform of z ↦ I(t,z) over the square
// |x₁|,|x₂| <= half_width sampled at n×n points (Hann window).
BornGap born_support_check(const RadialGrid& grid, const RadialProfile& f, double t,
                           double half_width, int n);

struct Decomposition {
    double eps;
    cplx I;  // reference: full quadrature on the decomposition grid
    cplx I_int, I_ext;
    cplx I1, I2, I3;
    // |I_ext + (1/t)(I₁ - I₂ - I₃)| — defect of the integration-by-parts form
    double stokes_defect;
};

Decomposition decompose_integral(const RadialGrid& grid, const RadialProfile& f, double t,
                                 cplx u, double eps);

}  // namespace nv
