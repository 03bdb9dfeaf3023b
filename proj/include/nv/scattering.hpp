#pragma once

/*
 * Scattering data b(λ) for the 2D Schrödinger problem at fixed energy E = 1,
 * its time evolution under the Novikov–Veselov flow, and the d-bar
 * coefficient r(λ) driving the reconstruction of transparent potentials.
 *
 * The built-in family is radial and real,
 *
 *     b(λ) = c · exp( -s² - 1/s² ),   s = ln|λ|,
 *
 * which vanishes to all orders on the unit circle |λ| = 1, decays faster
 * than any power as |λ| -> 0, ∞, and satisfies both admissibility symmetries
 *
 *     b(1/λ̄) = b(λ),    b(-1/λ̄) = conj(b(λ))
 *
 * simultaneously (s -> -s and realness).
 *
 * Time evolution of the data is diagonal in λ:
 *
 *     ∂b(λ,t)/∂t = i (λ³ + 1/λ³ + λ̄³ + 1/λ̄³) b(λ,t),
 *
 * so |b| is conserved. The static d-bar coefficient is
 *
 *     r(λ) = π sgn(λλ̄ - 1) / λ̄ · b(λ,0),
 *
 * with r = 0 on |λ| = 1 (forced by the flatness of b), and the full
 * coefficient is r(λ,z,t) = exp(iS(λ,z,t)) r(λ) with the phase S evaluated
 * in phase.hpp.
 */

#include <cmath>
#include <complex>

#include "nv/errors.hpp"

namespace nv {

using cplx = std::complex<double>;

// b(λ) of the default family at strength c; returns a real value.
// Defined as 0 at λ = 0 and on |λ| = 1 (flat limits, no error).
inline cplx default_b(cplx lambda, double c) {
    const double rho = std::abs(lambda);
    if (rho == 0.0) return 0.0;
    const double s = std::log(rho);
    if (std::abs(s) < 1e-8) return 0.0;
    const double g = s * s + 1.0 / (s * s);
    if (g > 700.0) return 0.0;  // exp underflow guard
    return c * std::exp(-g);
}

// b(λ,t) = b0 · exp( i t (λ³ + 1/λ³ + λ̄³ + 1/λ̄³) ); the exponent is purely
// imaginary, so the modulus of b0 is preserved exactly.
inline cplx evolve_b(cplx b0, cplx lambda, double t) {
    if (lambda == cplx(0.0, 0.0))
        throw InvalidSpectralPoint("evolve_b: lambda = 0");
    const cplx l3 = lambda * lambda * lambda;
    const double omega = 2.0 * (l3.real() + (1.0 / l3).real());
    const double arg = t * omega;
    return b0 * cplx(std::cos(arg), std::sin(arg));
}

enum class ScatteringFamily { Default };

// Admissible scattering data: family tag plus strength c >= 0.
struct ScatteringData {
    ScatteringFamily family = ScatteringFamily::Default;
    double c = 0.05;

    cplx b0(cplx lambda) const { return default_b(lambda, c); }

    cplx b(cplx lambda, double t) const {
        if (lambda == cplx(0.0, 0.0)) return 0.0;  // flat limit
        if (t == 0.0) return b0(lambda);
        return evolve_b(b0(lambda), lambda, t);
    }

    // r(λ) = π sgn(|λ|² - 1)/λ̄ · b(λ,0); sgn(0) := 0 keeps r continuous
    // through the circle, where b = 0 forces r = 0 anyway.
    cplx r_static(cplx lambda) const {
        if (lambda == cplx(0.0, 0.0))
            throw InvalidSpectralPoint("r_static: lambda = 0");
        const double m = std::norm(lambda);
        const double sgn = (m > 1.0) ? 1.0 : (m < 1.0 ? -1.0 : 0.0);
        const double pi = 3.14159265358979323846;
        return pi * sgn / std::conj(lambda) * b0(lambda);
    }
};

inline cplx r_static(cplx lambda, double c) {
    return ScatteringData{ScatteringFamily::Default, c}.r_static(lambda);
}

}  // namespace nv
