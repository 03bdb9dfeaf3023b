#pragma once

/*
 * Phase geometry of the oscillatory reconstruction integrals.
 *
 * The phase in self-similar variables u = z/t is
 *
 *     S(u,ζ) = -½( ζ̄u + ζū + u/ζ + ū/ζ̄ ) + ( ζ³ + ζ̄³ + 1/ζ³ + 1/ζ̄³ ),
 *
 * a real-valued function of ζ ∈ ℂ\{0}. Its stationary points solve
 *
 *     S'_ζ  = -ū/2 + u/(2ζ²) + 3ζ² - 3/ζ⁴ = 0,
 *     S''_ζζ = -u/ζ³ + 6ζ + 12/ζ⁵        (degeneracy indicator)
 *
 * and are ζ = ±√ξ over the roots ξ of the cubic
 *
 *     P(ξ) = ξ³ - (ū/6) ξ² + (u/6) ξ - 1,
 *
 * since S'_ζ = (3/ζ⁴)(ζ² - ξ₀)(ζ² - ξ₁)(ζ² - ξ₂) and ξ₀ξ₁ξ₂ = 1.
 *
 * The moduli of the ξᵢ classify u against the deltoid-like curve
 *
 *     𝒰: u(φ) = 6( 2e^{-iφ} + e^{2iφ} ),
 *
 * whose tangent lines are u(φ,s) = u(φ) + s e^{iφ/2}:
 *   - all |ξᵢ| = 1, distinct        -> u strictly inside the region (all six
 *                                      stationary points on |ζ|=1, non-degenerate)
 *   - double root on the circle     -> u on the curve (regular point)
 *   - triple root (u = 18e^{2πik/3})-> cusp of the curve
 *   - one root off the circle       -> u outside; the off-circle root pairs
 *                                      with a reciprocal partner, |ξ₀||ξ₂| = 1.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <tuple>

#include "nv/errors.hpp"

namespace nv {

using cplx = std::complex<double>;

namespace detail {
inline constexpr double kPi = 3.14159265358979323846;
}

// S(u,ζ); real by construction (every bracket is twice a real part).
inline double phase(cplx u, cplx zeta) {
    if (zeta == cplx(0.0, 0.0)) throw PoleAtOrigin("phase: zeta = 0");
    const cplx z3 = zeta * zeta * zeta;
    return -(u * std::conj(zeta)).real() - (u / zeta).real() +
           2.0 * (z3.real() + (1.0 / z3).real());
}

// S(λ,z,t) = {z-part} + t·{cubic part}; equals t·phase(z/t, λ) for t != 0 and
// stays well defined at t = 0.
inline double phase_raw(cplx z, double t, cplx lambda) {
    if (lambda == cplx(0.0, 0.0)) throw PoleAtOrigin("phase_raw: lambda = 0");
    const cplx l3 = lambda * lambda * lambda;
    return -(z * std::conj(lambda)).real() - (z / lambda).real() +
           t * 2.0 * (l3.real() + (1.0 / l3).real());
}

inline cplx phase_dzeta(cplx u, cplx zeta) {
    if (zeta == cplx(0.0, 0.0)) throw PoleAtOrigin("phase_dzeta: zeta = 0");
    const cplx z2 = zeta * zeta;
    return -std::conj(u) / 2.0 + u / (2.0 * z2) + 3.0 * z2 - 3.0 / (z2 * z2);
}

// ∂_λ of the raw phase S(λ,z,t)
inline cplx phase_raw_dzeta(cplx z, double t, cplx lambda) {
    if (lambda == cplx(0.0, 0.0)) throw PoleAtOrigin("phase_raw_dzeta: lambda = 0");
    const cplx l2 = lambda * lambda;
    return -std::conj(z) / 2.0 + z / (2.0 * l2) + t * (3.0 * l2 - 3.0 / (l2 * l2));
}

inline cplx phase_d2zeta(cplx u, cplx zeta) {
    if (zeta == cplx(0.0, 0.0)) throw PoleAtOrigin("phase_d2zeta: zeta = 0");
    const cplx z2 = zeta * zeta;
    const cplx z3 = z2 * zeta;
    return -u / z3 + 6.0 * zeta + 12.0 / (z3 * z2);
}

// Product form of S'_ζ from the cubic roots; used as an independent route in
// consistency checks.
inline cplx phase_dzeta_product(cplx zeta, cplx xi0, cplx xi1, cplx xi2) {
    const cplx z2 = zeta * zeta;
    return 3.0 / (z2 * z2) * (z2 - xi0) * (z2 - xi1) * (z2 - xi2);
}

struct CubicRoots {
    std::array<cplx, 3> xi;           // ordered: see solve_cubic
    std::array<int, 3> multiplicity;  // cluster sizes under kRootClusterTol
};

inline constexpr double kCircleTol = 1e-7;       // "on the unit circle" band
inline constexpr double kRootClusterTol = 5e-5;  // double/triple detection

namespace detail {

// Cardano for the monic depressed form, then two Newton polish sweeps on the
// full polynomial. Closed form alone loses ~cbrt(eps) of accuracy near the
// triple root u = 18e^{2πik/3}.
inline std::array<cplx, 3> cardano_roots(cplx u) {
    const cplx A = -std::conj(u) / 6.0;
    const cplx B = u / 6.0;
    const cplx C = cplx(-1.0, 0.0);

    const cplx p = B - A * A / 3.0;
    const cplx q = 2.0 * A * A * A / 27.0 - A * B / 3.0 + C;

    std::array<cplx, 3> y;
    const cplx disc = q * q / 4.0 + p * p * p / 27.0;
    const cplx sq = std::sqrt(disc);
    cplx wc = -q / 2.0 + sq;
    if (std::abs(-q / 2.0 - sq) > std::abs(wc)) wc = -q / 2.0 - sq;
    if (std::abs(wc) == 0.0) {
        y = {cplx(0.0), cplx(0.0), cplx(0.0)};
    } else {
        const cplx w = std::pow(wc, 1.0 / 3.0);
        const cplx omega(-0.5, 0.8660254037844386467637);
        cplx wk = w;
        for (int k = 0; k < 3; ++k) {
            y[k] = wk - p / (3.0 * wk);
            wk *= omega;
        }
    }

    std::array<cplx, 3> xi;
    for (int k = 0; k < 3; ++k) xi[k] = y[k] - A / 3.0;

    for (int sweep = 0; sweep < 2; ++sweep) {
        for (auto& x : xi) {
            const cplx P = ((x + A) * x + B) * x + C;
            const cplx dP = (3.0 * x + 2.0 * A) * x + B;
            if (std::abs(dP) > 1e-30) x -= P / dP;
        }
    }
    return xi;
}

}  // namespace detail

// Roots of P(ξ) = ξ³ - (ū/6)ξ² + (u/6)ξ - 1.
//
// Ordering convention: if a root lies off the unit circle, it leads as ξ₀
// with |ξ₀| >= 1 and its reciprocal partner is ξ₂; otherwise clustered roots
// lead (multiplicity descending), ties broken by |arg| then by arg.
inline CubicRoots solve_cubic(cplx u) {
    std::array<cplx, 3> xi = detail::cardano_roots(u);

    std::array<int, 3> mult{1, 1, 1};
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (std::abs(xi[i] - xi[j]) < kRootClusterTol) {
                ++mult[i];
                ++mult[j];
            }

    const auto dev = [](cplx x) { return std::abs(std::abs(x) - 1.0); };
    int off = -1;
    for (int i = 0; i < 3; ++i)
        if (dev(xi[i]) >= kCircleTol && (off < 0 || dev(xi[i]) > dev(xi[off]))) off = i;

    CubicRoots out;
    if (off >= 0) {
        // off-circle leader, normalized to the exterior representative
        int lead = off;
        for (int i = 0; i < 3; ++i)
            if (std::abs(xi[i]) > std::abs(xi[lead])) lead = i;
        // reciprocal partner: minimizes | |ξ_lead||ξ_j| - 1 |
        int part = -1;
        double best = 1e300;
        for (int i = 0; i < 3; ++i) {
            if (i == lead) continue;
            const double d = std::abs(std::abs(xi[lead]) * std::abs(xi[i]) - 1.0);
            if (d < best) {
                best = d;
                part = i;
            }
        }
        const int mid = 3 - lead - part;
        out.xi = {xi[lead], xi[mid], xi[part]};
        out.multiplicity = {mult[lead], mult[mid], mult[part]};
    } else {
        std::array<int, 3> idx{0, 1, 2};
        const auto key = [&](int i) {
            return std::make_tuple(-mult[i], std::abs(std::arg(xi[i])), -std::arg(xi[i]));
        };
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return key(a) < key(b); });
        out.xi = {xi[idx[0]], xi[idx[1]], xi[idx[2]]};
        out.multiplicity = {mult[idx[0]], mult[idx[1]], mult[idx[2]]};
    }
    return out;
}

struct StationaryPoint {
    cplx zeta;
    bool degenerate;
    int multiplicity;  // of the underlying cubic root
};

// The six stationary points ζ = ±√ξᵢ, ordered (+√ξ₀, -√ξ₀, +√ξ₁, ...).
inline std::array<StationaryPoint, 6> stationary_points(cplx u) {
    const CubicRoots roots = solve_cubic(u);
    const double tol2 = 1e-6 * (1.0 + std::abs(u));
    std::array<StationaryPoint, 6> pts;
    for (int i = 0; i < 3; ++i) {
        const cplx root = std::sqrt(roots.xi[i]);
        for (int sgn = 0; sgn < 2; ++sgn) {
            const cplx zeta = (sgn == 0) ? root : -root;
            pts[2 * i + sgn] = {zeta, std::abs(phase_d2zeta(u, zeta)) < tol2,
                                roots.multiplicity[i]};
        }
    }
    return pts;
}

// The curve u(φ) = 6(2e^{-iφ} + e^{2iφ}) of parameters with degenerate
// stationary points, and its tangent line u(φ,s) = u(φ) + s e^{iφ/2}.
inline cplx curve_point(double phi) {
    return 6.0 * (2.0 * std::polar(1.0, -phi) + std::polar(1.0, 2.0 * phi));
}

inline cplx tangent_line(double phi, double s) {
    return curve_point(phi) + s * std::polar(1.0, phi / 2.0);
}

enum class RegionKind { Interior, BoundaryRegular, BoundaryCusp, Exterior };

struct RegionClass {
    RegionKind kind;
    double phi = 0.0;    // boundary/exterior witness: arg of the marked root
    double omega = 0.0;  // exterior witness: |ζ₀| - 1 = √|ξ₀| - 1
    CubicRoots roots;
};

inline const char* region_name(RegionKind k) {
    switch (k) {
        case RegionKind::Interior: return "Interior";
        case RegionKind::BoundaryRegular: return "BoundaryRegular";
        case RegionKind::BoundaryCusp: return "BoundaryCusp";
        case RegionKind::Exterior: return "Exterior";
    }
    return "?";
}

// Classification by root moduli. Moduli falling in the indecisive band
// (kCircleTol, 10·kCircleTol) raise AmbiguousClassification with the raw
// values rather than being silently resolved.
inline RegionClass classify_region(cplx u) {
    RegionClass rc;
    rc.roots = solve_cubic(u);

    for (int k = 0; k < 3; ++k) {
        const double d = std::abs(u - 18.0 * std::polar(1.0, 2.0 * detail::kPi * k / 3.0));
        if (d < kCircleTol) {
            rc.kind = RegionKind::BoundaryCusp;
            rc.phi = std::arg(rc.roots.xi[0]);
            return rc;
        }
    }

    std::array<double, 3> dev;
    bool band = false, off = false;
    for (int i = 0; i < 3; ++i) {
        dev[i] = std::abs(std::abs(rc.roots.xi[i]) - 1.0);
        if (dev[i] >= kCircleTol && dev[i] < 10.0 * kCircleTol) band = true;
        if (dev[i] >= 10.0 * kCircleTol) off = true;
    }
    if (band) {
        std::string msg = "classify_region: root moduli in tolerance band:";
        for (int i = 0; i < 3; ++i)
            msg += " " + std::to_string(std::abs(rc.roots.xi[i]));
        throw AmbiguousClassification(msg);
    }

    if (!off) {
        // all roots on the circle: interior unless a cluster collapses
        if (rc.roots.multiplicity[0] >= 3) {
            rc.kind = RegionKind::BoundaryCusp;
            rc.phi = std::arg(rc.roots.xi[0]);
        } else if (rc.roots.multiplicity[0] == 2) {
            rc.kind = RegionKind::BoundaryRegular;
            rc.phi = std::arg(rc.roots.xi[0]);
        } else {
            rc.kind = RegionKind::Interior;
        }
        return rc;
    }

    // exterior pattern: ξ₀ off the circle, ξ₂ its reciprocal, ξ₁ on it
    const double recip = std::abs(std::abs(rc.roots.xi[0]) * std::abs(rc.roots.xi[2]) - 1.0);
    if (recip > 1e-9 || dev[1] >= kCircleTol) {
        std::string msg = "classify_region: inconsistent off-circle pattern, moduli:";
        for (int i = 0; i < 3; ++i)
            msg += " " + std::to_string(std::abs(rc.roots.xi[i]));
        throw AmbiguousClassification(msg);
    }
    rc.kind = RegionKind::Exterior;
    rc.phi = std::arg(rc.roots.xi[0]);
    rc.omega = std::sqrt(std::abs(rc.roots.xi[0])) - 1.0;
    return rc;
}

}  // namespace nv
