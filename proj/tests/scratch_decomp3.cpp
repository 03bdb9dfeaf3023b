// scratch: identity at strong-amplitude exterior u (stationary point on the shell)
#include <cstdio>
#include "nv/linearized.hpp"

using nv::cplx;

int main() {
    nv::RadialProfile f{1.0};
    for (const cplx u : {cplx(51.0, 0.0), cplx(36.0, 36.0), cplx(0.0, -51.0),
                         cplx(-40.0, 25.0)}) {
        std::printf("u=(%5.1f,%5.1f) class=%s |zeta0|=%.3f\n", u.real(), u.imag(),
                    nv::region_name(nv::classify_region(u).kind),
                    std::sqrt(std::abs(nv::solve_cubic(u).xi[0])));
        for (double t : {10.0, 16.0, 25.0, 32.0, 40.0}) {
            const double eps = 1.0 / t;
            for (int base : {512, 768}) {
                nv::RadialGrid grid({3.0, base, base});
                const auto d = nv::decompose_integral(grid, f, t, u, eps);
                const double rel = std::abs(d.I) > 0 ? d.stokes_defect / std::abs(d.I) : 0.0;
                std::printf("  t=%4.1f n=%4d |I|=%.4e def=%.3e rel=%.3e\n", t, base,
                            std::abs(d.I), d.stokes_defect, rel);
            }
        }
    }
    return 0;
}
