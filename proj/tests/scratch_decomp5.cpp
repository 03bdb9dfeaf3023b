// scratch: piecewise convergence at t=1 (resolved regime)
#include <cstdio>
#include "nv/linearized.hpp"

using nv::cplx;

int main() {
    nv::RadialProfile f{1.0};
    const cplx u(24.0, 0.0);
    const double t = 1.0, eps = 0.12;
    for (int base : {512, 768, 1024, 1536, 2048}) {
        nv::RadialGrid grid({3.0, base, base});
        const auto d = nv::decompose_integral(grid, f, t, u, eps);
        std::printf(
            "n=%4d I=(%+.8e,%+.8e) Iint=(%+.8e) I1=(%+.8e,%+.8e) I2=(%+.8e,%+.8e) "
            "I3=(%+.8e,%+.8e) def=%.3e\n",
            base, d.I.real(), d.I.imag(), d.I_int.real(), d.I1.real(), d.I1.imag(),
            d.I2.real(), d.I2.imag(), d.I3.real(), d.I3.imag(), d.stokes_defect);
    }
    return 0;
}
