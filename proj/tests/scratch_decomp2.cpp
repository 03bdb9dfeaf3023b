// scratch: isolate the systematic defect source at (u=24, t=16)
#include <cstdio>
#include "nv/linearized.hpp"

using nv::cplx;

int main() {
    nv::RadialProfile f{1.0};
    const cplx u(24.0, 0.0);
    const double t = 16.0, eps = 1.0 / t;
    for (int base : {512, 1024, 1536, 2048}) {
        nv::RadialGrid grid({3.0, base, base});
        const auto d = nv::decompose_integral(grid, f, t, u, eps);
        std::printf("n=%4d |I|=%.6e Iint=(%.3e,%.3e) I1=(%.3e,%.3e) I2=(%.3e,%.3e) I3=(%.3e,%.3e) def=%.3e rel=%.3e\n",
                    base, std::abs(d.I), d.I_int.real(), d.I_int.imag(), d.I1.real(),
                    d.I1.imag(), d.I2.real(), d.I2.imag(), d.I3.real(), d.I3.imag(),
                    d.stokes_defect, d.stokes_defect / std::abs(d.I));
    }
    return 0;
}
