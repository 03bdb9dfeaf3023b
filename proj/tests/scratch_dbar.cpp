// scratch: born window calibration + dbar invariant magnitudes
#include <cstdio>
#include "nv/dbar.hpp"
#include "nv/linearized.hpp"

using nv::cplx;

int main() {
    nv::RadialProfile f{1.0};
    {
        nv::RadialGrid g({3.0, 96, 72});
        for (double t : {0.1, 0.2}) {
            for (double hw : {50.0, 70.0, 90.0}) {
                const int n = static_cast<int>(2 * hw / 0.3) | 1;
                try {
                    const auto bg = nv::born_support_check(g, f, t, hw, n);
                    std::printf("born t=%.1f hw=%.0f n=%d: gap=%.4e bnd=%.2e\n", t, hw, n,
                                bg.max_in_gap, bg.boundary_frac);
                } catch (const std::exception& e) {
                    std::printf("born t=%.1f hw=%.0f: %s\n", t, hw, e.what());
                }
            }
        }
    }

    nv::ScatteringData sd{nv::ScatteringFamily::Default, 0.05};
    nv::RadialGrid grid({3.0, 128, 96});
    nv::DbarSolver solver(grid, sd, {});

    // B·1 decay along ln(t)/t
    for (const cplx z0 : {cplx(0.0, 0.0), cplx(5.0, 2.0)}) {
        std::printf("B1 at z0=(%.0f,%.0f): ", z0.real(), z0.imag());
        std::vector<cplx> ones(grid.size(), cplx(1.0));
        for (double t : {10.0, 20.0, 40.0}) {
            const cplx b1 = solver.apply_B(z0 + cplx(24.0, 0.0) * t, t, ones);
            std::printf("t=%2.0f |B1|=%.3e lnT/T=%.3e  ", t, std::abs(b1),
                        std::log(t) / t);
        }
        std::printf("\n");
    }

    // A-power norms
    for (double t : {10.0, 31.62, 100.0}) {
        const auto norms = solver.even_power_norms(cplx(24.0, 0.0) * t, t, 3);
        std::printf("t=%6.2f  |A^2 1|=%.3e |A^4 1|=%.3e |A^6 1|=%.3e\n", t, norms[0],
                    norms[1], norms[2]);
    }

    // mu tail + ring-jump + reality at a few (z,t)
    for (double t : {0.0, 1.0, 5.0}) {
        const cplx z(1.0, -0.5);
        const auto mu = solver.solve_mu(z, t);
        double tail = 0.0;
        for (int k = 0; k < grid.n_theta(); ++k)
            tail = std::max(tail,
                            std::abs(mu.mu[grid.index(grid.n_r() - 1, k)] - cplx(1.0)));
        const double bound = 5.0 * std::abs(mu.mu_minus1) / grid.rho(grid.n_r() - 1);
        // ring-jump stats over |s| <= 1.5
        std::vector<double> jumps;
        for (int j = 0; j + 1 < grid.n_r(); ++j) {
            if (std::abs(grid.s(j)) > 1.5) continue;
            double m = 0.0;
            for (int k = 0; k < grid.n_theta(); ++k)
                m = std::max(m, std::abs(mu.mu[grid.index(j + 1, k)] -
                                         mu.mu[grid.index(j, k)]));
            jumps.push_back(m);
        }
        std::sort(jumps.begin(), jumps.end());
        const double median = jumps[jumps.size() / 2];
        const double maxj = jumps.back();
        const auto p = solver.reconstruct_v(z, t);
        std::printf("t=%.0f: iters=%d tail=%.2e bound=%.2e  jump max/med=%.1f  v=(%.3e,%.1e)\n",
                    t, mu.iterations, tail, bound, maxj / median, p.v.real(), p.v.imag());
    }

    // a1 vs lambda*(A 1) at the outer ring
    {
        const cplx z(3.0, 1.0);
        const double t = 2.0;
        std::vector<cplx> ones(grid.size(), cplx(1.0));
        const auto A1 = solver.apply_A(z, t, ones);
        const cplx a1 = solver.apply_B(z, t, ones) / 3.14159265358979323846;
        double worst = 0.0;
        for (int k = 0; k < grid.n_theta(); ++k) {
            const int idx = grid.index(grid.n_r() - 1, k);
            worst = std::max(worst,
                             std::abs(grid.nodes()[idx] * A1[idx] - a1) / std::abs(a1));
        }
        std::printf("a1 tail consistency: worst rel dev=%.3f (|a1|=%.3e)\n", worst,
                    std::abs(a1));
    }
    return 0;
}
