#include "nv/asymptotics.hpp"

#include <cmath>

#include "nv/parallel.hpp"

namespace nv {

double decay_normalizer(double t) { return std::log(3.0 + std::abs(t)) / (1.0 + std::abs(t)); }

DecayCurve decay_sweep(const DbarSolver& solver, const std::vector<double>& t_list,
                       const SweepOptions& opt) {
    for (std::size_t i = 0; i + 1 < t_list.size(); ++i)
        if (!(t_list[i] < t_list[i + 1]))
            throw ConfigError("decay_sweep: t_list must be strictly increasing");
    for (double t : t_list)
        if (t == 0.0) throw ConfigError("decay_sweep: t = 0 has no self-similar window");
    if (opt.resolution < 2) throw ConfigError("decay_sweep: resolution must be >= 2");

    const int n = opt.resolution;
    const double du = 2.0 * opt.u_window / (n - 1);

    DecayCurve curve;
    for (double t : t_list) {
        const int npts = n * n;
        std::vector<PotentialSample> samples(npts);
        std::vector<char> ok(npts, 0);
        parallel_for(npts, opt.threads, [&](int idx) {
            const int a = idx / n, b = idx % n;
            const cplx u(-opt.u_window + a * du, -opt.u_window + b * du);
            const cplx z = u * t;
            try {
                samples[idx] = solver.reconstruct_v(z, t);
                ok[idx] = 1;
            } catch (const NoConvergence&) {
                ok[idx] = 0;
            }
        });

        int failures = 0;
        double sup = 0.0;
        int arg = -1;
        for (int idx = 0; idx < npts; ++idx) {
            if (!ok[idx]) {
                ++failures;
                continue;
            }
            const double mag = std::abs(samples[idx].v);
            if (mag > sup) {
                sup = mag;
                arg = idx;
            }
        }
        curve.failures += failures;
        curve.total_points += npts;
        if (failures * 100 > npts)
            throw TooManyFailures("decay_sweep: " + std::to_string(failures) + " of " +
                                      std::to_string(npts) + " lattice points failed",
                                  failures, npts);
        if (arg >= 0 && sup > 0.0) {
            const int a = arg / n, b = arg % n;
            if (a == 0 || b == 0 || a == n - 1 || b == n - 1)
                throw WindowTooSmall("decay_sweep: argmax on the window boundary at t = " +
                                     std::to_string(t));
        }

        DecayEntry e;
        e.t = t;
        e.sup_v = sup;
        e.argmax_z = arg >= 0 ? samples[arg].z : cplx(0.0);
        e.normalizer = decay_normalizer(t);
        e.ratio = sup / e.normalizer;
        curve.entries.push_back(e);
    }
    return curve;
}

RayScan ray_scan(const DbarSolver& solver, cplx u, const std::vector<double>& t_list,
                 int threads) {
    for (std::size_t i = 0; i + 1 < t_list.size(); ++i)
        if (!(t_list[i] < t_list[i + 1]))
            throw ConfigError("ray_scan: t_list must be strictly increasing");

    RayScan scan;
    scan.u = u;
    scan.samples.resize(t_list.size());
    std::vector<char> ok(t_list.size(), 1);
    parallel_for(static_cast<int>(t_list.size()), threads, [&](int i) {
        const double t = t_list[i];
        try {
            const PotentialSample s = solver.reconstruct_v(u * t, t);
            scan.samples[i] = {t, std::abs(s.v)};
        } catch (const NoConvergence&) {
            ok[i] = 0;
        }
    });
    int failures = 0;
    for (char c : ok)
        if (!c) ++failures;
    if (failures > 0)
        throw TooManyFailures("ray_scan: " + std::to_string(failures) + " of " +
                                  std::to_string(t_list.size()) + " samples failed",
                              failures, static_cast<int>(t_list.size()));
    return scan;
}

ConstantFit fit_constant(const DecayCurve& curve) {
    if (curve.entries.size() < 4)
        throw InsufficientData("fit_constant: need >= 4 entries, have " +
                               std::to_string(curve.entries.size()));
    double c_hat = 0.0;
    for (const auto& e : curve.entries) c_hat = std::max(c_hat, e.ratio);
    const double first = curve.entries.front().ratio;
    const double trend = first > 0.0 ? c_hat / first : (c_hat > 0.0 ? 1e300 : 0.0);
    return {c_hat, trend, trend <= 3.0};
}

}  // namespace nv
