#pragma once

/*
 * Large-time decay laboratory: sweeps of sup_z |v(z,t)| against the
 * normalizer ln(3+|t|)/(1+|t|), and scans along spacetime rays z = u·t where
 * a soliton would show up as a non-decaying amplitude.
 *
 * Sweeps sample the self-similar velocity u = z/t on a fixed lattice, so the
 * z-window scales with t automatically and covers every stationary-phase
 * velocity (the curve of degenerate parameters peaks at |u| = 18).
 */

#include <complex>
#include <utility>
#include <vector>

#include "nv/dbar.hpp"

namespace nv {

struct DecayEntry {
    double t;
    double sup_v;
    cplx argmax_z;
    double normalizer;  // ln(3+|t|)/(1+|t|)
    double ratio;       // sup_v / normalizer
};

struct DecayCurve {
    std::vector<DecayEntry> entries;
    int failures = 0;  // lattice points excluded for NoConvergence
    int total_points = 0;
};

struct RayScan {
    cplx u;
    std::vector<std::pair<double, double>> samples;  // (t, |v(ut,t)|)
};

struct SweepOptions {
    double u_window = 60.0;  // lattice over [-u_window, u_window]²
    int resolution = 64;     // points per side
    int threads = 0;         // 0 = NV_THREADS / hardware
};

double decay_normalizer(double t);

DecayCurve decay_sweep(const DbarSolver& solver, const std::vector<double>& t_list,
                       const SweepOptions& opt = {});

RayScan ray_scan(const DbarSolver& solver, cplx u, const std::vector<double>& t_list,
                 int threads = 0);

struct ConstantFit {
    double c_hat;      // max ratio over entries
    double max_ratio;  // max ratio / first ratio (trend; > 3 flags failure)
    bool bounded;
};

ConstantFit fit_constant(const DecayCurve& curve);

}  // namespace nv
