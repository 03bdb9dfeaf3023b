#include "nv/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "nv/asymptotics.hpp"
#include "nv/config.hpp"
#include "nv/csv.hpp"
#include "nv/dbar.hpp"
#include "nv/linearized.hpp"
#include "nv/parallel.hpp"
#include "nv/phase.hpp"

namespace nv::cli {

namespace {

using json = nlohmann::json;

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ConfigError("cannot parse number '" + item + "' in list");
        }
    }
    if (out.empty()) throw ConfigError("empty numeric list");
    return out;
}

struct OutputSink {
    std::string path;        // "" = stdout
    std::ostringstream buf;  // CSV accumulates here
    json summary;
    int failures = 0;

    void flush(std::ostream& stdout_stream, const RunConfig& cfg, const std::string& subcmd,
               double wall_s) {
        if (path.empty()) {
            stdout_stream << buf.str();
            return;
        }
        {
            std::ofstream f(path);
            if (!f) throw ConfigError("cannot write output file '" + path + "'");
            f << buf.str();
        }
        json manifest;
        manifest["tool"] = kToolName;
        manifest["version"] = kVersion;
        manifest["subcommand"] = subcmd;
        manifest["config"] = json::parse(serialize_config(cfg));
        manifest["wall_time_s"] = wall_s;
        manifest["failures"] = failures;
        manifest["outputs"] = json::array({path});
        manifest["summary"] = summary;
        std::ofstream m(path + ".manifest.json");
        if (!m) throw ConfigError("cannot write manifest beside '" + path + "'");
        m << manifest.dump(2) << "\n";
    }
};

void emit_roots_row(CsvWriter& csv, cplx u) {
    std::string cls;
    CubicRoots roots;
    try {
        const RegionClass rc = classify_region(u);
        cls = region_name(rc.kind);
        roots = rc.roots;
    } catch (const AmbiguousClassification&) {
        cls = "Ambiguous";
        roots = solve_cubic(u);
    }
    csv.begin_row();
    csv.col(u.real()).col(u.imag()).col(cls);
    for (int i = 0; i < 3; ++i) csv.col(roots.xi[i].real()).col(roots.xi[i].imag());
    csv.end_row();
}

int run_selftest(const RunConfig& cfg, std::ostream& out) {
    out << kToolName << " selftest\n";

    RadialGrid grid({cfg.quadrature.s_max, 64, 64});
    const double expected =
        3.14159265358979323846 *
        (std::exp(2.0 * cfg.quadrature.s_max) - std::exp(-2.0 * cfg.quadrature.s_max));
    out << "  annulus weight: " << csv_num(grid.total_weight()) << " (expected "
        << csv_num(expected) << ")\n";

    const CubicRoots triple = solve_cubic(18.0);
    out << "  cubic at the cusp: roots";
    for (const auto& x : triple.xi) out << " " << csv_num(x.real());
    out << "\n";

    ScatteringData zero{ScatteringFamily::Default, 0.0};
    DbarSolver solver(grid, zero, cfg.solver);
    const PotentialSample p0 = solver.reconstruct_v(cplx(0.4, -0.3), 1.0);
    out << "  zero-strength potential: v = " << csv_num(p0.v.real()) << " + "
        << csv_num(p0.v.imag()) << "i\n";
    const MuSolution m0 = solver.solve_mu(cplx(0.0), 0.0);
    double mu_dev = 0.0;
    for (const auto& m : m0.mu) mu_dev = std::max(mu_dev, std::abs(m - cplx(1.0)));
    out << "  zero-strength mu field: max |mu - 1| = " << csv_num(mu_dev) << "\n";

    if (p0.v != cplx(0.0) || mu_dev != 0.0) {
        out << "selftest FAILED\n";
        return 3;
    }
    out << "selftest OK\n";
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"transparent-potential laboratory for the Novikov-Veselov flow"};
    app.name(kToolName);

    std::string config_path, out_path;
    RunConfig cfg;
    app.add_option("--config", config_path, "JSON configuration file");
    app.add_option("--out", out_path, "output CSV path (manifest written beside it)");
    int threads = -1;
    double c_override = -1.0;
    app.add_option("--threads", threads, "worker thread cap (0 = auto)");
    app.add_option("--c", c_override, "scattering strength override");

    auto* sc_roots = app.add_subcommand("roots", "cubic roots and region class at one u");
    double u_re = 0.0, u_im = 0.0;
    sc_roots->add_option("--u-re", u_re)->required();
    sc_roots->add_option("--u-im", u_im);

    auto* sc_region = app.add_subcommand("region", "region classes over a u-lattice");
    int region_grid = 41;
    double region_extent = 25.0;
    sc_region->add_option("--grid", region_grid, "lattice points per side");
    sc_region->add_option("--extent", region_extent, "lattice spans [-extent, extent]^2");

    auto* sc_lin = app.add_subcommand("linearized", "linearized field I, J over (t,u)");
    std::string lin_tlist = "5,10,20,40";
    int lin_ugrid = 11;
    double lin_extent = 25.0;
    sc_lin->add_option("--t-list", lin_tlist, "comma-separated times");
    sc_lin->add_option("--u-grid", lin_ugrid, "lattice points per side");
    sc_lin->add_option("--extent", lin_extent);

    auto* sc_dec = app.add_subcommand("decompose", "stationary-phase decomposition of I");
    double dec_t = 10.0, dec_ure = 0.0, dec_uim = 0.0, dec_eps = 0.1;
    sc_dec->add_option("--t", dec_t)->required();
    sc_dec->add_option("--u-re", dec_ure)->required();
    sc_dec->add_option("--u-im", dec_uim);
    sc_dec->add_option("--eps", dec_eps)->required();

    auto* sc_rec = app.add_subcommand("reconstruct", "potential v on a z-lattice");
    int rec_grid = 9;
    double rec_extent = 4.0, rec_t = 0.0;
    sc_rec->add_option("--z-grid", rec_grid, "lattice points per side");
    sc_rec->add_option("--z-extent", rec_extent, "lattice spans [-extent, extent]^2");
    sc_rec->add_option("--t", rec_t)->required();

    auto* sc_sweep = app.add_subcommand("decay-sweep", "sup |v| against ln(3+t)/(1+t)");
    std::string sweep_tlist = "5,10,20,40";
    sc_sweep->add_option("--t", sweep_tlist, "comma-separated times");
    int sweep_res = -1;
    double sweep_window = -1.0;
    sc_sweep->add_option("--resolution", sweep_res, "u-lattice points per side");
    sc_sweep->add_option("--u-window", sweep_window, "u-lattice half-width");

    auto* sc_ray = app.add_subcommand("ray-scan", "|v(ut,t)| along a spacetime ray");
    double ray_ure = 0.0, ray_uim = 0.0;
    std::string ray_tlist = "10,20,40";
    sc_ray->add_option("--u-re", ray_ure)->required();
    sc_ray->add_option("--u-im", ray_uim);
    sc_ray->add_option("--t-list", ray_tlist);

    auto* sc_self = app.add_subcommand("selftest", "quick internal consistency battery");
    (void)sc_self;

    app.require_subcommand(1);

    std::vector<std::string> argv_copy(args);
    try {
        std::vector<const char*> argv;
        argv.push_back(kToolName);
        for (const auto& a : argv_copy) argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n" << app.help();
        return 2;
    }

    const auto t0 = std::chrono::steady_clock::now();
    try {
        if (!config_path.empty()) cfg = load_config_file(config_path);
        if (threads >= 0) cfg.threads = threads;
        if (c_override >= 0.0) cfg.scattering.c = c_override;
        if (!out_path.empty()) cfg.out = out_path;
        cfg.validate();

        OutputSink sink;
        sink.path = cfg.out;
        CsvWriter csv(sink.buf);
        std::string subcmd;

        if (sc_roots->parsed()) {
            subcmd = "roots";
            csv.header("u_re", "u_im", "class", "xi0_re", "xi0_im", "xi1_re", "xi1_im",
                       "xi2_re", "xi2_im");
            emit_roots_row(csv, cplx(u_re, u_im));
        } else if (sc_region->parsed()) {
            subcmd = "region";
            if (region_grid < 2) throw ConfigError("region: --grid must be >= 2");
            csv.header("u_re", "u_im", "class", "xi0_re", "xi0_im", "xi1_re", "xi1_im",
                       "xi2_re", "xi2_im");
            std::map<std::string, int> counts;
            const double du = 2.0 * region_extent / (region_grid - 1);
            for (int a = 0; a < region_grid; ++a)
                for (int b = 0; b < region_grid; ++b) {
                    const cplx u(-region_extent + a * du, -region_extent + b * du);
                    std::string cls;
                    try {
                        cls = region_name(classify_region(u).kind);
                    } catch (const AmbiguousClassification&) {
                        cls = "Ambiguous";
                    }
                    ++counts[cls];
                    emit_roots_row(csv, u);
                }
            for (const auto& [k, v] : counts) sink.summary["counts"][k] = v;
        } else if (sc_lin->parsed()) {
            subcmd = "linearized";
            const auto ts = parse_list(lin_tlist);
            if (lin_ugrid < 2) throw ConfigError("linearized: --u-grid must be >= 2");
            RadialGrid grid(cfg.quadrature);
            RadialProfile f{1.0};
            csv.header("t", "u_re", "u_im", "I_re", "I_im", "J_re", "J_im", "abs_I",
                       "normalizer", "ratio");
            const double du = 2.0 * lin_extent / (lin_ugrid - 1);
            double worst_ratio = 0.0;
            for (double t : ts)
                for (int a = 0; a < lin_ugrid; ++a)
                    for (int b = 0; b < lin_ugrid; ++b) {
                        const cplx u(-lin_extent + a * du, -lin_extent + b * du);
                        const cplx I = eval_I(grid, f, t, u);
                        const cplx J = eval_J(grid, f, t, u);
                        const double norm = decay_normalizer(t);
                        const double ratio = std::abs(I) / norm;
                        worst_ratio = std::max(worst_ratio, ratio);
                        csv.begin_row();
                        csv.col(t).col(u.real()).col(u.imag());
                        csv.col(I.real()).col(I.imag()).col(J.real()).col(J.imag());
                        csv.col(std::abs(I)).col(norm).col(ratio);
                        csv.end_row();
                    }
            sink.summary["max_ratio"] = worst_ratio;
        } else if (sc_dec->parsed()) {
            subcmd = "decompose";
            // decomposition runs on its own grid, refined until the disk radius
            // clears 2 max(ds, dtheta)
            GridConfig gc = cfg.quadrature;
            while (2.0 * std::max(2.0 * gc.s_max / gc.n_r, 6.283185307179586 / gc.n_theta) >=
                   dec_eps) {
                gc.n_r *= 2;
                gc.n_theta *= 2;
                if (gc.n_r > 4096)
                    throw EpsilonTooSmall("decompose: eps needs finer than 4096^2 nodes");
            }
            RadialGrid grid(gc);
            RadialProfile f{1.0};
            const Decomposition d =
                decompose_integral(grid, f, dec_t, cplx(dec_ure, dec_uim), dec_eps);
            csv.header("t", "u_re", "u_im", "eps", "I_re", "I_im", "I_int_re", "I_int_im",
                       "I_ext_re", "I_ext_im", "I1_re", "I1_im", "I2_re", "I2_im", "I3_re",
                       "I3_im", "stokes_defect");
            csv.begin_row();
            csv.col(dec_t).col(dec_ure).col(dec_uim).col(d.eps);
            csv.col(d.I.real()).col(d.I.imag());
            csv.col(d.I_int.real()).col(d.I_int.imag());
            csv.col(d.I_ext.real()).col(d.I_ext.imag());
            csv.col(d.I1.real()).col(d.I1.imag());
            csv.col(d.I2.real()).col(d.I2.imag());
            csv.col(d.I3.real()).col(d.I3.imag());
            csv.col(d.stokes_defect);
            csv.end_row();
            sink.summary["stokes_defect"] = d.stokes_defect;
            sink.summary["rel_defect"] =
                std::abs(d.I) > 0 ? d.stokes_defect / std::abs(d.I) : 0.0;
        } else if (sc_rec->parsed()) {
            subcmd = "reconstruct";
            if (rec_grid < 1) throw ConfigError("reconstruct: --z-grid must be >= 1");
            RadialGrid grid(cfg.quadrature);
            DbarSolver solver(grid, cfg.scattering, cfg.solver);
            csv.header("x1", "x2", "t", "v_re", "v_im", "iterations", "residual");
            const int n = rec_grid;
            const double dz = n > 1 ? 2.0 * rec_extent / (n - 1) : 0.0;
            std::vector<PotentialSample> samples(n * n);
            std::vector<char> ok(n * n, 0);
            parallel_for(n * n, cfg.threads, [&](int idx) {
                const int a = idx / n, b = idx % n;
                const cplx z(-rec_extent + a * dz, -rec_extent + b * dz);
                try {
                    samples[idx] = solver.reconstruct_v(z, rec_t);
                    ok[idx] = 1;
                } catch (const NoConvergence&) {
                    ok[idx] = 0;
                }
            });
            int failures = 0;
            for (int idx = 0; idx < n * n; ++idx) {
                if (!ok[idx]) {
                    ++failures;
                    continue;
                }
                const auto& s = samples[idx];
                csv.begin_row();
                csv.col(s.z.real()).col(s.z.imag()).col(s.t);
                csv.col(s.v.real()).col(s.v.imag()).col(s.iterations).col(s.residual);
                csv.end_row();
            }
            sink.failures = failures;
            sink.summary["points"] = n * n;
            sink.summary["failures"] = failures;
            if (failures * 100 > n * n)
                throw TooManyFailures("reconstruct: too many failed points", failures, n * n);
        } else if (sc_sweep->parsed()) {
            subcmd = "decay-sweep";
            RadialGrid grid(cfg.quadrature);
            DbarSolver solver(grid, cfg.scattering, cfg.solver);
            SweepOptions opt;
            opt.u_window = sweep_window > 0.0 ? sweep_window : cfg.sweep_u_window;
            opt.resolution = sweep_res > 0 ? sweep_res : cfg.sweep_resolution;
            opt.threads = cfg.threads;
            const DecayCurve curve = decay_sweep(solver, parse_list(sweep_tlist), opt);
            csv.header("t", "sup_v", "argmax_z_re", "argmax_z_im", "normalizer", "ratio");
            for (const auto& e : curve.entries) {
                csv.begin_row();
                csv.col(e.t).col(e.sup_v).col(e.argmax_z.real()).col(e.argmax_z.imag());
                csv.col(e.normalizer).col(e.ratio);
                csv.end_row();
            }
            sink.failures = curve.failures;
            sink.summary["failures"] = curve.failures;
            sink.summary["total_points"] = curve.total_points;
            if (curve.entries.size() >= 4) {
                const ConstantFit fit = fit_constant(curve);
                sink.summary["c_hat"] = fit.c_hat;
                sink.summary["max_ratio"] = fit.max_ratio;
                sink.summary["bounded"] = fit.bounded;
            }
        } else if (sc_ray->parsed()) {
            subcmd = "ray-scan";
            RadialGrid grid(cfg.quadrature);
            DbarSolver solver(grid, cfg.scattering, cfg.solver);
            const RayScan scan =
                ray_scan(solver, cplx(ray_ure, ray_uim), parse_list(ray_tlist), cfg.threads);
            csv.header("u_re", "u_im", "t", "abs_v");
            for (const auto& [t, mag] : scan.samples) {
                csv.begin_row();
                csv.col(scan.u.real()).col(scan.u.imag()).col(t).col(mag);
                csv.end_row();
            }
            sink.summary["samples"] = scan.samples.size();
        } else {
            // selftest
            return run_selftest(cfg, out);
        }

        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        sink.flush(out, cfg, subcmd, wall);
        return 0;
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const EpsilonTooSmall& e) {
        err << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const InsufficientData& e) {
        err << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const NoConvergence& e) {
        err << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const TooManyFailures& e) {
        err << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const WindowTooSmall& e) {
        err << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const NonFiniteSample& e) {
        err << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace nv::cli
