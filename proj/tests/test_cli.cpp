#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nv/cli.hpp"
#include "nv/config.hpp"
#include "nv/phase.hpp"
#include "oracles.hpp"

namespace {

int run_cli(const std::vector<std::string>& args, std::string* out_text = nullptr,
            std::string* err_text = nullptr) {
    std::ostringstream out, err;
    const int code = nv::cli::run(args, out, err);
    if (out_text) *out_text = out.str();
    if (err_text) *err_text = err.str();
    return code;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& p) : path(p) {}
    ~TempFile() {
        std::remove(path.c_str());
        std::remove((path + ".manifest.json").c_str());
    }
};

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("config round trip") {
    nv::RunConfig cfg;
    cfg.scattering.c = 0.07;
    cfg.quadrature.n_r = 64;
    cfg.quadrature.n_theta = 48;
    cfg.quadrature.s_max = 2.5;
    cfg.solver.tol_mu = 1e-8;
    cfg.solver.max_iter = 30;
    cfg.solver.stencil_h = 2e-3;
    cfg.sweep_u_window = 40.0;
    cfg.sweep_resolution = 12;
    cfg.seed = 99;
    cfg.threads = 2;
    cfg.out = "somewhere.csv";

    const nv::RunConfig back = nv::parse_config(nv::serialize_config(cfg));
    CHECK(back.scattering.c == cfg.scattering.c);
    CHECK(back.quadrature.n_r == cfg.quadrature.n_r);
    CHECK(back.quadrature.n_theta == cfg.quadrature.n_theta);
    CHECK(back.quadrature.s_max == cfg.quadrature.s_max);
    CHECK(back.solver.tol_mu == cfg.solver.tol_mu);
    CHECK(back.solver.max_iter == cfg.solver.max_iter);
    CHECK(back.solver.stencil_h == cfg.solver.stencil_h);
    CHECK(back.sweep_u_window == cfg.sweep_u_window);
    CHECK(back.sweep_resolution == cfg.sweep_resolution);
    CHECK(back.seed == cfg.seed);
    CHECK(back.threads == cfg.threads);
    CHECK(back.out == cfg.out);
}

TEST_CASE("config validation") {
    CHECK_THROWS_AS(nv::parse_config("{\"scattering\":{\"c\":-1}}"), nv::ConfigError);
    CHECK_THROWS_AS(nv::parse_config("{\"quadrature\":{\"n_r\":31}}"), nv::ConfigError);
    CHECK_THROWS_AS(nv::parse_config("not json"), nv::ConfigError);
    CHECK_THROWS_AS(nv::parse_config("{\"scattering\":{\"family\":\"mystery\"}}"),
                    nv::ConfigError);
}

TEST_CASE("unknown flags exit with usage") {
    std::string err;
    CHECK(run_cli({"--frobnicate"}, nullptr, &err) == 2);
    CHECK(err.find("Usage") != std::string::npos);
    CHECK(run_cli({}, nullptr, &err) == 2);
}

TEST_CASE("roots at the cusp") {
    std::string out;
    CHECK(run_cli({"roots", "--u-re", "18", "--u-im", "0"}, &out) == 0);
    CHECK(out.find("BoundaryCusp") != std::string::npos);
    // triple root at 1
    std::stringstream ss(out);
    std::string header, row;
    std::getline(ss, header);
    std::getline(ss, row);
    double ure, uim, x0r, x0i, x1r, x1i, x2r, x2i;
    char cls[64];
    REQUIRE(std::sscanf(row.c_str(), "%lf,%lf,%63[^,],%lf,%lf,%lf,%lf,%lf,%lf", &ure, &uim,
                        cls, &x0r, &x0i, &x1r, &x1i, &x2r, &x2i) == 9);
    CHECK(std::abs(x0r - 1.0) < 1e-4);
    CHECK(std::abs(x1r - 1.0) < 1e-4);
    CHECK(std::abs(x2r - 1.0) < 1e-4);
}

TEST_CASE("region counts against a seeded area oracle") {
    TempFile tmp("/tmp/nv_region_test.csv");
    CHECK(run_cli({"--out", tmp.path, "region", "--grid", "41", "--extent", "25"}) == 0);

    const std::string text = slurp(tmp.path);
    int interior = 0, rows = 0;
    std::stringstream ss(text);
    std::string line;
    std::getline(ss, line);  // header
    while (std::getline(ss, line)) {
        ++rows;
        if (line.find("Interior") != std::string::npos) ++interior;
    }
    CHECK(rows == 41 * 41);

    // Monte Carlo area of the interior region on the same box
    oracles::Rng rng(4242);
    int hits = 0;
    const int samples = 40000;
    for (int i = 0; i < samples; ++i) {
        const nv::cplx u = rng.box(25.0);
        try {
            if (nv::classify_region(u).kind == nv::RegionKind::Interior) ++hits;
        } catch (const nv::AmbiguousClassification&) {
        }
    }
    const double box_area = 50.0 * 50.0;
    const double mc_area = box_area * hits / samples;
    const double lattice_area = box_area * interior / rows;
    CHECK(std::abs(lattice_area - mc_area) <= 0.1 * mc_area);

    // closed form for the enclosed area of the parameterized boundary curve
    const double analytic = 72.0 * 3.14159265358979323846;
    CHECK(std::abs(mc_area - analytic) <= 0.05 * analytic);

    // manifest written beside the output
    const std::string manifest = slurp(tmp.path + ".manifest.json");
    const auto j = nlohmann::json::parse(manifest);
    CHECK(j.at("tool") == "nvlab");
    CHECK(j.at("outputs").at(0) == tmp.path);
    CHECK(j.at("summary").at("counts").contains("Interior"));
}

TEST_CASE("selftest runs clean") {
    std::string out;
    CHECK(run_cli({"selftest"}, &out) == 0);
    CHECK(out.find("selftest OK") != std::string::npos);
}

TEST_CASE("reconstruct emits the expected columns and is deterministic") {
    TempFile a("/tmp/nv_rec_a.csv"), b("/tmp/nv_rec_b.csv");
    const std::vector<std::string> args_a = {
        "--out", a.path, "--c",    "0.05",       "reconstruct", "--z-grid",
        "2",     "--t",  "1.0",    "--z-extent", "1.5"};
    std::vector<std::string> args_b = args_a;
    args_b[1] = b.path;

    // config file route must agree with flag route
    CHECK(run_cli(args_a) == 0);
    CHECK(run_cli(args_b) == 0);
    const std::string ta = slurp(a.path), tb = slurp(b.path);
    CHECK(ta == tb);
    CHECK(ta.rfind("x1,x2,t,v_re,v_im,iterations,residual", 0) == 0);
    int rows = -1;
    for (char ch : ta)
        if (ch == '\n') ++rows;
    CHECK(rows == 4);
}

TEST_CASE("decay-sweep CSV carries the curve fields") {
    TempFile tmp("/tmp/nv_sweep_test.csv");
    nv::RunConfig cfg;
    cfg.quadrature = {2.5, 48, 48};
    cfg.sweep_resolution = 3;
    cfg.sweep_u_window = 60.0;
    const std::string cfg_path = "/tmp/nv_sweep_cfg.json";
    {
        std::ofstream f(cfg_path);
        f << nv::serialize_config(cfg);
    }
    CHECK(run_cli({"--config", cfg_path, "--out", tmp.path, "decay-sweep", "--t", "2,4"}) ==
          0);
    const std::string text = slurp(tmp.path);
    CHECK(text.rfind("t,sup_v,argmax_z_re,argmax_z_im,normalizer,ratio", 0) == 0);
    std::remove(cfg_path.c_str());
}

TEST_CASE("ray-scan emits samples") {
    std::string out;
    nv::RunConfig cfg;
    cfg.quadrature = {2.5, 48, 48};
    const std::string cfg_path = "/tmp/nv_ray_cfg.json";
    {
        std::ofstream f(cfg_path);
        f << nv::serialize_config(cfg);
    }
    CHECK(run_cli({"--config", cfg_path, "ray-scan", "--u-re", "6", "--t-list", "2,4"},
                  &out) == 0);
    CHECK(out.rfind("u_re,u_im,t,abs_v", 0) == 0);
    std::remove(cfg_path.c_str());
}

TEST_CASE("numerical failure exits with code 3") {
    std::string err;
    // over-strong data fails the contraction gate
    CHECK(run_cli({"--c", "200", "reconstruct", "--z-grid", "1", "--t", "1"}, nullptr,
                  &err) == 3);
    CHECK(err.find("numerical failure") != std::string::npos);
}

TEST_SUITE_END();
