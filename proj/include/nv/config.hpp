#pragma once

#include <cstdint>
#include <string>

#include "nv/dbar.hpp"
#include "nv/grid.hpp"
#include "nv/scattering.hpp"

namespace nv {

// Run configuration: JSON file overlaid by command-line flags.
struct RunConfig {
    ScatteringData scattering;  // family + strength c
    GridConfig quadrature;
    SolverConfig solver;
    double sweep_u_window = 60.0;
    int sweep_resolution = 64;
    std::uint64_t seed = 1;
    int threads = 0;  // 0 = NV_THREADS / hardware
    std::string out;  // output path ("" = stdout)

    void validate() const;
};

std::string serialize_config(const RunConfig& cfg);
RunConfig parse_config(const std::string& json_text);
RunConfig load_config_file(const std::string& path);

}  // namespace nv
