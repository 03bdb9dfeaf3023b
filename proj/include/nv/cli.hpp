#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace nv::cli {

inline constexpr const char* kToolName = "nvlab";
inline constexpr const char* kVersion = "0.1.0";

// Subcommand dispatch. Exit codes: 0 success, 2 configuration/usage error,
// 3 numerical failure (no convergence / too many failed lattice points).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nv::cli
