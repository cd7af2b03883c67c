#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace blochprior::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitComputation = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command. `args` excludes the program name. Exit status: 0 on
/// success, 1 on computational failure (including unconverged quadrature,
/// whose best estimate is still written), 2 on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace blochprior::cli
