#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tracesys::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitAnalysis = 1;
inline constexpr int kExitSchema = 2;
inline constexpr int kExitValidation = 3;
inline constexpr int kExitNotProbabilistic = 4;
inline constexpr int kExitUnsafe = 5;

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tracesys::cli
