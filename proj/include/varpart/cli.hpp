#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace varpart::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 2,
  kSingularDesign = 3,
  kOrderingCap = 4,
};

enum class ReportFormat { Text, Json, Csv, Svg };

/// Runs `varpart <fit|decompose|orderings|venn|synth> ...` with `args`
/// excluding the program name. Reports go to `out` (or --out), diagnostics to
/// `err`; the return value is the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace varpart::cli
