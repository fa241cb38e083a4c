#pragma once

// Command-line front end. run() is the whole program; the tool's main()
// only forwards to it so tests can drive every subcommand in-process.

#include <iosfwd>
#include <string>
#include <vector>

#include "porac/game.hpp"

namespace porac::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 2,
  kRefusedLongRun = 3,
  kInvalidProtocol = 4,
};

enum class QuantumSource { automatic, builtin, optimized };

struct ReportRow {
  int d = 0;
  ExactProbability classical;
  double quantum = 0.0;
  double ratio = 0.0;
  double parity_deviation = 0.0;
  std::string source;  ///< "builtin", "optimized" or "file:<path>"
};

/// Recomputes every row from module calls. `automatic` uses the builtin for
/// d in {3, 4, 5} and the optimizer's default configuration otherwise.
std::vector<ReportRow> build_report(const std::vector<int>& d_list, QuantumSource source,
                                    const std::vector<std::string>& protocol_files = {},
                                    unsigned threads = 1);

std::string format_report_csv(const std::vector<ReportRow>& rows);
std::string format_report_markdown(const std::vector<ReportRow>& rows);

/// 6 significant digits ("%.6g").
std::string format_sig6(double v);
/// "2/3 ≈ 0.666667" or "5/8 = 0.625" when the decimal is exact.
std::string describe_probability(const ExactProbability& p);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace porac::cli
