#include "porac/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "porac/optimizer.hpp"
#include "porac/protocol_io.hpp"
#include "porac/quantum.hpp"
#include "porac/strategy_io.hpp"

namespace porac::cli {

namespace {

constexpr const char* kBuiltinPrefix = "builtin:";

struct LoadedProtocol {
  QuantumProtocol protocol;
  double tol = kExactTol;
  std::string source;
};

LoadedProtocol load_protocol(const std::string& spec, double tol_override) {
  LoadedProtocol loaded;
  if (spec.rfind(kBuiltinPrefix, 0) == 0) {
    const std::string rest = spec.substr(std::string(kBuiltinPrefix).size());
    char* end = nullptr;
    const long d = std::strtol(rest.c_str(), &end, 10);
    if (rest.empty() || *end != '\0') throw std::invalid_argument("bad builtin name '" + spec + "'");
    loaded.protocol = builtin_protocol(static_cast<int>(d));
    loaded.tol = builtin_tolerance(static_cast<int>(d));
    loaded.source = "builtin";
  } else {
    loaded.protocol = read_protocol_file(spec);
    loaded.source = "file:" + spec;
  }
  if (tol_override > 0.0) loaded.tol = tol_override;
  validate(loaded.protocol, loaded.tol);
  return loaded;
}

std::string sidecar_path_for(const std::string& out) {
  std::filesystem::path p(out);
  if (p.extension() == ".json") p.replace_extension();
  return p.string() + ".result.json";
}

int cmd_bound(int d, std::ostream& out) {
  out << describe_probability(noncontextual_bound(d)) << '\n';
  return kSuccess;
}

int cmd_classical(int d, bool allow_long, bool no_parity, const std::string& out_path, unsigned threads,
                  std::ostream& out, std::ostream& err) {
  ClassicalOptimum best;
  try {
    best = brute_force_classical_bound(d, !no_parity, {allow_long, threads});
  } catch (const std::length_error& e) {
    err << "refused: " << e.what() << '\n';
    return kRefusedLongRun;
  }
  out << best.value.to_string() << '\n';
  out << "decimal: " << format_sig6(best.value.value()) << '\n';
  out << "parity oblivious: " << (no_parity ? "not required" : "required") << '\n';
  out << "encodings examined: " << best.encodings_examined << " (admissible: " << best.encodings_admissible
      << ")\n";
  out << "noncontextual bound: " << describe_probability(noncontextual_bound(d)) << '\n';
  out << "optimal strategy:\n" << strategy_to_text(best.strategy);
  if (!out_path.empty()) {
    std::ofstream file(out_path);
    if (!file) {
      err << "cannot write " << out_path << '\n';
      return kUsageError;
    }
    file << strategy_to_text(best.strategy);
  }
  return kSuccess;
}

int cmd_eval(const std::string& spec, double tol, std::ostream& out, std::ostream& err) {
  LoadedProtocol loaded;
  try {
    loaded = load_protocol(spec, tol);
  } catch (const ProtocolError& e) {
    err << "invalid protocol: " << e.what() << '\n';
    return kInvalidProtocol;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  const auto& p = loaded.protocol;
  const double success = success_probability(p, loaded.tol);
  const auto parity = check_parity_oblivious(p, loaded.tol);
  const auto bound = noncontextual_bound(p.d);

  out << "source: " << spec << '\n';
  out << "d: " << p.d << "  dim: " << p.dim << '\n';
  out << "success: " << format_sig6(success) << '\n';
  out << "noncontextual bound: " << describe_probability(bound) << '\n';
  out << "ratio: " << format_sig6(violation_ratio(success, bound)) << '\n';
  std::ostringstream dev;
  dev << std::setprecision(3) << parity.max_deviation;
  out << "parity deviation: " << dev.str() << " (tolerance " << loaded.tol << ", "
      << (parity.oblivious ? "parity oblivious" : "NOT parity oblivious") << ")\n";
  out << "per-string success (x: guess x1, guess x2):\n";
  for (int i = 0; i < p.d * p.d; ++i) {
    const auto x = DitString::from_index(i, p.d);
    const auto first = born_probabilities(p.states[i], p.measurement(1));
    const auto second = born_probabilities(p.states[i], p.measurement(2));
    out << "  " << x.label() << ": " << format_sig6(first[x.first]) << "  " << format_sig6(second[x.second])
        << '\n';
  }
  return kSuccess;
}

int cmd_optimize(OptConfig cfg, const std::string& out_path, const std::string& sidecar, std::ostream& out,
                 std::ostream& err) {
  const auto result = seesaw_optimize(cfg);
  const auto bound = noncontextual_bound(cfg.d);
  const auto parity = check_parity_oblivious(result.best_protocol, kExactTol);
  int converged = 0;
  for (bool c : result.converged_flags) converged += c ? 1 : 0;

  out << "d: " << cfg.d << "  restarts: " << cfg.restarts << "  seed: " << cfg.seed << '\n';
  out << "best: " << format_sig6(result.best_value) << " (restart " << result.best_restart << ")\n";
  out << "noncontextual bound: " << describe_probability(bound) << '\n';
  out << "ratio: " << format_sig6(violation_ratio(result.best_value, bound)) << '\n';
  std::ostringstream dev;
  dev << std::setprecision(3) << parity.max_deviation;
  out << "parity deviation: " << dev.str() << '\n';
  out << "converged restarts: " << converged << "/" << cfg.restarts << '\n';
  out << "restart values:";
  for (double v : result.per_restart_values) out << ' ' << format_sig6(v);
  out << '\n';

  if (!out_path.empty()) {
    try {
      write_protocol_file(out_path, result.best_protocol);
      const auto side = sidecar.empty() ? sidecar_path_for(out_path) : sidecar;
      std::ofstream file(side);
      if (!file) throw std::runtime_error("cannot open " + side + " for writing");
      file << opt_result_sidecar_json(result, cfg);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return kUsageError;
    }
  }
  return kSuccess;
}

int cmd_report(const std::string& d_list, const std::string& format, const std::string& source,
               const std::vector<std::string>& files, unsigned threads, std::ostream& out,
               std::ostream& err) {
  std::vector<int> ds;
  std::stringstream ss(d_list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    char* end = nullptr;
    const long d = std::strtol(item.c_str(), &end, 10);
    if (*end != '\0' || d < 2 || d > 64) {
      err << "error: bad entry '" << item << "' in --d-list\n";
      return kUsageError;
    }
    ds.push_back(static_cast<int>(d));
  }
  const QuantumSource src = source == "builtin"     ? QuantumSource::builtin
                            : source == "optimized" ? QuantumSource::optimized
                                                    : QuantumSource::automatic;
  std::vector<ReportRow> rows;
  try {
    rows = build_report(ds, src, files, threads);
  } catch (const ProtocolError& e) {
    err << "invalid protocol: " << e.what() << '\n';
    return kInvalidProtocol;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  out << (format == "csv" ? format_report_csv(rows) : format_report_markdown(rows));
  return kSuccess;
}

}  // namespace

std::string format_sig6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string describe_probability(const ExactProbability& p) {
  const std::string dec = format_sig6(p.value());
  std::uint64_t den = p.denominator();
  while (den % 2 == 0) den /= 2;
  while (den % 5 == 0) den /= 5;
  const bool exact = den == 1 && std::strtod(dec.c_str(), nullptr) == p.value();
  return p.to_string() + (exact ? " = " : " ≈ ") + dec;
}

std::vector<ReportRow> build_report(const std::vector<int>& d_list, QuantumSource source,
                                    const std::vector<std::string>& protocol_files, unsigned threads) {
  std::vector<ReportRow> rows;
  auto add_row = [&](const QuantumProtocol& p, double tol, std::string label) {
    ReportRow row;
    row.d = p.d;
    row.classical = noncontextual_bound(p.d);
    row.quantum = success_probability(p, tol);
    row.ratio = violation_ratio(row.quantum, row.classical);
    row.parity_deviation = check_parity_oblivious(p, tol).max_deviation;
    row.source = std::move(label);
    rows.push_back(std::move(row));
  };
  for (int d : d_list) {
    const bool has_builtin = d >= 3 && d <= 5;
    const bool use_builtin =
        source == QuantumSource::builtin || (source == QuantumSource::automatic && has_builtin);
    if (use_builtin) {
      add_row(builtin_protocol(d), builtin_tolerance(d), "builtin");
    } else {
      auto cfg = default_config(d);
      cfg.threads = threads;
      add_row(seesaw_optimize(cfg).best_protocol, kExactTol, "optimized");
    }
  }
  for (const auto& path : protocol_files) {
    const auto p = read_protocol_file(path);
    add_row(p, kExactTol, "file:" + path);
  }
  return rows;
}

std::string format_report_csv(const std::vector<ReportRow>& rows) {
  std::ostringstream out;
  out << "d,classical,quantum,ratio\r\n";
  for (const auto& r : rows) {
    out << r.d << ',' << format_sig6(r.classical.value()) << ',' << format_sig6(r.quantum) << ','
        << format_sig6(r.ratio) << "\r\n";
  }
  return out.str();
}

std::string format_report_markdown(const std::vector<ReportRow>& rows) {
  std::ostringstream out;
  out << "| d | classical | quantum | ratio | parity deviation | source |\n";
  out << "|---|---|---|---|---|---|\n";
  for (const auto& r : rows) {
    std::ostringstream dev;
    dev << std::setprecision(3) << r.parity_deviation;
    out << "| " << r.d << " | " << describe_probability(r.classical) << " | " << format_sig6(r.quantum) << " | "
        << format_sig6(r.ratio) << " | " << dev.str() << " | " << r.source << " |\n";
  }
  return out.str();
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Parity-oblivious d-level random access codes: bounds, protocols and search"};
  app.name("porac");
  app.require_subcommand(1);

  unsigned threads = 0;
  app.add_option("--threads", threads, "Worker threads (0 = all cores); results do not depend on it");

  int bound_d = 0;
  auto* bound = app.add_subcommand("bound", "Print the noncontextual bound (d+1)/(2d)");
  bound->add_option("d", bound_d, "Alphabet size")->required()->check(CLI::Range(2, 1 << 20));

  int classical_d = 0;
  bool allow_long = false, no_parity = false;
  std::string classical_out;
  auto* classical = app.add_subcommand("classical", "Exhaustive optimum over deterministic strategies");
  classical->add_option("d", classical_d, "Alphabet size")->required()->check(CLI::Range(2, 64));
  classical->add_flag("--allow-long", allow_long, "Permit d = 4 (4^16 encodings)");
  classical->add_flag("--no-parity", no_parity, "Drop the parity-obliviousness restriction");
  classical->add_option("--out", classical_out, "Write the optimal strategy in text form");

  std::string eval_source;
  double eval_tol = 0.0;
  auto* eval = app.add_subcommand("eval", "Evaluate a protocol (builtin:<d> or a JSON file)");
  eval->add_option("protocol", eval_source, "builtin:3, builtin:4, builtin:5 or a path")->required();
  eval->add_option("--tol", eval_tol, "Validation and parity tolerance (default: 1e-9, 5e-3 for builtin:4/5)")
      ->check(CLI::PositiveNumber);

  OptConfig cfg;
  int opt_d = 0;
  int restarts = 0;
  std::string opt_out, opt_sidecar;
  auto* optimize = app.add_subcommand("optimize", "Search for a violating protocol");
  optimize->add_option("d", opt_d, "Alphabet size")->required()->check(CLI::Range(2, 16));
  optimize->add_option("--restarts", restarts, "Random restarts (default: 20, 40 at d=4, 60 from d=5)")
      ->check(CLI::PositiveNumber);
  optimize->add_option("--seed", cfg.seed, "Base seed");
  optimize->add_option("--max-iters", cfg.max_iters, "Iterations per restart")->check(CLI::PositiveNumber);
  optimize->add_option("--out", opt_out, "Write the best protocol as JSON (plus a .result.json sidecar)");
  optimize->add_option("--sidecar", opt_sidecar, "Override the sidecar path");

  std::string d_list = "3,4,5", format = "md", source = "auto";
  std::vector<std::string> report_files;
  auto* report = app.add_subcommand("report", "Classical/quantum/ratio table");
  report->add_option("--d-list", d_list, "Comma-separated alphabet sizes");
  report->add_option("--format", format, "csv or md")->check(CLI::IsMember({"csv", "md"}));
  report->add_option("--source", source, "auto, builtin or optimized")
      ->check(CLI::IsMember({"auto", "builtin", "optimized"}));
  report->add_option("--protocol", report_files, "Extra rows from protocol JSON files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (*bound) return cmd_bound(bound_d, out);
    if (*classical) return cmd_classical(classical_d, allow_long, no_parity, classical_out, threads, out, err);
    if (*eval) return cmd_eval(eval_source, eval_tol, out, err);
    if (*optimize) {
      const int explicit_iters = cfg.max_iters;
      const auto seed = cfg.seed;
      cfg = default_config(opt_d);
      cfg.seed = seed;
      cfg.max_iters = explicit_iters;
      if (restarts > 0) cfg.restarts = restarts;
      cfg.threads = threads;
      return cmd_optimize(cfg, opt_out, opt_sidecar, out, err);
    }
    if (*report) return cmd_report(d_list, format, source, report_files, threads, out, err);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace porac::cli
