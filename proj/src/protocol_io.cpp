#include "porac/protocol_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace porac {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) {
  throw ProtocolFormatError("protocol format: " + what);
}

void write_complex(std::ostream& out, Complex z) {
  out << '[' << format_double17(z.real()) << ", " << format_double17(z.imag()) << ']';
}

void write_vector(std::ostream& out, std::span<const Complex> v) {
  out << '[';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out << ", ";
    write_complex(out, v[i]);
  }
  out << ']';
}

Complex read_complex(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    bad(where + ": complex numbers must be [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

ComplexVector read_vector(const json& j, std::size_t dim, const std::string& where) {
  if (!j.is_array() || j.size() != dim) bad(where + ": expected " + std::to_string(dim) + " entries");
  ComplexVector v(dim);
  for (std::size_t i = 0; i < dim; ++i) v[i] = read_complex(j[i], where);
  return v;
}

ComplexMatrix read_matrix(const json& j, std::size_t dim, const std::string& where) {
  if (!j.is_array() || j.size() != dim) bad(where + ": expected " + std::to_string(dim) + " rows");
  ComplexMatrix m(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    const auto row = read_vector(j[r], dim, where);
    for (std::size_t c = 0; c < dim; ++c) m(r, c) = row[c];
  }
  return m;
}

template <class T>
void write_array(std::ostream& out, const std::vector<T>& values) {
  out << '[';
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out << ", ";
    if constexpr (std::is_same_v<T, double>) {
      out << format_double17(values[i]);
    } else if constexpr (std::is_same_v<T, bool>) {
      out << (values[i] ? "true" : "false");
    } else {
      out << values[i];
    }
  }
  out << ']';
}

}  // namespace

std::string format_double17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string protocol_to_json(const QuantumProtocol& p) {
  std::ostringstream out;
  out << "{\n  \"d\": " << p.d << ",\n  \"dim\": " << p.dim << ",\n  \"states\": {\n";
  for (std::size_t i = 0; i < p.states.size(); ++i) {
    out << "    \"" << DitString::from_index(static_cast<int>(i), p.d).label() << "\": ";
    write_vector(out, p.states[i].entries());
    out << (i + 1 < p.states.size() ? ",\n" : "\n");
  }
  out << "  },\n  \"measurements\": [\n";
  for (std::size_t y = 0; y < 2; ++y) {
    out << "    {\n      \"elements\": [\n";
    const auto& elements = p.measurements[y].elements();
    for (std::size_t b = 0; b < elements.size(); ++b) {
      out << "        ";
      if (const auto* v = std::get_if<ComplexVector>(&elements[b])) {
        out << "{\"vector\": ";
        write_vector(out, v->entries());
      } else {
        const auto& m = std::get<ComplexMatrix>(elements[b]);
        out << "{\"matrix\": [";
        for (std::size_t r = 0; r < m.rows(); ++r) {
          if (r) out << ", ";
          out << '[';
          for (std::size_t c = 0; c < m.cols(); ++c) {
            if (c) out << ", ";
            write_complex(out, m(r, c));
          }
          out << ']';
        }
        out << "]";
      }
      out << (b + 1 < elements.size() ? "},\n" : "}\n");
    }
    out << "      ]\n    }" << (y == 0 ? ",\n" : "\n");
  }
  out << "  ]\n}\n";
  return out.str();
}

QuantumProtocol protocol_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    bad(std::string("invalid JSON (") + e.what() + ")");
  }
  if (!doc.is_object()) bad("top level must be an object");
  for (const char* key : {"d", "dim", "states", "measurements"}) {
    if (!doc.contains(key)) bad(std::string("missing key \"") + key + "\"");
  }
  if (!doc["d"].is_number_integer() || !doc["dim"].is_number_integer()) bad("d and dim must be integers");

  QuantumProtocol p;
  p.d = doc["d"].get<int>();
  const long long dim = doc["dim"].get<long long>();
  if (p.d < 2 || p.d > 10) bad("d must lie in [2, 10] for two-character string keys");
  if (dim < 1) bad("dim must be positive");
  p.dim = static_cast<std::size_t>(dim);

  const auto& states = doc["states"];
  if (!states.is_object()) bad("\"states\" must be an object");
  if (states.size() != static_cast<std::size_t>(p.d * p.d)) {
    bad("\"states\" must hold exactly d^2 entries");
  }
  p.states.resize(static_cast<std::size_t>(p.d) * p.d);
  for (int i = 0; i < p.d * p.d; ++i) {
    const auto label = DitString::from_index(i, p.d).label();
    if (!states.contains(label)) bad("missing state \"" + label + "\"");
    p.states[i] = read_vector(states[label], p.dim, "state " + label);
  }

  const auto& measurements = doc["measurements"];
  if (!measurements.is_array() || measurements.size() != 2) bad("\"measurements\" must hold two entries");
  for (std::size_t y = 0; y < 2; ++y) {
    const auto where = "measurement " + std::to_string(y + 1);
    const auto& m = measurements[y];
    if (!m.is_object() || !m.contains("elements") || !m["elements"].is_array()) {
      bad(where + ": expected {\"elements\": [...]}");
    }
    std::vector<Measurement::Element> elements;
    for (const auto& e : m["elements"]) {
      if (e.contains("vector")) {
        elements.emplace_back(read_vector(e["vector"], p.dim, where));
      } else if (e.contains("matrix")) {
        elements.emplace_back(read_matrix(e["matrix"], p.dim, where));
      } else {
        bad(where + ": element needs a \"vector\" or \"matrix\" key");
      }
    }
    p.measurements[y] = Measurement(std::move(elements));
  }
  return p;
}

void write_protocol_file(const std::filesystem::path& path, const QuantumProtocol& p) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << protocol_to_json(p);
}

QuantumProtocol read_protocol_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ProtocolFormatError("protocol format: cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return protocol_from_json(buf.str());
}

std::string opt_result_sidecar_json(const OptResult& result, const OptConfig& cfg) {
  std::ostringstream out;
  out << "{\n  \"best_value\": " << format_double17(result.best_value) << ",\n";
  out << "  \"best_restart\": " << result.best_restart << ",\n";
  out << "  \"per_restart_values\": ";
  write_array(out, result.per_restart_values);
  out << ",\n  \"iterations_used\": ";
  write_array(out, result.iterations_used);
  out << ",\n  \"converged_flags\": ";
  write_array(out, result.converged_flags);
  out << ",\n  \"config\": {\"d\": " << cfg.d << ", \"restarts\": " << cfg.restarts
      << ", \"max_iters\": " << cfg.max_iters << ", \"step_init\": " << format_double17(cfg.step_init)
      << ", \"grad_tol\": " << format_double17(cfg.grad_tol) << ", \"stall_iters\": " << cfg.stall_iters
      << ", \"seed\": " << cfg.seed << "}\n}\n";
  return out.str();
}

}  // namespace porac
