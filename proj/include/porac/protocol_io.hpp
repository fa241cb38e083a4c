#pragma once

// Protocol JSON:
//   { "d": int, "dim": int,
//     "states": { "<x1><x2>": [[re,im], ...], ... },
//     "measurements": [ { "elements": [ {"vector": [[re,im],...]} |
//                                       {"matrix": [[[re,im],...],...]} ] },
//                       { ... } ] }
// Element order is the guessed dit. Numbers are written with 17 significant
// digits so a write/read cycle is lossless.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "porac/optimizer.hpp"
#include "porac/quantum.hpp"

namespace porac {

/// Malformed or incomplete protocol document.
class ProtocolFormatError : public ProtocolError {
 public:
  using ProtocolError::ProtocolError;
};

std::string protocol_to_json(const QuantumProtocol& p);
/// Parses without validating physics; call validate() on the result.
QuantumProtocol protocol_from_json(std::string_view text);

void write_protocol_file(const std::filesystem::path& path, const QuantumProtocol& p);
QuantumProtocol read_protocol_file(const std::filesystem::path& path);

/// { "best_value": ..., "best_restart": ..., "per_restart_values": [...],
///   "iterations_used": [...], "converged_flags": [...], "config": {...} }
std::string opt_result_sidecar_json(const OptResult& result, const OptConfig& cfg);

/// "%.17g"
std::string format_double17(double v);

}  // namespace porac
