#include "porac/strategy_io.hpp"

#include <sstream>
#include <stdexcept>

namespace porac {

namespace {

void write_list(std::ostream& out, const char* key, const std::vector<int>& values) {
  out << key << ":";
  for (int v : values) out << ' ' << v;
  out << '\n';
}

std::vector<int> read_list(std::istringstream& line) {
  std::vector<int> values;
  int v = 0;
  while (line >> v) values.push_back(v);
  if (!line.eof()) throw std::invalid_argument("strategy text: non-integer entry");
  return values;
}

}  // namespace

std::string strategy_to_text(const ClassicalStrategy& s) {
  std::ostringstream out;
  out << "d=" << s.d << '\n';
  write_list(out, "encode", s.encoding);
  write_list(out, "decode1", s.decodings[0]);
  write_list(out, "decode2", s.decodings[1]);
  return out.str();
}

ClassicalStrategy strategy_from_text(std::string_view text) {
  ClassicalStrategy s;
  bool have_d = false, have_enc = false, have_dec1 = false, have_dec2 = false;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("d=", 0) == 0) {
      s.d = std::stoi(line.substr(2));
      have_d = true;
      continue;
    }
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("strategy text: unrecognised line '" + line + "'");
    const std::string key = line.substr(0, colon);
    std::istringstream rest(line.substr(colon + 1));
    if (key == "encode") {
      s.encoding = read_list(rest);
      have_enc = true;
    } else if (key == "decode1") {
      s.decodings[0] = read_list(rest);
      have_dec1 = true;
    } else if (key == "decode2") {
      s.decodings[1] = read_list(rest);
      have_dec2 = true;
    } else {
      throw std::invalid_argument("strategy text: unknown key '" + key + "'");
    }
  }
  if (!(have_d && have_enc && have_dec1 && have_dec2)) {
    throw std::invalid_argument("strategy text: expected d=, encode:, decode1: and decode2: lines");
  }
  require_alphabet(s.d);
  if (static_cast<int>(s.encoding.size()) != s.d * s.d) {
    throw std::invalid_argument("strategy text: encode line must list d^2 symbols");
  }
  for (int sym : s.encoding) {
    if (sym < 0) throw std::invalid_argument("strategy text: negative symbol");
  }
  for (const auto& dec : s.decodings) {
    if (static_cast<int>(dec.size()) < s.symbol_count()) {
      throw std::invalid_argument("strategy text: decode line shorter than the symbol count");
    }
    for (int guess : dec) {
      if (guess < 0 || guess >= s.d) throw std::invalid_argument("strategy text: guess outside [0, d)");
    }
  }
  return s;
}

}  // namespace porac
