#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>

#include "porac/protocol_io.hpp"
#include "porac/strategy_io.hpp"

namespace porac {
namespace {

bool identical(const QuantumProtocol& a, const QuantumProtocol& b) {
  if (a.d != b.d || a.dim != b.dim || a.states != b.states) return false;
  for (std::size_t y = 0; y < 2; ++y) {
    const auto& ma = a.measurements[y];
    const auto& mb = b.measurements[y];
    if (ma.outcomes() != mb.outcomes() || ma.is_rank_one() != mb.is_rank_one()) return false;
    for (std::size_t k = 0; k < ma.outcomes(); ++k)
      if (ma.element_matrix(k) != mb.element_matrix(k)) return false;
  }
  return true;
}

QuantumProtocol with_matrix_elements(const QuantumProtocol& p) {
  QuantumProtocol q = p;
  for (auto& m : q.measurements) {
    std::vector<ComplexMatrix> elems;
    for (std::size_t k = 0; k < m.outcomes(); ++k) elems.push_back(m.element_matrix(k));
    m = Measurement::general(std::move(elems));
  }
  return q;
}

TEST(ProtocolJson, RoundTripIsBitExact) {
  Rng rng(5);
  for (int d = 2; d <= 5; ++d) {
    const auto p = protocol_from_point(random_point(d, rng), d);
    EXPECT_TRUE(identical(protocol_from_json(protocol_to_json(p)), p)) << d;
  }
  for (int d = 3; d <= 5; ++d) {
    const auto p = builtin_protocol(d);
    EXPECT_TRUE(identical(protocol_from_json(protocol_to_json(p)), p)) << d;
  }
}

TEST(ProtocolJson, RoundTripsMatrixElements) {
  const auto p = with_matrix_elements(builtin_protocol(3));
  const auto back = protocol_from_json(protocol_to_json(p));
  EXPECT_FALSE(back.measurements[0].is_rank_one());
  EXPECT_TRUE(identical(back, p));
  EXPECT_NEAR(success_probability(back), 7.0 / 9.0, 1e-12);
}

TEST(ProtocolJson, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "porac_io_test_protocol.json";
  const auto p = builtin_protocol(4);
  write_protocol_file(path, p);
  EXPECT_TRUE(identical(read_protocol_file(path), p));
  std::filesystem::remove(path);
  EXPECT_THROW(read_protocol_file(path), ProtocolFormatError);
}

TEST(ProtocolJson, RejectsMalformedDocuments) {
  auto doc = nlohmann::json::parse(protocol_to_json(builtin_protocol(3)));

  auto missing = doc;
  missing["states"].erase("12");
  EXPECT_THROW(protocol_from_json(missing.dump()), ProtocolFormatError);

  auto bad_complex = doc;
  bad_complex["states"]["00"][0] = nlohmann::json::array({1.0});
  EXPECT_THROW(protocol_from_json(bad_complex.dump()), ProtocolFormatError);

  auto one_measurement = doc;
  one_measurement["measurements"].erase(1);
  EXPECT_THROW(protocol_from_json(one_measurement.dump()), ProtocolFormatError);

  auto bad_d = doc;
  bad_d["d"] = 1;
  EXPECT_THROW(protocol_from_json(bad_d.dump()), ProtocolFormatError);

  EXPECT_THROW(protocol_from_json("{not json"), ProtocolFormatError);
  try {
    protocol_from_json("[]");
    FAIL();
  } catch (const ProtocolFormatError& e) {
    EXPECT_EQ(std::string(e.what()).rfind("protocol format: ", 0), 0u);
  }
}

TEST(ProtocolJson, WellFormedButIncompleteMeasurementFailsValidation) {
  auto doc = nlohmann::json::parse(protocol_to_json(builtin_protocol(3)));
  doc["measurements"][0]["elements"][2]["vector"] = nlohmann::json::array({
      nlohmann::json::array({1.0, 0.0}), nlohmann::json::array({0.0, 0.0}), nlohmann::json::array({0.0, 0.0})});
  const auto p = protocol_from_json(doc.dump());
  try {
    validate(p);
    FAIL();
  } catch (const ProtocolError& e) {
    EXPECT_NE(std::string(e.what()).find("POVM completeness"), std::string::npos) << e.what();
  }
}

TEST(Sidecar, ParsesAndMatchesResult) {
  auto cfg = default_config(3);
  cfg.restarts = 3;
  const auto r = seesaw_optimize(cfg);
  const auto j = nlohmann::json::parse(opt_result_sidecar_json(r, cfg));
  EXPECT_EQ(j["best_value"].get<double>(), r.best_value);
  EXPECT_EQ(j["best_restart"].get<int>(), r.best_restart);
  EXPECT_EQ(j["per_restart_values"].get<std::vector<double>>(), r.per_restart_values);
  EXPECT_EQ(j["iterations_used"].get<std::vector<int>>(), r.iterations_used);
  EXPECT_EQ(j["converged_flags"].size(), 3u);
  EXPECT_EQ(j["config"]["seed"].get<std::uint64_t>(), cfg.seed);
  EXPECT_EQ(j["config"]["step_init"].get<double>(), cfg.step_init);
}

TEST(FormatDouble17, IsLossless) {
  Rng rng(8);
  for (int i = 0; i < 1000; ++i) {
    const double v = rng.normal() * std::pow(10.0, static_cast<int>(rng.uniform() * 40) - 20);
    EXPECT_EQ(std::stod(format_double17(v)), v);
  }
}

TEST(StrategyText, FormatExample) {
  ClassicalStrategy s{3, {0, 0, 0, 1, 1, 1, 2, 2, 2}, {{{0, 1, 2}, {0, 0, 0}}}};
  EXPECT_EQ(strategy_to_text(s), "d=3\nencode: 0 0 0 1 1 1 2 2 2\ndecode1: 0 1 2\ndecode2: 0 0 0\n");
}

TEST(StrategyText, RoundTrip) {
  const auto best = brute_force_classical_bound(3, true, {});
  const auto back = strategy_from_text(strategy_to_text(best.strategy));
  EXPECT_EQ(back.d, best.strategy.d);
  EXPECT_EQ(back.encoding, best.strategy.encoding);
  EXPECT_EQ(back.decodings, best.strategy.decodings);
  EXPECT_EQ(strategy_success(back), best.value);
}

TEST(StrategyText, RejectsMalformedInput) {
  EXPECT_THROW(strategy_from_text(""), std::invalid_argument);
  EXPECT_THROW(strategy_from_text("d=3\nencode: 0 0\ndecode1: 0\ndecode2: 0\n"), std::invalid_argument);
  EXPECT_THROW(strategy_from_text("d=2\nencode: 0 0 1 x\ndecode1: 0 1\ndecode2: 0 1\n"), std::invalid_argument);
  EXPECT_THROW(strategy_from_text("d=2\nencode: 0 0 1 1\ndecode1: 0 5\ndecode2: 0 1\n"), std::invalid_argument);
}

}  // namespace
}  // namespace porac
