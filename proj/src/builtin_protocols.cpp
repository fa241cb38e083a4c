// Reconstructed protocols for d = 3, 4, 5.
//
// d = 3 is exact: three orthonormal bases with cross-basis overlaps 1/3 and
// 2/3, and decoding vectors that are 1/sqrt(7)-weighted sums of encoding states.
//
// d = 4 and d = 5 are the published decimal tables (4-5 digits), which are
// orthonormal only to ~1e-4. The tables below are verbatim; the repairs are
// applied in assemble():
//   d = 4: the fourth first-measurement vector is printed as "E4"; it is
//          outcome 3.
//   d = 5: the printed E3 and E4 are identical, so outcome 4 is rebuilt by
//          orthonormal completion of E0..E3.
//   d = 5: in the parity-2 block the labels 42, 24, 33 are repeated from the
//          parity-1 block. Each printed vector's dominant first/second
//          outcomes identify its string, which gives 43, 34, 11. The
//          parity-4 block prints 31 and 13 swapped by the same evidence.
//          Class membership is unchanged by either relabel.

#include <cmath>
#include <map>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>

#include "porac/quantum.hpp"

namespace porac {

namespace {

struct PrintedVector {
  const char* label;
  std::vector<Complex> entries;
};

// d = 4, encoding states in printed order
const PrintedVector kD4States[] = {
    {"00", {{0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}},
    {"31", {{0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}, {0.0, 0.0}}},
    {"13", {{0.0, 0.0}, {1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}}},
    {"22", {{1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}}},
    {"01", {{-0.1345, 0.0225}, {-0.2539, -0.3035}, {0.5839, 0.0576}, {0.6933, 0.0}}},
    {"10", {{0.1283, -0.0404}, {0.3662, 0.4578}, {-0.3931, -0.0344}, {0.6947, 0.0}}},
    {"32", {{-0.6624, 0.2077}, {-0.2564, -0.3007}, {-0.5853, -0.033}, {0.1349, 0.0}}},
    {"23", {{-0.6843, 0.1143}, {0.3204, 0.4909}, {0.3862, 0.0849}, {-0.1366, 0.0}}},
    {"20", {{-0.6194, 0.2157}, {0.2488, 0.2796}, {0.0007, -0.0001}, {0.6556, 0.0}}},
    {"02", {{-0.6191, 0.2154}, {0.0004, 0.0002}, {-0.3737, -0.0291}, {-0.6556, 0.0}}},
    {"11", {{-0.3285, 0.1796}, {-0.5105, -0.4114}, {0.6532, -0.0575}, {-0.001, 0.0}}},
    {"33", {{0.0005, 0.0}, {0.436, 0.4899}, {0.6534, 0.051}, {-0.3747, 0.0}}},
    {"30", {{0.3702, -0.1379}, {-0.0719, -0.1161}, {0.6935, 0.0054}, {-0.5868, 0.0}}},
    {"03", {{0.378, -0.1122}, {-0.4163, -0.5556}, {0.1361, -0.0021}, {0.5865, 0.0}}},
    {"12", {{0.5494, -0.205}, {0.436, 0.5393}, {0.1361, -0.0159}, {0.3954, 0.0}}},
    {"21", {{-0.5627, 0.1673}, {0.0751, 0.1129}, {0.6935, 0.0271}, {0.3941, 0.0}}},
};

// d = 4, first-dit measurement in printed order
const PrintedVector kD4First[] = {
    {"E0", {{-0.249, 0.0899}, {0.1973, 0.2519}, {-0.3188, -0.0254}, {-0.8516, 0.0}}},
    {"E1", {{0.3019, -0.1035}, {0.5355, 0.6622}, {-0.2626, -0.0386}, {0.3202, 0.0}}},
    {"E2", {{-0.8013, 0.2896}, {0.2154, 0.2354}, {0.3198, 0.0008}, {0.2646, 0.0}}},
    {"E4", {{-0.3024, 0.1035}, {-0.189, -0.1869}, {-0.8509, -0.0298}, {0.3197, 0.0}}},
};

// d = 4, second-dit measurement in printed order
const PrintedVector kD4Second[] = {
    {"Fo", {{0.2496, -0.0892}, {-0.2004, -0.2484}, {0.3187, 0.0114}, {-0.8522, 0.0}}},
    {"F1", {{-0.3082, 0.0849}, {-0.18, -0.1951}, {0.8493, 0.0679}, {0.3186, 0.0}}},
    {"F2", {{-0.8022, 0.2868}, {-0.2041, -0.2454}, {-0.3195, -0.0067}, {-0.265, 0.0}}},
    {"F3", {{0.3076, -0.0847}, {-0.5244, -0.6714}, {-0.2618, -0.0427}, {0.3195, 0.0}}},
};

// d = 5, encoding states in printed order
const PrintedVector kD5States[] = {
    {"00", {{0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}},
    {"41", {{0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}, {0.0, 0.0}}},
    {"14", {{0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}}},
    {"32", {{0.0, 0.0}, {1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}}},
    {"23", {{1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}}},
    {"10", {{0.23497, -0.0734}, {0.16411, -0.10914}, {0.42583, 0.50168}, {-0.19303, 0.15607}, {-0.63712, 0.0}}},
    {"01", {{-0.18462, 0.06593}, {-0.20731, 0.1287}, {-0.16285, -0.18055}, {0.51463, -0.3889}, {-0.65332, 0.0}}},
    {"42", {{-0.24112, 0.08538}, {-0.56454, 0.3098}, {-0.12652, -0.15098}, {-0.52601, 0.37747}, {-0.24885, 0.0}}},
    {"24", {{-0.60757, 0.21215}, {-0.21817, 0.12492}, {0.41531, 0.49038}, {0.1696, -0.12466}, {0.2557, 0.0}}},
    {"33", {{0.62265, -0.18358}, {-0.57837, 0.2987}, {0.13628, 0.19373}, {0.19499, -0.14425}, {0.19985, 0.0}}},
    {"20", {{-0.37409, 0.52632}, {-0.24065, -0.0188}, {0.09926, -0.17359}, {-0.0759, -0.25674}, {0.64274, 0.0}}},
    {"02", {{0.13977, -0.20058}, {0.64176, 0.05606}, {-0.12928, 0.21553}, {0.06055, 0.1916}, {0.64938, 0.0}}},
    {"42", {{-0.37619, 0.53274}, {0.18936, 0.01847}, {-0.12115, 0.20752}, {0.19401, 0.62175}, {-0.23774, 0.0}}},
    {"24", {{0.11346, -0.15816}, {-0.65018, -0.05766}, {-0.33344, 0.55217}, {0.0748, 0.22713}, {0.25061, 0.0}}},
    {"33", {{0.14855, -0.1949}, {-0.25265, -0.0256}, {0.3498, -0.54834}, {0.17203, 0.61397}, {0.21416, 0.0}}},
    {"30", {{-0.00534, -0.24987}, {0.47253, 0.43074}, {0.24297, 0.07217}, {-0.20191, 0.01868}, {-0.65066, 0.0}}},
    {"03", {{0.02569, 0.64638}, {-0.18296, -0.16861}, {-0.19043, -0.04582}, {0.2506, 0.00014}, {-0.64689, 0.0}}},
    {"12", {{-0.0101, -0.19929}, {-0.49199, -0.42851}, {0.63332, 0.13808}, {-0.24023, 0.00154}, {-0.23796, 0.0}}},
    {"21", {{0.04174, 0.64483}, {0.15569, 0.12225}, {0.24257, 0.04356}, {-0.65035, 0.01444}, {0.24365, 0.0}}},
    {"44", {{0.00276, 0.24838}, {0.16596, 0.192}, {0.61595, 0.19261}, {0.64285, 0.04428}, {0.20539, 0.0}}},
    {"40", {{0.12419, 0.15209}, {-0.04125, -0.23659}, {-0.02914, -0.24743}, {0.2062, -0.62431}, {0.63986, 0.0}}},
    {"04", {{-0.15096, -0.18341}, {0.03763, 0.20009}, {0.06565, 0.64204}, {-0.07449, 0.23344}, {0.65234, 0.0}}},
    {"31", {{-0.39083, -0.51585}, {0.05268, 0.25138}, {-0.05547, -0.64174}, {-0.06555, 0.18659}, {0.24731, 0.0}}},
    {"13", {{-0.14877, -0.19642}, {0.14476, 0.63049}, {0.0171, 0.20906}, {0.19415, -0.61023}, {-0.25833, 0.0}}},
    {"22", {{-0.40081, -0.51459}, {-0.13601, -0.63082}, {0.03136, 0.24802}, {0.08812, -0.22522}, {-0.1927, 0.0}}},
};

// d = 5, first-dit measurement in printed order
const PrintedVector kD5First[] = {
    {"E0", {{-0.03309, 0.2567}, {-0.25437, -0.07003}, {-0.06867, -0.25502}, {0.1855, -0.19008}, {-0.85036, 0.0}}},
    {"E1", {{0.25, 0.08268}, {0.03584, -0.27017}, {0.42688, 0.73497}, {-0.24068, -0.09143}, {-0.2602, 0.0}}},
    {"E2", {{0.36296, -0.76531}, {0.17253, -0.20234}, {-0.26009, 0.03026}, {0.21365, 0.17299}, {-0.26023, 0.0}}},
    {"E3", {{-0.22262, -0.15015}, {0.71573, 0.4545}, {0.25044, -0.09303}, {-0.15832, -0.1983}, {-0.27073, 0.0}}},
    {"E4", {{-0.22262, -0.15015}, {0.71573, 0.4545}, {0.25044, -0.09303}, {-0.15832, -0.1983}, {-0.27073, 0.0}}},
};

// d = 5, second-dit measurement in printed order
const PrintedVector kD5Second[] = {
    {"F0", {{-0.11375, 0.23729}, {-0.21967, -0.13607}, {-0.14148, -0.23461}, {0.12307, -0.24902}, {0.84366, 0.0}}},
    {"F1", {{0.22685, 0.13877}, {0.09381, -0.24781}, {0.26314, -0.04382}, {-0.57053, 0.62201}, {0.27479, 0.0}}},
    {"F2", {{0.26939, -0.00519}, {0.81916, 0.21292}, {-0.24642, 0.11038}, {0.24692, 0.08601}, {0.26415, 0.0}}},
    {"F3", {{0.11939, -0.84029}, {-0.03406, 0.26824}, {0.19925, -0.16385}, {-0.21871, -0.15566}, {0.26064, 0.0}}},
    {"F4", {{-0.25062, -0.06551}, {-0.17506, 0.20714}, {0.21985, 0.81608}, {0.16329, 0.20819}, {0.2739, 0.0}}},
};

struct LabelRepair {
  std::size_t position;
  const char* label;
};

constexpr LabelRepair kD5LabelRepairs[] = {
    {12, "43"}, {13, "34"}, {14, "11"},  // parity-2 block
    {22, "13"}, {23, "31"},              // parity-4 block
};

DitString parse_label(const std::string& label) {
  return {label[0] - '0', label[1] - '0'};
}

std::vector<ComplexVector> to_vectors(std::span<const PrintedVector> printed) {
  std::vector<ComplexVector> out;
  for (const auto& p : printed) out.emplace_back(p.entries);
  return out;
}

QuantumProtocol assemble(int d, std::span<const PrintedVector> states,
                         std::span<const LabelRepair> repairs, std::vector<ComplexVector> first,
                         std::vector<ComplexVector> second) {
  std::map<std::size_t, std::string> relabel;
  for (const auto& r : repairs) relabel[r.position] = r.label;

  QuantumProtocol p;
  p.d = d;
  p.dim = static_cast<std::size_t>(d);
  p.states.resize(static_cast<std::size_t>(d) * d);
  std::vector<bool> seen(p.states.size(), false);
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto it = relabel.find(i);
    const auto x = parse_label(it != relabel.end() ? it->second : std::string(states[i].label));
    const auto idx = static_cast<std::size_t>(x.index(d));
    if (seen[idx]) throw std::logic_error("builtin table assigns string " + x.label() + " twice");
    seen[idx] = true;
    p.states[idx] = ComplexVector(states[i].entries);
  }
  p.measurements = {Measurement::projective(std::move(first)), Measurement::projective(std::move(second))};
  return p;
}

QuantumProtocol builtin_d3() {
  using std::numbers::pi;
  const Complex w = std::polar(1.0, 2.0 * pi / 3.0);
  const Complex w2 = w * w;
  const double t = 1.0 / 3.0;

  QuantumProtocol p;
  p.d = 3;
  p.dim = 3;
  p.states.resize(9);
  auto set = [&](int x1, int x2, ComplexVector v) { p.state({x1, x2}) = std::move(v); };
  // parity 0
  set(2, 1, {1.0, 0.0, 0.0});
  set(1, 2, {0.0, 1.0, 0.0});
  set(0, 0, {0.0, 0.0, 1.0});
  // parity 1
  set(0, 1, {2 * t, t, -2 * t});
  set(1, 0, {t, 2 * t, 2 * t});
  set(2, 2, {2 * t, -2 * t, t});
  // parity 2
  set(0, 2, {t * w2, 2 * t * w, 2 * t});
  set(2, 0, {2 * t * w2, t * w, -2 * t});
  set(1, 1, {2 * t * w2, -2 * t * w, t});

  const double s = 1.0 / std::sqrt(7.0);
  const Complex e1 = std::polar(1.0, pi / 3.0);
  const Complex e2 = std::polar(1.0, 2.0 * pi / 3.0);
  auto combo = [&](DitString a, Complex ca, DitString b, Complex cb, DitString c, Complex cc) {
    return s * (ca * p.state(a) + cb * p.state(b) + cc * p.state(c));
  };
  std::vector<ComplexVector> first = {
      combo({0, 0}, 1.0, {0, 1}, -1.0, {0, 2}, 1.0),
      combo({1, 2}, 1.0, {1, 0}, 1.0, {1, 1}, e1),
      combo({2, 1}, 1.0, {2, 2}, 1.0, {2, 0}, e2),
  };
  std::vector<ComplexVector> second = {
      combo({0, 0}, 1.0, {1, 0}, 1.0, {2, 0}, -1.0),
      combo({2, 1}, 1.0, {0, 1}, 1.0, {1, 1}, e2),
      combo({1, 2}, -1.0, {2, 2}, 1.0, {0, 2}, e1),
  };
  p.measurements = {Measurement::projective(std::move(first)), Measurement::projective(std::move(second))};
  return p;
}

QuantumProtocol builtin_d4() {
  // Printed order E0, E1, E2, "E4": the last one is outcome 3.
  return assemble(4, kD4States, {}, to_vectors(kD4First), to_vectors(kD4Second));
}

QuantumProtocol builtin_d5() {
  auto first = to_vectors(std::span(kD5First).first(4));
  auto completion = orthonormal_completion(first, 5);
  first.push_back(std::move(completion.front()));
  return assemble(5, kD5States, kD5LabelRepairs, std::move(first), to_vectors(kD5Second));
}

}  // namespace

QuantumProtocol builtin_protocol(int d) {
  switch (d) {
    case 3: return builtin_d3();
    case 4: return builtin_d4();
    case 5: return builtin_d5();
    default:
      throw std::invalid_argument("no builtin protocol for d=" + std::to_string(d) +
                                  " (available: 3, 4, 5)");
  }
}

double builtin_tolerance(int d) {
  return d == 3 ? kExactTol : kPrintedTol;
}

}  // namespace porac
