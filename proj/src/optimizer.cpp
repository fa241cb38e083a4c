#include "porac/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace porac {

namespace {

constexpr double kStallImprovement = 1e-12;
constexpr int kMaxHalvings = 60;

// skew(X) = (X - X^†) / 2
ComplexMatrix skew(const ComplexMatrix& x) {
  ComplexMatrix s = x - x.adjoint();
  s *= 0.5;
  return s;
}

ComplexMatrix project_tangent(const ComplexMatrix& u, const ComplexMatrix& g) {
  return u * skew(u.adjoint() * g);
}

double frobenius_sq(const ComplexMatrix& m) {
  double s = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) s += std::norm(m(r, c));
  return s;
}

double real_dot(const ComplexMatrix& a, const ComplexMatrix& b) {
  double s = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) s += (std::conj(a(r, c)) * b(r, c)).real();
  return s;
}

// Column overlaps a^† psi of column `ca` of `a` with column `cb` of `b`.
Complex column_overlap(const ComplexMatrix& a, std::size_t ca, const ComplexMatrix& b, std::size_t cb) {
  Complex s = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r) s += std::conj(a(r, ca)) * b(r, cb);
  return s;
}

// Strings of parity class l in column order (x1 ascending).
DitString string_at(int l, int k, int d) {
  return {k, ((l - k) % d + d) % d};
}

}  // namespace

double SearchPoint::unitarity_deviation() const {
  double worst = 0.0;
  for (const auto& u : partition_unitaries) worst = std::max(worst, porac::unitarity_deviation(u));
  for (const auto& u : measurement_unitaries) worst = std::max(worst, porac::unitarity_deviation(u));
  return worst;
}

double PointGradient::norm() const {
  double s = 0.0;
  for (const auto& m : partition) s += frobenius_sq(m);
  for (const auto& m : measurement) s += frobenius_sq(m);
  return std::sqrt(s);
}

double dot(const PointGradient& a, const PointGradient& b) {
  double s = 0.0;
  for (std::size_t l = 0; l < a.partition.size(); ++l) s += real_dot(a.partition[l], b.partition[l]);
  for (std::size_t y = 0; y < 2; ++y) s += real_dot(a.measurement[y], b.measurement[y]);
  return s;
}

void OptConfig::validate() const {
  require_alphabet(d);
  if (restarts < 1) throw std::invalid_argument("OptConfig: restarts must be >= 1");
  if (max_iters < 1) throw std::invalid_argument("OptConfig: max_iters must be >= 1");
  if (!(step_init > 0.0)) throw std::invalid_argument("OptConfig: step_init must be > 0");
  if (!(grad_tol > 0.0)) throw std::invalid_argument("OptConfig: grad_tol must be > 0");
  if (stall_iters < 1) throw std::invalid_argument("OptConfig: stall_iters must be >= 1");
}

OptConfig default_config(int d) {
  require_alphabet(d);
  OptConfig cfg;
  cfg.d = d;
  cfg.restarts = d <= 3 ? 20 : (d == 4 ? 40 : 60);
  return cfg;
}

void validate_point(const SearchPoint& p, int d) {
  require_alphabet(d);
  const auto n = static_cast<std::size_t>(d);
  if (p.partition_unitaries.size() != n) {
    throw std::invalid_argument("search point must hold one unitary per parity class");
  }
  auto check = [&](const ComplexMatrix& u, const char* what) {
    if (u.rows() != n || u.cols() != n) {
      throw std::invalid_argument(std::string("search point ") + what + " is not d×d");
    }
    if (!is_unitary(u, kExactTol)) {
      throw std::invalid_argument(std::string("search point ") + what + " is not unitary");
    }
  };
  for (const auto& u : p.partition_unitaries) check(u, "partition unitary");
  for (const auto& u : p.measurement_unitaries) check(u, "measurement unitary");
}

QuantumProtocol protocol_from_point(const SearchPoint& p, int d) {
  validate_point(p, d);
  QuantumProtocol out;
  out.d = d;
  out.dim = static_cast<std::size_t>(d);
  out.states.resize(static_cast<std::size_t>(d) * d);
  for (int l = 0; l < d; ++l)
    for (int k = 0; k < d; ++k) out.state(string_at(l, k, d)) = p.partition_unitaries[l].column(k);
  for (int y = 0; y < 2; ++y) {
    std::vector<ComplexVector> cols;
    for (int b = 0; b < d; ++b) cols.push_back(p.measurement_unitaries[y].column(b));
    out.measurements[y] = Measurement::projective(std::move(cols));
  }
  return out;
}

SearchPoint point_from_protocol(const QuantumProtocol& p) {
  if (p.dim != static_cast<std::size_t>(p.d)) {
    throw std::invalid_argument("point_from_protocol: dimension must equal d");
  }
  const int d = p.d;
  SearchPoint out;
  for (int l = 0; l < d; ++l) {
    ComplexMatrix u(p.dim, p.dim);
    for (int k = 0; k < d; ++k) u.set_column(k, p.state(string_at(l, k, d)));
    out.partition_unitaries.push_back(std::move(u));
  }
  for (int y = 0; y < 2; ++y) {
    const auto& m = p.measurements[y];
    if (!m.is_rank_one() || m.outcomes() != p.dim) {
      throw std::invalid_argument("point_from_protocol: measurements must be rank-1 with d outcomes");
    }
    ComplexMatrix u(p.dim, p.dim);
    for (std::size_t b = 0; b < m.outcomes(); ++b) u.set_column(b, std::get<ComplexVector>(m.elements()[b]));
    out.measurement_unitaries[y] = std::move(u);
  }
  return out;
}

SearchPoint random_point(int d, Rng& rng) {
  require_alphabet(d);
  SearchPoint p;
  const auto n = static_cast<std::size_t>(d);
  for (int l = 0; l < d; ++l) p.partition_unitaries.push_back(random_unitary(n, rng));
  for (auto& u : p.measurement_unitaries) u = random_unitary(n, rng);
  return p;
}

double objective(const SearchPoint& p, int d) {
  const auto& first = p.measurement_unitaries[0];
  const auto& second = p.measurement_unitaries[1];
  double total = 0.0;
  for (int l = 0; l < d; ++l) {
    const auto& u = p.partition_unitaries[l];
    for (int k = 0; k < d; ++k) {
      const auto x = string_at(l, k, d);
      total += std::norm(column_overlap(first, x.first, u, k));
      total += std::norm(column_overlap(second, x.second, u, k));
    }
  }
  return total / (2.0 * d * d);
}

PointGradient euclidean_gradient(const SearchPoint& p, int d) {
  const auto n = static_cast<std::size_t>(d);
  const auto& first = p.measurement_unitaries[0];
  const auto& second = p.measurement_unitaries[1];
  // d f = Re tr(G^† dU) with f = c Σ |a^† psi|^2 gives G_psi = 2c a (a^† psi)
  // and G_a = 2c psi (psi^† a); here 2c = 1/d^2.
  const double scale = 1.0 / (static_cast<double>(d) * d);

  PointGradient g;
  g.partition.assign(n, ComplexMatrix(n, n));
  g.measurement = {ComplexMatrix(n, n), ComplexMatrix(n, n)};
  for (int l = 0; l < d; ++l) {
    const auto& u = p.partition_unitaries[l];
    for (int k = 0; k < d; ++k) {
      const auto x = string_at(l, k, d);
      const Complex alpha = column_overlap(first, x.first, u, k);
      const Complex beta = column_overlap(second, x.second, u, k);
      for (std::size_t r = 0; r < n; ++r) {
        g.partition[l](r, k) += scale * (first(r, x.first) * alpha + second(r, x.second) * beta);
        g.measurement[0](r, x.first) += scale * u(r, k) * std::conj(alpha);
        g.measurement[1](r, x.second) += scale * u(r, k) * std::conj(beta);
      }
    }
  }
  return g;
}

ObjectiveAndGradient objective_and_gradient(const SearchPoint& p, int d) {
  ObjectiveAndGradient out;
  out.value = objective(p, d);
  auto g = euclidean_gradient(p, d);
  for (int l = 0; l < d; ++l) g.partition[l] = project_tangent(p.partition_unitaries[l], g.partition[l]);
  for (int y = 0; y < 2; ++y) g.measurement[y] = project_tangent(p.measurement_unitaries[y], g.measurement[y]);
  out.riemannian = std::move(g);
  return out;
}

SearchPoint retract(const SearchPoint& p, const PointGradient& direction, double t) {
  SearchPoint out;
  out.partition_unitaries.reserve(p.partition_unitaries.size());
  for (std::size_t l = 0; l < p.partition_unitaries.size(); ++l) {
    out.partition_unitaries.push_back(qr_retract(p.partition_unitaries[l] + t * direction.partition[l]));
  }
  for (std::size_t y = 0; y < 2; ++y) {
    out.measurement_unitaries[y] = qr_retract(p.measurement_unitaries[y] + t * direction.measurement[y]);
  }
  return out;
}

AscentResult ascend(SearchPoint start, const OptConfig& cfg, const AscentObserver& observer) {
  cfg.validate();
  validate_point(start, cfg.d);
  const int d = cfg.d;

  AscentResult result;
  result.point = std::move(start);
  auto current = objective_and_gradient(result.point, d);
  result.value = current.value;
  result.accepted_values.push_back(current.value);

  double step = cfg.step_init;
  int stalled = 0;
  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    if (current.riemannian.norm() <= cfg.grad_tol) {
      result.converged = true;
      break;
    }
    double trial = step;
    bool accepted = false;
    SearchPoint candidate;
    double candidate_value = 0.0;
    for (int h = 0; h < kMaxHalvings; ++h, trial *= 0.5) {
      candidate = retract(result.point, current.riemannian, trial);
      candidate_value = objective(candidate, d);
      if (candidate_value > current.value) {
        accepted = true;
        break;
      }
    }
    result.iterations = iter + 1;
    if (!accepted) break;  // no increase at any step size: numerically stationary

    const double improvement = candidate_value - current.value;
    result.point = std::move(candidate);
    current = objective_and_gradient(result.point, d);
    result.value = current.value;
    result.accepted_values.push_back(current.value);
    if (observer) observer(result.point, current.value);
    step = 2.0 * trial;

    stalled = improvement <= kStallImprovement ? stalled + 1 : 0;
    if (stalled >= cfg.stall_iters) break;
  }
  if (!result.converged && current.riemannian.norm() <= cfg.grad_tol) result.converged = true;
  return result;
}

OptResult seesaw_optimize(const OptConfig& cfg) {
  cfg.validate();
  const auto restarts = static_cast<std::size_t>(cfg.restarts);
  std::vector<AscentResult> runs(restarts);

  auto run_one = [&](std::size_t r) {
    Rng rng = Rng(cfg.seed).child(r);
    runs[r] = ascend(random_point(cfg.d, rng), cfg);
  };

  unsigned threads = cfg.threads == 0 ? std::thread::hardware_concurrency() : cfg.threads;
  threads = std::clamp<unsigned>(threads, 1u, static_cast<unsigned>(restarts));
  if (threads == 1) {
    for (std::size_t r = 0; r < restarts; ++r) run_one(r);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t r = t; r < restarts; r += threads) run_one(r);
      });
    }
  }

  OptResult out;
  std::size_t best = 0;
  for (std::size_t r = 0; r < restarts; ++r) {
    out.per_restart_values.push_back(runs[r].value);
    out.iterations_used.push_back(runs[r].iterations);
    out.converged_flags.push_back(runs[r].converged);
    if (runs[r].value > runs[best].value) best = r;
  }
  out.best_restart = static_cast<int>(best);
  out.best_value = runs[best].value;
  out.best_protocol = protocol_from_point(runs[best].point, cfg.d);
  return out;
}

}  // namespace porac
