#pragma once

// Search over parity-oblivious quantum protocols by Riemannian gradient
// ascent on a product of unitary groups.
//
// A point holds d + 2 unitaries: column k of U_l is the state of the k-th
// string of parity class l (strings with x1 ascending), and the columns of
// the two measurement unitaries are the rank-1 decoding vectors. Every
// parity sum is then U_l U_l^† = I, so every point is parity oblivious
// exactly; no penalty or projection is needed.

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "porac/linalg.hpp"
#include "porac/quantum.hpp"

namespace porac {

struct SearchPoint {
  std::vector<ComplexMatrix> partition_unitaries;
  std::array<ComplexMatrix, 2> measurement_unitaries;

  /// Worst unitarity deviation over all d + 2 matrices.
  double unitarity_deviation() const;
};

/// Tangent vector (or Euclidean gradient) with the same layout as SearchPoint.
struct PointGradient {
  std::vector<ComplexMatrix> partition;
  std::array<ComplexMatrix, 2> measurement;

  /// Frobenius norm over all blocks.
  double norm() const;
  /// Real inner product Re tr(a^† b) summed over blocks.
  friend double dot(const PointGradient& a, const PointGradient& b);
};

struct OptConfig {
  int d = 3;
  int restarts = 20;
  int max_iters = 4000;
  double step_init = 0.1;
  double grad_tol = 1e-7;
  int stall_iters = 50;
  std::uint64_t seed = 7;
  unsigned threads = 1;  ///< 0 = hardware concurrency; never changes results

  /// Throws std::invalid_argument on d < 2 or non-positive counts/steps.
  void validate() const;
};

/// Defaults used by the CLI and the acceptance suite: 20 restarts up to
/// d = 3, 40 at d = 4, 60 from d = 5 on.
OptConfig default_config(int d);

struct AscentResult {
  SearchPoint point;
  double value = 0.0;
  bool converged = false;  ///< gradient norm reached grad_tol
  int iterations = 0;
  std::vector<double> accepted_values;  ///< objective after each accepted step, starting value first
};

struct OptResult {
  double best_value = 0.0;
  QuantumProtocol best_protocol;
  int best_restart = 0;
  std::vector<double> per_restart_values;
  std::vector<int> iterations_used;
  std::vector<bool> converged_flags;
};

/// Throws std::invalid_argument unless the point has d partition unitaries
/// and two measurement unitaries, all d×d and unitary within kExactTol.
void validate_point(const SearchPoint& p, int d);

QuantumProtocol protocol_from_point(const SearchPoint& p, int d);

/// Inverse of protocol_from_point for projective protocols with dim == d.
/// The result is only a valid point when every parity class of states is
/// orthonormal and both measurements are orthonormal bases.
SearchPoint point_from_protocol(const QuantumProtocol& p);

SearchPoint random_point(int d, Rng& rng);

/// Average success of the induced protocol.
double objective(const SearchPoint& p, int d);

/// Gradient of the objective with respect to the real inner product
/// Re tr(G^† dU), treating every matrix as unconstrained.
PointGradient euclidean_gradient(const SearchPoint& p, int d);

struct ObjectiveAndGradient {
  double value = 0.0;
  PointGradient riemannian;  ///< U · skew(U^† G) for each block
};

ObjectiveAndGradient objective_and_gradient(const SearchPoint& p, int d);

/// QR retraction of p + t·direction, block by block.
SearchPoint retract(const SearchPoint& p, const PointGradient& direction, double t);

/// Gradient ascent with backtracking: each iteration starts from twice the
/// previously accepted step (step_init on the first) and halves until the
/// objective strictly increases. Stops on grad_tol, on stall_iters
/// consecutive steps improving by <= 1e-12, or on max_iters.
/// The observer, if set, sees every accepted point and its value.
using AscentObserver = std::function<void(const SearchPoint&, double)>;
AscentResult ascend(SearchPoint start, const OptConfig& cfg, const AscentObserver& observer = {});

/// Best of cfg.restarts ascents from Haar-random points; restart r draws
/// from Rng(cfg.seed).child(r). Results do not depend on cfg.threads.
OptResult seesaw_optimize(const OptConfig& cfg);

}  // namespace porac
