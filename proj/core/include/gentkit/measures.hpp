#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gentkit/algebra.hpp"
#include "gentkit/states.hpp"

namespace gentkit {

/// Permutation-invariant concave function of probability vectors.
class SchurConcaveFn {
 public:
  SchurConcaveFn(std::string name, std::function<double(const RealVector&)> evaluator);

  static SchurConcaveFn shannon();            // bits, log base 2
  static SchurConcaveFn renyi2_neg_purity();  // -sum p^2
  static SchurConcaveFn support_rank_limit(double cutoff = 1e-9);
  static SchurConcaveFn by_name(const std::string& name);

  const std::string& name() const { return name_; }

  /// Clips tiny negatives (>= -1e-12) and renormalizes sums within 1e-9 of 1;
  /// anything further off is rejected.
  double eval(const RealVector& p) const;
  /// True when fn vanishes exactly on point masses (0 on (1), positive on (1/2,1/2)).
  bool is_proper() const;

 private:
  std::string name_;
  std::function<double(const RealVector&)> fn_;
};

struct SCartanResult {
  double value = 0.0;          // minimum over the seeded Cartan choices
  std::vector<double> per_seed;
  double variance = 0.0;
};

/// fn evaluated on the weight-space masses (||P_alpha psi||^2) of a supporting
/// Cartan subalgebra of |psi><psi|, minimized over seeded Cartan choices when
/// the construction is degenerate.
SCartanResult s_cartan_detailed(const AlgebraRep& alg, const PureState& psi,
                                const SchurConcaveFn& fn, int n_seeds = 4,
                                std::uint64_t seed = 0);
double s_cartan(const AlgebraRep& alg, const PureState& psi, const SchurConcaveFn& fn,
                int n_seeds = 4, std::uint64_t seed = 0);

/// Pure-state measure. For bipartite local/unilocal algebras this is fn on the
/// Schmidt spectrum; in general it is the supporting-Cartan value.
double s_pure(const AlgebraRep& alg, const PureState& psi, const SchurConcaveFn& fn);

struct RoofOptions {
  int restarts = 16;
  int max_sweeps = 60;
  double tol = 1e-9;       // sweep-to-sweep improvement threshold
  int decomposition_size = 0;  // 0: rank^2
  std::uint64_t seed = 0;
};

struct RoofResult {
  double value = 0.0;
  std::vector<std::pair<double, PureState>> decomposition;
  int iterations = 0;
  bool converged = false;
};

/// Convex-roof infimum over pure-state decompositions of rho, parametrized by
/// isometries on the square root of rho and optimized by pairwise rotations
/// with restarts. Requires h ⊆ g (span inclusion). The returned value is an
/// upper bound that converges to the infimum at desk scale.
RoofResult s_roof(const AlgebraRep& g, const AlgebraRep& h, const DensityMatrix& rho,
                  const SchurConcaveFn& fn, const RoofOptions& opts = {});

/// Supremum over pure decompositions of the averaged h-purity; same
/// parametrization as s_roof.
RoofResult purity_measure(const AlgebraRep& g, const AlgebraRep& h,
                          const DensityMatrix& rho, const RoofOptions& opts = {});

struct AmplitudeOptions {
  int restarts = 24;
  int terms = 0;  // 0: use h_rank(psi)
  int max_terms = 0;  // 0: hilbert dimension
  double residual_tol = 1e-6;
  std::uint64_t seed = 0;
};

/// Best-found infimum of fn over renormalized squared amplitudes in expansions
/// of psi into coherent states (each parametrized on the exp(i Re(h)) orbit of
/// one coherent seed). A documented upper bound.
double s_amplitude(const AlgebraRep& alg, const PureState& psi, const SchurConcaveFn& fn,
                   const AmplitudeOptions& opts = {});

/// Smallest number of coherent states whose span reconstructs psi within the
/// residual tolerance (incremental search).
int h_rank(const AlgebraRep& alg, const PureState& psi, const AmplitudeOptions& opts = {});

}  // namespace gentkit
