#pragma once

#include <cstdint>
#include <optional>

#include "gentkit/algebra.hpp"
#include "gentkit/states.hpp"

namespace gentkit {

/// The queried state is not coherent for the algebra, so no ground-state
/// witness exists within tolerance.
class NotCoherent : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PurityOptions {
  int restarts = 32;
  int max_iterations = 500;
  double convergence_tol = 1e-12;
  std::uint64_t seed = 0;
};

struct MaxPurityResult {
  double value = 0.0;
  PureState argmax;
  bool converged = false;
  int iterations = 0;
};

/// Supremum of the h-purity over pure states, estimated by the monotone
/// fixed-point iteration psi <- top eigenvector of P_h(|psi><psi|) with
/// seeded random restarts. The iterate purity never decreases.
MaxPurityResult max_purity(const AlgebraRep& alg, const PurityOptions& opts = {});

struct CoherenceReport {
  bool is_coherent = false;
  double purity = 0.0;
  double max_purity = 0.0;
  std::optional<Matrix> witness;
  std::optional<RealVector> cartan_weight;
};

struct CoherenceOptions {
  double tol = 1e-6;  // decision tolerance on the purity
  PurityOptions purity;
  /// Skips the purity maximization when the caller already knows the maximum.
  std::optional<double> max_purity_hint;
  double witness_gap_tol = 1e-8;
};

/// Coherent iff h_purity(psi) >= max_purity - tol. When coherent, the report
/// carries a ground-state witness and the state's weight under a supporting
/// Cartan subalgebra.
CoherenceReport is_coherent(const AlgebraRep& alg, const PureState& psi,
                            const CoherenceOptions& opts = {});

/// Hermitian element of the algebra with psi as its unique ground state
/// (certified spectral gap). Built from a supporting Cartan for |psi><psi|,
/// choosing the combination that makes psi's weight strictly minimal.
/// Throws NotCoherent when no witness exists within tolerance.
Matrix ground_state_witness(const AlgebraRep& alg, const PureState& psi,
                            double gap_tol = 1e-8, std::uint64_t seed = 0);

/// Expectation of the invariant uncertainty operator:
/// sum_i <x_i^2> - sum_i <x_i>^2 over the orthonormal traceless Hermitian basis.
double dispersion(const AlgebraRep& alg, const PureState& psi);

}  // namespace gentkit
