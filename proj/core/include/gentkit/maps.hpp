#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gentkit/algebra.hpp"
#include "gentkit/states.hpp"

namespace gentkit {

/// Per-operator provenance. Construction certificates let separability pass
/// through without a numerical log test; Limit marks operators given as
/// closure points of exponentials.
struct OperatorCertificate {
  enum class Kind { None, FromAlgebra, Limit };
  Kind kind = Kind::None;
};

/// Ordered sequence of Kraus operators; all square, same dimension, nonzero.
class ExplicitMap {
 public:
  explicit ExplicitMap(std::vector<Matrix> kraus,
                       std::vector<OperatorCertificate> certificates = {});

  /// Operators exp(x) for algebra elements x, carrying construction certificates.
  static ExplicitMap from_exponentials(const AlgebraRep& alg,
                                       const std::vector<Matrix>& exponents);

  int dim() const { return static_cast<int>(kraus_[0].rows()); }
  int size() const { return static_cast<int>(kraus_.size()); }
  const std::vector<Matrix>& kraus() const { return kraus_; }
  const std::vector<OperatorCertificate>& certificates() const { return certs_; }

 private:
  std::vector<Matrix> kraus_;
  std::vector<OperatorCertificate> certs_;
};

/// True iff sum C_k† C_k = I within tol.
bool is_quantum_map(const ExplicitMap& m, double tol = 1e-8);

/// rho -> sum_k C_k rho C_k† (requires a trace-preserving map).
DensityMatrix apply(const ExplicitMap& m, const DensityMatrix& rho);

/// Outcome probability tr(rho C_k† C_k) and the conditional state.
std::pair<double, DensityMatrix> apply_outcome(const ExplicitMap& m, int k,
                                               const DensityMatrix& rho);

struct LiftReport {
  bool liftable = false;
  double residual = 0.0;  // max projection residual over the orthocomplement basis
  std::optional<RealMatrix> lifted_action;  // on algebra coordinates
};

/// An explicit map lifts to the algebra when it preserves the HS
/// orthocomplement (the nullspace of the restriction map). When liftable, the
/// induced action on algebra coordinates is assembled.
LiftReport lifts_to(const ExplicitMap& m, const AlgebraRep& alg, double tol = 1e-8);

enum class SeparableVerdict { CertifiedByConstruction, CertifiedNumerically, Uncertified };

/// Per-operator membership test in the closure of exp(algebra): construction
/// certificates pass through; invertible operators get a principal-log test
/// with scaling-and-squaring; everything else stays uncertified.
std::vector<SeparableVerdict> separable_certificate(const ExplicitMap& m,
                                                    const AlgebraRep& alg,
                                                    double tol = 1e-7);

struct MaximalityOptions {
  int restarts = 64;
  double gap_tol = 1e-8;
  std::uint64_t seed = 0;
};

/// True iff the traceless part vanishes or the operator's ground space is
/// maximal among proper ground spaces of algebra elements. Uses the exact
/// spectral rule for registry-built bipartite algebras and a randomized
/// search otherwise (sound but incomplete).
bool is_maximally_unilocal(const Matrix& h, const AlgebraRep& alg,
                           const MaximalityOptions& opts = {});

/// Conditional composition: operator sequence (D_{kl} C_k)_{kl}.
ExplicitMap conditional_compose(const ExplicitMap& first,
                                const std::vector<ExplicitMap>& branches);

struct ProtocolNode {
  ExplicitMap map;
  std::vector<ProtocolNode> children;  // empty, or one per outcome
};

enum class ComplexityMode { Entropy, LogCount };

/// Average number of bits communicated across the rounds of a conditional
/// composition tree; the last round can be omitted.
double communication_complexity(const ProtocolNode& protocol, const DensityMatrix& rho,
                                ComplexityMode mode = ComplexityMode::Entropy,
                                bool omit_last_round = false);

/// An orthonormal operator span with membership diagnostics.
struct OperatorSpan {
  std::vector<Matrix> basis;
  int dim() const { return static_cast<int>(basis.size()); }
  double residual_outside(const Matrix& x) const;
};

/// Span of operators C on H⊗H that look locally like the given algebra:
/// tr_1(C (X†⊗I)) and tr_2(C (I⊗X†)) land in the algebra for every X.
/// Computed as the nullspace of the stacked linear constraints.
OperatorSpan g2_span(const AlgebraRep& alg_sub);

}  // namespace gentkit
