#pragma once

#include <cstdint>
#include <memory>

#include "gentkit/algebra.hpp"
#include "gentkit/opspace.hpp"

namespace gentkit {

/// Normalized state vector (||psi|| = 1 within 1e-10).
class PureState {
 public:
  explicit PureState(Vector amplitudes);
  int dim() const { return static_cast<int>(amp_.size()); }
  const Vector& amplitudes() const { return amp_; }
  Matrix projector() const { return amp_ * amp_.adjoint(); }

 private:
  Vector amp_;
};

/// Hermitian, positive semidefinite, unit-trace matrix.
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix m);
  static DensityMatrix from_pure(const PureState& psi);
  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }

 private:
  Matrix m_;
};

/// A linear functional on an algebra, stored as the projected operator mu
/// inside the algebra: lambda(C) = tr(mu† C) for C in the algebra.
struct AlgebraState {
  std::shared_ptr<const AlgebraRep> algebra;
  Matrix mu;
};

struct SchmidtDecomposition {
  RealVector probabilities;  // descending, sums to 1
  Matrix basis_a;            // orthonormal columns
  Matrix basis_b;
};

/// Schmidt decomposition of psi on C^na ⊗ C^nb with index convention
/// i = a*nb + b (row-major over the a factor).
SchmidtDecomposition schmidt(const PureState& psi, int na, int nb);

AlgebraState restrict_state(const DensityMatrix& rho,
                            std::shared_ptr<const AlgebraRep> alg);

/// Haar-style sampling: columns of a seeded complex Gaussian, normalized.
DensityMatrix random_density(int dim, int rank, std::uint64_t seed);
PureState random_pure(int dim, std::uint64_t seed);

}  // namespace gentkit
