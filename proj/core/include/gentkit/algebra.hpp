#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gentkit/opspace.hpp"

namespace gentkit {

/// Tensor-product structure attached by the registry builders. Lets bipartite
/// specializations (Schmidt fast paths, unilocal decompositions) kick in.
struct BipartiteInfo {
  enum class Kind { LocalSum, UnilocalA, UnilocalB, Full };
  int na = 0;
  int nb = 0;
  Kind kind = Kind::LocalSum;
};

/// A †-closed operator Lie algebra containing the identity, stored through an
/// HS-orthonormal basis of Hermitian matrices with the identity component first.
/// The remaining basis elements are traceless, so basis()[1..] spans the
/// traceless part.
class AlgebraRep {
 public:
  /// Validates hermiticity, orthonormality, the identity component and closure
  /// under commutators (residual outside the span at most tol).
  AlgebraRep(int hilbert_dim, std::vector<Matrix> herm_basis,
             std::optional<BipartiteInfo> bipartite = std::nullopt,
             double tol = 1e-9);

  int hilbert_dim() const { return hilbert_dim_; }
  int dim() const { return static_cast<int>(basis_.size()); }

  const std::vector<Matrix>& basis() const { return basis_; }
  std::span<const Matrix> traceless_basis() const {
    return {basis_.data() + 1, basis_.size() - 1};
  }

  const std::optional<BipartiteInfo>& bipartite() const { return bipartite_; }

  /// Real coordinates of a Hermitian matrix in the basis (tr(b_i x)).
  RealVector coords(const Matrix& x) const;
  /// Matrix with the given coordinates.
  Matrix from_coords(const RealVector& c) const;
  /// HS distance from x to its projection into the algebra.
  double residual_outside(const Matrix& x) const;
  /// True when every basis element of `other` lies in this span within tol.
  bool contains_span(const AlgebraRep& other, double tol = 1e-9) const;

 private:
  int hilbert_dim_;
  std::vector<Matrix> basis_;
  std::optional<BipartiteInfo> bipartite_;
};

/// Smallest †-closed Lie algebra containing the generators and the identity:
/// adjoints and pairwise commutators are added and orthonormalized until the
/// dimension stabilizes (at most 10 rounds or dimension hilbert_dim²).
AlgebraRep from_generators(const std::vector<Matrix>& gens, double tol = 1e-9);

/// HS-orthogonal projection of rho onto the algebra. Hermitian when rho is,
/// and induces the same linear functional on the algebra as rho.
Matrix project(const AlgebraRep& alg, const Matrix& rho);

/// tr(P_h(rho)²) for a density matrix rho (positive, unit trace, tol 1e-8).
double h_purity(const AlgebraRep& alg, const Matrix& rho);

/// All operators commuting with every basis element, as an algebra.
AlgebraRep commutant(const AlgebraRep& alg);

/// True iff the commutant consists of the scalars only.
bool is_irreducible(const AlgebraRep& alg);

struct CartanDecomposition {
  std::vector<Matrix> cartan_basis;       // commuting Hermitian, HS-orthonormal
  std::vector<RealVector> weights;        // one coordinate per Cartan generator
  std::vector<Matrix> weight_projectors;  // orthogonal, complete
};

/// Joint eigenspace decomposition of the Hilbert space for a commuting
/// Hermitian family, via a seeded generic linear combination. Eigenvalues are
/// grouped with gap_tol; blocks where a generator fails to act as a scalar are
/// refined recursively. Weight spaces come back sorted lexicographically by
/// weight vector.
CartanDecomposition weight_decomposition(const AlgebraRep& alg,
                                         const std::vector<Matrix>& cartan,
                                         double gap_tol = 1e-8,
                                         std::uint64_t seed = 0);

/// A †-closed maximal abelian subalgebra of the traceless part containing the
/// traceless projection of rho, extended to maximality with seeded generic
/// commutant elements. Requires an irreducible algebra.
CartanDecomposition supporting_cartan(const AlgebraRep& alg, const Matrix& rho,
                                      std::uint64_t seed = 0);

}  // namespace gentkit
