#pragma once

#include <cstdint>
#include <vector>

#include "gentkit/algebra.hpp"
#include "gentkit/states.hpp"

namespace gentkit {

/// Built-in algebra constructors tying the toolkit to its worked settings.
struct AlgebraSpec {
  enum class Kind {
    BipartiteLocal,
    UnilocalA,
    UnilocalB,
    MultipartiteSubset,
    Spin,
    FermionQuadraticNP,
    FermionQuadraticFull,
    FullMatrix,
    Custom
  };
  Kind kind = Kind::FullMatrix;
  std::vector<int> dims;       // bipartite / multipartite parts, or {n} for full
  double spin = 0.0;           // Spin
  int modes = 0;               // fermionic kinds (Fock dimension 2^modes, modes <= 6)
  std::uint32_t subset_mask = 0;  // MultipartiteSubset
  std::vector<Matrix> custom_basis;
};

AlgebraRep build_algebra(const AlgebraSpec& spec);

/// Canonical coherent states for the spec: computational products, the lowest
/// spin state, Slater determinants per particle number.
std::vector<PureState> coherent_examples(const AlgebraSpec& spec);

/// Inclusion-ordered family {I} ⊆ unilocal ⊆ ... ⊆ local ⊆ full for up to
/// three parts (total dimension <= 64); span inclusions are verified.
std::vector<AlgebraRep> hierarchy(const std::vector<int>& parts);

// --- spin helpers -----------------------------------------------------------

/// Angular momentum matrices for spin s (dimension 2s+1), basis ordered by
/// descending magnetic number.
Matrix spin_jx(double s);
Matrix spin_jy(double s);
Matrix spin_jz(double s);

// --- fermionic helpers (Jordan-Wigner, mode-index ascending) ----------------

/// Annihilation operator for the given mode on the 2^n_modes Fock space.
Matrix jw_annihilation(int n_modes, int mode);

/// Isometries (columns = Fock basis states) onto each particle-number sector,
/// indexed by particle count 0..n_modes.
std::vector<Matrix> number_sector_isometries(int n_modes);

/// Slater determinant from orthonormal orbital columns (n_modes x particles).
PureState slater_state(int n_modes, const Matrix& orbitals);

/// Compress an algebra onto an invariant subspace given by an isometry
/// (columns orthonormal); used for per-sector coherence analysis.
AlgebraRep restrict_to_subspace(const AlgebraRep& alg, const Matrix& isometry);

}  // namespace gentkit
