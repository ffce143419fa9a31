#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace gentkit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

/// Input fails a structural precondition (shape, hermiticity, normalization, ...).
class InvalidInput : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// An iterative routine could not reach its tolerance.
class NumericalFailure : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Side { A, B };

/// Hilbert-Schmidt inner product tr(a† b). Conjugate-linear in the first argument.
Complex hs_inner(const Matrix& a, const Matrix& b);

/// Hilbert-Schmidt norm sqrt(tr(a† a)).
double hs_norm(const Matrix& a);

/// Modified Gram-Schmidt with one reorthogonalization pass.
/// Elements whose residual after projection is below `tol` are dropped.
/// Deterministic given the input order.
std::vector<Matrix> orthonormalize(const std::vector<Matrix>& basis, double tol = 1e-9);

/// Partial trace of an operator on C^na ⊗ C^nb. Side::A traces out the a factor
/// (result acts on C^nb), Side::B traces out the b factor.
Matrix partial_trace(const Matrix& m, int na, int nb, Side side);

struct HermitianSpectrum {
  RealVector eigenvalues;  // ascending
  Matrix eigenvectors;     // orthonormal columns, matching order
};

/// Spectral decomposition of a Hermitian matrix. Rejects inputs with
/// ||h - h†|| > herm_tol * ||h||.
HermitianSpectrum eig_hermitian(const Matrix& h, double herm_tol = 1e-9);

/// Orthonormal basis (columns) of the minimum-eigenvalue eigenspace.
/// Eigenvalues within gap_tol * max(1, ||h||) of the minimum are grouped together.
Matrix ground_space(const Matrix& h, double gap_tol = 1e-8);

Matrix kron(const Matrix& a, const Matrix& b);

/// Identity matrix of dimension n (complex).
Matrix identity(int n);

/// Reorder the tensor factors of an operator on ⊗_i C^{dims[i]}:
/// factor i of the output is factor perm[i] of the input.
Matrix permute_factors(const Matrix& m, const std::vector<int>& dims,
                       const std::vector<int>& perm);

}  // namespace gentkit
