#include "gentkit/opspace.hpp"

#include <Eigen/Eigenvalues>

namespace gentkit {

Complex hs_inner(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw InvalidInput("hs_inner: dimension mismatch");
  return (a.conjugate().cwiseProduct(b)).sum();
}

double hs_norm(const Matrix& a) { return a.norm(); }

std::vector<Matrix> orthonormalize(const std::vector<Matrix>& basis, double tol) {
  if (basis.empty()) throw InvalidInput("orthonormalize: empty basis");
  if (tol <= 0) throw InvalidInput("orthonormalize: tol must be positive");
  std::vector<Matrix> out;
  for (const Matrix& raw : basis) {
    double n0 = raw.norm();
    if (n0 < tol) continue;
    Matrix v = raw / n0;
    for (int pass = 0; pass < 2; ++pass)
      for (const Matrix& b : out) v -= hs_inner(b, v) * b;
    double n = v.norm();
    if (n < tol) continue;
    out.push_back(v / n);
  }
  return out;
}

Matrix partial_trace(const Matrix& m, int na, int nb, Side side) {
  if (na <= 0 || nb <= 0 || m.rows() != na * nb || m.cols() != na * nb)
    throw InvalidInput("partial_trace: dimension mismatch");
  if (side == Side::B) {
    Matrix out = Matrix::Zero(na, na);
    for (int i = 0; i < na; ++i)
      for (int j = 0; j < na; ++j)
        for (int k = 0; k < nb; ++k) out(i, j) += m(i * nb + k, j * nb + k);
    return out;
  }
  Matrix out = Matrix::Zero(nb, nb);
  for (int i = 0; i < nb; ++i)
    for (int j = 0; j < nb; ++j)
      for (int k = 0; k < na; ++k) out(i, j) += m(k * nb + i, k * nb + j);
  return out;
}

HermitianSpectrum eig_hermitian(const Matrix& h, double herm_tol) {
  if (h.rows() != h.cols()) throw InvalidInput("eig_hermitian: not square");
  double scale = h.norm();
  if ((h - h.adjoint()).norm() > herm_tol * std::max(1.0, scale))
    throw InvalidInput("eig_hermitian: input is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> solver((h + h.adjoint()) / 2.0);
  if (solver.info() != Eigen::Success)
    throw NumericalFailure("eig_hermitian: eigensolver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Matrix ground_space(const Matrix& h, double gap_tol) {
  if (gap_tol <= 0) throw InvalidInput("ground_space: gap_tol must be positive");
  HermitianSpectrum s = eig_hermitian(h);
  double cutoff = s.eigenvalues(0) + gap_tol * std::max(1.0, h.norm());
  int k = 0;
  while (k < s.eigenvalues.size() && s.eigenvalues(k) <= cutoff) ++k;
  return s.eigenvectors.leftCols(k);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix identity(int n) { return Matrix::Identity(n, n); }

Matrix permute_factors(const Matrix& m, const std::vector<int>& dims,
                       const std::vector<int>& perm) {
  int nf = static_cast<int>(dims.size());
  if (static_cast<int>(perm.size()) != nf)
    throw InvalidInput("permute_factors: perm/dims size mismatch");
  long total = 1;
  for (int d : dims) total *= d;
  if (m.rows() != total || m.cols() != total)
    throw InvalidInput("permute_factors: dimension mismatch");

  // strides of each factor in the input index
  std::vector<long> stride(nf, 1);
  for (int f = nf - 2; f >= 0; --f) stride[f] = stride[f + 1] * dims[f + 1];

  std::vector<int> out_dims(nf);
  for (int f = 0; f < nf; ++f) out_dims[f] = dims[perm[f]];
  std::vector<long> out_stride(nf, 1);
  for (int f = nf - 2; f >= 0; --f) out_stride[f] = out_stride[f + 1] * out_dims[f + 1];

  // map output multi-index -> input flat index
  std::vector<long> lut(total);
  for (long idx = 0; idx < total; ++idx) {
    long rem = idx, in = 0;
    for (int f = 0; f < nf; ++f) {
      long digit = rem / out_stride[f];
      rem %= out_stride[f];
      in += digit * stride[perm[f]];
    }
    lut[idx] = in;
  }
  Matrix out(total, total);
  for (long i = 0; i < total; ++i)
    for (long j = 0; j < total; ++j) out(i, j) = m(lut[i], lut[j]);
  return out;
}

}  // namespace gentkit
