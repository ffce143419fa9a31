#include "gentkit/states.hpp"

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace gentkit {

PureState::PureState(Vector amplitudes) : amp_(std::move(amplitudes)) {
  if (amp_.size() == 0) throw InvalidInput("PureState: empty vector");
  if (std::abs(amp_.norm() - 1.0) > 1e-10)
    throw InvalidInput("PureState: vector not normalized");
}

DensityMatrix::DensityMatrix(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() == 0)
    throw InvalidInput("DensityMatrix: not square");
  double scale = std::max(1.0, m_.norm());
  if ((m_ - m_.adjoint()).norm() > 1e-9 * scale)
    throw InvalidInput("DensityMatrix: not Hermitian");
  if (std::abs(m_.trace().real() - 1.0) > 1e-9 || std::abs(m_.trace().imag()) > 1e-9)
    throw InvalidInput("DensityMatrix: trace must be 1");
  Eigen::SelfAdjointEigenSolver<Matrix> es((m_ + m_.adjoint()) / 2.0);
  if (es.eigenvalues()(0) < -1e-9)
    throw InvalidInput("DensityMatrix: negative eigenvalue");
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  return DensityMatrix(psi.projector());
}

SchmidtDecomposition schmidt(const PureState& psi, int na, int nb) {
  if (na <= 0 || nb <= 0 || psi.dim() != na * nb)
    throw InvalidInput("schmidt: dimension mismatch");
  Matrix reshaped(na, nb);
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < nb; ++b) reshaped(a, b) = psi.amplitudes()(a * nb + b);
  Eigen::JacobiSVD<Matrix> svd(reshaped, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SchmidtDecomposition out;
  out.probabilities = svd.singularValues().array().square();
  out.basis_a = svd.matrixU();
  out.basis_b = svd.matrixV().conjugate();
  return out;
}

AlgebraState restrict_state(const DensityMatrix& rho,
                            std::shared_ptr<const AlgebraRep> alg) {
  if (!alg) throw InvalidInput("restrict_state: null algebra");
  if (rho.dim() != alg->hilbert_dim())
    throw InvalidInput("restrict_state: dimension mismatch");
  return AlgebraState{alg, project(*alg, rho.matrix())};
}

namespace {

Matrix gaussian_matrix(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Matrix g(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) g(i, j) = Complex(gauss(rng), gauss(rng));
  return g;
}

}  // namespace

DensityMatrix random_density(int dim, int rank, std::uint64_t seed) {
  if (dim <= 0 || rank < 1 || rank > dim)
    throw InvalidInput("random_density: invalid rank");
  std::mt19937_64 rng(seed ^ 0xd1b54a32d192ed03ull);
  Matrix g = gaussian_matrix(dim, rank, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix((rho + rho.adjoint()) / 2.0);
}

PureState random_pure(int dim, std::uint64_t seed) {
  if (dim <= 0) throw InvalidInput("random_pure: invalid dimension");
  std::mt19937_64 rng(seed ^ 0xa0761d6478bd642full);
  Vector v = gaussian_matrix(dim, 1, rng).col(0);
  return PureState(v / v.norm());
}

}  // namespace gentkit
