#include "gentkit/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace gentkit {

namespace {

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

double residual_outside_span(const std::vector<Matrix>& basis, const Matrix& x) {
  Matrix r = x;
  for (const Matrix& b : basis) r -= hs_inner(b, x) * b;
  return r.norm();
}

// Hermitian orthonormal basis of the span of `span_basis` (assumed †-closed),
// identity component first.
std::vector<Matrix> hermitian_basis_with_identity(int n,
                                                  const std::vector<Matrix>& span_basis,
                                                  double tol) {
  std::vector<Matrix> herm;
  herm.push_back(Matrix::Identity(n, n) / std::sqrt(static_cast<double>(n)));
  for (const Matrix& b : span_basis) {
    herm.push_back((b + b.adjoint()) / 2.0);
    herm.push_back((b - b.adjoint()) / Complex(0, 2));
  }
  return orthonormalize(herm, tol);
}

}  // namespace

AlgebraRep::AlgebraRep(int hilbert_dim, std::vector<Matrix> herm_basis,
                       std::optional<BipartiteInfo> bipartite, double tol)
    : hilbert_dim_(hilbert_dim), basis_(std::move(herm_basis)),
      bipartite_(std::move(bipartite)) {
  if (hilbert_dim_ <= 0) throw InvalidInput("AlgebraRep: bad dimension");
  if (basis_.empty()) throw InvalidInput("AlgebraRep: empty basis");
  const Matrix id_norm =
      Matrix::Identity(hilbert_dim_, hilbert_dim_) / std::sqrt(static_cast<double>(hilbert_dim_));
  if ((basis_[0] - id_norm).norm() > tol)
    throw InvalidInput("AlgebraRep: first basis element must be I/sqrt(dim)");
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const Matrix& b = basis_[i];
    if (b.rows() != hilbert_dim_ || b.cols() != hilbert_dim_)
      throw InvalidInput("AlgebraRep: basis dimension mismatch");
    if ((b - b.adjoint()).norm() > tol)
      throw InvalidInput("AlgebraRep: basis element not Hermitian");
    for (std::size_t j = 0; j <= i; ++j) {
      Complex g = hs_inner(basis_[j], b);
      double expected = (i == j) ? 1.0 : 0.0;
      if (std::abs(g - expected) > 1e-7)
        throw InvalidInput("AlgebraRep: basis not HS-orthonormal");
    }
  }
  // Lie closure: every commutator stays in the span.
  for (std::size_t i = 1; i < basis_.size(); ++i)
    for (std::size_t j = i + 1; j < basis_.size(); ++j) {
      Matrix c = commutator(basis_[i], basis_[j]);
      if (residual_outside_span(basis_, c) > std::max(tol, 1e-8 * (1.0 + c.norm())))
        throw InvalidInput("AlgebraRep: basis not closed under commutators");
    }
}

RealVector AlgebraRep::coords(const Matrix& x) const {
  RealVector c(dim());
  for (int i = 0; i < dim(); ++i) c(i) = hs_inner(basis_[i], x).real();
  return c;
}

Matrix AlgebraRep::from_coords(const RealVector& c) const {
  if (c.size() != dim()) throw InvalidInput("from_coords: size mismatch");
  Matrix x = Matrix::Zero(hilbert_dim_, hilbert_dim_);
  for (int i = 0; i < dim(); ++i) x += c(i) * basis_[i];
  return x;
}

double AlgebraRep::residual_outside(const Matrix& x) const {
  Matrix r = x;
  for (const Matrix& b : basis_) r -= hs_inner(b, x) * b;
  return r.norm();
}

bool AlgebraRep::contains_span(const AlgebraRep& other, double tol) const {
  for (const Matrix& b : other.basis())
    if (residual_outside(b) > tol) return false;
  return true;
}

AlgebraRep from_generators(const std::vector<Matrix>& gens, double tol) {
  if (gens.empty()) throw InvalidInput("from_generators: no generators");
  const int n = static_cast<int>(gens[0].rows());
  for (const Matrix& g : gens)
    if (g.rows() != n || g.cols() != n)
      throw InvalidInput("from_generators: generators must be square, same dimension");

  std::vector<Matrix> seed;
  seed.push_back(Matrix::Identity(n, n));
  for (const Matrix& g : gens) {
    seed.push_back(g);
    seed.push_back(g.adjoint());
  }
  std::vector<Matrix> basis = orthonormalize(seed, tol);

  const int max_dim = n * n;
  for (int round = 0; round < 10 && static_cast<int>(basis.size()) < max_dim; ++round) {
    std::vector<Matrix> candidates = basis;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      candidates.push_back(basis[i].adjoint());
      for (std::size_t j = i + 1; j < basis.size(); ++j)
        candidates.push_back(commutator(basis[i], basis[j]));
    }
    std::vector<Matrix> next = orthonormalize(candidates, tol);
    if (next.size() == basis.size()) {
      basis = std::move(next);
      break;
    }
    basis = std::move(next);
  }

  std::vector<Matrix> herm = hermitian_basis_with_identity(n, basis, tol);
  return AlgebraRep(n, std::move(herm));
}

Matrix project(const AlgebraRep& alg, const Matrix& rho) {
  if (rho.rows() != alg.hilbert_dim() || rho.cols() != alg.hilbert_dim())
    throw InvalidInput("project: dimension mismatch");
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  for (const Matrix& b : alg.basis()) out += hs_inner(b, rho) * b;
  return out;
}

double h_purity(const AlgebraRep& alg, const Matrix& rho) {
  if (rho.rows() != alg.hilbert_dim() || rho.cols() != alg.hilbert_dim())
    throw InvalidInput("h_purity: dimension mismatch");
  if ((rho - rho.adjoint()).norm() > 1e-8 * std::max(1.0, rho.norm()))
    throw InvalidInput("h_purity: state not Hermitian");
  if (std::abs(rho.trace().real() - 1.0) > 1e-8 || std::abs(rho.trace().imag()) > 1e-8)
    throw InvalidInput("h_purity: state trace must be 1");
  Eigen::SelfAdjointEigenSolver<Matrix> es((rho + rho.adjoint()) / 2.0);
  if (es.eigenvalues()(0) < -1e-8)
    throw InvalidInput("h_purity: state not positive semidefinite");
  Matrix p = project(alg, rho);
  return (p * p).trace().real();
}

AlgebraRep commutant(const AlgebraRep& alg) {
  const int n = alg.hilbert_dim();
  const int n2 = n * n;
  const int d = alg.dim();
  // vec([B, X]) = (I ⊗ B − Bᵀ ⊗ I) vec(X), column-major vec.
  Matrix k(static_cast<long>(d) * n2, n2);
  const Matrix id = Matrix::Identity(n, n);
  for (int i = 0; i < d; ++i) {
    const Matrix& b = alg.basis()[i];
    k.block(static_cast<long>(i) * n2, 0, n2, n2) =
        kron(id, b) - kron(b.transpose(), id);
  }
  Eigen::JacobiSVD<Matrix> svd(k, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  double cut = 1e-9 * std::max(1.0, sv.size() ? sv(0) : 1.0);
  std::vector<Matrix> null_mats;
  for (int c = n2 - 1; c >= 0; --c) {
    if (c < sv.size() && sv(c) > cut) break;
    Matrix x(n, n);
    for (int col = 0; col < n; ++col) x.col(col) = svd.matrixV().col(c).segment(col * n, n);
    null_mats.push_back(x);
  }
  std::vector<Matrix> herm = hermitian_basis_with_identity(n, null_mats, 1e-9);
  return AlgebraRep(n, std::move(herm));
}

bool is_irreducible(const AlgebraRep& alg) { return commutant(alg).dim() == 1; }

namespace {

struct Block {
  Matrix vectors;  // orthonormal columns spanning a candidate joint eigenspace
};

// Split a block by the spectrum of a Hermitian operator compressed to it.
std::vector<Block> split_block(const Block& blk, const Matrix& op, double gap_tol) {
  Matrix compressed = blk.vectors.adjoint() * op * blk.vectors;
  HermitianSpectrum s = eig_hermitian((compressed + compressed.adjoint()) / 2.0, 1e-6);
  std::vector<Block> out;
  int start = 0;
  double scale = std::max(1.0, op.norm());
  for (int i = 1; i <= s.eigenvalues.size(); ++i) {
    if (i == s.eigenvalues.size() || s.eigenvalues(i) - s.eigenvalues(i - 1) > gap_tol * scale) {
      Matrix cols = blk.vectors * s.eigenvectors.middleCols(start, i - start);
      out.push_back({cols});
      start = i;
    }
  }
  return out;
}

bool lex_less(const RealVector& a, const RealVector& b) {
  for (int i = 0; i < a.size(); ++i) {
    if (a(i) < b(i) - 1e-12) return true;
    if (a(i) > b(i) + 1e-12) return false;
  }
  return false;
}

}  // namespace

CartanDecomposition weight_decomposition(const AlgebraRep& alg,
                                         const std::vector<Matrix>& cartan,
                                         double gap_tol, std::uint64_t seed) {
  const int n = alg.hilbert_dim();
  for (std::size_t i = 0; i < cartan.size(); ++i) {
    if (cartan[i].rows() != n || cartan[i].cols() != n)
      throw InvalidInput("weight_decomposition: dimension mismatch");
    for (std::size_t j = 0; j < i; ++j)
      if (commutator(cartan[i], cartan[j]).norm() >
          1e-9 * std::max(1.0, cartan[i].norm() * cartan[j].norm()))
        throw InvalidInput("weight_decomposition: family does not commute");
  }

  CartanDecomposition out;
  out.cartan_basis = cartan;

  std::vector<Block> blocks;
  if (cartan.empty()) {
    blocks.push_back({Matrix::Identity(n, n)});
  } else {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    std::normal_distribution<double> gauss;
    Matrix generic = Matrix::Zero(n, n);
    for (const Matrix& c : cartan) generic += gauss(rng) * c;
    blocks = split_block({Matrix::Identity(n, n)}, generic, gap_tol);
    // refine blocks where some generator is not yet scalar
    for (const Matrix& c : cartan) {
      std::vector<Block> refined;
      for (const Block& blk : blocks) {
        Matrix compressed = blk.vectors.adjoint() * c * blk.vectors;
        double mean = compressed.trace().real() / blk.vectors.cols();
        Matrix dev = compressed - mean * Matrix::Identity(compressed.rows(), compressed.cols());
        if (dev.norm() > 1e-7 * std::max(1.0, c.norm())) {
          auto parts = split_block(blk, c, gap_tol);
          refined.insert(refined.end(), parts.begin(), parts.end());
        } else {
          refined.push_back(blk);
        }
      }
      blocks = std::move(refined);
    }
  }

  struct Entry {
    RealVector w;
    Matrix proj;
  };
  std::vector<Entry> entries;
  for (const Block& blk : blocks) {
    RealVector w(static_cast<int>(cartan.size()));
    for (std::size_t i = 0; i < cartan.size(); ++i) {
      Matrix compressed = blk.vectors.adjoint() * cartan[i] * blk.vectors;
      w(static_cast<int>(i)) = compressed.trace().real() / blk.vectors.cols();
    }
    entries.push_back({w, blk.vectors * blk.vectors.adjoint()});
  }
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return lex_less(a.w, b.w); });
  for (auto& e : entries) {
    out.weights.push_back(std::move(e.w));
    out.weight_projectors.push_back(std::move(e.proj));
  }
  return out;
}

namespace {

// Hermitian elements of the traceless part commuting with every family member,
// as real coordinate vectors over the traceless basis.
RealMatrix commuting_directions(const AlgebraRep& alg, const std::vector<Matrix>& family) {
  const auto traceless = alg.traceless_basis();
  const int d = static_cast<int>(traceless.size());
  const int n = alg.hilbert_dim();
  if (family.empty()) return RealMatrix::Identity(d, d);
  RealMatrix m(2 * n * n * static_cast<int>(family.size()), d);
  for (int a = 0; a < d; ++a) {
    int row = 0;
    for (const Matrix& f : family) {
      Matrix c = commutator(traceless[a], f);
      for (int col = 0; col < n; ++col)
        for (int r = 0; r < n; ++r) {
          m(row++, a) = c(r, col).real();
          m(row++, a) = c(r, col).imag();
        }
    }
  }
  Eigen::JacobiSVD<RealMatrix> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double cut = 1e-8 * std::max(1.0, sv.size() ? sv(0) : 1.0);
  int rank = 0;
  while (rank < sv.size() && sv(rank) > cut) ++rank;
  return svd.matrixV().rightCols(d - rank);
}

}  // namespace

CartanDecomposition supporting_cartan(const AlgebraRep& alg, const Matrix& rho,
                                      std::uint64_t seed) {
  const int n = alg.hilbert_dim();
  if (rho.rows() != n || rho.cols() != n)
    throw InvalidInput("supporting_cartan: dimension mismatch");
  const auto traceless = alg.traceless_basis();
  const int d = static_cast<int>(traceless.size());

  Matrix p = project(alg, rho);
  Matrix p0 = p - hs_inner(alg.basis()[0], p) * alg.basis()[0];
  p0 = (p0 + p0.adjoint()) / 2.0;

  std::vector<Matrix> family;
  if (p0.norm() > 1e-10) family.push_back(p0 / p0.norm());

  std::mt19937_64 rng(seed ^ 0x5851f42d4c957f2dull);
  std::normal_distribution<double> gauss;

  for (int guard = 0; guard <= d; ++guard) {
    RealMatrix dirs = commuting_directions(alg, family);
    // subtract the family's own directions
    std::vector<RealVector> fresh;
    std::vector<RealVector> fam_coords;
    for (const Matrix& f : family) {
      RealVector c(d);
      for (int i = 0; i < d; ++i) c(i) = hs_inner(traceless[i], f).real();
      fam_coords.push_back(c);
    }
    for (int col = 0; col < dirs.cols(); ++col) {
      RealVector v = dirs.col(col);
      for (int pass = 0; pass < 2; ++pass) {
        for (const RealVector& f : fam_coords) v -= f.dot(v) / f.squaredNorm() * f;
        for (const RealVector& f : fresh) v -= f.dot(v) * f;
      }
      if (v.norm() > 1e-7) fresh.push_back(v.normalized());
    }
    if (fresh.empty()) break;
    RealVector combo = RealVector::Zero(d);
    for (const RealVector& f : fresh) combo += gauss(rng) * f;
    Matrix next = Matrix::Zero(n, n);
    for (int i = 0; i < d; ++i) next += combo(i) * traceless[i];
    next = (next + next.adjoint()) / 2.0;
    if (next.norm() < 1e-12) continue;
    family.push_back(next / next.norm());
  }

  // orthonormalize the family (keeps hermiticity, real Gram coefficients)
  family = orthonormalize(family, 1e-10);
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (commutator(family[i], family[j]).norm() > 1e-8)
        throw NumericalFailure("supporting_cartan: family failed commutation check");
  if (!family.empty() && p0.norm() > 1e-10) {
    Matrix r = p0;
    for (const Matrix& f : family) r -= hs_inner(f, p0) * f;
    if (r.norm() > 1e-8 * std::max(1.0, p0.norm()))
      throw NumericalFailure(
          "supporting_cartan: projection not embeddable in the abelian family");
  }

  return weight_decomposition(alg, family, 1e-8, seed);
}

}  // namespace gentkit
