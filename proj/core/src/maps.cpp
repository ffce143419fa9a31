#include "gentkit/maps.hpp"

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include "gentkit/optim.hpp"

namespace gentkit {

ExplicitMap::ExplicitMap(std::vector<Matrix> kraus,
                         std::vector<OperatorCertificate> certificates)
    : kraus_(std::move(kraus)), certs_(std::move(certificates)) {
  if (kraus_.empty()) throw InvalidInput("ExplicitMap: no operators");
  const int n = static_cast<int>(kraus_[0].rows());
  for (const Matrix& c : kraus_) {
    if (c.rows() != n || c.cols() != n)
      throw InvalidInput("ExplicitMap: operators must be square, same dimension");
    if (c.norm() < 1e-14) throw InvalidInput("ExplicitMap: zero operator");
  }
  if (certs_.empty()) certs_.resize(kraus_.size());
  if (certs_.size() != kraus_.size())
    throw InvalidInput("ExplicitMap: certificate count mismatch");
}

ExplicitMap ExplicitMap::from_exponentials(const AlgebraRep& alg,
                                           const std::vector<Matrix>& exponents) {
  std::vector<Matrix> ops;
  std::vector<OperatorCertificate> certs;
  for (const Matrix& x : exponents) {
    if (alg.residual_outside(x) > 1e-9 * std::max(1.0, x.norm()))
      throw InvalidInput("from_exponentials: exponent not in the algebra");
    ops.push_back(x.exp());
    certs.push_back({OperatorCertificate::Kind::FromAlgebra});
  }
  return ExplicitMap(std::move(ops), std::move(certs));
}

bool is_quantum_map(const ExplicitMap& m, double tol) {
  Matrix sum = Matrix::Zero(m.dim(), m.dim());
  for (const Matrix& c : m.kraus()) sum += c.adjoint() * c;
  return (sum - Matrix::Identity(m.dim(), m.dim())).norm() <= tol;
}

DensityMatrix apply(const ExplicitMap& m, const DensityMatrix& rho) {
  if (rho.dim() != m.dim()) throw InvalidInput("apply: dimension mismatch");
  if (!is_quantum_map(m)) throw InvalidInput("apply: map is not trace preserving");
  Matrix out = Matrix::Zero(m.dim(), m.dim());
  for (const Matrix& c : m.kraus()) out += c * rho.matrix() * c.adjoint();
  return DensityMatrix((out + out.adjoint()) / 2.0);
}

std::pair<double, DensityMatrix> apply_outcome(const ExplicitMap& m, int k,
                                               const DensityMatrix& rho) {
  if (k < 0 || k >= m.size()) throw InvalidInput("apply_outcome: bad outcome index");
  if (rho.dim() != m.dim()) throw InvalidInput("apply_outcome: dimension mismatch");
  const Matrix& c = m.kraus()[k];
  Matrix out = c * rho.matrix() * c.adjoint();
  double p = out.trace().real();
  if (p <= 1e-14)
    throw InvalidInput("apply_outcome: conditioning on a zero-probability outcome");
  out /= p;
  return {p, DensityMatrix((out + out.adjoint()) / 2.0)};
}

namespace {

// Hermitian orthonormal basis of the HS orthocomplement of the algebra.
std::vector<Matrix> orthocomplement_basis(const AlgebraRep& alg) {
  const int n = alg.hilbert_dim();
  std::vector<Matrix> full;
  for (const Matrix& b : alg.basis()) full.push_back(b);
  // extend by a Hermitian operator basis of the full space
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Matrix e = Matrix::Zero(n, n);
      if (i == j) {
        e(i, i) = 1.0;
        full.push_back(e);
      } else {
        e(i, j) = e(j, i) = 1.0;
        full.push_back(e);
        Matrix f = Matrix::Zero(n, n);
        f(i, j) = Complex(0, -1);
        f(j, i) = Complex(0, 1);
        full.push_back(f);
      }
    }
  std::vector<Matrix> all = orthonormalize(full, 1e-9);
  return {all.begin() + alg.dim(), all.end()};
}

Matrix map_image(const ExplicitMap& m, const Matrix& x) {
  Matrix out = Matrix::Zero(x.rows(), x.cols());
  for (const Matrix& c : m.kraus()) out += c * x * c.adjoint();
  return out;
}

}  // namespace

LiftReport lifts_to(const ExplicitMap& m, const AlgebraRep& alg, double tol) {
  if (m.dim() != alg.hilbert_dim()) throw InvalidInput("lifts_to: dimension mismatch");
  LiftReport rep;
  for (const Matrix& b : orthocomplement_basis(alg)) {
    Matrix image = map_image(m, b);
    Matrix proj = project(alg, image);
    rep.residual = std::max(rep.residual, proj.norm());
  }
  rep.liftable = rep.residual <= tol;
  if (rep.liftable) {
    const int d = alg.dim();
    RealMatrix action(d, d);
    for (int j = 0; j < d; ++j) {
      Matrix image = map_image(m, alg.basis()[j]);
      for (int i = 0; i < d; ++i) action(i, j) = hs_inner(alg.basis()[i], image).real();
    }
    rep.lifted_action = action;
  }
  return rep;
}

std::vector<SeparableVerdict> separable_certificate(const ExplicitMap& m,
                                                    const AlgebraRep& alg,
                                                    double tol) {
  if (m.dim() != alg.hilbert_dim())
    throw InvalidInput("separable_certificate: dimension mismatch");
  std::vector<SeparableVerdict> verdicts;
  for (int k = 0; k < m.size(); ++k) {
    if (m.certificates()[k].kind != OperatorCertificate::Kind::None) {
      verdicts.push_back(SeparableVerdict::CertifiedByConstruction);
      continue;
    }
    const Matrix& c = m.kraus()[k];
    Eigen::JacobiSVD<Matrix> svd(c);
    double smin = svd.singularValues()(svd.singularValues().size() - 1);
    if (smin < 1e-10 * std::max(1.0, svd.singularValues()(0))) {
      verdicts.push_back(SeparableVerdict::Uncertified);
      continue;
    }
    // scale freedom: log(gamma) I lies in the algebra
    Matrix scaled = c / svd.singularValues()(0);
    // scaling-and-squaring: repeated principal square roots until near identity
    Matrix root = scaled;
    int doublings = 0;
    const int n = scaled.rows();
    bool ok = true;
    while ((root - Matrix::Identity(n, n)).norm() > 0.25 && doublings < 40) {
      Matrix next = root.sqrt();
      if (!next.allFinite() || (next * next - root).norm() > 1e-8 * (1.0 + root.norm())) {
        ok = false;
        break;
      }
      root = next;
      ++doublings;
    }
    if (!ok) {
      verdicts.push_back(SeparableVerdict::Uncertified);
      continue;
    }
    Matrix lg = root.log();
    if (!lg.allFinite()) {
      verdicts.push_back(SeparableVerdict::Uncertified);
      continue;
    }
    Matrix a = std::pow(2.0, doublings) * lg;
    if ((a.exp() - scaled).norm() > 1e-6 * (1.0 + scaled.norm())) {
      verdicts.push_back(SeparableVerdict::Uncertified);
      continue;
    }
    // drop the trace component before the membership test
    const int dim = alg.hilbert_dim();
    Matrix a0 = a - (a.trace() / static_cast<double>(dim)) * Matrix::Identity(dim, dim);
    double resid = alg.residual_outside(a0);
    verdicts.push_back(resid <= tol * (1.0 + a0.norm())
                           ? SeparableVerdict::CertifiedNumerically
                           : SeparableVerdict::Uncertified);
  }
  return verdicts;
}

namespace {

bool bipartite_maximality(const Matrix& h0, const BipartiteInfo& bp, double gap_tol) {
  const int na = bp.na, nb = bp.nb;
  Matrix a = partial_trace(h0, na, nb, Side::B) / static_cast<double>(nb);
  Matrix b = partial_trace(h0, na, nb, Side::A) / static_cast<double>(na);
  double na_norm = a.norm(), nb_norm = b.norm();
  double scale = std::max(1.0, h0.norm());
  bool a_side = na_norm > 1e-9 * scale;
  bool b_side = nb_norm > 1e-9 * scale;
  if (a_side && b_side) return false;  // both factors present: not unilocal
  const Matrix& factor = a_side ? a : b;
  const int nf = a_side ? na : nb;
  Matrix gs = ground_space(factor, gap_tol);
  return gs.cols() == nf - 1;
}

}  // namespace

bool is_maximally_unilocal(const Matrix& h, const AlgebraRep& alg,
                           const MaximalityOptions& opts) {
  const int n = alg.hilbert_dim();
  if (h.rows() != n || h.cols() != n)
    throw InvalidInput("is_maximally_unilocal: dimension mismatch");
  if ((h - h.adjoint()).norm() > 1e-9 * std::max(1.0, h.norm()))
    throw InvalidInput("is_maximally_unilocal: operator not Hermitian");
  if (alg.residual_outside(h) > 1e-9 * std::max(1.0, h.norm()))
    throw InvalidInput("is_maximally_unilocal: operator not in the algebra");

  Matrix h0 = h - (h.trace() / static_cast<double>(n)) * Matrix::Identity(n, n);
  if (h0.norm() < 1e-10) return true;

  if (alg.bipartite() && alg.bipartite()->kind == BipartiteInfo::Kind::LocalSum)
    return bipartite_maximality(h0, *alg.bipartite(), opts.gap_tol);

  Matrix v = ground_space(h0, opts.gap_tol);
  const int k = static_cast<int>(v.cols());
  if (k >= n) return false;

  // L = Hermitian traceless algebra elements leaving the ground space invariant
  // and acting on it as a scalar; both constraints are linear.
  const auto traceless = alg.traceless_basis();
  const int d = static_cast<int>(traceless.size());
  const Matrix pout = Matrix::Identity(n, n) - v * v.adjoint();
  RealMatrix sys(2 * (n * k + k * k), d);
  for (int a = 0; a < d; ++a) {
    Matrix c1 = pout * traceless[a] * v;                  // off-block coupling
    Matrix inb = v.adjoint() * traceless[a] * v;
    Matrix c2 = inb - (inb.trace() / static_cast<double>(k)) *
                          Matrix::Identity(k, k);          // scalar deviation
    int row = 0;
    for (int j = 0; j < c1.cols(); ++j)
      for (int i = 0; i < c1.rows(); ++i) {
        sys(row++, a) = c1(i, j).real();
        sys(row++, a) = c1(i, j).imag();
      }
    for (int j = 0; j < c2.cols(); ++j)
      for (int i = 0; i < c2.rows(); ++i) {
        sys(row++, a) = c2(i, j).real();
        sys(row++, a) = c2(i, j).imag();
      }
  }
  Eigen::JacobiSVD<RealMatrix> svd(sys, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double cut = 1e-8 * std::max(1.0, sv.size() ? sv(0) : 1.0);
  int rank = 0;
  while (rank < sv.size() && sv(rank) > cut) ++rank;
  RealMatrix lspace = svd.matrixV().rightCols(d - rank);
  if (lspace.cols() == 0) return true;

  auto realize = [&](const RealVector& coeff) {
    RealVector direction = lspace * coeff;
    Matrix x = Matrix::Zero(n, n);
    for (int a = 0; a < d; ++a) x += direction(a) * traceless[a];
    x = (x + x.adjoint()) / 2.0;
    double norm = x.norm();
    if (norm > 1e-12) x /= norm;
    return x;
  };
  // an operator with a strictly larger ground space containing G has the
  // scalar on G as its minimum eigenvalue with multiplicity above k; such
  // configurations are degenerate strata, so descend the gap instead of
  // sampling
  auto objective = [&](const RealVector& coeff) {
    Matrix x = realize(coeff);
    if (x.norm() < 1e-10) return 1e3;
    double scalar = (v.adjoint() * x * v).trace().real() / k;
    HermitianSpectrum s = eig_hermitian(x);
    double contain_violation = scalar - s.eigenvalues(0);
    double gap = (k < s.eigenvalues.size()) ? s.eigenvalues(k) - s.eigenvalues(0) : 1e3;
    return gap + 50.0 * contain_violation;
  };
  auto found_larger = [&](const RealVector& coeff) {
    Matrix x = realize(coeff);
    if (x.norm() < 1e-10) return false;
    double scalar = (v.adjoint() * x * v).trace().real() / k;
    HermitianSpectrum s = eig_hermitian(x);
    if (scalar > s.eigenvalues(0) + opts.gap_tol) return false;
    Matrix gs = ground_space(x, opts.gap_tol);
    return gs.cols() > k && gs.cols() < n;
  };

  std::mt19937_64 rng(opts.seed ^ 0x853c49e6748fea9bull);
  std::normal_distribution<double> gauss;
  const int dim_l = static_cast<int>(lspace.cols());
  for (int trial = 0; trial < opts.restarts; ++trial) {
    RealVector coeff(dim_l);
    if (trial < 2 * dim_l) {
      coeff.setZero();
      coeff(trial / 2) = (trial % 2) ? -1.0 : 1.0;  // basis directions first
    } else {
      for (int i = 0; i < dim_l; ++i) coeff(i) = gauss(rng);
    }
    if (found_larger(coeff)) return false;
    NelderMeadOptions nm;
    nm.max_iter = 400;
    nm.initial_step = 0.3;
    NelderMeadResult res = nelder_mead(objective, coeff, nm);
    if (found_larger(res.x)) return false;
  }
  return true;
}

ExplicitMap conditional_compose(const ExplicitMap& first,
                                const std::vector<ExplicitMap>& branches) {
  if (static_cast<int>(branches.size()) != first.size())
    throw InvalidInput("conditional_compose: one branch per outcome required");
  std::vector<Matrix> ops;
  for (int k = 0; k < first.size(); ++k) {
    if (branches[k].dim() != first.dim())
      throw InvalidInput("conditional_compose: branch dimension mismatch");
    for (const Matrix& d : branches[k].kraus()) {
      Matrix composed = d * first.kraus()[k];
      // explicit maps keep only nonzero operators
      if (composed.norm() > 1e-14) ops.push_back(std::move(composed));
    }
  }
  return ExplicitMap(std::move(ops));
}

namespace {

double outcome_entropy(const ExplicitMap& m, const Matrix& rho, ComplexityMode mode) {
  if (mode == ComplexityMode::LogCount) return std::log2(static_cast<double>(m.size()));
  double h = 0.0;
  for (const Matrix& c : m.kraus()) {
    double p = (c * rho * c.adjoint()).trace().real();
    if (p > 1e-15) h -= p * std::log2(p);
  }
  return h;
}

double complexity_walk(const ProtocolNode& node, const Matrix& rho, ComplexityMode mode,
                       bool omit_last) {
  if (!is_quantum_map(node.map))
    throw InvalidInput("communication_complexity: protocol map not trace preserving");
  const bool leaf = node.children.empty();
  if (!leaf && static_cast<int>(node.children.size()) != node.map.size())
    throw InvalidInput("communication_complexity: child count must match outcomes");
  double total = (leaf && omit_last) ? 0.0 : outcome_entropy(node.map, rho, mode);
  if (!leaf) {
    for (int k = 0; k < node.map.size(); ++k) {
      const Matrix& c = node.map.kraus()[k];
      Matrix cond = c * rho * c.adjoint();
      double p = cond.trace().real();
      if (p <= 1e-15) continue;
      total += p * complexity_walk(node.children[k], cond / p, mode, omit_last);
    }
  }
  return total;
}

}  // namespace

double communication_complexity(const ProtocolNode& protocol, const DensityMatrix& rho,
                                ComplexityMode mode, bool omit_last_round) {
  return complexity_walk(protocol, rho.matrix(), mode, omit_last_round);
}

double OperatorSpan::residual_outside(const Matrix& x) const {
  Matrix r = x;
  for (const Matrix& b : basis) r -= hs_inner(b, x) * b;
  return r.norm();
}

OperatorSpan g2_span(const AlgebraRep& alg_sub) {
  const int n = alg_sub.hilbert_dim();
  const long op_dim = static_cast<long>(n) * n * n * n;
  if (op_dim > 4096)
    throw InvalidInput("g2_span: doubled operator space exceeds the 4096 guard");

  std::vector<Matrix> comp = orthocomplement_basis(alg_sub);
  // constraints: <X ⊗ B, C> = 0 and <B ⊗ X, C> = 0 for every operator basis
  // element X and every orthocomplement element B
  std::vector<Matrix> ops;  // Hermitian operator basis of the single space
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Matrix e = Matrix::Zero(n, n);
      if (i == j) {
        e(i, i) = 1.0;
        ops.push_back(e);
      } else {
        e(i, j) = e(j, i) = 1.0 / std::sqrt(2.0);
        ops.push_back(e);
        Matrix f = Matrix::Zero(n, n);
        f(i, j) = Complex(0, -1.0 / std::sqrt(2.0));
        f(j, i) = Complex(0, 1.0 / std::sqrt(2.0));
        ops.push_back(f);
      }
    }

  const int n2 = n * n;
  const long rows = 2L * static_cast<long>(ops.size()) * comp.size();
  Matrix constraints(rows, op_dim);
  long row = 0;
  for (const Matrix& b : comp)
    for (const Matrix& x : ops) {
      Matrix c1 = kron(x, b);
      Matrix c2 = kron(b, x);
      for (long col = 0; col < op_dim; ++col) {
        long r = col % n2, cc = col / n2;
        constraints(row, col) = std::conj(c1(r, cc));
        constraints(row + 1, col) = std::conj(c2(r, cc));
      }
      row += 2;
    }

  Eigen::BDCSVD<Matrix> svd(constraints, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double cut = 1e-8 * std::max(1.0, sv.size() ? sv(0) : 1.0);
  int rank = 0;
  while (rank < sv.size() && sv(rank) > cut) ++rank;

  OperatorSpan span;
  for (long c = rank; c < op_dim; ++c) {
    Matrix m(n2, n2);
    for (long col = 0; col < op_dim; ++col) m(col % n2, col / n2) = svd.matrixV()(col, c);
    span.basis.push_back(m);
  }
  span.basis = orthonormalize(span.basis, 1e-10);
  return span;
}

}  // namespace gentkit
