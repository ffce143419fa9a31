#include "gentkit/cones.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/SVD>

#include "gentkit/optim.hpp"

namespace gentkit::cones {

void Cone::validate() const {
  if (generators.cols() == 0) throw InvalidInput("Cone: no generators");
  if (trace.size() != generators.rows()) throw InvalidInput("Cone: trace size mismatch");
  for (int j = 0; j < generators.cols(); ++j) {
    if (generators.col(j).norm() < 1e-12) throw InvalidInput("Cone: zero generator");
    if (trace.dot(generators.col(j)) <= 0)
      throw InvalidInput("Cone: trace must be positive on every generator (pointedness)");
  }
  Eigen::JacobiSVD<RealMatrix> svd(generators);
  const auto& sv = svd.singularValues();
  int rank = 0;
  while (rank < sv.size() && sv(rank) > 1e-9 * sv(0)) ++rank;
  if (rank < generators.rows())
    throw InvalidInput("Cone: generators do not span the ambient space");
}

bool contains(const Cone& cone, const RealVector& x, double tol) {
  if (x.size() != cone.ambient_dim()) throw InvalidInput("contains: dimension mismatch");
  if (cone.membership_oracle) return cone.membership_oracle(x);
  NnlsResult res = nnls(cone.generators, x);
  return res.residual <= tol * std::max(1.0, x.norm());
}

bool is_extreme_ray(const Cone& cone, const RealVector& v, double tol) {
  double vn = v.norm();
  if (vn < 1e-12) return false;
  if (cone.extremality_oracle) return cone.extremality_oracle(v);
  RealVector unit = v / vn;
  std::vector<int> others;
  for (int j = 0; j < cone.size(); ++j) {
    RealVector g = cone.generators.col(j).normalized();
    if ((g - unit).norm() > 1e-7) others.push_back(j);
  }
  if (others.empty()) return true;
  RealMatrix sub(cone.ambient_dim(), others.size());
  for (std::size_t k = 0; k < others.size(); ++k) sub.col(k) = cone.generators.col(others[k]);
  NnlsResult res = nnls(sub, unit);
  return res.residual > std::max(tol, 1e-7);
}

Cone separable_cone(const Cone& d, const Cone& c, const PiMap& pi) {
  if (pi.matrix.rows() != c.ambient_dim() || pi.matrix.cols() != d.ambient_dim())
    throw InvalidInput("separable_cone: pi shape mismatch");
  std::vector<int> keep;
  for (int j = 0; j < d.size(); ++j) {
    RealVector image = pi.matrix * d.generators.col(j);
    if (image.norm() < 1e-12)
      throw InvalidInput("separable_cone: degenerate pi (generator maps to zero)");
    if (is_extreme_ray(c, image)) keep.push_back(j);
  }
  if (keep.empty()) throw InvalidInput("separable_cone: no separable generators found");
  Cone out;
  out.generators.resize(d.ambient_dim(), static_cast<int>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k)
    out.generators.col(static_cast<int>(k)) = d.generators.col(keep[k]);
  out.trace = d.trace;
  return out;
}

namespace {

// probability weights of a conic decomposition x = sum c_j g_j
RealVector weights_from_coefficients(const Cone& cone, const RealVector& coeff,
                                     const RealVector& x) {
  RealVector p(coeff.size());
  double tx = cone.trace.dot(x);
  for (int j = 0; j < coeff.size(); ++j)
    p(j) = coeff(j) * cone.trace.dot(cone.generators.col(j)) / tx;
  return p;
}

// generator columns restricted to extreme rays (identity when oracles say so)
std::vector<int> extremal_generator_indices(const Cone& cone) {
  std::vector<int> idx;
  for (int j = 0; j < cone.size(); ++j)
    if (is_extreme_ray(cone, cone.generators.col(j))) idx.push_back(j);
  if (idx.empty()) throw InvalidInput("cone_S: no extremal generators");
  return idx;
}

}  // namespace

double cone_S(const Cone& cone, const RealVector& x, const SchurConcaveFn& fn,
              const ConeOptions& opts) {
  if (!contains(cone, x, 1e-7)) throw InvalidInput("cone_S: state not in the cone");
  std::vector<int> idx = extremal_generator_indices(cone);
  const int m = static_cast<int>(idx.size());
  RealMatrix gens(cone.ambient_dim(), m);
  for (int k = 0; k < m; ++k) gens.col(k) = cone.generators.col(idx[k]);

  Cone sub;
  sub.generators = gens;
  sub.trace = cone.trace;

  double best = std::numeric_limits<double>::infinity();
  // NNLS solution as a deterministic starting candidate
  NnlsResult base = nnls(gens, x);
  if (base.residual <= 1e-6 * std::max(1.0, x.norm()))
    best = fn.eval(weights_from_coefficients(sub, base.x, x));

  std::mt19937_64 rng(opts.seed ^ 0x94d049bb133111ebull);
  std::normal_distribution<double> gauss;
  for (int t = 0; t < opts.vertex_trials; ++t) {
    RealVector cost(m);
    for (int k = 0; k < m; ++k) cost(k) = gauss(rng);
    LpResult lp = linprog(cost, gens, x);
    if (lp.status != LpResult::Status::Optimal) continue;
    if ((gens * lp.x - x).norm() > 1e-6 * std::max(1.0, x.norm())) continue;
    double v = fn.eval(weights_from_coefficients(sub, lp.x, x));
    best = std::min(best, v);
  }
  if (!std::isfinite(best)) throw NumericalFailure("cone_S: no feasible decomposition found");
  return best;
}

double cone_S_relative(const Cone& d, const Cone& c, const PiMap& pi,
                       const RealVector& x, const SchurConcaveFn& fn,
                       const ConeOptions& opts) {
  if (!contains(d, x, 1e-7)) throw InvalidInput("cone_S_relative: state not in D");
  std::vector<int> idx = extremal_generator_indices(d);
  const int m = static_cast<int>(idx.size());
  RealMatrix gens(d.ambient_dim(), m);
  RealVector cost(m);
  double tx = d.trace.dot(x);
  for (int k = 0; k < m; ++k) {
    gens.col(k) = d.generators.col(idx[k]);
    double tg = d.trace.dot(gens.col(k));
    RealVector image = pi.matrix * gens.col(k) / tg;
    cost(k) = cone_S(c, image, fn, opts) * tg / tx;
  }
  LpResult lp = linprog(cost, gens, x);
  if (lp.status != LpResult::Status::Optimal)
    throw NumericalFailure("cone_S_relative: decomposition LP failed");
  return lp.objective;
}

namespace {

bool map_positive(const ConeMap& m, const Cone& d, double tol) {
  for (int j = 0; j < d.size(); ++j) {
    RealVector image = m.matrix * d.generators.col(j);
    if (image.norm() < 1e-13) continue;
    if (!contains(d, image, tol)) return false;
  }
  return true;
}

bool map_extremality_preserving(const ConeMap& m, const Cone& d) {
  for (int j = 0; j < d.size(); ++j) {
    if (!is_extreme_ray(d, d.generators.col(j))) continue;
    RealVector image = m.matrix * d.generators.col(j);
    if (image.norm() < 1e-13) continue;
    if (!is_extreme_ray(d, image)) return false;
  }
  return true;
}

}  // namespace

MapReport check_map(const ConeMap& m, const Cone& d, const Cone& c, const PiMap& pi,
                    const MapCheckRequest& which, const ConeOptions& opts) {
  MapReport rep;
  if (m.matrix.rows() != d.ambient_dim() || m.matrix.cols() != d.ambient_dim())
    throw InvalidInput("check_map: map shape mismatch");

  if (which.positive) rep.flags.positive = map_positive(m, d, 1e-7);
  if (which.trace_preserving)
    rep.flags.trace_preserving =
        (m.matrix.transpose() * d.trace - d.trace).norm() <= 1e-9 * d.trace.norm();
  if (which.extremality_preserving)
    rep.flags.extremality_preserving = map_extremality_preserving(m, d);
  if (which.c_separable) {
    Cone dsep = separable_cone(d, c, pi);
    // extremality in D_sep: extremal in D with an extremal image in C
    if (d.extremality_oracle && c.extremality_oracle) {
      auto dx = d.extremality_oracle;
      auto cx = c.extremality_oracle;
      RealMatrix pim = pi.matrix;
      dsep.extremality_oracle = [dx, cx, pim](const RealVector& v) {
        return dx(v) && cx(pim * v);
      };
    }
    bool pos_sep = map_positive(m, dsep, 1e-7);
    bool ext_sep = map_extremality_preserving(m, dsep);
    rep.flags.c_separable = rep.flags.positive && rep.flags.extremality_preserving &&
                            pos_sep && ext_sep;
    if (!pos_sep) rep.detail += "not positive on D_sep; ";
    if (!ext_sep) rep.detail += "not extremality preserving on D_sep; ";
  }
  if (which.liftable) {
    Eigen::JacobiSVD<RealMatrix> svd(pi.matrix, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    int rank = 0;
    while (rank < sv.size() && sv(rank) > 1e-10 * sv(0)) ++rank;
    RealMatrix kernel = svd.matrixV().rightCols(pi.matrix.cols() - rank);
    double resid = 0.0;
    for (int j = 0; j < kernel.cols(); ++j)
      resid = std::max(resid, (pi.matrix * (m.matrix * kernel.col(j))).norm());
    rep.lift_residual = resid;
    rep.flags.liftable = resid <= 1e-8;
    if (rep.flags.liftable) {
      // lifting: A' = pi A pi^+ on C coordinates
      RealMatrix pinv = pi.matrix.completeOrthogonalDecomposition().pseudoInverse();
      rep.lifted_action = pi.matrix * m.matrix * pinv;
    }
  }
  return rep;
}

MonotonicityReport monotonicity_trial(const std::vector<ConeMap>& maps, const Cone& d,
                                      const Cone& c, const PiMap& pi,
                                      const SchurConcaveFn& fn, int samples,
                                      std::uint64_t seed, const ConeOptions& opts) {
  MonotonicityReport rep;
  if (maps.empty()) throw InvalidInput("monotonicity_trial: no maps");

  RealMatrix total = RealMatrix::Zero(d.ambient_dim(), d.ambient_dim());
  for (const ConeMap& m : maps) total += m.matrix;
  if ((total.transpose() * d.trace - d.trace).norm() > 1e-8 * d.trace.norm()) {
    rep.precondition_failure = "map family is not trace preserving in total";
    return rep;
  }
  for (std::size_t k = 0; k < maps.size(); ++k) {
    MapReport mr = check_map(maps[k], d, c, pi, {}, opts);
    if (!mr.flags.liftable) {
      rep.precondition_failure = "map " + std::to_string(k) + " is not liftable";
      return rep;
    }
    if (!mr.flags.c_separable) {
      rep.precondition_failure =
          "map " + std::to_string(k) + " is not C-separable (" + mr.detail + ")";
      return rep;
    }
  }
  rep.preconditions_ok = true;

  std::mt19937_64 rng(seed ^ 0xbf58476d1ce4e5b9ull);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int s = 0; s < samples; ++s) {
    // sample a state as a random mixture of a few generators
    int terms = 2 + static_cast<int>(unif(rng) * 4);
    RealVector x = RealVector::Zero(d.ambient_dim());
    for (int t = 0; t < terms; ++t) {
      int j = static_cast<int>(unif(rng) * d.size()) % d.size();
      RealVector g = d.generators.col(j);
      x += unif(rng) * g / d.trace.dot(g);
    }
    x /= d.trace.dot(x);

    double sx = cone_S_relative(d, c, pi, x, fn, opts);
    double avg = 0.0;
    RealVector image_total = RealVector::Zero(d.ambient_dim());
    for (const ConeMap& m : maps) {
      RealVector y = m.matrix * x;
      image_total += y;
      double p = d.trace.dot(y);
      if (p <= 1e-12) continue;
      avg += p * cone_S_relative(d, c, pi, y / p, fn, opts);
    }
    double violation = avg - sx;
    double composed =
        cone_S_relative(d, c, pi, image_total / d.trace.dot(image_total), fn, opts) - sx;
    if (violation > rep.max_violation) {
      rep.max_violation = violation;
      if (violation > 5e-4 && rep.counterexamples.size() < 8) rep.counterexamples.push_back(x);
    }
    rep.max_composed_violation = std::max(rep.max_composed_violation, composed);
    rep.samples_run = s + 1;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Lie instantiation
// ---------------------------------------------------------------------------

namespace {

// Hermitian orthonormal operator basis of the full matrix space, identity first.
std::vector<Matrix> full_hermitian_basis(int n) {
  std::vector<Matrix> out;
  out.push_back(Matrix::Identity(n, n) / std::sqrt(static_cast<double>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Matrix x = Matrix::Zero(n, n);
      x(i, j) = x(j, i) = 1.0 / std::sqrt(2.0);
      out.push_back(x);
      Matrix y = Matrix::Zero(n, n);
      y(i, j) = Complex(0, -1.0 / std::sqrt(2.0));
      y(j, i) = Complex(0, 1.0 / std::sqrt(2.0));
      out.push_back(y);
    }
  for (int k = 1; k < n; ++k) {
    Matrix dg = Matrix::Zero(n, n);
    double norm = std::sqrt(static_cast<double>(k) * (k + 1));
    for (int i = 0; i < k; ++i) dg(i, i) = 1.0 / norm;
    dg(k, k) = -static_cast<double>(k) / norm;
    out.push_back(dg);
  }
  return out;
}

}  // namespace

RealVector LieConePair::coords(const Matrix& hermitian) const {
  const int n = g_alg->hilbert_dim();
  std::vector<Matrix> basis = full_hermitian_basis(n);
  RealVector v(static_cast<int>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i)
    v(static_cast<int>(i)) = hs_inner(basis[i], hermitian).real();
  return v;
}

Matrix LieConePair::matrix_from(const RealVector& v) const {
  const int n = g_alg->hilbert_dim();
  std::vector<Matrix> basis = full_hermitian_basis(n);
  Matrix m = Matrix::Zero(n, n);
  for (std::size_t i = 0; i < basis.size(); ++i) m += v(static_cast<int>(i)) * basis[i];
  return m;
}

ConeMap LieConePair::conjugation_map(const Matrix& u, double weight) const {
  const int n = g_alg->hilbert_dim();
  std::vector<Matrix> basis = full_hermitian_basis(n);
  const int dim = static_cast<int>(basis.size());
  RealMatrix m(dim, dim);
  for (int j = 0; j < dim; ++j) {
    Matrix image = u * basis[j] * u.adjoint();
    for (int i = 0; i < dim; ++i) m(i, j) = hs_inner(basis[i], image).real();
  }
  return ConeMap{weight * m};
}

LieConePair lie_cone_pair(std::shared_ptr<const AlgebraRep> g_alg,
                          std::shared_ptr<const AlgebraRep> h_alg,
                          const std::vector<PureState>& extra_states, int n_random,
                          std::uint64_t seed) {
  if (!g_alg || !h_alg) throw InvalidInput("lie_cone_pair: null algebra");
  const int n = g_alg->hilbert_dim();
  LieConePair pair;
  pair.g_alg = g_alg;
  pair.h_alg = h_alg;

  std::vector<PureState> states = extra_states;
  if (h_alg->bipartite()) {
    const auto& bp = *h_alg->bipartite();
    // computational product states, then Schmidt pairs of every state supplied
    for (int a = 0; a < bp.na; ++a)
      for (int b = 0; b < bp.nb; ++b) {
        Vector v = Vector::Zero(n);
        v(a * bp.nb + b) = 1.0;
        states.emplace_back(v);
      }
    std::vector<PureState> schmidt_pairs;
    for (const PureState& psi : extra_states) {
      SchmidtDecomposition sd = schmidt(psi, bp.na, bp.nb);
      for (int k = 0; k < sd.probabilities.size(); ++k) {
        if (sd.probabilities(k) < 1e-10) continue;
        Vector v = Vector::Zero(n);
        for (int a = 0; a < bp.na; ++a)
          for (int b = 0; b < bp.nb; ++b)
            v(a * bp.nb + b) = sd.basis_a(a, k) * sd.basis_b(b, k);
        schmidt_pairs.emplace_back(v / v.norm());
      }
    }
    states.insert(states.end(), schmidt_pairs.begin(), schmidt_pairs.end());
  }
  for (int r = 0; r < n_random; ++r) states.push_back(random_pure(n, seed + 101 * r));

  std::vector<Matrix> basis = full_hermitian_basis(n);
  const int dim = static_cast<int>(basis.size());
  pair.d.generators.resize(dim, static_cast<int>(states.size()));
  for (std::size_t s = 0; s < states.size(); ++s)
    pair.d.generators.col(static_cast<int>(s)) = pair.coords(states[s].projector());
  pair.d.trace = RealVector::Zero(dim);
  pair.d.trace(0) = std::sqrt(static_cast<double>(n));

  // D oracles: positivity and rank-1 extremality of the reconstructed matrix
  auto reconstruct = [basis, n](const RealVector& v) {
    Matrix m = Matrix::Zero(n, n);
    for (std::size_t i = 0; i < basis.size(); ++i) m += v(static_cast<int>(i)) * basis[i];
    return m;
  };
  pair.d.membership_oracle = [reconstruct](const RealVector& v) {
    Matrix m = reconstruct(v);
    HermitianSpectrum s = eig_hermitian((m + m.adjoint()) / 2.0, 1e-6);
    return s.eigenvalues(0) >= -1e-8 * std::max(1.0, m.norm());
  };
  pair.d.extremality_oracle = [reconstruct](const RealVector& v) {
    Matrix m = reconstruct(v);
    HermitianSpectrum s = eig_hermitian((m + m.adjoint()) / 2.0, 1e-6);
    const int k = s.eigenvalues.size();
    return s.eigenvalues(k - 1) > 0 &&
           (k < 2 || std::abs(s.eigenvalues(k - 2)) <= 1e-7 * s.eigenvalues(k - 1));
  };

  // pi: restriction of the functional, i.e. projection onto the h basis
  const int hdim = h_alg->dim();
  pair.pi.matrix.resize(hdim, dim);
  for (int j = 0; j < dim; ++j)
    for (int i = 0; i < hdim; ++i)
      pair.pi.matrix(i, j) = hs_inner(h_alg->basis()[i], basis[j]).real();

  // C cone: images of the D generators
  pair.c.generators = pair.pi.matrix * pair.d.generators;
  pair.c.trace = RealVector::Zero(hdim);
  pair.c.trace(0) = std::sqrt(static_cast<double>(n));

  if (h_alg->bipartite() && h_alg->bipartite()->kind == BipartiteInfo::Kind::LocalSum) {
    const BipartiteInfo bp = *h_alg->bipartite();
    std::vector<Matrix> hb(h_alg->basis().begin(), h_alg->basis().end());
    // the C cone is isomorphic to the cone of positive marginal pairs
    pair.c.membership_oracle = [hb, bp, n](const RealVector& v) {
      Matrix mu = Matrix::Zero(n, n);
      for (std::size_t i = 0; i < hb.size(); ++i) mu += v(static_cast<int>(i)) * hb[i];
      // the marginals of the projected operator are the reduced states
      Matrix ra = partial_trace(mu, bp.na, bp.nb, Side::B);
      Matrix rb = partial_trace(mu, bp.na, bp.nb, Side::A);
      double tol = 1e-8 * std::max(1.0, mu.norm());
      HermitianSpectrum sa = eig_hermitian((ra + ra.adjoint()) / 2.0, 1e-6);
      HermitianSpectrum sb = eig_hermitian((rb + rb.adjoint()) / 2.0, 1e-6);
      return sa.eigenvalues(0) >= -tol && sb.eigenvalues(0) >= -tol;
    };
    pair.c.extremality_oracle = [hb, bp, n](const RealVector& v) {
      Matrix mu = Matrix::Zero(n, n);
      for (std::size_t i = 0; i < hb.size(); ++i) mu += v(static_cast<int>(i)) * hb[i];
      Matrix ra = partial_trace(mu, bp.na, bp.nb, Side::B);
      Matrix rb = partial_trace(mu, bp.na, bp.nb, Side::A);
      HermitianSpectrum sa = eig_hermitian((ra + ra.adjoint()) / 2.0, 1e-6);
      HermitianSpectrum sb = eig_hermitian((rb + rb.adjoint()) / 2.0, 1e-6);
      const int ka = sa.eigenvalues.size(), kb = sb.eigenvalues.size();
      double topa = sa.eigenvalues(ka - 1), topb = sb.eigenvalues(kb - 1);
      if (topa <= 0 || topb <= 0) return false;
      bool pure_a = ka < 2 || std::abs(sa.eigenvalues(ka - 2)) <= 1e-7 * topa;
      bool pure_b = kb < 2 || std::abs(sb.eigenvalues(kb - 2)) <= 1e-7 * topb;
      return pure_a && pure_b;
    };
  }
  return pair;
}

void close_under_maps(Cone& d, const std::vector<ConeMap>& maps, int rounds) {
  for (int r = 0; r < rounds; ++r) {
    std::vector<RealVector> added;
    for (const ConeMap& m : maps)
      for (int j = 0; j < d.size(); ++j) {
        RealVector img = m.matrix * d.generators.col(j);
        double t = d.trace.dot(img);
        if (t <= 1e-12) continue;
        img /= t;
        bool dup = false;
        for (int k = 0; k < d.size() && !dup; ++k) {
          RealVector g = d.generators.col(k);
          if ((g / d.trace.dot(g) - img).norm() < 1e-9) dup = true;
        }
        for (const RealVector& a : added)
          if ((a - img).norm() < 1e-9) dup = true;
        if (!dup) added.push_back(img);
      }
    if (added.empty()) return;
    RealMatrix next(d.ambient_dim(), d.size() + static_cast<int>(added.size()));
    next.leftCols(d.size()) = d.generators;
    for (std::size_t k = 0; k < added.size(); ++k)
      next.col(d.size() + static_cast<int>(k)) = added[k];
    d.generators = std::move(next);
  }
}

}  // namespace gentkit::cones
