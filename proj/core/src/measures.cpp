#include "gentkit/measures.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "gentkit/coherence.hpp"
#include "gentkit/optim.hpp"
#include "gentkit/parallel.hpp"

namespace gentkit {

SchurConcaveFn::SchurConcaveFn(std::string name,
                               std::function<double(const RealVector&)> evaluator)
    : name_(std::move(name)), fn_(std::move(evaluator)) {}

SchurConcaveFn SchurConcaveFn::shannon() {
  return SchurConcaveFn("shannon", [](const RealVector& p) {
    double s = 0.0;
    for (int i = 0; i < p.size(); ++i)
      if (p(i) > 0) s -= p(i) * std::log2(p(i));
    return s;
  });
}

SchurConcaveFn SchurConcaveFn::renyi2_neg_purity() {
  return SchurConcaveFn("renyi2",
                        [](const RealVector& p) { return -p.squaredNorm(); });
}

SchurConcaveFn SchurConcaveFn::support_rank_limit(double cutoff) {
  return SchurConcaveFn("rank", [cutoff](const RealVector& p) {
    int c = 0;
    for (int i = 0; i < p.size(); ++i)
      if (p(i) > cutoff) ++c;
    return static_cast<double>(c);
  });
}

SchurConcaveFn SchurConcaveFn::by_name(const std::string& name) {
  if (name == "shannon") return shannon();
  if (name == "renyi2") return renyi2_neg_purity();
  if (name == "rank") return support_rank_limit();
  throw InvalidInput("unknown Schur-concave function: " + name);
}

double SchurConcaveFn::eval(const RealVector& p) const {
  RealVector q = p;
  double sum = 0.0;
  for (int i = 0; i < q.size(); ++i) {
    if (q(i) < -1e-12) throw InvalidInput("SchurConcaveFn: negative probability");
    if (q(i) < 0) q(i) = 0;
    sum += q(i);
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw InvalidInput("SchurConcaveFn: probabilities do not sum to 1");
  if (sum > 0) q /= sum;
  return fn_(q);
}

bool SchurConcaveFn::is_proper() const {
  RealVector point(2), flat(2);
  point << 1.0, 0.0;
  flat << 0.5, 0.5;
  return std::abs(eval(point)) < 1e-12 && eval(flat) > 1e-12;
}

namespace {

RealVector cartan_masses(const CartanDecomposition& cd, const Vector& psi) {
  RealVector p(static_cast<int>(cd.weight_projectors.size()));
  for (std::size_t a = 0; a < cd.weight_projectors.size(); ++a)
    p(static_cast<int>(a)) = (cd.weight_projectors[a] * psi).squaredNorm();
  return p;
}

}  // namespace

SCartanResult s_cartan_detailed(const AlgebraRep& alg, const PureState& psi,
                                const SchurConcaveFn& fn, int n_seeds,
                                std::uint64_t seed) {
  SCartanResult out;
  n_seeds = std::max(1, n_seeds);
  out.per_seed.resize(n_seeds);
  for (int s = 0; s < n_seeds; ++s) {
    CartanDecomposition cd = supporting_cartan(alg, psi.projector(), seed + s);
    RealVector p = cartan_masses(cd, psi.amplitudes());
    out.per_seed[s] = fn.eval(p);
  }
  out.value = *std::min_element(out.per_seed.begin(), out.per_seed.end());
  double mean = 0.0;
  for (double v : out.per_seed) mean += v;
  mean /= n_seeds;
  for (double v : out.per_seed) out.variance += (v - mean) * (v - mean);
  out.variance /= n_seeds;
  return out;
}

double s_cartan(const AlgebraRep& alg, const PureState& psi, const SchurConcaveFn& fn,
                int n_seeds, std::uint64_t seed) {
  return s_cartan_detailed(alg, psi, fn, n_seeds, seed).value;
}

double s_pure(const AlgebraRep& alg, const PureState& psi, const SchurConcaveFn& fn) {
  if (alg.bipartite()) {
    const auto& bp = *alg.bipartite();
    if (bp.kind == BipartiteInfo::Kind::Full) {
      RealVector p(1);
      p << 1.0;
      return fn.eval(p);
    }
    return fn.eval(schmidt(psi, bp.na, bp.nb).probabilities);
  }
  return s_cartan(alg, psi, fn);
}

// ---------------------------------------------------------------------------
// convex roof machinery
// ---------------------------------------------------------------------------

namespace {

struct RoofProblem {
  const AlgebraRep* h;
  const SchurConcaveFn* fn;
  bool maximize_purity;  // purity_measure shares the optimizer

  double member_value(const Vector& unnormalized) const {
    double q = unnormalized.squaredNorm();
    if (q < 1e-14) return 0.0;
    PureState psi(unnormalized / std::sqrt(q));
    if (maximize_purity) return h_purity(*h, psi.projector());
    return s_pure(*h, psi, *fn);
  }

  // weighted objective of one member; weight = squared norm
  double weighted(const Vector& phi) const {
    double q = phi.squaredNorm();
    if (q < 1e-14) return 0.0;
    return q * member_value(phi);
  }
};

// one pass over all pairs, mixing columns by 2x2 rotations; each pair gets a
// coarse grid scan followed by a small simplex polish
double pair_sweep(std::vector<Vector>& phis, const RoofProblem& prob, double current) {
  const int m = static_cast<int>(phis.size());
  const double sign = prob.maximize_purity ? -1.0 : 1.0;
  for (int k = 0; k < m; ++k) {
    for (int l = k + 1; l < m; ++l) {
      double base = prob.weighted(phis[k]) + prob.weighted(phis[l]);
      double best = base;
      double best_theta = 0.0, best_beta = 0.0;
      auto value_at = [&](double theta, double beta) {
        Complex phase(std::cos(beta), std::sin(beta));
        Vector a = std::cos(theta) * phis[k] + phase * std::sin(theta) * phis[l];
        Vector b = -std::conj(phase) * std::sin(theta) * phis[k] + std::cos(theta) * phis[l];
        return prob.weighted(a) + prob.weighted(b);
      };
      for (int ti = 1; ti < 12; ++ti) {
        double theta = ti * (M_PI / 2.0) / 12.0;
        for (int bi = 0; bi < 8; ++bi) {
          double beta = bi * (2.0 * M_PI) / 8.0;
          double v = value_at(theta, beta);
          if (sign * v < sign * best) {
            best = v;
            best_theta = theta;
            best_beta = beta;
          }
        }
      }
      if (sign * best < sign * base - 1e-15) {
        RealVector start(2);
        start << best_theta, best_beta;
        NelderMeadOptions nm;
        nm.max_iter = 120;
        nm.initial_step = 0.12;
        nm.xtol = 1e-9;
        nm.ftol = 1e-14;
        NelderMeadResult polished = nelder_mead(
            [&](const RealVector& tb) { return sign * value_at(tb(0), tb(1)); }, start, nm);
        if (polished.value < sign * best) {
          best = sign * polished.value;
          best_theta = polished.x(0);
          best_beta = polished.x(1);
        }
        Complex phase(std::cos(best_beta), std::sin(best_beta));
        Vector a = std::cos(best_theta) * phis[k] + phase * std::sin(best_theta) * phis[l];
        Vector b = -std::conj(phase) * std::sin(best_theta) * phis[k] +
                   std::cos(best_theta) * phis[l];
        phis[k] = a;
        phis[l] = b;
        current += best - base;
      }
    }
  }
  return current;
}

RoofResult roof_optimize(const AlgebraRep& g, const AlgebraRep& h,
                         const DensityMatrix& rho, const SchurConcaveFn& fn,
                         const RoofOptions& opts, bool maximize) {
  if (!g.contains_span(h, 1e-9))
    throw InvalidInput("s_roof: h is not contained in g");
  if (rho.dim() != h.hilbert_dim())
    throw InvalidInput("s_roof: dimension mismatch");

  HermitianSpectrum spec = eig_hermitian(rho.matrix());
  std::vector<int> keep;
  for (int i = 0; i < spec.eigenvalues.size(); ++i)
    if (spec.eigenvalues(i) > 1e-12) keep.push_back(i);
  const int rank = static_cast<int>(keep.size());
  Matrix root(rho.dim(), rank);
  for (int i = 0; i < rank; ++i)
    root.col(i) = std::sqrt(spec.eigenvalues(keep[i])) * spec.eigenvectors.col(keep[i]);

  const int m = opts.decomposition_size > 0
                    ? std::max(opts.decomposition_size, rank)
                    : rank * rank;
  RoofProblem prob{&h, &fn, maximize};
  const double sign = maximize ? -1.0 : 1.0;

  struct Outcome {
    double value;
    std::vector<Vector> phis;
    int sweeps;
    bool converged;
  };
  const int restarts = std::max(1, opts.restarts);
  std::vector<Outcome> outcomes(restarts);

  parallel_for(restarts, [&](int r) {
    std::mt19937_64 rng(opts.seed * 0x2545f4914f6cdd1dull + 977 * r + 1);
    std::normal_distribution<double> gauss;
    // isometry W (m x rank): QR of a Gaussian; first restart starts from the
    // eigendecomposition itself
    Matrix w = Matrix::Zero(m, rank);
    if (r == 0) {
      w.topLeftCorner(rank, rank).setIdentity();
    } else {
      Matrix gmat(m, rank);
      for (int j = 0; j < rank; ++j)
        for (int i = 0; i < m; ++i) gmat(i, j) = Complex(gauss(rng), gauss(rng));
      Eigen::HouseholderQR<Matrix> qr(gmat);
      w = qr.householderQ() * Matrix::Identity(m, rank);
    }
    std::vector<Vector> phis(m);
    for (int k = 0; k < m; ++k) phis[k] = root * w.row(k).transpose();

    double value = 0.0;
    for (const Vector& phi : phis) value += prob.weighted(phi);
    int sweep = 0;
    bool converged = false;
    auto descend = [&]() {
      for (; sweep < opts.max_sweeps; ++sweep) {
        double next = pair_sweep(phis, prob, value);
        if (sign * (value - next) < opts.tol) {
          value = next;
          return true;
        }
        value = next;
      }
      return false;
    };
    converged = descend();
    // kick phase: random joint rotations to escape blocked configurations
    std::uniform_int_distribution<int> pick(0, m - 1);
    std::uniform_real_distribution<double> unif(0.0, 2.0 * M_PI);
    for (int kick = 0; kick < 6 && m > 1; ++kick) {
      std::vector<Vector> trial = phis;
      for (int moves = 0; moves < 3; ++moves) {
        int k = pick(rng), l = pick(rng);
        if (k == l) continue;
        double theta = 0.25 * gauss(rng), beta = unif(rng);
        Complex phase(std::cos(beta), std::sin(beta));
        Vector a = std::cos(theta) * trial[k] + phase * std::sin(theta) * trial[l];
        Vector b = -std::conj(phase) * std::sin(theta) * trial[k] + std::cos(theta) * trial[l];
        trial[k] = a;
        trial[l] = b;
      }
      double tv = 0.0;
      for (const Vector& phi : trial) tv += prob.weighted(phi);
      for (int s2 = 0; s2 < 8; ++s2) {
        double next = pair_sweep(trial, prob, tv);
        if (sign * (tv - next) < opts.tol) {
          tv = next;
          break;
        }
        tv = next;
      }
      if (sign * tv < sign * value - 1e-12) {
        phis = std::move(trial);
        value = tv;
      }
    }
    outcomes[r] = {value, std::move(phis), sweep + 1, converged};
  });

  int best = 0;
  for (int r = 1; r < restarts; ++r)
    if (sign * outcomes[r].value < sign * outcomes[best].value - 1e-15) best = r;

  RoofResult res;
  res.value = outcomes[best].value;
  res.iterations = outcomes[best].sweeps;
  res.converged = outcomes[best].converged;
  for (const Vector& phi : outcomes[best].phis) {
    double q = phi.squaredNorm();
    if (q > 1e-12) res.decomposition.emplace_back(q, PureState(phi / std::sqrt(q)));
  }
  return res;
}

}  // namespace

RoofResult s_roof(const AlgebraRep& g, const AlgebraRep& h, const DensityMatrix& rho,
                  const SchurConcaveFn& fn, const RoofOptions& opts) {
  return roof_optimize(g, h, rho, fn, opts, /*maximize=*/false);
}

RoofResult purity_measure(const AlgebraRep& g, const AlgebraRep& h,
                          const DensityMatrix& rho, const RoofOptions& opts) {
  SchurConcaveFn unused = SchurConcaveFn::shannon();
  return roof_optimize(g, h, rho, unused, opts, /*maximize=*/true);
}

// ---------------------------------------------------------------------------
// coherent-expansion measures
// ---------------------------------------------------------------------------

namespace {

struct OrbitBasis {
  Vector base;                  // one coherent seed state
  std::vector<Matrix> herm;     // traceless Hermitian orthonormal basis
};

Vector orbit_state(const OrbitBasis& ob, const RealVector& theta) {
  const int n = static_cast<int>(ob.base.size());
  Matrix hgen = Matrix::Zero(n, n);
  for (std::size_t i = 0; i < ob.herm.size(); ++i) hgen += theta(static_cast<int>(i)) * ob.herm[i];
  HermitianSpectrum s = eig_hermitian((hgen + hgen.adjoint()) / 2.0, 1e-6);
  Vector phase(n);
  for (int i = 0; i < n; ++i)
    phase(i) = std::polar(1.0, s.eigenvalues(i));
  return s.eigenvectors * phase.asDiagonal() * s.eigenvectors.adjoint() * ob.base;
}

// least-squares amplitudes for psi ≈ sum alpha_k states_k; returns residual
double solve_amplitudes(const std::vector<Vector>& states, const Vector& psi,
                        Vector& alpha) {
  const int n = static_cast<int>(psi.size());
  const int r = static_cast<int>(states.size());
  Matrix mat(n, r);
  for (int k = 0; k < r; ++k) mat.col(k) = states[k];
  alpha = mat.colPivHouseholderQr().solve(psi);
  return (mat * alpha - psi).norm();
}

struct ExpansionSearch {
  const AlgebraRep* alg;
  OrbitBasis orbit;
  Vector target;
  int terms;

  Vector states_from(const RealVector& thetas, std::vector<Vector>& states) const {
    const int d = static_cast<int>(orbit.herm.size());
    states.resize(terms);
    for (int k = 0; k < terms; ++k)
      states[k] = orbit_state(orbit, thetas.segment(k * d, d));
    Vector alpha;
    solve_amplitudes(states, target, alpha);
    return alpha;
  }

  double residual(const RealVector& thetas) const {
    const int d = static_cast<int>(orbit.herm.size());
    std::vector<Vector> states(terms);
    for (int k = 0; k < terms; ++k)
      states[k] = orbit_state(orbit, thetas.segment(k * d, d));
    Vector alpha;
    return solve_amplitudes(states, target, alpha);
  }
};

OrbitBasis make_orbit(const AlgebraRep& alg, std::uint64_t seed) {
  OrbitBasis ob;
  PurityOptions popts;
  popts.restarts = 12;
  popts.seed = seed;
  ob.base = max_purity(alg, popts).argmax.amplitudes();
  for (const Matrix& x : alg.traceless_basis()) ob.herm.push_back(x);
  return ob;
}

}  // namespace

int h_rank(const AlgebraRep& alg, const PureState& psi, const AmplitudeOptions& opts) {
  const int n = alg.hilbert_dim();
  const int cap = opts.max_terms > 0 ? opts.max_terms : n;
  ExpansionSearch search{&alg, make_orbit(alg, opts.seed), psi.amplitudes(), 0};
  const int d = static_cast<int>(search.orbit.herm.size());

  for (int r = 1; r <= cap; ++r) {
    search.terms = r;
    double best = 2.0;
    std::mt19937_64 rng(opts.seed * 0x9e3779b97f4a7c15ull + 31 * r);
    std::normal_distribution<double> gauss;
    for (int restart = 0; restart < std::max(1, opts.restarts) && best > opts.residual_tol;
         ++restart) {
      RealVector theta(r * d);
      for (int i = 0; i < theta.size(); ++i)
        theta(i) = (restart == 0 ? 0.3 : 1.2) * gauss(rng);
      NelderMeadOptions nm;
      nm.max_iter = 400 * r * d;
      nm.initial_step = 0.4;
      nm.ftol = 1e-14;
      auto fn = [&](const RealVector& t) { return search.residual(t); };
      NelderMeadResult res = nelder_mead(fn, theta, nm);
      best = std::min(best, res.value);
    }
    if (best <= opts.residual_tol) return r;
  }
  throw NumericalFailure("h_rank: search cap exceeded");
}

double s_amplitude(const AlgebraRep& alg, const PureState& psi, const SchurConcaveFn& fn,
                   const AmplitudeOptions& opts) {
  int terms = opts.terms;
  if (terms <= 0) terms = h_rank(alg, psi, opts);
  if (terms == 1) {
    RealVector p(1);
    p << 1.0;
    return fn.eval(p);
  }
  ExpansionSearch search{&alg, make_orbit(alg, opts.seed), psi.amplitudes(), terms};
  const int d = static_cast<int>(search.orbit.herm.size());
  const double penalty = 1e4;

  auto objective = [&](const RealVector& theta) {
    std::vector<Vector> states;
    Vector alpha = search.states_from(theta, states);
    Matrix mat(psi.dim(), terms);
    for (int k = 0; k < terms; ++k) mat.col(k) = states[k];
    double resid = (mat * alpha - psi.amplitudes()).norm();
    RealVector p(terms);
    double tot = 0.0;
    for (int k = 0; k < terms; ++k) {
      p(k) = std::norm(alpha(k));
      tot += p(k);
    }
    if (tot < 1e-14) return penalty;
    p /= tot;
    return fn.eval(p) + penalty * resid * resid;
  };

  double best = std::numeric_limits<double>::infinity();
  std::mt19937_64 rng(opts.seed * 0x6c62272e07bb0142ull + 7);
  std::normal_distribution<double> gauss;
  for (int restart = 0; restart < std::max(1, opts.restarts); ++restart) {
    RealVector theta(terms * d);
    for (int i = 0; i < theta.size(); ++i)
      theta(i) = (0.3 + 0.3 * (restart % 4)) * gauss(rng);
    NelderMeadOptions nm;
    nm.max_iter = 500 * terms * d;
    nm.initial_step = 0.35;
    NelderMeadResult res = nelder_mead(objective, theta, nm);
    // accept only near-exact expansions
    if (search.residual(res.x) <= opts.residual_tol * 10)
      best = std::min(best, objective(res.x));
  }
  if (!std::isfinite(best))
    throw NumericalFailure("s_amplitude: no exact expansion found");
  return best;
}

}  // namespace gentkit
