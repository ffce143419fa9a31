#include "gentkit/coherence.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "gentkit/optim.hpp"
#include "gentkit/parallel.hpp"

namespace gentkit {

namespace {

struct RestartOutcome {
  double value = -1.0;
  Vector state;
  bool converged = false;
  int iterations = 0;
};

RestartOutcome purity_fixed_point(const AlgebraRep& alg, Vector psi,
                                  const PurityOptions& opts) {
  RestartOutcome out;
  double prev = -1.0;
  for (int it = 0; it < opts.max_iterations; ++it) {
    Matrix m = project(alg, psi * psi.adjoint());
    double purity = (m * m).trace().real();
    // the iteration is a power-method analogue; purity must not decrease
    if (purity < prev - 1e-10)
      throw NumericalFailure("max_purity: purity decreased along the iteration");
    Eigen::SelfAdjointEigenSolver<Matrix> es((m + m.adjoint()) / 2.0);
    psi = es.eigenvectors().col(es.eigenvectors().cols() - 1);
    out.iterations = it + 1;
    if (purity - prev < opts.convergence_tol && it > 0) {
      out.converged = true;
      out.value = purity;
      out.state = psi;
      return out;
    }
    prev = purity;
  }
  Matrix m = project(alg, psi * psi.adjoint());
  out.value = (m * m).trace().real();
  out.state = psi;
  return out;
}

}  // namespace

MaxPurityResult max_purity(const AlgebraRep& alg, const PurityOptions& opts) {
  const int n = alg.hilbert_dim();
  const int restarts = std::max(1, opts.restarts);
  std::vector<RestartOutcome> outcomes(restarts);
  parallel_for(restarts, [&](int r) {
    PureState start = random_pure(n, opts.seed * 0x9e3779b9ull + r);
    outcomes[r] = purity_fixed_point(alg, start.amplitudes(), opts);
  });
  int best = 0;
  for (int r = 1; r < restarts; ++r)
    if (outcomes[r].value > outcomes[best].value + 1e-15) best = r;
  MaxPurityResult res{outcomes[best].value, PureState(outcomes[best].state),
                      outcomes[best].converged, outcomes[best].iterations};
  return res;
}

Matrix ground_state_witness(const AlgebraRep& alg, const PureState& psi,
                            double gap_tol, std::uint64_t seed) {
  const int n = alg.hilbert_dim();
  if (psi.dim() != n) throw InvalidInput("ground_state_witness: dimension mismatch");
  Matrix rho = psi.projector();
  CartanDecomposition cd = supporting_cartan(alg, rho, seed);

  auto certify = [&](const Matrix& h) -> bool {
    HermitianSpectrum s = eig_hermitian((h + h.adjoint()) / 2.0);
    if (s.eigenvalues.size() < 2) return false;
    double gap = s.eigenvalues(1) - s.eigenvalues(0);
    if (gap <= gap_tol * std::max(1.0, h.norm())) return false;
    Complex overlap = s.eigenvectors.col(0).adjoint() * psi.amplitudes();
    return std::abs(overlap) > 1.0 - 1e-7;
  };

  // candidate 1: the negated traceless projection, a Cartan combination whose
  // eigenvalue on weight alpha is -<w_alpha, w_psi>
  Matrix p = project(alg, rho);
  Matrix p0 = p - hs_inner(alg.basis()[0], p) * alg.basis()[0];
  p0 = (p0 + p0.adjoint()) / 2.0;
  if (p0.norm() > 1e-12) {
    Matrix h = -p0 / p0.norm();
    if (certify(h)) return h;
  }

  // candidate 2: sharpen the margin. Locate psi's weight space, then pick the
  // Cartan direction separating that weight from the rest (min-norm point of
  // the difference set).
  const int k = static_cast<int>(cd.weights.size());
  int home = -1;
  for (int a = 0; a < k; ++a) {
    double mass = (cd.weight_projectors[a] * psi.amplitudes()).squaredNorm();
    if (mass > 1.0 - 1e-7) home = a;
  }
  if (home < 0 || k < 2)
    throw NotCoherent("ground_state_witness: state is spread over weight spaces");
  const int wdim = static_cast<int>(cd.weights[0].size());
  RealMatrix diffs(wdim, k - 1);
  int col = 0;
  for (int a = 0; a < k; ++a)
    if (a != home) diffs.col(col++) = cd.weights[a] - cd.weights[home];
  RealVector dir = min_norm_point(diffs);
  if (dir.norm() < 1e-9)
    throw NotCoherent("ground_state_witness: weight is not extremal");
  Matrix h = Matrix::Zero(n, n);
  for (int i = 0; i < wdim; ++i) h += dir(i) * cd.cartan_basis[i];
  h = -(h + h.adjoint()) / 2.0;
  h /= h.norm();
  if (certify(h)) return h;
  throw NotCoherent("ground_state_witness: no certified witness found");
}

CoherenceReport is_coherent(const AlgebraRep& alg, const PureState& psi,
                            const CoherenceOptions& opts) {
  CoherenceReport rep;
  rep.purity = h_purity(alg, psi.projector());
  rep.max_purity = opts.max_purity_hint ? *opts.max_purity_hint
                                        : max_purity(alg, opts.purity).value;
  rep.is_coherent = rep.purity >= rep.max_purity - opts.tol;
  if (rep.is_coherent) {
    try {
      rep.witness = ground_state_witness(alg, psi, opts.witness_gap_tol,
                                         opts.purity.seed);
      CartanDecomposition cd = supporting_cartan(alg, psi.projector(), opts.purity.seed);
      for (std::size_t a = 0; a < cd.weight_projectors.size(); ++a)
        if ((cd.weight_projectors[a] * psi.amplitudes()).squaredNorm() > 1.0 - 1e-7)
          rep.cartan_weight = cd.weights[a];
    } catch (const NotCoherent&) {
      // borderline purity: leave the certificate empty
    }
  }
  return rep;
}

double dispersion(const AlgebraRep& alg, const PureState& psi) {
  if (psi.dim() != alg.hilbert_dim())
    throw InvalidInput("dispersion: dimension mismatch");
  const Vector& v = psi.amplitudes();
  double sum_sq = 0.0, sum_exp = 0.0;
  for (const Matrix& x : alg.traceless_basis()) {
    Vector xv = x * v;
    sum_sq += xv.squaredNorm();  // <psi|x^2|psi>
    double e = v.dot(xv).real();
    sum_exp += e * e;
  }
  return sum_sq - sum_exp;
}

}  // namespace gentkit
