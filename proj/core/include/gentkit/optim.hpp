#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "gentkit/opspace.hpp"

namespace gentkit {

/// Nonnegative least squares: minimize ||A x - b|| subject to x >= 0
/// (Lawson-Hanson active set).
struct NnlsResult {
  RealVector x;
  double residual = 0.0;
  bool converged = false;
};
NnlsResult nnls(const RealMatrix& a, const RealVector& b, int max_iter = 0);

/// Dense two-phase primal simplex for
///   minimize c·x  subject to  A x = b, x >= 0.
struct LpResult {
  enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };
  Status status = Status::Infeasible;
  RealVector x;
  double objective = 0.0;
};
LpResult linprog(const RealVector& c, const RealMatrix& a, const RealVector& b,
                 int max_iter = 0);

/// Nelder-Mead simplex descent.
struct NelderMeadOptions {
  int max_iter = 2000;
  double xtol = 1e-10;
  double ftol = 1e-12;
  double initial_step = 0.5;
};
struct NelderMeadResult {
  RealVector x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};
NelderMeadResult nelder_mead(const std::function<double(const RealVector&)>& f,
                             const RealVector& x0, const NelderMeadOptions& opts = {});

/// Levenberg-Marquardt on a finite-difference Jacobian, for small dense
/// residual systems.
struct LevenbergOptions {
  int max_iter = 200;
  double tol = 1e-14;
  double fd_step = 1e-7;
};
RealVector levenberg_polish(const std::function<RealVector(const RealVector&)>& residual,
                            RealVector x, const LevenbergOptions& opts = {});

/// Minimum-norm point of the convex hull of the columns of `points`
/// (Frank-Wolfe with line search). Used for margin directions.
RealVector min_norm_point(const RealMatrix& points, int max_iter = 500);

}  // namespace gentkit
