#include "gentkit/optim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

namespace gentkit {

NnlsResult nnls(const RealMatrix& a, const RealVector& b, int max_iter) {
  const int n = static_cast<int>(a.cols());
  if (max_iter <= 0) max_iter = 3 * n + 30;
  std::vector<bool> active(n, false);
  RealVector x = RealVector::Zero(n);
  RealVector w = a.transpose() * (b - a * x);
  const double tol = 1e-12 * std::max(1.0, b.norm()) * std::max(1.0, a.norm());

  NnlsResult res;
  for (int iter = 0; iter < max_iter; ++iter) {
    int best = -1;
    double best_w = tol;
    for (int j = 0; j < n; ++j)
      if (!active[j] && w(j) > best_w) {
        best_w = w(j);
        best = j;
      }
    if (best < 0) {
      res.converged = true;
      break;
    }
    active[best] = true;

    while (true) {
      std::vector<int> idx;
      for (int j = 0; j < n; ++j)
        if (active[j]) idx.push_back(j);
      RealMatrix ap(a.rows(), idx.size());
      for (std::size_t k = 0; k < idx.size(); ++k) ap.col(k) = a.col(idx[k]);
      RealVector z = ap.colPivHouseholderQr().solve(b);
      bool all_pos = true;
      for (int k = 0; k < z.size(); ++k)
        if (z(k) <= 0) all_pos = false;
      if (all_pos) {
        x.setZero();
        for (std::size_t k = 0; k < idx.size(); ++k) x(idx[k]) = z(k);
        break;
      }
      double alpha = 1.0;
      for (std::size_t k = 0; k < idx.size(); ++k)
        if (z(k) <= 0) {
          double xi = x(idx[k]);
          if (xi - z(k) > 0) alpha = std::min(alpha, xi / (xi - z(k)));
        }
      for (std::size_t k = 0; k < idx.size(); ++k)
        x(idx[k]) += alpha * (z(k) - x(idx[k]));
      for (std::size_t k = 0; k < idx.size(); ++k)
        if (x(idx[k]) <= tol) {
          x(idx[k]) = 0.0;
          active[idx[k]] = false;
        }
    }
    w = a.transpose() * (b - a * x);
  }
  res.x = x;
  res.residual = (a * x - b).norm();
  return res;
}

namespace {

// Simplex over the tableau with Bland's rule.
LpResult simplex_phase(RealMatrix& t, std::vector<int>& basis, int n_struct,
                       int max_iter) {
  const int m = static_cast<int>(t.rows()) - 1;
  const int n = static_cast<int>(t.cols()) - 1;
  LpResult res;
  for (int iter = 0; iter < max_iter; ++iter) {
    int pivot_col = -1;
    for (int j = 0; j < n; ++j)
      if (t(m, j) < -1e-10) {
        pivot_col = j;
        break;
      }
    if (pivot_col < 0) {
      res.status = LpResult::Status::Optimal;
      res.x = RealVector::Zero(n_struct);
      for (int i = 0; i < m; ++i)
        if (basis[i] < n_struct) res.x(basis[i]) = t(i, n);
      res.objective = -t(m, n);
      return res;
    }
    int pivot_row = -1;
    double best_ratio = 0.0;
    for (int i = 0; i < m; ++i)
      if (t(i, pivot_col) > 1e-12) {
        double ratio = t(i, n) / t(i, pivot_col);
        if (pivot_row < 0 || ratio < best_ratio - 1e-12 ||
            (std::abs(ratio - best_ratio) <= 1e-12 && basis[i] < basis[pivot_row])) {
          pivot_row = i;
          best_ratio = ratio;
        }
      }
    if (pivot_row < 0) {
      res.status = LpResult::Status::Unbounded;
      return res;
    }
    double p = t(pivot_row, pivot_col);
    t.row(pivot_row) /= p;
    for (int i = 0; i <= m; ++i)
      if (i != pivot_row && std::abs(t(i, pivot_col)) > 1e-14)
        t.row(i) -= t(i, pivot_col) * t.row(pivot_row);
    basis[pivot_row] = pivot_col;
  }
  res.status = LpResult::Status::IterationLimit;
  return res;
}

}  // namespace

LpResult linprog(const RealVector& c, const RealMatrix& a, const RealVector& b,
                 int max_iter) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  if (max_iter <= 0) max_iter = 50 * (m + n) + 200;

  // phase 1: artificials
  RealMatrix t(m + 1, n + m + 1);
  t.setZero();
  for (int i = 0; i < m; ++i) {
    double sign = b(i) >= 0 ? 1.0 : -1.0;
    t.block(i, 0, 1, n) = sign * a.row(i);
    t(i, n + i) = 1.0;
    t(i, n + m) = sign * b(i);
  }
  for (int j = 0; j < n + m; ++j)
    t(m, j) = (j >= n) ? 1.0 : 0.0;
  // reduce cost row against artificial basis
  for (int i = 0; i < m; ++i) t.row(m) -= t.row(i);
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = n + i;

  LpResult phase1 = simplex_phase(t, basis, n, max_iter);
  if (phase1.status != LpResult::Status::Optimal) return phase1;
  if (phase1.objective > 1e-7) {
    LpResult res;
    res.status = LpResult::Status::Infeasible;
    return res;
  }

  // drive any artificial out of the basis if possible
  for (int i = 0; i < m; ++i)
    if (basis[i] >= n) {
      for (int j = 0; j < n; ++j)
        if (std::abs(t(i, j)) > 1e-9) {
          double p = t(i, j);
          t.row(i) /= p;
          for (int r = 0; r <= m; ++r)
            if (r != i && std::abs(t(r, j)) > 1e-14) t.row(r) -= t(r, j) * t.row(i);
          basis[i] = j;
          break;
        }
    }

  // phase 2 tableau: drop artificial columns, install real costs
  RealMatrix t2(m + 1, n + 1);
  t2.block(0, 0, m, n) = t.block(0, 0, m, n);
  t2.col(n).head(m) = t.col(n + m).head(m);
  for (int j = 0; j < n; ++j) t2(m, j) = c(j);
  t2(m, n) = 0.0;
  for (int i = 0; i < m; ++i)
    if (basis[i] < n) t2.row(m) -= c(basis[i]) * t2.row(i);

  return simplex_phase(t2, basis, n, max_iter);
}

NelderMeadResult nelder_mead(const std::function<double(const RealVector&)>& f,
                             const RealVector& x0, const NelderMeadOptions& opts) {
  const int n = static_cast<int>(x0.size());
  std::vector<RealVector> pts(n + 1, x0);
  std::vector<double> vals(n + 1);
  for (int i = 0; i < n; ++i) pts[i + 1](i) += opts.initial_step;
  for (int i = 0; i <= n; ++i) vals[i] = f(pts[i]);

  NelderMeadResult res;
  int iter = 0;
  for (; iter < opts.max_iter; ++iter) {
    std::vector<int> order(n + 1);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return vals[a] < vals[b]; });
    {
      std::vector<RealVector> p2(n + 1);
      std::vector<double> v2(n + 1);
      for (int i = 0; i <= n; ++i) {
        p2[i] = pts[order[i]];
        v2[i] = vals[order[i]];
      }
      pts = std::move(p2);
      vals = std::move(v2);
    }
    double spread = 0.0;
    for (int i = 1; i <= n; ++i) spread = std::max(spread, (pts[i] - pts[0]).norm());
    if (spread < opts.xtol || std::abs(vals[n] - vals[0]) < opts.ftol) {
      res.converged = true;
      break;
    }
    RealVector centroid = RealVector::Zero(n);
    for (int i = 0; i < n; ++i) centroid += pts[i];
    centroid /= n;

    RealVector xr = centroid + (centroid - pts[n]);
    double fr = f(xr);
    if (fr < vals[0]) {
      RealVector xe = centroid + 2.0 * (centroid - pts[n]);
      double fe = f(xe);
      if (fe < fr) {
        pts[n] = xe;
        vals[n] = fe;
      } else {
        pts[n] = xr;
        vals[n] = fr;
      }
    } else if (fr < vals[n - 1]) {
      pts[n] = xr;
      vals[n] = fr;
    } else {
      RealVector xc = centroid + 0.5 * (pts[n] - centroid);
      double fc = f(xc);
      if (fc < vals[n]) {
        pts[n] = xc;
        vals[n] = fc;
      } else {
        for (int i = 1; i <= n; ++i) {
          pts[i] = pts[0] + 0.5 * (pts[i] - pts[0]);
          vals[i] = f(pts[i]);
        }
      }
    }
  }
  int best = 0;
  for (int i = 1; i <= n; ++i)
    if (vals[i] < vals[best]) best = i;
  res.x = pts[best];
  res.value = vals[best];
  res.iterations = iter;
  return res;
}

RealVector levenberg_polish(const std::function<RealVector(const RealVector&)>& residual,
                            RealVector x, const LevenbergOptions& opts) {
  double lambda = 1e-3;
  RealVector r = residual(x);
  double cost = r.squaredNorm();
  for (int iter = 0; iter < opts.max_iter && cost > opts.tol; ++iter) {
    const int n = static_cast<int>(x.size());
    const int m = static_cast<int>(r.size());
    RealMatrix jac(m, n);
    for (int j = 0; j < n; ++j) {
      RealVector xp = x;
      xp(j) += opts.fd_step;
      jac.col(j) = (residual(xp) - r) / opts.fd_step;
    }
    RealMatrix h = jac.transpose() * jac;
    RealVector g = jac.transpose() * r;
    bool stepped = false;
    for (int tries = 0; tries < 12; ++tries) {
      RealMatrix hl = h;
      hl.diagonal().array() += lambda;
      RealVector step = hl.ldlt().solve(-g);
      RealVector xn = x + step;
      RealVector rn = residual(xn);
      double cn = rn.squaredNorm();
      if (cn < cost) {
        x = xn;
        r = rn;
        cost = cn;
        lambda = std::max(lambda * 0.3, 1e-12);
        stepped = true;
        break;
      }
      lambda *= 10.0;
    }
    if (!stepped) break;
  }
  return x;
}

RealVector min_norm_point(const RealMatrix& points, int max_iter) {
  const int n = static_cast<int>(points.cols());
  RealVector x = points.col(0);
  for (int iter = 0; iter < max_iter; ++iter) {
    // Frank-Wolfe: vertex minimizing <x, p>
    int best = 0;
    double bv = x.dot(points.col(0));
    for (int j = 1; j < n; ++j) {
      double v = x.dot(points.col(j));
      if (v < bv) {
        bv = v;
        best = j;
      }
    }
    RealVector d = points.col(best) - x;
    double dd = d.squaredNorm();
    if (dd < 1e-24) break;
    double gamma = std::clamp(-x.dot(d) / dd, 0.0, 1.0);
    if (gamma * std::sqrt(dd) < 1e-14) break;
    x += gamma * d;
  }
  return x;
}

}  // namespace gentkit
