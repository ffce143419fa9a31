#pragma once

#include <memory>
#include <random>

#include <Eigen/QR>

#include "gentkit/algebra.hpp"
#include "gentkit/registry.hpp"
#include "gentkit/states.hpp"

namespace fixtures {

using namespace gentkit;

inline Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline Matrix pauli_y() {
  Matrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

inline Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

inline Vector basis_vector(int dim, int k) {
  Vector v = Vector::Zero(dim);
  v(k) = 1.0;
  return v;
}

inline PureState bell_state() {
  Vector v = Vector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return PureState(v);
}

inline PureState product_state(const Vector& a, const Vector& b) {
  Vector v(a.size() * b.size());
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < b.size(); ++j) v(i * b.size() + j) = a(i) * b(j);
  return PureState(v / v.norm());
}

inline std::shared_ptr<const AlgebraRep> spin1_algebra() {
  AlgebraSpec spec;
  spec.kind = AlgebraSpec::Kind::Spin;
  spec.spin = 1.0;
  return std::make_shared<const AlgebraRep>(build_algebra(spec));
}

inline std::shared_ptr<const AlgebraRep> two_qubit_local() {
  AlgebraSpec spec;
  spec.kind = AlgebraSpec::Kind::BipartiteLocal;
  spec.dims = {2, 2};
  return std::make_shared<const AlgebraRep>(build_algebra(spec));
}

inline std::shared_ptr<const AlgebraRep> bipartite_local(int na, int nb) {
  AlgebraSpec spec;
  spec.kind = AlgebraSpec::Kind::BipartiteLocal;
  spec.dims = {na, nb};
  return std::make_shared<const AlgebraRep>(build_algebra(spec));
}

inline std::shared_ptr<const AlgebraRep> full_algebra(int n) {
  AlgebraSpec spec;
  spec.kind = AlgebraSpec::Kind::FullMatrix;
  spec.dims = {n};
  return std::make_shared<const AlgebraRep>(build_algebra(spec));
}

/// Haar-style random unitary from a seeded Gaussian QR factorization.
inline Matrix random_unitary(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x1f83d9abfb41bd6bull);
  std::normal_distribution<double> gauss;
  Matrix g(dim, dim);
  for (int j = 0; j < dim; ++j)
    for (int i = 0; i < dim; ++i) g(i, j) = Complex(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  // fix column phases for reproducibility
  Matrix r = q.adjoint() * g;
  for (int j = 0; j < dim; ++j) {
    Complex d = r(j, j) / std::abs(r(j, j));
    q.col(j) *= d;
  }
  return q;
}

}  // namespace fixtures
