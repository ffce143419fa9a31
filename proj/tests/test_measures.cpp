#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include "fixtures.hpp"
#include "gentkit/coherence.hpp"
#include "gentkit/measures.hpp"
#include "gentkit/registry.hpp"
#include "oracles.hpp"

using namespace gentkit;
using namespace fixtures;

namespace {

RealVector probs(std::initializer_list<double> v) {
  RealVector p(static_cast<int>(v.size()));
  int i = 0;
  for (double x : v) p(i++) = x;
  return p;
}

PureState spin1_cat() {
  Vector v = Vector::Zero(3);
  v(0) = v(2) = 1.0 / std::sqrt(2.0);
  return PureState(v);
}

}  // namespace

TEST_CASE("Schur-concave function values") {
  CHECK(SchurConcaveFn::shannon().eval(probs({0.5, 0.5})) == doctest::Approx(1.0));
  CHECK(SchurConcaveFn::renyi2_neg_purity().eval(probs({1.0, 0.0})) ==
        doctest::Approx(-1.0));
  CHECK(SchurConcaveFn::support_rank_limit().eval(probs({0.3, 0.7})) ==
        doctest::Approx(2.0));
  CHECK_THROWS_AS(SchurConcaveFn::shannon().eval(probs({0.5, 0.2})), InvalidInput);
  CHECK_THROWS_AS(SchurConcaveFn::shannon().eval(probs({1.5, -0.5})), InvalidInput);
}

TEST_CASE("Schur-concave functions are permutation invariant and concave") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unif(0.01, 1.0);
  for (const auto& fn : {SchurConcaveFn::shannon(), SchurConcaveFn::renyi2_neg_purity()}) {
    for (int t = 0; t < 20; ++t) {
      RealVector p(4), q(4);
      double sum = 0;
      for (int i = 0; i < 4; ++i) sum += (p(i) = unif(rng));
      p /= sum;
      // permutation invariance
      q << p(2), p(0), p(3), p(1);
      CHECK(fn.eval(p) == doctest::Approx(fn.eval(q)).epsilon(1e-12));
      // concavity on a random mixing pair
      RealVector r(4);
      sum = 0;
      for (int i = 0; i < 4; ++i) sum += (r(i) = unif(rng));
      r /= sum;
      double lam = unif(rng);
      RealVector mix = lam * p + (1 - lam) * r;
      CHECK(fn.eval(mix) >= lam * fn.eval(p) + (1 - lam) * fn.eval(r) - 1e-9);
    }
  }
}

TEST_CASE("s_pure on bipartite states") {
  auto alg = two_qubit_local();
  SchurConcaveFn sh = SchurConcaveFn::shannon();
  CHECK(s_pure(*alg, bell_state(), sh) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s_pure(*alg, PureState(basis_vector(4, 0)), sh) == doctest::Approx(0.0));
  Vector v = Vector::Zero(4);
  v(0) = std::sqrt(0.9);
  v(3) = std::sqrt(0.1);
  CHECK(s_pure(*alg, PureState(v), sh) ==
        doctest::Approx(oracles::binary_entropy(0.9)).epsilon(1e-10));
}

TEST_CASE("s_cartan agrees with the Schmidt spectrum on bipartite states") {
  SchurConcaveFn sh = SchurConcaveFn::shannon();
  for (auto dims : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 3}}) {
    auto alg = bipartite_local(dims.first, dims.second);
    for (int t = 0; t < 6; ++t) {
      PureState psi = random_pure(dims.first * dims.second, 300 + 17 * t);
      double expected = sh.eval(schmidt(psi, dims.first, dims.second).probabilities);
      CHECK(s_cartan(*alg, psi, sh, 2, t) == doctest::Approx(expected).epsilon(1e-8));
    }
  }
}

TEST_CASE("s_cartan on spin-1 weight structure") {
  auto alg = spin1_algebra();
  SchurConcaveFn sh = SchurConcaveFn::shannon();
  // coherent state sits in one weight space
  CHECK(s_cartan(*alg, PureState(basis_vector(3, 0)), sh) ==
        doctest::Approx(0.0).epsilon(1e-10));
  // the cat state splits (1/2, 0, 1/2) over the Jz weight spaces
  CartanDecomposition cd = weight_decomposition(*alg, {spin_jz(1.0)});
  RealVector masses(3);
  for (int a = 0; a < 3; ++a)
    masses(a) = (cd.weight_projectors[a] * spin1_cat().amplitudes()).squaredNorm();
  CHECK(sh.eval(masses) == doctest::Approx(1.0).epsilon(1e-12));
  // the seeded construction cannot exceed the full weight entropy
  CHECK(s_cartan(*alg, spin1_cat(), sh, 4, 0) <= std::log2(3.0) + 1e-9);
}

TEST_CASE("s_roof basics") {
  auto h = two_qubit_local();
  auto g = full_algebra(4);
  SchurConcaveFn sh = SchurConcaveFn::shannon();
  RoofOptions opts;
  opts.restarts = 6;

  SUBCASE("pure state roof is the pure measure") {
    PureState psi = random_pure(4, 31);
    RoofResult r = s_roof(*g, *h, DensityMatrix::from_pure(psi), sh, opts);
    CHECK(r.value == doctest::Approx(s_pure(*h, psi, sh)).epsilon(1e-9));
  }
  SUBCASE("mixtures of product states are separable") {
    Matrix rho = 0.5 * basis_vector(4, 0) * basis_vector(4, 0).adjoint() +
                 0.5 * basis_vector(4, 3) * basis_vector(4, 3).adjoint();
    RoofResult r = s_roof(*g, *h, DensityMatrix(rho), sh, opts);
    CHECK(r.value < 1e-6);
  }
  SUBCASE("roof decomposition reproduces the state") {
    DensityMatrix rho = random_density(4, 3, 33);
    RoofResult r = s_roof(*g, *h, rho, sh, opts);
    Matrix rebuilt = Matrix::Zero(4, 4);
    double wsum = 0.0;
    for (const auto& [w, psi] : r.decomposition) {
      rebuilt += w * psi.projector();
      wsum += w;
    }
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-9));
    CHECK((rebuilt - rho.matrix()).norm() < 1e-7);
  }
}

TEST_CASE("s_roof matches the concurrence formula on random two-qubit states") {
  auto h = two_qubit_local();
  auto g = full_algebra(4);
  SchurConcaveFn sh = SchurConcaveFn::shannon();
  RoofOptions opts;
  opts.restarts = 6;
  for (int t = 0; t < 5; ++t) {
    DensityMatrix rho = random_density(4, 1 + (t % 4), 900 + 13 * t);
    RoofResult r = s_roof(*g, *h, rho, sh, opts);
    CHECK(r.value == doctest::Approx(oracles::wootters_eof(rho.matrix())).epsilon(1e-3));
  }
}

TEST_CASE("s_roof requires the inner algebra to sit inside the outer one") {
  auto h = two_qubit_local();
  SchurConcaveFn sh = SchurConcaveFn::shannon();
  CHECK_THROWS_AS(s_roof(*spin1_algebra(), *h, random_density(4, 2, 1), sh, {}),
                  InvalidInput);
}

TEST_CASE("roof convexity on random mixtures") {
  auto h = two_qubit_local();
  auto g = full_algebra(4);
  SchurConcaveFn sh = SchurConcaveFn::shannon();
  RoofOptions opts;
  opts.restarts = 6;
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> unif(0.1, 0.9);
  for (int t = 0; t < 3; ++t) {
    DensityMatrix r1 = random_density(4, 2, 50 + t), r2 = random_density(4, 3, 80 + t);
    double lam = unif(rng);
    DensityMatrix mix(lam * r1.matrix() + (1 - lam) * r2.matrix());
    double s_mix = s_roof(*g, *h, mix, sh, opts).value;
    double bound = lam * s_roof(*g, *h, r1, sh, opts).value +
                   (1 - lam) * s_roof(*g, *h, r2, sh, opts).value;
    CHECK(s_mix <= bound + 2e-6);
  }
}

TEST_CASE("purity measure") {
  auto h = two_qubit_local();
  auto g = full_algebra(4);
  RoofOptions opts;
  opts.restarts = 6;
  SUBCASE("coherent pure state reaches the algebra maximum") {
    DensityMatrix rho(basis_vector(4, 0) * basis_vector(4, 0).adjoint());
    CHECK(purity_measure(*g, *h, rho, opts).value == doctest::Approx(0.75).epsilon(1e-9));
  }
  SUBCASE("pure entangled state keeps its own purity") {
    DensityMatrix rho = DensityMatrix::from_pure(bell_state());
    CHECK(purity_measure(*g, *h, rho, opts).value == doctest::Approx(0.25).epsilon(1e-9));
  }
  SUBCASE("separable mixtures reach the maximum") {
    Matrix rho = 0.5 * basis_vector(4, 0) * basis_vector(4, 0).adjoint() +
                 0.5 * basis_vector(4, 3) * basis_vector(4, 3).adjoint();
    CHECK(purity_measure(*g, *h, DensityMatrix(rho), opts).value ==
          doctest::Approx(0.75).epsilon(1e-6));
  }
}

TEST_CASE("proper pure measures vanish exactly on coherent states") {
  auto alg = two_qubit_local();
  SchurConcaveFn sh = SchurConcaveFn::shannon();
  CoherenceOptions copts;
  copts.purity.restarts = 8;
  copts.max_purity_hint = 0.75;
  for (int t = 0; t < 12; ++t) {
    PureState psi = random_pure(4, 700 + t);
    bool coherent = is_coherent(*alg, psi, copts).is_coherent;
    bool zero = s_pure(*alg, psi, sh) < 1e-6;
    CHECK(coherent == zero);
  }
  PureState prod = product_state(random_pure(2, 1).amplitudes(), random_pure(2, 2).amplitudes());
  CHECK(s_pure(*alg, prod, sh) < 1e-10);
}

TEST_CASE("measures are invariant along the local unitary orbit") {
  auto alg = two_qubit_local();
  SchurConcaveFn sh = SchurConcaveFn::shannon();
  PureState psi = random_pure(4, 910);
  double base = s_pure(*alg, psi, sh);
  for (int t = 0; t < 5; ++t) {
    Matrix u = kron(random_unitary(2, 40 + t), random_unitary(2, 60 + t));
    CHECK(s_pure(*alg, PureState(u * psi.amplitudes()), sh) ==
          doctest::Approx(base).epsilon(1e-9));
  }
}

TEST_CASE("h_rank of named states") {
  auto alg = two_qubit_local();
  AmplitudeOptions opts;
  opts.restarts = 10;
  CHECK(h_rank(*alg, PureState(basis_vector(4, 0)), opts) == 1);
  CHECK(h_rank(*alg, bell_state(), opts) == 2);
}

TEST_CASE("h_rank matches the Schmidt rank on qutrit pairs") {
  auto alg = bipartite_local(3, 3);
  AmplitudeOptions opts;
  opts.restarts = 8;
  PureState psi = random_pure(9, 44);  // generic: Schmidt rank 3
  REQUIRE(oracles::schmidt_rank(psi, 3, 3) == 3);
  CHECK(h_rank(*alg, psi, opts) == 3);
}

TEST_CASE("s_amplitude upper bounds") {
  SchurConcaveFn sh = SchurConcaveFn::shannon();
  AmplitudeOptions opts;
  opts.restarts = 16;
  SUBCASE("coherent states need one term") {
    auto alg = two_qubit_local();
    CHECK(s_amplitude(*alg, PureState(basis_vector(4, 0)), sh, opts) ==
          doctest::Approx(0.0));
  }
  SUBCASE("Bell state reaches the Schmidt expansion") {
    auto alg = two_qubit_local();
    double v = s_amplitude(*alg, bell_state(), sh, opts);
    CHECK(v <= 1.0 + 1e-3);
    CHECK(v >= 0.0);
  }
  SUBCASE("spin-1 cat goes over two coherent states") {
    auto alg = spin1_algebra();
    double v = s_amplitude(*alg, spin1_cat(), sh, opts);
    CHECK(v <= 1.0 + 1e-3);
  }
}
