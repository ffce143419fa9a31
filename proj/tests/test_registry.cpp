#include <doctest.h>

#include "fixtures.hpp"
#include "gentkit/coherence.hpp"
#include "gentkit/registry.hpp"

using namespace gentkit;
using namespace fixtures;

TEST_CASE("built-in algebra dimensions") {
  CHECK(two_qubit_local()->dim() == 7);
  CHECK(spin1_algebra()->dim() == 4);
  CHECK(spin1_algebra()->hilbert_dim() == 3);

  AlgebraSpec np;
  np.kind = AlgebraSpec::Kind::FermionQuadraticNP;
  np.modes = 2;
  AlgebraRep f = build_algebra(np);
  CHECK(f.hilbert_dim() == 4);
  CHECK(f.dim() == 5);  // a†_i a_j span plus identity

  AlgebraSpec fq;
  fq.kind = AlgebraSpec::Kind::FermionQuadraticFull;
  fq.modes = 2;
  CHECK(build_algebra(fq).dim() == 7);
}

TEST_CASE("spin matrices satisfy the angular momentum algebra") {
  for (double s : {0.5, 1.0, 1.5}) {
    Matrix jx = spin_jx(s), jy = spin_jy(s), jz = spin_jz(s);
    CHECK((jx * jy - jy * jx - Complex(0, 1) * jz).norm() < 1e-12);
    Matrix casimir = jx * jx + jy * jy + jz * jz;
    CHECK((casimir - s * (s + 1) * identity(jx.rows())).norm() < 1e-12);
  }
}

TEST_CASE("jordan-wigner operators anticommute correctly") {
  const int nm = 3;
  for (int i = 0; i < nm; ++i)
    for (int j = 0; j < nm; ++j) {
      Matrix ai = jw_annihilation(nm, i), aj = jw_annihilation(nm, j);
      Matrix anti = ai * aj.adjoint() + aj.adjoint() * ai;
      Matrix expected = (i == j) ? identity(8) : Matrix::Zero(8, 8);
      CHECK((anti - expected).norm() < 1e-12);
      CHECK((ai * aj + aj * ai).norm() < 1e-12);
    }
}

TEST_CASE("slater states") {
  Matrix orb = Matrix::Zero(2, 1);
  orb(0, 0) = 1.0;
  PureState s = slater_state(2, orb);
  CHECK(std::abs(std::abs(s.amplitudes()(2)) - 1.0) < 1e-12);  // |10> occupation

  // a rotated single orbital stays normalized
  Matrix orb2(2, 1);
  orb2 << 1 / std::sqrt(2.0), Complex(0, 1) / std::sqrt(2.0);
  CHECK(std::abs(slater_state(2, orb2).amplitudes().norm() - 1.0) < 1e-12);

  CHECK_THROWS_AS(slater_state(2, Matrix::Zero(2, 1)), InvalidInput);
}

TEST_CASE("number sector isometries resolve the Fock space") {
  auto sectors = number_sector_isometries(3);
  REQUIRE(sectors.size() == 4);
  int total = 0;
  for (const Matrix& v : sectors) {
    CHECK((v.adjoint() * v - identity(static_cast<int>(v.cols()))).norm() < 1e-14);
    total += static_cast<int>(v.cols());
  }
  CHECK(total == 8);
  CHECK(sectors[1].cols() == 3);
  CHECK(sectors[2].cols() == 3);
}

TEST_CASE("coherent examples pass the coherence test") {
  SUBCASE("bipartite products") {
    AlgebraSpec spec;
    spec.kind = AlgebraSpec::Kind::BipartiteLocal;
    spec.dims = {2, 2};
    auto alg = two_qubit_local();
    CoherenceOptions opts;
    opts.purity.restarts = 10;
    opts.max_purity_hint = 0.75;
    for (const PureState& psi : coherent_examples(spec))
      CHECK(is_coherent(*alg, psi, opts).is_coherent);
  }
  SUBCASE("lowest spin state") {
    AlgebraSpec spec;
    spec.kind = AlgebraSpec::Kind::Spin;
    spec.spin = 1.0;
    auto alg = spin1_algebra();
    CoherenceOptions opts;
    opts.purity.restarts = 10;
    auto examples = coherent_examples(spec);
    REQUIRE(examples.size() == 1);
    CHECK(is_coherent(*alg, examples[0], opts).is_coherent);
  }
  SUBCASE("slater determinants within their number sector") {
    AlgebraSpec spec;
    spec.kind = AlgebraSpec::Kind::FermionQuadraticNP;
    spec.modes = 2;
    AlgebraRep alg = build_algebra(spec);
    auto sectors = number_sector_isometries(2);
    // one particle: all single-orbital states are coherent for the sector algebra
    AlgebraRep sector_alg = restrict_to_subspace(alg, sectors[1]);
    REQUIRE(is_irreducible(sector_alg));
    Matrix orb(2, 1);
    orb << std::sqrt(0.3), std::sqrt(0.7);
    PureState slater = slater_state(2, orb);
    Vector in_sector = sectors[1].adjoint() * slater.amplitudes();
    CoherenceOptions opts;
    opts.purity.restarts = 10;
    CHECK(is_coherent(sector_alg, PureState(in_sector), opts).is_coherent);
  }
}

TEST_CASE("hierarchy for two qubits") {
  auto chain = hierarchy({2, 2});
  REQUIRE(chain.size() == 5);  // trivial, h_a, h_b, h_l, full
  CHECK(chain[0].dim() == 1);
  CHECK(chain[1].dim() == 4);
  CHECK(chain[2].dim() == 4);
  CHECK(chain[3].dim() == 7);
  CHECK(chain[4].dim() == 16);
  CHECK(chain[3].contains_span(chain[1]));
  CHECK(chain[3].contains_span(chain[2]));
  CHECK(chain[4].contains_span(chain[3]));
}

TEST_CASE("hierarchy for three qubits enumerates the subset algebras") {
  auto chain = hierarchy({2, 2, 2});
  // trivial + 6 proper masks + local + full
  REQUIRE(chain.size() == 9);
  CHECK(chain.front().dim() == 1);
  CHECK(chain.back().dim() == 64);
  // singleton masks have dimension 4, pair masks 16
  CHECK(chain[1].dim() == 4);
  CHECK(chain[4].dim() == 16);
  // local algebra: 3 * 3 + 1
  CHECK(chain[7].dim() == 10);
}

TEST_CASE("hierarchy for a single part") {
  auto chain = hierarchy({3});
  REQUIRE(chain.size() == 2);
  CHECK(chain[0].dim() == 1);
  CHECK(chain[1].dim() == 9);
}

TEST_CASE("multipartite subset masks work non-contiguously") {
  AlgebraSpec spec;
  spec.kind = AlgebraSpec::Kind::MultipartiteSubset;
  spec.dims = {2, 2, 2};
  spec.subset_mask = 0b101;  // first and third factor
  AlgebraRep alg = build_algebra(spec);
  CHECK(alg.hilbert_dim() == 8);
  CHECK(alg.dim() == 16);
  // the embedded operator acts as identity on the middle factor
  Matrix sz_sz = kron(kron(pauli_z(), identity(2)), pauli_z());
  CHECK(alg.residual_outside(sz_sz / sz_sz.norm()) < 1e-9);
  Matrix middle = kron(kron(identity(2), pauli_z()), identity(2));
  CHECK(alg.residual_outside(middle / middle.norm()) > 0.9);
}

TEST_CASE("registry rejects invalid parameters") {
  AlgebraSpec bad;
  bad.kind = AlgebraSpec::Kind::Spin;
  bad.spin = 0.7;
  CHECK_THROWS_AS(build_algebra(bad), InvalidInput);
  AlgebraSpec modes;
  modes.kind = AlgebraSpec::Kind::FermionQuadraticNP;
  modes.modes = 7;
  CHECK_THROWS_AS(build_algebra(modes), InvalidInput);
  CHECK_THROWS_AS(hierarchy({9, 9}), InvalidInput);
}
