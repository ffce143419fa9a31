#include "gentkit/registry.hpp"

#include <cmath>
#include <numeric>

namespace gentkit {

namespace {

// Hermitian HS-orthonormal traceless basis of the n x n operators
// (generalized Gell-Mann construction).
std::vector<Matrix> traceless_hermitian_basis(int n) {
  std::vector<Matrix> out;
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
    Matrix d = Matrix::Zero(n, n);
    double norm = std::sqrt(static_cast<double>(k) * (k + 1));
    for (int i = 0; i < k; ++i) d(i, i) = 1.0 / norm;
    d(k, k) = -static_cast<double>(k) / norm;
    out.push_back(d);
  }
  return out;
}

Matrix identity_component(int n) {
  return Matrix::Identity(n, n) / std::sqrt(static_cast<double>(n));
}

AlgebraRep full_matrix_algebra(int n, std::optional<BipartiteInfo> info = {}) {
  std::vector<Matrix> basis{identity_component(n)};
  for (Matrix& t : traceless_hermitian_basis(n)) basis.push_back(std::move(t));
  return AlgebraRep(n, std::move(basis), std::move(info));
}

// Embed an operator on the masked factors into the full space: identity on
// the unmasked factors, index arithmetic independent of mask contiguity.
Matrix embed_on_subset(const Matrix& op, const std::vector<int>& dims,
                       std::uint32_t mask) {
  const int nf = static_cast<int>(dims.size());
  long total = 1;
  for (int d : dims) total *= d;
  std::vector<long> stride(nf, 1);
  for (int f = nf - 2; f >= 0; --f) stride[f] = stride[f + 1] * dims[f + 1];
  // masked sub-index (relative order preserved) and its strides
  std::vector<int> masked;
  for (int f = 0; f < nf; ++f)
    if (mask & (1u << f)) masked.push_back(f);
  std::vector<long> mstride(masked.size(), 1);
  for (int k = static_cast<int>(masked.size()) - 2; k >= 0; --k)
    mstride[k] = mstride[k + 1] * dims[masked[k + 1]];

  Matrix out = Matrix::Zero(total, total);
  for (long i = 0; i < total; ++i) {
    // digits of i, split into masked part and untouched remainder
    long mi = 0, rest = 0;
    for (int f = 0, k = 0; f < nf; ++f) {
      long digit = (i / stride[f]) % dims[f];
      if (mask & (1u << f)) mi += digit * mstride[k++];
      else rest += digit * stride[f];
    }
    for (long mj = 0; mj < op.rows(); ++mj) {
      long j = rest;
      for (int f = 0, k = 0; f < nf; ++f)
        if (mask & (1u << f)) {
          j += ((mj / mstride[k]) % dims[masked[k]]) * stride[f];
          ++k;
        }
      out(j, i) = op(mj, mi);
    }
  }
  return out;
}

// operators acting only on the factors selected by `mask`
std::vector<Matrix> subset_traceless(const std::vector<int>& dims, std::uint32_t mask) {
  int active_dim = 1, nf = static_cast<int>(dims.size());
  for (int f = 0; f < nf; ++f)
    if (mask & (1u << f)) active_dim *= dims[f];
  std::vector<Matrix> out;
  for (const Matrix& t : traceless_hermitian_basis(active_dim))
    out.push_back(embed_on_subset(t, dims, mask));
  return out;
}

// normalization scaling for embedding: kron with identities multiplies the HS
// norm by sqrt of the identity dimensions
std::vector<Matrix> normalized(std::vector<Matrix> mats) {
  for (Matrix& m : mats) m /= m.norm();
  return mats;
}

}  // namespace

Matrix spin_jz(double s) {
  int dim = static_cast<int>(std::lround(2 * s)) + 1;
  Matrix jz = Matrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) jz(i, i) = s - i;  // descending magnetic number
  return jz;
}

namespace {

Matrix spin_jplus(double s) {
  int dim = static_cast<int>(std::lround(2 * s)) + 1;
  Matrix jp = Matrix::Zero(dim, dim);
  for (int i = 1; i < dim; ++i) {
    double m = s - i;  // J+ |m> = sqrt(s(s+1) - m(m+1)) |m+1>
    jp(i - 1, i) = std::sqrt(s * (s + 1) - m * (m + 1));
  }
  return jp;
}

}  // namespace

Matrix spin_jx(double s) {
  Matrix jp = spin_jplus(s);
  return (jp + jp.adjoint()) / 2.0;
}

Matrix spin_jy(double s) {
  Matrix jp = spin_jplus(s);
  return (jp - jp.adjoint()) / Complex(0, 2);
}

Matrix jw_annihilation(int n_modes, int mode) {
  if (n_modes < 1 || n_modes > 6)
    throw InvalidInput("jw_annihilation: mode count must be in 1..6");
  if (mode < 0 || mode >= n_modes) throw InvalidInput("jw_annihilation: bad mode");
  Matrix z(2, 2), lower(2, 2), id2 = Matrix::Identity(2, 2);
  z << 1, 0, 0, -1;
  lower << 0, 1, 0, 0;  // |0><1| : annihilates an occupied mode
  Matrix out = Matrix::Ones(1, 1);
  for (int f = 0; f < n_modes; ++f) {
    if (f < mode) out = kron(out, z);
    else if (f == mode) out = kron(out, lower);
    else out = kron(out, id2);
  }
  return out;
}

std::vector<Matrix> number_sector_isometries(int n_modes) {
  const int dim = 1 << n_modes;
  std::vector<std::vector<int>> sectors(n_modes + 1);
  for (int b = 0; b < dim; ++b) sectors[__builtin_popcount(static_cast<unsigned>(b))].push_back(b);
  std::vector<Matrix> out;
  for (int p = 0; p <= n_modes; ++p) {
    Matrix v = Matrix::Zero(dim, static_cast<int>(sectors[p].size()));
    for (std::size_t c = 0; c < sectors[p].size(); ++c) v(sectors[p][c], static_cast<int>(c)) = 1.0;
    out.push_back(v);
  }
  return out;
}

PureState slater_state(int n_modes, const Matrix& orbitals) {
  const int dim = 1 << n_modes;
  if (orbitals.rows() != n_modes || orbitals.cols() < 1 || orbitals.cols() > n_modes)
    throw InvalidInput("slater_state: orbital matrix must be n_modes x particles");
  Vector state = Vector::Zero(dim);
  state(0) = 1.0;  // vacuum = all modes empty
  for (int p = 0; p < orbitals.cols(); ++p) {
    Matrix creator = Matrix::Zero(dim, dim);
    for (int i = 0; i < n_modes; ++i)
      creator += orbitals(i, p) * jw_annihilation(n_modes, i).adjoint();
    state = creator * state;
  }
  double norm = state.norm();
  if (norm < 1e-10) throw InvalidInput("slater_state: dependent orbitals");
  return PureState(state / norm);
}

AlgebraRep restrict_to_subspace(const AlgebraRep& alg, const Matrix& isometry) {
  if (isometry.rows() != alg.hilbert_dim())
    throw InvalidInput("restrict_to_subspace: dimension mismatch");
  std::vector<Matrix> gens;
  for (const Matrix& b : alg.basis()) gens.push_back(isometry.adjoint() * b * isometry);
  // closure holds when the subspace is invariant; from_generators restores
  // orthonormality after the compression
  return from_generators(gens);
}

AlgebraRep build_algebra(const AlgebraSpec& spec) {
  using Kind = AlgebraSpec::Kind;
  switch (spec.kind) {
    case Kind::FullMatrix: {
      if (spec.dims.size() != 1 || spec.dims[0] < 1)
        throw InvalidInput("build_algebra: full_matrix needs one dimension");
      return full_matrix_algebra(spec.dims[0]);
    }
    case Kind::BipartiteLocal:
    case Kind::UnilocalA:
    case Kind::UnilocalB: {
      if (spec.dims.size() != 2 || spec.dims[0] < 2 || spec.dims[1] < 2)
        throw InvalidInput("build_algebra: bipartite kinds need two dimensions");
      const int na = spec.dims[0], nb = spec.dims[1], n = na * nb;
      const Matrix ida = Matrix::Identity(na, na), idb = Matrix::Identity(nb, nb);
      std::vector<Matrix> basis{identity_component(n)};
      if (spec.kind != Kind::UnilocalB)
        for (const Matrix& t : traceless_hermitian_basis(na))
          basis.push_back(kron(t, idb) / std::sqrt(static_cast<double>(nb)));
      if (spec.kind != Kind::UnilocalA)
        for (const Matrix& t : traceless_hermitian_basis(nb))
          basis.push_back(kron(ida, t) / std::sqrt(static_cast<double>(na)));
      BipartiteInfo info{na, nb,
                         spec.kind == Kind::BipartiteLocal ? BipartiteInfo::Kind::LocalSum
                         : spec.kind == Kind::UnilocalA    ? BipartiteInfo::Kind::UnilocalA
                                                           : BipartiteInfo::Kind::UnilocalB};
      return AlgebraRep(n, std::move(basis), info);
    }
    case Kind::MultipartiteSubset: {
      if (spec.dims.empty()) throw InvalidInput("build_algebra: dims required");
      int nf = static_cast<int>(spec.dims.size());
      if (spec.subset_mask == 0 || spec.subset_mask >= (1u << nf))
        throw InvalidInput("build_algebra: subset mask out of range");
      long n = 1;
      for (int d : spec.dims) n *= d;
      if (n > 64) throw InvalidInput("build_algebra: total dimension above 64");
      std::vector<Matrix> gens = subset_traceless(spec.dims, spec.subset_mask);
      return from_generators(normalized(std::move(gens)));
    }
    case Kind::Spin: {
      if (spec.spin < 0.5 || std::abs(spec.spin * 2 - std::lround(spec.spin * 2)) > 1e-12)
        throw InvalidInput("build_algebra: spin must be a positive half-integer");
      std::vector<Matrix> gens{spin_jx(spec.spin), spin_jy(spec.spin), spin_jz(spec.spin)};
      return from_generators(gens);
    }
    case Kind::FermionQuadraticNP:
    case Kind::FermionQuadraticFull: {
      const int nm = spec.modes;
      if (nm < 1 || nm > 6)
        throw InvalidInput("build_algebra: fermion mode count must be in 1..6");
      std::vector<Matrix> ops;
      for (int i = 0; i < nm; ++i) ops.push_back(jw_annihilation(nm, i));
      std::vector<Matrix> gens;
      for (int i = 0; i < nm; ++i)
        for (int j = 0; j < nm; ++j) gens.push_back(ops[i].adjoint() * ops[j]);
      if (spec.kind == Kind::FermionQuadraticFull)
        for (int i = 0; i < nm; ++i)
          for (int j = i + 1; j < nm; ++j) {
            gens.push_back(ops[i] * ops[j]);
            gens.push_back(ops[i].adjoint() * ops[j].adjoint());
          }
      return from_generators(gens);
    }
    case Kind::Custom: {
      if (spec.custom_basis.empty())
        throw InvalidInput("build_algebra: custom basis required");
      return from_generators(spec.custom_basis);
    }
  }
  throw InvalidInput("build_algebra: unknown kind");
}

std::vector<PureState> coherent_examples(const AlgebraSpec& spec) {
  using Kind = AlgebraSpec::Kind;
  std::vector<PureState> out;
  switch (spec.kind) {
    case Kind::BipartiteLocal:
    case Kind::UnilocalA:
    case Kind::UnilocalB: {
      const int na = spec.dims.at(0), nb = spec.dims.at(1);
      for (int a = 0; a < na; ++a)
        for (int b = 0; b < nb; ++b) {
          Vector v = Vector::Zero(na * nb);
          v(a * nb + b) = 1.0;
          out.emplace_back(v);
        }
      return out;
    }
    case Kind::Spin: {
      int dim = static_cast<int>(std::lround(2 * spec.spin)) + 1;
      Vector lowest = Vector::Zero(dim);
      lowest(dim - 1) = 1.0;  // m = -s
      out.emplace_back(lowest);
      return out;
    }
    case Kind::FermionQuadraticNP: {
      const int nm = spec.modes;
      for (int p = 0; p <= nm; ++p) {
        Matrix orbitals = Matrix::Zero(nm, p);
        for (int i = 0; i < p; ++i) orbitals(i, i) = 1.0;
        if (p == 0) {
          Vector vac = Vector::Zero(1 << nm);
          vac(0) = 1.0;
          out.emplace_back(vac);
        } else {
          out.push_back(slater_state(nm, orbitals));
        }
      }
      return out;
    }
    case Kind::FullMatrix: {
      Vector v = Vector::Zero(spec.dims.at(0));
      v(0) = 1.0;
      out.emplace_back(v);
      return out;
    }
    default:
      throw InvalidInput("coherent_examples: unsupported kind");
  }
}

std::vector<AlgebraRep> hierarchy(const std::vector<int>& parts) {
  if (parts.empty() || parts.size() > 3)
    throw InvalidInput("hierarchy: between one and three parts");
  long n = 1;
  for (int d : parts) {
    if (d < 2) throw InvalidInput("hierarchy: parts must have dimension >= 2");
    n *= d;
  }
  if (n > 64) throw InvalidInput("hierarchy: total dimension above 64");
  const int nf = static_cast<int>(parts.size());
  const int ntot = static_cast<int>(n);

  std::vector<AlgebraRep> chain;
  chain.push_back(AlgebraRep(ntot, {identity_component(ntot)}));  // trivial

  if (nf == 1) {
    chain.push_back(full_matrix_algebra(ntot));
    return chain;
  }

  // subset algebras for every nonempty proper mask, singletons first
  std::vector<std::uint32_t> masks;
  for (std::uint32_t m = 1; m < (1u << nf) - 1; ++m) masks.push_back(m);
  std::sort(masks.begin(), masks.end(), [](std::uint32_t a, std::uint32_t b) {
    return __builtin_popcount(a) != __builtin_popcount(b)
               ? __builtin_popcount(a) < __builtin_popcount(b)
               : a < b;
  });
  for (std::uint32_t m : masks) {
    AlgebraSpec s;
    s.kind = AlgebraSpec::Kind::MultipartiteSubset;
    s.dims = parts;
    s.subset_mask = m;
    chain.push_back(build_algebra(s));
  }

  // local algebra: sum over the singleton subsets
  std::vector<Matrix> local_gens;
  for (int f = 0; f < nf; ++f)
    for (const Matrix& t : subset_traceless(parts, 1u << f)) local_gens.push_back(t);
  if (nf == 2) {
    AlgebraSpec s;
    s.kind = AlgebraSpec::Kind::BipartiteLocal;
    s.dims = parts;
    chain.push_back(build_algebra(s));
  } else {
    chain.push_back(from_generators(normalized(std::move(local_gens))));
  }

  std::optional<BipartiteInfo> info;
  if (nf == 2) info = BipartiteInfo{parts[0], parts[1], BipartiteInfo::Kind::Full};
  chain.push_back(full_matrix_algebra(ntot, info));

  // verify the chain is ordered by inclusion where expected: trivial in all,
  // singletons in local, local in full
  for (std::size_t i = 1; i < chain.size(); ++i)
    if (!chain[i].contains_span(chain[0], 1e-8))
      throw NumericalFailure("hierarchy: inclusion verification failed");
  const AlgebraRep& full = chain.back();
  for (const AlgebraRep& a : chain)
    if (!full.contains_span(a, 1e-8))
      throw NumericalFailure("hierarchy: inclusion verification failed");
  return chain;
}

}  // namespace gentkit
