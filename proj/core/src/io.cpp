#include "gentkit/io.hpp"

#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

namespace gentkit::io {

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (!j.is_array() || j.size() != 2)
    throw InvalidInput("complex entries must be [re, im] pairs");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw InvalidInput("matrix must be a nested array");
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j[0].size());
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    if (static_cast<int>(j[r].size()) != cols)
      throw InvalidInput("matrix rows have inconsistent lengths");
    for (int c = 0; c < cols; ++c) m(r, c) = complex_from_json(j[r][c]);
  }
  return m;
}

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

Vector vector_from_json(const json& j) {
  if (!j.is_array()) throw InvalidInput("vector must be an array");
  Vector v(static_cast<int>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<int>(i)) = complex_from_json(j[i]);
  return v;
}

json real_vector_to_json(const RealVector& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

RealVector real_vector_from_json(const json& j) {
  if (!j.is_array()) throw InvalidInput("real vector must be an array");
  RealVector v(static_cast<int>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<int>(i)) = j[i].get<double>();
  return v;
}

json state_to_json(const PureState& s) {
  return json{{"dim", s.dim()}, {"amplitudes", vector_to_json(s.amplitudes())}};
}

json state_to_json(const DensityMatrix& s) {
  return json{{"dim", s.dim()}, {"matrix", matrix_to_json(s.matrix())}};
}

int StateInput::dim() const { return pure ? pure->dim() : density->dim(); }

DensityMatrix StateInput::as_density() const {
  if (density) return *density;
  return DensityMatrix::from_pure(*pure);
}

StateInput state_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dim"))
    throw InvalidInput("state: object with \"dim\" required");
  int dim = j["dim"].get<int>();
  StateInput out;
  if (j.contains("amplitudes")) {
    Vector v = vector_from_json(j["amplitudes"]);
    if (v.size() != dim) throw InvalidInput("state: amplitude length != dim");
    double n = v.norm();
    if (n < 1e-12) throw InvalidInput("state: zero vector");
    out.pure = PureState(v / n);
    out.density = DensityMatrix::from_pure(*out.pure);
  } else if (j.contains("matrix")) {
    Matrix m = matrix_from_json(j["matrix"]);
    if (m.rows() != dim || m.cols() != dim) throw InvalidInput("state: matrix shape != dim");
    out.density = DensityMatrix(m);
  } else {
    throw InvalidInput("state: \"amplitudes\" or \"matrix\" required");
  }
  return out;
}

AlgebraSpec algebra_spec_from_json(const json& j) {
  AlgebraSpec spec;
  if (!j.is_object()) throw InvalidInput("algebra: object required");
  if (j.contains("custom_basis")) {
    spec.kind = AlgebraSpec::Kind::Custom;
    for (const auto& m : j["custom_basis"]) spec.custom_basis.push_back(matrix_from_json(m));
    return spec;
  }
  if (!j.contains("kind")) throw InvalidInput("algebra: \"kind\" or \"custom_basis\" required");
  std::string kind = j["kind"].get<std::string>();
  const json params = j.value("params", json::object());
  auto dims_of = [&](const json& p) {
    std::vector<int> dims;
    for (const auto& d : p.at("dims")) dims.push_back(d.get<int>());
    return dims;
  };
  if (kind == "bipartite_local") {
    spec.kind = AlgebraSpec::Kind::BipartiteLocal;
    spec.dims = dims_of(params);
  } else if (kind == "unilocal_a") {
    spec.kind = AlgebraSpec::Kind::UnilocalA;
    spec.dims = dims_of(params);
  } else if (kind == "unilocal_b") {
    spec.kind = AlgebraSpec::Kind::UnilocalB;
    spec.dims = dims_of(params);
  } else if (kind == "multipartite_subset") {
    spec.kind = AlgebraSpec::Kind::MultipartiteSubset;
    spec.dims = dims_of(params);
    spec.subset_mask = params.at("mask").get<std::uint32_t>();
  } else if (kind == "spin") {
    spec.kind = AlgebraSpec::Kind::Spin;
    spec.spin = params.at("spin").get<double>();
  } else if (kind == "fermion_quadratic_np") {
    spec.kind = AlgebraSpec::Kind::FermionQuadraticNP;
    spec.modes = params.at("modes").get<int>();
  } else if (kind == "fermion_quadratic_full") {
    spec.kind = AlgebraSpec::Kind::FermionQuadraticFull;
    spec.modes = params.at("modes").get<int>();
  } else if (kind == "full_matrix") {
    spec.kind = AlgebraSpec::Kind::FullMatrix;
    if (params.contains("dims")) spec.dims = dims_of(params);
    else spec.dims = {params.at("dim").get<int>()};
  } else {
    throw InvalidInput("algebra: unknown kind \"" + kind + "\"");
  }
  return spec;
}

json algebra_spec_to_json(const AlgebraSpec& spec) {
  using Kind = AlgebraSpec::Kind;
  json j;
  switch (spec.kind) {
    case Kind::BipartiteLocal: j["kind"] = "bipartite_local"; break;
    case Kind::UnilocalA: j["kind"] = "unilocal_a"; break;
    case Kind::UnilocalB: j["kind"] = "unilocal_b"; break;
    case Kind::MultipartiteSubset: j["kind"] = "multipartite_subset"; break;
    case Kind::Spin: j["kind"] = "spin"; break;
    case Kind::FermionQuadraticNP: j["kind"] = "fermion_quadratic_np"; break;
    case Kind::FermionQuadraticFull: j["kind"] = "fermion_quadratic_full"; break;
    case Kind::FullMatrix: j["kind"] = "full_matrix"; break;
    case Kind::Custom: {
      json basis = json::array();
      for (const Matrix& m : spec.custom_basis) basis.push_back(matrix_to_json(m));
      return json{{"custom_basis", basis}};
    }
  }
  json params;
  if (!spec.dims.empty()) params["dims"] = spec.dims;
  if (spec.kind == Kind::Spin) params["spin"] = spec.spin;
  if (spec.kind == Kind::FermionQuadraticNP || spec.kind == Kind::FermionQuadraticFull)
    params["modes"] = spec.modes;
  if (spec.kind == Kind::MultipartiteSubset) params["mask"] = spec.subset_mask;
  j["params"] = params;
  return j;
}

ExplicitMap map_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kraus"))
    throw InvalidInput("map: object with \"kraus\" required");
  std::vector<Matrix> kraus;
  for (const auto& m : j["kraus"]) kraus.push_back(matrix_from_json(m));
  std::vector<OperatorCertificate> certs;
  if (j.contains("certificates")) {
    for (const auto& c : j["certificates"]) {
      std::string s = c.get<std::string>();
      OperatorCertificate cert;
      if (s == "from_algebra") cert.kind = OperatorCertificate::Kind::FromAlgebra;
      else if (s == "limit") cert.kind = OperatorCertificate::Kind::Limit;
      else if (s != "none") throw InvalidInput("map: unknown certificate \"" + s + "\"");
      certs.push_back(cert);
    }
  }
  return ExplicitMap(std::move(kraus), std::move(certs));
}

json map_to_json(const ExplicitMap& m) {
  json kraus = json::array();
  for (const Matrix& c : m.kraus()) kraus.push_back(matrix_to_json(c));
  json certs = json::array();
  for (const OperatorCertificate& c : m.certificates()) {
    switch (c.kind) {
      case OperatorCertificate::Kind::None: certs.push_back("none"); break;
      case OperatorCertificate::Kind::FromAlgebra: certs.push_back("from_algebra"); break;
      case OperatorCertificate::Kind::Limit: certs.push_back("limit"); break;
    }
  }
  return json{{"kraus", kraus}, {"certificates", certs}};
}

ProtocolNode protocol_from_json(const json& j) {
  if (!j.is_object() || !j.contains("map"))
    throw InvalidInput("protocol: node object with \"map\" required");
  ProtocolNode node{map_from_json(j["map"]), {}};
  if (j.contains("children")) {
    for (const auto& c : j["children"]) node.children.push_back(protocol_from_json(c));
  }
  return node;
}

cones::Cone cone_from_json(const json& j) {
  if (!j.is_object() || !j.contains("generators") || !j.contains("trace"))
    throw InvalidInput("cone: \"generators\" and \"trace\" required");
  const auto& gens = j["generators"];
  if (!gens.is_array() || gens.empty()) throw InvalidInput("cone: empty generators");
  cones::Cone cone;
  const int dim = static_cast<int>(gens[0].size());
  cone.generators.resize(dim, static_cast<int>(gens.size()));
  for (std::size_t k = 0; k < gens.size(); ++k)
    cone.generators.col(static_cast<int>(k)) = real_vector_from_json(gens[k]);
  cone.trace = real_vector_from_json(j["trace"]);
  cone.validate();
  return cone;
}

std::optional<cones::PiMap> pi_from_json(const json& j) {
  if (!j.contains("pi")) return std::nullopt;
  const auto& rows = j["pi"];
  cones::PiMap pi;
  const int r = static_cast<int>(rows.size());
  const int c = static_cast<int>(rows[0].size());
  pi.matrix.resize(r, c);
  for (int i = 0; i < r; ++i) pi.matrix.row(i) = real_vector_from_json(rows[i]).transpose();
  return pi;
}

json cone_to_json(const cones::Cone& c) {
  json gens = json::array();
  for (int j = 0; j < c.size(); ++j) gens.push_back(real_vector_to_json(c.generators.col(j)));
  return json{{"generators", gens}, {"trace", real_vector_to_json(c.trace)}};
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw InvalidInput("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

void write_text_atomic(const std::string& path, const std::string& contents) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw InvalidInput("cannot write file: " + tmp);
    out << contents;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw NumericalFailure("atomic rename failed for " + path);
}

}  // namespace gentkit::io
