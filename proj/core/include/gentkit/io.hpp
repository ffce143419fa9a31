#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "gentkit/cones.hpp"
#include "gentkit/maps.hpp"
#include "gentkit/registry.hpp"
#include "gentkit/states.hpp"

namespace gentkit::io {

using nlohmann::json;

// JSON conventions: complex numbers as [re, im]; matrices as nested row
// arrays; states as {"dim", "amplitudes"} or {"dim", "matrix"};
// algebras as {"kind", "params"} or {"custom_basis"}.

json complex_to_json(const Complex& z);
Complex complex_from_json(const json& j);

json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

json vector_to_json(const Vector& v);
Vector vector_from_json(const json& j);

json real_vector_to_json(const RealVector& v);
RealVector real_vector_from_json(const json& j);

json state_to_json(const PureState& s);
json state_to_json(const DensityMatrix& s);

/// Either a pure state or a density matrix, normalized to a density matrix,
/// with the pure amplitudes kept when present.
struct StateInput {
  std::optional<PureState> pure;
  std::optional<DensityMatrix> density;
  int dim() const;
  DensityMatrix as_density() const;
};
StateInput state_from_json(const json& j);

AlgebraSpec algebra_spec_from_json(const json& j);
json algebra_spec_to_json(const AlgebraSpec& spec);

ExplicitMap map_from_json(const json& j);
json map_to_json(const ExplicitMap& m);

ProtocolNode protocol_from_json(const json& j);

cones::Cone cone_from_json(const json& j);
std::optional<cones::PiMap> pi_from_json(const json& j);
json cone_to_json(const cones::Cone& c);

json load_json_file(const std::string& path);
void write_text_atomic(const std::string& path, const std::string& contents);

}  // namespace gentkit::io
