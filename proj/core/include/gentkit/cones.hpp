#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gentkit/algebra.hpp"
#include "gentkit/measures.hpp"
#include "gentkit/states.hpp"

namespace gentkit::cones {

/// Finitely generated pointed convex cone with a trace functional. Generators
/// are extreme-ray candidates; the V-representation is an inner approximation
/// of continuously generated cones. Optional oracles give exact membership and
/// extremality tests when the cone has known structure (e.g. density-matrix
/// instantiations); the LP-based checks are used otherwise.
struct Cone {
  RealMatrix generators;  // columns
  RealVector trace;
  std::function<bool(const RealVector&)> membership_oracle;
  std::function<bool(const RealVector&)> extremality_oracle;

  int ambient_dim() const { return static_cast<int>(generators.rows()); }
  int size() const { return static_cast<int>(generators.cols()); }

  /// Validates pointedness (trace positive on every generator) and full span.
  void validate() const;
};

struct PiMap {
  RealMatrix matrix;  // D coordinates -> C coordinates
};

/// Feasibility of x = sum c_g g with c >= 0, via nonnegative least squares.
bool contains(const Cone& cone, const RealVector& x, double tol = 1e-8);

/// Is v an extreme ray? True when v cannot be written as a nonnegative
/// combination of the cone's generators that are not parallel to it.
bool is_extreme_ray(const Cone& cone, const RealVector& v, double tol = 1e-9);

/// Cone generated by the D-generators whose image under pi is extremal in C.
Cone separable_cone(const Cone& d, const Cone& c, const PiMap& pi);

struct ConeOptions {
  int vertex_trials = 64;
  double tol = 1e-9;
  std::uint64_t seed = 0;
};

/// inf fn(p) over decompositions of x into extreme rays of the cone. Schur
/// concavity puts the optimum at a vertex of the feasible polytope, so the
/// search runs LPs with random costs over the extremal generator set.
double cone_S(const Cone& cone, const RealVector& x, const SchurConcaveFn& fn,
              const ConeOptions& opts = {});

/// inf over decompositions of x into pure states of D of the weighted sum of
/// cone_S values of the images: a single LP once the per-generator values are
/// known (linear objective over the decomposition polytope).
double cone_S_relative(const Cone& d, const Cone& c, const PiMap& pi,
                       const RealVector& x, const SchurConcaveFn& fn,
                       const ConeOptions& opts = {});

struct ConeMap {
  RealMatrix matrix;
};

struct MapFlags {
  bool positive = false;
  bool trace_preserving = false;
  bool extremality_preserving = false;
  bool c_separable = false;
  bool liftable = false;
};

struct MapCheckRequest {
  bool positive = true;
  bool trace_preserving = true;
  bool extremality_preserving = true;
  bool c_separable = true;
  bool liftable = true;
};

struct MapReport {
  MapFlags flags;
  double lift_residual = 0.0;
  std::optional<RealMatrix> lifted_action;
  std::string detail;
};

MapReport check_map(const ConeMap& m, const Cone& d, const Cone& c, const PiMap& pi,
                    const MapCheckRequest& which = {}, const ConeOptions& opts = {});

struct MonotonicityReport {
  bool preconditions_ok = false;
  std::string precondition_failure;  // which map / flag failed
  double max_violation = 0.0;        // of the per-outcome inequality
  double max_composed_violation = 0.0;  // of S(total map image) <= S(x)
  int samples_run = 0;
  std::vector<RealVector> counterexamples;
};

/// Samples states of D and verifies the explicit-nonincreasing inequality and
/// the composed-map inequality for a trace-preserving explicit family of
/// liftable C-separable maps.
MonotonicityReport monotonicity_trial(const std::vector<ConeMap>& maps, const Cone& d,
                                      const Cone& c, const PiMap& pi,
                                      const SchurConcaveFn& fn, int samples,
                                      std::uint64_t seed,
                                      const ConeOptions& opts = {});

// --- Lie-algebraic instantiation ---------------------------------------------

/// Coordinates of states on a Hilbert space and of their restrictions to a
/// distinguished algebra, bundled as an outer/inner cone pair with the
/// restriction map. D generators are vectorized pure-state projectors; the
/// Schmidt-pair products of every non-product generator are added so that the
/// per-generator inner values are exact.
struct LieConePair {
  Cone d;
  Cone c;
  PiMap pi;
  std::shared_ptr<const AlgebraRep> g_alg;
  std::shared_ptr<const AlgebraRep> h_alg;

  RealVector coords(const Matrix& hermitian) const;
  Matrix matrix_from(const RealVector& coords) const;
  /// Cone map of conjugation by a (unitary) operator, in D coordinates.
  ConeMap conjugation_map(const Matrix& u, double weight = 1.0) const;
};

LieConePair lie_cone_pair(std::shared_ptr<const AlgebraRep> g_alg,
                          std::shared_ptr<const AlgebraRep> h_alg,
                          const std::vector<PureState>& extra_states, int n_random,
                          std::uint64_t seed);

/// Extends the generator set with images under the given cone maps
/// (`rounds` applications), keeping decompositions of mapped states feasible.
void close_under_maps(Cone& d, const std::vector<ConeMap>& maps, int rounds);

}  // namespace gentkit::cones
