#pragma once
// Scaled ordered groups over Q: cones, membership, singular subgroups, quotient orders,
// states and infinitesimals.

#include <optional>
#include <vector>

#include "k0bench/ratlin.hpp"

namespace k0bench {

enum class ConeKind { FinGen, Lex, DirectSum };
enum class LexTail { ZeroOnly, AllOfKernel };

struct Cone {
  ConeKind kind = ConeKind::FinGen;
  std::size_t dim = 0;
  std::vector<RatVec> generators;   // FinGen
  std::vector<RatVec> functionals;  // Lex, in priority order
  LexTail tail = LexTail::ZeroOnly;
  std::vector<Cone> parts;          // DirectSum, coordinates concatenated in order

  static Cone fingen(std::vector<RatVec> generators, std::size_t dim);
  static Cone lex(std::vector<RatVec> functionals, LexTail tail, std::size_t dim);
  static Cone direct_sum(std::vector<Cone> parts);

  bool is_fingen_like() const;  // FinGen, or a direct sum of such
  bool operator==(const Cone&) const = default;
};

struct ScaledOrderedGroup {
  std::size_t dim = 0;
  Cone cone;
  RatVec unit;
  bool operator==(const ScaledOrderedGroup&) const = default;
};

// Validates properness (FinGen), the Lex leading functional and the order-unit property.
// Throws PreconditionError on failure.
ScaledOrderedGroup make_group(Cone cone, RatVec unit);

enum class SpanKind { ZSpan, QSpan };

struct Subgroup {
  std::size_t dim = 0;
  std::vector<RatVec> generators;  // QSpan: reduced echelon basis
  SpanKind kind = SpanKind::QSpan;

  static Subgroup qspan(const std::vector<RatVec>& generators, std::size_t dim);
  static Subgroup zspan(std::vector<RatVec> generators, std::size_t dim);
  std::vector<RatVec> basis() const;  // reduced echelon basis of the rational span
};

enum class Membership { Zero, PositiveNonzero, NotInCone };

Membership cone_contains(const Cone& cone, const RatVec& x);
Membership cone_contains(const ScaledOrderedGroup& g, const RatVec& x);
bool in_cone(const Cone& cone, const RatVec& x);

// Generators of the topological closure of the cone (a FinGen description).
std::vector<RatVec> closure_generators(const Cone& cone);
// FinGen generators of every FinGen block, embedded in the ambient coordinates.
std::vector<RatVec> embedded_fingen_generators(const Cone& cone);
// A FinGen cone equal to the given FinGen-like cone. Throws PreconditionError otherwise.
Cone flatten_fingen(const Cone& cone);

struct SingularResult {
  bool singular = true;
  RatVec witness;  // nonzero element of the subgroup and of the cone when not singular
};

SingularResult is_singular(const ScaledOrderedGroup& g, const Subgroup& h);
SingularResult is_singular(const Cone& cone, const std::vector<RatVec>& span_generators);

struct DivisibilityResult {
  bool holds = true;
  RatVec witness;  // integral, in the rational span but not the integer span
  Int k;           // least positive integer with k * witness in the integer span
};

// Compares the integer span with the integral points of the rational span.
DivisibilityResult satisfies_divisibility(const Subgroup& h);

// Rows realise x -> x mod span(basis) in coordinates indexed by the non-pivot columns
// of the reduced echelon form of the basis.
RatMat canonical_projection(const std::vector<RatVec>& basis, std::size_t dim);
// Preimage of y under canonical_projection that vanishes on the pivot columns.
RatVec canonical_lift(const std::vector<RatVec>& basis, std::size_t dim, const RatVec& y);

struct Quotient {
  ScaledOrderedGroup group;
  RatMat projection;
};

Quotient quotient_order(const ScaledOrderedGroup& g, const Subgroup& h);

struct State {
  RatVec functional;
};

enum class StateSetKind { Polytope, Singleton, Mixture };

// All states of a group: {phi : phi(c) >= 0 for c in constraints, phi(unit) = 1}.
struct StateSet {
  StateSetKind kind = StateSetKind::Polytope;
  std::size_t dim = 0;
  std::vector<RatVec> constraints;
  RatVec unit;
  RatVec singleton;             // Singleton
  std::vector<StateSet> parts;  // Mixture, one per summand

  std::vector<LinConstraint> system() const;
  bool contains(const RatVec& phi) const;
};

StateSet state_set(const ScaledOrderedGroup& g);
bool is_state(const ScaledOrderedGroup& g, const RatVec& phi);
// Strictly positive on every nonzero element of the cone.
bool is_faithful(const ScaledOrderedGroup& g, const RatVec& phi);

// Average of the vertices of a bounded polytope {x : system}. Falls back to an exact
// relative-interior point when vertex enumeration is too large.
std::optional<RatVec> polytope_center(const std::vector<LinConstraint>& system, std::size_t dim);

struct FindStateResult {
  std::optional<State> state;
  std::vector<LinConstraint> system;  // the constraints the state had to satisfy
  RatVec farkas;                      // when infeasible
};

FindStateResult find_state(const ScaledOrderedGroup& g, const Subgroup& h1,
                           const std::vector<RatVec>& h2);

Subgroup infinitesimals(const ScaledOrderedGroup& g);

struct MaximalityResult {
  bool maximal = true;
  RatVec extension;  // x outside span(h) with span(h, x) still singular
};

MaximalityResult is_maximally_singular(const ScaledOrderedGroup& g, const Subgroup& h);

struct MaximalizeOptions {
  bool basis_vectors = true;
  bool generator_differences = true;
};

struct MaximalizeResult {
  Subgroup subgroup;
  bool maximal = false;  // false: best effort
};

MaximalizeResult maximalize(const ScaledOrderedGroup& g, const Subgroup& h,
                            const std::vector<RatVec>& candidates = {},
                            const MaximalizeOptions& options = {});

// Re-reads a cone given by integer generators over Q.
ScaledOrderedGroup rationalize(const ScaledOrderedGroup& g);

ScaledOrderedGroup direct_sum(const std::vector<ScaledOrderedGroup>& parts);

}  // namespace k0bench
