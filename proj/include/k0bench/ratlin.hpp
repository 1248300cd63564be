#pragma once
// Exact rational linear algebra, integer lattices, cones and linear programming.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "k0bench/errors.hpp"

namespace k0bench {

using Rat = mpq_class;
using Int = mpz_class;
using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;  // row-major; column count carried separately when rows may be empty
using IntVec = std::vector<Int>;
using IntMat = std::vector<IntVec>;

// ---- vectors and matrices ----

RatVec zeros(std::size_t n);
RatVec unit_vector(std::size_t n, std::size_t i);
RatMat identity(std::size_t n);
RatVec ints(std::initializer_list<long> xs);

Rat dot(const RatVec& a, const RatVec& b);
RatVec add(const RatVec& a, const RatVec& b);
RatVec sub(const RatVec& a, const RatVec& b);
RatVec scale(const Rat& s, const RatVec& a);
RatVec neg(const RatVec& a);
bool is_zero(const RatVec& a);
RatVec concat(const RatVec& a, const RatVec& b);
RatVec slice(const RatVec& a, std::size_t begin, std::size_t len);

RatVec mat_vec(const RatMat& m, const RatVec& x);
RatVec vec_mat(const RatVec& y, const RatMat& m, std::size_t ncols);
RatMat mat_mul(const RatMat& a, const RatMat& b, std::size_t bcols);
RatMat transpose(const RatMat& m, std::size_t ncols);

// Rescales to the primitive integer vector on the same ray (zero stays zero).
RatVec primitive(const RatVec& v);

std::string to_string(const Rat& q);  // always "p/q"
std::string to_string(const RatVec& v);
Rat parse_rat(const std::string& s);  // accepts "p/q" and "p"; throws MalformedInput

// ---- elimination ----

struct Rref {
  RatMat rows;                       // nonzero rows of the reduced echelon form
  std::vector<std::size_t> pivots;   // pivot column of each row
};

Rref rref(const RatMat& m, std::size_t ncols);
std::size_t rank(const RatMat& m, std::size_t ncols);

// Solves m x = b. Free variables are set to zero (pivot columns chosen left to right).
std::optional<RatVec> solve_linear(const RatMat& m, const RatVec& b, std::size_t ncols);
std::optional<RatVec> solve_linear(const RatMat& m, const RatVec& b);

// Basis of {x : m x = 0}, one vector per free column in increasing column order.
std::vector<RatVec> kernel_basis(const RatMat& m, std::size_t ncols);
std::vector<RatVec> kernel_basis(const RatMat& m);

// Reduced echelon basis of span(vs).
std::vector<RatVec> span_basis(const std::vector<RatVec>& vs, std::size_t dim);
// Rows a with a.x = 0 for all x in span(vs), and only there.
std::vector<RatVec> annihilator(const std::vector<RatVec>& vs, std::size_t dim);
bool in_span(const std::vector<RatVec>& vs, const RatVec& x);
bool same_span(const std::vector<RatVec>& a, const std::vector<RatVec>& b, std::size_t dim);
// Coefficients c with sum c_i vs_i = x, if any.
std::optional<RatVec> span_coefficients(const std::vector<RatVec>& vs, const RatVec& x);

// ---- integer lattices ----

// Row-style Hermite normal form; `transform` (if given) receives U with U * rows = H,
// including the rows of U that map to zero.
IntMat hnf(const IntMat& rows, std::size_t ncols, IntMat* transform = nullptr);

class ZLattice {
 public:
  ZLattice(const std::vector<RatVec>& generators, std::size_t dim);
  bool contains(const RatVec& x) const;
  // Coordinates of x in basis(); absent when x is outside the rational span.
  std::optional<RatVec> coordinates(const RatVec& x) const;
  std::vector<RatVec> basis() const;
  std::size_t rank() const { return hnf_.size(); }
  std::size_t dim() const { return dim_; }

 private:
  std::size_t dim_;
  Int scale_;   // generators were multiplied by scale_ to become integral
  IntMat hnf_;  // nonzero HNF rows of the scaled generators
  std::vector<std::size_t> pivots_;
};

bool zspan_contains(const std::vector<RatVec>& generators, const RatVec& x);

// Z-basis of {c in Z^k : sum_i c_i rows_i = 0} for integer rows.
IntMat integer_left_kernel(const IntMat& rows, std::size_t ncols);

// ---- linear programming ----

enum class Rel { Ge, Gt, Eq };

struct LinConstraint {
  RatVec coeffs;
  Rel rel;
  Rat rhs;
};

enum class Strictness {
  TwoPhase,  // strict rows decided by maximising the minimum strict slack
  Weaken,    // strict rows treated as >=
};

struct LpOutcome {
  enum class Kind { Feasible, Infeasible, Unbounded, Bounded };
  Kind kind = Kind::Infeasible;
  RatVec point;   // Feasible, Bounded, Unbounded (a feasible point)
  RatVec farkas;  // Infeasible: one multiplier per constraint
  RatVec ray;     // Unbounded
  Rat value;      // Bounded

  bool feasible() const { return kind != Kind::Infeasible; }
};

// Maximises `objective` (if present) over the constraints in `dim` free variables.
// Strict rows with an objective are rejected. With `certify` false an infeasible
// outcome carries no Farkas vector.
LpOutcome lp(const std::optional<RatVec>& objective, const std::vector<LinConstraint>& constraints,
             std::size_t dim, Strictness strictness = Strictness::TwoPhase, bool certify = true);

bool satisfies(const std::vector<LinConstraint>& constraints, const RatVec& point);
bool check_farkas(const std::vector<LinConstraint>& constraints, const RatVec& farkas);
bool check_ray(const RatVec& objective, const std::vector<LinConstraint>& constraints,
               const RatVec& ray);

struct StdLpResult {
  enum class Status { Optimal, Infeasible, Unbounded };
  Status status = Status::Infeasible;
  RatVec z;
  Rat value;
  std::size_t unbounded_column = 0;
};

// Standard form: maximise c.z subject to a z = b, z >= 0. Bland's rule, left-to-right columns.
// A null objective asks for feasibility only.
StdLpResult simplex(const RatMat& a, const RatVec& b, const RatVec* c, std::size_t nvars);

// lambda >= 0 with sum lambda_i gens_i = x, if one exists.
std::optional<RatVec> nonneg_combination(const std::vector<RatVec>& gens, const RatVec& x,
                                         std::size_t dim);

// ---- polyhedral cones ----

struct ConeDesc {
  std::size_t dim = 0;
  std::vector<RatVec> generators;
  std::vector<RatVec> inequalities;  // a.x >= 0
  std::vector<RatVec> equalities;    // a.x == 0
};

// Drops zero and duplicate rays, then every generator lying in the cone of the others.
std::vector<RatVec> reduce_generators(const std::vector<RatVec>& gens, std::size_t dim);
// Normals n in span(gens) of the facets of cone(gens) relative to its span.
std::vector<RatVec> relative_facets(const std::vector<RatVec>& gens, std::size_t dim);

ConeDesc cone_from_generators(const std::vector<RatVec>& gens, std::size_t dim);
ConeDesc cone_from_inequalities(const std::vector<RatVec>& ineqs, const std::vector<RatVec>& eqs,
                                std::size_t dim);
bool cone_desc_contains(const ConeDesc& c, const RatVec& x);

// Image of the cone under x -> (x_k for k in keep). Generators are projected and reduced;
// inequalities are recomputed from them.
ConeDesc project_cone(const ConeDesc& input, const std::vector<std::size_t>& keep);

}  // namespace k0bench
