#include "k0bench/ordgrp.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace k0bench {

namespace {

constexpr std::size_t kMaxVertexSubsets = 20000;

// A polyhedron over (x, auxiliaries) closed under scaling by t >= 1. The union of the
// x-projections of a cone's nonzero pieces, rescaled, is the cone minus the origin.
struct Piece {
  std::size_t xdim = 0;
  std::size_t aux = 0;
  std::vector<LinConstraint> cons;
};

std::vector<RatVec> nonzero_only(const std::vector<RatVec>& gens) {
  std::vector<RatVec> out;
  for (const auto& g : gens) {
    if (!is_zero(g)) out.push_back(g);
  }
  return out;
}

Piece fingen_piece(const Cone& c, bool nonzero) {
  std::vector<RatVec> gens = nonzero_only(c.generators);
  Piece p;
  p.xdim = c.dim;
  p.aux = gens.size();
  const std::size_t nv = p.xdim + p.aux;
  for (std::size_t r = 0; r < c.dim; ++r) {
    RatVec row = zeros(nv);
    row[r] = 1;
    for (std::size_t j = 0; j < gens.size(); ++j) row[c.dim + j] = -gens[j][r];
    p.cons.push_back({std::move(row), Rel::Eq, Rat(0)});
  }
  for (std::size_t j = 0; j < gens.size(); ++j) {
    p.cons.push_back({unit_vector(nv, c.dim + j), Rel::Ge, Rat(0)});
  }
  if (nonzero) {
    RatVec row = zeros(nv);
    for (std::size_t j = 0; j < gens.size(); ++j) row[c.dim + j] = 1;
    p.cons.push_back({std::move(row), Rel::Ge, Rat(1)});
  }
  return p;
}

std::vector<Piece> lex_pieces(const Cone& c) {
  std::vector<Piece> out;
  for (std::size_t i = 0; i < c.functionals.size(); ++i) {
    Piece p;
    p.xdim = c.dim;
    for (std::size_t j = 0; j < i; ++j) p.cons.push_back({c.functionals[j], Rel::Eq, Rat(0)});
    p.cons.push_back({c.functionals[i], Rel::Ge, Rat(1)});
    out.push_back(std::move(p));
  }
  if (c.tail == LexTail::AllOfKernel) {
    for (std::size_t j = 0; j < c.dim; ++j) {
      for (int s : {1, -1}) {
        Piece p;
        p.xdim = c.dim;
        for (const auto& f : c.functionals) p.cons.push_back({f, Rel::Eq, Rat(0)});
        p.cons.push_back({scale(Rat(s), unit_vector(c.dim, j)), Rel::Ge, Rat(1)});
        out.push_back(std::move(p));
      }
    }
  }
  return out;
}

Piece combine(const std::vector<const Piece*>& ps) {
  Piece out;
  for (const auto* p : ps) {
    out.xdim += p->xdim;
    out.aux += p->aux;
  }
  const std::size_t nv = out.xdim + out.aux;
  std::size_t xoff = 0, aoff = out.xdim;
  for (const auto* p : ps) {
    for (const auto& c : p->cons) {
      RatVec row = zeros(nv);
      for (std::size_t j = 0; j < p->xdim; ++j) row[xoff + j] = c.coeffs[j];
      for (std::size_t j = 0; j < p->aux; ++j) row[aoff + j] = c.coeffs[p->xdim + j];
      out.cons.push_back({std::move(row), c.rel, c.rhs});
    }
    xoff += p->xdim;
    aoff += p->aux;
  }
  return out;
}

std::vector<Piece> member_pieces(const Cone& c);
std::vector<Piece> nonzero_pieces(const Cone& c);

// Every choice of one piece per slot, combined.
std::vector<Piece> product(const std::vector<std::vector<Piece>>& slots) {
  std::vector<Piece> out;
  for (const auto& s : slots) {
    if (s.empty()) return out;
  }
  std::vector<std::size_t> idx(slots.size(), 0);
  for (;;) {
    std::vector<const Piece*> pick;
    for (std::size_t k = 0; k < slots.size(); ++k) pick.push_back(&slots[k][idx[k]]);
    out.push_back(combine(pick));
    std::size_t k = 0;
    while (k < slots.size() && ++idx[k] == slots[k].size()) idx[k++] = 0;
    if (k == slots.size()) return out;
  }
}

std::vector<Piece> member_pieces(const Cone& c) {
  switch (c.kind) {
    case ConeKind::FinGen:
      return {fingen_piece(c, false)};
    case ConeKind::Lex: {
      Piece zero;
      zero.xdim = c.dim;
      for (std::size_t j = 0; j < c.dim; ++j) {
        zero.cons.push_back({unit_vector(c.dim, j), Rel::Eq, Rat(0)});
      }
      std::vector<Piece> out{zero};
      for (auto& p : lex_pieces(c)) out.push_back(std::move(p));
      return out;
    }
    case ConeKind::DirectSum: {
      std::vector<std::vector<Piece>> slots;
      for (const auto& part : c.parts) slots.push_back(member_pieces(part));
      return product(slots);
    }
  }
  return {};
}

std::vector<Piece> nonzero_pieces(const Cone& c) {
  switch (c.kind) {
    case ConeKind::FinGen:
      if (nonzero_only(c.generators).empty()) return {};
      return {fingen_piece(c, true)};
    case ConeKind::Lex:
      return lex_pieces(c);
    case ConeKind::DirectSum: {
      std::vector<Piece> out;
      for (std::size_t i = 0; i < c.parts.size(); ++i) {
        std::vector<std::vector<Piece>> slots;
        for (std::size_t j = 0; j < c.parts.size(); ++j) {
          slots.push_back(j == i ? nonzero_pieces(c.parts[j]) : member_pieces(c.parts[j]));
        }
        for (auto& p : product(slots)) out.push_back(std::move(p));
      }
      return out;
    }
  }
  return {};
}

// A nonzero cone element satisfying the homogeneous constraints `extra` on x, if any.
std::optional<RatVec> find_nonzero(const Cone& c, const std::vector<LinConstraint>& extra) {
  for (const auto& p : nonzero_pieces(c)) {
    const std::size_t nv = p.xdim + p.aux;
    std::vector<LinConstraint> cons = p.cons;
    for (const auto& e : extra) {
      RatVec row = zeros(nv);
      std::copy(e.coeffs.begin(), e.coeffs.end(), row.begin());
      cons.push_back({std::move(row), e.rel, e.rhs});
    }
    LpOutcome out = lp(std::nullopt, cons, nv, Strictness::TwoPhase, false);
    if (out.feasible()) return slice(out.point, 0, p.xdim);
  }
  return std::nullopt;
}

std::vector<RatVec> embed_all(const std::vector<RatVec>& vs, std::size_t offset, std::size_t dim) {
  std::vector<RatVec> out;
  for (const auto& v : vs) {
    RatVec e = zeros(dim);
    std::copy(v.begin(), v.end(), e.begin() + static_cast<long>(offset));
    out.push_back(std::move(e));
  }
  return out;
}

void check_dim(const RatVec& x, std::size_t dim, const char* op) {
  if (x.size() != dim) {
    throw DimensionMismatch(std::string(op) + ": expected length " + std::to_string(dim) +
                            ", got " + std::to_string(x.size()));
  }
}

void validate_cone(const Cone& c, const RatVec& unit, const std::string& where) {
  switch (c.kind) {
    case ConeKind::FinGen: {
      std::vector<RatVec> gens = nonzero_only(c.generators);
      for (const auto& g : gens) check_dim(g, c.dim, "make_group");
      if (!gens.empty()) {
        Piece p = fingen_piece(c, true);
        for (std::size_t r = 0; r < c.dim; ++r) p.cons[r].coeffs[r] = 0;  // x = 0
        if (lp(std::nullopt, p.cons, p.xdim + p.aux, Strictness::TwoPhase, false).feasible()) {
          throw PreconditionError(where + "cone is not proper: it contains a line");
        }
      }
      // order unit: t*unit -/+ e_j in the cone for some t >= 0
      for (std::size_t j = 0; j < c.dim; ++j) {
        for (int s : {1, -1}) {
          std::vector<LinConstraint> cons;
          const std::size_t nv = gens.size() + 1;
          for (std::size_t r = 0; r < c.dim; ++r) {
            RatVec row = zeros(nv);
            for (std::size_t k = 0; k < gens.size(); ++k) row[k] = gens[k][r];
            row[gens.size()] = -unit[r];
            cons.push_back({std::move(row), Rel::Eq, Rat(r == j ? s : 0)});
          }
          for (std::size_t k = 0; k < nv; ++k) cons.push_back({unit_vector(nv, k), Rel::Ge, Rat(0)});
          if (!lp(std::nullopt, cons, nv, Strictness::TwoPhase, false).feasible()) {
            throw PreconditionError(where + "unit is not an order unit: no multiple dominates " +
                                    std::string(s > 0 ? "-" : "") + "e_" + std::to_string(j));
          }
        }
      }
      return;
    }
    case ConeKind::Lex: {
      if (c.functionals.empty()) throw PreconditionError(where + "lex cone needs a functional");
      for (const auto& f : c.functionals) check_dim(f, c.dim, "make_group");
      int s = sgn(dot(c.functionals[0], unit));
      if (s == 0) throw PreconditionError(where + "unit is not an order unit: f1(unit) = 0");
      if (s < 0) throw PreconditionError(where + "unit is not in the cone: f1(unit) < 0");
      return;
    }
    case ConeKind::DirectSum: {
      std::size_t off = 0;
      for (std::size_t i = 0; i < c.parts.size(); ++i) {
        validate_cone(c.parts[i], slice(unit, off, c.parts[i].dim),
                      where + "summand " + std::to_string(i) + ": ");
        off += c.parts[i].dim;
      }
      return;
    }
  }
}

int first_nonzero_sign(const RatVec& v) {
  for (const auto& x : v) {
    if (sgn(x) != 0) return sgn(x);
  }
  return 0;
}

RatVec sign_normalized(const RatVec& v) {
  RatVec p = primitive(v);
  return first_nonzero_sign(p) < 0 ? neg(p) : p;
}

std::vector<std::size_t> free_columns(const Rref& r, std::size_t dim) {
  std::vector<bool> pivot(dim, false);
  for (auto p : r.pivots) pivot[p] = true;
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < dim; ++j) {
    if (!pivot[j]) out.push_back(j);
  }
  return out;
}

Rat lcm_of_denominators(const RatVec& v) {
  Int l = 1;
  for (const auto& x : v) l = lcm(l, Int(x.get_den()));
  return Rat(l);
}

}  // namespace

// ---- cones and groups ----

Cone Cone::fingen(std::vector<RatVec> generators, std::size_t dim) {
  Cone c;
  c.kind = ConeKind::FinGen;
  c.dim = dim;
  for (const auto& g : generators) check_dim(g, dim, "Cone::fingen");
  c.generators = std::move(generators);
  return c;
}

Cone Cone::lex(std::vector<RatVec> functionals, LexTail tail, std::size_t dim) {
  Cone c;
  c.kind = ConeKind::Lex;
  c.dim = dim;
  for (const auto& f : functionals) check_dim(f, dim, "Cone::lex");
  c.functionals = std::move(functionals);
  c.tail = tail;
  return c;
}

Cone Cone::direct_sum(std::vector<Cone> parts) {
  Cone c;
  c.kind = ConeKind::DirectSum;
  for (const auto& p : parts) c.dim += p.dim;
  c.parts = std::move(parts);
  return c;
}

bool Cone::is_fingen_like() const {
  if (kind == ConeKind::FinGen) return true;
  if (kind == ConeKind::Lex) return false;
  return std::all_of(parts.begin(), parts.end(), [](const Cone& p) { return p.is_fingen_like(); });
}

ScaledOrderedGroup make_group(Cone cone, RatVec unit) {
  check_dim(unit, cone.dim, "make_group");
  validate_cone(cone, unit, "");
  ScaledOrderedGroup g;
  g.dim = cone.dim;
  g.cone = std::move(cone);
  g.unit = std::move(unit);
  return g;
}

Subgroup Subgroup::qspan(const std::vector<RatVec>& generators, std::size_t dim) {
  for (const auto& v : generators) check_dim(v, dim, "Subgroup::qspan");
  Subgroup h;
  h.dim = dim;
  h.kind = SpanKind::QSpan;
  h.generators = span_basis(generators, dim);
  return h;
}

Subgroup Subgroup::zspan(std::vector<RatVec> generators, std::size_t dim) {
  for (const auto& v : generators) check_dim(v, dim, "Subgroup::zspan");
  Subgroup h;
  h.dim = dim;
  h.kind = SpanKind::ZSpan;
  h.generators = std::move(generators);
  return h;
}

std::vector<RatVec> Subgroup::basis() const { return span_basis(generators, dim); }

Membership cone_contains(const Cone& cone, const RatVec& x) {
  check_dim(x, cone.dim, "cone_contains");
  if (is_zero(x)) return Membership::Zero;
  switch (cone.kind) {
    case ConeKind::FinGen:
      return nonneg_combination(nonzero_only(cone.generators), x, cone.dim)
                 ? Membership::PositiveNonzero
                 : Membership::NotInCone;
    case ConeKind::Lex:
      for (const auto& f : cone.functionals) {
        int s = sgn(dot(f, x));
        if (s > 0) return Membership::PositiveNonzero;
        if (s < 0) return Membership::NotInCone;
      }
      return cone.tail == LexTail::AllOfKernel ? Membership::PositiveNonzero
                                               : Membership::NotInCone;
    case ConeKind::DirectSum: {
      std::size_t off = 0;
      for (const auto& part : cone.parts) {
        if (cone_contains(part, slice(x, off, part.dim)) == Membership::NotInCone) {
          return Membership::NotInCone;
        }
        off += part.dim;
      }
      return Membership::PositiveNonzero;
    }
  }
  return Membership::NotInCone;
}

Membership cone_contains(const ScaledOrderedGroup& g, const RatVec& x) {
  return cone_contains(g.cone, x);
}

bool in_cone(const Cone& cone, const RatVec& x) {
  return cone_contains(cone, x) != Membership::NotInCone;
}

std::vector<RatVec> closure_generators(const Cone& cone) {
  switch (cone.kind) {
    case ConeKind::FinGen:
      return nonzero_only(cone.generators);
    case ConeKind::Lex: {
      const RatVec& f = cone.functionals.at(0);
      std::vector<RatVec> out{scale(1 / dot(f, f), f)};
      for (const auto& k : kernel_basis(RatMat{f}, cone.dim)) {
        out.push_back(k);
        out.push_back(neg(k));
      }
      return out;
    }
    case ConeKind::DirectSum: {
      std::vector<RatVec> out;
      std::size_t off = 0;
      for (const auto& part : cone.parts) {
        for (auto& v : embed_all(closure_generators(part), off, cone.dim)) out.push_back(std::move(v));
        off += part.dim;
      }
      return out;
    }
  }
  return {};
}

std::vector<RatVec> embedded_fingen_generators(const Cone& cone) {
  switch (cone.kind) {
    case ConeKind::FinGen:
      return nonzero_only(cone.generators);
    case ConeKind::Lex:
      return {};
    case ConeKind::DirectSum: {
      std::vector<RatVec> out;
      std::size_t off = 0;
      for (const auto& part : cone.parts) {
        for (auto& v : embed_all(embedded_fingen_generators(part), off, cone.dim)) {
          out.push_back(std::move(v));
        }
        off += part.dim;
      }
      return out;
    }
  }
  return {};
}

Cone flatten_fingen(const Cone& cone) {
  if (!cone.is_fingen_like()) {
    throw PreconditionError("operation needs a FinGen cone or a direct sum of FinGen cones");
  }
  return Cone::fingen(embedded_fingen_generators(cone), cone.dim);
}

// ---- singularity ----

SingularResult is_singular(const Cone& cone, const std::vector<RatVec>& span_generators) {
  for (const auto& v : span_generators) check_dim(v, cone.dim, "is_singular");
  SingularResult res;
  std::vector<RatVec> basis = span_basis(span_generators, cone.dim);
  if (basis.empty()) return res;
  std::vector<LinConstraint> in_span_rows;
  for (const auto& a : annihilator(basis, cone.dim)) in_span_rows.push_back({a, Rel::Eq, Rat(0)});
  if (auto x = find_nonzero(cone, in_span_rows)) {
    res.singular = false;
    res.witness = primitive(*x);
  }
  return res;
}

SingularResult is_singular(const ScaledOrderedGroup& g, const Subgroup& h) {
  if (h.dim != g.dim) throw DimensionMismatch("is_singular: subgroup dimension");
  SingularResult res = is_singular(g.cone, h.generators);
  if (!res.singular && h.kind == SpanKind::ZSpan) {
    ZLattice lat(h.generators, h.dim);
    auto c = lat.coordinates(res.witness);
    res.witness = scale(lcm_of_denominators(*c), res.witness);
  }
  return res;
}

DivisibilityResult satisfies_divisibility(const Subgroup& h) {
  DivisibilityResult res;
  if (h.kind == SpanKind::QSpan) return res;
  std::vector<RatVec> basis = h.basis();
  if (basis.empty()) return res;
  ZLattice lat(h.generators, h.dim);
  std::vector<RatVec> ann = annihilator(basis, h.dim);
  std::vector<RatVec> saturation;
  if (ann.empty()) {
    saturation = identity(h.dim);
  } else {
    IntMat cols(h.dim, IntVec(ann.size()));
    for (std::size_t i = 0; i < ann.size(); ++i) {
      RatVec a = primitive(ann[i]);
      for (std::size_t j = 0; j < h.dim; ++j) cols[j][i] = a[j].get_num();
    }
    for (const auto& v : integer_left_kernel(cols, ann.size())) {
      RatVec r;
      for (const auto& e : v) r.emplace_back(e);
      saturation.push_back(std::move(r));
    }
  }
  for (const auto& s : saturation) {
    auto c = lat.coordinates(s);
    if (!c) throw std::logic_error("satisfies_divisibility: saturation leaves the span");
    Rat k = lcm_of_denominators(*c);
    if (k != 1) {
      res.holds = false;
      res.witness = s;
      res.k = k.get_num();
      return res;
    }
  }
  return res;
}

// ---- quotients ----

RatMat canonical_projection(const std::vector<RatVec>& basis, std::size_t dim) {
  Rref r = rref(basis, dim);
  RatMat p;
  for (auto j : free_columns(r, dim)) {
    RatVec row = unit_vector(dim, j);
    for (std::size_t k = 0; k < r.rows.size(); ++k) row[r.pivots[k]] = -r.rows[k][j];
    p.push_back(std::move(row));
  }
  return p;
}

RatVec canonical_lift(const std::vector<RatVec>& basis, std::size_t dim, const RatVec& y) {
  Rref r = rref(basis, dim);
  auto fc = free_columns(r, dim);
  check_dim(y, fc.size(), "canonical_lift");
  RatVec x = zeros(dim);
  for (std::size_t k = 0; k < fc.size(); ++k) x[fc[k]] = y[k];
  return x;
}

Quotient quotient_order(const ScaledOrderedGroup& g, const Subgroup& h) {
  if (h.dim != g.dim) throw DimensionMismatch("quotient_order: subgroup dimension");
  if (!g.cone.is_fingen_like()) {
    throw PreconditionError("quotient_order: quotients of lex cones are not supported");
  }
  if (h.kind == SpanKind::ZSpan) {
    auto d = satisfies_divisibility(h);
    if (!d.holds) {
      throw PreconditionError("quotient_order: subgroup fails divisibility; witness " +
                              to_string(d.witness) + " with k = " + d.k.get_str());
    }
  }
  auto s = is_singular(g, h);
  if (!s.singular) {
    throw PreconditionError("quotient_order: subgroup is not singular; witness " +
                            to_string(s.witness));
  }
  std::vector<RatVec> basis = h.basis();
  Quotient q;
  q.projection = canonical_projection(basis, g.dim);
  const std::size_t m = q.projection.size();
  std::vector<RatVec> gens;
  for (const auto& v : embedded_fingen_generators(g.cone)) gens.push_back(mat_vec(q.projection, v));
  q.group = make_group(Cone::fingen(reduce_generators(gens, m), m), mat_vec(q.projection, g.unit));
  return q;
}

// ---- states ----

std::vector<LinConstraint> StateSet::system() const {
  std::vector<LinConstraint> cons;
  for (const auto& c : constraints) cons.push_back({c, Rel::Ge, Rat(0)});
  cons.push_back({unit, Rel::Eq, Rat(1)});
  return cons;
}

bool StateSet::contains(const RatVec& phi) const {
  return phi.size() == dim && satisfies(system(), phi);
}

StateSet state_set(const ScaledOrderedGroup& g) {
  StateSet s;
  s.dim = g.dim;
  s.unit = g.unit;
  s.constraints = closure_generators(g.cone);
  switch (g.cone.kind) {
    case ConeKind::FinGen:
      s.kind = StateSetKind::Polytope;
      break;
    case ConeKind::Lex: {
      s.kind = StateSetKind::Singleton;
      const RatVec& f = g.cone.functionals[0];
      s.singleton = scale(1 / dot(f, g.unit), f);
      break;
    }
    case ConeKind::DirectSum: {
      s.kind = StateSetKind::Mixture;
      std::size_t off = 0;
      for (const auto& part : g.cone.parts) {
        ScaledOrderedGroup pg;
        pg.dim = part.dim;
        pg.cone = part;
        pg.unit = slice(g.unit, off, part.dim);
        s.parts.push_back(state_set(pg));
        off += part.dim;
      }
      break;
    }
  }
  return s;
}

bool is_state(const ScaledOrderedGroup& g, const RatVec& phi) { return state_set(g).contains(phi); }

bool is_faithful(const ScaledOrderedGroup& g, const RatVec& phi) {
  check_dim(phi, g.dim, "is_faithful");
  if (g.cone.is_fingen_like()) {
    for (const auto& v : embedded_fingen_generators(g.cone)) {
      if (sgn(dot(phi, v)) <= 0) return false;
    }
    return true;
  }
  return !find_nonzero(g.cone, {{neg(phi), Rel::Ge, Rat(0)}}).has_value();
}

std::optional<RatVec> polytope_center(const std::vector<LinConstraint>& system, std::size_t dim) {
  LpOutcome first = lp(std::nullopt, system, dim, Strictness::Weaken, false);
  if (!first.feasible()) return std::nullopt;
  RatMat eq_rows;
  RatVec eq_rhs;
  std::vector<const LinConstraint*> ineqs;
  for (const auto& c : system) {
    if (c.rel == Rel::Eq) {
      eq_rows.push_back(c.coeffs);
      eq_rhs.push_back(c.rhs);
    } else {
      ineqs.push_back(&c);
    }
  }
  const std::size_t r = rank(eq_rows, dim);
  const std::size_t need = dim - r;
  // binomial(ineqs, need) with an early cap
  std::size_t count = 1;
  bool too_many = need > ineqs.size();
  for (std::size_t i = 1; i <= need && !too_many; ++i) {
    count = count * (ineqs.size() - need + i) / i;
    too_many = count > kMaxVertexSubsets;
  }
  if (!too_many) {
    std::vector<RatVec> vertices;
    std::vector<std::size_t> idx(need);
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
      RatMat m = eq_rows;
      RatVec b = eq_rhs;
      for (auto i : idx) {
        m.push_back(ineqs[i]->coeffs);
        b.push_back(ineqs[i]->rhs);
      }
      if (rank(m, dim) == dim) {
        auto x = solve_linear(m, b, dim);
        if (x && satisfies(system, *x) &&
            std::find(vertices.begin(), vertices.end(), *x) == vertices.end()) {
          vertices.push_back(*x);
        }
      }
      // next combination
      std::size_t k = need;
      while (k > 0 && idx[k - 1] == ineqs.size() - need + k - 1) --k;
      if (k == 0) break;
      ++idx[k - 1];
      for (std::size_t j = k; j < need; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!vertices.empty()) {
      RatVec sum = zeros(dim);
      for (const auto& v : vertices) sum = add(sum, v);
      return scale(Rat(1, static_cast<long>(vertices.size())), sum);
    }
  }
  // Relative-interior point: average of points maximising each inequality's slack.
  RatVec sum = first.point;
  long n = 1;
  for (const auto* c : ineqs) {
    LpOutcome o = lp(c->coeffs, system, dim, Strictness::Weaken, false);
    sum = add(sum, o.point);
    ++n;
  }
  return scale(Rat(1, n), sum);
}

FindStateResult find_state(const ScaledOrderedGroup& g, const Subgroup& h1,
                           const std::vector<RatVec>& h2) {
  if (h1.dim != g.dim) throw DimensionMismatch("find_state: subgroup dimension");
  FindStateResult res;
  res.system = state_set(g).system();
  for (const auto& v : h1.basis()) res.system.push_back({v, Rel::Eq, Rat(0)});
  for (const auto& w : h2) {
    check_dim(w, g.dim, "find_state");
    res.system.push_back({w, Rel::Ge, Rat(0)});
  }
  LpOutcome o = lp(std::nullopt, res.system, g.dim);
  if (!o.feasible()) {
    res.farkas = o.farkas;
    return res;
  }
  res.state = State{*polytope_center(res.system, g.dim)};
  return res;
}

Subgroup infinitesimals(const ScaledOrderedGroup& g) {
  if (g.cone.kind == ConeKind::Lex) {
    return Subgroup::qspan(kernel_basis(RatMat{g.cone.functionals[0]}, g.dim), g.dim);
  }
  std::vector<LinConstraint> sys = state_set(g).system();
  LpOutcome first = lp(std::nullopt, sys, g.dim, Strictness::Weaken, false);
  if (!first.feasible()) return Subgroup::qspan(identity(g.dim), g.dim);
  std::vector<RatVec> states{first.point};
  for (;;) {
    std::vector<RatVec> ann = annihilator(states, g.dim);
    bool grew = false;
    for (const auto& d : ann) {
      for (const RatVec& dir : {d, neg(d)}) {
        LpOutcome o = lp(dir, sys, g.dim, Strictness::Weaken, false);
        if (o.kind == LpOutcome::Kind::Unbounded || sgn(o.value) > 0) {
          states.push_back(o.point);
          grew = true;
          break;
        }
      }
      if (grew) break;
    }
    if (!grew) return Subgroup::qspan(ann, g.dim);
  }
}

// ---- maximality ----

MaximalityResult is_maximally_singular(const ScaledOrderedGroup& g, const Subgroup& h) {
  if (h.dim != g.dim) throw DimensionMismatch("is_maximally_singular: subgroup dimension");
  auto s = is_singular(g, h);
  if (!s.singular) {
    throw PreconditionError("is_maximally_singular: subgroup is not singular; witness " +
                            to_string(s.witness));
  }
  std::vector<RatVec> basis = h.basis();
  MaximalityResult res;
  if (g.cone.kind == ConeKind::Lex) {
    if (g.cone.tail == LexTail::AllOfKernel) return res;
    for (const auto& k : kernel_basis(g.cone.functionals, g.dim)) {
      if (!in_span(basis, k)) {
        res.maximal = false;
        res.extension = sign_normalized(k);
        return res;
      }
    }
    return res;
  }
  if (!g.cone.is_fingen_like()) {
    throw PreconditionError(
        "is_maximally_singular: needs a FinGen cone, a lex cone, or a direct sum of FinGen cones");
  }
  // A closed pointed cone is total only in dimension <= 1.
  RatMat p = canonical_projection(basis, g.dim);
  const std::size_t m = p.size();
  if (m <= 1) return res;
  std::vector<LinConstraint> cons;
  for (const auto& v : embedded_fingen_generators(g.cone)) {
    RatVec pv = mat_vec(p, v);
    if (!is_zero(pv)) cons.push_back({pv, Rel::Ge, Rat(1)});
  }
  LpOutcome psi = lp(std::nullopt, cons, m, Strictness::Weaken, false);
  if (!psi.feasible()) throw std::logic_error("is_maximally_singular: quotient cone not pointed");
  RatVec v = kernel_basis(RatMat{psi.point}, m).at(0);
  res.maximal = false;
  res.extension = sign_normalized(canonical_lift(basis, g.dim, v));
  return res;
}

MaximalizeResult maximalize(const ScaledOrderedGroup& g, const Subgroup& h,
                            const std::vector<RatVec>& candidates,
                            const MaximalizeOptions& options) {
  if (h.dim != g.dim) throw DimensionMismatch("maximalize: subgroup dimension");
  auto s = is_singular(g, h);
  if (!s.singular) {
    throw PreconditionError("maximalize: subgroup is not singular; witness " + to_string(s.witness));
  }
  std::vector<RatVec> stream;
  if (options.basis_vectors) {
    for (std::size_t i = 0; i < g.dim; ++i) stream.push_back(unit_vector(g.dim, i));
  }
  if (options.generator_differences) {
    auto gens = embedded_fingen_generators(g.cone);
    for (std::size_t i = 0; i < gens.size(); ++i) {
      for (std::size_t j = i + 1; j < gens.size(); ++j) stream.push_back(sub(gens[i], gens[j]));
    }
  }
  for (const auto& c : candidates) {
    check_dim(c, g.dim, "maximalize");
    stream.push_back(c);
  }
  std::vector<RatVec> basis = h.basis();
  const bool fingen = g.cone.is_fingen_like();
  for (const auto& c : stream) {
    if (fingen && basis.size() + 1 >= g.dim) break;
    if (is_zero(c) || in_span(basis, c)) continue;
    std::vector<RatVec> trial = basis;
    trial.push_back(c);
    if (is_singular(g.cone, trial).singular) basis = span_basis(trial, g.dim);
  }
  MaximalizeResult res;
  res.subgroup = Subgroup::qspan(basis, g.dim);
  if (fingen || g.cone.kind == ConeKind::Lex) {
    res.maximal = is_maximally_singular(g, res.subgroup).maximal;
  }
  return res;
}

// ---- constructors ----

namespace {

Cone rationalize_cone(const Cone& c) {
  switch (c.kind) {
    case ConeKind::FinGen:
      for (const auto& g : c.generators) {
        for (const auto& x : g) {
          if (x.get_den() != 1) {
            throw PreconditionError("rationalize: generator " + to_string(g) + " is not integral");
          }
        }
      }
      return Cone::fingen(reduce_generators(c.generators, c.dim), c.dim);
    case ConeKind::Lex:
      return c;
    case ConeKind::DirectSum: {
      std::vector<Cone> parts;
      for (const auto& p : c.parts) parts.push_back(rationalize_cone(p));
      return Cone::direct_sum(std::move(parts));
    }
  }
  return c;
}

}  // namespace

ScaledOrderedGroup rationalize(const ScaledOrderedGroup& g) {
  return make_group(rationalize_cone(g.cone), g.unit);
}

ScaledOrderedGroup direct_sum(const std::vector<ScaledOrderedGroup>& parts) {
  if (parts.empty()) throw PreconditionError("direct_sum: no summands");
  if (parts.size() == 1) return parts[0];
  std::vector<Cone> cones;
  RatVec unit;
  for (const auto& p : parts) {
    cones.push_back(p.cone);
    unit = concat(unit, p.unit);
  }
  ScaledOrderedGroup g;
  g.cone = Cone::direct_sum(std::move(cones));
  g.dim = g.cone.dim;
  g.unit = std::move(unit);
  return g;
}

}  // namespace k0bench
