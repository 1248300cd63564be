#include "k0bench/totalize.hpp"

namespace k0bench {

const char* to_string(Sign s) {
  switch (s) {
    case Sign::Neg:
      return "Neg";
    case Sign::Zero:
      return "Zero";
    case Sign::Pos:
      return "Pos";
  }
  return "?";
}

namespace {

// Functionals f_k with f_k(rows_j) = delta_jk; rows must form a basis.
std::vector<RatVec> dual_basis(const std::vector<RatVec>& rows, std::size_t dim) {
  std::vector<RatVec> out;
  for (std::size_t k = 0; k < dim; ++k) {
    auto f = solve_linear(rows, unit_vector(dim, k), dim);
    if (!f) throw PreconditionError("dual basis: vectors do not form a basis");
    out.push_back(std::move(*f));
  }
  return out;
}

}  // namespace

Cone lex_order(const std::vector<RatVec>& basis, std::size_t dim) {
  for (const auto& b : basis) {
    if (b.size() != dim) throw DimensionMismatch("lex_order: basis vector length");
  }
  if (basis.size() != dim || rank(basis, dim) != dim) {
    throw PreconditionError("lex_order: the vectors do not span the space");
  }
  return Cone::lex(dual_basis(basis, dim), LexTail::ZeroOnly, dim);
}

std::vector<RatVec> default_tiebreak(const RatVec& tau) {
  const std::size_t n = tau.size();
  if (is_zero(tau)) throw PreconditionError("default_tiebreak: zero functional");
  RatMat rows{tau};
  for (std::size_t j = 0; j < n && rows.size() < n; ++j) {
    RatMat trial = rows;
    trial.push_back(unit_vector(n, j));
    if (rank(trial, n) == trial.size()) rows = std::move(trial);
  }
  std::vector<RatVec> out;
  for (std::size_t k = 1; k < n; ++k) out.push_back(*solve_linear(rows, unit_vector(n, k), n));
  return out;
}

Totalization totalize_with_state(const ScaledOrderedGroup& g, const State& tau,
                                 const std::vector<RatVec>& tiebreak, bool reverse) {
  const RatVec& t = tau.functional;
  if (t.size() != g.dim) throw DimensionMismatch("totalize_with_state: state length");
  if (!is_state(g, t)) throw PreconditionError("totalize_with_state: tau is not a state");
  if (!is_faithful(g, t)) throw PreconditionError("totalize_with_state: tau is not faithful");
  Totalization res;
  res.tiebreak = tiebreak.empty() ? default_tiebreak(t) : tiebreak;
  if (res.tiebreak.size() + 1 != g.dim) {
    throw PreconditionError("totalize_with_state: tiebreak must have dim - 1 vectors");
  }
  for (const auto& v : res.tiebreak) {
    if (v.size() != g.dim) throw DimensionMismatch("totalize_with_state: tiebreak length");
    if (sgn(dot(t, v)) != 0) {
      throw PreconditionError("totalize_with_state: tiebreak vector " + to_string(v) +
                              " is not in ker(tau)");
    }
  }
  if (reverse) {
    for (auto& v : res.tiebreak) v = neg(v);
  }
  std::vector<RatVec> basis = res.tiebreak;
  basis.push_back(g.unit);
  if (rank(basis, g.dim) != g.dim) {
    throw PreconditionError("totalize_with_state: tiebreak does not span ker(tau)");
  }
  std::vector<RatVec> duals = dual_basis(basis, g.dim);
  std::vector<RatVec> fs{t};
  for (std::size_t k = 0; k + 1 < g.dim; ++k) fs.push_back(duals[k]);
  res.group = make_group(Cone::lex(fs, LexTail::ZeroOnly, g.dim), g.unit);
  for (const auto& v : embedded_fingen_generators(g.cone)) {
    res.generator_values.push_back(dot(t, v));
    if (cone_contains(res.group.cone, v) != Membership::PositiveNonzero) {
      throw std::logic_error("totalize_with_state: generator outside the total order");
    }
  }
  return res;
}

Sign sign_in(const Cone& total, const RatVec& x) {
  switch (cone_contains(total, x)) {
    case Membership::Zero:
      return Sign::Zero;
    case Membership::PositiveNonzero:
      return Sign::Pos;
    case Membership::NotInCone:
      break;
  }
  if (cone_contains(total, neg(x)) == Membership::PositiveNonzero) return Sign::Neg;
  throw PreconditionError("sign_in: the cone is not a total order");
}

PlacementReport placements(const ScaledOrderedGroup& g, const State& tau,
                           const std::vector<RatVec>& tiebreak, const RatVec& x) {
  if (x.size() != g.dim) throw DimensionMismatch("placements: element length");
  if (is_zero(x)) throw PreconditionError("placements: x must be nonzero");
  if (sgn(dot(tau.functional, x)) != 0) throw PreconditionError("placements: tau(x) != 0");
  PlacementReport r;
  r.x = x;
  auto fwd = totalize_with_state(g, tau, tiebreak, false);
  auto rev = totalize_with_state(g, tau, tiebreak, true);
  r.sign_forward = sign_in(fwd.group.cone, x);
  r.sign_reverse = sign_in(rev.group.cone, x);
  r.forward_values = mat_vec(fwd.group.cone.functionals, x);
  r.reverse_values = mat_vec(rev.group.cone.functionals, x);
  Subgroup kill = Subgroup::qspan({x}, g.dim);
  if (g.cone.is_fingen_like()) {
    Quotient q = quotient_order(g, kill);
    r.quotient_image = mat_vec(q.projection, x);
    r.sign_quotient = is_zero(r.quotient_image) ? Sign::Zero : sign_in(q.group.cone, r.quotient_image);
  } else {
    r.quotient_image = mat_vec(canonical_projection(kill.generators, g.dim), x);
    if (!is_zero(r.quotient_image)) throw std::logic_error("placements: projection misses x");
    r.sign_quotient = Sign::Zero;
  }
  return r;
}

Doubling doubling(const ScaledOrderedGroup& g, const State& tau,
                  const std::vector<RatVec>& tiebreak) {
  auto fwd = totalize_with_state(g, tau, tiebreak, false);
  auto rev = totalize_with_state(g, tau, tiebreak, true);
  Doubling d;
  d.group = direct_sum({fwd.group, rev.group});
  d.diagonal = identity(g.dim);
  for (const auto& row : identity(g.dim)) d.diagonal.push_back(row);
  return d;
}

namespace {

void collect_strict(const Cone& c, const RatVec& unit, std::size_t offset, std::size_t dim,
                    std::vector<RatVec>& out) {
  auto embed = [&](const RatVec& v) {
    RatVec e = zeros(dim);
    for (std::size_t j = 0; j < v.size(); ++j) e[offset + j] = v[j];
    return e;
  };
  switch (c.kind) {
    case ConeKind::FinGen:
      for (const auto& v : c.generators) {
        if (!is_zero(v)) out.push_back(embed(v));
      }
      return;
    case ConeKind::Lex:
      out.push_back(embed(unit));
      return;
    case ConeKind::DirectSum: {
      std::size_t off = 0;
      for (const auto& p : c.parts) {
        collect_strict(p, slice(unit, off, p.dim), offset + off, dim, out);
        off += p.dim;
      }
      return;
    }
  }
}

}  // namespace

std::vector<RatVec> default_strict_set(const ScaledOrderedGroup& g) {
  std::vector<RatVec> out;
  collect_strict(g.cone, g.unit, 0, g.dim, out);
  return out;
}

KillCheck faithful_kill_check(const ScaledOrderedGroup& g, const RatVec& x,
                              const std::vector<RatVec>& strict_set) {
  if (x.size() != g.dim) throw DimensionMismatch("faithful_kill_check: element length");
  std::vector<LinConstraint> sys = state_set(g).system();
  sys.push_back({x, Rel::Eq, Rat(0)});
  std::vector<LinConstraint> strict = sys;
  for (const auto& s : strict_set) {
    if (s.size() != g.dim) throw DimensionMismatch("faithful_kill_check: strict element length");
    strict.push_back({s, Rel::Gt, Rat(0)});
  }
  KillCheck res;
  LpOutcome o = lp(std::nullopt, strict, g.dim, Strictness::TwoPhase, false);
  if (o.feasible()) {
    res.killable = true;
    res.state = State{o.point};
    return res;
  }
  if (!lp(std::nullopt, sys, g.dim, Strictness::Weaken, false).feasible()) return res;
  for (const auto& s : strict_set) {
    LpOutcome m = lp(s, sys, g.dim, Strictness::Weaken, false);
    if (m.kind == LpOutcome::Kind::Bounded && sgn(m.value) <= 0) {
      res.blocking = s;
      return res;
    }
  }
  return res;
}

}  // namespace k0bench
