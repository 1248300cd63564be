#include "k0bench/oracle.hpp"

#include <algorithm>
#include <random>

namespace k0bench {

std::vector<RatVec> grid_points(const GridSpec& grid) {
  std::vector<Rat> values;
  for (long q = 1; q <= grid.den_bound; ++q) {
    for (long p = -grid.coord_bound * q; p <= grid.coord_bound * q; ++p) {
      Rat v(p, q);
      v.canonicalize();
      if (std::find(values.begin(), values.end(), v) == values.end()) values.push_back(v);
    }
  }
  std::sort(values.begin(), values.end());
  std::vector<RatVec> pts{RatVec{}};
  for (std::size_t d = 0; d < grid.dim; ++d) {
    std::vector<RatVec> next;
    for (const auto& p : pts) {
      for (const auto& v : values) {
        RatVec q = p;
        q.push_back(v);
        next.push_back(std::move(q));
      }
    }
    pts = std::move(next);
  }
  if (grid.samples > 0 && grid.samples < pts.size()) {
    std::mt19937_64 rng(grid.seed);
    std::vector<RatVec> pick;
    for (std::size_t i = 0; i < grid.samples; ++i) pick.push_back(pts[rng() % pts.size()]);
    return pick;
  }
  return pts;
}

namespace {

bool fingen_member(const std::vector<RatVec>& all, const RatVec& x, std::size_t dim) {
  if (is_zero(x)) return true;
  std::vector<RatVec> gens;
  for (const auto& g : all) {
    if (!is_zero(g)) gens.push_back(g);
  }
  const std::size_t n = gens.size();
  if (n > 20) throw PreconditionError("brute_member: too many generators for subset search");
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<RatVec> sub;
    for (std::size_t k = 0; k < n; ++k) {
      if (mask >> k & 1) sub.push_back(gens[k]);
    }
    if (sub.size() > dim || rank(sub, dim) != sub.size()) continue;
    auto lambda = solve_linear(transpose(sub, dim), x, sub.size());
    if (!lambda) continue;
    bool nonneg = true;
    for (const auto& l : *lambda) nonneg = nonneg && sgn(l) >= 0;
    if (nonneg) return true;
  }
  return false;
}

}  // namespace

bool brute_member(const Cone& cone, const RatVec& x) {
  if (x.size() != cone.dim) throw DimensionMismatch("brute_member: element length");
  switch (cone.kind) {
    case ConeKind::FinGen:
      return fingen_member(cone.generators, x, cone.dim);
    case ConeKind::Lex:
      for (const auto& f : cone.functionals) {
        int s = sgn(dot(f, x));
        if (s != 0) return s > 0;
      }
      return is_zero(x) || cone.tail == LexTail::AllOfKernel;
    case ConeKind::DirectSum: {
      std::size_t off = 0;
      for (const auto& p : cone.parts) {
        if (!brute_member(p, slice(x, off, p.dim))) return false;
        off += p.dim;
      }
      return true;
    }
  }
  return false;
}

std::vector<std::pair<RatVec, bool>> brute_membership(const Cone& cone, const GridSpec& grid) {
  if (grid.dim != cone.dim) throw DimensionMismatch("brute_membership: grid dimension");
  std::vector<std::pair<RatVec, bool>> out;
  for (auto& p : grid_points(grid)) {
    bool in = brute_member(cone, p);
    out.emplace_back(std::move(p), in);
  }
  return out;
}

const char* to_string(BruteSign s) {
  switch (s) {
    case BruteSign::Neg:
      return "Neg";
    case BruteSign::Zero:
      return "Zero";
    case BruteSign::Pos:
      return "Pos";
    case BruteSign::Inconclusive:
      return "Inconclusive";
  }
  return "?";
}

namespace {

bool shifted_search(const Cone& cone, const std::vector<RatVec>& net, const RatVec& x, long k_max) {
  for (long k = 1; k <= k_max; ++k) {
    RatVec kx = scale(Rat(k), x);
    for (const auto& a : net) {
      if (brute_member(cone, add(a, kx))) return true;
    }
  }
  return false;
}

}  // namespace

BruteSign brute_phi(const ScaledOrderedGroup& quotient, const std::vector<RatVec>& neg_generators,
                    const RatVec& x, long k_max, long coeff_bound) {
  if (k_max < 1 || coeff_bound < 0) throw PreconditionError("brute_phi: bounds must be positive");
  if (x.size() != quotient.dim) throw DimensionMismatch("brute_phi: element length");
  if (is_zero(x)) return BruteSign::Zero;
  std::vector<RatVec> net{zeros(quotient.dim)};
  for (const auto& g : neg_generators) {
    std::vector<RatVec> next;
    for (const auto& a : net) {
      for (long c = 0; c <= coeff_bound; ++c) next.push_back(add(a, scale(Rat(c), g)));
    }
    net = std::move(next);
  }
  if (shifted_search(quotient.cone, net, x, k_max)) return BruteSign::Pos;
  if (shifted_search(quotient.cone, net, neg(x), k_max)) return BruteSign::Neg;
  return BruteSign::Inconclusive;
}

bool brute_infinitesimal(const ScaledOrderedGroup& g, const RatVec& x, long n_max) {
  if (n_max < 1) throw PreconditionError("brute_infinitesimal: n_max must be at least 1");
  for (long n = -n_max; n <= n_max; ++n) {
    if (!brute_member(g.cone, add(g.unit, scale(Rat(n), x)))) return false;
  }
  return true;
}

// ---- reduction by literal case matching ----

namespace {

struct Work {
  LongVec blocks;
  std::vector<Cell> cells;
  LongVec y;
  LongMat s;
  LongMat map;  // current coordinates x original coordinates
};

void remove_coordinate(Work& w, std::size_t coord) {
  w.y.erase(w.y.begin() + static_cast<long>(coord));
  for (auto& g : w.s) g.erase(g.begin() + static_cast<long>(coord));
  w.map.erase(w.map.begin() + static_cast<long>(coord));
}

bool positive_pure_support(const Work& w, std::size_t t) {
  // c over the S generators with c.S zero on cells, >= 0 on blocks, >= 1 at block t
  const std::size_t b = w.blocks.size();
  const std::size_t vars = w.s.size();
  if (vars == 0) return false;
  std::vector<LinConstraint> sys;
  for (std::size_t j = 0; j < b + w.cells.size(); ++j) {
    RatVec row(vars);
    for (std::size_t k = 0; k < vars; ++k) row[k] = w.s[k][j];
    if (j >= b) {
      sys.push_back({row, Rel::Eq, Rat(0)});
    } else {
      sys.push_back({row, Rel::Ge, Rat(j == t ? 1 : 0)});
    }
  }
  return lp(std::nullopt, sys, vars, Strictness::Weaken, false).feasible();
}

}  // namespace

ReductionResult brute_reduce(const NcccDescriptor& d, const LongMat& s, const RankClass& y) {
  const std::size_t b = d.blocks.size();
  if (y.y.size() != b + d.cells.size()) throw DimensionMismatch("brute_reduce: rank vector length");
  for (long v : y.y) {
    if (v < 0) throw PreconditionError("brute_reduce: rank class is not almost positive");
  }
  Work w{d.blocks, d.cells, y.y, s, {}};
  for (std::size_t i = 0; i < y.y.size(); ++i) {
    LongVec row(y.y.size(), 0);
    row[i] = 1;
    w.map.push_back(row);
  }
  ReductionResult res;
  for (;;) {
    const std::size_t l = w.cells.size();
    if (l == 0) break;
    if (w.y[b + l - 1] > 0) {
      res.case_trace.push_back({CaseKind::DropLast, l, l});
      w.cells.pop_back();
      remove_coordinate(w, b + l - 1);
      continue;
    }
    if (std::all_of(w.y.begin(), w.y.end(), [](long v) { return v == 0; })) {
      res.case_trace.push_back({CaseKind::Zero, 0, l});
      res.split = Split{{}, NcccDescriptor{w.blocks, w.cells}};
      break;
    }
    std::size_t j = 0;
    for (std::size_t i = 1; i <= l; ++i) {
      if (w.y[b + i - 1] > 0) j = i;
    }
    if (j == 0) {
      res.case_trace.push_back({CaseKind::BaseSplit, 0, l});
      Split sp;
      for (std::size_t t = 0; t < b; ++t) {
        if (positive_pure_support(w, t)) sp.f1.push_back(t + 1);
      }
      for (std::size_t t = 0; t < b; ++t) {
        if (std::find(sp.f1.begin(), sp.f1.end(), t + 1) == sp.f1.end()) sp.b.blocks.push_back(w.blocks[t]);
      }
      for (std::size_t i = 0; i < l; ++i) {
        Cell c{w.cells[i].n, w.cells[i].r, {}};
        for (std::size_t t = 0; t < w.cells[i].mult.size(); ++t) {
          bool split_block = t < b && std::find(sp.f1.begin(), sp.f1.end(), t + 1) != sp.f1.end();
          if (!split_block) {
            c.mult.push_back(w.cells[i].mult[t]);
          } else if (w.cells[i].mult[t] != 0) {
            throw PreconditionError("brute_reduce: cell multiplicity on a split block");
          }
        }
        sp.b.cells.push_back(std::move(c));
      }
      res.split = std::move(sp);
      break;
    }
    // delete cell j, rerouting later references through its boundary
    if (w.cells[j - 1].n == 0) throw PreconditionError("brute_reduce: cannot delete a point cell");
    res.case_trace.push_back({CaseKind::DeleteInner, j, l});
    const std::size_t coord = b + j - 1;
    const LongVec through = w.cells[j - 1].mult;
    for (std::size_t i = j; i < l; ++i) {
      LongVec& m = w.cells[i].mult;
      for (std::size_t t = 0; t < coord; ++t) m[t] += m[coord] * through[t];
      m.erase(m.begin() + static_cast<long>(coord));
    }
    w.cells.erase(w.cells.begin() + static_cast<long>(j - 1));
    remove_coordinate(w, coord);
  }
  res.reduced = NcccDescriptor{w.blocks, w.cells};
  res.rank_map = w.map;
  res.image_y = w.y;
  return res;
}

}  // namespace k0bench
