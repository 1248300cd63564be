#include "k0bench/nccc.hpp"

#include <set>

#include "k0bench/ratlin.hpp"

namespace k0bench {

long NcccDescriptor::size_of(std::size_t coord) const {
  if (coord < blocks.size()) return blocks[coord];
  if (coord < coords()) return cells[coord - blocks.size()].r;
  throw DimensionMismatch("size_of: coordinate out of range");
}

std::vector<Diagnostic> validate(const NcccDescriptor& d) {
  std::vector<Diagnostic> out;
  for (std::size_t t = 0; t < d.blocks.size(); ++t) {
    if (d.blocks[t] < 1) {
      out.push_back({0, 0, "block " + std::to_string(t + 1) + " has size " +
                               std::to_string(d.blocks[t]) + " < 1"});
    }
  }
  for (std::size_t i = 0; i < d.cells.size(); ++i) {
    const Cell& c = d.cells[i];
    const std::size_t earlier = d.blocks.size() + i;
    const std::string name = "cell " + std::to_string(i + 1);
    if (c.n < 0) out.push_back({i + 1, 0, name + " has negative dimension"});
    if (c.r < 1) out.push_back({i + 1, 0, name + " has fiber size < 1"});
    if (c.mult.size() != earlier) {
      out.push_back({i + 1, 0, name + " has " + std::to_string(c.mult.size()) +
                                   " multiplicities, expected " + std::to_string(earlier)});
      continue;
    }
    bool negative = false;
    for (long m : c.mult) negative = negative || m < 0;
    if (negative) out.push_back({i + 1, 0, name + " has a negative multiplicity"});
    if (c.n == 0) continue;  // a point has no boundary to balance
    long mass = 0;
    for (std::size_t t = 0; t < earlier; ++t) mass += c.mult[t] * d.size_of(t);
    if (mass != c.r) {
      out.push_back({i + 1, c.r - mass, name + " mass imbalance: r = " + std::to_string(c.r) +
                                            ", sum mult * size = " + std::to_string(mass)});
    }
  }
  return out;
}

void require_valid(const NcccDescriptor& d) {
  auto diags = validate(d);
  if (diags.empty()) return;
  std::string msg = "invalid descriptor:";
  for (const auto& g : diags) msg += " [" + g.message + "]";
  throw PreconditionError(msg);
}

void check_membership(const RankClass& y, const LongMat& s) {
  if (!y.s_membership) return;
  const LongVec& c = *y.s_membership;
  if (c.size() != s.size()) throw PreconditionError("rank class witness has the wrong length");
  LongVec sum(y.y.size(), 0);
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k].size() != y.y.size()) throw DimensionMismatch("S generator length");
    for (std::size_t j = 0; j < sum.size(); ++j) sum[j] += c[k] * s[k][j];
  }
  if (sum != y.y) throw PreconditionError("rank class witness does not reproduce y");
}

bool almost_positive(const RankClass& y) {
  for (long v : y.y) {
    if (v < 0) return false;
  }
  return true;
}

std::vector<std::size_t> w_set(const NcccDescriptor& d, const RankClass& y) {
  if (y.y.size() != d.coords()) throw DimensionMismatch("w_set: rank vector length");
  std::vector<std::size_t> w;
  for (std::size_t i = 0; i < d.length(); ++i) {
    if (y.y[d.blocks.size() + i] > 0) w.push_back(i + 1);
  }
  return w;
}

LongVec apply_map(const LongMat& m, const LongVec& y) {
  LongVec out;
  for (const auto& row : m) {
    if (row.size() != y.size()) throw DimensionMismatch("apply: length");
    long v = 0;
    for (std::size_t j = 0; j < y.size(); ++j) v += row[j] * y[j];
    out.push_back(v);
  }
  return out;
}

namespace {

LongMat drop_projection(std::size_t coords, std::size_t drop) {
  LongMat p;
  for (std::size_t j = 0; j < coords; ++j) {
    if (j == drop) continue;
    LongVec row(coords, 0);
    row[j] = 1;
    p.push_back(std::move(row));
  }
  return p;
}

LongMat compose(const LongMat& a, const LongMat& b) {
  // a * b
  const std::size_t inner = b.size();
  const std::size_t cols = b.empty() ? 0 : b.front().size();
  LongMat out(a.size(), LongVec(cols, 0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  }
  return out;
}

LongMat identity_long(std::size_t n) {
  LongMat m(n, LongVec(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

LongMat map_gens(const LongMat& p, const LongMat& s) {
  LongMat out;
  for (const auto& g : s) out.push_back(apply_map(p, g));
  return out;
}

// Block indices t with some nonnegative element of the lattice supported on t.
std::vector<std::size_t> gamma_support(std::size_t b, std::size_t l, const LongMat& s, LongVec* gamma) {
  IntMat cell_rows;
  for (const auto& g : s) {
    IntVec row;
    for (std::size_t j = 0; j < l; ++j) row.push_back(Int(g[b + j]));
    cell_rows.push_back(std::move(row));
  }
  IntMat rel;
  if (l == 0) {
    for (std::size_t k = 0; k < s.size(); ++k) {
      IntVec e(s.size(), Int(0));
      e[k] = 1;
      rel.push_back(std::move(e));
    }
  } else if (!s.empty()) {
    rel = integer_left_kernel(cell_rows, l);
  }
  std::vector<RatVec> lat;
  for (const auto& c : rel) {
    RatVec a = zeros(b);
    for (std::size_t k = 0; k < s.size(); ++k) {
      for (std::size_t t = 0; t < b; ++t) a[t] += Rat(c[k]) * Rat(s[k][t]);
    }
    if (!is_zero(a)) lat.push_back(std::move(a));
  }
  std::vector<std::size_t> support;
  RatVec total = zeros(b);
  for (std::size_t t = 0; t < b && !lat.empty(); ++t) {
    const std::size_t vars = lat.size();
    std::vector<LinConstraint> sys;
    for (std::size_t j = 0; j < b; ++j) {
      RatVec row(vars);
      for (std::size_t k = 0; k < vars; ++k) row[k] = lat[k][j];
      sys.push_back({row, Rel::Ge, Rat(j == t ? 1 : 0)});
    }
    LpOutcome o = lp(std::nullopt, sys, vars, Strictness::Weaken, false);
    if (!o.feasible()) continue;
    support.push_back(t + 1);
    Int den = 1;
    for (const auto& mu : o.point) den = lcm(den, Int(mu.get_den()));
    for (std::size_t k = 0; k < vars; ++k) total = add(total, scale(o.point[k] * Rat(den), lat[k]));
  }
  if (gamma) {
    gamma->assign(b, 0);
    for (std::size_t t = 0; t < b; ++t) (*gamma)[t] = total[t].get_num().get_si();
  }
  return support;
}

}  // namespace

Deletion delete_cell(const NcccDescriptor& d, std::size_t j) {
  if (j < 1 || j >= d.length()) {
    throw PreconditionError("delete_cell: cell " + std::to_string(j) + " out of range 1.." +
                            std::to_string(d.length() == 0 ? 0 : d.length() - 1));
  }
  const Cell& gone = d.cells[j - 1];
  if (gone.n == 0) {
    throw PreconditionError("delete_cell: cell " + std::to_string(j) +
                            " is a point with no boundary to reroute through");
  }
  const std::size_t b = d.blocks.size();
  const std::size_t coord = b + j - 1;
  Deletion out;
  out.descriptor.blocks = d.blocks;
  for (std::size_t i = 0; i < d.length(); ++i) {
    if (i == j - 1) continue;
    Cell c = d.cells[i];
    if (i > j - 1) {
      const long via = c.mult[coord];
      for (std::size_t t = 0; t < coord; ++t) c.mult[t] += via * gone.mult[t];
      c.mult.erase(c.mult.begin() + static_cast<long>(coord));
    }
    out.descriptor.cells.push_back(std::move(c));
  }
  out.projection = drop_projection(d.coords(), coord);
  return out;
}

GammaSplit gamma_split(const NcccDescriptor& d, const LongMat& s) {
  const std::size_t b = d.blocks.size();
  for (const auto& g : s) {
    if (g.size() != d.coords()) throw DimensionMismatch("gamma_split: S generator length");
  }
  GammaSplit out;
  out.f1 = gamma_support(b, d.length(), s, &out.gamma);
  std::vector<bool> in_f1(b, false);
  for (auto t : out.f1) in_f1[t - 1] = true;
  std::vector<std::size_t> keep;
  for (std::size_t t = 0; t < b; ++t) {
    if (!in_f1[t]) {
      keep.push_back(t);
      out.b.blocks.push_back(d.blocks[t]);
    }
  }
  for (std::size_t i = 0; i < d.length(); ++i) {
    Cell c = d.cells[i];
    LongVec mult;
    for (std::size_t t = 0; t < c.mult.size(); ++t) {
      if (t < b && in_f1[t]) {
        if (c.mult[t] != 0) {
          throw PreconditionError("gamma_split: inconsistent input, cell " + std::to_string(i + 1) +
                                  " has multiplicity " + std::to_string(c.mult[t]) +
                                  " on split block " + std::to_string(t + 1));
        }
        continue;
      }
      mult.push_back(c.mult[t]);
    }
    c.mult = std::move(mult);
    out.b.cells.push_back(std::move(c));
  }
  for (std::size_t i = 0; i < d.length(); ++i) keep.push_back(b + i);
  for (const auto& g : s) {
    LongVec r;
    for (auto k : keep) r.push_back(g[k]);
    out.b_s.push_back(std::move(r));
  }
  if (!gamma_support(out.b.blocks.size(), out.b.length(), out.b_s, nullptr).empty()) {
    throw std::logic_error("gamma_split: the complementary part still has a positive pure element");
  }
  return out;
}

std::string to_string(const CaseStep& s) {
  std::string out = "case" + std::to_string(static_cast<int>(s.kind)) + "(length=" + std::to_string(s.length);
  if (s.kind == CaseKind::DropLast || s.kind == CaseKind::DeleteInner) out += ",cell=" + std::to_string(s.cell);
  return out + ")";
}

ReductionResult reduce(const NcccDescriptor& d, const LongMat& s, const RankClass& y) {
  require_valid(d);
  if (y.y.size() != d.coords()) throw DimensionMismatch("reduce: rank vector length");
  if (!almost_positive(y)) throw PreconditionError("reduce: rank class is not almost positive");
  ReductionResult res;
  res.reduced = d;
  res.rank_map = identity_long(d.coords());
  LongVec cur = y.y;
  LongMat cur_s = s;
  const std::size_t b = d.blocks.size();
  while (res.reduced.length() > 0) {
    NcccDescriptor& a = res.reduced;
    const std::size_t l = a.length();
    CaseStep step;
    step.length = l;
    LongMat p;
    bool all_zero = true;
    for (long v : cur) all_zero = all_zero && v == 0;
    std::vector<std::size_t> w = w_set(a, RankClass{cur, std::nullopt});
    if (cur[b + l - 1] > 0) {
      step.kind = CaseKind::DropLast;
      step.cell = l;
      p = drop_projection(a.coords(), b + l - 1);
      a.cells.pop_back();
    } else if (all_zero) {
      step.kind = CaseKind::Zero;
      res.case_trace.push_back(step);
      res.split = Split{{}, a};
      break;
    } else if (w.empty()) {
      step.kind = CaseKind::BaseSplit;
      res.case_trace.push_back(step);
      GammaSplit g = gamma_split(a, cur_s);
      res.split = Split{g.f1, g.b};
      break;
    } else {
      step.kind = CaseKind::DeleteInner;
      step.cell = w.back();
      Deletion del = delete_cell(a, step.cell);
      p = std::move(del.projection);
      a = std::move(del.descriptor);
    }
    res.case_trace.push_back(step);
    res.rank_map = compose(p, res.rank_map);
    cur = apply_map(p, cur);
    cur_s = map_gens(p, cur_s);
  }
  res.image_y = apply_map(res.rank_map, y.y);
  return res;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::PositiveAfterStabilization:
      return "PositiveAfterStabilization";
    case Verdict::InfinitesimalPart:
      return "InfinitesimalPart";
    case Verdict::NotAlmostPositive:
      return "NotAlmostPositive";
    case Verdict::MixedSingular:
      return "MixedSingular";
  }
  return "?";
}

Classification classify(const NcccDescriptor& d, const LongMat& s, const RankClass& y) {
  require_valid(d);
  if (y.y.size() != d.coords()) throw DimensionMismatch("classify: rank vector length");
  check_membership(y, s);
  Classification c;
  std::optional<std::size_t> negative, positive;
  for (std::size_t j = 0; j < y.y.size(); ++j) {
    if (y.y[j] < 0 && !negative) negative = j + 1;
    if (y.y[j] > 0 && !positive) positive = j + 1;
  }
  if (negative) {
    c.witness.push_back(*negative);
    if (positive) {
      c.verdict = Verdict::MixedSingular;
      c.witness.push_back(*positive);
    } else {
      c.verdict = Verdict::NotAlmostPositive;
    }
    return c;
  }
  ReductionResult r = reduce(d, s, y);
  for (const auto& cell : r.reduced.cells) c.dimension = std::max(c.dimension, cell.n);
  bool strict = !r.image_y.empty();
  for (long v : r.image_y) strict = strict && v > 0;
  c.rank_threshold_met = strict;
  for (long v : r.image_y) c.rank_threshold_met = c.rank_threshold_met && 2 * v > c.dimension - 1;
  if (strict && !r.split) {
    c.verdict = Verdict::PositiveAfterStabilization;
  } else {
    c.verdict = Verdict::InfinitesimalPart;
    if (r.split) {
      c.split = r.split;
    } else {
      // reduction stopped at length zero with a zero coordinate left
      LongMat mapped;
      for (const auto& g : s) mapped.push_back(apply_map(r.rank_map, g));
      bool zero = true;
      for (long v : r.image_y) zero = zero && v == 0;
      if (zero) {
        c.split = Split{{}, r.reduced};
      } else {
        GammaSplit g = gamma_split(r.reduced, mapped);
        c.split = Split{g.f1, g.b};
      }
    }
  }
  c.reduction = std::move(r);
  return c;
}

Census finiteness_census(const NcccDescriptor& d, const std::vector<RankClass>& ys, const LongMat& s) {
  Census c;
  c.bound = std::size_t{1} << (d.length() + 1);
  std::set<std::string> descs, maps;
  for (const auto& y : ys) {
    ++c.classes;
    if (!almost_positive(y)) {
      ++c.skipped;
      continue;
    }
    ReductionResult r = reduce(d, s, y);
    std::string key;
    for (long v : r.reduced.blocks) key += std::to_string(v) + ",";
    for (const auto& cell : r.reduced.cells) {
      key += "|" + std::to_string(cell.n) + ":" + std::to_string(cell.r) + ":";
      for (long m : cell.mult) key += std::to_string(m) + ",";
    }
    descs.insert(key);
    std::string mk;
    for (const auto& row : r.rank_map) {
      for (long v : row) mk += std::to_string(v) + ",";
      mk += ";";
    }
    maps.insert(mk);
  }
  c.distinct_descriptors = descs.size();
  c.distinct_rank_maps = maps.size();
  if (!c.within_bound()) throw std::logic_error("finiteness_census: count exceeds 2^(l+1)");
  return c;
}

}  // namespace k0bench
