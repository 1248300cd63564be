#include <stdexcept>

#include "k0bench/ratlin.hpp"

namespace k0bench {

namespace {

// Dense simplex tableau. Column `ncols` holds the right-hand side.
struct Tableau {
  RatMat t;
  RatVec z;  // reduced costs; z[ncols] is minus the objective value
  std::vector<std::size_t> basis;
  std::size_t ncols = 0;

  void pivot(std::size_t r, std::size_t c) {
    Rat inv = 1 / t[r][c];
    for (auto& x : t[r]) {
      if (sgn(x) != 0) x *= inv;
    }
    const RatVec& pr = t[r];
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i == r || sgn(t[i][c]) == 0) continue;
      Rat f = t[i][c];
      for (std::size_t j = 0; j <= ncols; ++j) {
        if (sgn(pr[j]) != 0) t[i][j] -= f * pr[j];
      }
    }
    if (sgn(z[c]) != 0) {
      Rat f = z[c];
      for (std::size_t j = 0; j <= ncols; ++j) {
        if (sgn(pr[j]) != 0) z[j] -= f * pr[j];
      }
    }
    basis[r] = c;
  }

  // Runs Bland's rule over columns [0, active). Returns false if unbounded (column in *ucol).
  bool optimise(std::size_t active, std::size_t* ucol) {
    for (;;) {
      std::size_t enter = active;
      for (std::size_t j = 0; j < active; ++j) {
        if (sgn(z[j]) > 0) {
          enter = j;
          break;
        }
      }
      if (enter == active) return true;
      std::size_t leave = t.size();
      Rat best;
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (sgn(t[i][enter]) <= 0) continue;
        Rat ratio = t[i][ncols] / t[i][enter];
        if (leave == t.size() || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == t.size()) {
        if (ucol) *ucol = enter;
        return false;
      }
      pivot(leave, enter);
    }
  }
};

}  // namespace

StdLpResult simplex(const RatMat& a, const RatVec& b, const RatVec* c, std::size_t nvars) {
  if (a.size() != b.size()) throw DimensionMismatch("simplex: rows vs rhs");
  if (c && c->size() != nvars) throw DimensionMismatch("simplex: objective length");
  const std::size_t m = a.size();
  Tableau tab;
  tab.ncols = nvars + m;
  tab.t.assign(m, zeros(tab.ncols + 1));
  tab.basis.resize(m);
  tab.z = zeros(tab.ncols + 1);
  for (std::size_t i = 0; i < m; ++i) {
    if (a[i].size() != nvars) throw DimensionMismatch("simplex: ragged matrix");
    bool flip = sgn(b[i]) < 0;
    for (std::size_t j = 0; j < nvars; ++j) tab.t[i][j] = flip ? Rat(-a[i][j]) : a[i][j];
    tab.t[i][nvars + i] = 1;
    tab.t[i][tab.ncols] = flip ? Rat(-b[i]) : b[i];
    tab.basis[i] = nvars + i;
    for (std::size_t j = 0; j < nvars; ++j) tab.z[j] += tab.t[i][j];
    tab.z[tab.ncols] += tab.t[i][tab.ncols];
  }
  tab.optimise(nvars, nullptr);
  StdLpResult res;
  if (sgn(tab.z[tab.ncols]) != 0) {
    res.status = StdLpResult::Status::Infeasible;
    return res;
  }
  // Drive remaining artificials out of the basis; drop redundant rows.
  for (std::size_t i = 0; i < tab.t.size();) {
    if (tab.basis[i] < nvars) {
      ++i;
      continue;
    }
    std::size_t col = nvars;
    for (std::size_t j = 0; j < nvars; ++j) {
      if (sgn(tab.t[i][j]) != 0) {
        col = j;
        break;
      }
    }
    if (col == nvars) {
      tab.t.erase(tab.t.begin() + static_cast<long>(i));
      tab.basis.erase(tab.basis.begin() + static_cast<long>(i));
      continue;
    }
    tab.pivot(i, col);
    ++i;
  }
  if (c) {
    tab.z = zeros(tab.ncols + 1);
    for (std::size_t j = 0; j < nvars; ++j) tab.z[j] = (*c)[j];
    for (std::size_t i = 0; i < tab.t.size(); ++i) {
      const Rat cb = (*c)[tab.basis[i]];
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j <= tab.ncols; ++j) {
        if (sgn(tab.t[i][j]) != 0) tab.z[j] -= cb * tab.t[i][j];
      }
    }
    std::size_t ucol = 0;
    if (!tab.optimise(nvars, &ucol)) {
      res.status = StdLpResult::Status::Unbounded;
      res.unbounded_column = ucol;
    } else {
      res.status = StdLpResult::Status::Optimal;
    }
  } else {
    res.status = StdLpResult::Status::Optimal;
  }
  res.z = zeros(nvars);
  for (std::size_t i = 0; i < tab.t.size(); ++i) res.z[tab.basis[i]] = tab.t[i][tab.ncols];
  res.value = c ? dot(*c, res.z) : Rat(0);
  return res;
}

namespace {

struct StdForm {
  RatMat a;
  RatVec b;
  std::size_t nvars = 0;
  std::size_t dim = 0;
  std::size_t t_col = 0;  // column of the strict slack variable when present
};

// x = p - q, one surplus per inequality; optional strict slack t with t <= 1.
StdForm to_standard(const std::vector<LinConstraint>& cons, std::size_t dim, bool with_t) {
  std::size_t nineq = 0;
  for (const auto& c : cons) {
    if (c.coeffs.size() != dim) throw DimensionMismatch("lp: constraint length");
    if (c.rel != Rel::Eq) ++nineq;
  }
  StdForm f;
  f.dim = dim;
  f.nvars = 2 * dim + nineq + (with_t ? 2 : 0);
  f.t_col = 2 * dim + nineq;
  std::size_t s = 2 * dim;
  for (const auto& c : cons) {
    RatVec row = zeros(f.nvars);
    for (std::size_t j = 0; j < dim; ++j) {
      row[j] = c.coeffs[j];
      row[dim + j] = -c.coeffs[j];
    }
    if (c.rel != Rel::Eq) row[s++] = -1;
    if (with_t && c.rel == Rel::Gt) row[f.t_col] = -1;
    f.a.push_back(std::move(row));
    f.b.push_back(c.rhs);
  }
  if (with_t) {
    RatVec row = zeros(f.nvars);
    row[f.t_col] = 1;
    row[f.t_col + 1] = 1;
    f.a.push_back(std::move(row));
    f.b.push_back(1);
  }
  return f;
}

RatVec recover_x(const StdForm& f, const RatVec& z) {
  RatVec x(f.dim);
  for (std::size_t j = 0; j < f.dim; ++j) x[j] = z[j] - z[f.dim + j];
  return x;
}

std::vector<LinConstraint> weakened(const std::vector<LinConstraint>& cons) {
  std::vector<LinConstraint> w = cons;
  for (auto& c : w) {
    if (c.rel == Rel::Gt) c.rel = Rel::Ge;
  }
  return w;
}

// Multipliers y: y_i >= 0 on inequality rows, sum y_i a_i = 0, and either sum y_i b_i = 1
// (weak certificate) or sum y_i b_i >= 0 with unit weight on strict rows.
RatVec farkas_for(const std::vector<LinConstraint>& cons, std::size_t dim, bool strict) {
  const std::size_t m = cons.size();
  std::vector<LinConstraint> dual;
  for (std::size_t i = 0; i < m; ++i) {
    if (cons[i].rel != Rel::Eq) dual.push_back({unit_vector(m, i), Rel::Ge, Rat(0)});
  }
  for (std::size_t j = 0; j < dim; ++j) {
    RatVec row(m);
    for (std::size_t i = 0; i < m; ++i) row[i] = cons[i].coeffs[j];
    dual.push_back({std::move(row), Rel::Eq, Rat(0)});
  }
  RatVec brow(m);
  for (std::size_t i = 0; i < m; ++i) brow[i] = cons[i].rhs;
  if (!strict) {
    dual.push_back({brow, Rel::Eq, Rat(1)});
  } else {
    dual.push_back({brow, Rel::Ge, Rat(0)});
    RatVec w = zeros(m);
    for (std::size_t i = 0; i < m; ++i) {
      if (cons[i].rel == Rel::Gt) w[i] = 1;
    }
    dual.push_back({w, Rel::Eq, Rat(1)});
  }
  LpOutcome out = lp(std::nullopt, dual, m, Strictness::Weaken);
  if (!out.feasible()) throw std::logic_error("lp: Farkas system unexpectedly infeasible");
  return out.point;
}

}  // namespace

LpOutcome lp(const std::optional<RatVec>& objective, const std::vector<LinConstraint>& constraints,
             std::size_t dim, Strictness strictness, bool certify) {
  bool has_strict = false;
  for (const auto& c : constraints) has_strict = has_strict || c.rel == Rel::Gt;
  if (strictness == Strictness::Weaken && has_strict) {
    return lp(objective, weakened(constraints), dim, strictness, certify);
  }
  if (objective && objective->size() != dim) throw DimensionMismatch("lp: objective length");
  if (has_strict && objective) {
    throw std::invalid_argument("lp: objectives with strict rows are not supported");
  }
  LpOutcome out;
  if (!has_strict) {
    StdForm f = to_standard(constraints, dim, false);
    RatVec c;
    if (objective) {
      c = zeros(f.nvars);
      for (std::size_t j = 0; j < dim; ++j) {
        c[j] = (*objective)[j];
        c[dim + j] = -(*objective)[j];
      }
    }
    StdLpResult r = simplex(f.a, f.b, objective ? &c : nullptr, f.nvars);
    if (r.status == StdLpResult::Status::Infeasible) {
      out.kind = LpOutcome::Kind::Infeasible;
      if (certify) out.farkas = farkas_for(constraints, dim, false);
      return out;
    }
    out.point = recover_x(f, r.z);
    if (!objective) {
      out.kind = LpOutcome::Kind::Feasible;
      return out;
    }
    if (r.status == StdLpResult::Status::Unbounded) {
      out.kind = LpOutcome::Kind::Unbounded;
      std::vector<LinConstraint> rec;
      for (const auto& con : constraints) rec.push_back({con.coeffs, con.rel, Rat(0)});
      rec.push_back({*objective, Rel::Eq, Rat(1)});
      LpOutcome ray = lp(std::nullopt, rec, dim, Strictness::Weaken);
      if (!ray.feasible()) throw std::logic_error("lp: recession system unexpectedly infeasible");
      out.ray = ray.point;
      return out;
    }
    out.kind = LpOutcome::Kind::Bounded;
    out.value = dot(*objective, out.point);
    return out;
  }
  // Strict rows: the weak relaxation first, then the minimum strict slack.
  LpOutcome weak = lp(std::nullopt, weakened(constraints), dim, Strictness::Weaken, certify);
  if (!weak.feasible()) return weak;
  StdForm f = to_standard(constraints, dim, true);
  RatVec c = zeros(f.nvars);
  c[f.t_col] = 1;
  StdLpResult r = simplex(f.a, f.b, &c, f.nvars);
  if (r.status == StdLpResult::Status::Optimal && sgn(r.value) > 0) {
    out.kind = LpOutcome::Kind::Feasible;
    out.point = recover_x(f, r.z);
    return out;
  }
  out.kind = LpOutcome::Kind::Infeasible;
  if (certify) out.farkas = farkas_for(constraints, dim, true);
  return out;
}

bool satisfies(const std::vector<LinConstraint>& constraints, const RatVec& point) {
  for (const auto& c : constraints) {
    if (c.coeffs.size() != point.size()) return false;
    Rat v = dot(c.coeffs, point);
    switch (c.rel) {
      case Rel::Ge:
        if (v < c.rhs) return false;
        break;
      case Rel::Gt:
        if (v <= c.rhs) return false;
        break;
      case Rel::Eq:
        if (v != c.rhs) return false;
        break;
    }
  }
  return true;
}

bool check_farkas(const std::vector<LinConstraint>& constraints, const RatVec& farkas) {
  if (farkas.size() != constraints.size() || constraints.empty()) return false;
  const std::size_t dim = constraints[0].coeffs.size();
  RatVec combo = zeros(dim);
  Rat rhs = 0;
  Rat strict_weight = 0;
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    const auto& c = constraints[i];
    if (c.coeffs.size() != dim) return false;
    if (c.rel != Rel::Eq && sgn(farkas[i]) < 0) return false;
    if (c.rel == Rel::Gt) strict_weight += farkas[i];
    combo = add(combo, scale(farkas[i], c.coeffs));
    rhs += farkas[i] * c.rhs;
  }
  if (!is_zero(combo)) return false;
  return sgn(rhs) > 0 || (sgn(rhs) == 0 && sgn(strict_weight) > 0);
}

bool check_ray(const RatVec& objective, const std::vector<LinConstraint>& constraints,
               const RatVec& ray) {
  if (sgn(dot(objective, ray)) <= 0) return false;
  for (const auto& c : constraints) {
    Rat v = dot(c.coeffs, ray);
    if (c.rel == Rel::Eq ? sgn(v) != 0 : sgn(v) < 0) return false;
  }
  return true;
}

std::optional<RatVec> nonneg_combination(const std::vector<RatVec>& gens, const RatVec& x,
                                         std::size_t dim) {
  if (x.size() != dim) throw DimensionMismatch("nonneg_combination: vector length");
  if (gens.empty()) {
    if (is_zero(x)) return RatVec{};
    return std::nullopt;
  }
  RatMat a = transpose(gens, dim);
  StdLpResult r = simplex(a, x, nullptr, gens.size());
  if (r.status == StdLpResult::Status::Infeasible) return std::nullopt;
  return r.z;
}

}  // namespace k0bench
