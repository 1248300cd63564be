#include <algorithm>
#include <sstream>

#include "k0bench/ratlin.hpp"

namespace k0bench {

namespace {

void check_same(const RatVec& a, const RatVec& b, const char* op) {
  if (a.size() != b.size()) {
    throw DimensionMismatch(std::string(op) + ": lengths " + std::to_string(a.size()) + " and " +
                            std::to_string(b.size()));
  }
}

}  // namespace

RatVec zeros(std::size_t n) { return RatVec(n, Rat(0)); }

RatVec unit_vector(std::size_t n, std::size_t i) {
  RatVec v = zeros(n);
  v.at(i) = 1;
  return v;
}

RatMat identity(std::size_t n) {
  RatMat m;
  for (std::size_t i = 0; i < n; ++i) m.push_back(unit_vector(n, i));
  return m;
}

RatVec ints(std::initializer_list<long> xs) {
  RatVec v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

Rat dot(const RatVec& a, const RatVec& b) {
  check_same(a, b, "dot");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
  }
  return s;
}

RatVec add(const RatVec& a, const RatVec& b) {
  check_same(a, b, "add");
  RatVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

RatVec sub(const RatVec& a, const RatVec& b) {
  check_same(a, b, "sub");
  RatVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

RatVec scale(const Rat& s, const RatVec& a) {
  RatVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

RatVec neg(const RatVec& a) {
  RatVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

bool is_zero(const RatVec& a) {
  return std::all_of(a.begin(), a.end(), [](const Rat& x) { return sgn(x) == 0; });
}

RatVec concat(const RatVec& a, const RatVec& b) {
  RatVec r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

RatVec slice(const RatVec& a, std::size_t begin, std::size_t len) {
  if (begin + len > a.size()) throw DimensionMismatch("slice out of range");
  return RatVec(a.begin() + static_cast<long>(begin), a.begin() + static_cast<long>(begin + len));
}

RatVec mat_vec(const RatMat& m, const RatVec& x) {
  RatVec r(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) r[i] = dot(m[i], x);
  return r;
}

RatVec vec_mat(const RatVec& y, const RatMat& m, std::size_t ncols) {
  if (y.size() != m.size()) throw DimensionMismatch("vec_mat: row count");
  RatVec r = zeros(ncols);
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].size() != ncols) throw DimensionMismatch("vec_mat: column count");
    if (sgn(y[i]) == 0) continue;
    for (std::size_t j = 0; j < ncols; ++j) r[j] += y[i] * m[i][j];
  }
  return r;
}

RatMat mat_mul(const RatMat& a, const RatMat& b, std::size_t bcols) {
  RatMat r;
  r.reserve(a.size());
  for (const auto& row : a) r.push_back(vec_mat(row, b, bcols));
  return r;
}

RatMat transpose(const RatMat& m, std::size_t ncols) {
  RatMat t(ncols, RatVec(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].size() != ncols) throw DimensionMismatch("transpose: ragged matrix");
    for (std::size_t j = 0; j < ncols; ++j) t[j][i] = m[i][j];
  }
  return t;
}

RatVec primitive(const RatVec& v) {
  if (is_zero(v)) return v;
  Int l = 1;
  for (const auto& x : v) l = lcm(l, Int(x.get_den()));
  Int g = 0;
  for (const auto& x : v) {
    Int n = Int(x.get_num()) * (l / Int(x.get_den()));
    g = gcd(g, n);
  }
  RatVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Int n = Int(v[i].get_num()) * (l / Int(v[i].get_den()));
    r[i] = Rat(n / g);
  }
  return r;
}

std::string to_string(const Rat& q) {
  Rat c = q;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

std::string to_string(const RatVec& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ",";
    os << v[i].get_str();
  }
  os << ")";
  return os.str();
}

Rat parse_rat(const std::string& s) {
  auto valid_int = [](const std::string& t) {
    std::size_t i = 0;
    if (!t.empty() && (t[0] == '-' || t[0] == '+')) i = 1;
    if (i >= t.size()) return false;
    for (; i < t.size(); ++i) {
      if (t[i] < '0' || t[i] > '9') return false;
    }
    return true;
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+') {
    throw MalformedInput("not a rational: \"" + s + "\"");
  }
  if (num[0] == '+') num = num.substr(1);
  Int d(den);
  if (d == 0) throw MalformedInput("zero denominator: \"" + s + "\"");
  Rat q{Int(num), d};
  q.canonicalize();
  return q;
}

Rref rref(const RatMat& m, std::size_t ncols) {
  RatMat a = m;
  for (const auto& row : a) {
    if (row.size() != ncols) throw DimensionMismatch("rref: ragged matrix");
  }
  Rref out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && sgn(a[p][c]) == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    Rat inv = 1 / a[r][c];
    for (std::size_t j = c; j < ncols; ++j) a[r][j] *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || sgn(a[i][c]) == 0) continue;
      Rat f = a[i][c];
      for (std::size_t j = c; j < ncols; ++j) {
        if (sgn(a[r][j]) != 0) a[i][j] -= f * a[r][j];
      }
    }
    out.pivots.push_back(c);
    ++r;
  }
  a.resize(r);
  out.rows = std::move(a);
  return out;
}

std::size_t rank(const RatMat& m, std::size_t ncols) { return rref(m, ncols).rows.size(); }

std::optional<RatVec> solve_linear(const RatMat& m, const RatVec& b, std::size_t ncols) {
  if (m.size() != b.size()) throw DimensionMismatch("solve_linear: rows vs rhs");
  RatMat aug;
  aug.reserve(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].size() != ncols) throw DimensionMismatch("solve_linear: ragged matrix");
    RatVec row = m[i];
    row.push_back(b[i]);
    aug.push_back(std::move(row));
  }
  Rref r = rref(aug, ncols + 1);
  RatVec x = zeros(ncols);
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    if (r.pivots[i] == ncols) return std::nullopt;
    x[r.pivots[i]] = r.rows[i][ncols];
  }
  return x;
}

std::optional<RatVec> solve_linear(const RatMat& m, const RatVec& b) {
  if (m.empty()) throw DimensionMismatch("solve_linear: empty matrix needs an explicit width");
  return solve_linear(m, b, m[0].size());
}

std::vector<RatVec> kernel_basis(const RatMat& m, std::size_t ncols) {
  Rref r = rref(m, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (auto p : r.pivots) is_pivot[p] = true;
  std::vector<RatVec> basis;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    RatVec v = zeros(ncols);
    v[f] = 1;
    for (std::size_t i = 0; i < r.rows.size(); ++i) v[r.pivots[i]] = -r.rows[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<RatVec> kernel_basis(const RatMat& m) {
  if (m.empty()) throw DimensionMismatch("kernel_basis: empty matrix needs an explicit width");
  return kernel_basis(m, m[0].size());
}

std::vector<RatVec> span_basis(const std::vector<RatVec>& vs, std::size_t dim) {
  return rref(vs, dim).rows;
}

std::vector<RatVec> annihilator(const std::vector<RatVec>& vs, std::size_t dim) {
  return kernel_basis(vs, dim);
}

bool in_span(const std::vector<RatVec>& vs, const RatVec& x) {
  return span_coefficients(vs, x).has_value();
}

bool same_span(const std::vector<RatVec>& a, const std::vector<RatVec>& b, std::size_t dim) {
  return span_basis(a, dim) == span_basis(b, dim);
}

std::optional<RatVec> span_coefficients(const std::vector<RatVec>& vs, const RatVec& x) {
  if (vs.empty()) {
    if (is_zero(x)) return RatVec{};
    return std::nullopt;
  }
  for (const auto& v : vs) {
    if (v.size() != x.size()) throw DimensionMismatch("span_coefficients: length");
  }
  return solve_linear(transpose(vs, x.size()), x, vs.size());
}

}  // namespace k0bench
