#include <algorithm>
#include <stdexcept>

#include "k0bench/ratlin.hpp"

namespace k0bench {

namespace {

constexpr std::size_t kMaxFacetSubsets = 2000000;

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > kMaxFacetSubsets) return r;
  }
  return r;
}

bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<RatVec> reduce_generators(const std::vector<RatVec>& gens, std::size_t dim) {
  std::vector<RatVec> uniq;
  for (const auto& g : gens) {
    if (g.size() != dim) throw DimensionMismatch("reduce_generators: generator length");
    if (is_zero(g)) continue;
    RatVec p = primitive(g);
    if (std::find(uniq.begin(), uniq.end(), p) == uniq.end()) uniq.push_back(std::move(p));
  }
  std::vector<bool> keep(uniq.size(), true);
  for (std::size_t i = 0; i < uniq.size(); ++i) {
    std::vector<RatVec> others;
    for (std::size_t j = 0; j < uniq.size(); ++j) {
      if (j != i && keep[j]) others.push_back(uniq[j]);
    }
    if (nonneg_combination(others, uniq[i], dim)) keep[i] = false;
  }
  std::vector<RatVec> out;
  for (std::size_t i = 0; i < uniq.size(); ++i) {
    if (keep[i]) out.push_back(uniq[i]);
  }
  return out;
}

std::vector<RatVec> relative_facets(const std::vector<RatVec>& gens_in, std::size_t dim) {
  std::vector<RatVec> gens = reduce_generators(gens_in, dim);
  std::vector<RatVec> basis = span_basis(gens, dim);
  const std::size_t r = basis.size();
  std::vector<RatVec> facets;
  if (r == 0) return facets;
  if (binomial(gens.size(), r - 1) > kMaxFacetSubsets) {
    throw std::runtime_error("relative_facets: too many generator subsets");
  }
  std::vector<std::size_t> idx(r - 1);
  for (std::size_t i = 0; i + 1 < r; ++i) idx[i] = i;
  do {
    RatMat sub;
    for (auto i : idx) sub.push_back(gens[i]);
    if (rank(sub, dim) != r - 1) continue;
    RatMat sbt;  // sub * basis^T
    for (const auto& s : sub) {
      RatVec row(r);
      for (std::size_t k = 0; k < r; ++k) row[k] = dot(s, basis[k]);
      sbt.push_back(std::move(row));
    }
    auto ker = kernel_basis(sbt, r);
    if (ker.size() != 1) continue;
    RatVec n = vec_mat(ker[0], basis, dim);
    int pos = 0, negc = 0;
    for (const auto& g : gens) {
      int s = sgn(dot(n, g));
      if (s > 0) ++pos;
      if (s < 0) ++negc;
    }
    if (pos > 0 && negc > 0) continue;
    if (negc > 0) n = neg(n);
    n = primitive(n);
    if (std::find(facets.begin(), facets.end(), n) == facets.end()) facets.push_back(std::move(n));
  } while (next_combination(idx, gens.size()));
  return facets;
}

ConeDesc cone_from_generators(const std::vector<RatVec>& gens, std::size_t dim) {
  ConeDesc c;
  c.dim = dim;
  c.generators = reduce_generators(gens, dim);
  c.inequalities = relative_facets(c.generators, dim);
  c.equalities = annihilator(c.generators, dim);
  return c;
}

ConeDesc cone_from_inequalities(const std::vector<RatVec>& ineqs, const std::vector<RatVec>& eqs,
                                std::size_t dim) {
  std::vector<RatVec> dual = ineqs;
  for (const auto& e : eqs) {
    dual.push_back(e);
    dual.push_back(neg(e));
  }
  std::vector<RatVec> gens = relative_facets(dual, dim);
  RatMat rows = ineqs;
  rows.insert(rows.end(), eqs.begin(), eqs.end());
  for (const auto& k : kernel_basis(rows, dim)) {
    gens.push_back(k);
    gens.push_back(neg(k));
  }
  return cone_from_generators(gens, dim);
}

bool cone_desc_contains(const ConeDesc& c, const RatVec& x) {
  if (x.size() != c.dim) throw DimensionMismatch("cone_desc_contains: vector length");
  if (!c.inequalities.empty() || !c.equalities.empty()) {
    for (const auto& a : c.equalities) {
      if (sgn(dot(a, x)) != 0) return false;
    }
    for (const auto& a : c.inequalities) {
      if (sgn(dot(a, x)) < 0) return false;
    }
    return true;
  }
  return nonneg_combination(c.generators, x, c.dim).has_value();
}

ConeDesc project_cone(const ConeDesc& input, const std::vector<std::size_t>& keep) {
  for (auto k : keep) {
    if (k >= input.dim) throw DimensionMismatch("project_cone: coordinate out of range");
  }
  std::vector<RatVec> gens = input.generators;
  if (gens.empty() && (!input.inequalities.empty() || !input.equalities.empty())) {
    gens = cone_from_inequalities(input.inequalities, input.equalities, input.dim).generators;
  } else if (gens.empty()) {
    for (std::size_t i = 0; i < input.dim; ++i) {
      gens.push_back(unit_vector(input.dim, i));
      gens.push_back(neg(unit_vector(input.dim, i)));
    }
  }
  std::vector<RatVec> projected;
  for (const auto& g : gens) {
    RatVec p;
    for (auto k : keep) p.push_back(g[k]);
    projected.push_back(std::move(p));
  }
  return cone_from_generators(projected, keep.size());
}

}  // namespace k0bench
