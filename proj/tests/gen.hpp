#pragma once
// Seeded random instance generators shared by the unit and acceptance tests.

#include <random>

#include "k0bench/ordgrp.hpp"
#include "k0bench/ratlin.hpp"

namespace k0bench::testgen {

using Rng = std::mt19937_64;

inline Rat frac(long p, long q) {
  Rat r(p, q);
  r.canonicalize();
  return r;
}

inline long uniform_int(Rng& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline Rat small_rat(Rng& rng, long bound = 5, long max_den = 3) {
  Rat q(uniform_int(rng, -bound, bound), uniform_int(rng, 1, max_den));
  q.canonicalize();
  return q;
}

inline RatVec int_vec(Rng& rng, std::size_t n, long lo, long hi) {
  RatVec v(n);
  for (auto& x : v) x = uniform_int(rng, lo, hi);
  return v;
}

inline RatVec nonzero_int_vec(Rng& rng, std::size_t n, long lo, long hi) {
  for (;;) {
    RatVec v = int_vec(rng, n, lo, hi);
    if (!is_zero(v)) return v;
  }
}

inline RatVec rat_vec(Rng& rng, std::size_t n, long bound = 5, long max_den = 3) {
  RatVec v(n);
  for (auto& x : v) x = small_rat(rng, bound, max_den);
  return v;
}

inline RatMat rat_mat(Rng& rng, std::size_t rows, std::size_t cols, long bound = 5,
                      long max_den = 3) {
  RatMat m;
  for (std::size_t i = 0; i < rows; ++i) m.push_back(rat_vec(rng, cols, bound, max_den));
  return m;
}

// Generators of a pointed full-dimensional cone in Q^n: the orthant-like positive
// part of a random unimodular-ish basis plus a few nonnegative combinations.
inline std::vector<RatVec> pointed_cone_generators(Rng& rng, std::size_t n, std::size_t extra) {
  std::vector<RatVec> gens;
  for (;;) {
    gens.clear();
    for (std::size_t i = 0; i < n; ++i) {
      RatVec g = int_vec(rng, n, -1, 2);
      g[i] = uniform_int(rng, 2, 3);
      gens.push_back(g);
    }
    if (rank(gens, n) == n) break;
  }
  // keep the cone pointed: every generator has positive sum against a fixed functional
  RatVec psi(n, Rat(1));
  std::vector<RatVec> out;
  for (auto& g : gens) {
    if (dot(psi, g) <= 0) g[std::size_t(uniform_int(rng, 0, long(n) - 1))] += 4;
    if (dot(psi, g) <= 0) continue;
    out.push_back(g);
  }
  for (std::size_t e = 0; e < extra; ++e) {
    RatVec g = zeros(n);
    for (const auto& b : out) g = add(g, scale(Rat(uniform_int(rng, 0, 2)), b));
    g = add(g, int_vec(rng, n, -1, 1));
    if (dot(psi, g) > 0) out.push_back(g);
  }
  return out;
}

// A FinGen group with a pointed full-dimensional cone; the unit is the generator sum.
inline ScaledOrderedGroup fingen_group(Rng& rng, std::size_t n, std::size_t extra = 2) {
  for (;;) {
    auto gens = pointed_cone_generators(rng, n, extra);
    if (rank(gens, n) != n) continue;
    RatVec unit = zeros(n);
    for (const auto& g : gens) unit = add(unit, g);
    return make_group(Cone::fingen(gens, n), unit);
  }
}

// Lex cone with k random functionals (k = n gives a total order).
inline ScaledOrderedGroup lex_group(Rng& rng, std::size_t n, std::size_t k,
                                    LexTail tail = LexTail::ZeroOnly) {
  for (;;) {
    std::vector<RatVec> fs;
    for (std::size_t i = 0; i < k; ++i) fs.push_back(nonzero_int_vec(rng, n, -2, 2));
    if (rank(fs, n) != k) continue;
    RatVec unit = int_vec(rng, n, -2, 3);
    if (sgn(dot(fs[0], unit)) <= 0) continue;
    return make_group(Cone::lex(fs, tail, n), unit);
  }
}

// A random mix of the cone families, at most n coordinates in total.
inline ScaledOrderedGroup mixed_group(Rng& rng, std::size_t n) {
  switch (uniform_int(rng, 0, 3)) {
    case 0:
      return fingen_group(rng, n);
    case 1:
      return lex_group(rng, n, std::size_t(uniform_int(rng, 1, long(n))));
    default: {
      if (n < 2) return fingen_group(rng, n);
      std::size_t a = std::size_t(uniform_int(rng, 1, long(n) - 1));
      ScaledOrderedGroup left = uniform_int(rng, 0, 1) ? fingen_group(rng, a)
                                                       : lex_group(rng, a, 1);
      ScaledOrderedGroup right = uniform_int(rng, 0, 1) ? fingen_group(rng, n - a)
                                                        : lex_group(rng, n - a, 1);
      return direct_sum({left, right});
    }
  }
}

}  // namespace k0bench::testgen
