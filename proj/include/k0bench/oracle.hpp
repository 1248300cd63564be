#pragma once
// Brute-force recomputation of decidable claims on small instances. Uses ratlin arithmetic
// and the plain data types of the other modules, never their algorithms.

#include <cstdint>
#include <utility>
#include <vector>

#include "k0bench/nccc.hpp"
#include "k0bench/ordgrp.hpp"

namespace k0bench {

struct GridSpec {
  std::size_t dim = 2;
  long den_bound = 1;    // denominators 1..den_bound
  long coord_bound = 2;  // |coordinate| <= coord_bound
  std::uint64_t seed = 0;
  std::size_t samples = 0;  // 0: every grid point; otherwise a seeded subset of this size
};

std::vector<RatVec> grid_points(const GridSpec& grid);

// Definitional membership: FinGen by exhaustive search over independent generator subsets,
// Lex by evaluating the functionals, direct sums block by block.
bool brute_member(const Cone& cone, const RatVec& x);

std::vector<std::pair<RatVec, bool>> brute_membership(const Cone& cone, const GridSpec& grid);

enum class BruteSign { Neg, Zero, Pos, Inconclusive };

const char* to_string(BruteSign s);

// Searches k = 1..k_max and integer combinations a of the neg generators with coefficients
// 0..coeff_bound for a + k x (Pos) or a - k x (Neg) in the quotient cone.
BruteSign brute_phi(const ScaledOrderedGroup& quotient, const std::vector<RatVec>& neg_generators,
                    const RatVec& x, long k_max = 25, long coeff_bound = 3);

// u + n x in the cone for every |n| <= n_max.
bool brute_infinitesimal(const ScaledOrderedGroup& g, const RatVec& x, long n_max);

ReductionResult brute_reduce(const NcccDescriptor& d, const LongMat& s, const RankClass& y);

}  // namespace k0bench
