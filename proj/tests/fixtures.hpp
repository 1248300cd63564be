#pragma once
// Worked example groups used across test binaries.

#include "k0bench/ordgrp.hpp"

namespace k0bench::fixtures {

// Q^2 (x, y) with cone {x > 0} u {0}, plus Q with cone Q>=0; unit (1, 0, 1).
inline ScaledOrderedGroup sphere_plus_point() {
  auto sphere = make_group(Cone::lex({ints({1, 0})}, LexTail::ZeroOnly, 2), ints({1, 0}));
  auto point = make_group(Cone::fingen({ints({1})}, 1), ints({1}));
  return direct_sum({sphere, point});
}

// Q^2 with the orthant cone and unit (1, 1).
inline ScaledOrderedGroup orthant2() {
  return make_group(Cone::fingen({ints({1, 0}), ints({0, 1})}, 2), ints({1, 1}));
}

inline ScaledOrderedGroup orthant(std::size_t n) {
  return make_group(Cone::fingen(identity(n), n), RatVec(n, Rat(1)));
}

}  // namespace k0bench::fixtures
