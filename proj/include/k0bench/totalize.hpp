#pragma once
// Lexicographic total orders refining a group order along a faithful state.

#include <optional>
#include <vector>

#include "k0bench/ordgrp.hpp"

namespace k0bench {

enum class Sign { Neg = -1, Zero = 0, Pos = 1 };

const char* to_string(Sign s);

// Total order whose functionals are the dual basis of `basis`, in order.
Cone lex_order(const std::vector<RatVec>& basis, std::size_t dim);

// Basis t_1..t_{n-1} of ker(tau) dual to the first coordinate functionals that are
// independent of tau.
std::vector<RatVec> default_tiebreak(const RatVec& tau);

struct Totalization {
  ScaledOrderedGroup group;     // Lex cone [tau, g_1, ..., g_{n-1}]
  std::vector<RatVec> tiebreak;  // the basis of ker(tau) actually used
  std::vector<Rat> generator_values;  // tau on each FinGen generator, all positive
};

// Empty `tiebreak` selects default_tiebreak. `reverse` flips the order inside ker(tau).
Totalization totalize_with_state(const ScaledOrderedGroup& g, const State& tau,
                                 const std::vector<RatVec>& tiebreak = {}, bool reverse = false);

Sign sign_in(const Cone& total, const RatVec& x);

struct PlacementReport {
  RatVec x;
  Sign sign_forward = Sign::Zero;
  Sign sign_reverse = Sign::Zero;
  Sign sign_quotient = Sign::Zero;
  RatVec forward_values;  // functionals of the forward order evaluated at x
  RatVec reverse_values;
  RatVec quotient_image;  // x modulo span{x}
};

PlacementReport placements(const ScaledOrderedGroup& g, const State& tau,
                           const std::vector<RatVec>& tiebreak, const RatVec& x);

struct Doubling {
  ScaledOrderedGroup group;  // forward order (+) reversed order, unit (u, u)
  RatMat diagonal;           // 2n x n, x -> (x, x)
};

Doubling doubling(const ScaledOrderedGroup& g, const State& tau,
                  const std::vector<RatVec>& tiebreak = {});

struct KillCheck {
  bool killable = false;
  std::optional<State> state;
  std::optional<RatVec> blocking;  // strict-set element every state killing x vanishes on
};

// FinGen generators of every block, plus the unit component of every lex block.
std::vector<RatVec> default_strict_set(const ScaledOrderedGroup& g);

KillCheck faithful_kill_check(const ScaledOrderedGroup& g, const RatVec& x,
                              const std::vector<RatVec>& strict_set);

}  // namespace k0bench
