#pragma once
// Killing a singular subgroup of a direct sum by a positive map into a direct sum of
// totally ordered groups, with a replayable certificate.

#include <cstdint>
#include <optional>
#include <vector>

#include "k0bench/certificate.hpp"
#include "k0bench/ordgrp.hpp"

namespace k0bench {

const char* to_string(Flavor f);

struct SummandSpec {
  ScaledOrderedGroup group;  // FinGen cone
  Flavor flavor = Flavor::EClass;
};

// Checks AFClass cones are simplicial and EClass groups have a faithful state.
SummandSpec make_summand(ScaledOrderedGroup group, Flavor flavor);

// span(G) intersected with block i, in the coordinates of block i.
Subgroup coordinate_zero_subgroup(const Subgroup& g, const std::vector<std::size_t>& dims,
                                  std::size_t i);

struct Claim1Report {
  bool singular = false;
  RatVec singular_witness;  // positive element of the image when not singular
  bool no_pure = false;
  std::size_t pure_block = 0;
  RatVec pure_witness;
  bool maximal = false;
  RatVec maximal_extension;

  bool ok() const { return singular && no_pure && maximal; }
};

// `g` is the maximalized subgroup of the ambient sum; `quotients` one per summand.
Claim1Report verify_claim1(const std::vector<SummandSpec>& summands, const Subgroup& g,
                           const std::vector<Quotient>& quotients);

struct NegPos {
  std::vector<RatVec> neg;  // generators of the rational cone H_i^neg
  std::vector<RatVec> pos;  // their negatives
};

// Throws PreconditionError with a witness when the neg/pos cones overlap or meet H_i^+.
std::vector<NegPos> neg_pos_cones(const std::vector<Quotient>& quotients,
                                  const std::vector<RatVec>& image_basis);

struct Claim2Result {
  State state;
  bool faithful = false;
  RatVec tau_bar;
};

// State killing `zero` and nonnegative on `pos_preimage`; faithful for EClass summands.
Claim2Result claim2_state(const SummandSpec& summand, const Subgroup& zero,
                          const RatMat& projection, const std::vector<RatVec>& pos_preimage);

struct SignOracle {
  ScaledOrderedGroup quotient;      // (H_i, H_i^+)
  std::vector<RatVec> neg;          // H_i^neg, rational cone
  std::optional<Cone> lex;          // total-order presentation of P_i when dim H_i <= 1
};

SignOracle make_sign_oracle(const ScaledOrderedGroup& quotient, const std::vector<RatVec>& neg,
                            const RatVec& tau_bar);

// 0 at 0; 1 when x + H_i^neg meets H_i^+; -1 otherwise.
int phi_sign(const SignOracle& oracle, const RatVec& x);
// x + H_i^neg meets H_i^+ (no nonzero test).
bool phi_nonneg_witness(const SignOracle& oracle, const RatVec& x);

struct KillOptions {
  std::uint64_t seed = 1;
  std::size_t samples = 200;
  bool maximalize = true;
};

struct KillResult {
  KillCertificate certificate;
  std::vector<SignOracle> oracles;
  bool extended = false;  // the input had to be enlarged to a maximal singular subgroup
};

KillResult kill_pipeline(const std::vector<SummandSpec>& summands, const Subgroup& g,
                         const KillOptions& options = {});

}  // namespace k0bench
