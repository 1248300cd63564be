#pragma once
// Transcript of the direct-sum killing pipeline. Depends on ratlin only so that the
// verifier can replay it without pipeline code.

#include <cstdint>
#include <string>
#include <vector>

#include "k0bench/ratlin.hpp"

namespace k0bench {

inline constexpr const char* kToolVersion = "k0bench 1.0.0";

enum class Flavor { EClass, AFClass };

struct SummandRecord {
  Flavor flavor = Flavor::EClass;
  std::size_t dim = 0;
  std::vector<RatVec> generators;
  RatVec unit;

  std::vector<RatVec> zero_basis;           // elements of the subgroup living in this block
  RatMat projection;                        // onto the quotient H_i
  std::vector<RatVec> quotient_generators;  // H_i^+
  RatVec quotient_unit;
  std::vector<RatVec> neg_generators;       // H_i^neg; H_i^pos is its negative
  RatVec tau;                               // state on the summand
  bool faithful = false;
  RatVec tau_bar;                           // induced state on H_i
  std::vector<RatVec> sign_cone_generators;  // P_i = H_i^+ + H_i^pos

  bool operator==(const SummandRecord&) const = default;
};

struct SampleRecord {
  RatVec element;        // in the concatenated quotient coordinates
  std::vector<int> phi;  // sign of each block under its sign function
  bool operator==(const SampleRecord&) const = default;
};

struct ClaimFlags {
  bool claim1 = false;      // image singular, no pure-coordinate elements, maximal
  bool neg_pos = false;     // neg/pos cones pointed, disjoint, and meeting H_i^+ only in 0
  bool claim2 = false;      // states kill the zero blocks, are nonnegative on pos cones
  bool sign_laws = false;   // sign functions odd, additive on signs, well defined (samples)
  bool claim6 = false;      // image singular for the sign cones (exact and on samples)
  bool claim7 = false;      // induced states nonnegative on the sign cones
  bool claim8 = false;      // induced state is the only state of each sign cone
  bool operator==(const ClaimFlags&) const = default;
};

struct KillCertificate {
  std::string tool_version = kToolVersion;
  std::string input_digest;
  std::uint64_t seed = 1;
  std::size_t sample_count = 0;

  std::vector<SummandRecord> summands;
  std::vector<RatVec> input_generators;
  bool input_integral = false;  // the input was given as an integer span

  std::vector<RatVec> maximal_basis;  // reduced echelon basis of the maximalized subgroup
  std::vector<RatVec> image_basis;    // reduced echelon basis of its image in the quotients
  std::vector<SampleRecord> samples;
  ClaimFlags claims;
  std::string verdict;  // "singular"

  bool operator==(const KillCertificate&) const = default;
};

// FNV-1a 64-bit over a canonical text rendering of the input fields, as 16 hex digits.
std::string input_digest(const KillCertificate& cert);

// Sample elements: the image basis, then `count` nonzero integer combinations of it with
// coefficients in [-3, 3] drawn from mt19937_64(seed).
std::vector<RatVec> certificate_samples(const std::vector<RatVec>& image_basis,
                                        std::uint64_t seed, std::size_t count);

struct VerifyResult {
  bool ok = false;
  std::string location;  // first failing field or check
};

// Replays every recorded check with ratlin primitives only.
VerifyResult verify_certificate(const KillCertificate& cert);

}  // namespace k0bench
