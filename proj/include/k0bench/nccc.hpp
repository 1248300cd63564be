#pragma once
// Rank calculus on non-commutative cell complexes described by block sizes, fiber sizes
// and boundary multiplicities.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "k0bench/errors.hpp"

namespace k0bench {

using LongVec = std::vector<long>;
using LongMat = std::vector<LongVec>;

struct Cell {
  long n = 1;     // cell dimension; 0 means a point with no boundary
  long r = 1;     // fiber matrix size
  LongVec mult;   // multiplicity on every earlier coordinate (blocks, then cells)
  bool operator==(const Cell&) const = default;
};

struct NcccDescriptor {
  LongVec blocks;  // matrix block sizes of the base algebra
  std::vector<Cell> cells;

  std::size_t length() const { return cells.size(); }
  std::size_t coords() const { return blocks.size() + cells.size(); }
  long size_of(std::size_t coord) const;  // 0-based coordinate
  bool operator==(const NcccDescriptor&) const = default;
};

struct Diagnostic {
  std::size_t cell = 0;  // 1-based; 0 for descriptor-level problems
  long residual = 0;     // r - sum mult * size
  std::string message;
};

std::vector<Diagnostic> validate(const NcccDescriptor& d);
void require_valid(const NcccDescriptor& d);  // throws PreconditionError listing diagnostics

struct RankClass {
  LongVec y;                            // rank p - rank q per coordinate
  std::optional<LongVec> s_membership;  // coefficients over the S generators
  bool operator==(const RankClass&) const = default;
};

// Checks the witness reproduces y. Throws PreconditionError otherwise.
void check_membership(const RankClass& y, const LongMat& s);

bool almost_positive(const RankClass& y);
// 1-based cells i with y_{b+i} > 0.
std::vector<std::size_t> w_set(const NcccDescriptor& d, const RankClass& y);

struct Deletion {
  NcccDescriptor descriptor;
  LongMat projection;  // (coords - 1) x coords, drops the deleted coordinate
};

// Removes cell j (1-based, j < length) and reroutes later multiplicities through its boundary.
Deletion delete_cell(const NcccDescriptor& d, std::size_t j);

struct GammaSplit {
  std::vector<std::size_t> f1;  // 1-based block indices supporting Gamma
  NcccDescriptor b;             // the complementary part
  LongVec gamma;                // an element of Gamma with support exactly f1 (0 if empty)
  LongMat b_s;                  // S restricted to the coordinates of b
};

GammaSplit gamma_split(const NcccDescriptor& d, const LongMat& s);

enum class CaseKind { DropLast = 1, Zero = 2, BaseSplit = 3, DeleteInner = 4 };

struct CaseStep {
  CaseKind kind = CaseKind::Zero;
  std::size_t cell = 0;    // cell removed by DropLast or DeleteInner (1-based, pre-step numbering)
  std::size_t length = 0;  // length before the step
  bool operator==(const CaseStep&) const = default;
};

std::string to_string(const CaseStep& s);

struct Split {
  std::vector<std::size_t> f1;
  NcccDescriptor b;
  bool operator==(const Split&) const = default;
};

struct ReductionResult {
  NcccDescriptor reduced;
  LongMat rank_map;
  LongVec image_y;
  std::vector<CaseStep> case_trace;
  std::optional<Split> split;
  bool operator==(const ReductionResult&) const = default;
};

ReductionResult reduce(const NcccDescriptor& d, const LongMat& s, const RankClass& y);

enum class Verdict { PositiveAfterStabilization, InfinitesimalPart, NotAlmostPositive, MixedSingular };

const char* to_string(Verdict v);

struct Classification {
  Verdict verdict = Verdict::NotAlmostPositive;
  std::optional<ReductionResult> reduction;
  std::optional<Split> split;
  std::vector<std::size_t> witness;  // 1-based coordinates: a negative one, then a positive one
  long dimension = 0;               // largest cell dimension of the reduced descriptor
  bool rank_threshold_met = false;  // every surviving y exceeds (dimension - 1) / 2
};

Classification classify(const NcccDescriptor& d, const LongMat& s, const RankClass& y);

struct Census {
  std::size_t classes = 0;
  std::size_t skipped = 0;  // not almost positive
  std::size_t distinct_descriptors = 0;
  std::size_t distinct_rank_maps = 0;
  std::size_t bound = 0;  // 2^(length + 1)
  bool within_bound() const { return distinct_descriptors <= bound && distinct_rank_maps <= bound; }
};

Census finiteness_census(const NcccDescriptor& d, const std::vector<RankClass>& ys,
                         const LongMat& s = {});

LongVec apply_map(const LongMat& m, const LongVec& y);

}  // namespace k0bench
