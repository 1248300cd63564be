#pragma once
// Exhaustive small cell-complex descriptors.

#include <functional>

#include "k0bench/nccc.hpp"

namespace k0bench::testgen {

// Every valid descriptor with 1..max_blocks blocks, at most max_length cells of dimension 1,
// block and fiber sizes <= max_size and multiplicities <= max_mult.
inline std::vector<NcccDescriptor> enumerate_descriptors(std::size_t max_blocks, std::size_t max_length,
                                                         long max_size, long max_mult) {
  std::vector<NcccDescriptor> out;
  std::function<void(NcccDescriptor&)> grow = [&](NcccDescriptor& d) {
    out.push_back(d);
    if (d.length() == max_length) return;
    const std::size_t earlier = d.coords();
    LongVec mult(earlier, 0);
    for (;;) {
      std::size_t k = 0;
      while (k < earlier && mult[k] == max_mult) mult[k++] = 0;
      if (k == earlier) break;
      ++mult[k];
      long r = 0;
      for (std::size_t t = 0; t < earlier; ++t) r += mult[t] * d.size_of(t);
      if (r < 1 || r > max_size) continue;
      d.cells.push_back(Cell{1, r, mult});
      grow(d);
      d.cells.pop_back();
    }
  };
  std::function<void(NcccDescriptor&)> blocks = [&](NcccDescriptor& d) {
    if (!d.blocks.empty()) grow(d);
    if (d.blocks.size() == max_blocks) return;
    for (long s = 1; s <= max_size; ++s) {
      d.blocks.push_back(s);
      blocks(d);
      d.blocks.pop_back();
    }
  };
  NcccDescriptor d;
  blocks(d);
  return out;
}

inline std::vector<LongVec> box(std::size_t n, long lo, long hi) {
  std::vector<LongVec> out{LongVec{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<LongVec> next;
    for (const auto& v : out) {
      for (long x = lo; x <= hi; ++x) {
        LongVec w = v;
        w.push_back(x);
        next.push_back(std::move(w));
      }
    }
    out = std::move(next);
  }
  return out;
}

// Extends block ranks to cells through the boundary multiplicities, as for genuine classes.
inline LongVec consistent_ranks(const NcccDescriptor& d, LongVec blocks) {
  LongVec v = std::move(blocks);
  for (std::size_t i = 0; i < d.length(); ++i) {
    long r = 0;
    for (std::size_t t = 0; t < d.blocks.size() + i; ++t) r += d.cells[i].mult[t] * v[t];
    v.push_back(r);
  }
  return v;
}

// S: the rank vector of the unit and the first block's unit class.
inline LongMat default_s(const NcccDescriptor& d) {
  LongVec ones(d.blocks.size(), 1), first(d.blocks.size(), 0);
  first[0] = 1;
  return {consistent_ranks(d, ones), consistent_ranks(d, first)};
}

}  // namespace k0bench::testgen
