#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace letq {

// Vertex labels are packed little-endian: bit 0 holds the class bit c,
// bits 1..t hold the b-block (b0 lowest), bits t+1..t+s the a-block.
// The canonical text form a_{s-1}...a_0 b_{t-1}...b_0 c is therefore the
// plain MSB-first binary rendering of the packed word.
using Word = std::uint64_t;

inline constexpr int kMaxLabelWidth = 62;

struct CubeParams {
  int s = 1;
  int t = 1;

  int width() const { return s + t + 1; }

  void validate() const {
    if (s < 1 || t < 1)
      throw std::invalid_argument("cube parameters must be positive");
    if (width() > kMaxLabelWidth)
      throw std::invalid_argument("label width exceeds " + std::to_string(kMaxLabelWidth) + " bits");
  }

  bool operator==(const CubeParams&) const = default;
};

std::string render_label(Word bits, int width);
Word parse_label(std::string_view text, int width);

// Locally twisted cube over n-bit labels. Neighbor rule, low bits first:
// flipping bit 0 or bit 1 always yields a neighbor; flipping bit k >= 2
// additionally flips bit k-1 when bit 0 is set.
std::vector<Word> ltq_neighbors(Word u, int n);
bool ltq_adjacent(Word u, Word v, int n);

std::vector<Word> letq_neighbors(Word u, const CubeParams& p);
bool letq_adjacent(Word u, Word v, const CubeParams& p);

// The unique neighbor across the class-bit edge.
inline Word cross_neighbor(Word u) { return u ^ 1; }

inline bool class_bit(Word u) { return (u & 1) != 0; }
inline Word a_block(Word u, const CubeParams& p) { return (u >> (p.t + 1)) & ((Word{1} << p.s) - 1); }
inline Word b_block(Word u, const CubeParams& p) { return (u >> 1) & ((Word{1} << p.t) - 1); }

}  // namespace letq
