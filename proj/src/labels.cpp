#include "letq/labels.hpp"

#include <algorithm>
#include <bit>

namespace letq {

std::string render_label(Word bits, int width) {
  if (width < 1 || width > kMaxLabelWidth) throw std::invalid_argument("bad label width");
  std::string out(static_cast<size_t>(width), '0');
  for (int i = 0; i < width; ++i)
    if (bits >> i & 1) out[static_cast<size_t>(width - 1 - i)] = '1';
  return out;
}

Word parse_label(std::string_view text, int width) {
  if (static_cast<int>(text.size()) != width)
    throw std::invalid_argument("label '" + std::string(text) + "' is not " + std::to_string(width) + " bits wide");
  Word bits = 0;
  for (char ch : text) {
    if (ch != '0' && ch != '1')
      throw std::invalid_argument("label '" + std::string(text) + "' has a non-binary digit");
    bits = bits << 1 | static_cast<Word>(ch - '0');
  }
  return bits;
}

namespace {

void check_ltq_args(Word u, int n) {
  if (n < 1 || n > kMaxLabelWidth) throw std::invalid_argument("ltq dimension out of range");
  if (u >> n) throw std::invalid_argument("label wider than dimension");
}

// Twisted-flip neighbors of the n-bit field starting at `base` inside u.
// Bits outside the field are untouched.
void field_neighbors(Word u, int base, int n, std::vector<Word>& out) {
  Word low = u >> base & 1;
  out.push_back(u ^ (Word{1} << base));
  if (n >= 2) out.push_back(u ^ (Word{1} << (base + 1)));
  for (int k = 2; k < n; ++k) {
    Word v = u ^ (Word{1} << (base + k));
    if (low) v ^= Word{1} << (base + k - 1);
    out.push_back(v);
  }
}

// Same relation decided pairwise from the XOR pattern; build() cross-checks
// the generator against this in its validating mode.
bool field_adjacent(Word u, Word v, int base, int n) {
  Word mask = (Word{1} << n) - 1;
  Word du = (u ^ v) >> base & mask;
  if ((u ^ v) & ~(mask << base)) return false;
  if (du == 0) return false;
  int k = std::bit_width(du) - 1;
  if (k <= 1) return du == (Word{1} << k);
  Word expect = Word{1} << k;
  if (u >> base & 1) expect |= Word{1} << (k - 1);
  return du == expect;
}

}  // namespace

std::vector<Word> ltq_neighbors(Word u, int n) {
  check_ltq_args(u, n);
  std::vector<Word> out;
  out.reserve(static_cast<size_t>(n));
  field_neighbors(u, 0, n, out);
  std::sort(out.begin(), out.end());
  return out;
}

bool ltq_adjacent(Word u, Word v, int n) {
  check_ltq_args(u, n);
  check_ltq_args(v, n);
  return field_adjacent(u, v, 0, n);
}

std::vector<Word> letq_neighbors(Word u, const CubeParams& p) {
  p.validate();
  if (u >> p.width()) throw std::invalid_argument("label wider than s+t+1");
  std::vector<Word> out;
  out.reserve(static_cast<size_t>(std::max(p.s, p.t)) + 1);
  out.push_back(cross_neighbor(u));
  if (class_bit(u))
    field_neighbors(u, 1, p.t, out);
  else
    field_neighbors(u, p.t + 1, p.s, out);
  std::sort(out.begin(), out.end());
  return out;
}

bool letq_adjacent(Word u, Word v, const CubeParams& p) {
  p.validate();
  if (u == v) return false;
  if ((u ^ v) == 1) return true;
  if (class_bit(u) != class_bit(v)) return false;
  if (class_bit(u)) return field_adjacent(u, v, 1, p.t);
  return field_adjacent(u, v, p.t + 1, p.s);
}

}  // namespace letq
