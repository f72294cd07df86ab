#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace letq {

// Fixed-size bit vector sized at construction; hot loops in the cut search
// and the diagnosis enumerations live on this.
class DynBitset {
 public:
  DynBitset() = default;
  explicit DynBitset(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  std::size_t size() const { return n_; }
  bool test(std::size_t i) const { return w_[i >> 6] >> (i & 63) & 1; }
  void set(std::size_t i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  void clear() { std::fill(w_.begin(), w_.end(), 0); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : w_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  bool any_and(const DynBitset& other) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & other.w_[i]) return true;
    return false;
  }

  std::size_t count_and(const DynBitset& other) const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < w_.size(); ++i)
      c += static_cast<std::size_t>(std::popcount(w_[i] & other.w_[i]));
    return c;
  }

  // Number of bits set in `this` but not in `other`.
  std::size_t count_andnot(const DynBitset& other) const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < w_.size(); ++i)
      c += static_cast<std::size_t>(std::popcount(w_[i] & ~other.w_[i]));
    return c;
  }

  bool operator==(const DynBitset&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

}  // namespace letq
