#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace uptail {

/// Fixed-capacity multi-word bitset. Single-word sets are the common case at
/// exact scale; larger universes spill into further words.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(int capacity)
      : capacity_(capacity), words_(static_cast<std::size_t>((capacity + 63) / 64), 0) {}

  int capacity() const noexcept { return capacity_; }

  bool test(int i) const noexcept {
    return (words_[static_cast<std::size_t>(i) >> 6] >> (i & 63)) & 1U;
  }
  void set(int i) noexcept { words_[static_cast<std::size_t>(i) >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(int i) noexcept {
    words_[static_cast<std::size_t>(i) >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }

  int count() const noexcept {
    int c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }
  bool none() const noexcept {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  Bitset& operator&=(const Bitset& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  Bitset& operator|=(const Bitset& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  friend Bitset operator&(Bitset a, const Bitset& b) noexcept { return a &= b; }
  friend Bitset operator|(Bitset a, const Bitset& b) noexcept { return a |= b; }

  int intersection_count(const Bitset& o) const noexcept {
    int c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) c += std::popcount(words_[i] & o.words_[i]);
    return c;
  }
  bool is_subset_of(const Bitset& o) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  /// Calls f(i) for each set bit in increasing order.
  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      auto bits = words_[w];
      while (bits) {
        int b = std::countr_zero(bits);
        f(static_cast<int>(w * 64) + b);
        bits &= bits - 1;
      }
    }
  }

  std::vector<int> members() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(count()));
    for_each([&](int i) { out.push_back(i); });
    return out;
  }

  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

  friend bool operator==(const Bitset&, const Bitset&) = default;

 private:
  int capacity_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace uptail
