#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace bmfcf {

/// Fixed-width dynamic bitset backed by 64-bit words.
///
/// Bits past size() in the last word are kept zero, so word-level
/// operations (count, equality, subset tests) need no masking.
class Bitset {
 public:
  using word_type = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  Bitset() = default;
  explicit Bitset(std::size_t nbits, bool value = false);

  static Bitset from_indices(std::size_t nbits, std::span<const std::size_t> indices);
  static Bitset from_indices(std::size_t nbits, std::initializer_list<std::size_t> indices) {
    return from_indices(nbits, std::span<const std::size_t>(indices.begin(), indices.size()));
  }

  std::size_t size() const noexcept { return nbits_; }
  std::size_t num_words() const noexcept { return words_.size(); }
  std::span<const word_type> words() const noexcept { return words_; }

  bool test(std::size_t i) const noexcept { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
  void set(std::size_t i) noexcept { words_[i / kWordBits] |= word_type{1} << (i % kWordBits); }
  void reset(std::size_t i) noexcept { words_[i / kWordBits] &= ~(word_type{1} << (i % kWordBits)); }
  void set_all() noexcept;
  void reset_all() noexcept;

  std::size_t count() const noexcept;
  bool any() const noexcept;
  bool none() const noexcept { return !any(); }

  /// True iff every set bit of *this is also set in other.
  bool is_subset_of(const Bitset& other) const noexcept;

  Bitset& operator&=(const Bitset& other) noexcept;
  Bitset& operator|=(const Bitset& other) noexcept;
  /// Clears every bit that is set in other.
  Bitset& subtract(const Bitset& other) noexcept;

  friend Bitset operator&(Bitset a, const Bitset& b) noexcept { return a &= b; }
  friend Bitset operator|(Bitset a, const Bitset& b) noexcept { return a |= b; }
  friend bool operator==(const Bitset& a, const Bitset& b) noexcept = default;

  /// popcount(a & b) without materialising the intersection.
  friend std::size_t intersection_count(const Bitset& a, const Bitset& b) noexcept;

  std::vector<std::size_t> indices() const;

  template <class F>
  void for_each_set(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      word_type bits = words_[w];
      while (bits != 0) {
        f(w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
  }

 private:
  void trim() noexcept;

  std::size_t nbits_ = 0;
  std::vector<word_type> words_;
};

}  // namespace bmfcf
