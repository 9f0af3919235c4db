#include "bmfcf/bitset.hpp"

#include <algorithm>
#include <cassert>

namespace bmfcf {

Bitset::Bitset(std::size_t nbits, bool value)
    : nbits_(nbits), words_((nbits + kWordBits - 1) / kWordBits, value ? ~word_type{0} : word_type{0}) {
  trim();
}

Bitset Bitset::from_indices(std::size_t nbits, std::span<const std::size_t> indices) {
  Bitset out(nbits);
  for (std::size_t i : indices) {
    assert(i < nbits);
    out.set(i);
  }
  return out;
}

void Bitset::trim() noexcept {
  const std::size_t tail = nbits_ % kWordBits;
  if (tail != 0 && !words_.empty()) words_.back() &= (word_type{1} << tail) - 1;
}

void Bitset::set_all() noexcept {
  std::fill(words_.begin(), words_.end(), ~word_type{0});
  trim();
}

void Bitset::reset_all() noexcept { std::fill(words_.begin(), words_.end(), word_type{0}); }

std::size_t Bitset::count() const noexcept {
  std::size_t n = 0;
  for (word_type w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool Bitset::any() const noexcept {
  return std::any_of(words_.begin(), words_.end(), [](word_type w) { return w != 0; });
}

bool Bitset::is_subset_of(const Bitset& other) const noexcept {
  assert(nbits_ == other.nbits_);
  for (std::size_t w = 0; w < words_.size(); ++w)
    if ((words_[w] & ~other.words_[w]) != 0) return false;
  return true;
}

Bitset& Bitset::operator&=(const Bitset& other) noexcept {
  assert(nbits_ == other.nbits_);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
  return *this;
}

Bitset& Bitset::operator|=(const Bitset& other) noexcept {
  assert(nbits_ == other.nbits_);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
  return *this;
}

Bitset& Bitset::subtract(const Bitset& other) noexcept {
  assert(nbits_ == other.nbits_);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= ~other.words_[w];
  return *this;
}

std::size_t intersection_count(const Bitset& a, const Bitset& b) noexcept {
  assert(a.nbits_ == b.nbits_);
  std::size_t n = 0;
  for (std::size_t w = 0; w < a.words_.size(); ++w)
    n += static_cast<std::size_t>(std::popcount(a.words_[w] & b.words_[w]));
  return n;
}

std::vector<std::size_t> Bitset::indices() const {
  std::vector<std::size_t> out;
  out.reserve(count());
  for_each_set([&](std::size_t i) { out.push_back(i); });
  return out;
}

}  // namespace bmfcf
