#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "omegalab/rng.hpp"

namespace omegalab {

// A finite string of bits; the empty string is valid.
class BitString {
 public:
  BitString() = default;

  // Parses a string of '0'/'1' characters; throws std::invalid_argument.
  static BitString parse(std::string_view text);
  static BitString zeros(std::size_t n) { return BitString(std::vector<std::uint8_t>(n, 0)); }

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }

  int operator[](std::size_t i) const { return bits_[i]; }
  void set(std::size_t i, int bit) { bits_[i] = static_cast<std::uint8_t>(bit & 1); }
  void flip(std::size_t i) { bits_[i] ^= 1; }

  void push_back(int bit) { bits_.push_back(static_cast<std::uint8_t>(bit & 1)); }
  void append(const BitString& other) {
    bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
  }

  bool is_prefix_of(const BitString& other) const;

  std::string str() const;

  friend auto operator<=>(const BitString&, const BitString&) = default;

 private:
  explicit BitString(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {}
  std::vector<std::uint8_t> bits_;
};

// Length-then-lexicographic order, the order used for enumerations.
bool shortlex_less(const BitString& a, const BitString& b);

// Pull-based bit supplier; next() returns nullopt once exhausted.
class BitSource {
 public:
  virtual ~BitSource() = default;
  virtual std::optional<int> next() = 0;
};

class BitStringSource final : public BitSource {
 public:
  explicit BitStringSource(const BitString& bits) : bits_(&bits) {}
  std::optional<int> next() override {
    if (pos_ >= bits_->size()) return std::nullopt;
    return (*bits_)[pos_++];
  }
  std::size_t position() const { return pos_; }

 private:
  const BitString* bits_;
  std::size_t pos_ = 0;
};

// Infinite fair-coin source backed by an Rng.
class CoinSource final : public BitSource {
 public:
  explicit CoinSource(Rng& rng) : rng_(&rng) {}
  std::optional<int> next() override { return rng_->next_bit(); }

 private:
  Rng* rng_;
};

// Decorator counting bits drawn from an underlying source.
class CountingSource final : public BitSource {
 public:
  explicit CountingSource(BitSource& inner) : inner_(&inner) {}
  std::optional<int> next() override {
    auto b = inner_->next();
    if (b) ++count_;
    return b;
  }
  std::uint64_t count() const { return count_; }

 private:
  BitSource* inner_;
  std::uint64_t count_ = 0;
};

}  // namespace omegalab
