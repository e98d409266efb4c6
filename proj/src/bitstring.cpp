#include "omegalab/bitstring.hpp"

#include <stdexcept>

namespace omegalab {

BitString BitString::parse(std::string_view text) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c == '0') {
      bits.push_back(0);
    } else if (c == '1') {
      bits.push_back(1);
    } else {
      throw std::invalid_argument("BitString::parse: expected only '0'/'1', got '" +
                                  std::string(1, c) + "'");
    }
  }
  return BitString(std::move(bits));
}

bool BitString::is_prefix_of(const BitString& other) const {
  if (size() > other.size()) return false;
  for (std::size_t i = 0; i < size(); ++i) {
    if (bits_[i] != other.bits_[i]) return false;
  }
  return true;
}

std::string BitString::str() const {
  std::string out;
  out.reserve(size());
  for (std::uint8_t b : bits_) out.push_back(b ? '1' : '0');
  return out;
}

bool shortlex_less(const BitString& a, const BitString& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace omegalab
