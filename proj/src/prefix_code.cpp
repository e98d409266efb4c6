#include "omegalab/prefix_code.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "omegalab/errors.hpp"

namespace omegalab {

BitString encode_naive(const BitString& x) {
  BitString out = BitString::zeros(x.size());
  out.push_back(1);
  out.append(x);
  return out;
}

std::optional<Decoded> decode_naive(BitSource& stream) {
  std::size_t zeros = 0;
  for (;;) {
    auto b = stream.next();
    if (!b) return std::nullopt;
    if (*b == 1) break;
    ++zeros;
  }
  Decoded out;
  for (std::size_t i = 0; i < zeros; ++i) {
    auto b = stream.next();
    if (!b) return std::nullopt;
    out.value.push_back(*b);
  }
  out.consumed = 2 * zeros + 1;
  return out;
}

BitString binary_repr(std::uint64_t k) {
  if (k == 0) return BitString::parse("0");
  BitString out;
  for (int i = std::bit_width(k) - 1; i >= 0; --i) {
    out.push_back(static_cast<int>((k >> i) & 1u));
  }
  return out;
}

std::size_t binary_repr_size(std::uint64_t k) {
  return k == 0 ? 1 : static_cast<std::size_t>(std::bit_width(k));
}

BitString encode_efficient(const BitString& x) {
  BitString out = encode_naive(binary_repr(x.size()));
  out.append(x);
  return out;
}

std::optional<Decoded> decode_efficient(BitSource& stream) {
  auto header = decode_naive(stream);
  if (!header) return std::nullopt;
  std::uint64_t n = 0;
  for (std::size_t i = 0; i < header->value.size(); ++i) {
    if (n > (std::uint64_t{1} << 56)) return std::nullopt;  // absurd length claim
    n = (n << 1) | static_cast<std::uint64_t>(header->value[i]);
  }
  Decoded out;
  for (std::uint64_t i = 0; i < n; ++i) {
    auto b = stream.next();
    if (!b) return std::nullopt;
    out.value.push_back(*b);
  }
  out.consumed = header->consumed + static_cast<std::size_t>(n);
  return out;
}

unsigned integer_size(std::uint64_t k) {
  // 1 + ceil(log2(1+k)); for k >= 1 the ceil term equals bit_width(k) unless
  // k+1 is a power of two, in which case it is bit_width(k+1)-1 = bit_width(k).
  if (k == 0) return 1;
  std::uint64_t m = k + 1;
  unsigned ceil_log = static_cast<unsigned>(std::bit_width(m - 1));
  return 1 + ceil_log;
}

BitString encode_integer(std::uint64_t k) { return encode_efficient(binary_repr(k)); }

std::size_t encode_integer_size(std::uint64_t k) {
  std::size_t n = binary_repr_size(k);
  return n + 2 * binary_repr_size(n) + 1;
}

namespace {

// Canonical binary: single "0", or a string starting with 1.
bool canonical_binary(const BitString& b) {
  if (b.empty()) return false;
  if (b.size() == 1) return true;
  return b[0] == 1;
}

}  // namespace

std::optional<DecodedInt> decode_integer(BitSource& stream) {
  std::size_t zeros = 0;
  for (;;) {
    auto b = stream.next();
    if (!b) return std::nullopt;
    if (*b == 1) break;
    ++zeros;
  }
  BitString header;
  for (std::size_t i = 0; i < zeros; ++i) {
    auto b = stream.next();
    if (!b) return std::nullopt;
    header.push_back(*b);
  }
  if (!canonical_binary(header)) return std::nullopt;
  if (header.size() > 7) return std::nullopt;  // payload beyond 64 bits cannot be canonical
  std::uint64_t n = 0;
  for (std::size_t i = 0; i < header.size(); ++i) n = (n << 1) | static_cast<unsigned>(header[i]);
  if (n == 0 || n > 64) return std::nullopt;
  BitString payload;
  for (std::uint64_t i = 0; i < n; ++i) {
    auto b = stream.next();
    if (!b) return std::nullopt;
    payload.push_back(*b);
  }
  if (!canonical_binary(payload)) return std::nullopt;
  DecodedInt out;
  for (std::size_t i = 0; i < payload.size(); ++i) {
    out.value = (out.value << 1) | static_cast<std::uint64_t>(payload[i]);
  }
  out.consumed = 2 * zeros + 1 + static_cast<std::size_t>(n);
  return out;
}

bool CodeSet::is_prefix_free() const {
  // After lexicographic sorting any prefix pair becomes adjacent.
  std::vector<const BitString*> sorted;
  sorted.reserve(members_.size());
  for (const auto& m : members_) sorted.push_back(&m);
  std::sort(sorted.begin(), sorted.end(),
            [](const BitString* a, const BitString* b) { return *a < *b; });
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    if (sorted[i]->is_prefix_of(*sorted[i + 1])) return false;
  }
  return true;
}

SparseDyadic kraft_sum(const CodeSet& codes) {
  if (!codes.is_prefix_free()) {
    throw std::invalid_argument("kraft_sum: code set is not prefix-free");
  }
  SparseDyadic total;
  for (const auto& c : codes.members()) {
    if (c.empty()) {
      // 2^0: the empty word is only prefix-free alone; represent via 1.{}.
      total = SparseDyadic::one();
      continue;
    }
    total = add_power(total, static_cast<std::int64_t>(c.size()));
  }
  return total;
}

std::uint64_t sample_integer(Rng& coin, std::uint64_t max_bits) {
  CoinSource raw(coin);
  CountingSource counted(raw);
  for (;;) {
    if (counted.count() > max_bits) {
      throw CapExceededError("sample_integer: exceeded bit cap");
    }
    auto d = decode_integer(counted);
    if (d) return d->value;
    // Malformed attempt: restart with fresh flips.
  }
}

}  // namespace omegalab
