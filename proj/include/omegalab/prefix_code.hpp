#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "omegalab/bitstring.hpp"
#include "omegalab/dyadic.hpp"
#include "omegalab/rng.hpp"

namespace omegalab {

// Self-delimiting (prefix-free) encodings of bit-strings and integers.  The
// decoders consume a stream strictly left to right and report how many bits
// they took, so concatenated codewords parse unambiguously.

struct Decoded {
  BitString value;
  std::size_t consumed = 0;
};

struct DecodedInt {
  std::uint64_t value = 0;
  std::size_t consumed = 0;
};

// x -> 0^n 1 x with n = |x|; output length 2n+1.
BitString encode_naive(const BitString& x);

// Inverse of encode_naive; nullopt if the stream exhausts early.
std::optional<Decoded> decode_naive(BitSource& stream);

// Shortest binary representation of k; binary(0) is defined as "0" so every
// natural has a nonempty representation.
BitString binary_repr(std::uint64_t k);
std::size_t binary_repr_size(std::uint64_t k);

// x -> encode_naive(binary(|x|)) ++ x; length n + 2*|binary(n)| + 1, which is
// n + 2*ceil(log2(n+1)) + 1 for n >= 1.
BitString encode_efficient(const BitString& x);

// Inverse of encode_efficient.  Lenient on the header payload (parses it as
// an unsigned number, leading zeros included) so it is a total inverse on
// anything the encoder can emit.
std::optional<Decoded> decode_efficient(BitSource& stream);

// size(k) = 1 + ceil(log2(1+k)).
unsigned integer_size(std::uint64_t k);

// encode_efficient applied to binary(k); prefix-free over all naturals.
BitString encode_integer(std::uint64_t k);
std::size_t encode_integer_size(std::uint64_t k);

// Strict inverse of encode_integer: both the header payload and the integer
// payload must be canonical binary (no leading zeros except "0" itself).
// Strictness makes a decode attempt on fair coins succeed with probability
// exactly 2^-|encode_integer(k)| per value k.
std::optional<DecodedInt> decode_integer(BitSource& stream);

// A finite collection of codewords.
class CodeSet {
 public:
  CodeSet() = default;
  explicit CodeSet(std::vector<BitString> members) : members_(std::move(members)) {}
  void add(BitString b) { members_.push_back(std::move(b)); }
  const std::vector<BitString>& members() const { return members_; }
  bool is_prefix_free() const;

 private:
  std::vector<BitString> members_;
};

// Sum of 2^-|c| over members, exact.  Throws std::invalid_argument if the
// set is not prefix-free; result is <= 1 by the Kraft inequality.
SparseDyadic kraft_sum(const CodeSet& codes);

// Draws a natural by feeding coin flips to the strict integer decoder,
// restarting on a malformed attempt.  Per attempt P(k) = 2^-|encode_integer(k)|.
// Throws CapExceededError after max_bits total coin flips.
std::uint64_t sample_integer(Rng& coin, std::uint64_t max_bits = 1'000'000);

}  // namespace omegalab
