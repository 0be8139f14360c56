#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sideinfo/common.hpp"

namespace sideinfo {

/// Sequence of bits. Serializes MSB-first into bytes with an explicit
/// bit-length field and zero padding at the tail.
class Bitstring {
 public:
  Bitstring() = default;
  explicit Bitstring(const std::string& zeros_ones);

  void push_back(int bit) { bits_.push_back(static_cast<std::uint8_t>(bit & 1)); }
  void append(const Bitstring& other);
  /// Appends `width` bits of `value`, MSB first.
  void append_uint(std::uint64_t value, int width);

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  int operator[](std::size_t i) const { return bits_[i]; }
  bool operator==(const Bitstring& o) const { return bits_ == o.bits_; }

  /// True if *this is a proper prefix of other.
  bool is_proper_prefix_of(const Bitstring& other) const;

  std::string str() const;

  /// Wire format: u64 little-endian bit count, then ceil(n/8) bytes MSB-first.
  std::vector<std::uint8_t> to_bytes() const;
  static Bitstring from_bytes(const std::vector<std::uint8_t>& bytes);

 private:
  std::vector<std::uint8_t> bits_;
};

/// Elias gamma code for m >= 1: floor(log2 m) zeros, then m in binary.
/// Length 2*floor(log2 m) + 1.
Bitstring elias_gamma_encode(std::uint64_t m);

/// Decodes one gamma codeword starting at `pos`; returns {m, bits consumed}.
/// Throws MalformedHeader on truncated input.
std::pair<std::uint64_t, std::size_t> elias_gamma_decode(const Bitstring& stream, std::size_t pos);

inline std::size_t elias_gamma_length(std::uint64_t m) {
  std::size_t k = 0;
  while (m >> (k + 1)) ++k;
  return 2 * k + 1;
}

}  // namespace sideinfo
