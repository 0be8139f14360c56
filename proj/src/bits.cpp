#include "sideinfo/bits.hpp"

namespace sideinfo {

Bitstring::Bitstring(const std::string& zeros_ones) {
  bits_.reserve(zeros_ones.size());
  for (char ch : zeros_ones) {
    if (ch != '0' && ch != '1') fail(Errc::ParseError, "bitstring literal must be 0/1");
    bits_.push_back(ch == '1');
  }
}

void Bitstring::append(const Bitstring& other) {
  bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
}

void Bitstring::append_uint(std::uint64_t value, int width) {
  for (int b = width - 1; b >= 0; --b) bits_.push_back((value >> b) & 1);
}

bool Bitstring::is_proper_prefix_of(const Bitstring& other) const {
  if (size() >= other.size()) return false;
  for (std::size_t i = 0; i < size(); ++i)
    if (bits_[i] != other.bits_[i]) return false;
  return true;
}

std::string Bitstring::str() const {
  std::string s;
  s.reserve(size());
  for (auto b : bits_) s.push_back(b ? '1' : '0');
  return s;
}

std::vector<std::uint8_t> Bitstring::to_bytes() const {
  std::vector<std::uint8_t> out(8 + (size() + 7) / 8, 0);
  std::uint64_t n = size();
  for (int i = 0; i < 8; ++i) out[i] = static_cast<std::uint8_t>(n >> (8 * i));
  for (std::size_t i = 0; i < size(); ++i)
    if (bits_[i]) out[8 + i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
  return out;
}

Bitstring Bitstring::from_bytes(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 8) fail(Errc::MalformedHeader, "bitstream shorter than its length field");
  std::uint64_t n = 0;
  for (int i = 0; i < 8; ++i) n |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  if (bytes.size() < 8 + (n + 7) / 8) fail(Errc::MalformedHeader, "bitstream truncated");
  Bitstring s;
  s.bits_.resize(n);
  for (std::uint64_t i = 0; i < n; ++i)
    s.bits_[i] = (bytes[8 + i / 8] >> (7 - i % 8)) & 1;
  return s;
}

Bitstring elias_gamma_encode(std::uint64_t m) {
  if (m < 1) fail(Errc::MalformedHeader, "gamma code needs m >= 1");
  int k = 0;
  while (m >> (k + 1)) ++k;
  Bitstring out;
  for (int i = 0; i < k; ++i) out.push_back(0);
  out.append_uint(m, k + 1);
  return out;
}

std::pair<std::uint64_t, std::size_t> elias_gamma_decode(const Bitstring& stream,
                                                         std::size_t pos) {
  std::size_t i = pos;
  int k = 0;
  while (true) {
    if (i >= stream.size()) fail(Errc::MalformedHeader, "gamma header ran off the stream");
    if (stream[i] == 1) break;
    ++i;
    if (++k > 63) fail(Errc::MalformedHeader, "gamma header longer than 64 bits");
  }
  std::uint64_t m = 1;
  for (int b = 0; b < k; ++b) {
    ++i;
    if (i >= stream.size()) fail(Errc::MalformedHeader, "gamma payload truncated");
    m = (m << 1) | static_cast<std::uint64_t>(stream[i]);
  }
  return {m, (i + 1) - pos};
}

}  // namespace sideinfo
