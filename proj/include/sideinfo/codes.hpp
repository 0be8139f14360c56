#pragma once

#include <map>
#include <optional>
#include <vector>

#include "sideinfo/bits.hpp"
#include "sideinfo/entropy.hpp"

namespace sideinfo {

/// Per-symbol error budgets eps_x and their P_X-weighted aggregate.
struct EpsilonProfile {
  std::vector<double> per_symbol;
  double aggregate = 0.0;

  static EpsilonProfile uniform(const JointPmf& pmf, double eps);
  static EpsilonProfile of(const JointPmf& pmf, std::vector<double> per_symbol);
};

/// Variable-length code with side-information at both ends: an encode table
/// over X x Y whose per-y codeword sets satisfy the prefix condition, plus a
/// per-y prefix decoder. correct_set lists the cells the decoder reproduces.
struct CommonCode {
  std::vector<Bitstring> encode_table;          // row-major (x,y)
  std::vector<std::map<std::string, int>> decode_tables;  // per y: codeword -> x
  RestrictedSet correct_set;
  int nx = 0, ny = 0;

  const Bitstring& codeword(int x, int y) const {
    return encode_table[static_cast<std::size_t>(x) * ny + y];
  }
  /// Decoded symbol for a full codeword under side-information y, or nullopt.
  std::optional<int> decode(const Bitstring& word, int y) const;
};

struct CodeStats {
  double error = 0.0;
  double avg_len = 0.0;
};

/// Shannon lengths ceil(log2 1/q) for a (sub-)distribution; q = 0 entries are
/// rejected. The Kraft sum never exceeds 1.
std::vector<int> shannon_lengths(const std::vector<double>& q);

/// Canonical prefix codewords for the given lengths (Kraft sum must be <= 1):
/// symbols sorted by (length, index) get lexicographically increasing words.
std::vector<Bitstring> canonical_prefix_code(const std::vector<int>& lengths);

/// True iff no word is a proper prefix of a different word.
bool is_prefix_free(const std::vector<Bitstring>& words);

/// Flag scheme over a restriction A: cells in A send "0" followed by the
/// Shannon codeword for the renormalized conditional Q^A(.|y); cells outside
/// A share the single codeword "1". Zero-mass cells of A are dropped.
CommonCode build_flag_code(const JointPmf& pmf, const RestrictedSet& a);

/// Exact error probability and expected length by full enumeration.
CodeStats evaluate_common_code(const JointPmf& pmf, const CommonCode& code);

/// One-shot Slepian-Wolf codec: per-symbol bin-index lengths from length
/// quantiles, seeded uniform bins, and an Elias gamma length header.
struct SwCodec {
  std::vector<int> length_fn;        // bin-index bits per x
  std::vector<std::uint64_t> bins;   // bin(x), drawn from (seed, x, length)
  double delta = 0.0;
  std::uint64_t seed = 0;
  EpsilonProfile budget;
  std::vector<double> surprisal;     // -log2 P_{X|Y}, row-major (x,y)
  int nx = 0, ny = 0;

  /// (x,y) is typical for bin length l iff surprisal <= l - delta/2.
  bool typical(int x, int y, int l) const {
    return surprisal[static_cast<std::size_t>(x) * ny + y] <= l - delta / 2.0;
  }
};

/// Builds the codec; delta > 0. length_fn(x) = ceil(quantile + delta).
SwCodec build_sw_codec(const JointPmf& pmf, const EpsilonProfile& budget, double delta,
                       std::uint64_t seed);

/// gamma(length_fn(x)) followed by length_fn(x) bin bits.
Bitstring sw_encode(const SwCodec& codec, int x);

struct SwDecodeResult {
  std::optional<int> x;      // nullopt: zero or multiple candidates
  std::size_t consumed = 0;  // bits consumed from the stream
};

/// Parses one codeword at `pos` and searches for the unique x with
/// matching length, matching bin, and (x,y) typical. Ambiguity is failure.
SwDecodeResult sw_decode(const SwCodec& codec, const Bitstring& stream, std::size_t pos, int y);

/// Exact error mass: enumerate all (x,y) and run the decoder.
double sw_exact_error(const JointPmf& pmf, const SwCodec& codec);

/// Tail budgets certified by a length function: eps_x is the conditional mass
/// of {y : surprisal(x,y) > len(x) + delta}. For any prefix code these satisfy
/// len(x) >= quantile(x, eps_x) - delta and aggregate <= error + 2^-delta.
EpsilonProfile converse_budget(const JointPmf& pmf, const std::vector<double>& lengths,
                               double delta);

/// Kraft sum over a set of lengths.
double kraft_sum(const std::vector<int>& lengths);

/// Throws KraftViolated unless every per-y codeword set of a CommonCode (or
/// the distinct codeword set of an SwCodec) has Kraft sum <= 1 + 1e-12.
void kraft_check(const CommonCode& code);
void kraft_check(const SwCodec& codec);

/// JSON round-trip of a codec description (length_fn, bins are re-derived
/// from the seed, delta, budget); enough to reconstruct bit-exactly.
std::string sw_codec_to_json(const SwCodec& codec, const JointPmf& pmf);
SwCodec sw_codec_from_json(const std::string& text, const JointPmf& pmf);

}  // namespace sideinfo
