#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sideinfo/codes.hpp"

namespace sideinfo {

/// Parsed command line. One of quantities, encode, decode, verify, sweep,
/// diagnose; unused fields keep their defaults.
struct RunConfig {
  std::string command;
  std::string input_path;
  std::string output_path;  // empty = stdout
  std::vector<double> epsilons;
  double delta = 2.0;
  std::vector<double> deltas;
  int n = 10;
  int n_max = 10;
  std::uint64_t seed = kDefaultSeed;
  int workers = 1;
  int seeds = 200;
  long samples = 100000;
  double eps_tail = 0.05;
  std::string theorem;   // 1|2|3|4|lemma5|rcom
  std::string quantity;  // rcom|ohs|mixture|spectrum
  std::string stream_path;
  std::string side_path;
  std::string codec_path;
  std::string truth_path;
  std::string eps_budget = "uniform:0.1";
  bool condition1 = false;
};

/// Exit status: 0 success, 1 bound violation, 2 input error, 3 budget error.
/// Errors also emit one machine-readable JSON object on stderr.
int run(const RunConfig& config);

struct RoundtripReport {
  std::size_t symbols = 0;
  std::size_t decoded_ok = 0;
  std::size_t total_bits = 0;
};

/// Encodes the x stream, concatenates the codewords, then decodes against the
/// y stream. The streams must have equal length. Deterministic for any worker
/// count.
RoundtripReport encode_decode_roundtrip(const JointPmf& pmf, const EpsilonProfile& budget,
                                        double delta, std::uint64_t seed,
                                        const std::vector<std::string>& xs,
                                        const std::vector<std::string>& ys, int workers = 1);

}  // namespace sideinfo
