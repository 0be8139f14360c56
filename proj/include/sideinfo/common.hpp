#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace sideinfo {

// Absolute tolerance used for all probability-mass equality checks.
inline constexpr double kProbTol = 1e-9;

// Default cell budget for materialized product extensions.
inline constexpr std::uint64_t kDefaultCellBudget = std::uint64_t{1} << 22;

// Default iteration budget for subset enumerations.
inline constexpr std::uint64_t kDefaultSubsetBudget = std::uint64_t{1} << 24;

// Default seed for every randomized operation (printed by the CLI).
inline constexpr std::uint64_t kDefaultSeed = 0x5E1F00Dull;

enum class Errc {
  NegativeMass,
  NotNormalized,
  ZeroMarginal,
  DuplicateLabel,
  UnknownSymbol,
  AlphabetMismatch,
  BudgetExceeded,
  EmptyRestriction,
  BoundViolated,
  ZeroProbabilitySymbol,
  MalformedHeader,
  KraftViolated,
  StreamLengthMismatch,
  RegimeUndetermined,
  ParseError,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc kind, const std::string& msg)
      : std::runtime_error(std::string(errc_name(kind)) + ": " + msg), kind_(kind) {}
  Errc kind() const { return kind_; }

 private:
  Errc kind_;
};

[[noreturn]] inline void fail(Errc kind, const std::string& msg) { throw Error(kind, msg); }

// Enumeration budget, overridable through the SIDEINFO_BUDGET env var.
inline std::uint64_t subset_budget() {
  if (const char* s = std::getenv("SIDEINFO_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end != s && v > 0) return v;
  }
  return kDefaultSubsetBudget;
}

inline std::uint64_t cell_budget() {
  if (const char* s = std::getenv("SIDEINFO_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end != s && v > 0) return v;
  }
  return kDefaultCellBudget;
}

// splitmix64; used as the counter-based generator for bin draws.
inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace sideinfo
