#include "sideinfo/codes.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include <json.hpp>

namespace sideinfo {

EpsilonProfile EpsilonProfile::uniform(const JointPmf& pmf, double eps) {
  return of(pmf, std::vector<double>(pmf.nx(), eps));
}

EpsilonProfile EpsilonProfile::of(const JointPmf& pmf, std::vector<double> per_symbol) {
  if (static_cast<int>(per_symbol.size()) != pmf.nx())
    fail(Errc::AlphabetMismatch, "epsilon budget size does not match |X|");
  for (double e : per_symbol)
    if (!(e >= 0.0 && e <= 1.0)) fail(Errc::ParseError, "per-symbol epsilon must be in [0,1]");
  EpsilonProfile prof;
  prof.per_symbol = std::move(per_symbol);
  Cond c = conditionals(pmf);
  for (int i = 0; i < pmf.nx(); ++i) prof.aggregate += c.px[i] * prof.per_symbol[i];
  return prof;
}

std::optional<int> CommonCode::decode(const Bitstring& word, int y) const {
  const auto& table = decode_tables[y];
  auto it = table.find(word.str());
  if (it == table.end()) return std::nullopt;
  return it->second;
}

std::vector<int> shannon_lengths(const std::vector<double>& q) {
  std::vector<int> lens;
  lens.reserve(q.size());
  for (double v : q) {
    if (v <= 0.0) fail(Errc::ZeroProbabilitySymbol, "Shannon length of a zero-probability symbol");
    if (v > 1.0 + 1e-12) fail(Errc::NotNormalized, "conditional probability above 1");
    int k = 0;
    while (std::ldexp(v, k) < 1.0) {  // smallest k with 2^-k <= v
      if (++k > 62) fail(Errc::BudgetExceeded, "Shannon length exceeds 62 bits");
    }
    lens.push_back(k);
  }
  return lens;
}

std::vector<Bitstring> canonical_prefix_code(const std::vector<int>& lengths) {
  const int n = static_cast<int>(lengths.size());
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return std::tie(lengths[a], a) < std::tie(lengths[b], b);
  });
  std::vector<Bitstring> words(n);
  std::uint64_t code = 0;
  int prev_len = -1;
  for (int idx : order) {
    int len = lengths[idx];
    if (len > 62) fail(Errc::BudgetExceeded, "codeword longer than 62 bits");
    if (prev_len < 0) {
      code = 0;
    } else {
      code = (code + 1) << (len - prev_len);
    }
    if (len < 64 && code >= (std::uint64_t{1} << len) && n > 1)
      fail(Errc::KraftViolated, "lengths are not Kraft-feasible");
    Bitstring w;
    w.append_uint(code, len);
    words[idx] = w;
    prev_len = len;
  }
  return words;
}

bool is_prefix_free(const std::vector<Bitstring>& words) {
  for (std::size_t a = 0; a < words.size(); ++a)
    for (std::size_t b = 0; b < words.size(); ++b)
      if (a != b && words[a].is_proper_prefix_of(words[b])) return false;
  return true;
}

CommonCode build_flag_code(const JointPmf& pmf, const RestrictedSet& a) {
  if (a.mass <= 0.0) fail(Errc::EmptyRestriction, "flag code needs a restriction with mass");
  const int nx = pmf.nx(), ny = pmf.ny();
  CommonCode code;
  code.nx = nx;
  code.ny = ny;
  code.encode_table.assign(static_cast<std::size_t>(nx) * ny, Bitstring("1"));
  code.decode_tables.resize(ny);

  std::vector<std::vector<int>> per_y(ny);
  std::vector<double> my(ny, 0.0);
  for (auto& [i, j] : a.cells) {
    if (pmf.at(i, j) <= 0.0) continue;  // zero-mass cells are dropped
    per_y[j].push_back(i);
    my[j] += pmf.at(i, j);
  }
  for (int j = 0; j < ny; ++j) {
    if (per_y[j].empty()) continue;
    std::sort(per_y[j].begin(), per_y[j].end());
    std::vector<double> q;
    q.reserve(per_y[j].size());
    for (int i : per_y[j]) q.push_back(pmf.at(i, j) / my[j]);
    auto lens = shannon_lengths(q);
    auto words = canonical_prefix_code(lens);
    for (std::size_t k = 0; k < per_y[j].size(); ++k) {
      Bitstring w("0");
      w.append(words[k]);
      code.encode_table[static_cast<std::size_t>(per_y[j][k]) * ny + j] = w;
      code.decode_tables[j][w.str()] = per_y[j][k];
    }
  }
  std::vector<std::pair<int, int>> kept;
  for (auto& [i, j] : a.cells)
    if (pmf.at(i, j) > 0.0) kept.emplace_back(i, j);
  code.correct_set = RestrictedSet::of(pmf, std::move(kept));
  return code;
}

CodeStats evaluate_common_code(const JointPmf& pmf, const CommonCode& code) {
  CodeStats st;
  for (int i = 0; i < pmf.nx(); ++i)
    for (int j = 0; j < pmf.ny(); ++j) {
      double p = pmf.at(i, j);
      if (p <= 0.0) continue;
      const Bitstring& w = code.codeword(i, j);
      st.avg_len += p * static_cast<double>(w.size());
      auto got = code.decode(w, j);
      if (!got || *got != i) st.error += p;
    }
  return st;
}

namespace {

std::uint64_t bin_draw(std::uint64_t seed, int x, int len) {
  std::uint64_t key = splitmix64(static_cast<std::uint64_t>(x) * 0x100000001B3ull +
                                 static_cast<std::uint64_t>(len));
  std::uint64_t w = splitmix64(seed ^ key);
  return len >= 64 ? w : (w & ((std::uint64_t{1} << len) - 1));
}

}  // namespace

SwCodec build_sw_codec(const JointPmf& pmf, const EpsilonProfile& budget, double delta,
                       std::uint64_t seed) {
  if (!(delta > 0.0)) fail(Errc::ParseError, "delta must be > 0");
  if (static_cast<int>(budget.per_symbol.size()) != pmf.nx())
    fail(Errc::AlphabetMismatch, "epsilon budget size does not match |X|");
  SwCodec codec;
  codec.nx = pmf.nx();
  codec.ny = pmf.ny();
  codec.delta = delta;
  codec.seed = seed;
  codec.budget = budget;
  Cond c = conditionals(pmf);
  codec.surprisal.resize(static_cast<std::size_t>(codec.nx) * codec.ny);
  for (int i = 0; i < codec.nx; ++i)
    for (int j = 0; j < codec.ny; ++j)
      codec.surprisal[static_cast<std::size_t>(i) * codec.ny + j] = c.surprisal(i, j);
  for (int i = 0; i < codec.nx; ++i) {
    double q = length_quantile(pmf, i, budget.per_symbol[i]).value;
    double raw = std::ceil(q + delta);
    if (raw > 62) fail(Errc::BudgetExceeded, "bin-index length exceeds 62 bits");
    codec.length_fn.push_back(std::max(1, static_cast<int>(raw)));
    codec.bins.push_back(bin_draw(seed, i, codec.length_fn.back()));
  }
  // typical-set population bound: |{x : (x,y) in T(l)}| <= 2^{l - delta/2}
  std::set<int> ls(codec.length_fn.begin(), codec.length_fn.end());
  for (int l : ls)
    for (int j = 0; j < codec.ny; ++j) {
      int count = 0;
      for (int i = 0; i < codec.nx; ++i)
        if (codec.typical(i, j, l)) ++count;
      if (count > std::pow(2.0, l - delta / 2.0) + 1e-9)
        fail(Errc::BoundViolated, "typical set larger than its bin space");
    }
  return codec;
}

Bitstring sw_encode(const SwCodec& codec, int x) {
  if (x < 0 || x >= codec.nx) fail(Errc::UnknownSymbol, "x index out of range");
  Bitstring out = elias_gamma_encode(static_cast<std::uint64_t>(codec.length_fn[x]));
  out.append_uint(codec.bins[x], codec.length_fn[x]);
  return out;
}

SwDecodeResult sw_decode(const SwCodec& codec, const Bitstring& stream, std::size_t pos, int y) {
  auto [lu, header] = elias_gamma_decode(stream, pos);
  if (lu > 62) fail(Errc::MalformedHeader, "bin-index length header out of range");
  int l = static_cast<int>(lu);
  if (pos + header + lu > stream.size())
    fail(Errc::MalformedHeader, "bin index truncated");
  std::uint64_t m = 0;
  for (int b = 0; b < l; ++b) m = (m << 1) | static_cast<std::uint64_t>(stream[pos + header + b]);

  SwDecodeResult res;
  res.consumed = header + lu;
  int found = -1;
  for (int x = 0; x < codec.nx; ++x) {
    if (codec.length_fn[x] != l || codec.bins[x] != m || !codec.typical(x, y, l)) continue;
    if (found >= 0) return res;  // ambiguous
    found = x;
  }
  if (found >= 0) res.x = found;
  return res;
}

double sw_exact_error(const JointPmf& pmf, const SwCodec& codec) {
  double err = 0.0;
  for (int i = 0; i < pmf.nx(); ++i) {
    Bitstring w = sw_encode(codec, i);
    for (int j = 0; j < pmf.ny(); ++j) {
      double p = pmf.at(i, j);
      if (p <= 0.0) continue;
      auto res = sw_decode(codec, w, 0, j);
      if (!res.x || *res.x != i) err += p;
    }
  }
  return err;
}

EpsilonProfile converse_budget(const JointPmf& pmf, const std::vector<double>& lengths,
                               double delta) {
  if (static_cast<int>(lengths.size()) != pmf.nx())
    fail(Errc::AlphabetMismatch, "length function size does not match |X|");
  Cond c = conditionals(pmf);
  std::vector<double> eps(pmf.nx(), 0.0);
  for (int i = 0; i < pmf.nx(); ++i)
    for (int j = 0; j < pmf.ny(); ++j) {
      double w = c.y_given_x(j, i);
      if (w > 0.0 && c.surprisal(i, j) > lengths[i] + delta) eps[i] += w;
    }
  for (double& e : eps) e = std::min(e, 1.0);
  return EpsilonProfile::of(pmf, eps);
}

double kraft_sum(const std::vector<int>& lengths) {
  double s = 0.0;
  for (int l : lengths) s += std::ldexp(1.0, -l);
  return s;
}

void kraft_check(const CommonCode& code) {
  for (int j = 0; j < code.ny; ++j) {
    std::set<std::string> distinct;
    for (int i = 0; i < code.nx; ++i) distinct.insert(code.codeword(i, j).str());
    double s = 0.0;
    for (const auto& w : distinct) s += std::ldexp(1.0, -static_cast<int>(w.size()));
    if (s > 1.0 + 1e-12)
      fail(Errc::KraftViolated, "per-y Kraft sum " + std::to_string(s));
  }
}

void kraft_check(const SwCodec& codec) {
  std::set<std::pair<int, std::uint64_t>> distinct;
  for (int x = 0; x < codec.nx; ++x) distinct.insert({codec.length_fn[x], codec.bins[x]});
  double s = 0.0;
  for (auto& [l, b] : distinct)
    s += std::ldexp(1.0, -static_cast<int>(elias_gamma_length(l)) - l);
  if (s > 1.0 + 1e-12) fail(Errc::KraftViolated, "codeword Kraft sum " + std::to_string(s));
}

std::string sw_codec_to_json(const SwCodec& codec, const JointPmf& pmf) {
  nlohmann::json j;
  j["delta"] = codec.delta;
  j["seed"] = codec.seed;
  j["eps_budget"] = codec.budget.per_symbol;
  j["length_fn"] = codec.length_fn;
  j["x_alphabet"] = pmf.x_labels;
  return j.dump();
}

SwCodec sw_codec_from_json(const std::string& text, const JointPmf& pmf) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    fail(Errc::ParseError, e.what());
  }
  try {
    if (j.at("x_alphabet").get<std::vector<std::string>>() != pmf.x_labels)
      fail(Errc::AlphabetMismatch, "codec was built for a different alphabet");
    auto budget = EpsilonProfile::of(pmf, j.at("eps_budget").get<std::vector<double>>());
    SwCodec codec = build_sw_codec(pmf, budget, j.at("delta").get<double>(),
                                   j.at("seed").get<std::uint64_t>());
    if (codec.length_fn != j.at("length_fn").get<std::vector<int>>())
      fail(Errc::ParseError, "stored length function does not match the pmf");
    return codec;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    fail(Errc::ParseError, e.what());
  }
}

}  // namespace sideinfo
