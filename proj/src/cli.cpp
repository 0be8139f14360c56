#include "sideinfo/cli.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "sideinfo/oracle.hpp"
#include "sideinfo/sources.hpp"

namespace sideinfo {

namespace {

constexpr const char* kSchema = "1";

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::ParseError, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<std::string> read_lines(const std::string& path) {
  std::string text = read_file(path);
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::fwrite(content.data(), 1, content.size(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::ParseError, "cannot write " + path);
  out << content;
}

void write_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::ParseError, "cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

std::vector<std::uint8_t> read_bytes(const std::string& path) {
  std::string s = read_file(path);
  return {s.begin(), s.end()};
}

JointPmf single_pmf(const MixtureSpec& src) {
  if (src.components.size() != 1)
    fail(Errc::AlphabetMismatch, "this command expects a single-component source");
  return src.components.front();
}

EpsilonProfile parse_budget(const JointPmf& pmf, const std::string& spec) {
  if (spec.rfind("uniform:", 0) == 0) {
    char* end = nullptr;
    double e = std::strtod(spec.c_str() + 8, &end);
    if (end == spec.c_str() + 8) fail(Errc::ParseError, "bad uniform epsilon: " + spec);
    return EpsilonProfile::uniform(pmf, e);
  }
  if (spec.rfind("file:", 0) == 0) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(read_file(spec.substr(5)));
    } catch (const Error&) {
      throw;
    } catch (const std::exception& e) {
      fail(Errc::ParseError, e.what());
    }
    std::vector<double> eps(pmf.nx(), 0.0);
    for (auto& [key, val] : j.items()) eps[pmf.x_index(key)] = val.get<double>();
    return EpsilonProfile::of(pmf, eps);
  }
  fail(Errc::ParseError, "eps budget must be uniform:<e> or file:<path>");
}

struct Csv {
  std::ostringstream out;
  void header(const std::string& h) { out << h << "\n"; }
  template <typename... Ts>
  void row(const Ts&... fields) {
    bool first = true;
    ((out << (first ? "" : ","), out << fields, first = false), ...);
    out << "\n";
  }
};

void note_seed(std::uint64_t seed) {
  std::fprintf(stderr, "{\"seed\": %" PRIu64 "}\n", seed);
}

int cmd_quantities(const RunConfig& cfg) {
  JointPmf pmf = single_pmf(load_source(cfg.input_path));
  validate(pmf);
  Csv csv;
  csv.header("schema,quantity,epsilon,value,witness");
  csv.row(kSchema, "conditional_entropy", "", fmt(conditional_entropy(pmf)), "");
  for (double eps : cfg.epsilons) {
    auto [he, arg] = eps_entropy(pmf, eps);
    std::string witness;
    for (auto& [i, j] : arg.cells) {
      if (!witness.empty()) witness += "|";
      witness += pmf.x_labels[i] + ":" + pmf.y_labels[j];
    }
    csv.row(kSchema, "eps_entropy", fmt(eps), fmt(he), witness);
    csv.row(kSchema, "trimmed_entropy", fmt(eps), fmt(trimmed_entropy(pmf, eps)), "");
    csv.row(kSchema, "trimmed_entropy_lp", fmt(eps), fmt(trimmed_entropy_lp(pmf, eps)), "");
    auto [rv, rank] = ranked_entropy(pmf, eps);
    csv.row(kSchema, "ranked_entropy", fmt(eps), fmt(rv), "i_star=" + std::to_string(rank.i_star));
    csv.row(kSchema, "mean_length_quantile", fmt(eps), fmt(mean_length_quantile(pmf, eps)), "");
    for (int i = 0; i < pmf.nx(); ++i) {
      auto q = length_quantile(pmf, i, eps);
      csv.row(kSchema, "length_quantile[" + pmf.x_labels[i] + "]", fmt(eps), fmt(q.value),
              "tail_mass=" + fmt(q.tail_mass_at_value));
    }
  }
  write_output(cfg.output_path, csv.out.str());
  return 0;
}

int cmd_encode(const RunConfig& cfg) {
  JointPmf pmf = single_pmf(load_source(cfg.input_path));
  validate(pmf);
  EpsilonProfile budget = parse_budget(pmf, cfg.eps_budget);
  SwCodec codec = build_sw_codec(pmf, budget, cfg.delta, cfg.seed);
  note_seed(cfg.seed);

  auto xs = read_lines(cfg.stream_path);
  std::vector<int> idx(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) idx[i] = pmf.x_index(xs[i]);

  int workers = std::max(1, cfg.workers);
  std::vector<Bitstring> parts(workers);
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      std::size_t lo = xs.size() * w / workers, hi = xs.size() * (w + 1) / workers;
      for (std::size_t i = lo; i < hi; ++i) parts[w].append(sw_encode(codec, idx[i]));
    });
  }
  for (auto& th : pool) th.join();
  Bitstring stream;
  for (auto& p : parts) stream.append(p);

  std::string bits_path = cfg.output_path.empty() ? cfg.stream_path + ".bits" : cfg.output_path;
  write_bytes(bits_path, stream.to_bytes());
  if (!cfg.codec_path.empty()) write_output(cfg.codec_path, sw_codec_to_json(codec, pmf));
  nlohmann::json summary;
  summary["symbols"] = xs.size();
  summary["total_bits"] = stream.size();
  summary["seed"] = cfg.seed;
  std::printf("%s\n", summary.dump().c_str());
  return 0;
}

int cmd_decode(const RunConfig& cfg) {
  JointPmf pmf = single_pmf(load_source(cfg.input_path));
  validate(pmf);
  if (cfg.codec_path.empty()) fail(Errc::ParseError, "decode requires --codec");
  SwCodec codec = sw_codec_from_json(read_file(cfg.codec_path), pmf);
  Bitstring stream = Bitstring::from_bytes(read_bytes(cfg.stream_path));
  auto ys = read_lines(cfg.side_path);

  std::vector<std::string> decoded;
  std::size_t pos = 0, ok = 0;
  for (const auto& ylabel : ys) {
    int y = pmf.y_index(ylabel);
    if (pos >= stream.size())
      fail(Errc::StreamLengthMismatch, "bitstream ended before the side stream");
    auto res = sw_decode(codec, stream, pos, y);
    pos += res.consumed;
    if (res.x) {
      decoded.push_back(pmf.x_labels[*res.x]);
      ++ok;
    } else {
      decoded.push_back("?");
    }
  }
  if (pos != stream.size())
    fail(Errc::StreamLengthMismatch, "bitstream has leftover bits after the side stream");

  std::ostringstream body;
  for (const auto& s : decoded) body << s << "\n";
  write_output(cfg.output_path, body.str());

  nlohmann::json summary;
  summary["symbols"] = ys.size();
  summary["decoded"] = ok;
  summary["total_bits"] = stream.size();
  if (!cfg.truth_path.empty()) {
    auto truth = read_lines(cfg.truth_path);
    if (truth.size() != decoded.size())
      fail(Errc::StreamLengthMismatch, "truth stream length differs");
    std::size_t match = 0;
    for (std::size_t i = 0; i < truth.size(); ++i)
      if (truth[i] == decoded[i]) ++match;
    summary["matches"] = match;
  }
  std::printf("%s\n", summary.dump().c_str());
  return 0;
}

int cmd_verify(const RunConfig& cfg) {
  JointPmf pmf = single_pmf(load_source(cfg.input_path));
  validate(pmf);
  Csv csv;
  csv.header("schema,theorem,epsilon,delta,quantity,value,bound_lo,bound_hi,pass");
  bool all_pass = true;
  auto row = [&](const std::string& thm, double eps, double delta, const std::string& q, double v,
                 double lo, double hi, bool pass) {
    csv.row(kSchema, thm, fmt(eps), fmt(delta), q, fmt(v), fmt(lo), fmt(hi), pass ? "1" : "0");
    all_pass = all_pass && pass;
  };
  const double inf = std::numeric_limits<double>::infinity();

  if (cfg.theorem == "1") {
    for (double eps : cfg.epsilons) {
      auto rep = verify_code_sandwich(pmf, eps);
      row("1", eps, 0, "eps_entropy", rep.eps_entropy_value, -inf, inf, true);
      row("1", eps, 0, "optimal_code", rep.optimum, rep.eps_entropy_value,
          rep.flag_avg_len + 1e-9, rep.pass);
      row("1", eps, 0, "flag_avg_len", rep.flag_avg_len, rep.optimum,
          rep.eps_entropy_value + 2.0, rep.pass);
      row("1", eps, 0, "flag_error", rep.flag_error, 0.0, eps, rep.flag_error <= eps + 1e-12);
    }
  } else if (cfg.theorem == "2") {
    for (double eps : cfg.epsilons) {
      auto rep = verify_entropy_sandwich(pmf, eps);
      row("2", eps, 0, "eps_entropy_vs_ranked", rep.eps_entropy_value, rep.ranked - 2.0,
          rep.ranked, rep.pass);
      row("2", eps, 0, "eps_entropy_vs_trimmed", rep.eps_entropy_value, rep.trimmed - 1.0,
          rep.trimmed, rep.pass);
      row("2", eps, 0, "trimmed_lp", rep.trimmed_lp, rep.ranked - 1.0, rep.trimmed, rep.pass);
    }
  } else if (cfg.theorem == "3" || cfg.theorem == "4" || cfg.theorem == "lemma5") {
    note_seed(cfg.seed);
    std::vector<double> deltas = cfg.deltas.empty() ? std::vector<double>{cfg.delta} : cfg.deltas;
    for (double eps : cfg.epsilons) {
      EpsilonProfile budget = EpsilonProfile::uniform(pmf, eps);
      for (double delta : deltas) {
        if (cfg.theorem == "3") {
          double worst_margin = inf;
          double err_sum = 0.0, err_sq = 0.0;
          for (int s = 0; s < cfg.seeds; ++s) {
            SwCodec codec = build_sw_codec(pmf, budget, delta, cfg.seed + s);
            for (int x = 0; x < pmf.nx(); ++x) {
              double q = length_quantile(pmf, x, budget.per_symbol[x]).value;
              double bound = q + delta + 2.0 * std::log2(q + delta + 1.0) + 3.0;
              double len = static_cast<double>(sw_encode(codec, x).size());
              worst_margin = std::min(worst_margin, bound - len);
            }
            double e = sw_exact_error(pmf, codec);
            err_sum += e;
            err_sq += e * e;
          }
          double mean = err_sum / cfg.seeds;
          double var = std::max(0.0, err_sq / cfg.seeds - mean * mean);
          double se = std::sqrt(var / cfg.seeds);
          row("3", eps, delta, "length_bound_margin", worst_margin, 0.0, inf,
              worst_margin >= -1e-9);
          double hi = budget.aggregate + std::pow(2.0, -delta / 2.0) + 3.0 * se;
          row("3", eps, delta, "seed_avg_error", mean, 0.0, hi, mean <= hi + 1e-12);
        } else {
          SwCodec codec = build_sw_codec(pmf, budget, delta, cfg.seed);
          std::vector<double> lens(pmf.nx());
          for (int x = 0; x < pmf.nx(); ++x)
            lens[x] = static_cast<double>(sw_encode(codec, x).size());
          double err = sw_exact_error(pmf, codec);
          EpsilonProfile cert = converse_budget(pmf, lens, delta);
          if (cfg.theorem == "4") {
            double hi = err + std::pow(2.0, -delta);
            row("4", eps, delta, "aggregate_budget", cert.aggregate, 0.0, hi,
                cert.aggregate <= hi + 1e-9);
            double worst = inf;
            for (int x = 0; x < pmf.nx(); ++x) {
              double q = length_quantile(pmf, x, cert.per_symbol[x]).value;
              worst = std::min(worst, lens[x] - (q - delta));
            }
            row("4", eps, delta, "length_certificate_margin", worst, 0.0, inf, worst >= -1e-9);
          } else {
            double lo = cert.aggregate - std::pow(2.0, -delta);
            row("lemma5", eps, delta, "exact_error", err, lo, inf, err >= lo - 1e-9);
          }
        }
      }
    }
  } else if (cfg.theorem == "rcom") {
    for (double eps : cfg.epsilons) {
      auto rep = rate_bracket_check(pmf, eps, cfg.n);
      row("rcom", eps, 0, "ranked_entropy_rate", rep.value,
          (1.0 - eps) * rep.q_lo - rep.slack, rep.q_hi + rep.slack, rep.pass);
    }
  } else {
    fail(Errc::ParseError, "unknown theorem: " + cfg.theorem);
  }
  write_output(cfg.output_path, csv.out.str());
  return all_pass ? 0 : 1;
}

int cmd_sweep(const RunConfig& cfg) {
  MixtureSpec src = load_source(cfg.input_path);
  double eps = cfg.epsilons.empty() ? 0.1 : cfg.epsilons.front();
  McOptions mc;
  mc.seed = cfg.seed;
  Csv csv;
  csv.header("schema,quantity,n,value,prediction,gap,stderr,method");
  auto emit = [&](const std::vector<SweepRow>& rows) {
    for (const auto& r : rows)
      csv.row(kSchema, r.quantity, r.n, fmt(r.value), fmt(r.prediction), fmt(r.gap),
              fmt(r.stderr_val), r.method);
  };
  if (cfg.quantity == "rcom") {
    emit(ranked_rate_sweep(single_pmf(src), eps, cfg.n_max));
  } else if (cfg.quantity == "ohs") {
    note_seed(cfg.seed);
    emit(length_quantile_rate_sweep(single_pmf(src), eps, cfg.n_max, mc));
  } else if (cfg.quantity == "mixture") {
    note_seed(cfg.seed);
    emit(mixture_rate_sweep(src, eps, cfg.n_max, mc));
  } else if (cfg.quantity == "spectrum") {
    note_seed(cfg.seed);
    auto est = spectrum_quantiles(src, cfg.n_max, cfg.eps_tail, cfg.samples, cfg.seed);
    double pred = 0.0;
    for (std::size_t i = 0; i < src.components.size(); ++i)
      pred += src.weights[i] * conditional_entropy(src.components[i]);
    csv.row(kSchema, "spectrum_quantile_lo", cfg.n_max, fmt(est.quantile_lo), fmt(pred),
            fmt(est.quantile_lo - pred), "", "mc");
    csv.row(kSchema, "spectrum_quantile_hi", cfg.n_max, fmt(est.quantile_hi), fmt(pred),
            fmt(est.quantile_hi - pred), "", "mc");
  } else {
    fail(Errc::ParseError, "unknown sweep quantity: " + cfg.quantity);
  }
  write_output(cfg.output_path, csv.out.str());
  return 0;
}

int cmd_diagnose(const RunConfig& cfg) {
  if (!cfg.condition1) fail(Errc::ParseError, "diagnose requires --condition1");
  MixtureSpec src = load_source(cfg.input_path);
  auto rep = encoder_gain_diagnostic(src, cfg.epsilons, cfg.n_max);
  Csv csv;
  csv.header("schema,n,epsilon_n,entropy_rate,quantile_rate,d_n,flag");
  for (const auto& r : rep.rows)
    csv.row(kSchema, r.n, fmt(r.eps_n), fmt(r.entropy_rate), fmt(r.quantile_rate), fmt(r.d_n),
            r.n == rep.rows.back().n ? (rep.flag ? "1" : "0") : "");
  write_output(cfg.output_path, csv.out.str());
  return 0;
}

}  // namespace

RoundtripReport encode_decode_roundtrip(const JointPmf& pmf, const EpsilonProfile& budget,
                                        double delta, std::uint64_t seed,
                                        const std::vector<std::string>& xs,
                                        const std::vector<std::string>& ys, int workers) {
  if (xs.size() != ys.size())
    fail(Errc::StreamLengthMismatch, "symbol and side-information streams differ in length");
  SwCodec codec = build_sw_codec(pmf, budget, delta, seed);

  std::vector<int> xi(xs.size()), yi(ys.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xi[i] = pmf.x_index(xs[i]);
    yi[i] = pmf.y_index(ys[i]);
  }
  workers = std::max(1, workers);
  std::vector<Bitstring> parts(workers);
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      std::size_t lo = xs.size() * static_cast<std::size_t>(w) / workers;
      std::size_t hi = xs.size() * static_cast<std::size_t>(w + 1) / workers;
      for (std::size_t i = lo; i < hi; ++i) parts[w].append(sw_encode(codec, xi[i]));
    });
  }
  for (auto& th : pool) th.join();
  Bitstring stream;
  for (auto& p : parts) stream.append(p);

  RoundtripReport rep;
  rep.symbols = xs.size();
  rep.total_bits = stream.size();
  std::size_t pos = 0;
  for (std::size_t i = 0; i < ys.size(); ++i) {
    auto res = sw_decode(codec, stream, pos, yi[i]);
    pos += res.consumed;
    if (res.x && *res.x == xi[i]) ++rep.decoded_ok;
  }
  if (pos != stream.size())
    fail(Errc::StreamLengthMismatch, "decoder did not consume the full stream");
  return rep;
}

int run(const RunConfig& cfg) {
  try {
    if (cfg.command == "quantities") return cmd_quantities(cfg);
    if (cfg.command == "encode") return cmd_encode(cfg);
    if (cfg.command == "decode") return cmd_decode(cfg);
    if (cfg.command == "verify") return cmd_verify(cfg);
    if (cfg.command == "sweep") return cmd_sweep(cfg);
    if (cfg.command == "diagnose") return cmd_diagnose(cfg);
    fail(Errc::ParseError, "unknown command: " + cfg.command);
  } catch (const Error& e) {
    nlohmann::json j;
    j["error"] = errc_name(e.kind());
    j["message"] = e.what();
    std::fprintf(stderr, "%s\n", j.dump().c_str());
    switch (e.kind()) {
      case Errc::BoundViolated:
        return 1;
      case Errc::BudgetExceeded:
        return 3;
      default:
        return 2;
    }
  } catch (const std::exception& e) {
    nlohmann::json j;
    j["error"] = "Internal";
    j["message"] = e.what();
    std::fprintf(stderr, "%s\n", j.dump().c_str());
    return 2;
  }
}

}  // namespace sideinfo
