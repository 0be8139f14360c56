#include "sideinfo/dist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

namespace sideinfo {

namespace {

void check_labels(const std::vector<std::string>& labels, const char* which) {
  if (labels.empty()) fail(Errc::AlphabetMismatch, std::string(which) + " alphabet is empty");
  std::set<std::string> seen;
  for (const auto& l : labels) {
    if (l.empty()) fail(Errc::DuplicateLabel, std::string(which) + " alphabet has an empty label");
    if (!seen.insert(l).second)
      fail(Errc::DuplicateLabel, std::string(which) + " label repeated: " + l);
  }
}

}  // namespace

int JointPmf::x_index(const std::string& label) const {
  auto it = std::find(x_labels.begin(), x_labels.end(), label);
  if (it == x_labels.end()) fail(Errc::UnknownSymbol, "unknown x symbol: " + label);
  return static_cast<int>(it - x_labels.begin());
}

int JointPmf::y_index(const std::string& label) const {
  auto it = std::find(y_labels.begin(), y_labels.end(), label);
  if (it == y_labels.end()) fail(Errc::UnknownSymbol, "unknown y symbol: " + label);
  return static_cast<int>(it - y_labels.begin());
}

void validate(const JointPmf& pmf) {
  check_labels(pmf.x_labels, "x");
  check_labels(pmf.y_labels, "y");
  if (pmf.p.size() != pmf.x_labels.size() * pmf.y_labels.size())
    fail(Errc::AlphabetMismatch, "pmf matrix shape does not match alphabets");
  double total = 0.0;
  for (double v : pmf.p) {
    if (v < 0.0) fail(Errc::NegativeMass, "negative cell probability " + std::to_string(v));
    total += v;
  }
  if (std::abs(total - 1.0) > kProbTol) {
    std::ostringstream os;
    os << "total mass " << total << " deviates from 1 by " << std::abs(total - 1.0);
    fail(Errc::NotNormalized, os.str());
  }
  for (int i = 0; i < pmf.nx(); ++i) {
    double m = 0.0;
    for (int j = 0; j < pmf.ny(); ++j) m += pmf.at(i, j);
    if (m <= 0.0) fail(Errc::ZeroMarginal, "P_X(" + pmf.x_labels[i] + ") = 0");
  }
  for (int j = 0; j < pmf.ny(); ++j) {
    double m = 0.0;
    for (int i = 0; i < pmf.nx(); ++i) m += pmf.at(i, j);
    if (m <= 0.0) fail(Errc::ZeroMarginal, "P_Y(" + pmf.y_labels[j] + ") = 0");
  }
}

void validate(const MixtureSpec& spec) {
  if (spec.components.empty() || spec.weights.size() != spec.components.size())
    fail(Errc::AlphabetMismatch, "mixture needs matching weights and components");
  double total = 0.0;
  for (double a : spec.weights) {
    if (a <= 0.0) fail(Errc::NegativeMass, "mixture weights must be positive");
    total += a;
  }
  if (std::abs(total - 1.0) > kProbTol)
    fail(Errc::NotNormalized, "mixture weights sum to " + std::to_string(total));
  const auto& first = spec.components.front();
  for (const auto& c : spec.components) {
    validate(c);
    if (c.x_labels != first.x_labels || c.y_labels != first.y_labels)
      fail(Errc::AlphabetMismatch, "mixture components must share alphabets");
  }
}

double Cond::surprisal(int i, int j) const {
  double q = x_given_y(i, j);
  if (q <= 0.0) return std::numeric_limits<double>::infinity();
  return -std::log2(q);
}

Cond conditionals(const JointPmf& pmf) {
  Cond c;
  c.pmf = &pmf;
  c.px.assign(pmf.nx(), 0.0);
  c.py.assign(pmf.ny(), 0.0);
  for (int i = 0; i < pmf.nx(); ++i)
    for (int j = 0; j < pmf.ny(); ++j) {
      c.px[i] += pmf.at(i, j);
      c.py[j] += pmf.at(i, j);
    }
  return c;
}

double conditional_x_given_y(const JointPmf& pmf, const std::string& x, const std::string& y) {
  Cond c = conditionals(pmf);
  return c.x_given_y(pmf.x_index(x), pmf.y_index(y));
}

double conditional_y_given_x(const JointPmf& pmf, const std::string& y, const std::string& x) {
  Cond c = conditionals(pmf);
  return c.y_given_x(pmf.y_index(y), pmf.x_index(x));
}

double conditional_entropy(const JointPmf& pmf) {
  Cond c = conditionals(pmf);
  double h = 0.0;
  for (int i = 0; i < pmf.nx(); ++i)
    for (int j = 0; j < pmf.ny(); ++j) {
      double v = pmf.at(i, j);
      if (v > 0.0) h += v * std::log2(c.py[j] / v);
    }
  return h;
}

JointPmf product_extension(const JointPmf& pmf, int n) {
  if (n < 1) fail(Errc::BudgetExceeded, "blocklength must be >= 1");
  for (const auto& l : pmf.x_labels)
    if (l.find(kTupleSep) != std::string::npos)
      fail(Errc::DuplicateLabel, "label contains the reserved tuple separator: " + l);
  for (const auto& l : pmf.y_labels)
    if (l.find(kTupleSep) != std::string::npos)
      fail(Errc::DuplicateLabel, "label contains the reserved tuple separator: " + l);

  double cells = std::pow(static_cast<double>(pmf.nx()) * pmf.ny(), n);
  if (cells > static_cast<double>(cell_budget()))
    fail(Errc::BudgetExceeded, "product extension exceeds the cell budget");

  auto tuple_labels = [&](const std::vector<std::string>& base) {
    std::vector<std::string> out = base;
    for (int k = 1; k < n; ++k) {
      std::vector<std::string> next;
      next.reserve(out.size() * base.size());
      for (const auto& a : out)
        for (const auto& b : base) next.push_back(a + kTupleSep + b);
      out = std::move(next);
    }
    return out;
  };

  JointPmf out;
  out.x_labels = tuple_labels(pmf.x_labels);
  out.y_labels = tuple_labels(pmf.y_labels);
  std::size_t nx = out.x_labels.size(), ny = out.y_labels.size();
  out.p.assign(nx * ny, 1.0);
  // digits of the flat index select per-coordinate symbols
  for (std::size_t xi = 0; xi < nx; ++xi) {
    for (std::size_t yj = 0; yj < ny; ++yj) {
      double v = 1.0;
      std::size_t xr = xi, yr = yj;
      for (int k = 0; k < n; ++k) {
        int a = static_cast<int>(xr % pmf.nx());
        int b = static_cast<int>(yr % pmf.ny());
        xr /= pmf.nx();
        yr /= pmf.ny();
        v *= pmf.at(a, b);
      }
      out.p[xi * ny + yj] = v;
    }
  }
  return out;
}

JointPmf mix(const MixtureSpec& spec) {
  validate(spec);
  JointPmf out = spec.components.front();
  std::fill(out.p.begin(), out.p.end(), 0.0);
  for (std::size_t k = 0; k < spec.components.size(); ++k)
    for (std::size_t c = 0; c < out.p.size(); ++c)
      out.p[c] += spec.weights[k] * spec.components[k].p[c];
  return out;
}

double kl_divergence_x_marginals(const JointPmf& p1, const JointPmf& p2) {
  if (p1.x_labels != p2.x_labels)
    fail(Errc::AlphabetMismatch, "x alphabets differ");
  Cond c1 = conditionals(p1), c2 = conditionals(p2);
  double d = 0.0;
  for (int i = 0; i < p1.nx(); ++i) {
    if (c1.px[i] <= 0.0) continue;
    if (c2.px[i] <= 0.0) return std::numeric_limits<double>::infinity();
    d += c1.px[i] * std::log2(c1.px[i] / c2.px[i]);
  }
  return d;
}

// --- serialization ---

JointPmf pmf_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    fail(Errc::ParseError, e.what());
  }
  try {
    JointPmf pmf;
    pmf.x_labels = j.at("x_alphabet").get<std::vector<std::string>>();
    pmf.y_labels = j.at("y_alphabet").get<std::vector<std::string>>();
    auto rows = j.at("pmf").get<std::vector<std::vector<double>>>();
    if (rows.size() != pmf.x_labels.size())
      fail(Errc::ParseError, "pmf row count does not match x_alphabet");
    for (const auto& r : rows) {
      if (r.size() != pmf.y_labels.size())
        fail(Errc::ParseError, "pmf column count does not match y_alphabet");
      pmf.p.insert(pmf.p.end(), r.begin(), r.end());
    }
    return pmf;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    fail(Errc::ParseError, e.what());
  }
}

std::string pmf_to_json(const JointPmf& pmf) {
  nlohmann::json j;
  j["x_alphabet"] = pmf.x_labels;
  j["y_alphabet"] = pmf.y_labels;
  std::vector<std::vector<double>> rows(pmf.nx());
  for (int i = 0; i < pmf.nx(); ++i)
    for (int j2 = 0; j2 < pmf.ny(); ++j2) rows[i].push_back(pmf.at(i, j2));
  j["pmf"] = rows;
  return j.dump();
}

JointPmf pmf_from_tsv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.find("x\ty\tp") != 0)
    fail(Errc::ParseError, "TSV must start with header x<TAB>y<TAB>p");
  std::vector<std::string> xs, ys;
  std::vector<std::tuple<std::string, std::string, double>> rows;
  auto index_of = [](std::vector<std::string>& v, const std::string& s) {
    auto it = std::find(v.begin(), v.end(), s);
    if (it == v.end()) {
      v.push_back(s);
      return v.size() - 1;
    }
    return static_cast<std::size_t>(it - v.begin());
  };
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string x, y, ps;
    if (!std::getline(ls, x, '\t') || !std::getline(ls, y, '\t') || !std::getline(ls, ps, '\t'))
      fail(Errc::ParseError, "bad TSV row: " + line);
    char* end = nullptr;
    double v = std::strtod(ps.c_str(), &end);
    if (end == ps.c_str()) fail(Errc::ParseError, "bad probability: " + ps);
    index_of(xs, x);
    index_of(ys, y);
    rows.emplace_back(x, y, v);
  }
  JointPmf pmf;
  pmf.x_labels = xs;
  pmf.y_labels = ys;
  pmf.p.assign(xs.size() * ys.size(), 0.0);
  for (auto& [x, y, v] : rows) pmf.at(pmf.x_index(x), pmf.y_index(y)) += v;
  return pmf;
}

MixtureSpec mixture_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    fail(Errc::ParseError, e.what());
  }
  MixtureSpec spec;
  try {
    for (const auto& c : j.at("components")) {
      spec.weights.push_back(c.at("weight").get<double>());
      spec.components.push_back(pmf_from_json(c.at("pmf").dump()));
    }
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    fail(Errc::ParseError, e.what());
  }
  return spec;
}

MixtureSpec load_source(const std::string& path) {
  std::string text;
  {
    FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) fail(Errc::ParseError, "cannot open " + path);
    char buf[65536];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof buf, f)) > 0) text.append(buf, got);
    std::fclose(f);
  }
  std::size_t k = text.find_first_not_of(" \t\r\n");
  if (k == std::string::npos) fail(Errc::ParseError, "empty input file " + path);
  MixtureSpec spec;
  if (text[k] == '{') {
    nlohmann::json probe;
    try {
      probe = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
      fail(Errc::ParseError, e.what());
    }
    if (probe.contains("components")) {
      spec = mixture_from_json(text);
    } else {
      spec.weights = {1.0};
      spec.components = {pmf_from_json(text)};
    }
  } else {
    spec.weights = {1.0};
    spec.components = {pmf_from_tsv(text)};
  }
  validate(spec);
  return spec;
}

}  // namespace sideinfo
