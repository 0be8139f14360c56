#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sideinfo/cli.hpp"
#include "sideinfo/oracle.hpp"
#include "sideinfo/sources.hpp"

namespace py = pybind11;
using namespace sideinfo;

namespace {

JointPmf make_pmf(std::vector<std::string> xs, std::vector<std::string> ys,
                  std::vector<std::vector<double>> rows) {
  JointPmf pmf;
  pmf.x_labels = std::move(xs);
  pmf.y_labels = std::move(ys);
  for (auto& r : rows) pmf.p.insert(pmf.p.end(), r.begin(), r.end());
  validate(pmf);
  return pmf;
}

MixtureSpec make_mixture(std::vector<double> weights, std::vector<JointPmf> components) {
  MixtureSpec spec;
  spec.weights = std::move(weights);
  spec.components = std::move(components);
  validate(spec);
  return spec;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "One-shot source coding with side-information";

  py::register_exception<Error>(m, "SideinfoError");

  py::class_<JointPmf>(m, "JointPmf")
      .def(py::init(&make_pmf), py::arg("x_labels"), py::arg("y_labels"), py::arg("pmf"))
      .def_readonly("x_labels", &JointPmf::x_labels)
      .def_readonly("y_labels", &JointPmf::y_labels)
      .def("at", [](const JointPmf& p, int i, int j) { return p.at(i, j); })
      .def("to_json", &pmf_to_json)
      .def_static("from_json", &pmf_from_json);

  py::class_<MixtureSpec>(m, "MixtureSpec")
      .def(py::init(&make_mixture), py::arg("weights"), py::arg("components"));

  m.def("conditional_entropy", &conditional_entropy);
  m.def("conditional_x_given_y", &conditional_x_given_y);
  m.def("product_extension", &product_extension);
  m.def("mix", &mix);
  m.def("kl_divergence_x_marginals", &kl_divergence_x_marginals);

  m.def("eps_entropy", [](const JointPmf& pmf, double eps) {
    auto [v, arg] = eps_entropy(pmf, eps);
    return py::make_tuple(v, arg.cells, arg.mass);
  });
  m.def("trimmed_entropy", &trimmed_entropy);
  m.def("trimmed_entropy_lp", &trimmed_entropy_lp);
  m.def("ranked_entropy", [](const JointPmf& pmf, double eps) {
    auto [v, rank] = ranked_entropy(pmf, eps);
    return py::make_tuple(v, rank.i_star);
  });
  m.def("length_quantile", [](const JointPmf& pmf, const std::string& x, double eps) {
    auto q = length_quantile(pmf, x, eps);
    return py::make_tuple(q.value, q.tail_mass_at_value);
  });
  m.def("mean_length_quantile", &mean_length_quantile);
  m.def("surprisal_tail", &surprisal_tail);

  m.def("elias_gamma_encode",
        [](std::uint64_t v) { return elias_gamma_encode(v).str(); });
  m.def("elias_gamma_decode", [](const std::string& bits) {
    auto [v, used] = elias_gamma_decode(Bitstring(bits), 0);
    return py::make_tuple(v, used);
  });

  m.def("flag_code_stats", [](const JointPmf& pmf, double eps) {
    auto [he, arg] = eps_entropy(pmf, eps);
    auto stats = evaluate_common_code(pmf, build_flag_code(pmf, arg));
    py::dict d;
    d["eps_entropy"] = he;
    d["error"] = stats.error;
    d["avg_len"] = stats.avg_len;
    return d;
  });
  m.def("optimal_common_code", [](const JointPmf& pmf, double eps) {
    auto res = optimal_common_code(pmf, eps);
    return py::make_tuple(res.optimum, res.witness_set.cells);
  });

  py::class_<SwCodec>(m, "SwCodec")
      .def_readonly("length_fn", &SwCodec::length_fn)
      .def_readonly("delta", &SwCodec::delta)
      .def_readonly("seed", &SwCodec::seed)
      .def("encode",
           [](const SwCodec& c, int x) { return sw_encode(c, x).str(); })
      .def("decode", [](const SwCodec& c, const std::string& bits, int y) {
        auto res = sw_decode(c, Bitstring(bits), 0, y);
        return py::make_tuple(res.x ? py::cast(*res.x) : py::none(), res.consumed);
      });
  m.def("build_sw_codec",
        [](const JointPmf& pmf, const std::vector<double>& eps_budget, double delta,
           std::uint64_t seed) {
          return build_sw_codec(pmf, EpsilonProfile::of(pmf, eps_budget), delta, seed);
        },
        py::arg("pmf"), py::arg("eps_budget"), py::arg("delta"), py::arg("seed") = kDefaultSeed);
  m.def("sw_exact_error", &sw_exact_error);
  m.def("converse_budget", [](const JointPmf& pmf, const std::vector<double>& lens, double delta) {
    auto prof = converse_budget(pmf, lens, delta);
    return py::make_tuple(prof.per_symbol, prof.aggregate);
  });

  m.def("verify_code_sandwich", [](const JointPmf& pmf, double eps) {
    auto rep = verify_code_sandwich(pmf, eps);
    py::dict d;
    d["eps_entropy"] = rep.eps_entropy_value;
    d["optimum"] = rep.optimum;
    d["flag_avg_len"] = rep.flag_avg_len;
    d["flag_error"] = rep.flag_error;
    d["pass"] = rep.pass;
    return d;
  });
  m.def("verify_entropy_sandwich", [](const JointPmf& pmf, double eps) {
    auto rep = verify_entropy_sandwich(pmf, eps);
    py::dict d;
    d["eps_entropy"] = rep.eps_entropy_value;
    d["trimmed"] = rep.trimmed;
    d["trimmed_lp"] = rep.trimmed_lp;
    d["ranked"] = rep.ranked;
    d["pass"] = rep.pass;
    return d;
  });

  m.def("ranked_entropy_rate", &ranked_entropy_rate_exact);
  m.def("mean_length_quantile_rate",
        [](const MixtureSpec& src, double eps, int n) {
          return mean_length_quantile_rate_exact(src, eps, n);
        });
  m.def("conditional_entropy_rate",
        [](const MixtureSpec& src, int n) { return conditional_entropy_rate_exact(src, n); });
  m.def("encoder_gain_diagnostic",
        [](const MixtureSpec& src, int n_max) {
          auto rep = encoder_gain_diagnostic(src, {}, n_max);
          py::list rows;
          for (const auto& r : rep.rows) {
            py::dict d;
            d["n"] = r.n;
            d["eps_n"] = r.eps_n;
            d["entropy_rate"] = r.entropy_rate;
            d["quantile_rate"] = r.quantile_rate;
            d["d_n"] = r.d_n;
            rows.append(d);
          }
          return rows;
        });

  m.def("roundtrip", [](const JointPmf& pmf, const std::vector<double>& eps_budget, double delta,
                        std::uint64_t seed, const std::vector<std::string>& xs,
                        const std::vector<std::string>& ys) {
    auto rep =
        encode_decode_roundtrip(pmf, EpsilonProfile::of(pmf, eps_budget), delta, seed, xs, ys);
    return py::make_tuple(rep.symbols, rep.decoded_ok, rep.total_bits);
  });

  m.attr("DEFAULT_SEED") = kDefaultSeed;
}
