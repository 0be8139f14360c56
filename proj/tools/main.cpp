#include <CLI11.hpp>

#include "sideinfo/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"One-shot source coding with side-information: quantities, codecs, verifiers"};
  app.require_subcommand(1);

  sideinfo::RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--pmf", cfg.input_path, "joint pmf (JSON/TSV) or mixture JSON")->required();
    sub->add_option("--out", cfg.output_path, "output path (default: stdout)");
    sub->add_option("--seed", cfg.seed, "RNG seed");
    sub->add_option("--workers", cfg.workers, "worker threads");
  };

  auto* quantities = app.add_subcommand("quantities", "one-shot information quantities as CSV");
  add_common(quantities);
  quantities->add_option("--eps", cfg.epsilons, "epsilon values")->required();

  auto* encode = app.add_subcommand("encode", "Slepian-Wolf encode a symbol stream");
  add_common(encode);
  encode->add_option("--input", cfg.stream_path, "x stream, one symbol per line")->required();
  encode->add_option("--codec", cfg.codec_path, "write codec description JSON here");
  encode->add_option("--delta", cfg.delta, "slack parameter (bits), > 0");
  encode->add_option("--eps-budget", cfg.eps_budget, "uniform:<e> or file:<path>");

  auto* decode = app.add_subcommand("decode", "decode a bitstream with side-information");
  add_common(decode);
  decode->add_option("--input", cfg.stream_path, "bitstream file")->required();
  decode->add_option("--side", cfg.side_path, "y stream, one symbol per line")->required();
  decode->add_option("--codec", cfg.codec_path, "codec description JSON")->required();
  decode->add_option("--truth", cfg.truth_path, "optional x stream to score against");

  auto* verify = app.add_subcommand("verify", "check the coding-theorem bounds");
  add_common(verify);
  verify->add_option("--theorem", cfg.theorem, "1|2|3|4|lemma5|rcom")->required();
  verify->add_option("--eps", cfg.epsilons, "epsilon values")->required();
  verify->add_option("--delta", cfg.deltas, "delta values (theorems 3/4, lemma5)");
  verify->add_option("--seeds", cfg.seeds, "seed count for the theorem-3 average");
  verify->add_option("--n", cfg.n, "blocklength for rcom");

  auto* sweep = app.add_subcommand("sweep", "finite-blocklength sweeps as CSV");
  add_common(sweep);
  sweep->add_option("--quantity", cfg.quantity, "rcom|ohs|mixture|spectrum")->required();
  sweep->add_option("--eps", cfg.epsilons, "epsilon (first value used)");
  sweep->add_option("--n-max", cfg.n_max, "largest blocklength");
  sweep->add_option("--samples", cfg.samples, "spectrum sample count");
  sweep->add_option("--eps-tail", cfg.eps_tail, "spectrum tail level");

  auto* diagnose = app.add_subcommand("diagnose", "finite-n condition diagnostics");
  add_common(diagnose);
  diagnose->add_flag("--condition1", cfg.condition1, "encoder side-information diagnostic");
  diagnose->add_option("--n-max", cfg.n_max, "largest blocklength");
  diagnose->add_option("--eps", cfg.epsilons, "explicit epsilon sequence (default n^-1/2)");

  CLI11_PARSE(app, argc, argv);
  cfg.command = app.get_subcommands().front()->get_name();
  return sideinfo::run(cfg);
}
