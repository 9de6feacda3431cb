#include <CLI11.hpp>
#include <string>
#include <vector>

#include "harness.hpp"

int main(int argc, char** argv) {
  namespace hs = mirrorprox::harness;
  CLI::App app{"mirrorprox: mirror-free mirror-prox experiment runner"};
  app.require_subcommand(1);

  std::string config, out, seeds_csv;
  bool quiet = false, timing = false;

  auto add_common = [&](CLI::App* sub, bool with_config) {
    if (with_config)
      sub->add_option("--config", config, "experiment config file")->required();
    sub->add_option("--out", out, "output directory override");
    sub->add_flag("--quiet", quiet, "suppress progress output");
  };

  auto* run = app.add_subcommand("run", "run an experiment config");
  add_common(run, true);
  run->add_option("--seeds", seeds_csv, "comma-separated seed override");
  run->add_flag("--timing", timing, "append per-iteration wall time to traces");

  auto* certify = app.add_subcommand("certify", "certificate report for a config");
  add_common(certify, true);
  double l_override = -1.0, m_override = -1.0;
  certify->add_option("--L", l_override, "override the smoothness constant");
  certify->add_option("--m", m_override, "override the strong-monotonicity constant");

  auto* antilip = app.add_subcommand("antilip", "anti-Lipschitz ratio table");
  add_common(antilip, false);
  double B = 1.0, E = 1.0;
  std::vector<double> thetas = {1.0, 0.1, 0.01};
  antilip->add_option("--B", B, "bilinear coupling coefficient");
  antilip->add_option("--E", E, "quartic coefficient");
  antilip->add_option("--thetas", thetas, "triangle scales")->delimiter(',');

  auto* plotdata = app.add_subcommand("plotdata", "merge traces into long format");
  add_common(plotdata, false);
  std::string dir;
  plotdata->add_option("--dir", dir, "directory of trace CSVs")->required();

  CLI11_PARSE(app, argc, argv);

  hs::CliOptions opts;
  opts.quiet = quiet;
  opts.timing = timing;
  if (!out.empty()) opts.out_override = out;
  if (!seeds_csv.empty()) {
    std::vector<std::uint64_t> seeds;
    std::string tok;
    std::stringstream ss(seeds_csv);
    while (std::getline(ss, tok, ','))
      if (!tok.empty()) seeds.push_back(std::stoull(tok));
    opts.seeds_override = seeds;
  }

  if (run->parsed()) return hs::cmd_run(config, opts);
  if (certify->parsed()) {
    std::optional<double> lo, mo;
    if (certify->count("--L")) lo = l_override;
    if (certify->count("--m")) mo = m_override;
    return hs::cmd_certify(config, opts, lo, mo);
  }
  if (antilip->parsed()) return hs::cmd_antilip(B, E, thetas, opts);
  if (plotdata->parsed()) return hs::cmd_plotdata(dir, opts);
  return 0;
}
