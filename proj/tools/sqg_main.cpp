#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sqg/harness.hpp"
#include "sqg/verify.hpp"

namespace {

// strict comma-separated doubles; returns false on any junk
bool parse_epsilons(const std::string& arg, std::vector<double>& out) {
  size_t pos = 0;
  while (pos <= arg.size()) {
    const size_t comma = arg.find(',', pos);
    const std::string tok = arg.substr(pos, comma == std::string::npos ? comma : comma - pos);
    if (tok.empty()) return false;
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0' || !(v > 0.0)) return false;
    out.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return !out.empty();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pseudo-spectral solver for dispersive surface quasi-geostrophic flow on a strip"};
  app.require_subcommand(1);

  std::string run_config;
  CLI::App* run = app.add_subcommand("run", "integrate one configuration");
  run->add_option("config", run_config, "JSON config path")->required();

  std::string sweep_config, epsilons_arg, regime;
  double alpha = -1.0;
  CLI::App* sweep =
      app.add_subcommand("sweep", "epsilon sweep compared against the matching limit model");
  sweep->add_option("config", sweep_config, "JSON config path")->required();
  sweep->add_option("--epsilons", epsilons_arg, "comma-separated, strictly decreasing")
      ->required();
  sweep->add_option("--regime", regime, "fixed | combined (defaults to the config's regime)");
  sweep->add_option("--alpha", alpha, "combined-regime coupling exponent in (0, 1]");

  std::string suite = "all";
  CLI::App* verify = app.add_subcommand("verify", "run the deterministic property suites");
  verify->add_option("--suite", suite, "core | lp | solver | all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (run->parsed()) return sqg::cmd_run(run_config, std::cout, std::cerr);
  if (sweep->parsed()) {
    sqg::SweepOptions opt;
    opt.regime = regime;
    opt.alpha = alpha;
    if (!parse_epsilons(epsilons_arg, opt.epsilons)) {
      std::cerr << "cannot parse --epsilons \"" << epsilons_arg
                << "\": expected positive numbers separated by commas\n";
      return 1;
    }
    return sqg::cmd_sweep(sweep_config, opt, std::cout, std::cerr);
  }
  if (verify->parsed()) return sqg::run_verify(suite, std::cout, std::cerr);
  return 1;
}
