// Command line harness. Deliberately talks to the library only through
// the C interface so it doubles as a smoke test of that surface.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "photoncount/photoncount.h"

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  bool seed_set = false;
  bool quiet = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "JSON config file")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", opts.out_dir, "output directory");
  cmd->add_option("--seed", opts.seed, "override the config seed")
      ->each([&opts](const std::string&) { opts.seed_set = true; });
  cmd->add_flag("--quiet", opts.quiet, "suppress the summary printout");
}

int run(const std::string& command, const CommonOpts& opts) {
  std::ifstream in(opts.config_path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read config file " << opts.config_path << "\n";
    return PCS_ERR_CONFIG;
  }
  std::ostringstream text;
  text << in.rdbuf();

  pcs_run* handle = pcs_run_new(command.c_str(), text.str().c_str());
  if (opts.seed_set) pcs_run_set_seed(handle, opts.seed);

  const auto start = std::chrono::steady_clock::now();
  const pcs_status status = pcs_run_execute(handle, opts.out_dir.c_str());
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();

  if (status != PCS_OK && *pcs_run_error(handle)) {
    std::cerr << "error: " << pcs_run_error(handle) << "\n";
  }
  if (!opts.quiet) {
    const char* summary = pcs_run_summary(handle);
    if (*summary) std::cout << summary;
    std::cout << command << ": status " << status << ", wall time " << secs
              << " s, outputs in " << opts.out_dir << "\n";
  }
  pcs_run_free(handle);
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Photon counting in a lossless cavity: SD and E quantum-jump "
               "models, deterministic evolution and Monte Carlo unraveling"};
  app.require_subcommand(1);

  const char* commands[] = {"tables", "evolve", "trajectories", "g2",
                            "derive-check"};
  const char* descriptions[] = {
      "post-count means, rates and g2 against their closed forms",
      "unconditioned evolution of nbar(t) and p0(t)",
      "Monte Carlo trajectory ensemble vs the deterministic solver",
      "analytic g2 and its coincidence-window Monte Carlo estimate",
      "microscopic detector-field step vs the jump superoperators"};

  CommonOpts opts[5];
  for (int i = 0; i < 5; ++i) {
    add_common(app.add_subcommand(commands[i], descriptions[i]), opts[i]);
  }

  CLI11_PARSE(app, argc, argv);

  for (int i = 0; i < 5; ++i) {
    if (app.get_subcommand(commands[i])->parsed()) {
      return run(commands[i], opts[i]);
    }
  }
  return PCS_ERR_INTERNAL;
}
