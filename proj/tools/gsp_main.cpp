#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "gsp/commands.hpp"
#include "gsp/config.hpp"

namespace {

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> parallelism;
  std::optional<std::string> out;
  bool sabotage_death = false;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "settings file (key = value)")->required();
  sub->add_option("--seed", f.seed, "overrides the config seed");
  sub->add_option("--parallelism", f.parallelism, "worker threads (0 = all cores)");
  sub->add_option("--out", f.out, "output directory");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gibbs segment process sampler, GNZ diagnostics and normal-approximation bounds"};
  app.set_version_flag("--version", std::string(gsp::kToolVersion));
  app.require_subcommand(1);

  Flags flags;
  auto* sample = app.add_subcommand("sample", "run one chain and write the final configuration");
  auto* gnz = app.add_subcommand("gnz", "GNZ residual diagnostic over independent chains");
  auto* bound = app.add_subcommand("bound", "analytic Wasserstein bound along the sequence");
  auto* experiment =
      app.add_subcommand("experiment", "bounds plus empirical innovation distances per index");
  for (auto* sub : {sample, gnz, bound, experiment}) add_common(sub, flags);
#ifdef GSP_TEST_HOOKS
  gnz->add_flag("--sabotage-death", flags.sabotage_death,
                "accept every death proposal (negative control)");
#endif

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : gsp::kExitConfig;
  }

  try {
    gsp::ExperimentConfig config = gsp::load_config(flags.config);
    if (flags.seed) config.seed = *flags.seed;
    if (flags.parallelism) config.parallelism = *flags.parallelism;
    if (flags.out) config.out = *flags.out;

    gsp::RunOptions options;
    options.sabotage_death = flags.sabotage_death;
    options.log = &std::cerr;

    if (sample->parsed()) return gsp::cmd_sample(config, options);
    if (gnz->parsed()) return gsp::cmd_gnz(config, options);
    if (bound->parsed()) return gsp::cmd_bound(config, options);
    return gsp::cmd_experiment(config, options);
  } catch (const gsp::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return gsp::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
