#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "gsp/config.hpp"

namespace gsp {

inline constexpr std::string_view kToolVersion = "0.3.0";

enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitDiagnostic = 3 };

struct RunOptions {
  /// Test hook forwarded to the sampler by `gnz`.
  bool sabotage_death = false;
  std::ostream* log = nullptr;
};

/// Seed of the sequence row with index n.
std::uint64_t row_seed(std::uint64_t seed, std::size_t n);

/// Each command writes into config.out (created if missing) and returns an
/// ExitCode. Configuration problems surface as ConfigError.
///
///   sample      configuration.csv, sample_summary.csv, sample.meta
///   gnz         gnz.csv, gnz.meta
///   bound       bound.csv, bound.meta
///   experiment  experiment.csv, experiment_plot.csv, experiment_timing.csv,
///               experiment.meta
int cmd_sample(const ExperimentConfig& config, const RunOptions& options = {});
int cmd_gnz(const ExperimentConfig& config, const RunOptions& options = {});
int cmd_bound(const ExperimentConfig& config, const RunOptions& options = {});
int cmd_experiment(const ExperimentConfig& config, const RunOptions& options = {});

/// RFC 4180 quoting when the field needs it.
std::string csv_field(std::string_view s);
/// Round-trippable decimal ("%.17g").
std::string format_real(double v);

}  // namespace gsp
