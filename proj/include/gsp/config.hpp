#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gsp/bounds.hpp"
#include "gsp/expr.hpp"
#include "gsp/functionals.hpp"
#include "gsp/geometry.hpp"
#include "gsp/model.hpp"
#include "gsp/sampler.hpp"

namespace gsp {

/// Raised for malformed or inconsistent configuration; `line` is 0 for
/// errors not tied to a single line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

/// Line-oriented `key = value` settings with `#` comments. tau, beta and size
/// accept expressions in the sequence index n (e.g. `beta = 0.5/n`,
/// `size = 2*sqrt(n)`).
struct ExperimentConfig {
  Expression tau{1.0};
  Expression beta{0.0};
  double R = 0.5;
  LengthLaw length = LengthLaw::fixed(1.0);
  Shape shape = Shape::square;
  Expression size{10.0};
  /// Dilation of the window giving the simulation domain; defaults to 8R.
  std::optional<double> margin;

  /// Sequence indices; `n_max = N` expands to 1..N.
  std::vector<std::size_t> indices{1};
  ChainSettings chain;
  std::size_t replicates = 500;
  CompensatorSettings compensator;
  std::size_t gnz_points = 20000;
  std::uint64_t seed = 1;
  std::vector<FunctionalKind> functionals{FunctionalKind::count,
                                          FunctionalKind::length_weighted};
  double potential_bound = 1.0;
  LemmaConstant lemma = LemmaConstant::coarse;
  unsigned parallelism = 0;
  std::string out = "out";

  double margin_value() const { return margin ? *margin : 8.0 * R; }
  ModelParams params_at(std::size_t n) const;
  Window window_at(std::size_t n) const;
  Domain domain_at(std::size_t n) const;
  SequenceSpec sequence_spec(FunctionalKind kind) const;

  /// Throws ConfigError for invariant violations.
  void validate() const;

  /// Canonical key/value pairs (expressions kept as written).
  std::vector<std::pair<std::string, std::string>> echo() const;
};

ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

LengthLaw parse_length_law(std::string_view text);
std::string_view functional_name(FunctionalKind kind);
std::string_view shape_name(Shape shape);

}  // namespace gsp
