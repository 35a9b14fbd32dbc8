#include "gsp/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace gsp {

ConfigError::ConfigError(int line, const std::string& what)
    : std::runtime_error(line > 0 ? "config line " + std::to_string(line) + ": " + what
                                  : "config: " + what),
      line_(line) {}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t at = s.find(sep, start);
    parts.push_back(trim(s.substr(start, at - start)));
    if (at == std::string_view::npos) return parts;
    start = at + 1;
  }
}

template <class T>
T parse_number(std::string_view s) {
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("expected a number, got '" + std::string(s) + "'");
  }
  return v;
}

double parse_real(std::string_view s) {
  const Expression e = Expression::parse(s);
  if (e.uses_n()) throw std::invalid_argument("this key does not accept n");
  return e(0.0);
}

std::string fmt(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

LengthLaw parse_length_law(std::string_view text) {
  text = trim(text);
  const std::size_t open = text.find('(');
  if (open == std::string_view::npos || text.back() != ')') {
    throw std::invalid_argument("length law must be fixed(l) or uniform(a, b)");
  }
  const std::string_view name = trim(text.substr(0, open));
  std::string_view inner = text.substr(open + 1, text.size() - open - 2);
  const char sep = inner.find(';') != std::string_view::npos ? ';' : ',';
  const auto args = split(inner, sep);
  if (name == "fixed" && args.size() == 1) return LengthLaw::fixed(parse_real(args[0]));
  if (name == "uniform" && args.size() == 2) {
    return LengthLaw::uniform(parse_real(args[0]), parse_real(args[1]));
  }
  throw std::invalid_argument("length law must be fixed(l) or uniform(a, b)");
}

std::string_view functional_name(FunctionalKind kind) {
  return kind == FunctionalKind::count ? "phi" : "psi";
}

std::string_view shape_name(Shape shape) { return shape == Shape::square ? "square" : "disk"; }

ModelParams ExperimentConfig::params_at(std::size_t n) const {
  const double t = static_cast<double>(n);
  return {tau(t), beta(t), R, length};
}

Window ExperimentConfig::window_at(std::size_t n) const {
  const double s = size(static_cast<double>(n));
  return shape == Shape::square ? Window::square(s) : Window::disk(s);
}

Domain ExperimentConfig::domain_at(std::size_t n) const {
  return {window_at(n), margin_value()};
}

SequenceSpec ExperimentConfig::sequence_spec(FunctionalKind kind) const {
  SequenceSpec s;
  s.tau = tau;
  s.beta = beta;
  s.window_size = size;
  s.shape = shape;
  s.length = length;
  s.R = R;
  s.kind = kind;
  s.potential_bound = potential_bound;
  s.lemma = lemma;
  return s;
}

void ExperimentConfig::validate() const {
  try {
    chain.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(0, e.what());
  }
  if (indices.empty()) throw ConfigError(0, "no sequence indices");
  if (functionals.empty()) throw ConfigError(0, "no functionals selected");
  if (!(margin_value() >= 0.0)) throw ConfigError(0, "margin must be nonnegative");
  if (!(potential_bound > 0.0)) throw ConfigError(0, "potential_bound must be positive");
  if (compensator.initial_points == 0) throw ConfigError(0, "mc_points must be positive");
  if (gnz_points == 0) throw ConfigError(0, "gnz_points must be positive");
  for (std::size_t n : indices) {
    if (n == 0) throw ConfigError(0, "sequence indices start at 1");
    try {
      params_at(n).validate();
      (void)window_at(n);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(0, "at n = " + std::to_string(n) + ": " + e.what());
    }
  }
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::echo() const {
  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("tau", tau.text());
  kv.emplace_back("beta", beta.text());
  kv.emplace_back("R", fmt(R));
  kv.emplace_back("length_law", length.describe());
  kv.emplace_back("window", std::string(shape_name(shape)));
  kv.emplace_back("size", size.text());
  kv.emplace_back("margin", fmt(margin_value()));
  std::string idx;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (i) idx += ",";
    idx += std::to_string(indices[i]);
  }
  kv.emplace_back("indices", idx);
  kv.emplace_back("sweeps", std::to_string(chain.sweeps));
  kv.emplace_back("burn_in", std::to_string(chain.burn_in));
  kv.emplace_back("init", chain.init == InitialState::poisson ? "poisson" : "empty");
  kv.emplace_back("replicates", std::to_string(replicates));
  kv.emplace_back("mc_points", std::to_string(compensator.initial_points));
  kv.emplace_back("mc_target_se", fmt(compensator.target_se));
  kv.emplace_back("mc_max_points", std::to_string(compensator.max_points));
  kv.emplace_back("compensator", compensator.method == CompensatorMethod::plain ? "plain"
                                                                                 : "control_variate");
  kv.emplace_back("gnz_points", std::to_string(gnz_points));
  kv.emplace_back("seed", std::to_string(seed));
  std::string fs;
  for (std::size_t i = 0; i < functionals.size(); ++i) {
    if (i) fs += ",";
    fs += functional_name(functionals[i]);
  }
  kv.emplace_back("functionals", fs);
  kv.emplace_back("potential_bound", fmt(potential_bound));
  kv.emplace_back("lemma_b", lemma == LemmaConstant::coarse ? "coarse" : "segment");
  return kv;
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig c;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  std::optional<std::size_t> n_max;
  bool have_indices = false;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(line_no, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (value.empty()) throw ConfigError(line_no, "missing value for '" + key + "'");
    try {
      if (key == "tau") {
        c.tau = Expression::parse(value);
      } else if (key == "beta") {
        c.beta = Expression::parse(value);
      } else if (key == "R") {
        c.R = parse_real(value);
      } else if (key == "length_law") {
        c.length = parse_length_law(value);
      } else if (key == "window") {
        if (value == "square") c.shape = Shape::square;
        else if (value == "disk") c.shape = Shape::disk;
        else throw std::invalid_argument("window must be square or disk");
      } else if (key == "size" || key == "side" || key == "radius") {
        c.size = Expression::parse(value);
      } else if (key == "margin") {
        c.margin = parse_real(value);
      } else if (key == "indices") {
        c.indices.clear();
        for (auto part : split(value, ',')) c.indices.push_back(parse_number<std::size_t>(part));
        have_indices = true;
      } else if (key == "n_max") {
        n_max = parse_number<std::size_t>(value);
      } else if (key == "sweeps") {
        c.chain.sweeps = parse_number<std::size_t>(value);
      } else if (key == "burn_in") {
        c.chain.burn_in = parse_number<std::size_t>(value);
      } else if (key == "init") {
        if (value == "poisson") c.chain.init = InitialState::poisson;
        else if (value == "empty") c.chain.init = InitialState::empty;
        else throw std::invalid_argument("init must be poisson or empty");
      } else if (key == "replicates") {
        c.replicates = parse_number<std::size_t>(value);
      } else if (key == "mc_points") {
        c.compensator.initial_points = parse_number<std::size_t>(value);
      } else if (key == "mc_target_se") {
        c.compensator.target_se = parse_real(value);
      } else if (key == "mc_max_points") {
        c.compensator.max_points = parse_number<std::size_t>(value);
      } else if (key == "compensator") {
        if (value == "plain") c.compensator.method = CompensatorMethod::plain;
        else if (value == "control_variate") c.compensator.method = CompensatorMethod::control_variate;
        else throw std::invalid_argument("compensator must be plain or control_variate");
      } else if (key == "gnz_points") {
        c.gnz_points = parse_number<std::size_t>(value);
      } else if (key == "seed") {
        c.seed = parse_number<std::uint64_t>(value);
      } else if (key == "functionals") {
        c.functionals.clear();
        for (auto part : split(value, ',')) {
          if (part == "phi") c.functionals.push_back(FunctionalKind::count);
          else if (part == "psi") c.functionals.push_back(FunctionalKind::length_weighted);
          else throw std::invalid_argument("functionals are phi and/or psi");
        }
      } else if (key == "potential_bound") {
        c.potential_bound = parse_real(value);
      } else if (key == "lemma_b") {
        if (value == "coarse") c.lemma = LemmaConstant::coarse;
        else if (value == "segment") c.lemma = LemmaConstant::segment;
        else throw std::invalid_argument("lemma_b must be coarse or segment");
      } else if (key == "parallelism") {
        c.parallelism = parse_number<unsigned>(value);
      } else if (key == "out") {
        c.out = std::string(value);
      } else {
        throw ConfigError(line_no, "unknown key '" + key + "'");
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError(line_no, key + ": " + e.what());
    }
  }
  if (n_max) {
    if (have_indices) throw ConfigError(0, "give either indices or n_max, not both");
    c.indices.clear();
    for (std::size_t n = 1; n <= *n_max; ++n) c.indices.push_back(n);
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(0, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace gsp
