#include "gsp/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "gsp/bounds.hpp"
#include "gsp/functionals.hpp"
#include "gsp/kernels.hpp"
#include "gsp/sampler.hpp"
#include "gsp/stats.hpp"

namespace gsp {

std::uint64_t row_seed(std::uint64_t seed, std::size_t n) {
  return splitmix64(splitmix64(seed) + static_cast<std::uint64_t>(n));
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

class CsvWriter {
 public:
  explicit CsvWriter(const std::filesystem::path& path) : out_(path, std::ios::binary) {
    if (!out_) throw std::runtime_error("cannot write " + path.string());
  }

  CsvWriter& operator<<(std::string_view s) {
    sep();
    out_ << csv_field(s);
    return *this;
  }
  CsvWriter& operator<<(const char* s) { return *this << std::string_view(s); }
  CsvWriter& operator<<(const std::string& s) { return *this << std::string_view(s); }
  CsvWriter& operator<<(double v) {
    sep();
    out_ << format_real(v);
    return *this;
  }
  template <class I>
    requires std::is_integral_v<I>
  CsvWriter& operator<<(I v) {
    sep();
    out_ << v;
    return *this;
  }
  void end_row() {
    out_ << '\n';
    first_ = true;
  }

 private:
  void sep() {
    if (!first_) out_ << ',';
    first_ = false;
  }
  std::ofstream out_;
  bool first_ = true;
};

using Echo = std::vector<std::pair<std::string, std::string>>;

void echo_header(CsvWriter& w, const Echo& echo) {
  for (const auto& [k, v] : echo) w << ("cfg_" + k);
}

void echo_values(CsvWriter& w, const Echo& echo) {
  for (const auto& [k, v] : echo) w << v;
}

void write_meta(const std::filesystem::path& path, std::string_view command,
                const ExperimentConfig& c) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "tool = gsp " << kToolVersion << '\n';
  out << "command = " << command << '\n';
  out << "kernels = " << kernels::active().name << '\n';
  for (const auto& [k, v] : c.echo()) out << k << " = " << v << '\n';
}

std::filesystem::path prepare_out(const ExperimentConfig& c) {
  const std::filesystem::path dir(c.out);
  std::filesystem::create_directories(dir);
  return dir;
}

// Domain/model problems that are only detectable once n is known.
template <class Fn>
auto at_index(std::size_t n, Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(0, "at n = " + std::to_string(n) + ": " + e.what());
  }
}

Functional make_functional(FunctionalKind kind, const Window& w, const ModelParams& p) {
  return kind == FunctionalKind::count ? Functional::phi(w, p.tau)
                                       : Functional::psi(w, p.tau, p.length);
}

}  // namespace

int cmd_sample(const ExperimentConfig& c, const RunOptions& options) {
  c.validate();
  const auto dir = prepare_out(c);
  const std::size_t n = c.indices.front();
  const ModelParams p = c.params_at(n);
  const Domain domain = c.domain_at(n);
  const std::uint64_t seed = row_seed(c.seed, n);
  const ChainResult result = at_index(n, [&] {
    return run_chain(p, domain, c.chain, seed, {options.sabotage_death});
  });

  {
    std::ofstream out(dir / "configuration.csv", std::ios::binary);
    out << "cx,cy,angle,length\n";
    char buf[128];
    for (std::size_t i = 0; i < result.config.size(); ++i) {
      const Segment& k = result.config[i];
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", k.center().x, k.center().y,
                    k.angle(), k.length());
      out << buf;
    }
  }

  const Echo echo = c.echo();
  const std::size_t h = energy(result.config);
  CsvWriter w(dir / "sample_summary.csv");
  w << "n" << "count" << "energy" << "birth_rate" << "death_rate" << "move_rate"
    << "tau_n" << "beta_n" << "domain_area" << "row_seed";
  echo_header(w, echo);
  w.end_row();
  w << n << result.config.size() << h << result.stats.birth.rate() << result.stats.death.rate()
    << result.stats.move.rate() << p.tau << p.beta << domain.area() << seed;
  echo_values(w, echo);
  w.end_row();
  write_meta(dir / "sample.meta", "sample", c);

  if (options.log) {
    *options.log << "sample: n=" << n << " count=" << result.config.size() << " energy=" << h
                 << '\n';
  }
  return kExitOk;
}

int cmd_gnz(const ExperimentConfig& c, const RunOptions& options) {
  c.validate();
  const auto dir = prepare_out(c);
  const Echo echo = c.echo();

  GnzSettings settings;
  settings.chain = c.chain;
  settings.replicates = c.replicates;
  settings.mc_points = c.gnz_points;
  settings.parallelism = c.parallelism;
  settings.sampler.sabotage_death = options.sabotage_death;

  CsvWriter w(dir / "gnz.csv");
  w << "f_id" << "lhs" << "lhs_se" << "rhs" << "rhs_se" << "z_score" << "pass" << "diff_se" << "n"
    << "replicates" << "tau_n" << "beta_n" << "row_seed";
  echo_header(w, echo);
  w.end_row();

  bool all_pass = true;
  for (std::size_t n : c.indices) {
    const ModelParams p = c.params_at(n);
    const Domain domain = c.domain_at(n);
    const std::uint64_t seed = row_seed(c.seed, n);
    const auto reports = at_index(n, [&] {
      return gnz_check_all(p, domain, domain.window, settings, seed);
    });
    for (const GnzCheckReport& r : reports) {
      all_pass = all_pass && r.pass();
      w << r.f_id << r.lhs << r.lhs_se << r.rhs << r.rhs_se << r.z_score()
        << (r.pass() ? "true" : "false") << r.diff_se << n << r.n_samples << p.tau << p.beta << seed;
      echo_values(w, echo);
      w.end_row();
      if (options.log) {
        *options.log << "gnz: n=" << n << ' ' << r.f_id << " z=" << r.z_score()
                     << (r.pass() ? " pass" : " FAIL") << '\n';
      }
    }
  }
  write_meta(dir / "gnz.meta", "gnz", c);
  return all_pass ? kExitOk : kExitDiagnostic;
}

int cmd_bound(const ExperimentConfig& c, const RunOptions& options) {
  c.validate();
  const auto dir = prepare_out(c);
  const Echo echo = c.echo();

  CsvWriter w(dir / "bound.csv");
  w << "n" << "term1" << "term2" << "term3" << "term4" << "term5" << "total" << "radicand"
    << "b_const" << "functional" << "tau_n" << "beta_n" << "leb_w" << "perim_w" << "norm_l1"
    << "norm_l2" << "norm_l3";
  echo_header(w, echo);
  w.end_row();

  for (std::size_t n : c.indices) {
    for (FunctionalKind kind : c.functionals) {
      const SequencePoint pt = at_index(n, [&] {
        return evaluate_sequence_at(c.sequence_spec(kind), n);
      });
      w << n;
      for (double t : pt.bound.terms) w << t;
      w << pt.bound.total << pt.bound.radicand << pt.bound.b_const << functional_name(kind)
        << pt.params.tau << pt.params.beta << pt.window.area() << pt.window.perimeter()
        << pt.norms.l1 << pt.norms.l2 << pt.norms.l3;
      echo_values(w, echo);
      w.end_row();
    }
  }
  write_meta(dir / "bound.meta", "bound", c);
  if (options.log) *options.log << "bound: " << c.indices.size() << " indices\n";
  return kExitOk;
}

int cmd_experiment(const ExperimentConfig& c, const RunOptions& options) {
  c.validate();
  if (c.replicates < 100) throw ConfigError(0, "experiment needs replicates >= 100");
  const auto dir = prepare_out(c);
  const Echo echo = c.echo();

  CsvWriter rows(dir / "experiment.csv");
  rows << "n" << "functional" << "status" << "tau_n" << "beta_n" << "leb_w" << "perim_w"
       << "norm_l1" << "norm_l2" << "norm_l3" << "term1" << "term2" << "term3" << "term4"
       << "term5" << "bound_total" << "emp_w1" << "emp_ks" << "innovation_mean"
       << "innovation_sd" << "max_compensator_se" << "replicates" << "seed" << "row_seed"
       << "error";
  echo_header(rows, echo);
  rows.end_row();

  CsvWriter plot(dir / "experiment_plot.csv");
  plot << "n" << "functional" << "bound_total" << "emp_w1";
  plot.end_row();

  CsvWriter timing(dir / "experiment_timing.csv");
  timing << "n" << "wall_time_s";
  timing.end_row();

  for (std::size_t n : c.indices) {
    const auto start = std::chrono::steady_clock::now();
    const std::uint64_t seed = row_seed(c.seed, n);
    std::vector<SequencePoint> points;
    for (FunctionalKind kind : c.functionals) {
      points.push_back(at_index(n, [&] { return evaluate_sequence_at(c.sequence_spec(kind), n); }));
    }
    const ModelParams p = points.front().params;
    const Window window = points.front().window;
    const Domain domain = c.domain_at(n);

    std::vector<Functional> fs;
    for (FunctionalKind kind : c.functionals) fs.push_back(make_functional(kind, window, p));

    InnovationSet set;
    std::string error;
    try {
      set = innovation_sample_set(fs, p, domain, c.replicates, c.chain, c.compensator, seed,
                                  c.parallelism);
    } catch (const std::domain_error& e) {
      error = e.what();
    }

    for (std::size_t q = 0; q < fs.size(); ++q) {
      const SequencePoint& pt = points[q];
      rows << n << functional_name(c.functionals[q]) << (error.empty() ? "ok" : "error")
           << p.tau << p.beta << window.area() << window.perimeter() << pt.norms.l1
           << pt.norms.l2 << pt.norms.l3;
      for (double t : pt.bound.terms) rows << t;
      rows << pt.bound.total;
      if (error.empty()) {
        const DistanceReport d = distance_to_normal(set.values[q]);
        double max_se = 0.0;
        for (double se : set.compensator_se[q]) max_se = std::max(max_se, se);
        rows << d.w1 << d.ks << d.sample_mean << d.sample_sd << max_se;
        plot << n << functional_name(c.functionals[q]) << pt.bound.total << d.w1;
        plot.end_row();
        if (options.log) {
          *options.log << "experiment: n=" << n << ' ' << functional_name(c.functionals[q])
                       << " w1=" << d.w1 << " bound=" << pt.bound.total << '\n';
        }
      } else {
        rows << "" << "" << "" << "" << "";
        if (options.log) *options.log << "experiment: n=" << n << " error: " << error << '\n';
      }
      rows << c.replicates << c.seed << seed << error;
      echo_values(rows, echo);
      rows.end_row();
    }

    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    timing << n << elapsed.count();
    timing.end_row();
  }
  write_meta(dir / "experiment.meta", "experiment", c);
  return kExitOk;
}

}  // namespace gsp
