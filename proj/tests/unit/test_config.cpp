#include <doctest.h>

#include <cmath>
#include <string>

#include "gsp/config.hpp"
#include "gsp/expr.hpp"

using namespace gsp;

namespace {
int error_line(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return -1;
}
}  // namespace

TEST_SUITE("config") {
  TEST_CASE("expressions") {
    CHECK(Expression::parse("1 + 2 * 3")(0) == 7.0);
    CHECK(Expression::parse("(1 + 2) * 3")(0) == 9.0);
    CHECK(Expression::parse("0.5/n")(4) == 0.125);
    CHECK(Expression::parse("2*sqrt(n)")(16) == 8.0);
    CHECK(Expression::parse("pow(n, 1.5) - -1")(4) == 9.0);
    CHECK(Expression::parse("-n + +2")(5) == -3.0);
    CHECK(Expression::parse("8 / 2 / 2")(0) == 2.0);
    CHECK(Expression::parse("1 - 2 - 3")(0) == -4.0);
    CHECK(Expression::parse("pi")(0) == doctest::Approx(3.14159265358979));
    CHECK(Expression::parse("1e-3*n")(2) == 0.002);
    CHECK(Expression::parse(".5")(0) == 0.5);
    CHECK(Expression::parse("n").uses_n());
    CHECK_FALSE(Expression::parse("sqrt(2)").uses_n());
    CHECK(Expression::parse("0.5/n").text() == "0.5/n");
    CHECK(Expression(0.25).text() == "0.25");
    for (const char* bad : {"", "1 +", "2 * (3", "foo(1)", "pow(1)", "sqrt 2", "1 2", "n n",
                            "3 $ 4"}) {
      CHECK_THROWS_AS(Expression::parse(bad), ExpressionError);
    }
    CHECK_THROWS_AS(Expression::parse(std::string(1000, '(') + "1" + std::string(1000, ')')),
                    ExpressionError);
  }

  TEST_CASE("full configuration round trip") {
    const ExperimentConfig c = parse_config(R"(
# sequence run
tau = 1
beta = 0.5/n        # decays
R = 0.5
length_law = uniform(0.2, 1)
window = disk
size = 2*sqrt(n)
margin = 3
indices = 1, 4, 16
sweeps = 300
burn_in = 200
init = empty
replicates = 2000
mc_points = 50000
mc_target_se = 0.004
mc_max_points = 1000000
compensator = control_variate
gnz_points = 7000
seed = 123456789012
functionals = psi
potential_bound = 2
lemma_b = segment
parallelism = 3
out = results/run1
)");
    CHECK(c.params_at(4).beta == 0.125);
    CHECK(c.window_at(16).shape == Shape::disk);
    CHECK(c.window_at(16).size == 8.0);
    CHECK(c.domain_at(1).margin == 3.0);
    CHECK(c.length == LengthLaw::uniform(0.2, 1.0));
    CHECK(c.indices == std::vector<std::size_t>{1, 4, 16});
    CHECK(c.chain.sweeps == 300);
    CHECK(c.chain.burn_in == 200);
    CHECK(c.chain.init == InitialState::empty);
    CHECK(c.replicates == 2000);
    CHECK(c.compensator.initial_points == 50000);
    CHECK(c.compensator.target_se == 0.004);
    CHECK(c.compensator.max_points == 1000000);
    CHECK(c.compensator.method == CompensatorMethod::control_variate);
    CHECK(c.gnz_points == 7000);
    CHECK(c.seed == 123456789012ULL);
    CHECK(c.functionals == std::vector<FunctionalKind>{FunctionalKind::length_weighted});
    CHECK(c.potential_bound == 2.0);
    CHECK(c.lemma == LemmaConstant::segment);
    CHECK(c.parallelism == 3);
    CHECK(c.out == "results/run1");

    // The echo parses back to the same settings.
    std::string text;
    for (const auto& [k, v] : c.echo()) text += k + " = " + v + "\n";
    text += "out = results/run1\nparallelism = 3\n";
    const ExperimentConfig again = parse_config(text);
    CHECK(again.echo() == c.echo());
  }

  TEST_CASE("defaults and n_max") {
    const ExperimentConfig c = parse_config("n_max = 5\n");
    CHECK(c.indices == std::vector<std::size_t>{1, 2, 3, 4, 5});
    CHECK(c.margin_value() == 8.0 * c.R);
    CHECK(parse_config("R = 1\n").margin_value() == 8.0);
    CHECK(parse_length_law("uniform(0.2;1)") == LengthLaw::uniform(0.2, 1.0));
    CHECK(parse_length_law(" fixed( 0.75 ) ") == LengthLaw::fixed(0.75));
  }

  TEST_CASE("errors carry line numbers") {
    CHECK(error_line("tau = 1\nbogus = 3\n") == 2);
    CHECK(error_line("tau = 1\n\n# c\nbeta 2\n") == 4);
    CHECK(error_line("window = hexagon\n") == 1);
    CHECK(error_line("sweeps = ten\n") == 1);
    CHECK(error_line("size = 2*\n") == 1);
    CHECK(error_line("R = n\n") == 1);
    CHECK(error_line("length_law = gamma(2)\n") == 1);
    CHECK(error_line("seed =\n") == 1);
    CHECK(error_line("indices = 1\nn_max = 3\n") == 0);
  }

  TEST_CASE("validation") {
    CHECK_THROWS_WITH_AS(parse_config("sweeps = 0\nburn_in = 0\n"),
                         "config: sweeps must exceed burn_in", ConfigError);
    CHECK_THROWS_AS(parse_config("tau = 1 - n\nindices = 2\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("length_law = fixed(2)\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("indices = 0\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("functionals = chi\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("size = 1 - n\nindices = 1\n"), ConfigError);
  }
}
