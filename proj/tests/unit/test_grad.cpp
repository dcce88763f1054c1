#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "dypp/circuit/builders.hpp"
#include "dypp/circuit/executor.hpp"
#include "dypp/grad/evaluator.hpp"
#include "dypp/grad/gradient.hpp"
#include "dypp/grad/optimizer.hpp"
#include "dypp/tasks/maxcut.hpp"

using namespace dypp;
using namespace dypp::grad;
using Catch::Approx;

namespace {

std::vector<double> random_vector(std::size_t n, std::uint64_t seed, double lo = -std::numbers::pi,
                                  double hi = std::numbers::pi) {
  Rng rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> out(n);
  for (auto &x : out) {
    x = u(rng);
  }
  return out;
}

sim::Observable mixed_observable(int n, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_int_distribution<int> letter(0, 3);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  const char letters[] = {'I', 'X', 'Y', 'Z'};
  std::vector<sim::PauliTerm> terms;
  for (int t = 0; t < 4; ++t) {
    std::string s;
    for (int q = 0; q < n; ++q) {
      s.push_back(letters[letter(rng)]);
    }
    terms.push_back(sim::PauliTerm::from_string(coeff(rng), s));
  }
  return sim::Observable(n, terms);
}

void check_against_fd(Evaluator &eval, std::span<const double> theta, double tol) {
  const auto ps = param_shift_jacobian(eval, theta);
  const auto fd = finite_diff_jacobian(eval, theta, 1e-5);
  for (std::size_t o = 0; o < ps.outputs(); ++o) {
    for (std::size_t j = 0; j < ps.params(); ++j) {
      CHECK(std::abs(ps(o, j) - fd(o, j)) <= tol);
    }
  }
}

} // namespace

TEST_CASE("parameter shift on a single rotation") {
  const circuit::ParameterizedCircuit c(
      1, {}, {circuit::GateOp::param(sim::GateKind::RY, {0}, 0)}, 1);
  const auto z = sim::Observable::z(1, 0);
  circuit::Executor exec(circuit::ExecutionConfig{}, 0);
  CircuitExpectation eval(c, z, exec);
  CHECK(param_shift_gradient(eval, std::vector<double>{std::numbers::pi / 2})[0] ==
        Approx(-1.0));
  CHECK(param_shift_gradient(eval, std::vector<double>{0.0})[0] ==
        Approx(0.0).margin(1e-12));
}

TEST_CASE("parameter shift matches finite differences on random circuits") {
  circuit::Executor exec(circuit::ExecutionConfig{}, 0);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto c = circuit::build_hea(4, 1 + static_cast<int>(seed % 2));
    const auto obs = mixed_observable(4, seed);
    CircuitExpectation eval(c, obs, exec);
    check_against_fd(eval, random_vector(static_cast<std::size_t>(c.num_params()), seed), 1e-6);
  }
}

TEST_CASE("parameter shift on excitation gates") {
  circuit::Executor exec(circuit::ExecutionConfig{}, 0);
  const auto h2 = sim::Observable::load(DYPP_DATA_DIR "/hamiltonians/h2.txt");
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto c = circuit::build_uccsd(6, 2);
    const auto obs = mixed_observable(6, seed + 100);
    CircuitExpectation eval(c, obs, exec);
    check_against_fd(eval, random_vector(static_cast<std::size_t>(c.num_params()), seed), 1e-6);
  }
  const auto c = circuit::build_uccsd(4, 2);
  CircuitExpectation eval(c, h2, exec);
  check_against_fd(eval, random_vector(3, 7), 1e-6);
}

TEST_CASE("parameter shift with shared and scaled parameters") {
  circuit::Executor exec(circuit::ExecutionConfig{}, 0);
  const tasks::MaxCutTask task(tasks::generate_erdos_renyi(5, 0.6, 3), 2);
  CircuitExpectation eval(task.circuit, task.cost, exec);
  check_against_fd(eval, random_vector(4, 1), 1e-6);
}

TEST_CASE("parameter shift on the z readout jacobian") {
  circuit::Executor exec(circuit::ExecutionConfig{}, 0);
  const auto c = circuit::build_hea(3, 1).with_prelude(
      circuit::build_encoder(3, circuit::EncodingSpec{}), 6);
  CircuitZReadout eval(c, exec, random_vector(6, 9, 0.0, 3.0));
  CHECK(eval.num_outputs() == 3);
  check_against_fd(eval, random_vector(static_cast<std::size_t>(c.num_params()), 2), 1e-6);
}

TEST_CASE("evaluation counts") {
  FunctionEvaluator quad(5, [](std::span<const double> t) {
    double s = 0.0;
    for (double x : t) {
      s += x * x;
    }
    return s;
  });
  const auto theta = random_vector(5, 0);
  {
    CountingEvaluator counter(quad);
    param_shift_gradient(counter, theta);
    CHECK(counter.calls() == 10);
  }
  {
    CountingEvaluator counter(quad);
    spsa_gradient(counter, theta, 0.1, 1);
    CHECK(counter.calls() == 2);
  }
  {
    CountingEvaluator counter(quad);
    finite_diff_gradient(counter, theta, 1e-5);
    CHECK(counter.calls() == 10);
  }
}

TEST_CASE("circuit slots follow gate rules") {
  const auto hea = circuit::build_hea(3, 1);
  std::size_t fd = 0;
  for (const auto &slot : circuit_slots(hea)) {
    fd += slot.rule == ShiftRule::finite_difference ? 1 : 0;
  }
  CHECK(fd == 6);
  for (const auto &slot : circuit_slots(circuit::build_uccsd(4, 2))) {
    CHECK(slot.rule == ShiftRule::four_term);
  }
  const auto qaoa = circuit::build_qaoa(circuit::GraphSpec{3, {{0, 1}, {1, 2}}}, 1);
  const auto slots = circuit_slots(qaoa);
  CHECK(slots.size() == 5);
  CHECK(slots.back().scale == 2.0);
  CHECK(shift_rule_for(sim::GateKind::RZZ) == ShiftRule::two_term);
  CHECK(shift_rule_for(sim::GateKind::CRZ) == ShiftRule::finite_difference);
}

TEST_CASE("spsa on linear losses is exact") {
  FunctionEvaluator line(1, [](std::span<const double> t) { return 3.5 * t[0]; });
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    CHECK(spsa_gradient(line, std::vector<double>{0.4}, 0.01 + 0.1 * seed, seed)[0] ==
          Approx(3.5));
  }
  CHECK_THROWS(spsa_gradient(line, std::vector<double>{0.4}, 0.0, 1));
}

TEST_CASE("spsa cross terms average to zero") {
  FunctionEvaluator first(2, [](std::span<const double> t) { return t[0]; });
  const std::vector<double> theta{0.3, -1.2};
  std::vector<double> xs;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    xs.push_back(spsa_gradient(first, theta, 0.1, seed)[1]);
  }
  double mean = 0.0;
  for (double x : xs) {
    mean += x / 1000.0;
  }
  double var = 0.0;
  for (double x : xs) {
    var += (x - mean) * (x - mean) / 999.0;
  }
  CHECK(std::abs(mean) <= 3.0 * std::sqrt(var / 1000.0));
}

TEST_CASE("spsa is unbiased on a quadratic") {
  FunctionEvaluator quad(3, [](std::span<const double> t) {
    return 2.0 * t[0] * t[0] + t[1] * t[1] - 0.5 * t[2] * t[2] + t[0] * t[1];
  });
  const std::vector<double> theta{0.5, -0.7, 1.1};
  const std::vector<double> truth{2.0 * 2.0 * 0.5 - 0.7, 2.0 * -0.7 + 0.5, -1.1};
  std::vector<double> mean(3, 0.0);
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    const auto g = spsa_gradient(quad, theta, 0.01, seed);
    for (std::size_t j = 0; j < 3; ++j) {
      mean[j] += g[j] / 2000.0;
    }
  }
  for (std::size_t j = 0; j < 3; ++j) {
    CHECK(std::abs(mean[j] - truth[j]) <= 0.05 * std::abs(truth[j]));
  }
}

TEST_CASE("spsa is reproducible") {
  FunctionEvaluator f(4, [](std::span<const double> t) { return std::sin(t[0]) * t[3] + t[1]; });
  const auto theta = random_vector(4, 3);
  CHECK(spsa_gradient(f, theta, 0.1, 77) == spsa_gradient(f, theta, 0.1, 77));
}

TEST_CASE("finite differences") {
  FunctionEvaluator sq(1, [](std::span<const double> t) { return t[0] * t[0]; });
  CHECK(finite_diff_gradient(sq, std::vector<double>{3.0}, 1e-5)[0] == Approx(6.0).margin(1e-6));
  FunctionEvaluator flat(3, [](std::span<const double>) { return 2.0; });
  for (double g : finite_diff_gradient(flat, random_vector(3, 1), 1e-5)) {
    CHECK(g == 0.0);
  }
  CHECK_THROWS(finite_diff_gradient(sq, std::vector<double>{3.0}, 0.0));
  CHECK_THROWS(finite_diff_gradient(sq, std::vector<double>{3.0, 1.0}, 1e-5));
}

TEST_CASE("gradient method names") {
  CHECK(parse_gradient_kind("spsa") == GradientKind::spsa);
  CHECK(gradient_kind_name(GradientKind::param_shift_sampled) == "ps");
  CHECK_THROWS(parse_gradient_kind("adjoint"));
  CHECK_THROWS((GradientMethod{GradientKind::spsa, 0.0, 1e-5}.validate()));
  CHECK_THROWS((GradientMethod{GradientKind::finite_diff, 0.1, -1.0}.validate()));
}

TEST_CASE("sgd step") {
  Optimizer opt(OptimizerKind::sgd, 0.1, 1);
  std::vector<double> theta{1.0};
  opt.step(theta, std::vector<double>{0.5});
  CHECK(theta[0] == Approx(0.95));
  CHECK(opt.step_count() == 1);
}

TEST_CASE("adam first step moves by the learning rate") {
  Optimizer opt(OptimizerKind::adam, 0.01, 4);
  std::vector<double> theta{0.0, 1.0, -2.0, 3.0};
  const auto before = theta;
  opt.step(theta, std::vector<double>{0.3, -5.0, 1e-3, 100.0});
  for (std::size_t j = 0; j < theta.size(); ++j) {
    CHECK(std::abs(std::abs(theta[j] - before[j]) - 0.01) <= 1e-6);
  }
  CHECK(opt.first_moment().size() == 4);
}

TEST_CASE("adagrad step") {
  Optimizer opt(OptimizerKind::adagrad, 0.05, 1);
  std::vector<double> theta{0.0};
  opt.step(theta, std::vector<double>{2.0});
  CHECK(theta[0] == Approx(-0.05 * 2.0 / std::sqrt(4.0 + 1e-8)));
  opt.step(theta, std::vector<double>{2.0});
  CHECK(theta[0] == Approx(-0.05 - 0.05 * 2.0 / std::sqrt(8.0 + 1e-8)));
  CHECK(opt.second_moment()[0] == Approx(8.0));
}

TEST_CASE("optimizer validation") {
  Optimizer opt(OptimizerKind::adam, 0.01, 2);
  std::vector<double> theta{0.0, 0.0};
  CHECK_THROWS(opt.step(theta, std::vector<double>{1.0}));
  CHECK_THROWS(Optimizer(OptimizerKind::sgd, 0.0, 1));
  CHECK(parse_optimizer_kind("adagrad") == OptimizerKind::adagrad);
  CHECK_THROWS(parse_optimizer_kind("rmsprop"));
}

TEST_CASE("sgd descends monotonically on convex quadratics") {
  Rng rng(4);
  std::uniform_real_distribution<double> curv(0.5, 4.0);
  const std::vector<double> c{curv(rng), curv(rng), curv(rng)};
  const auto loss = [&](const std::vector<double> &t) {
    double s = 0.0;
    for (std::size_t j = 0; j < 3; ++j) {
      s += 0.5 * c[j] * t[j] * t[j];
    }
    return s;
  };
  Optimizer opt(OptimizerKind::sgd, 0.1, 3);
  std::vector<double> theta{1.0, -2.0, 0.5};
  double prev = loss(theta);
  for (int step = 0; step < 100; ++step) {
    std::vector<double> g(3);
    for (std::size_t j = 0; j < 3; ++j) {
      g[j] = c[j] * theta[j];
    }
    opt.step(theta, g);
    const double now = loss(theta);
    CHECK(now < prev);
    prev = now;
  }
}
