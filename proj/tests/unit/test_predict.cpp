#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "dypp/predict/predictor.hpp"
#include "dypp/sim/random.hpp"

using namespace dypp;
using namespace dypp::predict;
using Catch::Approx;

namespace {

PredictorConfig config(Method method, int p) {
  PredictorConfig cfg;
  cfg.method = method;
  cfg.interval = p;
  return cfg;
}

WeightWindow window_of(const std::vector<std::vector<double>> &rows) {
  WeightWindow w(rows.size(), rows.front().size());
  for (const auto &r : rows) {
    w.push(r);
  }
  return w;
}

} // namespace

TEST_CASE("fit exact quadratics") {
  const auto sq = fit_quadratic(std::vector<double>{1, 4, 9});
  CHECK(sq.a == Approx(1.0));
  CHECK(sq.b == Approx(0.0).margin(1e-12));
  CHECK(sq.c == Approx(0.0).margin(1e-12));

  const auto flat = fit_quadratic(std::vector<double>{5, 5, 5, 5});
  CHECK(flat.a == Approx(0.0).margin(1e-12));
  CHECK(flat.b == Approx(0.0).margin(1e-12));
  CHECK(flat.c == Approx(5.0));

  const auto line = fit_quadratic(std::vector<double>{2, 4, 6});
  CHECK(line.a == Approx(0.0).margin(1e-12));
  CHECK(line.b == Approx(2.0));
  CHECK(line.c == Approx(0.0).margin(1e-12));

  CHECK_THROWS(fit_quadratic(std::vector<double>{1, 2}));
}

TEST_CASE("fit is least squares for noisy data") {
  const std::vector<double> ys{1.0, 2.5, 2.9, 4.2, 6.1, 8.8};
  const auto fit = fit_quadratic(ys);
  const auto sse = [&](double a, double b, double c) {
    double s = 0.0;
    for (std::size_t i = 0; i < ys.size(); ++i) {
      const double x = static_cast<double>(i + 1);
      const double r = a * x * x + b * x + c - ys[i];
      s += r * r;
    }
    return s;
  };
  const double best = sse(fit.a, fit.b, fit.c);
  for (double da : {-1e-3, 1e-3}) {
    CHECK(sse(fit.a + da, fit.b, fit.c) > best);
    CHECK(sse(fit.a, fit.b + da, fit.c) > best);
    CHECK(sse(fit.a, fit.b, fit.c + da) > best);
  }
}

TEST_CASE("fit recovers random quadratics") {
  Rng rng(1);
  std::uniform_real_distribution<double> coeff(-10.0, 10.0);
  std::uniform_int_distribution<int> points(3, 8);
  for (int trial = 0; trial < 2000; ++trial) {
    const double a = coeff(rng), b = coeff(rng), c = coeff(rng);
    std::vector<double> ys(static_cast<std::size_t>(points(rng)));
    for (std::size_t i = 0; i < ys.size(); ++i) {
      const double x = static_cast<double>(i + 1);
      ys[i] = a * x * x + b * x + c;
    }
    const auto fit = fit_quadratic(ys);
    CHECK(std::abs(fit.a - a) <= 1e-9);
    CHECK(std::abs(fit.b - b) <= 1e-9);
    CHECK(std::abs(fit.c - c) <= 1e-9);
  }
}

TEST_CASE("nap distance") {
  auto cfg = config(Method::nap, 5);
  cfg.nap_d0 = 3.0;
  cfg.decay = 0.95;
  CHECK(nap_distance(5, cfg) == Approx(6.85).epsilon(1e-12));
  CHECK(nap_distance(100000, cfg) == Approx(4.0));
  cfg.nap_d0 = 0.0;
  CHECK(nap_distance(5, cfg) == 4.0);
  CHECK(nap_distance(50, cfg) == 4.0);

  cfg.nap_d0 = 3.0;
  double prev = nap_distance(5, cfg);
  for (int i = 10; i <= 500; i += 5) {
    const double d = nap_distance(i, cfg);
    CHECK(d < prev);
    CHECK(d > 4.0);
    CHECK(d <= 3.0 + 4.0);
    prev = d;
  }
}

TEST_CASE("adap distance limits") {
  auto cfg = config(Method::adap, 4);
  cfg.k = 0.01;
  cfg.learning_rate = 0.1;
  cfg.max_extra = 12;
  cfg.epsilon = 1e-6;
  CHECK(adap_distance(QuadraticFit{1.0, -6.0, 0.0}, cfg) == Approx(3.0));
  CHECK(adap_distance(QuadraticFit{0.0, 1.0, 0.0}, cfg) == Approx(15.0).margin(1e-6));
  const double d = adap_distance(QuadraticFit{0.5, 0.2, 1.0}, cfg);
  const double d0 = 0.01 * std::abs(2 * 0.5 * 3 + 0.2) / (1.0 * 0.1 + 1e-6);
  CHECK(d == Approx((1 - std::exp(-d0)) * 12 + 3));
}

TEST_CASE("adap distance stays in range") {
  Rng rng(3);
  std::uniform_real_distribution<double> coeff(-5.0, 5.0);
  std::uniform_real_distribution<double> logk(-6.0, 1.0);
  std::uniform_int_distribution<int> interval(4, 10);
  for (int trial = 0; trial < 20000; ++trial) {
    auto cfg = config(Method::adap, interval(rng));
    cfg.k = std::pow(10.0, logk(rng));
    cfg.learning_rate = std::pow(10.0, logk(rng));
    const double d = adap_distance(QuadraticFit{coeff(rng), coeff(rng), coeff(rng)}, cfg);
    CHECK(d >= cfg.interval - 1);
    CHECK(d < cfg.max_extra + cfg.interval - 1 + 1e-12);
  }
}

TEST_CASE("config validation") {
  CHECK_NOTHROW(config(Method::adap, 4).validate());
  CHECK_THROWS(config(Method::adap, 3).validate());
  auto bad = config(Method::nap, 5);
  bad.decay = 0.0;
  CHECK_THROWS(bad.validate());
  bad = config(Method::nap, 5);
  bad.decay = 1.5;
  CHECK_THROWS(bad.validate());
  bad = config(Method::adap, 5);
  bad.k = 0.0;
  CHECK_THROWS(bad.validate());
  bad = config(Method::adap, 5);
  bad.epsilon = 0.0;
  CHECK_THROWS(bad.validate());
  CHECK(parse_method("nap") == Method::nap);
  CHECK(method_name(Method::adap) == "adap");
  CHECK_THROWS(parse_method("cubic"));
}

TEST_CASE("window") {
  WeightWindow w(3, 2);
  CHECK_THROWS(WeightWindow(2, 2));
  CHECK_THROWS(w.push(std::vector<double>{1.0}));
  w.push(std::vector<double>{1, 10});
  w.push(std::vector<double>{2, 20});
  CHECK_FALSE(w.full());
  w.push(std::vector<double>{3, 30});
  CHECK(w.full());
  w.push(std::vector<double>{4, 40});
  CHECK(w.size() == 3);
  CHECK(w.column(1) == std::vector<double>{20, 30, 40});
  w.clear();
  CHECK(w.size() == 0);
}

TEST_CASE("predict at a forced distance") {
  const auto w = window_of({{1}, {4}, {9}});
  const auto cfg = config(Method::adap, 4);
  CHECK(predict_weights_at(w, 5.0, cfg)[0] == Approx(25.0));
  CHECK(predict_weights_at(w, 3.0, cfg)[0] == Approx(9.0));

  const auto constant = window_of({{0.7, -2}, {0.7, -2}, {0.7, -2}});
  for (auto method : {Method::nap, Method::adap}) {
    const auto out = predict_weights(constant, 4, config(method, 4));
    CHECK(out[0] == Approx(0.7));
    CHECK(out[1] == Approx(-2.0));
  }
}

TEST_CASE("predict requires a full window") {
  WeightWindow w(3, 1);
  w.push(std::vector<double>{1});
  CHECK_THROWS_AS(predict_weights(w, 4, config(Method::adap, 4)), std::logic_error);
  w.push(std::vector<double>{2});
  w.push(std::vector<double>{3});
  CHECK_THROWS_AS(predict_weights(w, 5, config(Method::adap, 5)), std::logic_error);
  CHECK_THROWS_AS(predict_weights(w, 4, config(Method::vanilla, 4)), std::logic_error);
}

TEST_CASE("non-finite and oversized predictions keep the latest weight") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const auto w = window_of({{1, nan, 0}, {2, 1, 1e4}, {3, 2, 4e4}});
  const auto out = predict_weights_at(w, 10.0, config(Method::adap, 4));
  CHECK(out[0] == Approx(10.0));
  CHECK(out[1] == 2.0);
  CHECK(out[2] == 4e4);
}

TEST_CASE("prediction is shift equivariant, scale covariant and column independent") {
  Rng rng(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int p = 4 + trial % 4;
    auto cfg = config(trial % 2 == 0 ? Method::adap : Method::nap, p);
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(p - 1), std::vector<double>(3));
    for (auto &r : rows) {
      for (auto &x : r) {
        x = u(rng);
      }
    }
    const auto base = predict_weights(window_of(rows), 2 * p, cfg);

    auto shifted = rows;
    auto scaled = rows;
    auto permuted = rows;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (auto &x : shifted[i]) {
        x += 0.37;
      }
      for (auto &x : scaled[i]) {
        x *= 2.5;
      }
      permuted[i] = {rows[i][2], rows[i][0], rows[i][1]};
    }
    const auto s = predict_weights(window_of(shifted), 2 * p, cfg);
    const auto k = predict_weights(window_of(scaled), 2 * p, cfg);
    const auto m = predict_weights(window_of(permuted), 2 * p, cfg);
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(s[j] == Approx(base[j] + 0.37).margin(1e-9));
      CHECK(m[(j + 1) % 3] == base[j]);
      if (cfg.method == Method::nap) {
        CHECK(k[j] == Approx(2.5 * base[j]).margin(1e-9));
      }
    }
    if (cfg.method == Method::adap) {
      for (std::size_t j = 0; j < 3; ++j) {
        const auto fit = fit_quadratic(window_of(rows).column(j));
        const auto fit_scaled = fit_quadratic(window_of(scaled).column(j));
        CHECK(adap_distance(fit, cfg) ==
              Approx(adap_distance(fit_scaled, cfg)).epsilon(0.05));
      }
    }
  }
}

TEST_CASE("exact quadratic trajectories extrapolate exactly") {
  Rng rng(12);
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  std::uniform_real_distribution<double> dist(3.0, 30.0);
  for (int trial = 0; trial < 500; ++trial) {
    const double a = coeff(rng), b = coeff(rng), c = coeff(rng);
    const int p = 4 + trial % 5;
    std::vector<std::vector<double>> rows;
    for (int x = 1; x < p; ++x) {
      rows.push_back({a * x * x + b * x + c});
    }
    const double d = dist(rng);
    auto cfg = config(Method::adap, p);
    cfg.max_jump = 1e9;
    const auto out = predict_weights_at(window_of(rows), d, cfg);
    CHECK(std::abs(out[0] - (a * d * d + b * d + c)) <= 1e-9 * std::max(1.0, d * d));
  }
}
