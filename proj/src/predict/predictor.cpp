#include "dypp/predict/predictor.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace dypp::predict {

namespace {

constexpr std::array<std::pair<Method, std::string_view>, 3> kNames{{
    {Method::vanilla, "vanilla"},
    {Method::nap, "nap"},
    {Method::adap, "adap"},
}};

double accept(double predicted, double current, const PredictorConfig &cfg) {
  if (!std::isfinite(predicted) || std::abs(predicted - current) > cfg.max_jump) {
    return current;
  }
  return predicted;
}

} // namespace

std::string_view method_name(Method method) {
  for (const auto &[m, name] : kNames) {
    if (m == method) {
      return name;
    }
  }
  throw std::invalid_argument("unknown method");
}

Method parse_method(std::string_view name) {
  for (const auto &[m, n] : kNames) {
    if (n == name) {
      return m;
    }
  }
  throw std::invalid_argument("unknown method: " + std::string(name));
}

void PredictorConfig::validate() const {
  if (interval < 4) {
    throw std::invalid_argument("prediction interval must be >= 4");
  }
  if (!(decay > 0.0 && decay <= 1.0)) {
    throw std::invalid_argument("decay rate must be in (0, 1]");
  }
  if (!(nap_d0 >= 0.0)) {
    throw std::invalid_argument("initial distance must be >= 0");
  }
  if (!(k > 0.0) || !(max_extra > 0.0) || !(epsilon > 0.0)) {
    throw std::invalid_argument("k, n and epsilon must be positive");
  }
  if (!(learning_rate > 0.0)) {
    throw std::invalid_argument("learning rate must be positive");
  }
  if (!(max_jump > 0.0)) {
    throw std::invalid_argument("max_jump must be positive");
  }
}

bool QuadraticFit::finite() const {
  return std::isfinite(a) && std::isfinite(b) && std::isfinite(c);
}

QuadraticFit fit_quadratic(std::span<const double> ys) {
  const std::size_t n = ys.size();
  if (n < 3) {
    throw std::invalid_argument("quadratic fit needs at least 3 points, got " +
                                std::to_string(n));
  }
  // Centre the abscissae to keep the normal equations well conditioned,
  // then map back to x = 1..n.
  const double mean = (static_cast<double>(n) + 1.0) / 2.0;
  double s2 = 0.0;
  double s3 = 0.0;
  double s4 = 0.0;
  double t0 = 0.0;
  double t1 = 0.0;
  double t2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double u = static_cast<double>(i + 1) - mean;
    const double u2 = u * u;
    s2 += u2;
    s3 += u2 * u;
    s4 += u2 * u2;
    t0 += ys[i];
    t1 += u * ys[i];
    t2 += u2 * ys[i];
  }
  const double s0 = static_cast<double>(n);
  // Symmetric abscissae make s1 = s3 = 0 exactly; keep s3 for clarity.
  // [s4 s3 s2] [A]   [t2]
  // [s3 s2 0 ] [B] = [t1]
  // [s2 0  s0] [C]   [t0]
  const double det = s4 * (s2 * s0) - s3 * (s3 * s0) + s2 * (0.0 - s2 * s2);
  if (det == 0.0) {
    throw std::domain_error("degenerate quadratic fit");
  }
  const double det_a = t2 * (s2 * s0) - s3 * (t1 * s0) + s2 * (0.0 - s2 * t0);
  const double det_b = s4 * (t1 * s0) - t2 * (s3 * s0) + s2 * (s3 * t0 - t1 * s2);
  const double det_c = s4 * (s2 * t0) - s3 * (s3 * t0 - t1 * s2) +
                       t2 * (0.0 - s2 * s2);
  const double qa = det_a / det;
  const double qb = det_b / det;
  const double qc = det_c / det;
  // a (x - m)^2 + b (x - m) + c  ->  a x^2 + (b - 2am) x + (am^2 - bm + c)
  return {qa, qb - 2.0 * qa * mean, qa * mean * mean - qb * mean + qc};
}

double nap_distance(int epoch, const PredictorConfig &cfg) {
  const double p = static_cast<double>(cfg.interval);
  return std::pow(cfg.decay, static_cast<double>(epoch) / p) * cfg.nap_d0 +
         (p - 1.0);
}

double adap_distance(const QuadraticFit &fit, const PredictorConfig &cfg) {
  const double last = static_cast<double>(cfg.interval - 1);
  const double slope = fit.slope(last);
  const double curvature = fit.curvature();
  const double d0 = cfg.k * std::abs(slope) /
                    (std::abs(curvature) * cfg.learning_rate + cfg.epsilon);
  // (1 - e^-d0) n + (p - 1), written as a gap below n + p - 1 so the result
  // stays under the upper end whenever the gap is representable.
  const double gap = cfg.max_extra * std::exp(-d0);
  return std::max(last, (cfg.max_extra + last) - gap);
}

WeightWindow::WeightWindow(std::size_t capacity, std::size_t num_params)
    : capacity_(capacity), num_params_(num_params) {
  if (capacity < 3) {
    throw std::invalid_argument("window must hold at least 3 samples");
  }
}

void WeightWindow::push(std::span<const double> weights) {
  if (weights.size() != num_params_) {
    throw std::invalid_argument("weight vector has wrong length");
  }
  if (full()) {
    samples_.erase(samples_.begin());
  }
  samples_.emplace_back(weights.begin(), weights.end());
}

std::vector<double> WeightWindow::column(std::size_t param) const {
  std::vector<double> out;
  out.reserve(samples_.size());
  for (const auto &s : samples_) {
    out.push_back(s.at(param));
  }
  return out;
}

std::vector<double> predict_weights(const WeightWindow &window, int epoch,
                                    const PredictorConfig &cfg) {
  if (!window.full() || window.capacity() != cfg.window_size()) {
    throw std::logic_error("prediction needs a full window of " +
                           std::to_string(cfg.window_size()) + " samples");
  }
  if (cfg.method == Method::vanilla) {
    throw std::logic_error("vanilla training makes no predictions");
  }
  const double shared =
      cfg.method == Method::nap ? nap_distance(epoch, cfg) : 0.0;
  const auto &latest = window.samples().back();
  std::vector<double> out(window.num_params());
  for (std::size_t j = 0; j < out.size(); ++j) {
    const QuadraticFit fit = fit_quadratic(window.column(j));
    const double d =
        cfg.method == Method::nap ? shared : adap_distance(fit, cfg);
    out[j] = fit.finite() ? accept(fit(d), latest[j], cfg) : latest[j];
  }
  return out;
}

std::vector<double> predict_weights_at(const WeightWindow &window,
                                       double distance,
                                       const PredictorConfig &cfg) {
  if (!window.full()) {
    throw std::logic_error("prediction needs a full window");
  }
  const auto &latest = window.samples().back();
  std::vector<double> out(window.num_params());
  for (std::size_t j = 0; j < out.size(); ++j) {
    const QuadraticFit fit = fit_quadratic(window.column(j));
    out[j] = fit.finite() ? accept(fit(distance), latest[j], cfg) : latest[j];
  }
  return out;
}

} // namespace dypp::predict
