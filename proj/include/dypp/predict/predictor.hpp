#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace dypp::predict {

enum class Method { vanilla, nap, adap };

std::string_view method_name(Method method);
Method parse_method(std::string_view name);

/**
 * Hyperparameters of the weight predictor.
 *
 * The fit window holds the last `interval - 1` optimizer outputs, placed at
 * abscissae 1 .. interval-1. NaP decays a shared distance from `nap_d0`;
 * AdaP picks a distance per parameter from the fitted slope and curvature.
 */
struct PredictorConfig {
  Method method = Method::adap;
  int interval = 4;            // p
  double nap_d0 = 3.0;         // NaP initial distance
  double decay = 0.95;         // NaP decay rate r
  double k = 0.01;             // AdaP proportionality constant
  double max_extra = 12.0;     // AdaP distance ceiling above interval - 1
  double epsilon = 1e-6;       // AdaP denominator guard
  double learning_rate = 0.1;  // mirrored from the optimizer
  double max_jump = 1e3;       // larger predicted moves are rejected

  void validate() const;
  [[nodiscard]] std::size_t window_size() const {
    return static_cast<std::size_t>(interval - 1);
  }
};

/// f(x) = a x^2 + b x + c
struct QuadraticFit {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  [[nodiscard]] double operator()(double x) const { return (a * x + b) * x + c; }
  [[nodiscard]] double slope(double x) const { return 2.0 * a * x + b; }
  [[nodiscard]] double curvature() const { return 2.0 * a; }
  [[nodiscard]] bool finite() const;
};

/**
 * Least-squares quadratic through (1, ys[0]) ... (n, ys[n-1]), solved from
 * the 3x3 normal equations. Exact interpolation for n = 3. Throws for n < 3.
 */
QuadraticFit fit_quadratic(std::span<const double> ys);

/// r^(epoch / p) * d0 + (p - 1), with a real-valued exponent.
double nap_distance(int epoch, const PredictorConfig &cfg);

/**
 * (1 - exp(-d0)) * n + (p - 1) where
 * d0 = k |f'(p-1)| / (|f''| * lr + eps).
 */
double adap_distance(const QuadraticFit &fit, const PredictorConfig &cfg);

/// Ring of the most recent optimizer outputs, oldest first.
class WeightWindow {
public:
  WeightWindow(std::size_t capacity, std::size_t num_params);

  void push(std::span<const double> weights);
  void clear() { samples_.clear(); }

  [[nodiscard]] bool full() const { return samples_.size() == capacity_; }
  [[nodiscard]] std::size_t size() const { return samples_.size(); }
  [[nodiscard]] std::size_t capacity() const { return capacity_; }
  [[nodiscard]] std::size_t num_params() const { return num_params_; }
  [[nodiscard]] const std::vector<std::vector<double>> &samples() const {
    return samples_;
  }
  /// History of one parameter across the window.
  [[nodiscard]] std::vector<double> column(std::size_t param) const;

private:
  std::size_t capacity_;
  std::size_t num_params_;
  std::vector<std::vector<double>> samples_;
};

/**
 * Predicted weights for the prediction fired at `epoch`. Each parameter is
 * fitted independently and evaluated at its distance; non-finite results
 * and moves larger than `max_jump` keep the most recent weight.
 */
std::vector<double> predict_weights(const WeightWindow &window, int epoch,
                                    const PredictorConfig &cfg);

/// Same, with every parameter extrapolated to one fixed distance.
std::vector<double> predict_weights_at(const WeightWindow &window,
                                       double distance,
                                       const PredictorConfig &cfg);

} // namespace dypp::predict
