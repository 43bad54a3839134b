#include "paircoh/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

namespace paircoh {

namespace {

constexpr int kExactFactorialLimit = 20;
constexpr int kMaxSeriesTerms = 500;
constexpr double kSeriesRelTol = 1e-17;

// The series peaks near n = r with width ~sqrt(r); 2r terms past the base cap
// always clear the tail.
int series_term_cap(double r) {
  return kMaxSeriesTerms + static_cast<int>(2.0 * std::ceil(std::min(r, 1e7)));
}

void require_order(int order) {
  if (order < 0)
    throw std::domain_error("bessel_i: negative order " + std::to_string(order));
}

void require_argument(double x) {
  if (!(x >= 0.0) || !std::isfinite(x))
    throw std::domain_error("bessel_i: argument must be finite and >= 0");
}

}  // namespace

double log_factorial(int n) {
  if (n < 0) throw std::domain_error("log_factorial: negative argument");
  std::uint64_t exact = 1;
  const int exact_top = n < kExactFactorialLimit ? n : kExactFactorialLimit;
  for (int k = 2; k <= exact_top; ++k) exact *= static_cast<std::uint64_t>(k);
  double result = std::log(static_cast<double>(exact));
  for (int k = kExactFactorialLimit + 1; k <= n; ++k) result += std::log(static_cast<double>(k));
  return result;
}

double bessel_i(int order, double x) {
  require_order(order);
  require_argument(x);
  if (x == 0.0) return order == 0 ? 1.0 : 0.0;

  const double half = 0.5 * x;
  const double half_sq = half * half;
  double term = std::exp(order * std::log(half) - log_factorial(order));
  if (!std::isfinite(term)) return std::exp(log_bessel_i(order, x));

  double sum = term;
  const int cap = series_term_cap(half);
  for (int n = 0; n < cap; ++n) {
    term *= half_sq / ((n + 1.0) * (n + 1.0 + order));
    sum += term;
    const bool past_peak = half_sq < (n + 1.0) * (n + 1.0 + order);
    if (past_peak && term <= kSeriesRelTol * sum) break;
  }
  return std::isfinite(sum) ? sum : std::exp(log_bessel_i(order, x));
}

double log_reduced_bessel(int order, double r) {
  require_order(order);
  require_argument(r);
  if (r == 0.0) return -log_factorial(order);

  // Terms t_n = r^{2n} / (n! (n+q)!) are unimodal in n; accumulate
  // exp(t_n - anchor) with the anchor moved up whenever a larger term appears.
  const double log_r2 = 2.0 * std::log(r);
  double log_term = -log_factorial(order);
  double anchor = log_term;
  double scaled_sum = 1.0;
  const int cap = series_term_cap(r);
  for (int n = 0; n < cap; ++n) {
    log_term += log_r2 - std::log(n + 1.0) - std::log(n + 1.0 + order);
    if (log_term > anchor) {
      scaled_sum = scaled_sum * std::exp(anchor - log_term) + 1.0;
      anchor = log_term;
    } else {
      const double rel = std::exp(log_term - anchor);
      scaled_sum += rel;
      const bool past_peak = log_r2 < std::log(n + 1.0) + std::log(n + 1.0 + order);
      if (past_peak && rel <= kSeriesRelTol * scaled_sum) break;
    }
  }
  return anchor + std::log(scaled_sum);
}

double log_bessel_i(int order, double x) {
  require_order(order);
  require_argument(x);
  if (x == 0.0) return order == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  const double half = 0.5 * x;
  return order * std::log(half) + log_reduced_bessel(order, half);
}

Eigen::VectorXd oscillator_eigenfunctions(int count, double x) {
  if (count < 0) throw std::domain_error("oscillator_eigenfunctions: negative count");
  Eigen::VectorXd phi(count);
  if (count == 0) return phi;
  // pi^{-1/4} exp(-x^2/2)
  phi(0) = std::exp(-0.25 * std::log(std::numbers::pi) - 0.5 * x * x);
  if (count > 1) phi(1) = std::sqrt(2.0) * x * phi(0);
  for (int n = 1; n + 1 < count; ++n) {
    phi(n + 1) = x * std::sqrt(2.0 / (n + 1.0)) * phi(n) - std::sqrt(n / (n + 1.0)) * phi(n - 1);
  }
  return phi;
}

double oscillator_eigenfunction(int n, double x) {
  if (n < 0) throw std::domain_error("oscillator_eigenfunction: negative index");
  return oscillator_eigenfunctions(n + 1, x)(n);
}

}  // namespace paircoh
