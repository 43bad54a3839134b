#include "paircoh/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "paircoh/detail/summation.hpp"

namespace paircoh {

namespace {

constexpr double kMassSlack = 1e-12;
constexpr double kTailAgreement = 1e-14;
constexpr int kMaxTailTerms = 1'000'000;

void validate_params(const PairCoherentParams& params) {
  if (params.q < 0) throw std::invalid_argument("pair coherent state: q must be >= 0");
  if (!std::isfinite(params.zeta.real()) || !std::isfinite(params.zeta.imag()))
    throw std::invalid_argument("pair coherent state: zeta must be finite");
}

double log_normalization(const PairCoherentParams& params) {
  return -0.5 * log_reduced_bessel(params.q, std::abs(params.zeta));
}

double mass(const Eigen::VectorXcd& coeffs) {
  detail::CompensatedSum acc;
  for (const auto& c : coeffs) acc.add(std::norm(c));
  return acc.value();
}

void validate_coefficients(int q, const Eigen::VectorXcd& coeffs) {
  if (q < 0) throw std::invalid_argument("SchmidtState: q must be >= 0");
  if (coeffs.size() == 0) throw std::invalid_argument("SchmidtState: empty coefficient vector");
  if (!coeffs.allFinite()) throw std::invalid_argument("SchmidtState: non-finite coefficient");
  const double total = mass(coeffs);
  if (total > 1.0 + kMassSlack)
    throw std::invalid_argument("SchmidtState: sum |c_n|^2 = " + std::to_string(total) + " exceeds 1");
}

}  // namespace

SchmidtState SchmidtState::from_coefficients(int q, Eigen::VectorXcd coeffs) {
  validate_coefficients(q, coeffs);
  // Rounding can push a normalized vector a few ulps above 1; the tail is a
  // probability mass and is kept nonnegative.
  const double tail = std::max(0.0, 1.0 - mass(coeffs));
  return SchmidtState(q, std::move(coeffs), tail, std::nullopt);
}

SchmidtState SchmidtState::from_coefficients(int q, Eigen::VectorXcd coeffs, double tail,
                                             std::optional<PairCoherentParams> source) {
  validate_coefficients(q, coeffs);
  const double total = mass(coeffs);
  if (!(tail >= 0.0) || std::abs(tail - (1.0 - total)) > kTailAgreement)
    throw std::invalid_argument("SchmidtState: tail disagrees with 1 - sum |c_n|^2");
  return SchmidtState(q, std::move(coeffs), tail, source);
}

LogDomainValue pcs_log_coefficient(const PairCoherentParams& params, int n) {
  validate_params(params);
  if (n < 0) throw std::invalid_argument("pcs_log_coefficient: negative index");
  const double r = std::abs(params.zeta);
  if (r == 0.0) return n == 0 ? LogDomainValue::from_log(0.0) : LogDomainValue::zero();
  const double log_mag = log_normalization(params) + n * std::log(r) -
                         0.5 * (log_factorial(n) + log_factorial(n + params.q));
  return LogDomainValue::from_log(log_mag, std::polar(1.0, n * std::arg(params.zeta)));
}

double pcs_tail(const PairCoherentParams& params, int truncation) {
  validate_params(params);
  if (truncation < 0) throw std::invalid_argument("pcs_tail: negative truncation");
  const double r = std::abs(params.zeta);
  if (r == 0.0) return truncation == 0 ? 1.0 : 0.0;

  // p_{n+1} / p_n = r^2 / ((n+1)(n+1+q)), decreasing in n. Once the ratio is
  // below 1/2 the remainder after p_n is bounded by p_n itself.
  const double log_r2 = 2.0 * std::log(r);
  const int q = params.q;
  double log_p = 2.0 * pcs_log_coefficient(params, truncation).log_magnitude;
  detail::CompensatedSum acc;
  for (int n = truncation; n < truncation + kMaxTailTerms; ++n) {
    const double p = std::exp(log_p);
    acc.add(p);
    const double log_ratio = log_r2 - std::log(n + 1.0) - std::log(n + 1.0 + q);
    if (p == 0.0 && log_ratio < 0.0) break;
    if (log_ratio < -std::numbers::ln2 && p <= 1e-17 * acc.value()) break;
    log_p += log_ratio;
  }
  return acc.value();
}

SchmidtState build_pcs(const PairCoherentParams& params, int truncation) {
  validate_params(params);
  if (truncation < 1) throw std::invalid_argument("build_pcs: truncation must be >= 1");
  Eigen::VectorXcd coeffs(truncation);
  for (int n = 0; n < truncation; ++n) coeffs(n) = pcs_log_coefficient(params, n).value();
  return SchmidtState::from_coefficients(params.q, std::move(coeffs), pcs_tail(params, truncation), params);
}

int truncation_for_tolerance(const PairCoherentParams& params, double epsilon, int hard_cap) {
  validate_params(params);
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("truncation_for_tolerance: epsilon must lie in (0, 1)");
  for (int n = 1; n <= hard_cap; ++n) {
    if (pcs_tail(params, n) < epsilon) return n;
  }
  throw std::out_of_range("truncation_for_tolerance: required truncation exceeds cap " +
                          std::to_string(hard_cap));
}

SchmidtProbabilities schmidt_probabilities(const SchmidtState& state) {
  return {state.coeffs().cwiseAbs2(), state.tail()};
}

}  // namespace paircoh
