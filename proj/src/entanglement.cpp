#include "paircoh/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "paircoh/detail/summation.hpp"

namespace paircoh {

namespace {

constexpr double kGapTolerance = 1e-12;

}  // namespace

std::vector<double> PTSpectrum::eigenvalues() const {
  std::vector<double> out;
  out.reserve(diagonal.size() + 2 * offdiag.size());
  for (const auto& d : diagonal) out.push_back(d.value);
  for (const auto& p : offdiag) {
    out.push_back(p.plus);
    out.push_back(p.minus);
  }
  return out;
}

double PTSpectrum::trace() const { return detail::compensated_sum(eigenvalues()); }

PTSpectrum pt_spectrum(const SchmidtState& state) {
  const Eigen::VectorXd amp = state.coeffs().cwiseAbs();
  const int n_terms = state.truncation();
  PTSpectrum spec;
  spec.diagonal.reserve(n_terms);
  spec.offdiag.reserve(static_cast<std::size_t>(n_terms) * (n_terms - 1) / 2);
  for (int n = 0; n < n_terms; ++n) spec.diagonal.push_back({n, std::norm(state.coeffs()(n))});
  for (int n = 0; n < n_terms; ++n) {
    for (int m = n + 1; m < n_terms; ++m) {
      const double v = amp(n) * amp(m);
      spec.offdiag.push_back({n, m, v, -v});
    }
  }
  return spec;
}

double negativity_spectral(const SchmidtState& state) {
  // sum_m |c_m| * (sum_{n<m} |c_n|), no cancellation between large partial sums.
  detail::CompensatedSum prefix;
  detail::CompensatedSum total;
  for (const auto& c : state.coeffs()) {
    const double a = std::abs(c);
    total.add(a * prefix.value());
    prefix.add(a);
  }
  return total.value();
}

double negativity_paper(const SchmidtState& state) { return 2.0 * negativity_spectral(state); }

double negativity_paper_limit(double zeta_abs) {
  if (!(zeta_abs >= 0.0)) throw std::domain_error("negativity_paper_limit: |zeta| must be >= 0");
  return std::expm1(2.0 * zeta_abs - log_bessel_i(0, 2.0 * zeta_abs));
}

double entropy_of_entanglement(const SchmidtState& state) {
  detail::CompensatedSum acc;
  for (const auto& c : state.coeffs()) {
    const double p = std::norm(c);
    if (p > 0.0) acc.add(-p * std::log2(p));
  }
  return acc.value();
}

double d_upper(const SchmidtState& state) {
  detail::CompensatedSum log_sum;
  for (const auto& c : state.coeffs()) {
    const double p = std::norm(c);
    if (p >= 1.0) return 0.0;
    log_sum.add(std::log1p(-p));
  }
  return std::exp(log_sum.value());
}

double det_i_minus_rho(const SchmidtState& state) { return state.tail(); }

double d_lower(const SchmidtState& state) { return d_upper(state) - det_i_minus_rho(state); }

MeasureReport measure_report(const SchmidtState& state) {
  MeasureReport r;
  r.negativity_spectral = negativity_spectral(state);
  r.negativity_paper = negativity_paper(state);
  r.entropy_bits = entropy_of_entanglement(state);
  r.d_upper = d_upper(state);
  r.tail = det_i_minus_rho(state);
  r.d_lower = r.d_upper - r.tail;
  r.d_lower_clamped = std::max(0.0, r.d_lower);
  r.truncation = state.truncation();

  if (!(r.d_lower <= r.d_upper)) throw std::logic_error("measure_report: d_lower exceeds d_upper");
  if (std::abs((r.d_upper - r.d_lower) - r.tail) > kGapTolerance)
    throw std::logic_error("measure_report: bound gap differs from truncation tail");
  return r;
}

}  // namespace paircoh
