#pragma once

#include <complex>
#include <limits>

#include <Eigen/Dense>

namespace paircoh {

/// A number stored as log|v| together with a unit-modulus phase.
/// A true zero carries log_magnitude = -inf.
struct LogDomainValue {
  double log_magnitude = -std::numeric_limits<double>::infinity();
  std::complex<double> phase{1.0, 0.0};

  static LogDomainValue zero() { return {}; }
  static LogDomainValue from_log(double log_magnitude, std::complex<double> phase = {1.0, 0.0}) {
    return {log_magnitude, phase};
  }

  bool is_zero() const { return log_magnitude == -std::numeric_limits<double>::infinity(); }
  double magnitude() const { return std::exp(log_magnitude); }
  std::complex<double> value() const { return is_zero() ? std::complex<double>{} : magnitude() * phase; }

  LogDomainValue operator*(const LogDomainValue& rhs) const {
    return {log_magnitude + rhs.log_magnitude, phase * rhs.phase};
  }
};

/// ln(n!). Exact integer product up to n = 20, then a running sum of ln k.
double log_factorial(int n);

/// Modified Bessel function of the first kind I_q(x) by its power series.
/// Throws std::domain_error for negative order or negative x.
double bessel_i(int order, double x);

/// ln I_q(x), summed in the log domain so that large x does not overflow.
/// Returns -inf for I_q(0) with q > 0.
double log_bessel_i(int order, double x);

/// ln( r^{-q} I_q(2r) ) = ln sum_n r^{2n} / (n! (n+q)!).
/// Finite at r = 0, where it equals -ln q!.
double log_reduced_bessel(int order, double r);

/// Normalized harmonic-oscillator eigenfunction <x|n> (hbar = m = omega = 1).
double oscillator_eigenfunction(int n, double x);

/// phi_0(x) .. phi_{count-1}(x) from one pass of the normalized recurrence.
Eigen::VectorXd oscillator_eigenfunctions(int count, double x);

}  // namespace paircoh
