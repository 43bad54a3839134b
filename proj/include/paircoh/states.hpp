#pragma once

#include <complex>
#include <optional>

#include <Eigen/Dense>

#include "paircoh/specfun.hpp"

namespace paircoh {

/// Parameters (zeta, q) of the pair coherent state |zeta, q>.
struct PairCoherentParams {
  std::complex<double> zeta{0.0, 0.0};
  int q = 0;
};

/// Truncated two-mode pure state sum_n c_n |n+q, n>.
///
/// Coefficients are those of the full normalized state cut at N terms; the
/// state is sub-normalized and tail() holds the discarded mass
/// 1 - sum_{n<N} |c_n|^2. Immutable after construction.
class SchmidtState {
 public:
  /// Arbitrary coefficients; tail is 1 - sum |c_n|^2 by compensated summation.
  /// Throws std::invalid_argument on q < 0, empty or non-finite coefficients,
  /// or total mass above 1 + 1e-12.
  static SchmidtState from_coefficients(int q, Eigen::VectorXcd coeffs);

  /// As above with a caller-provided tail, which must agree with
  /// 1 - sum |c_n|^2 to 1e-14.
  static SchmidtState from_coefficients(int q, Eigen::VectorXcd coeffs, double tail,
                                        std::optional<PairCoherentParams> source = std::nullopt);

  int q() const { return q_; }
  const Eigen::VectorXcd& coeffs() const { return coeffs_; }
  int truncation() const { return static_cast<int>(coeffs_.size()); }
  double tail() const { return tail_; }
  /// Set when the state was produced by build_pcs.
  const std::optional<PairCoherentParams>& source() const { return source_; }

 private:
  SchmidtState(int q, Eigen::VectorXcd coeffs, double tail, std::optional<PairCoherentParams> source)
      : q_(q), coeffs_(std::move(coeffs)), tail_(tail), source_(source) {}

  int q_;
  Eigen::VectorXcd coeffs_;
  double tail_;
  std::optional<PairCoherentParams> source_;
};

struct SchmidtProbabilities {
  Eigen::VectorXd probs;
  double tail = 0.0;
};

/// c_n of the untruncated normalized pair coherent state, in log domain:
/// c_n = N_q zeta^n / sqrt(n! (n+q)!), N_q = [|zeta|^{-q} I_q(2|zeta|)]^{-1/2}.
LogDomainValue pcs_log_coefficient(const PairCoherentParams& params, int n);

/// sum_{n >= truncation} |c_n|^2 of the untruncated state, summed directly.
double pcs_tail(const PairCoherentParams& params, int truncation);

/// First `truncation` coefficients of |zeta, q>.
/// Throws std::invalid_argument for truncation < 1, q < 0, or non-finite zeta.
SchmidtState build_pcs(const PairCoherentParams& params, int truncation);

/// Smallest N with sum_{n >= N} |c_n|^2 < epsilon.
/// Throws std::invalid_argument unless 0 < epsilon < 1, and
/// std::out_of_range when N would exceed hard_cap.
int truncation_for_tolerance(const PairCoherentParams& params, double epsilon, int hard_cap = 512);

SchmidtProbabilities schmidt_probabilities(const SchmidtState& state);

}  // namespace paircoh
