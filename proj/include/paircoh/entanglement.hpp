#pragma once

#include <vector>

#include "paircoh/states.hpp"

namespace paircoh {

/// Closed-form spectrum of the partial transpose of |psi><psi|.
struct PTSpectrum {
  struct Diagonal {
    int n;
    double value;  // |c_n|^2 on |n+q, n>
  };
  /// 2x2 block spanned by |n+q, m> and |m+q, n>, n < m.
  struct Pair {
    int n;
    int m;
    double plus;
    double minus;
  };

  std::vector<Diagonal> diagonal;
  std::vector<Pair> offdiag;

  /// Every eigenvalue as a flat list (N diagonal entries, then +/- per pair).
  std::vector<double> eigenvalues() const;
  double trace() const;
};

/// All entanglement quantities for one state.
struct MeasureReport {
  double negativity_paper = 0.0;
  double negativity_spectral = 0.0;
  double entropy_bits = 0.0;
  double d_lower = 0.0;
  double d_upper = 0.0;
  double d_lower_clamped = 0.0;
  double tail = 0.0;
  int truncation = 0;
};

PTSpectrum pt_spectrum(const SchmidtState& state);

/// Absolute sum of the negative partial-transpose eigenvalues,
/// sum_{n<m} |c_n||c_m|.
double negativity_spectral(const SchmidtState& state);

/// Ordered-pair convention sum_{n != m} |c_n||c_m|, i.e. twice the spectral value.
double negativity_paper(const SchmidtState& state);

/// e^{2|zeta|} / I_0(2|zeta|) - 1: the ordered-pair negativity of the
/// untruncated q = 0 state.
double negativity_paper_limit(double zeta_abs);

/// Von Neumann entropy of the reduced state, in bits.
double entropy_of_entanglement(const SchmidtState& state);

/// det(I - rho_A) = prod_n (1 - |c_n|^2). Exactly 0 when some |c_n|^2 >= 1.
double d_upper(const SchmidtState& state);

/// det(I - rho) for rho = |psi><psi|, which is 1 - |psi|^2 = tail.
double det_i_minus_rho(const SchmidtState& state);

/// d_upper - det(I - rho). Can be negative for coarse truncations.
double d_lower(const SchmidtState& state);

/// Throws std::logic_error if the assembled report breaks
/// d_lower <= d_upper or |d_upper - d_lower - tail| <= 1e-12.
MeasureReport measure_report(const SchmidtState& state);

}  // namespace paircoh
