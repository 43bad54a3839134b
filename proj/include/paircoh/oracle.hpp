#pragma once

// Brute-force dense linear algebra on the truncated two-mode space. Nothing
// here calls the closed forms in entanglement.hpp; verify_report is the only
// place the two meet.

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>

#include "paircoh/specfun.hpp"
#include "paircoh/states.hpp"

namespace paircoh {

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using DenseMatrixXcd = DenseMatrix<std::complex<double>>;
using DenseMatrixXd = DenseMatrix<double>;

namespace detail {
template <typename T>
struct is_complex : std::false_type {};
template <typename T>
struct is_complex<std::complex<T>> : std::true_type {};
}  // namespace detail

/// Local dimensions (N_a, N_b). Composite index is a * N_b + b.
struct LocalDims {
  Eigen::Index a = 0;
  Eigen::Index b = 0;
  Eigen::Index total() const { return a * b; }
};

/// Thrown when a dense construction would exceed OracleConfig::max_dim.
class OracleCapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Thrown when Jacobi sweeps do not reach the requested off-diagonal norm.
class NonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleConfig {
  Eigen::Index max_dim = 400;
  double jacobi_tol = 1e-12;
  int jacobi_max_sweeps = 100;

  /// Defaults, with max_dim taken from PAIRCOH_ORACLE_CAP when set.
  /// Throws std::invalid_argument when the variable is not a positive integer.
  static OracleConfig from_env();
};

/// <i_a j_b| rho^{T_B} |k_a l_b> = <i_a l_b| rho |k_a j_b>.
template <typename Derived>
DenseMatrix<typename Derived::Scalar> partial_transpose(const Eigen::MatrixBase<Derived>& m, LocalDims dims) {
  if (m.rows() != m.cols() || m.rows() != dims.total())
    throw std::invalid_argument("partial_transpose: matrix dimension does not match N_a * N_b");
  DenseMatrix<typename Derived::Scalar> out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < dims.a; ++i)
    for (Eigen::Index j = 0; j < dims.b; ++j)
      for (Eigen::Index k = 0; k < dims.a; ++k)
        for (Eigen::Index l = 0; l < dims.b; ++l)
          out(i * dims.b + j, k * dims.b + l) = m(i * dims.b + l, k * dims.b + j);
  return out;
}

/// Trace over subsystem B.
template <typename Derived>
DenseMatrix<typename Derived::Scalar> partial_trace_b(const Eigen::MatrixBase<Derived>& m, LocalDims dims) {
  if (m.rows() != m.cols() || m.rows() != dims.total())
    throw std::invalid_argument("partial_trace_b: matrix dimension does not match N_a * N_b");
  DenseMatrix<typename Derived::Scalar> out = DenseMatrix<typename Derived::Scalar>::Zero(dims.a, dims.a);
  for (Eigen::Index i = 0; i < dims.a; ++i)
    for (Eigen::Index k = 0; k < dims.a; ++k)
      for (Eigen::Index j = 0; j < dims.b; ++j) out(i, k) += m(i * dims.b + j, k * dims.b + j);
  return out;
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, double tol = 1e-14) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(1.0, static_cast<double>(m.cwiseAbs().maxCoeff()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = i; j < m.cols(); ++j)
      if (std::abs(m(i, j) - Eigen::numext::conj(m(j, i))) > tol * scale) return false;
  return true;
}

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations,
/// iterated until the off-diagonal Frobenius norm drops below tol.
/// Sorted ascending.
template <typename Real>
std::vector<Real> jacobi_eigenvalues(DenseMatrix<Real> a, Real tol, int max_sweeps = 100) {
  static_assert(std::is_floating_point_v<Real>);
  const Eigen::Index n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("jacobi_eigenvalues: matrix is not square");

  auto off_norm = [&a, n] {
    Real s = 0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  int sweep = 0;
  for (; off_norm() >= tol; ++sweep) {
    if (sweep >= max_sweeps)
      throw NonConvergence("jacobi_eigenvalues: no convergence after " + std::to_string(max_sweeps) +
                           " sweeps");
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Real apq = a(p, q);
        if (apq == Real(0)) continue;
        const Real theta = (a(q, q) - a(p, p)) / (Real(2) * apq);
        const Real t = (theta >= 0 ? Real(1) : Real(-1)) / (std::abs(theta) + std::sqrt(theta * theta + Real(1)));
        const Real c = Real(1) / std::sqrt(t * t + Real(1));
        const Real s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const Real akp = a(k, p);
          const Real akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Real apk = a(p, k);
          const Real aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = Real(0);
        a(q, p) = Real(0);
      }
    }
  }

  std::vector<Real> eig(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) eig[static_cast<std::size_t>(i)] = a(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

/// Eigenvalues of a Hermitian matrix, ascending. Complex input with nonzero
/// imaginary parts is realified to [[Re, -Im], [Im, Re]], whose spectrum is
/// that of the input with every eigenvalue doubled; one of each pair is kept.
/// Throws std::invalid_argument for non-Hermitian input and NonConvergence
/// when the sweep cap is reached.
template <typename Derived>
std::vector<double> sym_eigenvalues(const Eigen::MatrixBase<Derived>& m, double tol = 1e-12,
                                    int max_sweeps = 100) {
  if (!is_hermitian(m)) throw std::invalid_argument("sym_eigenvalues: matrix is not Hermitian");
  using Scalar = typename Derived::Scalar;
  if constexpr (detail::is_complex<Scalar>::value) {
    const Eigen::Index n = m.rows();
    if (m.imag().cwiseAbs().maxCoeff() == 0.0) {
      return jacobi_eigenvalues<double>(m.real(), tol, max_sweeps);
    }
    DenseMatrixXd real_form(2 * n, 2 * n);
    real_form.topLeftCorner(n, n) = m.real();
    real_form.bottomRightCorner(n, n) = m.real();
    real_form.topRightCorner(n, n) = -m.imag();
    real_form.bottomLeftCorner(n, n) = m.imag();
    // The realified matrix carries the off-diagonal mass twice.
    const std::vector<double> doubled = jacobi_eigenvalues<double>(std::move(real_form), tol * std::sqrt(2.0), max_sweeps);
    std::vector<double> eig;
    eig.reserve(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < doubled.size(); i += 2) eig.push_back(0.5 * (doubled[i] + doubled[i + 1]));
    return eig;
  } else {
    return jacobi_eigenvalues<double>(m.template cast<double>(), tol, max_sweeps);
  }
}

/// LU factorization with partial pivoting, returned as a log-magnitude and a
/// phase (sign for real input). A singular matrix gives LogDomainValue::zero().
template <typename Derived>
LogDomainValue log_determinant(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix is not square");
  DenseMatrix<Scalar> lu = m;
  const Eigen::Index n = lu.rows();
  LogDomainValue det = LogDomainValue::from_log(0.0);
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index pivot = k;
    double best = std::abs(lu(k, k));
    for (Eigen::Index i = k + 1; i < n; ++i) {
      if (std::abs(lu(i, k)) > best) {
        best = std::abs(lu(i, k));
        pivot = i;
      }
    }
    if (best == 0.0) return LogDomainValue::zero();
    if (pivot != k) {
      lu.row(k).swap(lu.row(pivot));
      det.phase = -det.phase;
    }
    const Scalar u = lu(k, k);
    det.log_magnitude += std::log(best);
    det.phase *= std::complex<double>(u) / best;
    for (Eigen::Index i = k + 1; i < n; ++i) {
      const Scalar factor = lu(i, k) / u;
      lu(i, k) = factor;
      lu.row(i).tail(n - k - 1) -= factor * lu.row(k).tail(n - k - 1);
    }
  }
  return det;
}

/// Product of the LU pivots with row-swap sign tracking.
template <typename Derived>
typename Derived::Scalar determinant(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix is not square");
  DenseMatrix<Scalar> lu = m;
  const Eigen::Index n = lu.rows();
  Scalar det(1);
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index pivot = k;
    double best = std::abs(lu(k, k));
    for (Eigen::Index i = k + 1; i < n; ++i) {
      if (std::abs(lu(i, k)) > best) {
        best = std::abs(lu(i, k));
        pivot = i;
      }
    }
    if (best == 0.0) return Scalar(0);
    if (pivot != k) {
      lu.row(k).swap(lu.row(pivot));
      det = -det;
    }
    const Scalar u = lu(k, k);
    det *= u;
    for (Eigen::Index i = k + 1; i < n; ++i) {
      const Scalar factor = lu(i, k) / u;
      lu.row(i).tail(n - k - 1) -= factor * lu.row(k).tail(n - k - 1);
    }
  }
  return det;
}

/// (N + q, N): room for |n+q> on mode a and |n> on mode b.
LocalDims dense_dims(const SchmidtState& state);

/// |psi><psi| on the product basis of dense_dims(state).
DenseMatrixXcd dense_rho(const SchmidtState& state, const OracleConfig& config = {});

/// Reduced state of mode a, by explicit partial trace of dense_rho.
DenseMatrixXcd dense_rho_a(const SchmidtState& state, const OracleConfig& config = {});

struct VerificationCheck {
  std::string check_name;
  double max_abs_dev = 0.0;
  double tol = 0.0;
  bool pass = false;
};

struct VerificationReport {
  std::vector<VerificationCheck> checks;
  bool all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
  }
};

/// Compares every closed form against its dense counterpart. Failed checks
/// are reported, not thrown; only a cap violation throws.
VerificationReport verify_report(const SchmidtState& state, double tol, const OracleConfig& config = {});

}  // namespace paircoh
