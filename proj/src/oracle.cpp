#include "paircoh/oracle.hpp"

#include <cerrno>
#include <cstdlib>

#include "paircoh/entanglement.hpp"

namespace paircoh {

namespace {

void require_cap(LocalDims dims, const OracleConfig& config) {
  if (dims.total() > config.max_dim)
    throw OracleCapExceeded("dense dimension " + std::to_string(dims.total()) + " = " + std::to_string(dims.a) +
                            " x " + std::to_string(dims.b) + " exceeds oracle cap " +
                            std::to_string(config.max_dim) + " (set PAIRCOH_ORACLE_CAP to raise it)");
}

double max_abs_deviation(std::vector<double> lhs, std::vector<double> rhs) {
  std::sort(lhs.begin(), lhs.end());
  std::sort(rhs.begin(), rhs.end());
  if (lhs.size() != rhs.size()) return std::numeric_limits<double>::infinity();
  double dev = 0.0;
  for (std::size_t i = 0; i < lhs.size(); ++i) dev = std::max(dev, std::abs(lhs[i] - rhs[i]));
  return dev;
}

VerificationCheck make_check(std::string name, double dev, double tol) {
  // NaN deviations fail.
  return {std::move(name), dev, tol, dev <= tol};
}

}  // namespace

OracleConfig OracleConfig::from_env() {
  OracleConfig config;
  if (const char* raw = std::getenv("PAIRCOH_ORACLE_CAP"); raw != nullptr && *raw != '\0') {
    errno = 0;
    char* end = nullptr;
    const long long value = std::strtoll(raw, &end, 10);
    if (errno != 0 || end == raw || *end != '\0' || value <= 0)
      throw std::invalid_argument(std::string("PAIRCOH_ORACLE_CAP must be a positive integer, got '") + raw + "'");
    config.max_dim = static_cast<Eigen::Index>(value);
  }
  return config;
}

LocalDims dense_dims(const SchmidtState& state) {
  return {state.truncation() + state.q(), state.truncation()};
}

DenseMatrixXcd dense_rho(const SchmidtState& state, const OracleConfig& config) {
  const LocalDims dims = dense_dims(state);
  require_cap(dims, config);
  // Embed psi into the product space, then form the outer product.
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dims.total());
  for (int n = 0; n < state.truncation(); ++n) psi((n + state.q()) * dims.b + n) = state.coeffs()(n);
  return psi * psi.adjoint();
}

DenseMatrixXcd dense_rho_a(const SchmidtState& state, const OracleConfig& config) {
  return partial_trace_b(dense_rho(state, config), dense_dims(state));
}

VerificationReport verify_report(const SchmidtState& state, double tol, const OracleConfig& config) {
  const LocalDims dims = dense_dims(state);
  const DenseMatrixXcd rho = dense_rho(state, config);
  const DenseMatrixXcd rho_a = partial_trace_b(rho, dims);
  VerificationReport report;

  // Partial-transpose spectrum, padded with the zero eigenvalues of the
  // unused product kets.
  const std::vector<double> pt_dense =
      sym_eigenvalues(partial_transpose(rho, dims), config.jacobi_tol, config.jacobi_max_sweeps);
  std::vector<double> pt_closed = pt_spectrum(state).eigenvalues();
  pt_closed.resize(static_cast<std::size_t>(dims.total()), 0.0);
  report.checks.push_back(make_check("pt_spectrum", max_abs_deviation(pt_dense, pt_closed), tol));

  double dense_negativity = 0.0;
  for (double v : pt_dense)
    if (v < 0.0) dense_negativity -= v;
  report.checks.push_back(
      make_check("negativity_spectral", std::abs(negativity_spectral(state) - dense_negativity), tol));
  report.checks.push_back(
      make_check("negativity_paper", std::abs(negativity_paper(state) - 2.0 * dense_negativity), tol));

  const DenseMatrixXcd identity = DenseMatrixXcd::Identity(dims.total(), dims.total());
  const std::complex<double> det_rho = determinant(identity - rho);
  report.checks.push_back(make_check("det_i_minus_rho", std::abs(det_rho - det_i_minus_rho(state)), tol));

  const DenseMatrixXcd identity_a = DenseMatrixXcd::Identity(dims.a, dims.a);
  const std::complex<double> det_rho_a = determinant(identity_a - rho_a);
  report.checks.push_back(make_check("d_upper", std::abs(det_rho_a - d_upper(state)), tol));

  double dense_entropy = 0.0;
  for (double v : sym_eigenvalues(rho_a, config.jacobi_tol, config.jacobi_max_sweeps))
    if (v > 0.0) dense_entropy -= v * std::log2(v);
  report.checks.push_back(make_check("entropy", std::abs(dense_entropy - entropy_of_entanglement(state)), tol));

  return report;
}

}  // namespace paircoh
