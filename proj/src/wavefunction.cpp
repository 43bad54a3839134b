#include "paircoh/wavefunction.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "paircoh/specfun.hpp"

namespace paircoh {

namespace {

// Trapezoid weights on a uniform axis.
Eigen::VectorXd trapezoid_weights(const Grid2D& grid) {
  Eigen::VectorXd w = Eigen::VectorXd::Constant(grid.points_per_axis, grid.spacing());
  w(0) *= 0.5;
  w(grid.points_per_axis - 1) *= 0.5;
  return w;
}

Eigen::VectorXd axis(const Grid2D& grid) {
  return Eigen::VectorXd::LinSpaced(grid.points_per_axis, grid.x_min, grid.x_max);
}

double boundary_max(const Eigen::MatrixXd& density) {
  const Eigen::Index last = density.rows() - 1;
  return std::max({density.row(0).maxCoeff(), density.row(last).maxCoeff(), density.col(0).maxCoeff(),
                   density.col(last).maxCoeff()});
}

}  // namespace

std::complex<double> psi(const SchmidtState& state, double x_a, double x_b) {
  const int n_terms = state.truncation();
  const Eigen::VectorXd phi_a = oscillator_eigenfunctions(n_terms + state.q(), x_a);
  const Eigen::VectorXd phi_b = oscillator_eigenfunctions(n_terms, x_b);
  std::complex<double> sum{};
  for (int n = 0; n < n_terms; ++n) sum += state.coeffs()(n) * (phi_a(n + state.q()) * phi_b(n));
  return sum;
}

Grid2D grid_eval(const SchmidtState& state, double x_min, double x_max, Eigen::Index points) {
  if (!(x_min < x_max)) throw std::invalid_argument("grid_eval: x_min must be below x_max");
  if (points < 2) throw std::invalid_argument("grid_eval: need at least 2 points per axis");

  Grid2D grid{x_min, x_max, points, {}};
  const int n_terms = state.truncation();
  const int q = state.q();
  const Eigen::VectorXd x = axis(grid);

  // Rows of basis_a hold phi_{q..q+N-1}(x_i); rows of basis_b hold phi_{0..N-1}(x_j).
  Eigen::MatrixXd basis_a(points, n_terms);
  Eigen::MatrixXd basis_b(points, n_terms);
  for (Eigen::Index i = 0; i < points; ++i) {
    const Eigen::VectorXd phi = oscillator_eigenfunctions(n_terms + q, x(i));
    basis_a.row(i) = phi.segment(q, n_terms).transpose();
    basis_b.row(i) = phi.head(n_terms).transpose();
  }
  grid.values = (basis_a.cast<std::complex<double>>() * state.coeffs().asDiagonal()) *
                basis_b.transpose().cast<std::complex<double>>();
  return grid;
}

QuadratureResult quadrature_norm(const Grid2D& grid) {
  const Eigen::MatrixXd density = grid.values.cwiseAbs2();
  const Eigen::VectorXd w = trapezoid_weights(grid);
  QuadratureResult result;
  result.norm = w.dot(density * w);
  result.boundary_max = boundary_max(density);
  result.boundary_warning = result.boundary_max > kBoundaryWarningLevel;
  return result;
}

GaussianFit gaussian_fit(const Grid2D& grid) {
  const Eigen::MatrixXd density = grid.values.cwiseAbs2();
  const Eigen::VectorXd w = trapezoid_weights(grid);
  const Eigen::VectorXd x = axis(grid);
  const Eigen::VectorXd wx = w.cwiseProduct(x);
  const Eigen::VectorXd wxx = wx.cwiseProduct(x);

  GaussianFit fit;
  fit.mass = w.dot(density * w);
  if (!(fit.mass > 0.0)) throw std::invalid_argument("gaussian_fit: grid carries no probability mass");
  fit.covariance(0, 0) = wxx.dot(density * w) / fit.mass;
  fit.covariance(1, 1) = w.dot(density * wxx) / fit.mass;
  fit.covariance(0, 1) = fit.covariance(1, 0) = wx.dot(density * wx) / fit.mass;
  fit.boundary_warning = boundary_max(density) > kBoundaryWarningLevel;

  const Eigen::Matrix2d precision = fit.covariance.inverse();
  const double prefactor = fit.mass / (2.0 * std::numbers::pi * std::sqrt(fit.covariance.determinant()));
  double residual = 0.0;
  for (Eigen::Index i = 0; i < grid.points_per_axis; ++i) {
    for (Eigen::Index j = 0; j < grid.points_per_axis; ++j) {
      const Eigen::Vector2d p(x(i), x(j));
      const double g = prefactor * std::exp(-0.5 * p.dot(precision * p));
      residual = std::max(residual, std::abs(density(i, j) - g));
    }
  }
  fit.residual = residual;
  return fit;
}

}  // namespace paircoh
