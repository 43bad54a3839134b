#pragma once

#include <complex>

#include <Eigen/Dense>

#include "paircoh/states.hpp"

namespace paircoh {

/// psi(x_a, x_b) = sum_n c_n phi_{n+q}(x_a) phi_n(x_b), dimensionless
/// oscillator coordinates.
std::complex<double> psi(const SchmidtState& state, double x_a, double x_b);

/// Square grid of psi values; row i is x_a = coordinate(i), column j is x_b.
struct Grid2D {
  double x_min = 0.0;
  double x_max = 0.0;
  Eigen::Index points_per_axis = 0;
  Eigen::MatrixXcd values;

  double spacing() const { return (x_max - x_min) / static_cast<double>(points_per_axis - 1); }
  double coordinate(Eigen::Index i) const { return x_min + static_cast<double>(i) * spacing(); }
};

/// Throws std::invalid_argument unless x_min < x_max and points >= 2.
Grid2D grid_eval(const SchmidtState& state, double x_min, double x_max, Eigen::Index points);

struct QuadratureResult {
  double norm = 0.0;
  double boundary_max = 0.0;  // largest |psi|^2 on the grid edge
  bool boundary_warning = false;
};

/// Boundary values of |psi|^2 above this indicate a domain that cuts off mass.
inline constexpr double kBoundaryWarningLevel = 1e-8;

/// Trapezoidal double integral of |psi|^2.
QuadratureResult quadrature_norm(const Grid2D& grid);

/// Zero-mean bivariate Gaussian with the second moments of |psi|^2, scaled
/// to the same total mass, and the sup-norm distance to |psi|^2 on the grid.
struct GaussianFit {
  double residual = 0.0;
  double mass = 0.0;
  Eigen::Matrix2d covariance = Eigen::Matrix2d::Zero();
  bool boundary_warning = false;
};

inline constexpr double kNonGaussianThreshold = 1e-3;

GaussianFit gaussian_fit(const Grid2D& grid);

inline double gaussian_fit_residual(const Grid2D& grid) { return gaussian_fit(grid).residual; }

}  // namespace paircoh
