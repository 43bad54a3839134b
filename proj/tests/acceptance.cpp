// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "paircoh/cli.hpp"
#include "paircoh/entanglement.hpp"
#include "paircoh/oracle.hpp"
#include "paircoh/states.hpp"
#include "paircoh/wavefunction.hpp"

using namespace paircoh;
namespace oracle = paircoh::testing;

namespace {

const std::vector<double> kZetas{0.3, 1.0, 2.5};
const std::vector<int> kQs{0, 1, 2};
const std::vector<int> kNs{4, 8, 12};

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(const char* id, const char* title, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::printf("[%s] %s %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

double dense_negativity(const SchmidtState& s) {
  double neg = 0.0;
  for (double v : sym_eigenvalues(partial_transpose(dense_rho(s), dense_dims(s))))
    if (v < 0.0) neg -= v;
  return neg;
}

Outcome c1_oracle_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  int failed = 0;
  for (double z : kZetas)
    for (int q : kQs)
      for (int n : kNs) {
        const auto rep = verify_report(build_pcs({{z, 0.0}, q}, n), 1e-9);
        for (const auto& c : rep.checks) {
          worst = std::max(worst, c.max_abs_dev);
          if (!c.pass) ++failed;
        }
      }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {failed == 0 && worst < 1e-9 && secs < 30.0,
          "27 states, worst deviation " + sci(worst) + " (< 1e-9), failed checks " + std::to_string(failed) +
              ", runtime " + sci(secs) + " s (< 30 s)"};
}

Outcome c2_negativity_bridge() {
  double worst_bridge = 0.0;
  for (double z : kZetas)
    for (int q : kQs)
      for (int n : kNs) {
        const auto s = build_pcs({{z, 0.0}, q}, n);
        worst_bridge = std::max(worst_bridge, std::abs(negativity_paper(s) - 2.0 * dense_negativity(s)));
      }

  double worst_limit = 0.0;
  std::string per_zeta;
  for (double z : kZetas) {
    const PairCoherentParams p{{z, 0.0}, 0};
    const int n = truncation_for_tolerance(p, 1e-12);
    const double i0 = static_cast<double>(oracle::bessel_i_quadrature(0, 2.0L * z));
    const double closed = std::exp(2.0 * z) / i0 - 1.0;
    const double dev = std::abs(negativity_paper(build_pcs(p, n)) - closed);
    worst_limit = std::max(worst_limit, dev);
    per_zeta += " z=" + sci(z) + ":N=" + std::to_string(n) + ",dev=" + sci(dev);
  }
  return {worst_bridge < 1e-10 && worst_limit < 1e-8,
          "bridge worst " + sci(worst_bridge) + " (< 1e-10); closed-form worst " + sci(worst_limit) +
              " (< 1e-8);" + per_zeta};
}

Outcome c3_zero_limit() {
  const PairCoherentParams p{{1e-8, 0.0}, 0};
  const auto r = measure_report(build_pcs(p, truncation_for_tolerance(p, 1e-12)));
  const std::vector<std::pair<const char*, double>> fields{
      {"negativity_paper", r.negativity_paper}, {"negativity_spectral", r.negativity_spectral},
      {"entropy_bits", r.entropy_bits},         {"d_lower", r.d_lower},
      {"d_upper", r.d_upper},                   {"d_lower_clamped", r.d_lower_clamped},
      {"tail", r.tail}};
  bool ok = true;
  std::string detail;
  for (const auto& [name, v] : fields) {
    const bool f = std::abs(v) < 1e-12;
    ok = ok && f;
    detail += std::string(name) + "=" + sci(v) + (f ? "" : "(!)") + " ";
  }
  // Informational: forcing a pair into the truncation gives N ~ 2|zeta|.
  const double forced = negativity_paper(build_pcs(p, 2));
  return {ok, detail + "(each < 1e-12) at N=" + std::to_string(r.truncation) + "; forced N=2 negativity_paper " +
                  sci(forced)};
}

Outcome c4_gap_identity() {
  std::mt19937_64 rng(20261016);
  double worst = 0.0;
  bool ordered = true;
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = SchmidtState::from_coefficients(trial % 3, oracle::random_subnormalized(rng, 16));
    const double up = d_upper(s);
    const double lo = d_lower(s);
    worst = std::max(worst, std::abs((up - lo) - s.tail()));
    ordered = ordered && lo <= up;
  }
  return {worst < 1e-12 && ordered,
          "200 random states, worst |gap - tail| " + sci(worst) + " (< 1e-12), ordering " + (ordered ? "ok" : "broken")};
}

Outcome c5_convergence() {
  std::vector<double> gaps;
  for (int n = 2; n <= 12; ++n) {
    const auto r = measure_report(build_pcs({{1.0, 0.0}, 0}, n));
    gaps.push_back(r.d_upper - r.d_lower);
  }
  bool monotone = true;
  for (std::size_t i = 1; i < gaps.size(); ++i)
    monotone = monotone && (gaps[i] < gaps[i - 1] || (gaps[i] == 0.0 && gaps[i - 1] == 0.0));
  const double gap10 = gaps[8];
  return {gap10 <= 1e-9 && monotone,
          "gap(N=10) " + sci(gap10) + " (<= 1e-9), decreasing over N=2..12 " + (monotone ? "yes" : "no") +
              ", gap(N=2) " + sci(gaps.front()) + ", gap(N=12) " + sci(gaps.back())};
}

Outcome c6_defining_relation() {
  double worst = 0.0;
  for (double z : kZetas)
    for (int q : kQs)
      for (int n : kNs) {
        const auto s = build_pcs({{z, 0.0}, q}, n);
        for (int k = 0; k + 1 < n; ++k) {
          const std::complex<double> lhs = s.coeffs()(k + 1) * std::sqrt((k + 1.0) * (k + 1.0 + q));
          const std::complex<double> rhs = z * s.coeffs()(k);
          worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
        }
      }
  return {worst < 1e-12, "worst relative recurrence residual " + sci(worst) + " (< 1e-12)"};
}

Outcome c7_wavefunction() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto s1 = build_pcs({{1.0, 0.0}, 0}, 12);
  const Grid2D g1 = grid_eval(s1, -8.0, 8.0, 401);
  const double norm_dev = std::abs(quadrature_norm(g1).norm - (1.0 - s1.tail()));
  const double res1 = gaussian_fit_residual(g1);
  const double res0 = gaussian_fit_residual(grid_eval(build_pcs({{0.0, 0.0}, 0}, 12), -8.0, 8.0, 401));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {norm_dev < 1e-6 && res0 < 1e-8 && res1 > 1e-3 && secs < 20.0,
          "|norm - (1 - tail)| " + sci(norm_dev) + " (< 1e-6), residual(0) " + sci(res0) + " (< 1e-8), residual(1) " +
              sci(res1) + " (> 1e-3), runtime " + sci(secs) + " s (< 20 s)"};
}

Outcome c8_special_functions() {
  const double quad = static_cast<double>(oracle::bessel_i_quadrature(0, 2.0L));
  const double bessel_dev = std::abs(bessel_i(0, 2.0) - quad);

  constexpr int kMax = 12;
  const double h = 0.01;
  const int points = 2001;
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(kMax + 1, kMax + 1);
  for (int i = 0; i < points; ++i) {
    const double x = -10.0 + i * h;
    const double w = (i == 0 || i == points - 1) ? 0.5 * h : h;
    const Eigen::VectorXd phi = oscillator_eigenfunctions(kMax + 1, x);
    gram += w * phi * phi.transpose();
  }
  const double ortho_dev = (gram - Eigen::MatrixXd::Identity(kMax + 1, kMax + 1)).cwiseAbs().maxCoeff();
  return {bessel_dev < 1e-10 && ortho_dev < 1e-8,
          "|I0(2) series - quadrature| " + sci(bessel_dev) + " (< 1e-10), orthonormality " + sci(ortho_dev) +
              " (< 1e-8)"};
}

Outcome c9_determinism() {
  const std::vector<std::string> args{"sweep", "--zeta-start", "0", "--zeta-stop", "2.5", "--steps", "64"};
  std::ostringstream a, b, err;
  const int ca = cli::run(args, a, err);
  const int cb = cli::run(args, b, err);
  const bool same = a.str() == b.str();
  return {ca == 0 && cb == 0 && same && !a.str().empty(),
          "two 64-step sweeps, " + std::to_string(a.str().size()) + " bytes, identical " + (same ? "yes" : "no")};
}

}  // namespace

int main() {
  report("C1", "oracle equivalence", c1_oracle_equivalence);
  report("C2", "negativity convention bridge", c2_negativity_bridge);
  report("C3", "zeta -> 0 limit", c3_zero_limit);
  report("C4", "gap identity", c4_gap_identity);
  report("C5", "bound convergence", c5_convergence);
  report("C6", "defining relation", c6_defining_relation);
  report("C7", "wavefunction", c7_wavefunction);
  report("C8", "special functions", c8_special_functions);
  report("C9", "sweep determinism", c9_determinism);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
