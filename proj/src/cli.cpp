#include "paircoh/cli.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "paircoh/entanglement.hpp"
#include "paircoh/io.hpp"
#include "paircoh/oracle.hpp"
#include "paircoh/states.hpp"
#include "paircoh/wavefunction.hpp"

namespace paircoh::cli {

namespace {

double parse_real(std::string_view text) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value))
    throw std::invalid_argument("not a finite real number: '" + std::string(text) + "'");
  return value;
}

double parse_imag_coefficient(std::string_view text) {
  if (text.empty() || text == "+") return 1.0;
  if (text == "-") return -1.0;
  return parse_real(text);
}

std::complex<double> zeta_flag(const std::string& flag, const std::string& text) {
  try {
    return parse_complex(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(flag + ": cannot parse '" + text + "' as a complex number (" + e.what() + ")");
  }
}

/// Writes to --out when given, else to the primary stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (path.empty()) {
      os_ = &fallback;
    } else {
      file_.open(path, std::ios::binary);
      if (!file_) throw UsageError("--out: cannot open '" + path + "' for writing");
      os_ = &file_;
    }
  }
  std::ostream& stream() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_ = nullptr;
};

struct TruncationFlags {
  std::optional<int> n;
  std::optional<double> eps;
};

int resolve_truncation(const PairCoherentParams& params, const TruncationFlags& flags) {
  if (flags.n) {
    if (*flags.n < 1) throw UsageError("--n: truncation must be >= 1");
    return *flags.n;
  }
  const double eps = flags.eps.value_or(1e-12);
  if (!(eps > 0.0 && eps < 1.0)) throw UsageError("--eps: tolerance must lie in (0, 1)");
  try {
    return truncation_for_tolerance(params, eps);
  } catch (const std::out_of_range& e) {
    throw UsageError(std::string("--eps: ") + e.what());
  }
}

PairCoherentParams params_from(const std::string& zeta_text, int q) {
  if (q < 0) throw UsageError("--q: must be >= 0");
  return {zeta_flag("--zeta", zeta_text), q};
}

// ---------------------------------------------------------------- measures

struct MeasuresArgs {
  std::string zeta;
  int q = 0;
  TruncationFlags trunc;
  std::string out;
};

int cmd_measures(const MeasuresArgs& a, std::ostream& out) {
  const PairCoherentParams params = params_from(a.zeta, a.q);
  const SchmidtState state = build_pcs(params, resolve_truncation(params, a.trunc));
  Sink sink(a.out, out);
  sink.stream() << io::dump_json(io::to_json(measure_report(state)));
  return kOk;
}

// ---------------------------------------------------------------- sweep

struct SweepArgs {
  double start = 0.0;
  double stop = 0.0;
  int steps = 2;
  int q = 0;
  double eps = 1e-12;
  std::string out;
};

int cmd_sweep(const SweepArgs& a, std::ostream& out) {
  if (!(a.start >= 0.0) || !std::isfinite(a.start)) throw UsageError("--zeta-start: must be finite and >= 0");
  if (!std::isfinite(a.stop)) throw UsageError("--zeta-stop: must be finite");
  if (a.q < 0) throw UsageError("--q: must be >= 0");
  if (!(a.eps > 0.0 && a.eps < 1.0)) throw UsageError("--eps: tolerance must lie in (0, 1)");
  const bool single_point = a.stop == a.start && a.steps == 1;
  if (!single_point) {
    if (!(a.stop > a.start)) throw UsageError("--zeta-stop: must exceed --zeta-start (or equal it with --steps 1)");
    if (a.steps < 2) throw UsageError("--steps: must be >= 2");
  }

  std::vector<double> zetas(static_cast<std::size_t>(a.steps));
  for (int i = 0; i < a.steps; ++i)
    zetas[static_cast<std::size_t>(i)] =
        single_point ? a.start : a.start + (a.stop - a.start) * i / static_cast<double>(a.steps - 1);

  // One task per zeta; rows are emitted in zeta order after all complete.
  std::vector<std::future<std::string>> rows;
  rows.reserve(zetas.size());
  for (double z : zetas) {
    rows.push_back(std::async(std::launch::async, [z, &a] {
      const PairCoherentParams params{{z, 0.0}, a.q};
      int n = 0;
      try {
        n = truncation_for_tolerance(params, a.eps);
      } catch (const std::out_of_range& e) {
        throw UsageError(std::string("--eps: ") + e.what());
      }
      std::ostringstream row;
      io::write_sweep_row(row, z, a.q, measure_report(build_pcs(params, n)));
      return row.str();
    }));
  }
  std::string body;
  for (auto& f : rows) body += f.get();

  Sink sink(a.out, out);
  sink.stream() << io::kSweepHeader << '\n' << body;
  return kOk;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::vector<std::string> zetas{"0.3", "1.0", "2.5"};
  std::vector<int> qs{0, 1, 2};
  int n = 10;
  double tol = 1e-9;
  std::string out;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  if (a.n < 1) throw UsageError("--n: truncation must be >= 1");
  if (!(a.tol > 0.0)) throw UsageError("--tol: must be > 0");
  OracleConfig config;
  try {
    config = OracleConfig::from_env();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::vector<std::complex<double>> zetas;
  for (const auto& z : a.zetas) zetas.push_back(zeta_flag("--zeta", z));
  for (int q : a.qs) {
    if (q < 0) throw UsageError("--q: must be >= 0");
    const long long dim = static_cast<long long>(a.n + q) * a.n;
    if (dim > config.max_dim)
      throw UsageError("--n: dense dimension " + std::to_string(dim) + " for n=" + std::to_string(a.n) +
                       ", q=" + std::to_string(q) + " exceeds oracle cap " + std::to_string(config.max_dim) +
                       " (PAIRCOH_ORACLE_CAP)");
  }

  bool all_pass = true;
  io::Json cases = io::Json::array();
  for (const auto& zeta : zetas) {
    for (int q : a.qs) {
      const SchmidtState state = build_pcs({zeta, q}, a.n);
      const VerificationReport report = verify_report(state, a.tol, config);
      all_pass = all_pass && report.all_pass();
      io::Json c;
      c["zeta"] = io::Json::array({zeta.real(), zeta.imag()});
      c["q"] = q;
      c["n"] = a.n;
      c["pass"] = report.all_pass();
      c["checks"] = io::to_json(report);
      cases.push_back(std::move(c));
    }
  }
  io::Json doc;
  doc["all_pass"] = all_pass;
  doc["tol"] = a.tol;
  doc["cases"] = std::move(cases);
  Sink sink(a.out, out);
  sink.stream() << io::dump_json(doc);
  return all_pass ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------- wavefunction

struct WavefunctionArgs {
  std::string zeta;
  int q = 0;
  TruncationFlags trunc;
  double x_min = -8.0;
  double x_max = 8.0;
  int points = 401;
  double threshold = kNonGaussianThreshold;
  std::string out;
  std::string sidecar;
};

std::string sidecar_path(const WavefunctionArgs& a) {
  if (!a.sidecar.empty()) return a.sidecar;
  std::filesystem::path p(a.out);
  p.replace_extension(".json");
  if (p == std::filesystem::path(a.out)) p += ".sidecar.json";
  return p.string();
}

int cmd_wavefunction(const WavefunctionArgs& a, std::ostream& err) {
  if (!(a.x_min < a.x_max)) throw UsageError("--x-min: must be below --x-max");
  if (a.points < 2) throw UsageError("--points: must be >= 2");
  const PairCoherentParams params = params_from(a.zeta, a.q);
  const SchmidtState state = build_pcs(params, resolve_truncation(params, a.trunc));
  const Grid2D grid = grid_eval(state, a.x_min, a.x_max, a.points);
  const QuadratureResult quad = quadrature_norm(grid);
  const GaussianFit fit = gaussian_fit(grid);
  if (quad.boundary_warning)
    err << "warning: |psi|^2 reaches " << io::format_number(quad.boundary_max)
        << " on the grid boundary; widen --x-min/--x-max\n";

  {
    Sink sink(a.out, err);
    io::write_grid_csv(sink.stream(), grid);
  }
  io::Json side;
  side["quadrature_norm"] = quad.norm;
  side["gaussian_fit_residual"] = fit.residual;
  side["residual_metric"] = "sup-norm of |psi|^2 minus second-moment-matched zero-mean Gaussian";
  side["non_gaussian_threshold"] = a.threshold;
  side["non_gaussian"] = fit.residual > a.threshold;
  side["boundary_warning"] = quad.boundary_warning;
  side["truncation"] = state.truncation();
  side["tail"] = state.tail();
  Sink sink(sidecar_path(a), err);
  sink.stream() << io::dump_json(side);
  return kOk;
}

}  // namespace

std::complex<double> parse_complex(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty value");
  if (text.back() != 'i') return {parse_real(text), 0.0};

  const std::string_view body = text.substr(0, text.size() - 1);
  std::size_t split = std::string_view::npos;
  for (std::size_t p = body.size(); p-- > 1;) {
    if ((body[p] == '+' || body[p] == '-') && body[p - 1] != 'e' && body[p - 1] != 'E') {
      split = p;
      break;
    }
  }
  if (split == std::string_view::npos) return {0.0, parse_imag_coefficient(body)};
  return {parse_real(body.substr(0, split)), parse_imag_coefficient(body.substr(split))};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entanglement measures of pair coherent states"};
  app.name("paircoh");
  app.require_subcommand(1);

  MeasuresArgs m;
  auto* measures = app.add_subcommand("measures", "Print the measure report of one state as JSON");
  measures->add_option("--zeta", m.zeta, "Complex parameter, e.g. 1, 1+0.5i")->required();
  measures->add_option("--q", m.q, "Degeneracy parameter q >= 0");
  auto* m_n = measures->add_option("--n", m.trunc.n, "Explicit truncation N");
  measures->add_option("--eps", m.trunc.eps, "Truncation tail tolerance (default 1e-12)")->excludes(m_n);
  measures->add_option("--out", m.out, "Output file (default stdout)");

  SweepArgs s;
  auto* sweep = app.add_subcommand("sweep", "CSV of measures over a |zeta| range");
  sweep->add_option("--zeta-start", s.start, "First |zeta|");
  sweep->add_option("--zeta-stop", s.stop, "Last |zeta|")->required();
  sweep->add_option("--steps", s.steps, "Number of |zeta| values");
  sweep->add_option("--q", s.q, "Degeneracy parameter q >= 0");
  sweep->add_option("--eps", s.eps, "Truncation tail tolerance");
  sweep->add_option("--out", s.out, "Output file (default stdout)");

  VerifyArgs v;
  auto* verify = app.add_subcommand("verify", "Check closed forms against dense linear algebra");
  verify->add_option("--zeta", v.zetas, "Comma-separated zeta values")->delimiter(',');
  verify->add_option("--q", v.qs, "Comma-separated q values")->delimiter(',');
  verify->add_option("--n", v.n, "Truncation N");
  verify->add_option("--tol", v.tol, "Maximum absolute deviation");
  verify->add_option("--out", v.out, "Output file (default stdout)");

  WavefunctionArgs w;
  auto* wave = app.add_subcommand("wavefunction", "Export psi(x_a, x_b) on a grid as CSV plus a JSON sidecar");
  wave->add_option("--zeta", w.zeta, "Complex parameter")->required();
  wave->add_option("--q", w.q, "Degeneracy parameter q >= 0");
  auto* w_n = wave->add_option("--n", w.trunc.n, "Explicit truncation N");
  wave->add_option("--eps", w.trunc.eps, "Truncation tail tolerance (default 1e-12)")->excludes(w_n);
  wave->add_option("--x-min", w.x_min, "Lower grid edge");
  wave->add_option("--x-max", w.x_max, "Upper grid edge");
  wave->add_option("--points", w.points, "Points per axis");
  wave->add_option("--threshold", w.threshold, "Non-Gaussianity threshold on the fit residual");
  wave->add_option("--out", w.out, "CSV output file")->required();
  wave->add_option("--sidecar", w.sidecar, "Sidecar JSON path (default: --out with .json extension)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (measures->parsed()) return cmd_measures(m, out);
    if (sweep->parsed()) return cmd_sweep(s, out);
    if (verify->parsed()) return cmd_verify(v, out);
    if (wave->parsed()) return cmd_wavefunction(w, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace paircoh::cli
