#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "paircoh/entanglement.hpp"
#include "paircoh/oracle.hpp"
#include "paircoh/states.hpp"
#include "paircoh/wavefunction.hpp"

namespace paircoh::io {

using Json = nlohmann::ordered_json;

/// Shortest general form with 17 significant digits ("%.17g"); "null" for
/// non-finite values.
std::string format_number(double value);

/// Serializes with insertion-ordered keys, two-space indent and every
/// floating-point number through format_number, so output is byte-stable.
std::string dump_json(const Json& j);

Json to_json(const MeasureReport& report);
/// Array of {check_name, max_abs_dev, tol, pass}.
Json to_json(const VerificationReport& report);
/// {q, zeta: [re, im] or null, coeffs: [[re, im], ...], tail}.
Json to_json(const SchmidtState& state);

/// Inverse of to_json(SchmidtState). Throws std::invalid_argument on a
/// malformed object and whatever SchmidtState validation raises.
SchmidtState state_from_json(const nlohmann::json& j);

/// Header `x_a,x_b,re_psi,im_psi,abs2`, rows in row-major (x_a outer) order.
void write_grid_csv(std::ostream& os, const Grid2D& grid);

struct GridCsvRow {
  double x_a, x_b, re_psi, im_psi, abs2;
};
/// Parses the output of write_grid_csv. Throws std::invalid_argument on a bad header or row.
std::vector<GridCsvRow> read_grid_csv(std::istream& is);

inline constexpr const char* kSweepHeader =
    "zeta_abs,q,N,negativity_paper,negativity_spectral,entropy_bits,d_lower,d_upper,tail";

void write_sweep_row(std::ostream& os, double zeta_abs, int q, const MeasureReport& report);

}  // namespace paircoh::io
