#include "paircoh/io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace paircoh::io {

namespace {

void dump_into(std::string& out, const Json& j, int depth) {
  const std::string indent(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string closing(static_cast<std::size_t>(2 * depth), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += indent + Json(key).dump() + ": ";
        dump_into(out, value, depth + 1);
      }
      out += "\n" + closing + "}";
      return;
    }
    case Json::value_t::array: {
      // Arrays of scalars stay on one line.
      const bool flat = std::none_of(j.begin(), j.end(), [](const Json& e) { return e.is_structured(); });
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += flat ? "[" : "[\n";
      bool first = true;
      for (const auto& value : j) {
        if (!first) out += flat ? ", " : ",\n";
        first = false;
        if (!flat) out += indent;
        dump_into(out, value, depth + 1);
      }
      out += flat ? "]" : "\n" + closing + "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_number(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

Json complex_pair(std::complex<double> z) { return Json::array({z.real(), z.imag()}); }

double parse_double(std::string_view field) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size())
    throw std::invalid_argument("grid csv: bad number '" + std::string(field) + "'");
  return value;
}

}  // namespace

std::string format_number(double value) {
  if (!std::isfinite(value)) return "null";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  if (ec != std::errc()) throw std::runtime_error("format_number: conversion failed");
  return std::string(buf, ptr);
}

std::string dump_json(const Json& j) {
  std::string out;
  dump_into(out, j, 0);
  out += '\n';
  return out;
}

Json to_json(const MeasureReport& r) {
  Json j;
  j["negativity_paper"] = r.negativity_paper;
  j["negativity_spectral"] = r.negativity_spectral;
  j["entropy_bits"] = r.entropy_bits;
  j["d_lower"] = r.d_lower;
  j["d_upper"] = r.d_upper;
  j["d_lower_clamped"] = r.d_lower_clamped;
  j["tail"] = r.tail;
  j["truncation"] = r.truncation;
  return j;
}

Json to_json(const VerificationReport& report) {
  Json arr = Json::array();
  for (const auto& c : report.checks) {
    Json j;
    j["check_name"] = c.check_name;
    j["max_abs_dev"] = c.max_abs_dev;
    j["tol"] = c.tol;
    j["pass"] = c.pass;
    arr.push_back(std::move(j));
  }
  return arr;
}

Json to_json(const SchmidtState& state) {
  Json j;
  j["q"] = state.q();
  j["zeta"] = state.source() ? complex_pair(state.source()->zeta) : Json(nullptr);
  Json coeffs = Json::array();
  for (const auto& c : state.coeffs()) coeffs.push_back(complex_pair(c));
  j["coeffs"] = std::move(coeffs);
  j["tail"] = state.tail();
  return j;
}

SchmidtState state_from_json(const nlohmann::json& j) {
  try {
    const int q = j.at("q").get<int>();
    const auto& raw = j.at("coeffs");
    Eigen::VectorXcd coeffs(static_cast<Eigen::Index>(raw.size()));
    for (std::size_t n = 0; n < raw.size(); ++n) {
      coeffs(static_cast<Eigen::Index>(n)) = {raw.at(n).at(0).get<double>(), raw.at(n).at(1).get<double>()};
    }
    std::optional<PairCoherentParams> source;
    if (j.contains("zeta") && !j.at("zeta").is_null()) {
      source = PairCoherentParams{{j["zeta"].at(0).get<double>(), j["zeta"].at(1).get<double>()}, q};
    }
    return SchmidtState::from_coefficients(q, std::move(coeffs), j.at("tail").get<double>(), source);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("state json: ") + e.what());
  }
}

void write_grid_csv(std::ostream& os, const Grid2D& grid) {
  os << "x_a,x_b,re_psi,im_psi,abs2\n";
  for (Eigen::Index i = 0; i < grid.points_per_axis; ++i) {
    const std::string xa = format_number(grid.coordinate(i));
    for (Eigen::Index j = 0; j < grid.points_per_axis; ++j) {
      const std::complex<double> v = grid.values(i, j);
      os << xa << ',' << format_number(grid.coordinate(j)) << ',' << format_number(v.real()) << ','
         << format_number(v.imag()) << ',' << format_number(std::norm(v)) << '\n';
    }
  }
}

std::vector<GridCsvRow> read_grid_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "x_a,x_b,re_psi,im_psi,abs2")
    throw std::invalid_argument("grid csv: missing or unexpected header");
  std::vector<GridCsvRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    double f[5];
    std::size_t start = 0;
    for (int k = 0; k < 5; ++k) {
      const std::size_t end = k < 4 ? line.find(',', start) : line.size();
      if (end == std::string::npos) throw std::invalid_argument("grid csv: short row");
      f[k] = parse_double(std::string_view(line).substr(start, end - start));
      start = end + 1;
    }
    rows.push_back({f[0], f[1], f[2], f[3], f[4]});
  }
  return rows;
}

void write_sweep_row(std::ostream& os, double zeta_abs, int q, const MeasureReport& r) {
  os << format_number(zeta_abs) << ',' << q << ',' << r.truncation << ',' << format_number(r.negativity_paper) << ','
     << format_number(r.negativity_spectral) << ',' << format_number(r.entropy_bits) << ','
     << format_number(r.d_lower) << ',' << format_number(r.d_upper) << ',' << format_number(r.tail) << '\n';
}

}  // namespace paircoh::io
