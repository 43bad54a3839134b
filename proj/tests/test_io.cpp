#include <doctest.h>

#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "paircoh/io.hpp"

using namespace paircoh;

TEST_CASE("format_number uses 17 significant digits") {
  CHECK(io::format_number(0.0) == "0");
  CHECK(io::format_number(1.0) == "1");
  CHECK(io::format_number(0.1) == "0.10000000000000001");
  CHECK(io::format_number(-2.5e-300) == "-2.5e-300");
  CHECK(io::format_number(1.0 / 3.0) == "0.33333333333333331");
  CHECK(io::format_number(std::nan("")) == "null");
}

TEST_CASE("format_number round-trips every double") {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<std::uint64_t> bits;
  for (int i = 0; i < 2000; ++i) {
    double v;
    const std::uint64_t b = bits(rng);
    std::memcpy(&v, &b, sizeof v);
    if (!std::isfinite(v)) continue;
    CHECK(std::strtod(io::format_number(v).c_str(), nullptr) == v);
  }
}

TEST_CASE("MeasureReport JSON has fixed keys in fixed order") {
  const auto r = measure_report(build_pcs({{1.0, 0.0}, 0}, 12));
  const std::string text = io::dump_json(io::to_json(r));
  const std::vector<std::string> keys{"negativity_paper", "negativity_spectral", "entropy_bits", "d_lower",
                                      "d_upper",          "d_lower_clamped",     "tail",         "truncation"};
  std::size_t pos = 0;
  for (const auto& k : keys) {
    const std::size_t at = text.find("\"" + k + "\"", pos);
    CAPTURE(k);
    REQUIRE(at != std::string::npos);
    pos = at;
  }
  const auto parsed = nlohmann::json::parse(text);
  CHECK(parsed.size() == keys.size());
  CHECK(parsed["d_upper"].get<double>() == r.d_upper);
  CHECK(parsed["truncation"].get<int>() == 12);
  CHECK(io::dump_json(io::to_json(r)) == text);
}

TEST_CASE("VerificationReport JSON") {
  VerificationReport rep;
  rep.checks.push_back({"pt_spectrum", 1e-15, 1e-9, true});
  rep.checks.push_back({"entropy", 2e-3, 1e-9, false});
  const auto parsed = nlohmann::json::parse(io::dump_json(io::to_json(rep)));
  REQUIRE(parsed.is_array());
  CHECK(parsed[0]["check_name"] == "pt_spectrum");
  CHECK(parsed[1]["pass"] == false);
  CHECK(parsed[1]["max_abs_dev"].get<double>() == 2e-3);
}

TEST_CASE("state JSON round trip") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = trial % 2 == 0
                       ? build_pcs({std::polar(0.5 + trial * 0.2, 0.3 * trial), trial % 3}, 3 + trial)
                       : SchmidtState::from_coefficients(trial % 4, testing::random_subnormalized(rng));
    const auto text = io::dump_json(io::to_json(s));
    const auto back = io::state_from_json(nlohmann::json::parse(text));
    CHECK(back.q() == s.q());
    CHECK(back.tail() == s.tail());
    CHECK(back.coeffs() == s.coeffs());
    CHECK(back.source().has_value() == s.source().has_value());
    if (s.source()) CHECK(back.source()->zeta == s.source()->zeta);
  }
  CHECK_THROWS_AS(io::state_from_json(nlohmann::json::parse(R"({"q": 0})")), std::invalid_argument);
  CHECK_THROWS_AS(io::state_from_json(nlohmann::json::parse(R"({"q": 0, "coeffs": [[1, 0]], "tail": 0.5})")),
                  std::invalid_argument);
}

TEST_CASE("grid CSV round-trips exactly") {
  const auto s = build_pcs({{1.0, 0.3}, 1}, 8);
  const Grid2D g = grid_eval(s, -3.0, 3.0, 7);
  std::stringstream ss;
  io::write_grid_csv(ss, g);
  std::string header;
  std::getline(ss, header);
  CHECK(header == "x_a,x_b,re_psi,im_psi,abs2");
  ss.seekg(0);
  const auto rows = io::read_grid_csv(ss);
  REQUIRE(rows.size() == 49);
  for (Eigen::Index i = 0; i < 7; ++i) {
    for (Eigen::Index j = 0; j < 7; ++j) {
      const auto& row = rows[static_cast<std::size_t>(i * 7 + j)];
      CHECK(row.x_a == g.coordinate(i));
      CHECK(row.x_b == g.coordinate(j));
      CHECK(row.re_psi == g.values(i, j).real());
      CHECK(row.im_psi == g.values(i, j).imag());
      CHECK(row.abs2 == std::norm(g.values(i, j)));
    }
  }
  std::istringstream bad("a,b\n");
  CHECK_THROWS_AS(io::read_grid_csv(bad), std::invalid_argument);
}
