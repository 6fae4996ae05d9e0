#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "dumbbell/closedform.hpp"
#include "dumbbell/errors.hpp"
#include "dumbbell/io.hpp"
#include "dumbbell/solve.hpp"

using namespace dumbbell;
namespace fs = std::filesystem;

namespace {

StationaryState sample_state() {
  const auto g = make_grid(kPi / 2, 64);
  return hybrid(gaussian_seed(g, -4.0, Placement::Ring), -4.0);
}

fs::path tmp(const std::string& name) { return fs::temp_directory_path() / ("dumbbell_io_" + name); }

}  // namespace

TEST_CASE("format_double round-trips") {
  for (double x : {0.1, 1.0 / 3.0, -2.718281828459045, 1e-300, 6.02214076e23}) {
    CHECK(std::stod(format_double(x)) == x);
  }
}

TEST_CASE("solution file layout and round trip") {
  const auto s = sample_state();
  const auto f = to_solution_file(s);
  CHECK(f.ring_minus.size() == static_cast<std::size_t>(f.N + 1));
  CHECK(f.ring_plus.size() == static_cast<std::size_t>(f.N + 1));
  CHECK(f.segment.size() == static_cast<std::size_t>(f.M + 1));
  CHECK(f.ring_minus.front() == f.segment.front());
  CHECK(f.ring_minus.back() == f.segment.front());
  CHECK(f.ring_plus.front() == f.segment.back());
  CHECK(f.tag == "asymmetric");

  const std::string text = serialize_solution(f);
  CHECK(text.find("timestamp") == std::string::npos);
  const auto back = parse_solution(text);
  CHECK(serialize_solution(back) == text);
  const auto u = solution_values(back);
  CHECK(u.values() == s.phi.values());
  // stored state still solves the equation
  CHECK(stationary_residual(u, back.lambda).sup_norm() < 1e-9);

  const auto path = tmp("roundtrip.json");
  write_solution(path.string(), f);
  CHECK(serialize_solution(read_solution(path.string())) == text);
  fs::remove(path);
}

TEST_CASE("malformed solution files") {
  CHECK_THROWS_AS(read_solution(tmp("does_not_exist.json").string()), NoInput);
  CHECK_THROWS_AS(parse_solution("{not json"), DataError);
  CHECK_THROWS_AS(parse_solution("[1,2]"), DataError);
  auto f = to_solution_file(sample_state());
  auto bad = f;
  bad.segment.pop_back();
  CHECK_THROWS_AS(parse_solution(serialize_solution(bad)), DataError);
  bad = f;
  bad.ring_plus.front() += 1e-3;
  CHECK_THROWS_AS(parse_solution(serialize_solution(bad)), DataError);
  bad = f;
  bad.format_version = 99;
  CHECK_THROWS_AS(parse_solution(serialize_solution(bad)), DataError);
  std::string text = serialize_solution(f);
  text.replace(text.find("\"Q\": \""), 6, "\"Q\": \"abc");
  CHECK_THROWS_AS(parse_solution(text), DataError);
}

TEST_CASE("failed dump") {
  const auto s = sample_state();
  const auto path = tmp("out.json");
  write_failed_dump(path.string(), s.phi, -4.0, "MaxIterExceeded");
  const fs::path dump = path.string() + ".failed";
  CHECK(fs::exists(dump));
  std::ifstream in(dump);
  std::string all((std::istreambuf_iterator<char>(in)), {});
  CHECK(all.find("MaxIterExceeded") != std::string::npos);
  fs::remove(dump);
}

TEST_CASE("branch csv and metadata") {
  auto c = constant_state(-1.1, make_grid(2 * kPi, 32));
  auto t = continue_branch(c, -1.9, 4);
  const auto csv = branch_csv(t);
  CHECK(csv.rfind("lambda,Q,E,lplus_eig2", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
  const auto meta = branch_meta_json(t, "2026-01-01T00:00:00Z", 2);
  CHECK(meta.find("\"timestamp\"") != std::string::npos);
  CHECK(csv.find("2026") == std::string::npos);
  // constant branch Q = (L+2π)|Λ|
  for (const auto& r : t.rows) CHECK(r.Q == doctest::Approx(4 * kPi * std::abs(r.lambda)).epsilon(1e-10));
}

TEST_CASE("config parsing") {
  auto m = parse_config("# defaults\nN = 128\n tol=1e-12 # newton\n\n");
  CHECK(m.at("N") == "128");
  CHECK(m.at("tol") == "1e-12");
  CHECK_THROWS_AS(parse_config("N 128\n"), DataError);
  CHECK_THROWS_AS(parse_config("=3\n"), DataError);
  CHECK_THROWS_AS(read_config(tmp("missing.cfg").string()), NoInput);
}

TEST_CASE("report texts") {
  const auto s = spectrum_report_text(spectrum_report(2 * kPi, 4));
  CHECK(s.find("\"resonance\"") != std::string::npos);
  CHECK(s.find("\"m\": 4") != std::string::npos);
  const auto p = pitchfork_report_text(pitchfork_report(kPi));
  CHECK(p.find("\"Omega_coef<0\": true") != std::string::npos);
}
