#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "cli.hpp"

using namespace orfkit;
using namespace orfkit::cli;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("orfkit_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

const char* kOnePole = R"({"poles": [[0,0],[0.5,0],[0,0]], "measure": {"type":"lebesgue"}, "n_max": 2})";

}  // namespace

TEST_CASE("config validation") {
  const JobConfig c = parse_config(io::json::parse(kOnePole));
  CHECK(c.n_max == 2);
  CHECK(c.measure->kind == MeasureKind::Lebesgue);
  CHECK_THROWS_AS(parse_config(io::json::parse(R"({"poles": []})")), ConfigError);
  CHECK_THROWS_AS(parse_config(io::json::parse(R"({"poles": [[0,0],[0.95,0]]})")), ConfigError);
  CHECK(parse_config(io::json::parse(R"({"poles": [[0,0],[0.95,0]]})"), true).poles.size() == 2);
  CHECK_THROWS_AS(parse_config(io::json::parse(R"({"poles": [[0,0],[0,0]], "lambdas": [[1,0]]})")), ConfigError);
  CHECK_THROWS_AS(parse_config(io::json::parse(R"({"poles": [[0,0]], "n_max": 3})")), ConfigError);
  CHECK_THROWS_AS(parse_config(io::json::parse(R"({"poles": [[0,0],[0,0]], "arf_order": 2})")), ConfigError);
  CHECK_THROWS_AS(parse_config(io::json::parse(R"({"poles": [[0,0]], "tolerances": {"nonsense": 1}})")), ConfigError);
  const JobConfig lam = parse_config(io::json::parse(R"({"poles": [[0,0],[0,0]], "lambdas": [[0.5,0]]})"));
  CHECK(lam.n_max == 1);
  CHECK_FALSE(lam.measure.has_value());
}

TEST_CASE("synth writes deterministic artifacts") {
  const auto dir = scratch("synth");
  const JobConfig c = parse_config(io::json::parse(kOnePole));
  std::ostringstream log;
  REQUIRE(cmd_synth(c, (dir / "a").string(), 256, log) == kOk);
  REQUIRE(cmd_synth(c, (dir / "b").string(), 256, log) == kOk);
  CHECK(slurp(dir / "a" / "orf.json") == slurp(dir / "b" / "orf.json"));
  CHECK(slurp(dir / "a" / "orf_table.csv") == slurp(dir / "b" / "orf_table.csv"));
  CHECK_FALSE(std::filesystem::exists(dir / "a" / "orf.json.tmp"));

  // phi_1 column against (sqrt 3 / 2) z / (1 - 0.5 z)
  std::istringstream csv(slurp(dir / "a" / "orf_table.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "theta,re_phi_0,im_phi_0,re_phi_1,im_phi_1,re_phi_2,im_phi_2");
  double worst = 0.0;
  int rows = 0;
  while (std::getline(csv, line)) {
    std::vector<double> v;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) v.push_back(std::stod(cell));
    const cplx t = std::polar(1.0, v[0]);
    const cplx want = std::sqrt(3.0) / 2.0 * t / (1.0 - 0.5 * t);
    worst = std::max(worst, std::abs(cplx{v[3], v[4]} - want));
    ++rows;
  }
  CHECK(rows == 256);
  CHECK(worst < 1e-12);
}

TEST_CASE("synth from lambdas") {
  const auto dir = scratch("lam");
  const JobConfig c = parse_config(io::json::parse(R"({"poles": [[0,0],[0,0]], "lambdas": [[0.5,0]]})"));
  std::ostringstream log;
  REQUIRE(cmd_synth(c, dir.string(), 16, log) == kOk);
  const OrfSystem s = io::orf_system_from_json(io::json::parse(slurp(dir / "orf.json")));
  CHECK(std::abs(s[1].phi(0.3) - (0.3 + 0.5) / std::sqrt(0.75)) < 1e-14);
}

TEST_CASE("arf command") {
  const auto dir = scratch("arf");
  const JobConfig c = parse_config(io::json::parse(kOnePole));
  std::ostringstream log;
  REQUIRE(cmd_arf(c, 1, dir.string(), 64, log) == kOk);
  std::istringstream csv(slurp(dir / "mu_1.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "theta,weight");
  double worst = 0.0;
  while (std::getline(csv, line)) {
    const auto comma = line.find(',');
    const double th = std::stod(line.substr(0, comma));
    const double w = std::stod(line.substr(comma + 1));
    worst = std::max(worst, std::abs(w - 0.75 / std::norm(std::polar(1.0, th) - 0.5)));
  }
  CHECK(worst < 1e-8);
  const ArfSystem a = io::arf_system_from_json(io::json::parse(slurp(dir / "arf_1.json")));
  CHECK(std::abs(a.level(2).phi(0.2) - 2.0 / std::sqrt(3.0) * (0.2 - 0.5)) < 1e-12);

  SUBCASE("order 0 matches the base system") {
    REQUIRE(cmd_arf(c, 0, dir.string(), 64, log) == kOk);
    const ArfSystem z = io::arf_system_from_json(io::json::parse(slurp(dir / "arf_0.json")));
    const OrfSystem base = build_job(c).system;
    for (std::size_t n = 0; n <= 2; ++n) CHECK(coeff_distance(z.level(n).phi, base[n].phi) < 1e-12);
  }
}

TEST_CASE("verify command") {
  const auto dir = scratch("verify");
  const JobConfig c = parse_config(io::json::parse(kOnePole));
  std::ostringstream log;
  CHECK(cmd_verify(c, {}, dir.string(), log) == kOk);
  const auto report = io::json::parse(slurp(dir / "verify.json"));
  CHECK(report.size() == check_names().size());
  for (const auto& [name, entry] : report.items()) CHECK_MESSAGE(entry["pass"].get<bool>(), name);

  JobConfig strict = c;
  strict.tolerances["determinant"] = 0.0;
  strict.tolerances["orthonormality"] = 0.0;
  CHECK(cmd_verify(strict, {"determinant", "orthonormality"}, dir.string(), log) == kVerifyFailed);
  CHECK_THROWS_AS(run_checks(c, build_job(c), {"bogus"}), ConfigError);
}

TEST_CASE("random configurations pass every check") {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    std::mt19937_64 rng(seed);
    auto pick = [&](double r) {
      const double rad = r * std::sqrt(static_cast<double>(rng() >> 11) * 0x1.0p-53);
      return io::json::array({rad * std::cos(static_cast<double>(rng() % 6283) / 1000.0),
                              rad * std::sin(static_cast<double>(rng() % 6283) / 1000.0)});
    };
    io::json j;
    j["seed"] = seed;
    for (int i = 0; i <= 5; ++i) j["poles"].push_back(pick(0.7));
    for (int i = 0; i < 5; ++i) j["lambdas"].push_back(pick(0.6));
    const JobConfig c = parse_config(j);
    const auto checks = run_checks(c, build_job(c), {});
    for (const auto& r : checks) CHECK_MESSAGE(r.pass, r.name << " " << r.residual << " " << r.detail);
  }
}

TEST_CASE("example command") {
  std::ostringstream log;
  const auto dir = scratch("example");
  CHECK(cmd_example_lebesgue(0.5, 2, dir.string(), log) == kOk);
  CHECK(std::filesystem::exists(dir / "mu_1.csv"));
  CHECK(cmd_example_lebesgue({0.3, -0.4}, 4, dir.string(), log) == kOk);
  CHECK_THROWS_AS(cmd_example_lebesgue(0.5, 1, dir.string(), log), ConfigError);
}
