#pragma once

// Command-line front end: job configs, artifact writers and the verification suite.

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "orfkit/io.hpp"
#include "orfkit/transforms.hpp"

namespace orfkit::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kConfigError = 2, kNumericalFailure = 3 };

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct JobConfig {
  std::vector<cplx> poles;
  std::optional<std::vector<cplx>> lambdas;
  std::optional<MeasureSpec> measure;
  std::size_t n_max = 0;
  std::optional<std::size_t> arf_order;
  std::map<std::string, double> tolerances;
  std::uint64_t seed = 0;
  bool allow_large_poles = false;
};

JobConfig parse_config(const io::json& j, bool allow_large_poles = false);
JobConfig load_config(const std::string& path, bool allow_large_poles = false);

/// Quadrature size: ORFKIT_GRID when set, otherwise the default for n_max.
std::size_t quadrature_size(std::size_t n_max);

/// The ladder a config describes, with the measure and C-function it is orthogonal for.
struct Job {
  OrfSystem system;
  CircleMeasure measure;
  CaratheodoryFn caratheodory;
  std::size_t grid = 0;
  std::optional<double> cross_check;  // set when both a measure and lambdas were given
};

Job build_job(const JobConfig& config);

struct CheckResult {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool lower_bound = false;  // pass means residual > tolerance
  bool pass = false;
  std::string detail;
};

/// Names accepted by `verify --check`.
const std::vector<std::string>& check_names();

std::vector<CheckResult> run_checks(const JobConfig& config, const Job& job, const std::vector<std::string>& which);

io::json checks_json(const std::vector<CheckResult>& checks);

/// theta, Re/Im phi_n for every level, on `points` uniform angles.
std::string boundary_table_csv(const OrfSystem& system, std::size_t points);

int cmd_synth(const JobConfig& config, const std::string& out_dir, std::size_t table_points, std::ostream& log);
int cmd_arf(const JobConfig& config, std::size_t order, const std::string& out_dir, std::size_t table_points,
            std::ostream& log);
int cmd_verify(const JobConfig& config, const std::vector<std::string>& which, const std::string& out_dir,
               std::ostream& log);
int cmd_example_lebesgue(cplx beta1, std::size_t n, const std::string& out_dir, std::ostream& log);

int run(int argc, char** argv);

}  // namespace orfkit::cli
