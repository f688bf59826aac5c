#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

namespace orfkit::cli {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Uniform in the disk of the given radius; same seed, same points on every platform.
std::vector<cplx> disk_points(std::uint64_t seed, std::size_t count, double radius) {
  std::mt19937_64 rng(seed);
  std::vector<cplx> z;
  z.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double r = radius * std::sqrt(unit_uniform(rng));
    z.push_back(std::polar(r, kTwoPi * unit_uniform(rng)));
  }
  return z;
}

std::vector<cplx> complex_list(const io::json& j, const char* what) {
  if (!j.is_array()) throw ConfigError(std::string(what) + " must be a list of [re, im] pairs");
  std::vector<cplx> out;
  for (const auto& z : j) {
    try {
      out.push_back(io::complex_from_json(z));
    } catch (const OrfError& e) {
      throw ConfigError(std::string(what) + ": " + e.what());
    }
  }
  return out;
}

void ensure_dir(const std::string& dir) {
  if (!dir.empty()) std::filesystem::create_directories(dir);
}

std::string join(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir.empty() ? "." : dir) / name).string();
}

double tolerance(const JobConfig& c, const std::string& name, double fallback) {
  const auto it = c.tolerances.find(name);
  return it == c.tolerances.end() ? fallback : it->second;
}

std::size_t arf_top(const Job& job) { return std::min<std::size_t>(3, job.system.n_max()); }

}  // namespace

JobConfig parse_config(const io::json& j, bool allow_large_poles) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  JobConfig c;
  c.allow_large_poles = allow_large_poles || j.value("allow_large_poles", false);
  if (!j.contains("poles")) throw ConfigError("config needs \"poles\"");
  c.poles = complex_list(j["poles"], "poles");
  if (c.poles.empty()) throw ConfigError("poles must be nonempty");
  for (std::size_t k = 0; k < c.poles.size(); ++k) {
    const double m = std::abs(c.poles[k]);
    if (!(m < 1.0)) throw ConfigError("beta_" + std::to_string(k) + " must lie in the open unit disk");
    if (!c.allow_large_poles && !(m < kDefaultPoleCap))
      throw ConfigError("|beta_" + std::to_string(k) + "| = " + fmt17(m) +
                        " exceeds the 0.9 cap (pass --allow-large-poles to override)");
  }
  if (j.contains("lambdas") && !j["lambdas"].is_null()) {
    c.lambdas = complex_list(j["lambdas"], "lambdas");
    for (std::size_t n = 0; n < c.lambdas->size(); ++n)
      if (!(std::abs((*c.lambdas)[n]) < 1.0))
        throw ConfigError("lambda_" + std::to_string(n + 1) + " must lie in the open unit disk (recurrence parameter)");
  }
  if (j.contains("measure") && !j["measure"].is_null()) {
    try {
      c.measure = io::measure_spec_from_json(j["measure"]);
      (void)builtin_measure(*c.measure);
    } catch (const OrfError& e) {
      throw ConfigError(std::string("measure: ") + e.what());
    }
  }
  if (!c.measure && !c.lambdas) c.measure = MeasureSpec{};
  if (j.contains("n_max")) {
    if (!j["n_max"].is_number_integer() || j["n_max"].get<long long>() < 0)
      throw ConfigError("n_max must be a nonnegative integer");
    c.n_max = j["n_max"].get<std::size_t>();
  } else if (c.lambdas) {
    c.n_max = c.lambdas->size();
  } else {
    c.n_max = c.poles.size() - 1;
  }
  if (c.n_max + 1 > c.poles.size())
    throw ConfigError("n_max = " + std::to_string(c.n_max) + " needs " + std::to_string(c.n_max + 1) + " poles");
  if (c.lambdas && c.lambdas->size() < c.n_max)
    throw ConfigError("need lambda_1..lambda_" + std::to_string(c.n_max));
  if (j.contains("arf_order") && !j["arf_order"].is_null()) {
    if (!j["arf_order"].is_number_integer() || j["arf_order"].get<long long>() < 0)
      throw ConfigError("arf_order must be a nonnegative integer");
    c.arf_order = j["arf_order"].get<std::size_t>();
    if (*c.arf_order > c.n_max) throw ConfigError("arf_order exceeds n_max");
  }
  if (j.contains("tolerances") && !j["tolerances"].is_null()) {
    if (!j["tolerances"].is_object()) throw ConfigError("tolerances must be an object of name -> value");
    for (const auto& [k, v] : j["tolerances"].items()) {
      if (!v.is_number() || !(v.get<double>() >= 0.0)) throw ConfigError("tolerance " + k + " must be a number >= 0");
      if (std::find(check_names().begin(), check_names().end(), k) == check_names().end())
        throw ConfigError("unknown tolerance name " + k);
      c.tolerances[k] = v.get<double>();
    }
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer()) throw ConfigError("seed must be an integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  return c;
}

JobConfig load_config(const std::string& path, bool allow_large_poles) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path);
  io::json j;
  try {
    j = io::json::parse(in);
  } catch (const io::json::exception& e) {
    throw ConfigError("config " + path + " is not valid JSON: " + e.what());
  }
  return parse_config(j, allow_large_poles);
}

std::size_t quadrature_size(std::size_t n_max) {
  const char* env = std::getenv("ORFKIT_GRID");
  if (env == nullptr || *env == '\0') return default_grid_size(n_max);
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || v < 256 || (v & (v - 1)) != 0)
    throw ConfigError(std::string("ORFKIT_GRID must be a power of two >= 256, got ") + env);
  return static_cast<std::size_t>(v);
}

Job build_job(const JobConfig& config) {
  const std::size_t grid = quadrature_size(config.n_max);
  const PoleSequence poles(std::vector<cplx>(config.poles.begin(), config.poles.begin() + static_cast<long>(config.n_max + 1)));
  std::optional<OrfSystem> from_lambdas;
  if (config.lambdas) {
    std::vector<cplx> lam(config.lambdas->begin(), config.lambdas->begin() + static_cast<long>(config.n_max));
    from_lambdas = synthesize(lam, poles);
  }
  if (config.measure) {
    CircleMeasure mu = builtin_measure(*config.measure);
    OrfSystem sys = gram_schmidt_orf(mu, poles, config.n_max, grid);
    sys.measure = mu;
    CaratheodoryFn f = caratheodory_from_measure(mu, poles[0], grid);
    Job job{std::move(sys), mu, std::move(f), grid, std::nullopt};
    if (from_lambdas) {
      // phases differ between the two constructions; compare |lambda_n| and |phi_n| on the circle
      double worst = 0.0;
      for (std::size_t n = 1; n <= config.n_max; ++n) {
        worst = std::max(worst, std::abs(std::abs(*job.system[n].lambda) - std::abs(*(*from_lambdas)[n].lambda)));
        const RatFun a = job.system[n].phi;
        const RatFun b = (*from_lambdas)[n].phi;
        worst = std::max(worst, boundary_distance([&](cplx t) { return cplx{std::abs(a(t)), 0.0}; },
                                                  [&](cplx t) { return cplx{std::abs(b(t)), 0.0}; }, 256));
      }
      job.cross_check = worst;
    }
    return job;
  }
  OrfSystem sys = std::move(*from_lambdas);
  const char* env = std::getenv("ORFKIT_GRID");
  const std::size_t bs_grid = env != nullptr && *env != '\0' ? grid : std::max(grid, bernstein_szego_grid(sys));
  CircleMeasure mu = bernstein_szego_measure(sys, bs_grid);
  CaratheodoryFn f = bernstein_szego_caratheodory(sys);
  return Job{std::move(sys), std::move(mu), std::move(f), bs_grid, std::nullopt};
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = {
      "orthonormality",      "recurrence_roundtrip", "determinant",        "para_zeros_modulus",
      "para_zeros_separation", "second_kind",        "second_kind_functional", "interpolation",
      "interpolation_g",     "arf_dual",             "arf_positivity",     "arf_anchor",
      "arf_orthonormality",  "relations",            "doubled_determinant",             "weight_roundtrip",
      "json_roundtrip",      "source_cross_check"};
  return names;
}

namespace {

struct Check {
  double residual;
  std::string detail;
};

Check check_orthonormality(const Job& job) {
  std::vector<RatFun> fs;
  for (const auto& l : job.system.levels) fs.push_back(l.phi);
  return {gram_deviation(fs, job.measure, job.grid), "max |<phi_i, phi_j> - delta_ij|"};
}

Check check_recurrence(const Job& job) {
  const auto& s = job.system;
  double worst = 0.0;
  OrfLevel cur = s[0];
  for (std::size_t n = 1; n <= s.n_max(); ++n) {
    const RecurrenceParams p = extract_parameters(s, n);
    worst = std::max(worst, std::abs(p.lambda - *s[n].lambda));
    cur = recurrence_step(cur, p.lambda, p.rho, s.poles, n);
    const double sc = 1.0 + poly::max_abs(s[n].phi.numer());
    worst = std::max({worst, coeff_distance(cur.phi, s[n].phi) / sc, coeff_distance(cur.psi, s[n].psi) / sc});
  }
  return {worst, "lambda refit and level rebuild from (lambda_n, rho_n)"};
}

Check check_determinant(const Job& job) {
  double worst = 0.0;
  for (std::size_t n = 0; n <= job.system.n_max(); ++n)
    worst = std::max(worst, determinant_residual(job.system, n).residual_two);
  return {worst, "max |phi_n^* psi_n + phi_n psi_n^* - 2 P_n B_n| on 512 boundary points"};
}

const cplx kTaus[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};

Check check_para_modulus(const Job& job) {
  double worst = 0.0;
  for (std::size_t n = 1; n <= job.system.n_max(); ++n)
    for (const cplx tau : kTaus)
      for (const cplx z : para_zeros(para_pair(job.system, n, tau))) worst = std::max(worst, std::abs(std::abs(z) - 1.0));
  return {worst, "max ||z| - 1| over zeros of phi_n + tau phi_n^*"};
}

Check check_para_separation(const Job& job) {
  double sep = std::numeric_limits<double>::infinity();
  for (std::size_t n = 2; n <= job.system.n_max(); ++n)
    for (const cplx tau : kTaus) {
      const auto z = para_zeros(para_pair(job.system, n, tau));
      for (std::size_t i = 0; i < z.size(); ++i)
        for (std::size_t k = 0; k < i; ++k) sep = std::min(sep, std::abs(z[i] - z[k]));
    }
  if (!std::isfinite(sep)) sep = 1.0;
  return {sep, "min pairwise distance of para-orthogonal zeros"};
}

Check check_second_kind(const Job& job) {
  // integral definition against psi_n carried up the recurrence from psi_0
  const auto& s = job.system;
  double worst = 0.0;
  OrfLevel cur = s[0];
  for (std::size_t n = 0; n <= std::min<std::size_t>(8, s.n_max()); ++n) {
    if (n > 0) cur = recurrence_step(cur, *s[n].lambda, s[n].rho, s.poles, n);
    const RatFun psi = second_kind_integral(job.measure, s, n, job.grid);
    const RatFun ref = cur.psi;
    worst = std::max(worst, boundary_distance([&](cplx t) { return psi(t); }, [&](cplx t) { return ref(t); }));
  }
  return {worst, "sup |psi_n(integral) - psi_n(recurrence)| on the circle"};
}

Check check_second_kind_functional(const Job& job) {
  const auto& poles = job.system.poles;
  std::vector<cplx> pts;
  for (const cplx z : disk_points(0x5eedULL, 64, 0.7)) {
    bool clear = std::abs(z) > 0.05;
    for (const cplx b : poles.values()) clear = clear && std::abs(z - b) > 0.15;
    if (clear) pts.push_back(z);
    if (pts.size() == 6) break;
  }
  double worst = 0.0;
  for (std::size_t n = 0; n <= job.system.n_max(); ++n) {
    const std::size_t m = n == 0 ? 0 : n - 1;
    const RatFun fb = RatFun::blaschke(poles, m);
    const RatFun one = RatFun::constant(poles, 1.0).raised(m);
    const RatFun mix = combine(0.5, fb, cplx{0.25, -0.5}, one);
    worst = std::max(worst, second_kind_functional_residual(job.measure, job.system, n, fb, mix, pts, job.grid));
  }
  return {worst, "second-kind functional identities at 6 interior points"};
}

struct InterpSummary {
  double residual = 0.0;
  double min_g = std::numeric_limits<double>::infinity();
};

InterpSummary interpolation_summary(const JobConfig& cfg, const Job& job) {
  const auto pts = disk_points(cfg.seed, 100, 0.95);
  InterpSummary s;
  for (std::size_t n = 0; n <= job.system.n_max(); ++n) {
    const InterpolationReport r = interpolation_residuals(job.system, job.caratheodory, n, pts);
    s.residual = std::max({s.residual, r.max_upper() / r.scale, r.max_lower() / r.scale, r.para_residual / r.scale});
    s.min_g = std::min({s.min_g, r.min_g / r.scale, r.para_min_g / r.scale});
  }
  return s;
}

Check check_arf_dual(const Job& job) {
  double worst = 0.0;
  const std::size_t top = std::min<std::size_t>(8, job.system.n_max());
  for (std::size_t k = 0; k <= arf_top(job); ++k) {
    const ArfSystem rec = arf_recurrence(job.system, k, top);
    for (std::size_t n = k; n <= top; ++n) {
      const ArfPair ex = arf_explicit(job.system, k, n);
      const auto& l = rec.level(n);
      worst = std::max(worst, boundary_distance([&](cplx t) { return ex.phi(t); }, [&](cplx t) { return l.phi(t); }));
      worst = std::max(worst, boundary_distance([&](cplx t) { return ex.psi(t); }, [&](cplx t) { return l.psi(t); }));
    }
  }
  return {worst, "sup |explicit - recursive| ARFs, k <= 3"};
}

Check check_arf_positivity(const JobConfig& cfg, const Job& job, bool anchor) {
  const auto pts = disk_points(cfg.seed + 1, 200, 0.99);
  double min_re = std::numeric_limits<double>::infinity();
  double anchor_err = 0.0;
  for (std::size_t k = 0; k <= arf_top(job); ++k) {
    const CaratheodoryFn fk = arf_caratheodory(job.system, job.caratheodory, k);
    for (const cplx z : pts) min_re = std::min(min_re, fk(z).real());
    anchor_err = std::max(anchor_err, std::abs(fk(job.system.poles[k]) - 1.0));
  }
  if (anchor) return {anchor_err, "max |F^(k)(beta_k) - 1|"};
  return {min_re, "min Re F^(k) over 200 disk points"};
}

Check check_arf_orthonormality(const Job& job) {
  double worst = 0.0;
  for (std::size_t k = 1; k <= arf_top(job); ++k) {
    const ArfSystem a = arf_recurrence(job.system, k, job.system.n_max(), job.caratheodory, job.grid);
    std::vector<RatFun> fs;
    for (const auto& l : a.system.levels) fs.push_back(l.phi);
    worst = std::max(worst, gram_deviation(fs, *a.measure, job.grid));
  }
  return {worst, "ARF Gram matrix against the recovered measure, 1 <= k <= 3"};
}

Check check_relations(const Job& job) {
  double worst = 0.0;
  std::size_t count = 0;
  for (std::size_t k = 1; k <= arf_top(job); ++k)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t n = k + 1; n <= job.system.n_max(); ++n) {
        worst = std::max(worst, relation_residuals(job.system, j, k, n).max());
        ++count;
      }
  return {worst, std::to_string(count) + " (j, k, n) triples, phi and psi forms"};
}

Check check_doubled_determinant(const Job& job) {
  double worst = 0.0;
  for (std::size_t k = 1; k <= arf_top(job); ++k) {
    const SelfReciprocalQuad q = arf_quad(job.system, k);
    std::vector<cplx> hat;
    for (std::size_t j = k + 1; j <= job.system.n_max(); ++j) hat.push_back(job.system.poles[j]);
    const QuadReport rep = check_quad(q, job.caratheodory, hat);
    for (std::size_t n = k + 1; n <= job.system.n_max(); ++n) {
      const double c = std::sqrt(job.system[k].d * job.system[n].d);
      const TransformResult t = apply_transform(job.system, q, &rep, c, n - k);
      worst = std::max(worst, doubled_determinant_residual(t).residual_two);
    }
  }
  return {worst, "max |G^* J + G J^* - 2 P~ B~| for ARF transforms"};
}

Check check_weight(const Job& job) {
  double worst = 0.0;
  for (int i = 0; i < 64; ++i) {
    const double th = kTwoPi * (i + 0.25) / 64.0;
    worst = std::max(worst, std::abs(weight_from_caratheodory(job.caratheodory, job.system.poles[0], th) - job.measure.weight(th)));
  }
  return {worst, "max |w - w(recovered from F)| at 64 angles"};
}

Check check_json(const Job& job) {
  const std::string a = io::to_json(job.system).dump();
  const OrfSystem back = io::orf_system_from_json(io::json::parse(a));
  const std::string b = io::to_json(back).dump();
  double diff = a == b ? 0.0 : 1.0;
  for (std::size_t n = 0; n <= job.system.n_max() && diff == 0.0; ++n)
    if (back[n].phi.numer() != job.system[n].phi.numer() || back[n].psi.numer() != job.system[n].psi.numer()) diff = 1.0;
  return {diff, "0 when the system survives a JSON round trip bit for bit"};
}

}  // namespace

std::vector<CheckResult> run_checks(const JobConfig& config, const Job& job, const std::vector<std::string>& which) {
  std::vector<std::string> names = which.empty() ? check_names() : which;
  for (const auto& n : names)
    if (std::find(check_names().begin(), check_names().end(), n) == check_names().end())
      throw ConfigError("unknown check " + n);
  std::optional<InterpSummary> interp;
  std::vector<CheckResult> out;
  for (const auto& name : names) {
    CheckResult r;
    r.name = name;
    try {
      Check c{0.0, ""};
      if (name == "orthonormality") {
        c = check_orthonormality(job);
        r.tolerance = 1e-9;
      } else if (name == "recurrence_roundtrip") {
        c = check_recurrence(job);
        r.tolerance = 1e-10;
      } else if (name == "determinant") {
        c = check_determinant(job);
        r.tolerance = 1e-10;
      } else if (name == "para_zeros_modulus") {
        c = check_para_modulus(job);
        r.tolerance = 1e-9;
      } else if (name == "para_zeros_separation") {
        c = check_para_separation(job);
        r.tolerance = 1e-8;
        r.lower_bound = true;
      } else if (name == "second_kind") {
        c = check_second_kind(job);
        r.tolerance = 1e-8;
      } else if (name == "second_kind_functional") {
        c = check_second_kind_functional(job);
        r.tolerance = 1e-8;
      } else if (name == "interpolation" || name == "interpolation_g") {
        if (!interp) interp = interpolation_summary(config, job);
        if (name == "interpolation") {
          c = {interp->residual, "interpolation residuals at beta_j over scale"};
          r.tolerance = 1e-8;
        } else {
          c = {interp->min_g, "min |g_n| over scale at 100 disk points"};
          r.tolerance = 1e-8;
          r.lower_bound = true;
        }
      } else if (name == "arf_dual") {
        c = check_arf_dual(job);
        r.tolerance = 1e-9;
      } else if (name == "arf_positivity") {
        c = check_arf_positivity(config, job, false);
        r.tolerance = 0.0;
        r.lower_bound = true;
      } else if (name == "arf_anchor") {
        c = check_arf_positivity(config, job, true);
        r.tolerance = 1e-9;
      } else if (name == "arf_orthonormality") {
        c = check_arf_orthonormality(job);
        r.tolerance = 1e-8;
      } else if (name == "relations") {
        c = check_relations(job);
        r.tolerance = 1e-10;
      } else if (name == "doubled_determinant") {
        c = check_doubled_determinant(job);
        r.tolerance = 1e-10;
      } else if (name == "weight_roundtrip") {
        c = check_weight(job);
        r.tolerance = 1e-6;
      } else if (name == "json_roundtrip") {
        c = check_json(job);
        r.tolerance = 0.0;
      } else if (name == "source_cross_check") {
        c = {job.cross_check.value_or(0.0),
             job.cross_check ? "|lambda_n| and |phi_n| agree between measure and lambdas" : "single source"};
        r.tolerance = 1e-8;
      }
      r.tolerance = tolerance(config, name, r.tolerance);
      r.residual = c.residual;
      r.detail = c.detail;
      r.pass = r.lower_bound ? r.residual > r.tolerance : r.residual <= r.tolerance;
    } catch (const OrfError& e) {
      r.residual = std::numeric_limits<double>::quiet_NaN();
      r.pass = false;
      r.detail = e.what();
    }
    out.push_back(std::move(r));
  }
  return out;
}

io::json checks_json(const std::vector<CheckResult>& checks) {
  io::json j = io::json::object();
  for (const auto& c : checks) {
    io::json e;
    e["residual"] = std::isfinite(c.residual) ? io::json(c.residual) : io::json(nullptr);
    e["tolerance"] = c.tolerance;
    e["bound"] = c.lower_bound ? "lower" : "upper";
    e["pass"] = c.pass;
    e["detail"] = c.detail;
    j[c.name] = std::move(e);
  }
  return j;
}

std::string boundary_table_csv(const OrfSystem& system, std::size_t points) {
  std::ostringstream os;
  os << "theta";
  for (std::size_t n = 0; n <= system.n_max(); ++n) os << ",re_phi_" << n << ",im_phi_" << n;
  os << '\n';
  for (std::size_t j = 0; j < points; ++j) {
    const double th = kTwoPi * static_cast<double>(j) / static_cast<double>(points);
    const cplx t = std::polar(1.0, th);
    os << fmt17(th);
    for (const auto& l : system.levels) {
      const cplx v = l.phi(t);
      os << ',' << fmt17(v.real()) << ',' << fmt17(v.imag());
    }
    os << '\n';
  }
  return os.str();
}

int cmd_synth(const JobConfig& config, const std::string& out_dir, std::size_t table_points, std::ostream& log) {
  const Job job = build_job(config);
  if (job.cross_check && *job.cross_check > tolerance(config, "source_cross_check", 1e-8)) {
    log << "measure and lambdas describe different ladders (deviation " << fmt17(*job.cross_check) << ")\n";
    return kNumericalFailure;
  }
  ensure_dir(out_dir);
  io::write_atomic(join(out_dir, "orf.json"), io::to_json(job.system).dump(2) + "\n");
  io::write_atomic(join(out_dir, "orf_table.csv"), boundary_table_csv(job.system, table_points));
  log << "wrote levels 0.." << job.system.n_max() << " to " << join(out_dir, "orf.json") << "\n";
  return kOk;
}

int cmd_arf(const JobConfig& config, std::size_t order, const std::string& out_dir, std::size_t table_points,
            std::ostream& log) {
  if (order > config.n_max) throw ConfigError("order exceeds n_max");
  const Job job = build_job(config);
  const ArfSystem arf = arf_recurrence(job.system, order, job.system.n_max(), job.caratheodory, job.grid);
  double worst = 0.0;
  for (std::size_t n = order; n <= job.system.n_max(); ++n) {
    const ArfPair ex = arf_explicit(job.system, order, n);
    const auto& l = arf.level(n);
    worst = std::max(worst, boundary_distance([&](cplx t) { return ex.phi(t); }, [&](cplx t) { return l.phi(t); }));
    worst = std::max(worst, boundary_distance([&](cplx t) { return ex.psi(t); }, [&](cplx t) { return l.psi(t); }));
  }
  ensure_dir(out_dir);
  const std::string k = std::to_string(order);
  io::write_atomic(join(out_dir, "arf_" + k + ".json"), io::to_json(arf).dump(2) + "\n");
  std::ostringstream csv;
  csv << "theta,weight\n";
  for (std::size_t j = 0; j < table_points; ++j) {
    const double th = kTwoPi * static_cast<double>(j) / static_cast<double>(table_points);
    csv << fmt17(th) << ',' << fmt17(weight_from_caratheodory(*arf.caratheodory, job.system.poles[order], th)) << '\n';
  }
  io::write_atomic(join(out_dir, "mu_" + k + ".csv"), csv.str());
  log << "explicit vs recursive ARF discrepancy " << fmt17(worst) << "\n";
  if (!(worst < 1e-8)) {
    log << "ARF constructions disagree: " << fmt17(worst) << " >= 1e-8\n";
    return kNumericalFailure;
  }
  return kOk;
}

int cmd_verify(const JobConfig& config, const std::vector<std::string>& which, const std::string& out_dir,
               std::ostream& log) {
  const Job job = build_job(config);
  const auto checks = run_checks(config, job, which);
  ensure_dir(out_dir);
  io::write_atomic(join(out_dir, "verify.json"), checks_json(checks).dump(2) + "\n");
  bool ok = true;
  for (const auto& c : checks) {
    log << (c.pass ? "pass " : "FAIL ") << c.name << " residual=" << fmt17(c.residual) << " tol=" << fmt17(c.tolerance);
    if (!c.pass) log << " (" << c.detail << ")";
    log << "\n";
    ok = ok && c.pass;
  }
  return ok ? kOk : kVerifyFailed;
}

int cmd_example_lebesgue(cplx beta1, std::size_t n, const std::string& out_dir, std::ostream& log) {
  if (n < 2) throw ConfigError("the example needs n >= 2");
  if (!(std::abs(beta1) < kDefaultPoleCap)) throw ConfigError("|beta1| must stay below 0.9");
  JobConfig cfg;
  cfg.poles.assign(n + 1, cplx{});
  cfg.poles[1] = beta1;
  cfg.n_max = n;
  cfg.measure = MeasureSpec{};
  const Job job = build_job(cfg);
  const auto& s = job.system;
  const auto& poles = s.poles;
  const double w1 = 1.0 - std::norm(beta1);

  io::json rep;
  rep["beta1"] = io::to_json(beta1);
  rep["n"] = n;
  // phi_n = sqrt(1 - |beta_n|^2) z / (z - beta_n) B_n
  double phi_err = 0.0;
  for (std::size_t m = 1; m <= n; ++m) {
    const cplx bm = poles[m];
    const auto closed = [&](cplx z) {
      return std::sqrt(1.0 - std::norm(bm)) * z / (z - bm) * blaschke_product(poles, static_cast<int>(m), z);
    };
    phi_err = std::max(phi_err, boundary_distance(closed, [&](cplx z) { return s[m].phi(z); }));
  }
  double lam = 0.0;
  for (std::size_t m = 1; m <= n; ++m) lam = std::max(lam, std::abs(*s[m].lambda));
  double f_err = 0.0;
  for (const cplx z : disk_points(1, 50, 0.95)) f_err = std::max(f_err, std::abs(job.caratheodory(z) - 1.0));
  // order-1 ARF: sqrt(w_n(beta_n)/w_1(beta_1)) (z - beta_1)/(z - beta_n) B_{n\1}
  const ArfSystem arf = arf_recurrence(s, 1, n, job.caratheodory, job.grid);
  double arf_err = 0.0;
  for (std::size_t m = 2; m <= n; ++m) {
    const cplx bm = poles[m];
    const auto closed = [&](cplx z) {
      cplx b = 1.0;
      for (std::size_t i = 2; i <= m; ++i) b *= blaschke_factor(poles, i, z);
      return std::sqrt((1.0 - std::norm(bm)) / w1) * (z - beta1) / (z - bm) * b;
    };
    arf_err = std::max(arf_err, boundary_distance(closed, [&](cplx z) { return arf.level(m).phi(z); }));
  }
  double f1_err = 0.0;
  for (const cplx z : disk_points(2, 50, 0.95)) f1_err = std::max(f1_err, std::abs((*arf.caratheodory)(z) - 1.0));
  double mu_err = 0.0;
  std::ostringstream csv;
  csv << "theta,weight,closed_form\n";
  for (std::size_t j = 0; j < 256; ++j) {
    const double th = kTwoPi * static_cast<double>(j) / 256.0;
    const double w = weight_from_caratheodory(*arf.caratheodory, beta1, th);
    const double closed = w1 / std::norm(std::polar(1.0, th) - beta1);
    mu_err = std::max(mu_err, std::abs(w - closed));
    csv << fmt17(th) << ',' << fmt17(w) << ',' << fmt17(closed) << '\n';
  }
  std::vector<RatFun> fs;
  for (const auto& l : arf.system.levels) fs.push_back(l.phi);
  const double gram1 = gram_deviation(fs, *arf.measure, job.grid);

  const struct {
    const char* name;
    double value, tol;
  } rows[] = {{"phi_closed_form", phi_err, 1e-10}, {"lambda_zero", lam, 1e-10},      {"F_is_one", f_err, 1e-10},
              {"arf1_closed_form", arf_err, 1e-10}, {"F1_is_one", f1_err, 1e-9},     {"mu1_closed_form", mu_err, 1e-8},
              {"arf1_orthonormality", gram1, 1e-8}};
  bool ok = true;
  for (const auto& r : rows) {
    rep["checks"][r.name] = {{"residual", r.value}, {"tolerance", r.tol}, {"pass", r.value < r.tol}};
    log << (r.value < r.tol ? "pass " : "FAIL ") << r.name << " " << fmt17(r.value) << "\n";
    ok = ok && r.value < r.tol;
  }
  if (!out_dir.empty()) {
    ensure_dir(out_dir);
    io::write_atomic(join(out_dir, "example.json"), rep.dump(2) + "\n");
    io::write_atomic(join(out_dir, "orf.json"), io::to_json(s).dump(2) + "\n");
    io::write_atomic(join(out_dir, "mu_1.csv"), csv.str());
  } else {
    std::cout << rep.dump(2) << "\n";
  }
  return ok ? kOk : kVerifyFailed;
}

int run(int argc, char** argv) {
  CLI::App app{"orthogonal rational functions on the unit circle"};
  app.require_subcommand(1);
  bool allow_large = false;
  app.add_flag("--allow-large-poles", allow_large, "accept |beta| >= 0.9");

  std::string config_path, out_dir = ".";
  std::size_t table_points = 256, order = 0, n = 2;
  std::vector<std::string> which;
  std::string beta1_text = "0.5,0";

  auto* synth = app.add_subcommand("synth", "build a ladder and write orf.json / orf_table.csv");
  synth->add_option("--config", config_path, "job config")->required();
  synth->add_option("--out", out_dir, "output directory");
  synth->add_option("--table-points", table_points, "boundary samples per table")->check(CLI::PositiveNumber);

  auto* arf = app.add_subcommand("arf", "ARFs of a given order: arf_k.json / mu_k.csv");
  arf->add_option("--config", config_path, "job config")->required();
  arf->add_option("--order", order, "ARF order k")->required();
  arf->add_option("--out", out_dir, "output directory");
  arf->add_option("--table-points", table_points, "boundary samples per table")->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "run identity checks and write verify.json");
  verify->add_option("--config", config_path, "job config")->required();
  verify->add_option("--check", which, "restrict to these checks");
  verify->add_option("--out", out_dir, "output directory");

  auto* example = app.add_subcommand("example", "worked examples");
  example->require_subcommand(1);
  auto* leb = example->add_subcommand("lebesgue", "Lebesgue measure, beta_0 = 0, beta_1 given, other poles 0");
  leb->add_option("--beta1", beta1_text, "re,im");
  leb->add_option("--n", n, "top level (>= 2)");
  std::string example_out;
  leb->add_option("--out", example_out, "write example.json, orf.json, mu_1.csv here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }

  try {
    if (synth->parsed()) return cmd_synth(load_config(config_path, allow_large), out_dir, table_points, std::cerr);
    if (arf->parsed()) {
      JobConfig cfg = load_config(config_path, allow_large);
      if (order > cfg.n_max) throw ConfigError("--order exceeds n_max");
      return cmd_arf(cfg, order, out_dir, table_points, std::cerr);
    }
    if (verify->parsed()) return cmd_verify(load_config(config_path, allow_large), which, out_dir, std::cerr);
    if (leb->parsed()) {
      double re = 0.0, im = 0.0;
      char tail = 0;
      if (std::sscanf(beta1_text.c_str(), "%lf,%lf%c", &re, &im, &tail) != 2)
        throw ConfigError("--beta1 expects re,im, got " + beta1_text);
      return cmd_example_lebesgue({re, im}, n, example_out, std::cerr);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const OrfError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumericalFailure;
  }
  return kConfigError;
}

}  // namespace orfkit::cli
