#include "orfkit/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

namespace orfkit::io {

namespace {

json poly_json(const Poly& c) {
  json a = json::array();
  for (const cplx z : c) a.push_back(to_json(z));
  return a;
}

Poly poly_from_json(const json& j) {
  Poly c;
  for (const auto& z : j) c.push_back(complex_from_json(z));
  return c;
}

json poles_json(const PoleSequence& poles) {
  json a = json::array();
  for (const cplx b : poles.values()) a.push_back(to_json(b));
  return a;
}

PoleSequence poles_from_json(const json& j) {
  std::vector<cplx> b;
  for (const auto& z : j) b.push_back(complex_from_json(z));
  return PoleSequence(std::move(b));
}

}  // namespace

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw OrfError(ErrorKind::DomainError, "complex numbers are written as [re, im], got " + j.dump());
  return {j[0].get<double>(), j[1].get<double>()};
}

json to_json(const MeasureSpec& spec) {
  switch (spec.kind) {
    case MeasureKind::Lebesgue: return {{"type", "lebesgue"}};
    case MeasureKind::Poisson: return {{"type", "poisson"}, {"alpha", to_json(spec.alpha)}};
    case MeasureKind::Samples: return {{"type", "samples"}, {"theta", spec.theta}, {"w", spec.w}};
    case MeasureKind::Function: break;
  }
  throw OrfError(ErrorKind::DomainError, "function measures cannot be serialized");
}

MeasureSpec measure_spec_from_json(const json& j) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
    throw OrfError(ErrorKind::DomainError, "measure spec needs a \"type\" string");
  const auto type = j["type"].get<std::string>();
  MeasureSpec s;
  if (type == "lebesgue") {
    s.kind = MeasureKind::Lebesgue;
  } else if (type == "poisson") {
    s.kind = MeasureKind::Poisson;
    if (!j.contains("alpha")) throw OrfError(ErrorKind::DomainError, "poisson measure needs alpha");
    s.alpha = complex_from_json(j["alpha"]);
  } else if (type == "samples") {
    s.kind = MeasureKind::Samples;
    if (!j.contains("theta") || !j.contains("w")) throw OrfError(ErrorKind::DomainError, "samples measure needs theta and w");
    s.theta = j["theta"].get<std::vector<double>>();
    s.w = j["w"].get<std::vector<double>>();
  } else {
    throw OrfError(ErrorKind::DomainError, "unknown measure type \"" + type + "\"");
  }
  return s;
}

json to_json(const OrfSystem& system) {
  json j;
  j["poles"] = poles_json(system.poles);
  j["normalization"] = system.normalization == Normalization::Orthonormal ? "orthonormal" : "general";
  j["source"] = system.source == SystemSource::Measure ? "measure" : "parameters";
  if (system.measure && system.measure->kind() != MeasureKind::Function)
    j["measure"] = to_json(system.measure->spec());
  else
    j["measure"] = nullptr;
  json levels = json::array();
  for (const auto& l : system.levels) {
    json lj;
    lj["n"] = l.n;
    lj["phi"] = poly_json(l.phi.numer());
    lj["phi_star"] = poly_json(l.phi_star.numer());
    lj["psi"] = poly_json(l.psi.numer());
    lj["psi_star"] = poly_json(l.psi_star.numer());
    lj["lambda"] = l.lambda ? to_json(*l.lambda) : json(nullptr);
    lj["e"] = l.e ? json(*l.e) : json(nullptr);
    lj["rho"] = to_json(l.rho);
    lj["d"] = l.d;
    levels.push_back(std::move(lj));
  }
  j["levels"] = std::move(levels);
  return j;
}

OrfSystem orf_system_from_json(const json& j) {
  OrfSystem s;
  s.poles = poles_from_json(j.at("poles"));
  s.normalization = j.at("normalization").get<std::string>() == "orthonormal" ? Normalization::Orthonormal
                                                                              : Normalization::General;
  s.source = j.at("source").get<std::string>() == "measure" ? SystemSource::Measure : SystemSource::Parameters;
  if (j.contains("measure") && !j["measure"].is_null()) s.measure = builtin_measure(measure_spec_from_json(j["measure"]));
  for (const auto& lj : j.at("levels")) {
    OrfLevel l;
    l.n = lj.at("n").get<std::size_t>();
    l.phi = RatFun(s.poles, poly_from_json(lj.at("phi")));
    l.phi_star = RatFun(s.poles, poly_from_json(lj.at("phi_star")));
    l.psi = RatFun(s.poles, poly_from_json(lj.at("psi")));
    l.psi_star = RatFun(s.poles, poly_from_json(lj.at("psi_star")));
    if (!lj.at("lambda").is_null()) l.lambda = complex_from_json(lj["lambda"]);
    if (!lj.at("e").is_null()) l.e = lj["e"].get<double>();
    l.rho = complex_from_json(lj.at("rho"));
    l.d = lj.at("d").get<double>();
    if (l.n != s.levels.size()) throw OrfError(ErrorKind::DomainError, "levels out of order in system JSON");
    s.levels.push_back(std::move(l));
  }
  if (s.levels.empty()) throw OrfError(ErrorKind::DomainError, "system JSON has no levels");
  return s;
}

json to_json(const ArfSystem& arf) {
  json j;
  j["order"] = arf.order;
  j["base_n_max"] = arf.base_n_max;
  j["c"] = arf.c;
  j["system"] = to_json(arf.system);
  if (arf.measure)
    j["mu"] = {{"theta", arf.measure->spec().theta}, {"w", arf.measure->spec().w}};
  else
    j["mu"] = nullptr;
  return j;
}

ArfSystem arf_system_from_json(const json& j) {
  ArfSystem a;
  a.order = j.at("order").get<std::size_t>();
  a.base_n_max = j.at("base_n_max").get<std::size_t>();
  a.c = j.at("c").get<std::vector<double>>();
  a.system = orf_system_from_json(j.at("system"));
  if (!j.at("mu").is_null())
    a.measure = CircleMeasure::samples(j["mu"].at("theta").get<std::vector<double>>(), j["mu"].at("w").get<std::vector<double>>());
  return a;
}

void write_atomic(const std::string& path, const std::string& contents) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << contents;
    if (!out.flush()) throw std::runtime_error("write to " + tmp.string() + " failed");
  }
  std::filesystem::rename(tmp, target);
}

}  // namespace orfkit::io
