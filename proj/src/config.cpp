// Copyright (c) 2026 The polydg authors.
// SPDX-License-Identifier: Apache-2.0

#include "polydg/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "polydg/errors.hpp"

namespace polydg {

namespace {

enum class Quantity {
  Dimensionless,
  Time,          // -> ms
  Potential,     // -> mV
  Conductivity,  // -> mS/cm
  SurfaceRatio,  // chi_m -> 1/cm
  Capacitance,   // -> uF/cm^2
  Length,        // -> cm
};

double unit_factor(Quantity q, const std::string& unit, const std::string& key) {
  struct Entry {
    const char* name;
    double factor;
  };
  static const std::map<Quantity, std::vector<Entry>> table = {
      {Quantity::Time, {{"us", 1e-3}, {"ms", 1.0}, {"s", 1e3}}},
      {Quantity::Potential, {{"mV", 1.0}, {"V", 1e3}}},
      {Quantity::Conductivity, {{"mS/cm", 1.0}, {"S/m", 10.0}, {"S/cm", 1e3}}},
      {Quantity::SurfaceRatio, {{"1/cm", 1.0}, {"1/m", 0.01}}},
      {Quantity::Capacitance, {{"uF/cm^2", 1.0}, {"F/m^2", 100.0}}},
      {Quantity::Length, {{"cm", 1.0}, {"mm", 0.1}, {"m", 100.0}}},
  };
  if (unit.empty()) return 1.0;  // bare numbers are in internal units
  if (q == Quantity::Dimensionless)
    throw ConfigError("key '" + key + "' takes a bare number, got unit '" + unit + "'");
  for (const Entry& e : table.at(q))
    if (unit == e.name) return e.factor;
  throw ConfigError("key '" + key + "': unknown unit '" + unit + "'");
}

struct RawConfig {
  std::map<std::string, std::string> kv;
  std::string origin;
  mutable std::vector<std::string> consumed;

  bool has(const std::string& key) const { return kv.count(key) > 0; }

  const std::string* raw(const std::string& key) const {
    auto it = kv.find(key);
    if (it == kv.end()) return nullptr;
    consumed.push_back(key);
    return &it->second;
  }

  double number(const std::string& key, Quantity q, double fallback) const {
    const std::string* v = raw(key);
    if (!v) return fallback;
    std::istringstream is(*v);
    double x = 0.0;
    if (!(is >> x)) throw ConfigError("key '" + key + "': expected a number, got '" + *v + "'");
    std::string unit;
    is >> unit;
    std::string extra;
    if (is >> extra) throw ConfigError("key '" + key + "': trailing content '" + extra + "'");
    return x * unit_factor(q, unit, key);
  }

  long integer(const std::string& key, long fallback) const {
    const std::string* v = raw(key);
    if (!v) return fallback;
    try {
      std::size_t pos = 0;
      const long x = std::stol(*v, &pos);
      if (pos != v->size()) throw std::invalid_argument("trailing");
      return x;
    } catch (const std::exception&) {
      throw ConfigError("key '" + key + "': expected an integer, got '" + *v + "'");
    }
  }

  bool boolean(const std::string& key, bool fallback) const {
    const std::string* v = raw(key);
    if (!v) return fallback;
    if (*v == "true") return true;
    if (*v == "false") return false;
    throw ConfigError("key '" + key + "': expected true or false, got '" + *v + "'");
  }

  std::string text(const std::string& key, const std::string& fallback) const {
    const std::string* v = raw(key);
    return v ? *v : fallback;
  }

  std::vector<double> numbers(const std::string& key) const {
    const std::string* v = raw(key);
    std::vector<double> out;
    if (!v) return out;
    std::istringstream is(*v);
    double x = 0.0;
    while (is >> x) out.push_back(x);
    if (!is.eof()) throw ConfigError("key '" + key + "': expected a list of numbers");
    return out;
  }

  std::vector<std::string> words(const std::string& key) const {
    const std::string* v = raw(key);
    std::vector<std::string> out;
    if (!v) return out;
    std::istringstream is(*v);
    std::string w;
    while (is >> w) out.push_back(w);
    return out;
  }

  void reject_unknown() const {
    std::vector<std::string> sorted = consumed;
    std::sort(sorted.begin(), sorted.end());
    for (const auto& [key, value] : kv) {
      if (!std::binary_search(sorted.begin(), sorted.end(), key))
        throw ConfigError(origin + ": unknown key '" + key + "'");
    }
  }
};

RawConfig tokenize(const std::string& text, const std::string& origin) {
  RawConfig raw;
  raw.origin = origin;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string();
      const auto e = s.find_last_not_of(" \t\r");
      return s.substr(b, e - b + 1);
    };
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
    if (!raw.kv.emplace(key, value).second)
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
  }
  return raw;
}

SimulationConfig read_base(const RawConfig& raw) {
  SimulationConfig c;
  c.mesh.cells = static_cast<int>(raw.integer("mesh.cells", c.mesh.cells));
  c.mesh.seed = static_cast<std::uint64_t>(raw.integer("mesh.seed", 42));
  c.mesh.lloyd = static_cast<int>(raw.integer("mesh.lloyd", c.mesh.lloyd));
  c.mesh.file = raw.text("mesh.file", "");
  c.mesh.split_y = raw.number("mesh.split_y", Quantity::Length, c.mesh.split_y);
  if (const auto dom = raw.numbers("mesh.domain"); !dom.empty()) {
    if (dom.size() != 4) throw ConfigError("mesh.domain expects 'x0 y0 x1 y1'");
    c.mesh.domain = Rect{dom[0], dom[1], dom[2], dom[3]};
  }

  c.degree = static_cast<int>(raw.integer("fem.degree", c.degree));
  c.eta0 = raw.number("fem.eta0", Quantity::Dimensionless, c.eta0);
  c.dt = raw.number("time.dt", Quantity::Time, c.dt);
  c.T = raw.number("time.T", Quantity::Time, c.T);
  c.chi_m = raw.number("membrane.chi", Quantity::SurfaceRatio, c.chi_m);
  c.C_m = raw.number("membrane.Cm", Quantity::Capacitance, c.C_m);

  c.sigma_grey_l = raw.number("sigma.grey.l", Quantity::Conductivity, c.sigma_grey_l);
  c.sigma_grey_n = raw.number("sigma.grey.n", Quantity::Conductivity, c.sigma_grey_n);
  c.sigma_white_l = raw.number("sigma.white.l", Quantity::Conductivity, c.sigma_white_l);
  c.sigma_white_n = raw.number("sigma.white.n", Quantity::Conductivity, c.sigma_white_n);
  if (const auto f = raw.numbers("fiber.grey"); !f.empty()) {
    if (f.size() != 2) throw ConfigError("fiber.grey expects two components");
    c.fiber_grey = Point2{f[0], f[1]};
  }
  if (const auto f = raw.numbers("fiber.white"); !f.empty()) {
    if (f.size() != 2) throw ConfigError("fiber.white expects two components");
    c.fiber_white = Point2{f[0], f[1]};
  }

  c.ionic_model = raw.text("ionic.model", c.ionic_model);
  for (const auto& [key, value] : raw.kv) {
    if (key.rfind("ionic.params.", 0) == 0) {
      c.ionic_params[key.substr(13)] =
          raw.number(key, Quantity::Dimensionless, 0.0);
    }
  }

  c.init.u_rest = raw.number("init.u_rest", Quantity::Potential, c.init.u_rest);
  c.init.u_patch = raw.number("init.u0", Quantity::Potential, c.init.u_patch);
  if (const auto o = raw.numbers("init.omega0"); !o.empty()) {
    if (o.size() != 3) throw ConfigError("init.omega0 expects 'cx cy r2'");
    c.init.omega0_center = Point2{o[0], o[1]};
    c.init.omega0_r2 = o[2];
  }

  c.solver.tol = raw.number("solver.tol", Quantity::Dimensionless, c.solver.tol);
  c.solver.maxit = static_cast<int>(raw.integer("solver.maxit", c.solver.maxit));
  c.solver.warm_start = raw.boolean("solver.warm_start", c.solver.warm_start);

  c.precond.kind = precond_kind_from(
      raw.text("precond.kind", precond_kind_name(c.precond.kind)));
  c.precond.h_ratio = static_cast<int>(raw.integer("precond.H_ratio", c.precond.h_ratio));
  c.precond.q = static_cast<int>(raw.integer("precond.q", c.precond.q));

  c.output.dir = raw.text("output.dir", c.output.dir);
  c.output.every = static_cast<int>(raw.integer("output.every", c.output.every));
  c.output.format = raw.text("output.format", c.output.format);
  return c;
}

}  // namespace

const char* precond_kind_name(PrecondKind kind) {
  switch (kind) {
    case PrecondKind::None: return "none";
    case PrecondKind::BlockJacobi: return "block-jacobi";
    case PrecondKind::TwoLevel: return "two-level";
  }
  return "?";
}

PrecondKind precond_kind_from(const std::string& name) {
  if (name == "none") return PrecondKind::None;
  if (name == "block-jacobi") return PrecondKind::BlockJacobi;
  if (name == "two-level") return PrecondKind::TwoLevel;
  throw ConfigError("precond.kind must be none, block-jacobi, or two-level (got '" +
                    name + "')");
}

ParsedConfig parse_config_text(const std::string& text, const std::string& origin) {
  const RawConfig raw = tokenize(text, origin);
  SimulationConfig base = read_base(raw);

  bool is_study = false;
  for (const auto& [key, value] : raw.kv)
    if (key.rfind("study.", 0) == 0) is_study = true;

  if (!is_study) {
    raw.reject_unknown();
    base.validate();
    return base;
  }

  StudySpec spec;
  for (double v : raw.numbers("study.cells")) spec.cells.push_back(static_cast<int>(v));
  for (double v : raw.numbers("study.ratios")) spec.ratios.push_back(static_cast<int>(v));
  for (const std::string& w : raw.words("study.degrees")) {
    const auto colon = w.find(':');
    int p = 0, q = 0;
    try {
      if (colon == std::string::npos) {
        p = q = std::stoi(w);
      } else {
        p = std::stoi(w.substr(0, colon));
        q = std::stoi(w.substr(colon + 1));
      }
    } catch (const std::exception&) {
      throw ConfigError("study.degrees entries must be 'p' or 'p:q', got '" + w + "'");
    }
    spec.degrees.emplace_back(p, q);
  }
  for (const std::string& w : raw.words("study.preconds"))
    spec.kinds.push_back(precond_kind_from(w));
  base.T = raw.number("study.T", Quantity::Time, 0.25);
  raw.reject_unknown();

  if (spec.cells.empty()) throw ConfigError("study.cells is mandatory for a study");
  if (spec.ratios.empty()) spec.ratios = {2};
  if (spec.degrees.empty()) spec.degrees = {{base.degree, base.degree}};
  if (spec.kinds.empty()) spec.kinds = {PrecondKind::TwoLevel, PrecondKind::None};
  for (int r : spec.ratios)
    if (r < 2 || (r & (r - 1)) != 0)
      throw ConfigError("study.ratios must be powers of two >= 2");
  for (const auto& [p, q] : spec.degrees) {
    if (p < 1 || q < 1 || q > p)
      throw ConfigError("study.degrees requires 1 <= q <= p");
  }
  spec.base = std::move(base);
  return spec;
}

ParsedConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

}  // namespace polydg
