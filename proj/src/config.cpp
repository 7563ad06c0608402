#include "sizepop/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "sizepop/errors.hpp"

namespace sizepop {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ParseError("config key '" + path + "': " + msg);
}

std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
}

void reject_unknown(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  require_object(j, path);
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || item.key() == a;
    if (!known) fail(child(path, item.key()), "unknown key");
  }
}

const json& require_key(const json& j, const std::string& path, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) fail(child(path, key), "missing required key");
  return *it;
}

double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(path, "expected a finite number");
  return v;
}

std::vector<double> as_number_list(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_number(j[i], child(path, std::to_string(i))));
  return out;
}

std::vector<Breakpoint> as_breakpoints(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of [s, v] pairs");
  std::vector<Breakpoint> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto p = child(path, std::to_string(i));
    if (!j[i].is_array() || j[i].size() != 2) fail(p, "expected an [s, v] pair");
    out.push_back({as_number(j[i][0], p + "/0"), as_number(j[i][1], p + "/1")});
  }
  return out;
}

/// The single tag of a tagged union object.
std::string single_tag(const json& j, const std::string& path, std::initializer_list<const char*> tags) {
  reject_unknown(j, path, tags);
  if (j.size() != 1) fail(path, "expected exactly one form tag");
  return j.begin().key();
}

Coefficient parse_coefficient(const json& j, const std::string& path) {
  if (j.is_number()) return Coefficient::constant(as_number(j, path));
  const auto tag = single_tag(j, path, {"constant", "polynomial", "table"});
  const auto p = child(path, tag);
  try {
    if (tag == "constant") return Coefficient::constant(as_number(j.at(tag), p));
    if (tag == "polynomial") return Coefficient::polynomial(as_number_list(j.at(tag), p));
    return Coefficient::table(as_breakpoints(j.at(tag), p));
  } catch (const ArgumentError& e) {
    fail(p, e.what());
  }
}

Kernel parse_kernel(const json& j, const std::string& path) {
  if (j.is_number()) return Kernel::constant(as_number(j, path));
  const auto tag = single_tag(j, path, {"constant", "separable", "grid"});
  const auto p = child(path, tag);
  if (tag == "constant") return Kernel::constant(as_number(j.at(tag), p));
  const auto& body = j.at(tag);
  if (tag == "separable") {
    reject_unknown(body, p, {"f", "g"});
    return Kernel::separable(parse_coefficient(require_key(body, p, "f"), child(p, "f")),
                             parse_coefficient(require_key(body, p, "g"), child(p, "g")));
  }
  reject_unknown(body, p, {"s", "y", "values"});
  auto s = as_number_list(require_key(body, p, "s"), child(p, "s"));
  auto y = as_number_list(require_key(body, p, "y"), child(p, "y"));
  const auto& vj = require_key(body, p, "values");
  if (!vj.is_array()) fail(child(p, "values"), "expected an array of rows");
  std::vector<std::vector<double>> values;
  for (std::size_t i = 0; i < vj.size(); ++i) {
    values.push_back(as_number_list(vj[i], child(child(p, "values"), std::to_string(i))));
  }
  try {
    return Kernel::grid(std::move(s), std::move(y), std::move(values));
  } catch (const ArgumentError& e) {
    fail(p, e.what());
  }
}

Model parse_model(const json& j) {
  const std::string path = "/model";
  reject_unknown(j, path, {"m", "mu", "gamma", "d", "beta", "boundary"});
  const double m = as_number(require_key(j, path, "m"), "/model/m");
  if (!(m > 0.0)) fail("/model/m", "maximum size must be positive");
  auto mu = parse_coefficient(require_key(j, path, "mu"), "/model/mu");
  auto gamma = parse_coefficient(require_key(j, path, "gamma"), "/model/gamma");
  auto d = parse_coefficient(require_key(j, path, "d"), "/model/d");
  auto beta = parse_kernel(require_key(j, path, "beta"), "/model/beta");

  try {
    BoundaryConstants bc;
    const auto& bj = require_key(j, path, "boundary");
    if (bj.is_string()) {
      if (bj.get<std::string>() != "conservative") {
        fail("/model/boundary", "expected \"conservative\" or an object {b0, bm, c0, cm}");
      }
      bc = conservative_constants(gamma, d, m);
    } else {
      reject_unknown(bj, "/model/boundary", {"b0", "bm", "c0", "cm"});
      bc.b0 = as_number(require_key(bj, "/model/boundary", "b0"), "/model/boundary/b0");
      bc.bm = as_number(require_key(bj, "/model/boundary", "bm"), "/model/boundary/bm");
      bc.c0 = as_number(require_key(bj, "/model/boundary", "c0"), "/model/boundary/c0");
      bc.cm = as_number(require_key(bj, "/model/boundary", "cm"), "/model/boundary/cm");
    }
    Model model(m, std::move(mu), std::move(gamma), std::move(d), std::move(beta), bc);
    require_admissible(model);
    return model;
  } catch (const DomainError& e) {
    throw AdmissibilityError(std::string("coefficients must be defined on [0, m]: ") + e.what());
  }
}

RunSection parse_run(const json& j) {
  const std::string path = "/run";
  reject_unknown(j, path, {"scheme", "dt", "T", "snapshot_stride", "seed"});
  RunSection run;
  if (const auto it = j.find("scheme"); it != j.end()) {
    if (!it->is_string()) fail("/run/scheme", "expected a string");
    try {
      run.scheme = parse_scheme(it->get<std::string>());
    } catch (const ArgumentError& e) {
      fail("/run/scheme", e.what());
    }
  }
  if (const auto it = j.find("dt"); it != j.end()) run.dt = as_number(*it, "/run/dt");
  if (const auto it = j.find("T"); it != j.end()) run.t_end = as_number(*it, "/run/T");
  if (const auto it = j.find("snapshot_stride"); it != j.end()) {
    if (!it->is_number_integer() || it->get<long long>() < 1) fail("/run/snapshot_stride", "expected an integer >= 1");
    run.snapshot_stride = it->get<int>();
  }
  if (const auto it = j.find("seed"); it != j.end()) {
    if (!it->is_number_unsigned()) fail("/run/seed", "expected a nonnegative integer");
    run.seed = it->get<std::uint64_t>();
  }
  if (!(run.dt > 0.0)) fail("/run/dt", "time step must be positive");
  if (!(run.t_end >= run.dt)) fail("/run/T", "final time must be at least one time step");
  return run;
}

InitialSpec parse_initial(const json& j) {
  const std::string path = "/initial";
  const auto tag = single_tag(j, path, {"constant", "gaussian", "table"});
  const auto p = child(path, tag);
  const auto& body = j.at(tag);
  if (tag == "constant") return ConstantInitial{as_number(body, p)};
  if (tag == "gaussian") {
    reject_unknown(body, p, {"center", "width", "amplitude"});
    GaussianInitial g;
    g.center = as_number(require_key(body, p, "center"), child(p, "center"));
    g.width = as_number(require_key(body, p, "width"), child(p, "width"));
    g.amplitude = as_number(require_key(body, p, "amplitude"), child(p, "amplitude"));
    if (!(g.width > 0.0)) fail(child(p, "width"), "width must be positive");
    return g;
  }
  auto points = as_breakpoints(body, p);
  try {
    (void)Coefficient::table(points);
  } catch (const ArgumentError& e) {
    fail(p, e.what());
  }
  return TableInitial{std::move(points)};
}

std::string locate(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < text.size() && i + 1 < byte; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

json coefficient_json(const Coefficient& c) {
  if (const auto* k = std::get_if<ConstantForm>(&c.form())) return json{{"constant", k->value}};
  if (const auto* p = std::get_if<PolynomialForm>(&c.form())) return json{{"polynomial", p->coeffs}};
  json pts = json::array();
  for (const auto& b : std::get<TableForm>(c.form()).points) pts.push_back({b.s, b.v});
  return json{{"table", pts}};
}

json kernel_json(const Kernel& k) {
  if (const auto* c = std::get_if<ConstantForm>(&k.form())) return json{{"constant", c->value}};
  if (const auto* s = std::get_if<SeparableKernel>(&k.form())) {
    return json{{"separable", {{"f", coefficient_json(s->f)}, {"g", coefficient_json(s->g)}}}};
  }
  const auto& g = std::get<GridKernel>(k.form());
  return json{{"grid", {{"s", g.s_nodes}, {"y", g.y_nodes}, {"values", g.values}}}};
}

}  // namespace

SimulationOptions RunConfig::simulation_options() const {
  SimulationOptions o;
  o.dt = run.dt;
  o.t_end = run.t_end;
  o.scheme = run.scheme;
  o.snapshot_stride = run.snapshot_stride;
  return o;
}

RunConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("config syntax error at " + locate(text, e.byte) + ": " + e.what());
  }
  reject_unknown(root, "", {"model", "grid", "run", "initial"});

  const auto& gj = require_key(root, "", "grid");
  reject_unknown(gj, "/grid", {"N"});
  const auto& nj = require_key(gj, "/grid", "N");
  if (!nj.is_number_integer() || nj.get<long long>() < 2 || nj.get<long long>() > 1 << 20) {
    fail("/grid/N", "expected an integer N >= 2");
  }

  RunConfig config{parse_model(require_key(root, "", "model")), nj.get<int>(), RunSection{}, ConstantInitial{}};
  if (const auto it = root.find("run"); it != root.end()) config.run = parse_run(*it);
  if (const auto it = root.find("initial"); it != root.end()) config.initial = parse_initial(*it);
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const RunConfig& config) {
  const auto& model = config.model;
  json boundary;
  if (model.bc().conservative) {
    boundary = "conservative";
  } else {
    boundary = {{"b0", model.bc().b0}, {"bm", model.bc().bm}, {"c0", model.bc().c0}, {"cm", model.bc().cm}};
  }
  json initial;
  if (const auto* c = std::get_if<ConstantInitial>(&config.initial)) {
    initial = {{"constant", c->value}};
  } else if (const auto* g = std::get_if<GaussianInitial>(&config.initial)) {
    initial = {{"gaussian", {{"center", g->center}, {"width", g->width}, {"amplitude", g->amplitude}}}};
  } else {
    json pts = json::array();
    for (const auto& b : std::get<TableInitial>(config.initial).points) pts.push_back({b.s, b.v});
    initial = {{"table", pts}};
  }
  const json root = {
      {"model",
       {{"m", model.m()},
        {"mu", coefficient_json(model.mu())},
        {"gamma", coefficient_json(model.gamma())},
        {"d", coefficient_json(model.d())},
        {"beta", kernel_json(model.beta())},
        {"boundary", boundary}}},
      {"grid", {{"N", config.n}}},
      {"run",
       {{"scheme", scheme_name(config.run.scheme)},
        {"dt", config.run.dt},
        {"T", config.run.t_end},
        {"snapshot_stride", config.run.snapshot_stride},
        {"seed", config.run.seed}}},
      {"initial", initial},
  };
  return root.dump(2) + "\n";
}

PopulationState initial_state(const InitialSpec& spec, const Grid& grid) {
  PopulationState u(grid.size());
  if (const auto* t = std::get_if<TableInitial>(&spec)) {
    const auto table = Coefficient::table(t->points);
    for (int i = 0; i <= grid.n; ++i) u[static_cast<std::size_t>(i)] = eval(table, grid.node(i), grid.m);
    return u;
  }
  for (int i = 0; i <= grid.n; ++i) {
    const double s = grid.node(i);
    double v = 0.0;
    if (const auto* c = std::get_if<ConstantInitial>(&spec)) {
      v = c->value;
    } else {
      const auto& g = std::get<GaussianInitial>(spec);
      const double z = (s - g.center) / g.width;
      v = g.amplitude * std::exp(-0.5 * z * z);
    }
    u[static_cast<std::size_t>(i)] = v;
  }
  return u;
}

}  // namespace sizepop
