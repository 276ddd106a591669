#include "photoncount/config.hpp"

#include <cmath>
#include <set>

#include <json.hpp>

namespace pcs {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) {
      throw ConfigError("unknown key \"" + it.key() + "\" in " + where);
    }
  }
}

double require_finite(const json& v, const std::string& name) {
  if (!v.is_number()) throw ConfigError(name + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(name + " must be finite");
  return x;
}

FieldSpec parse_field(const json& obj) {
  if (!obj.is_object()) throw ConfigError("field must be an object");
  if (!obj.contains("kind")) throw ConfigError("field.kind is required");
  const std::string kind = obj.at("kind").get<std::string>();
  FieldSpec f;
  if (kind == "fock") {
    reject_unknown_keys(obj, {"kind", "m"}, "field");
    f.kind = FieldKind::Fock;
    if (!obj.contains("m")) throw ConfigError("field.m is required for fock");
    f.m = obj.at("m").get<int>();
    if (f.m < 0) throw ConfigError("field.m must be >= 0");
  } else if (kind == "thermal" || kind == "coherent") {
    reject_unknown_keys(obj, {"kind", "nbar"}, "field");
    f.kind = kind == "thermal" ? FieldKind::Thermal : FieldKind::Coherent;
    if (!obj.contains("nbar"))
      throw ConfigError("field.nbar is required for " + kind);
    f.nbar = require_finite(obj.at("nbar"), "field.nbar");
    if (f.nbar < 0.0) throw ConfigError("field.nbar must be >= 0");
  } else if (kind == "superposition") {
    reject_unknown_keys(obj, {"kind", "terms"}, "field");
    f.kind = FieldKind::Superposition;
    if (!obj.contains("terms") || !obj.at("terms").is_array() ||
        obj.at("terms").empty()) {
      throw ConfigError("field.terms must be a nonempty array");
    }
    for (const auto& t : obj.at("terms")) {
      if (!t.is_array() || t.size() != 3) {
        throw ConfigError("field.terms entries must be [level, re, im]");
      }
      f.terms.emplace_back(t[0].get<int>(),
                           Complex(t[1].get<double>(), t[2].get<double>()));
    }
  } else {
    throw ConfigError("field.kind \"" + kind +
                      "\" is not one of fock/thermal/coherent/superposition");
  }
  return f;
}

}  // namespace

DensityMatrix FieldSpec::build(int dim, double tail_tol) const {
  switch (kind) {
    case FieldKind::Fock:
      return make_fock(m, dim);
    case FieldKind::Thermal:
      return make_thermal(nbar, dim, tail_tol);
    case FieldKind::Coherent:
      return make_coherent(std::sqrt(nbar), dim, tail_tol);
    case FieldKind::Superposition:
      return make_superposition(terms, dim);
  }
  throw ConfigError("unreachable field kind");
}

double FieldSpec::oracle_nbar() const {
  switch (kind) {
    case FieldKind::Fock:
      return double(m);
    case FieldKind::Thermal:
    case FieldKind::Coherent:
      return nbar;
    default:
      throw ConfigError("no closed-form table oracle for superposition fields");
  }
}

SimConfig SimConfig::from_json_text(const std::string& text) {
  json obj;
  try {
    obj = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!obj.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown_keys(obj,
                      {"model", "gamma", "dim", "tail_tol", "field", "grid",
                       "n_traj", "seed", "outputs", "tables", "derive", "g2"},
                      "config");

  SimConfig cfg;
  if (obj.contains("model")) {
    const std::string m = obj.at("model").get<std::string>();
    if (m == "SD") {
      cfg.model = JumpKind::SD;
    } else if (m == "E") {
      cfg.model = JumpKind::E;
    } else {
      throw ConfigError("model must be \"SD\" or \"E\"");
    }
  }
  if (obj.contains("gamma")) {
    cfg.gamma = require_finite(obj.at("gamma"), "gamma");
    if (!(cfg.gamma > 0.0)) throw ConfigError("gamma must be positive");
  }
  if (obj.contains("dim")) {
    cfg.dim = obj.at("dim").get<int>();
    if (cfg.dim < 2) throw ConfigError("dim must be >= 2");
  }
  if (obj.contains("tail_tol")) {
    cfg.tail_tol = require_finite(obj.at("tail_tol"), "tail_tol");
    if (!(cfg.tail_tol > 0.0)) throw ConfigError("tail_tol must be positive");
  }
  if (obj.contains("field")) cfg.field = parse_field(obj.at("field"));
  if (obj.contains("grid")) {
    const json& g = obj.at("grid");
    reject_unknown_keys(g, {"t0", "t1", "steps"}, "grid");
    cfg.grid.t0 = g.contains("t0") ? require_finite(g.at("t0"), "grid.t0") : 0.0;
    if (!g.contains("t1")) throw ConfigError("grid.t1 is required");
    cfg.grid.t1 = require_finite(g.at("t1"), "grid.t1");
    if (!g.contains("steps")) throw ConfigError("grid.steps is required");
    cfg.grid.steps = g.at("steps").get<int>();
    check_grid(cfg.grid);
  }
  if (obj.contains("n_traj")) {
    cfg.n_traj = obj.at("n_traj").get<long>();
    if (cfg.n_traj < 0) throw ConfigError("n_traj must be >= 0");
  }
  if (obj.contains("seed")) cfg.seed = obj.at("seed").get<std::uint64_t>();
  if (obj.contains("outputs")) {
    for (const auto& o : obj.at("outputs"))
      cfg.outputs.push_back(o.get<std::string>());
  }
  if (obj.contains("tables")) {
    const json& t = obj.at("tables");
    reject_unknown_keys(t, {"nbars", "fock_ms"}, "tables");
    if (t.contains("nbars")) {
      cfg.table_nbars.clear();
      for (const auto& v : t.at("nbars")) {
        const double nb = require_finite(v, "tables.nbars");
        if (!(nb > 0.0)) throw ConfigError("tables.nbars must be positive");
        cfg.table_nbars.push_back(nb);
      }
    }
    if (t.contains("fock_ms")) {
      cfg.table_fock_ms.clear();
      for (const auto& v : t.at("fock_ms")) {
        const int m = v.get<int>();
        if (m < 1) throw ConfigError("tables.fock_ms must be >= 1");
        cfg.table_fock_ms.push_back(m);
      }
    }
  }
  if (obj.contains("derive")) {
    const json& d = obj.at("derive");
    reject_unknown_keys(d, {"omega", "dt"}, "derive");
    if (d.contains("omega"))
      cfg.derive_omega = require_finite(d.at("omega"), "derive.omega");
    if (d.contains("dt"))
      cfg.derive_dt = require_finite(d.at("dt"), "derive.dt");
    if (!(cfg.derive_omega > 0.0) || !(cfg.derive_dt > 0.0)) {
      throw ConfigError("derive.omega and derive.dt must be positive");
    }
    if (cfg.derive_omega * cfg.derive_dt > 0.1) {
      throw ConfigError("derive requires omega*dt <= 0.1");
    }
  }
  if (obj.contains("g2")) {
    const json& g = obj.at("g2");
    reject_unknown_keys(g, {"window"}, "g2");
    if (g.contains("window"))
      cfg.g2_window = require_finite(g.at("window"), "g2.window");
    if (!(cfg.g2_window > 0.0)) throw ConfigError("g2.window must be positive");
  }
  // Eager cross-field validation: the field must fit the truncation.
  if (cfg.field.kind == FieldKind::Fock && cfg.field.m >= cfg.dim) {
    throw ConfigError("field.m must be below dim");
  }
  for (const auto& [level, amp] : cfg.field.terms) {
    (void)amp;
    if (level < 0 || level >= cfg.dim) {
      throw ConfigError("superposition level outside [0, dim)");
    }
  }
  return cfg;
}

std::string SimConfig::to_json_text() const {
  json obj;
  obj["model"] = model == JumpKind::SD ? "SD" : "E";
  obj["gamma"] = gamma;
  obj["dim"] = dim;
  obj["tail_tol"] = tail_tol;
  json f;
  switch (field.kind) {
    case FieldKind::Fock:
      f = {{"kind", "fock"}, {"m", field.m}};
      break;
    case FieldKind::Thermal:
      f = {{"kind", "thermal"}, {"nbar", field.nbar}};
      break;
    case FieldKind::Coherent:
      f = {{"kind", "coherent"}, {"nbar", field.nbar}};
      break;
    case FieldKind::Superposition: {
      json terms = json::array();
      for (const auto& [level, amp] : field.terms)
        terms.push_back({level, amp.real(), amp.imag()});
      f = {{"kind", "superposition"}, {"terms", terms}};
      break;
    }
  }
  obj["field"] = f;
  obj["grid"] = {{"t0", grid.t0}, {"t1", grid.t1}, {"steps", grid.steps}};
  obj["n_traj"] = n_traj;
  obj["seed"] = seed;
  obj["tables"] = {{"nbars", table_nbars}, {"fock_ms", table_fock_ms}};
  obj["derive"] = {{"omega", derive_omega}, {"dt", derive_dt}};
  obj["g2"] = {{"window", g2_window}};
  return obj.dump();
}

}  // namespace pcs
