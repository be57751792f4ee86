#pragma once

// Scenario files: a chart, structures, optional torus action with moment
// data, and the list of checks to run.  Every mathematical entry is an
// expression string; forms are lists of [index tuple, expression] pairs.

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tgk/parser.hpp"
#include "tgk/reduction.hpp"

namespace tgk {

using ojson = nlohmann::ordered_json;

/// A load failure; `path` locates the offending entry in the file.
class LoadError : public Error {
public:
  LoadError(const std::string& path, const std::string& what)
      : Error(path.empty() ? what : path + ": " + what), path_(path) {}
  const std::string& path() const { return path_; }

private:
  std::string path_;
};

struct NamedStructure {
  std::string name;
  GenStructure J;                // as used by the checks
  GenStructure base;             // before any B-field
  std::optional<DiffForm> b;     // total B-field applied to base
};

struct NamedPoint {
  std::string name;
  EvalPoint point;
};

struct Scenario {
  std::string name;
  std::string description;
  ChartPtr chart;
  DiffForm twist;
  std::vector<NamedStructure> structures;
  std::optional<std::pair<std::string, std::string>> gk_pair;
  std::string primary;
  std::optional<TorusAction> action;
  std::optional<MomentData> moment;
  std::optional<Connection> connection;
  std::optional<Connection> alt_connection;
  std::vector<Rational> level;
  std::vector<NamedPoint> sample_points;
  std::optional<DiffForm> invariant_b;
  std::optional<DiffForm> basic_b;
  std::vector<std::string> checks;
  std::vector<std::pair<std::string, std::string>> expect;  // verdict -> status
  ojson source;

  const NamedStructure& structure(const std::string& n) const {
    for (const auto& s : structures)
      if (s.name == n) return s;
    throw PreconditionError("no structure named '" + n + "'");
  }

  const EvalPoint& point(const std::string& n) const {
    for (const auto& p : sample_points)
      if (p.name == n) return p.point;
    throw PreconditionError("no sample point named '" + n + "'");
  }

  std::vector<EvalPoint> points() const {
    std::vector<EvalPoint> out;
    for (const auto& p : sample_points) out.push_back(p.point);
    return out;
  }
};

/// Check names in the order they run.
inline const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names{
      "algebraic",       "integrability",       "twist_flip",     "types",          "gk_pair",
      "equivariant_closure", "moment_map",      "moment_b_transform", "gamma",      "level_closure",
      "df_perp_closure", "reduction",           "gk_reduction",   "basic_b_commute", "connection_independence"};
  return names;
}

/// 64-bit FNV-1a, printed as 16 hex digits.
inline std::string fnv1a_hex(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

namespace detail {

class Loader {
public:
  explicit Loader(const ojson& root) : root_(root) {}

  Scenario load() {
    Scenario s;
    s.source = root_;
    require_object(root_, "");
    s.name = string_at(root_, "name", "");
    s.description = root_.contains("description") ? string_at(root_, "description", "") : "";
    s.chart = chart(member(root_, "chart", ""), "/chart");
    chart_ = s.chart;
    s.twist = root_.contains("twist") ? form(root_["twist"], 3, "/twist") : DiffForm(chart_, 3);
    if (!exterior_d(s.twist).is_zero()) throw LoadError("/twist", "twist not closed");
    std::optional<DiffForm> global_b;
    if (root_.contains("b_field")) global_b = form(root_["b_field"], 2, "/b_field");
    if (root_.contains("action")) s.action = action(root_["action"], "/action");
    if (global_b && s.action && !s.action->preserves(*global_b))
      throw LoadError("/b_field", "B-field is not invariant under the action");

    const ojson& st = member(root_, "structures", "");
    require_object(st, "/structures");
    if (st.empty()) throw LoadError("/structures", "at least one structure is required");
    for (const auto& [key, val] : st.items()) s.structures.push_back(structure(key, val, s.twist, global_b));

    if (root_.contains("gk_pair")) {
      const ojson& g = root_["gk_pair"];
      if (!g.is_array() || g.size() != 2) throw LoadError("/gk_pair", "expected two structure names");
      s.gk_pair = {g[0].get<std::string>(), g[1].get<std::string>()};
      for (const auto& n : {s.gk_pair->first, s.gk_pair->second}) resolve(s, n, "/gk_pair");
    }
    s.primary = root_.contains("primary") ? string_at(root_, "primary", "")
                : s.gk_pair                  ? s.gk_pair->first
                                             : s.structures.front().name;
    resolve(s, s.primary, "/primary");

    if (root_.contains("moment")) {
      if (!s.action) throw LoadError("/moment", "moment data needs an action");
      s.moment = moment(root_["moment"], *s.action, "/moment");
      if (global_b) s.moment = moment_b_transform(*global_b, *s.moment, *s.action);
    }
    if (root_.contains("connection")) s.connection = connection(root_["connection"], s, "/connection");
    if (root_.contains("alt_connection")) s.alt_connection = connection(root_["alt_connection"], s, "/alt_connection");
    if (root_.contains("level")) {
      const ojson& l = root_["level"];
      if (!l.is_array()) throw LoadError("/level", "expected an array");
      for (std::size_t i = 0; i < l.size(); ++i) s.level.push_back(rational(l[i], "/level/" + std::to_string(i)));
    }
    if (root_.contains("sample_points")) {
      const ojson& pts = root_["sample_points"];
      require_object(pts, "/sample_points");
      for (const auto& [key, val] : pts.items()) s.sample_points.push_back({key, point(val, "/sample_points/" + key)});
    }
    if (root_.contains("invariant_b")) s.invariant_b = form(root_["invariant_b"], 2, "/invariant_b");
    if (root_.contains("basic_b")) s.basic_b = form(root_["basic_b"], 2, "/basic_b");
    if (root_.contains("checks")) {
      const ojson& c = root_["checks"];
      if (!c.is_array()) throw LoadError("/checks", "expected an array");
      for (std::size_t i = 0; i < c.size(); ++i) {
        std::string n = c[i].is_string() ? c[i].get<std::string>() : "";
        const auto& names = known_checks();
        if (std::find(names.begin(), names.end(), n) == names.end())
          throw LoadError("/checks/" + std::to_string(i), "unknown check '" + c[i].dump() + "'");
        s.checks.push_back(n);
      }
    }
    if (root_.contains("expect")) {
      const ojson& e = root_["expect"];
      require_object(e, "/expect");
      for (const auto& [key, val] : e.items()) {
        std::string v = val.is_string() ? val.get<std::string>() : "";
        if (v != "pass" && v != "fail" && v != "skipped")
          throw LoadError("/expect/" + key, "expected 'pass', 'fail' or 'skipped'");
        s.expect.emplace_back(key, v);
      }
    }
    validate(s);
    return s;
  }

private:
  const ojson& root_;
  ChartPtr chart_;

  static void require_object(const ojson& j, const std::string& path) {
    if (!j.is_object()) throw LoadError(path, "expected an object");
  }

  static const ojson& member(const ojson& j, const std::string& key, const std::string& path) {
    if (!j.contains(key)) throw LoadError(path, "missing field '" + key + "'");
    return j[key];
  }

  static std::string string_at(const ojson& j, const std::string& key, const std::string& path) {
    const ojson& v = member(j, key, path);
    if (!v.is_string()) throw LoadError(path + "/" + key, "expected a string");
    return v.get<std::string>();
  }

  static void resolve(const Scenario& s, const std::string& n, const std::string& path) {
    for (const auto& st : s.structures)
      if (st.name == n) return;
    throw LoadError(path, "undeclared structure '" + n + "'");
  }

  static ChartPtr chart(const ojson& j, const std::string& path) {
    if (!j.is_array()) throw LoadError(path, "expected an array of coordinates");
    std::vector<Coordinate> coords;
    for (std::size_t i = 0; i < j.size(); ++i) {
      std::string p = path + "/" + std::to_string(i);
      std::string kind = string_at(j[i], "kind", p);
      if (kind != "affine" && kind != "periodic") throw LoadError(p + "/kind", "expected 'affine' or 'periodic'");
      coords.push_back({string_at(j[i], "name", p), kind == "affine" ? CoordKind::affine : CoordKind::periodic});
    }
    try {
      return make_chart(std::move(coords));
    } catch (const Error& e) {
      throw LoadError(path, e.what());
    }
  }

  RingElement expr(const ojson& j, const std::string& path) const {
    if (!j.is_string()) throw LoadError(path, "expected an expression string");
    try {
      return parse_expr(j.get<std::string>(), chart_);
    } catch (const Error& e) {
      throw LoadError(path, e.what());
    }
  }

  static Rational rational(const ojson& j, const std::string& path) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (!j.is_string()) throw LoadError(path, "expected a rational");
    const std::string src = j.get<std::string>();
    Rational q;
    try {
      q = Rational(src);
    } catch (const std::exception&) {
      throw LoadError(path, "malformed rational '" + src + "'");
    }
    if (q.get_den() == 0) throw LoadError(path, "zero denominator in '" + src + "'");
    q.canonicalize();
    return q;
  }

  std::size_t coordinate_index(const ojson& j, const std::string& path) const {
    if (j.is_number_unsigned()) {
      auto i = j.get<std::size_t>();
      if (i >= chart_->dim()) throw LoadError(path, "coordinate index out of range");
      return i;
    }
    if (!j.is_string()) throw LoadError(path, "expected a coordinate name");
    auto idx = chart_->index_of(j.get<std::string>());
    if (!idx) throw LoadError(path, "undeclared coordinate '" + j.get<std::string>() + "'");
    return *idx;
  }

  DiffForm form(const ojson& j, std::size_t degree, const std::string& path) const {
    if (!j.is_array()) throw LoadError(path, "expected a list of [index tuple, expression] pairs");
    DiffForm w(chart_, degree);
    for (std::size_t t = 0; t < j.size(); ++t) {
      std::string p = path + "/" + std::to_string(t);
      const ojson& e = j[t];
      if (!e.is_array() || e.size() != 2 || !e[0].is_array()) throw LoadError(p, "expected [index tuple, expression]");
      if (e[0].size() != degree)
        throw LoadError(p, "expected a " + std::to_string(degree) + "-form component");
      DiffForm term = DiffForm::function(expr(e[1], p + "/1"));
      for (std::size_t k = 0; k < e[0].size(); ++k)
        term = wedge(term, DiffForm::coordinate(chart_, coordinate_index(e[0][k], p + "/0/" + std::to_string(k))));
      w += term;
    }
    return w;
  }

  RingMatrix matrix(const ojson& j, std::size_t size, const std::string& path) const {
    if (!j.is_array() || j.size() != size) throw LoadError(path, "expected " + std::to_string(size) + " rows");
    RingMatrix m(chart_, size, size);
    for (std::size_t r = 0; r < size; ++r) {
      if (!j[r].is_array() || j[r].size() != size)
        throw LoadError(path + "/" + std::to_string(r), "expected " + std::to_string(size) + " entries");
      for (std::size_t c = 0; c < size; ++c)
        m(r, c) = expr(j[r][c], path + "/" + std::to_string(r) + "/" + std::to_string(c));
    }
    return m;
  }

  VectorField vector_field(const ojson& j, const std::string& path) const {
    if (!j.is_object()) throw LoadError(path, "expected an object of coordinate components");
    VectorField v(chart_);
    for (const auto& [key, val] : j.items()) v[coordinate_index(ojson(key), path + "/" + key)] = expr(val, path + "/" + key);
    return v;
  }

  TorusAction action(const ojson& j, const std::string& path) const {
    if (!j.is_array()) throw LoadError(path, "expected a list of generators");
    std::vector<VectorField> gens;
    for (std::size_t i = 0; i < j.size(); ++i) gens.push_back(vector_field(j[i], path + "/" + std::to_string(i)));
    try {
      return TorusAction(chart_, std::move(gens));
    } catch (const Error& e) {
      throw LoadError(path, e.what());
    }
  }

  NamedStructure structure(const std::string& name, const ojson& j, const DiffForm& twist,
                           const std::optional<DiffForm>& global_b) const {
    const std::string path = "/structures/" + name;
    require_object(j, path);
    const std::string kind = string_at(j, "kind", path);
    const std::size_t n = chart_->dim();
    NamedStructure out;
    out.name = name;
    try {
      if (kind == "symplectic") {
        out.base = symplectic_structure(form(member(j, "omega", path), 2, path + "/omega"), twist);
      } else if (kind == "complex") {
        out.base = complex_structure(matrix(member(j, "matrix", path), n, path + "/matrix"), twist);
      } else if (kind == "matrix") {
        out.base = GenStructure(matrix(member(j, "matrix", path), 2 * n, path + "/matrix"), twist);
      } else if (kind == "bihermitian") {
        auto pair = bihermitian_pair(matrix(member(j, "metric", path), n, path + "/metric"),
                                     matrix(member(j, "i_plus", path), n, path + "/i_plus"),
                                     matrix(member(j, "i_minus", path), n, path + "/i_minus"), twist);
        std::string which = j.contains("which") ? string_at(j, "which", path) : "first";
        if (which != "first" && which != "second") throw LoadError(path + "/which", "expected 'first' or 'second'");
        out.base = which == "first" ? pair.first : pair.second;
      } else {
        throw LoadError(path + "/kind", "unknown structure kind '" + kind + "'");
      }
    } catch (const LoadError&) {
      throw;
    } catch (const Error& e) {
      throw LoadError(path, e.what());
    }
    if (j.contains("b_field")) out.b = form(j["b_field"], 2, path + "/b_field");
    if (global_b) out.b = out.b ? *out.b + *global_b : *global_b;
    try {
      out.J = out.b ? b_transform_structure(*out.b, out.base) : out.base;
    } catch (const Error& e) {
      throw LoadError(path + "/b_field", e.what());
    }
    return out;
  }

  MomentData moment(const ojson& j, const TorusAction& act, const std::string& path) const {
    require_object(j, path);
    const ojson& f = member(j, "f", path);
    if (!f.is_array() || f.size() != act.rank())
      throw LoadError(path + "/f", "expected one function per generator (" + std::to_string(act.rank()) + ")");
    MomentData md;
    for (std::size_t i = 0; i < f.size(); ++i) md.f.push_back(expr(f[i], path + "/f/" + std::to_string(i)));
    if (j.contains("alpha") && j.contains("alpha_exact"))
      throw LoadError(path, "give either 'alpha' or 'alpha_exact', not both");
    if (j.contains("alpha")) {
      const ojson& a = j["alpha"];
      if (!a.is_array() || a.size() != act.rank()) throw LoadError(path + "/alpha", "expected one 1-form per generator");
      for (std::size_t i = 0; i < a.size(); ++i) md.alpha.push_back(form(a[i], 1, path + "/alpha/" + std::to_string(i)));
    } else if (j.contains("alpha_exact")) {
      const ojson& a = j["alpha_exact"];
      if (!a.is_array() || a.size() != act.rank())
        throw LoadError(path + "/alpha_exact", "expected one function per generator");
      for (std::size_t i = 0; i < a.size(); ++i)
        md.alpha.push_back(exterior_d(expr(a[i], path + "/alpha_exact/" + std::to_string(i))));
    } else {
      for (std::size_t i = 0; i < act.rank(); ++i) md.alpha.emplace_back(chart_, 1);
    }
    return md;
  }

  Connection connection(const ojson& j, const Scenario& s, const std::string& path) const {
    if (!s.action) throw LoadError(path, "a connection needs an action");
    if (!j.is_array() || j.size() != s.action->rank())
      throw LoadError(path, "expected one 1-form per generator");
    Connection c;
    for (std::size_t i = 0; i < j.size(); ++i) c.theta.push_back(form(j[i], 1, path + "/" + std::to_string(i)));
    CheckOutcome ok = check_connection(c, *s.action);
    if (!ok.passed) throw LoadError(path, "not a connection: " + ok.witnesses.front().location);
    return c;
  }

  EvalPoint point(const ojson& j, const std::string& path) const {
    if (!j.is_array() || j.size() != chart_->dim())
      throw LoadError(path, "expected " + std::to_string(chart_->dim()) + " coordinate values");
    std::vector<Rational> v;
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(rational(j[i], path + "/" + std::to_string(i)));
    try {
      return EvalPoint(chart_, std::move(v));
    } catch (const Error& e) {
      throw LoadError(path, e.what());
    }
  }

  static void validate(const Scenario& s) {
    auto needs = [&](const std::string& check, bool ok, const std::string& what) {
      if (std::find(s.checks.begin(), s.checks.end(), check) != s.checks.end() && !ok)
        throw LoadError("/checks", "check '" + check + "' needs " + what);
    };
    const bool has_moment = s.action && s.moment;
    bool has_b = false;
    for (const auto& st : s.structures) has_b = has_b || st.b.has_value();
    needs("twist_flip", has_b, "a B-field");
    needs("gk_pair", s.gk_pair.has_value(), "gk_pair");
    needs("equivariant_closure", has_moment, "an action and moment data");
    needs("moment_map", has_moment, "an action and moment data");
    needs("moment_b_transform", has_moment && s.invariant_b.has_value(), "moment data and invariant_b");
    needs("gamma", has_moment && s.connection.has_value(), "moment data and a connection");
    needs("level_closure", has_moment && s.level.size() == s.action->rank(), "moment data and a level");
    needs("df_perp_closure", has_moment, "moment data");
    const bool fibers = has_moment && s.level.size() == s.action->rank() && !s.sample_points.empty();
    needs("reduction", fibers, "moment data, a level and sample points");
    needs("gk_reduction", fibers && s.gk_pair.has_value(), "a reduction setup and gk_pair");
    needs("basic_b_commute", fibers && s.basic_b.has_value(), "a reduction setup and basic_b");
    needs("connection_independence", fibers && s.connection && s.alt_connection,
          "a reduction setup and two connections");
    if (s.invariant_b && s.action && !s.action->preserves(*s.invariant_b))
      throw LoadError("/invariant_b", "form is not invariant under the action");
    if (s.basic_b && s.action && !is_basic(*s.basic_b, *s.action))
      throw LoadError("/basic_b", "form is not basic");
    if (s.moment && !s.level.empty() && s.level.size() != s.action->rank())
      throw LoadError("/level", "expected one value per generator");
    for (const auto& np : s.sample_points)
      if (s.moment && s.level.size() == s.action->rank())
        for (std::size_t i = 0; i < s.level.size(); ++i)
          if (!(s.moment->f[i].evaluate(np.point) == Scalar(s.level[i])))
            throw LoadError("/sample_points/" + np.name, "point is off the level set");
  }
};

}  // namespace detail

inline Scenario load_scenario_json(const ojson& root) {
  try {
    return detail::Loader(root).load();
  } catch (const ojson::exception& e) {
    throw LoadError("", std::string("malformed scenario: ") + e.what());
  }
}

inline Scenario load_scenario_text(const std::string& text) {
  ojson root;
  try {
    root = ojson::parse(text);
  } catch (const ojson::parse_error& e) {
    throw LoadError("", std::string("JSON parse error at byte ") + std::to_string(e.byte) + ": " + e.what());
  }
  return load_scenario_json(root);
}

inline Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("", "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return load_scenario_text(ss.str());
}

}  // namespace tgk
