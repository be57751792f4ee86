#pragma once

// Runs a scenario's checks and assembles a deterministic report.

#include <algorithm>
#include <functional>
#include <future>
#include <string>
#include <utility>
#include <vector>

#include "tgk/scenario.hpp"

namespace tgk {

inline constexpr const char* kToolVersion = "1.0.0";

struct Verdict {
  std::string check;
  std::string status;  // pass | fail | skipped
  std::string reason;
};

struct ReportWitness {
  std::string check;
  std::string location;
  std::string value;
};

struct Report {
  std::string version = kToolVersion;
  std::string scenario;
  std::string digest;
  std::vector<Verdict> verdicts;
  ojson quantities = ojson::object();
  std::vector<ReportWitness> witnesses;

  bool all_passed() const {
    return std::none_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.status == "fail"; });
  }

  const Verdict* find(const std::string& check) const {
    for (const auto& v : verdicts)
      if (v.check == check) return &v;
    return nullptr;
  }

  ojson to_json() const {
    ojson j;
    j["version"] = version;
    j["scenario"] = {{"name", scenario}, {"digest", digest}};
    j["verdicts"] = ojson::array();
    for (const auto& v : verdicts) {
      ojson e{{"check", v.check}, {"status", v.status}};
      if (!v.reason.empty()) e["reason"] = v.reason;
      j["verdicts"].push_back(e);
    }
    j["quantities"] = quantities;
    j["witnesses"] = ojson::array();
    for (const auto& w : witnesses)
      j["witnesses"].push_back({{"check", w.check}, {"location", w.location}, {"value", w.value}});
    return j;
  }

  std::string text() const {
    std::string s = "scenario " + scenario + " (digest " + digest + ", version " + version + ")\n";
    for (const auto& v : verdicts) {
      std::string status = v.status;
      status.resize(8, ' ');
      s += "  " + status + v.check + (v.reason.empty() ? "" : "  (" + v.reason + ")") + "\n";
    }
    if (!quantities.empty()) {
      s += "quantities:\n";
      for (const auto& [k, val] : quantities.items()) s += "  " + k + " = " + val.dump() + "\n";
    }
    if (!witnesses.empty()) {
      s += "witnesses:\n";
      for (const auto& w : witnesses) s += "  [" + w.check + "] " + w.location + ": " + w.value + "\n";
    }
    return s;
  }
};

/// Declared expectations that the report does not meet; undeclared verdicts must pass.
inline std::vector<std::string> expectation_mismatches(const Scenario& s, const Report& r) {
  std::vector<std::string> out;
  for (const auto& [check, status] : s.expect) {
    const Verdict* v = r.find(check);
    if (!v) out.push_back(check + ": expected " + status + ", missing");
    else if (v->status != status) out.push_back(check + ": expected " + status + ", got " + v->status);
  }
  for (const auto& v : r.verdicts) {
    bool declared = std::any_of(s.expect.begin(), s.expect.end(), [&](const auto& e) { return e.first == v.check; });
    if (!declared && v.status != "pass") out.push_back(v.check + ": expected pass, got " + v.status);
  }
  return out;
}

/// One space-separated string per matrix row.
inline std::vector<std::string> matrix_rows(const CMatrix& m) {
  std::vector<std::string> out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::string row;
    for (std::size_t c = 0; c < m.cols(); ++c) row += (c ? " " : "") + m(r, c).str();
    out.push_back(row);
  }
  return out;
}

namespace detail {

/// Partial report for one check or one fiber, merged in a fixed order.
struct Partial {
  std::vector<Verdict> verdicts;
  std::vector<std::pair<std::string, ojson>> quantities;
  std::vector<ReportWitness> witnesses;

  static constexpr std::size_t kMaxWitnesses = 4;

  void record(const std::string& check, const CheckOutcome& o, const std::string& reason = "") {
    verdicts.push_back({check, o.passed ? "pass" : "fail", reason});
    for (std::size_t i = 0; i < o.witnesses.size() && i < kMaxWitnesses; ++i)
      witnesses.push_back({check, o.witnesses[i].location, o.witnesses[i].value});
  }

  void verdict(const std::string& check, bool ok, const std::string& location = "", const std::string& value = "") {
    verdicts.push_back({check, ok ? "pass" : "fail", ""});
    if (!ok && !location.empty()) witnesses.push_back({check, location, value});
  }

  void error(const std::string& check, const std::exception& e) {
    verdicts.push_back({check, "fail", "error"});
    witnesses.push_back({check, "error", e.what()});
  }

  void quantity(const std::string& key, ojson v) { quantities.emplace_back(key, std::move(v)); }

  void append(Partial&& o) {
    for (auto& v : o.verdicts) verdicts.push_back(std::move(v));
    for (auto& q : o.quantities) quantities.push_back(std::move(q));
    for (auto& w : o.witnesses) witnesses.push_back(std::move(w));
  }
};

/// Runs `fn` over the items concurrently and returns the results in item order.
template <class T, class Fn>
std::vector<Partial> parallel_map(const std::vector<T>& items, Fn fn) {
  std::vector<std::future<Partial>> futures;
  for (const auto& item : items) futures.push_back(std::async(std::launch::async, [&fn, &item] { return fn(item); }));
  std::vector<Partial> out;
  for (auto& f : futures) out.push_back(f.get());
  return out;
}

/// Structures and moment data with the moment one-form removed, ready for reduction.
struct FiberSetup {
  GenStructure J1;
  std::optional<GenStructure> J2;
  MomentData md;
  DiffForm gamma;
};

inline bool has_moment_form(const MomentData& md) {
  return std::any_of(md.alpha.begin(), md.alpha.end(), [](const DiffForm& a) { return !a.is_zero(); });
}

inline FiberSetup fiber_setup(const Scenario& s, const Connection* theta) {
  FiberSetup fs;
  fs.J1 = s.structure(s.primary).J;
  if (s.gk_pair) fs.J2 = s.structure(s.gk_pair->second).J;
  fs.md = *s.moment;
  fs.gamma = DiffForm(s.chart, 2);
  if (!has_moment_form(fs.md) && !theta) return fs;
  if (!theta) {
    if (!s.connection) throw PreconditionError("nonzero moment one-form and no connection to remove it");
    theta = &*s.connection;
  }
  GammaTransform gt = trivialize_moment_form(fs.J1, fs.md, *theta, *s.action);
  fs.gamma = gt.gamma;
  fs.J1 = gt.J;
  fs.md = gt.md;
  if (fs.J2) fs.J2 = b_transform_structure(-gt.gamma, *fs.J2);
  return fs;
}

class Runner {
public:
  explicit Runner(const Scenario& s) : s_(s) {}

  Report run() {
    Report rep;
    rep.scenario = s_.name;
    rep.digest = fnv1a_hex(s_.source.dump());
    Partial all;
    for (const auto& name : known_checks()) {
      if (std::find(s_.checks.begin(), s_.checks.end(), name) == s_.checks.end()) continue;
      all.append(run_check(name));
    }
    rep.verdicts = std::move(all.verdicts);
    for (auto& [k, v] : all.quantities) rep.quantities[k] = std::move(v);
    rep.witnesses = std::move(all.witnesses);
    return rep;
  }

  /// Reduction data for a single named point, including the reduced matrices.
  Report reduce_point(const std::string& point_name) {
    Report rep;
    rep.scenario = s_.name;
    rep.digest = fnv1a_hex(s_.source.dump());
    if (!s_.moment || s_.level.size() != s_.action->rank())
      throw PreconditionError("scenario has no moment data and level");
    NamedPoint np{point_name, s_.point(point_name)};
    Partial p = guarded("reduction[" + point_name + "]", [&] { return reduce_fiber(fiber_setup(s_, nullptr), np, true); });
    if (s_.gk_pair) {
      Partial g = guarded("gk_reduction[" + point_name + "]",
                          [&] { return gk_fiber(fiber_setup(s_, nullptr), np, true); });
      p.append(std::move(g));
    }
    rep.verdicts = std::move(p.verdicts);
    for (auto& [k, v] : p.quantities) rep.quantities[k] = std::move(v);
    rep.witnesses = std::move(p.witnesses);
    return rep;
  }

private:
  const Scenario& s_;

  template <class Fn>
  static Partial guarded(const std::string& check, Fn fn) {
    try {
      return fn();
    } catch (const std::exception& e) {
      Partial p;
      p.error(check, e);
      return p;
    }
  }

  Partial run_check(const std::string& name) {
    if (name == "algebraic") return per_structure(name, [](const NamedStructure& st, Partial& p, const std::string& tag) {
        p.record(tag, check_algebraic(st.J));
      });
    if (name == "integrability")
      return per_structure(name, [this](const NamedStructure& st, Partial& p, const std::string& tag) {
        IntegrabilityReport r = check_integrable(st.J, s_.points());
        p.record(tag, r);
        p.quantity(tag + ".pairs", r.pairs_checked);
      });
    if (name == "twist_flip") return twist_flip();
    if (name == "types") return types();
    if (name == "gk_pair") return guarded(name, [&] {
        Partial p;
        p.record(name, check_gk_pair(s_.structure(s_.gk_pair->first).J, s_.structure(s_.gk_pair->second).J,
                                     s_.points()));
        return p;
      });
    if (name == "equivariant_closure") return guarded(name, [&] { return equivariant_closure(); });
    if (name == "moment_map") return guarded(name, [&] {
        Partial p;
        MomentReport r = check_moment_map(s_.structure(s_.primary).J, *s_.action, *s_.moment);
        p.record(name, r);
        p.quantity("moment_map.parts",
                   {{"in_eigenbundle", r.in_eigenbundle}, {"equivariant", r.equivariant}, {"preserved", r.preserved}});
        return p;
      });
    if (name == "moment_b_transform") return guarded(name, [&] { return moment_b(); });
    if (name == "gamma") return guarded(name, [&] { return gamma(); });
    if (name == "level_closure") return guarded(name, [&] {
        return closure(name, level_closure_property(s_.structure(s_.primary).J, *s_.action, *s_.moment, s_.level));
      });
    if (name == "df_perp_closure") return guarded(name, [&] {
        return closure(name, df_perp_frame_closure(s_.structure(s_.primary).J, *s_.action, *s_.moment));
      });
    if (name == "reduction") return per_point(name, [this](const FiberSetup& fs, const NamedPoint& np) {
        return reduce_fiber(fs, np, false);
      });
    if (name == "gk_reduction") return per_point(name, [this](const FiberSetup& fs, const NamedPoint& np) {
        return gk_fiber(fs, np, false);
      });
    if (name == "basic_b_commute") return per_point(name, [this](const FiberSetup& fs, const NamedPoint& np) {
        return basic_b_fiber(fs, np);
      });
    if (name == "connection_independence") return connection_independence();
    throw PreconditionError("unknown check " + name);
  }

  template <class Fn>
  Partial per_structure(const std::string& name, Fn fn) {
    Partial p;
    for (const auto& st : s_.structures) {
      std::string tag = name + "[" + st.name + "]";
      try {
        fn(st, p, tag);
      } catch (const std::exception& e) {
        p.error(tag, e);
      }
    }
    return p;
  }

  Partial twist_flip() {
    Partial p;
    for (const auto& st : s_.structures) {
      if (!st.b) continue;
      const std::string tag = "twist_flip[" + st.name + "]";
      const DiffForm& H = st.base.twist();
      DiffForm dB = exterior_d(*st.b);
      RingMatrix mat = st.J.mat();
      const std::vector<std::pair<std::string, DiffForm>> twists{{"H", H}, {"H + dB", H + dB}, {"H - dB", H - dB}};
      for (const auto& [label, twist] : twists) {
        const std::string check = tag + ": " + label;
        try {
          p.record(check, check_integrable(GenStructure(mat, twist), s_.points()));
        } catch (const std::exception& e) {
          p.error(check, e);
        }
      }
      p.quantity(tag + ".dB", dB.str());
    }
    return p;
  }

  Partial types() {
    Partial p;
    for (const auto& st : s_.structures) {
      const std::string tag = "types[" + st.name + "]";
      try {
        ojson t = ojson::object();
        for (const auto& np : s_.sample_points) t[np.name] = type_at(st.J, np.point);
        p.verdicts.push_back({tag, "pass", ""});
        p.quantity(tag, t);
      } catch (const std::exception& e) {
        p.error(tag, e);
      }
    }
    return p;
  }

  Partial equivariant_closure() {
    Partial p;
    const DiffForm& H = s_.structure(s_.primary).J.twist();
    ClosureReport direct = is_equivariantly_closed(H, s_.moment->alpha, *s_.action);
    p.record("equivariant_closure", direct);
    bool via_cartan = false;
    try {
      via_cartan = cartan_d(EquivariantForm::three_form_with_moment(H, s_.moment->alpha), *s_.action).is_zero();
    } catch (const PreconditionError&) {
      via_cartan = false;  // non-invariant input is not a Cartan cocycle
    }
    p.verdict("cartan_agreement", via_cartan == direct.passed, "d_G(H + alpha) = 0",
              via_cartan ? "true" : "false");
    p.quantity("equivariant_closure.parts", {{"closed_twist", direct.closed_twist},
                                             {"contraction", direct.contraction},
                                             {"antisymmetry", direct.antisymmetry},
                                             {"cartan_closed", via_cartan}});
    return p;
  }

  Partial moment_b() {
    Partial p;
    const DiffForm& B = *s_.invariant_b;
    const GenStructure& J = s_.structure(s_.primary).J;
    MomentData md2 = moment_b_transform(B, *s_.moment, *s_.action);
    p.record("moment_b_transform", check_moment_map(b_transform_structure(B, J), *s_.action, md2));
    DiffForm B2 = s_.basic_b ? *s_.basic_b : B;
    MomentData once = moment_b_transform(B + B2, *s_.moment, *s_.action);
    MomentData twice = moment_b_transform(B2, md2, *s_.action);
    p.verdict("moment_b_group_law", once == twice, "alpha", "composition differs");
    ojson alpha = ojson::array();
    for (const auto& a : md2.alpha) alpha.push_back(a.str());
    p.quantity("moment_b_transform.alpha", alpha);
    return p;
  }

  Partial gamma() {
    Partial p;
    const DiffForm& H = s_.structure(s_.primary).J.twist();
    DiffForm G = gamma_from_connection(H, *s_.moment, *s_.connection, *s_.action);
    CheckOutcome contraction;
    for (std::size_t i = 0; i < s_.action->rank(); ++i) {
      DiffForm r = interior((*s_.action)[i], G) - s_.moment->alpha[i];
      if (!r.is_zero()) contraction.fail("i_xi" + std::to_string(i + 1) + " Gamma - alpha", clip(r.str()));
    }
    p.record("gamma: contraction", contraction);
    DiffForm reduced_twist = H + exterior_d(G);
    p.verdict("gamma: basic twist", is_basic(reduced_twist, *s_.action), "H + dGamma", clip(reduced_twist.str()));
    p.quantity("gamma", G.str());
    p.quantity("gamma.twist", reduced_twist.str());
    if (s_.alt_connection) {
      DiffForm G2 = gamma_from_connection(H, *s_.moment, *s_.alt_connection, *s_.action);
      DiffForm diff = G - G2;
      p.verdict("gamma: connection change basic", is_basic(diff, *s_.action), "Gamma - Gamma'", clip(diff.str()));
      p.quantity("gamma.alt", G2.str());
    }
    return p;
  }

  static Partial closure(const std::string& name, const ClosureCheckReport& r) {
    Partial p;
    if (r.skipped) {
      p.verdicts.push_back({name, "skipped", r.reason});
    } else {
      p.record(name, r, r.reason);
    }
    p.quantity(name + ".sections", r.sections);
    p.quantity(name + ".pairs", r.pairs);
    return p;
  }

  template <class Fn>
  Partial per_point(const std::string& name, Fn fn) {
    FiberSetup fs;
    try {
      fs = fiber_setup(s_, nullptr);
    } catch (const std::exception& e) {
      Partial p;
      p.error(name, e);
      return p;
    }
    auto parts = parallel_map(s_.sample_points, [&](const NamedPoint& np) {
      return guarded(name + "[" + np.name + "]", [&] { return fn(fs, np); });
    });
    Partial out;
    for (auto& part : parts) out.append(std::move(part));
    return out;
  }

  FiberData extract(const GenStructure& J, const MomentData& md, const NamedPoint& np) const {
    return fiber_extract(J, *s_.action, md, s_.level, np.point);
  }

  static ojson rows(const CMatrix& m) { return matrix_rows(m); }

  Partial reduce_fiber(const FiberSetup& fs, const NamedPoint& np, bool detailed) const {
    Partial p;
    const std::string tag = "[" + np.name + "]";
    FiberData fd = extract(fs.J1, fs.md, np);
    ReducedFiber rf = dirac_reduce_fiber(fd);
    p.record("reduction" + tag, rf.checks);
    bool agree = false;
    if (rf.checks.passed) agree = two_step_reduce(fd, rf.frame) == rf.J;
    p.verdict("two_step" + tag, agree, "J~", "one-step and two-step reductions differ");
    TypeReport tr = reduced_type_check(fd, rf);
    p.record("reduced_type" + tag, tr);
    ojson q{{"dim", 2 * rf.frame.m}, {"type", tr.upstairs}, {"reduced_type", tr.reduced}};
    if (detailed) {
      q["J"] = rows(rf.J);
      q["T"] = rows(rf.frame.T);
      q["gamma"] = fs.gamma.str();
    }
    p.quantity("reduction" + tag, q);
    return p;
  }

  Partial gk_fiber(const FiberSetup& fs, const NamedPoint& np, bool detailed) const {
    Partial p;
    const std::string tag = "[" + np.name + "]";
    FiberData fd = extract(fs.J1, fs.md, np);
    CMatrix J2 = fs.J2->mat().evaluate(np.point);
    GkReducedFiber gk = gk_reduce_fiber(fd, J2);
    p.record("gk_reduction" + tag, gk.checks);
    TypeFormulaReport tf = gk_type_formula_check(fd, J2, gk);
    p.record("type_formula" + tag, tf);
    ojson q{{"type1", tf.type1},       {"type1_reduced", tf.type1_reduced}, {"type2", tf.type2},
            {"type2_reduced", tf.type2_reduced}, {"k", tf.k},             {"intersection", tf.intersection},
            {"predicted", tf.predicted}};
    if (detailed) q["J2"] = rows(gk.J2);
    p.quantity("type_formula" + tag, q);
    return p;
  }

  Partial basic_b_fiber(const FiberSetup& fs, const NamedPoint& np) const {
    Partial p;
    const DiffForm& B = *s_.basic_b;
    ReducedFiber plain = dirac_reduce_fiber(extract(fs.J1, fs.md, np));
    ReducedFiber twisted = dirac_reduce_fiber(extract(b_transform_structure(B, fs.J1), fs.md, np));
    CMatrix Bt = reduce_two_form(two_form_matrix(B).evaluate(np.point), plain.frame);
    bool ok = plain.checks.passed && twisted.checks.passed &&
              twisted.J == fiber_b_matrix(Bt) * plain.J * fiber_b_matrix(-Bt);
    p.verdict("basic_b_commute[" + np.name + "]", ok, "reduce(e^B J) vs e^B~ reduce(J)", "matrices differ");
    return p;
  }

  Partial connection_independence() {
    const std::string name = "connection_independence";
    FiberSetup a, b;
    try {
      a = fiber_setup(s_, &*s_.connection);
      b = fiber_setup(s_, &*s_.alt_connection);
    } catch (const std::exception& e) {
      Partial p;
      p.error(name, e);
      return p;
    }
    DiffForm diff = a.gamma - b.gamma;
    auto parts = parallel_map(s_.sample_points, [&](const NamedPoint& np) {
      const std::string tag = name + "[" + np.name + "]";
      return guarded(tag, [&] {
        Partial p;
        ReducedFiber r1 = dirac_reduce_fiber(extract(a.J1, a.md, np));
        ReducedFiber r2 = dirac_reduce_fiber(extract(b.J1, b.md, np));
        CMatrix Dt = reduce_two_form(two_form_matrix(diff).evaluate(np.point), r1.frame);
        bool ok = r1.checks.passed && r2.checks.passed && r2.J == fiber_b_matrix(Dt) * r1.J * fiber_b_matrix(-Dt);
        p.verdict(tag, ok, "J~' vs e^(Gamma - Gamma')~ J~", "matrices differ");
        return p;
      });
    });
    Partial out;
    out.verdict(name + ": difference basic", is_basic(diff, *s_.action), "Gamma - Gamma'", clip(diff.str()));
    for (auto& part : parts) out.append(std::move(part));
    return out;
  }
};

}  // namespace detail

inline Report run_checks(const Scenario& s) { return detail::Runner(s).run(); }

inline Report reduce_at(const Scenario& s, const std::string& point) { return detail::Runner(s).reduce_point(point); }

}  // namespace tgk
