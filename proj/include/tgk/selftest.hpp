#pragma once

// The full catalog plus a fixed-seed sweep of algebraic identities.

#include <future>
#include <random>
#include <string>
#include <vector>

#include "tgk/catalog.hpp"
#include "tgk/runner.hpp"

namespace tgk {

namespace detail {

class IdentitySweep {
public:
  explicit IdentitySweep(unsigned seed) : rng_(seed) {}

  Report run() {
    Report rep;
    rep.scenario = "identities";
    rep.digest = fnv1a_hex("identities:" + std::to_string(kRounds));
    auto c = make_chart({{"x", CoordKind::affine}, {"y", CoordKind::periodic}, {"z", CoordKind::affine}});
    auto tc = make_chart({{"x1", CoordKind::periodic},
                          {"x2", CoordKind::periodic},
                          {"t1", CoordKind::affine},
                          {"t2", CoordKind::affine}});
    TorusAction act(tc, {VectorField::coordinate(tc, 0), VectorField::coordinate(tc, 1)});
    bool d2 = true, leibniz = true, bracket = true, dg2 = true, courant = true, pairing_inv = true, group = true;
    for (int t = 0; t < kRounds; ++t) {
      std::size_t p = pick(0, 2);
      DiffForm a = form(c, p), b = form(c, pick(0, 1));
      d2 = d2 && exterior_d(exterior_d(a)).is_zero();
      DiffForm rhs = wedge(exterior_d(a), b) + (p % 2 ? -wedge(a, exterior_d(b)) : wedge(a, exterior_d(b)));
      leibniz = leibniz && exterior_d(wedge(a, b)) == rhs;
      VectorField X = field(c), Y = field(c);
      DiffForm w = form(c, pick(1, 3));
      bracket = bracket && interior(lie_bracket(X, Y), w) ==
                               lie_derivative(X, interior(Y, w)) - interior(Y, lie_derivative(X, w));

      EquivariantForm eta(tc, 2);
      eta.add({0, 0}, t_only(form(tc, 3)));
      eta.add({1, 0}, t_only(form(tc, 1)));
      eta.add({0, 1}, t_only(form(tc, 1)));
      dg2 = dg2 && cartan_d(cartan_d(eta, act), act).is_zero();

      DiffForm B = form(c, 2, true), H = exterior_d(form(c, 2, true));
      GenSection u{field(c), form(c, 1)}, v{field(c), form(c, 1)};
      GenSection lhs = courant_bracket(b_transform_section(B, u), b_transform_section(B, v), H);
      GenSection rhs2 = b_transform_section(B, courant_bracket(u, v, H + exterior_d(B)));
      courant = courant && lhs.vec == rhs2.vec && lhs.form == rhs2.form;
      pairing_inv = pairing_inv && pairing(b_transform_section(B, u), b_transform_section(B, v)) == pairing(u, v);

      MomentData md{{t_only(form(tc, 0)).as_function(), t_only(form(tc, 0)).as_function()},
                    {t_only(form(tc, 1)), t_only(form(tc, 1))}};
      DiffForm B1 = t_only(form(tc, 2, true)), B2 = t_only(form(tc, 2, true));
      group = group && moment_b_transform(B1 + B2, md, act) ==
                           moment_b_transform(B2, moment_b_transform(B1, md, act), act);
    }
    auto add = [&](const std::string& n, bool ok) { rep.verdicts.push_back({n, ok ? "pass" : "fail", ""}); };
    add("d^2 = 0", d2);
    add("graded Leibniz", leibniz);
    add("i_[X,Y] = L_X i_Y - i_Y L_X", bracket);
    add("d_G^2 = 0 on invariant cochains", dg2);
    add("[e^B u, e^B v]_H = e^B [u, v]_(H + dB)", courant);
    add("e^B preserves the pairing", pairing_inv);
    add("moment_b_transform group law", group);
    rep.quantities["rounds"] = kRounds;
    return rep;
  }

private:
  static constexpr int kRounds = 24;
  std::mt19937 rng_;

  std::size_t pick(int lo, int hi) { return static_cast<std::size_t>(lo + static_cast<int>(rng_() % (hi - lo + 1))); }

  int small(int lo, int hi) { return lo + static_cast<int>(rng_() % static_cast<unsigned>(hi - lo + 1)); }

  RingElement element(const ChartPtr& chart, bool real) {
    RingElement r = RingElement::zero(chart);
    const int terms = small(0, 2);
    for (int t = 0; t < terms; ++t) {
      Monomial m(chart->dim());
      for (std::size_t i = 0; i < chart->dim(); ++i) m.exps[i] = chart->is_periodic(i) ? small(-2, 2) : small(0, 2);
      Scalar s(Rational(small(-3, 3), small(1, 3)), real ? Rational(0) : Rational(small(-2, 2), small(1, 2)));
      RingElement term = RingElement::from_terms(chart, {{m, s}});
      r += real ? term + term.conj() : term;
    }
    return r;
  }

  DiffForm form(const ChartPtr& chart, std::size_t degree, bool real = false) {
    DiffForm w(chart, degree);
    if (degree > chart->dim()) return w;
    const int terms = small(0, 3);
    for (int t = 0; t < terms; ++t) {
      std::vector<std::size_t> idx(chart->dim());
      for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
      std::shuffle(idx.begin(), idx.end(), rng_);
      DiffForm term = DiffForm::function(element(chart, real));
      for (std::size_t k = 0; k < degree; ++k) term = wedge(term, DiffForm::coordinate(chart, idx[k]));
      w += term;
    }
    return w;
  }

  VectorField field(const ChartPtr& chart) {
    VectorField v(chart);
    for (std::size_t j = 0; j < chart->dim(); ++j) v[j] = element(chart, false);
    return v;
  }

  /// Drops the periodic dependence of every coefficient (invariance under translations).
  static DiffForm t_only(const DiffForm& w) {
    const auto& chart = w.chart();
    DiffForm out(chart, w.degree());
    for (const auto& [idx, coeff] : w.coeffs()) {
      RingElement r = RingElement::zero(chart);
      for (const auto& [m, s] : coeff.terms()) {
        Monomial m2 = m;
        for (std::size_t j = 0; j < chart->dim(); ++j)
          if (chart->is_periodic(j)) m2.exps[j] = 0;
        r += RingElement::from_terms(chart, {{m2, s}});
      }
      out.add(idx, r);
    }
    return out;
  }
};

}  // namespace detail

struct SelftestResult {
  std::vector<Report> reports;
  std::vector<std::pair<std::string, std::vector<std::string>>> mismatches;

  bool ok() const {
    for (const auto& [name, m] : mismatches)
      if (!m.empty()) return false;
    return true;
  }

  ojson to_json() const {
    ojson j;
    j["version"] = kToolVersion;
    j["reports"] = ojson::array();
    for (const auto& r : reports) j["reports"].push_back(r.to_json());
    j["expectations"] = ojson::array();
    for (const auto& [name, m] : mismatches) j["expectations"].push_back({{"scenario", name}, {"mismatches", m}});
    j["status"] = ok() ? "pass" : "fail";
    return j;
  }
};

/// Every built-in scenario against its declared expectations, then the identity sweep.
inline SelftestResult run_selftest() {
  std::vector<std::future<std::pair<Report, std::vector<std::string>>>> jobs;
  for (const auto& e : catalog())
    jobs.push_back(std::async(std::launch::async, [&e] {
      Scenario s = load_catalog_scenario(e.name);
      Report r = run_checks(s);
      return std::make_pair(r, expectation_mismatches(s, r));
    }));
  SelftestResult out;
  for (auto& j : jobs) {
    auto [r, m] = j.get();
    out.mismatches.emplace_back(r.scenario, m);
    out.reports.push_back(std::move(r));
  }
  Report ids = detail::IdentitySweep(20240601u).run();
  std::vector<std::string> m;
  for (const auto& v : ids.verdicts)
    if (v.status != "pass") m.push_back(v.check + ": expected pass, got " + v.status);
  out.mismatches.emplace_back(ids.scenario, m);
  out.reports.push_back(std::move(ids));
  return out;
}

}  // namespace tgk
