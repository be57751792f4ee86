#pragma once

// Built-in scenarios, stored as scenario-file text so that `catalog --export`
// writes exactly what the loader reads.

#include <string>
#include <utility>
#include <vector>

#include "tgk/scenario.hpp"

namespace tgk {

struct CatalogEntry {
  std::string name;
  std::string text;
};

inline const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries{
      {"symplectic_T4", R"json({
  "name": "symplectic_T4",
  "description": "untwisted symplectic structure on the 4-torus",
  "chart": [
    {"name": "x1", "kind": "periodic"}, {"name": "x2", "kind": "periodic"},
    {"name": "x3", "kind": "periodic"}, {"name": "x4", "kind": "periodic"}
  ],
  "structures": {
    "J": {"kind": "symplectic", "omega": [[["x1", "x2"], "1"], [["x3", "x4"], "1"]]}
  },
  "sample_points": {"p0": [0, 0, 0, 0], "p1": [1, 2, 3, 0]},
  "checks": ["algebraic", "integrability", "types"]
})json"},
      {"complex_R2", R"json({
  "name": "complex_R2",
  "description": "standard complex structure on the plane",
  "chart": [{"name": "x", "kind": "affine"}, {"name": "y", "kind": "affine"}],
  "structures": {
    "J": {"kind": "complex", "matrix": [["0", "-1"], ["1", "0"]]}
  },
  "sample_points": {"p0": ["0", "0"], "p1": ["1/2", "-3"]},
  "checks": ["algebraic", "integrability", "types"]
})json"},
      {"btwist_T4", R"json({
  "name": "btwist_T4",
  "description": "B-transform of the symplectic 4-torus by a non-closed B",
  "chart": [
    {"name": "x1", "kind": "periodic"}, {"name": "x2", "kind": "periodic"},
    {"name": "x3", "kind": "periodic"}, {"name": "x4", "kind": "periodic"}
  ],
  "structures": {
    "J": {
      "kind": "symplectic",
      "omega": [[["x1", "x2"], "1"], [["x3", "x4"], "1"]],
      "b_field": [[["x1", "x2"], "cos(x3)"], [["x3", "x4"], "sin(x1)"]]
    }
  },
  "sample_points": {"p0": [0, 0, 0, 0], "p1": [1, 1, 2, 3]},
  "checks": ["algebraic", "integrability", "twist_flip", "types"],
  "expect": {"twist_flip[J]: H": "fail", "twist_flip[J]: H + dB": "fail", "twist_flip[J]: H - dB": "pass"}
})json"},
      {"kahler_C2_circle", R"json({
  "name": "kahler_C2_circle",
  "description": "flat Kahler C^2 with the diagonal circle, reduced at the unit sphere",
  "chart": [
    {"name": "x1", "kind": "affine"}, {"name": "y1", "kind": "affine"},
    {"name": "x2", "kind": "affine"}, {"name": "y2", "kind": "affine"}
  ],
  "structures": {
    "J1": {"kind": "symplectic", "omega": [[["y1", "x1"], "1"], [["y2", "x2"], "1"]]},
    "J2": {
      "kind": "complex",
      "matrix": [["0", "-1", "0", "0"], ["1", "0", "0", "0"], ["0", "0", "0", "-1"], ["0", "0", "1", "0"]]
    }
  },
  "gk_pair": ["J1", "J2"],
  "action": [{"x1": "-y1", "y1": "x1", "x2": "-y2", "y2": "x2"}],
  "moment": {"f": ["1/2*(x1^2 + y1^2 + x2^2 + y2^2)"]},
  "level": ["1/2"],
  "sample_points": {
    "e1": ["1", "0", "0", "0"],
    "e2": ["0", "1", "0", "0"],
    "e3": ["0", "0", "1", "0"],
    "e4": ["0", "0", "0", "1"],
    "q1": ["3/5", "4/5", "0", "0"],
    "q2": ["3/5", "0", "4/5", "0"],
    "q3": ["1/2", "1/2", "1/2", "1/2"]
  },
  "invariant_b": [[["x2", "y2"], "x1^2 + y1^2"], [["x1", "y1"], "x1*y2 - y1*x2"]],
  "basic_b": [
    [["x1", "y1"], "2*x1*y2 - 2*y1*x2"],
    [["x1", "x2"], "2*x1^2"],
    [["x1", "y2"], "2*x1*y1"],
    [["y1", "x2"], "2*x1*y1"],
    [["y1", "y2"], "2*y1^2"]
  ],
  "checks": [
    "algebraic", "integrability", "types", "gk_pair", "equivariant_closure", "moment_map",
    "moment_b_transform", "level_closure", "df_perp_closure", "reduction", "gk_reduction", "basic_b_commute"
  ],
  "expect": {"level_closure": "skipped"}
})json"},
      {"gamma_torus_cylinder", R"json({
  "name": "gamma_torus_cylinder",
  "description": "T^2 translations on (S^1 x R)^2 with a moment one-form from an invariant B",
  "chart": [
    {"name": "x1", "kind": "periodic"}, {"name": "x2", "kind": "periodic"},
    {"name": "t1", "kind": "affine"}, {"name": "t2", "kind": "affine"}
  ],
  "structures": {
    "J": {"kind": "symplectic", "omega": [[["x1", "t1"], "1"], [["x2", "t2"], "1"]]}
  },
  "b_field": [[["x1", "x2"], "t1"]],
  "action": [{"x1": "1"}, {"x2": "1"}],
  "moment": {"f": ["t1", "t2"]},
  "connection": [[[["x1"], "1"]], [[["x2"], "1"]]],
  "alt_connection": [[[["x1"], "1"], [["t2"], "1"]], [[["x2"], "1"], [["t1"], "t1"]]],
  "level": ["1", "-2"],
  "sample_points": {"p0": [0, 0, "1", "-2"], "p1": [1, 3, "1", "-2"]},
  "checks": [
    "algebraic", "integrability", "twist_flip", "types", "equivariant_closure", "moment_map", "gamma",
    "level_closure", "df_perp_closure", "reduction", "connection_independence"
  ],
  "expect": {"twist_flip[J]: H": "fail", "twist_flip[J]: H + dB": "fail"}
})json"},
      {"gamma_cylinder_plane", R"json({
  "name": "gamma_cylinder_plane",
  "description": "T^2 translations on (S^1 x R)^2 x R^2 with a four-dimensional quotient",
  "chart": [
    {"name": "x1", "kind": "periodic"}, {"name": "x2", "kind": "periodic"},
    {"name": "t1", "kind": "affine"}, {"name": "t2", "kind": "affine"},
    {"name": "u", "kind": "affine"}, {"name": "v", "kind": "affine"}
  ],
  "structures": {
    "J": {"kind": "symplectic", "omega": [[["x1", "t1"], "1"], [["x2", "t2"], "1"], [["v", "u"], "1"]]}
  },
  "b_field": [[["x1", "x2"], "t1"], [["x1", "v"], "u"], [["x2", "u"], "v^2"]],
  "action": [{"x1": "1"}, {"x2": "1"}],
  "moment": {"f": ["t1", "t2"]},
  "connection": [[[["x1"], "1"]], [[["x2"], "1"]]],
  "alt_connection": [[[["x1"], "1"], [["u"], "1"]], [[["x2"], "1"], [["v"], "t1"]]],
  "level": ["1/2", "-1"],
  "sample_points": {"p0": [0, 0, "1/2", "-1", "0", "0"], "p1": [1, 3, "1/2", "-1", "2", "-3/7"]},
  "basic_b": [[["u", "v"], "u^2 + t1"], [["t2", "u"], "v"]],
  "checks": [
    "algebraic", "integrability", "types", "equivariant_closure", "moment_map", "gamma", "level_closure",
    "df_perp_closure", "reduction", "basic_b_commute", "connection_independence"
  ]
})json"},
      {"gen_moment_cylinder", R"json({
  "name": "gen_moment_cylinder",
  "description": "closed B-transform of the symplectic torus-cylinder: moment one-form dh",
  "chart": [
    {"name": "x1", "kind": "periodic"}, {"name": "x2", "kind": "periodic"},
    {"name": "t1", "kind": "affine"}, {"name": "t2", "kind": "affine"}
  ],
  "structures": {
    "J": {
      "kind": "symplectic",
      "omega": [[["x1", "t1"], "1"], [["x2", "t2"], "1"]],
      "b_field": [[["x1", "t2"], "1"]]
    }
  },
  "action": [{"x1": "1"}],
  "moment": {"f": ["t1"], "alpha_exact": ["t2"]},
  "connection": [[[["x1"], "1"]]],
  "level": ["1"],
  "sample_points": {"p0": [0, 0, "1", "0"], "p1": [2, 1, "1", "5/2"]},
  "checks": [
    "algebraic", "integrability", "types", "equivariant_closure", "moment_map", "gamma", "level_closure",
    "df_perp_closure", "reduction"
  ]
})json"},
      {"bihermitian_T2R2", R"json({
  "name": "bihermitian_T2R2",
  "description": "flat hyperkahler bihermitian pair (I, K) on T^2 x R^2 with a circle action",
  "chart": [
    {"name": "x1", "kind": "periodic"}, {"name": "x2", "kind": "periodic"},
    {"name": "t1", "kind": "affine"}, {"name": "t2", "kind": "affine"}
  ],
  "structures": {
    "J1": {
      "kind": "bihermitian",
      "which": "first",
      "metric": [["1", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "1", "0"], ["0", "0", "0", "1"]],
      "i_plus": [["0", "0", "-1", "0"], ["0", "0", "0", "-1"], ["1", "0", "0", "0"], ["0", "1", "0", "0"]],
      "i_minus": [["0", "0", "0", "-1"], ["0", "0", "1", "0"], ["0", "-1", "0", "0"], ["1", "0", "0", "0"]]
    },
    "J2": {
      "kind": "bihermitian",
      "which": "second",
      "metric": [["1", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "1", "0"], ["0", "0", "0", "1"]],
      "i_plus": [["0", "0", "-1", "0"], ["0", "0", "0", "-1"], ["1", "0", "0", "0"], ["0", "1", "0", "0"]],
      "i_minus": [["0", "0", "0", "-1"], ["0", "0", "1", "0"], ["0", "-1", "0", "0"], ["1", "0", "0", "0"]]
    }
  },
  "gk_pair": ["J1", "J2"],
  "action": [{"x1": "1"}],
  "moment": {"f": ["t1 - t2"], "alpha": [[[["x2"], "-1"]]]},
  "connection": [[[["x1"], "1"]]],
  "level": ["0"],
  "sample_points": {"p0": [0, 0, "0", "0"], "p1": [1, 2, "3/2", "3/2"]},
  "checks": [
    "algebraic", "integrability", "types", "gk_pair", "equivariant_closure", "moment_map", "gamma",
    "level_closure", "df_perp_closure", "reduction", "gk_reduction"
  ]
})json"},
      {"trivial_action", R"json({
  "name": "trivial_action",
  "description": "Kahler C^2 with the trivial torus: every reduction is the identity",
  "chart": [
    {"name": "x1", "kind": "affine"}, {"name": "y1", "kind": "affine"},
    {"name": "x2", "kind": "affine"}, {"name": "y2", "kind": "affine"}
  ],
  "structures": {
    "J1": {"kind": "symplectic", "omega": [[["y1", "x1"], "1"], [["y2", "x2"], "1"]]},
    "J2": {
      "kind": "complex",
      "matrix": [["0", "-1", "0", "0"], ["1", "0", "0", "0"], ["0", "0", "0", "-1"], ["0", "0", "1", "0"]]
    }
  },
  "gk_pair": ["J1", "J2"],
  "action": [],
  "moment": {"f": []},
  "level": [],
  "sample_points": {"p0": ["0", "0", "0", "0"], "p1": ["2", "-1/3", "0", "5"]},
  "checks": [
    "algebraic", "integrability", "types", "gk_pair", "equivariant_closure", "moment_map", "level_closure",
    "df_perp_closure", "reduction", "gk_reduction"
  ]
})json"},
  };
  return entries;
}

inline const CatalogEntry& catalog_entry(const std::string& name) {
  for (const auto& e : catalog())
    if (e.name == name) return e;
  throw LoadError("", "no built-in scenario named '" + name + "'");
}

inline Scenario load_catalog_scenario(const std::string& name) { return load_scenario_text(catalog_entry(name).text); }

/// One line per built-in scenario: name and description.
inline std::string list_catalog() {
  std::string out;
  for (const auto& e : catalog()) {
    Scenario s = load_catalog_scenario(e.name);
    std::string name = e.name;
    name.resize(std::max<std::size_t>(name.size() + 2, 24), ' ');
    out += name + s.description + "\n";
  }
  return out;
}

}  // namespace tgk
