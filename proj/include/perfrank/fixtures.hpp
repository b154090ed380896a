#pragma once

// Bundled example workspaces, embedded verbatim from fixtures/*.json so the
// CLI can run them without touching the filesystem.  The files on disk are
// the same bytes; a test keeps them in sync.

#include <map>
#include <string>

namespace perfrank::fixtures {

inline const char* const smallexample_json = R"fixture({
  "algebras": {
    "small": {
      "quiver": {
        "field": "Q",
        "vertices": ["1", "2"],
        "arrows": [
          {"name": "alpha1", "src": "1", "dst": "2"},
          {"name": "alpha2", "src": "2", "dst": "1"}
        ],
        "relations": [
          [{"arrows": ["alpha1", "alpha2"], "coeff": "1"}],
          [{"arrows": ["alpha2", "alpha1"], "coeff": "1"}]
        ],
        "path_cap": 2
      }
    }
  },
  "homs": {
    "loc-m2": {
      "algebra": "small",
      "n": 2,
      "images": {
        "e_1": [["1", "0"], ["0", "0"]],
        "e_2": [["0", "0"], ["0", "1"]],
        "alpha1": [["0", "0"], ["0", "0"]],
        "alpha2": [["0", "1"], ["0", "0"]]
      }
    },
    "aug": {
      "algebra": "small",
      "n": 1,
      "images": {
        "e_1": [["1"]],
        "e_2": [["0"]],
        "alpha1": [["0"]],
        "alpha2": [["0"]]
      }
    }
  },
  "modules": {
    "A": {"algebra": "small", "regular": true, "side": "right"},
    "S1": {"algebra": "small", "dim": 1, "side": "right", "action": {"e_1": [["1"]]}},
    "S1-left": {"algebra": "small", "dim": 1, "side": "left", "action": {"e_1": [["1"]]}},
    "S2": {"algebra": "small", "dim": 1, "side": "right", "action": {"e_2": [["1"]]}}
  },
  "complexes": {
    "unit": {"algebra": "small", "degrees": [{"n": 0, "rank": 1}]},
    "twoterm-alpha2": {
      "algebra": "small",
      "degrees": [{"n": 1, "rank": 1}, {"n": 0, "rank": 1}],
      "differentials": {"1": [[["0", "0", "0", "1"]]]},
      "idempotent": {
        "1": [[["0", "1", "0", "0"]]],
        "0": [[["1", "0", "0", "0"]]]
      }
    },
    "twoterm-alpha2-free": {
      "algebra": "small",
      "degrees": [{"n": 1, "rank": 1}, {"n": 0, "rank": 1}],
      "differentials": {"1": [[["0", "0", "0", "1"]]]}
    }
  },
  "chain_maps": {
    "alpha2-endo": {
      "source": "unit",
      "target": "unit",
      "components": {"0": [[["0", "0", "0", "1"]]]}
    }
  },
  "matrices": {
    "upper-ea": {
      "algebra": "small",
      "rows": 2,
      "cols": 2,
      "entries": [
        [["1", "0", "0", "0"], ["0", "0", "0", "1"]],
        [["0", "0", "0", "0"], ["0", "1", "0", "0"]]
      ]
    }
  },
  "defaults": {"period": "inf", "depth": 6, "samples": 200, "seed": 1}
}
)fixture";

inline const char* const fiedorowicz_json = R"fixture({
  "algebras": {
    "kM": {
      "field": "Q",
      "basis": ["one", "x11", "x12", "x21", "x22"],
      "unit": ["1", "0", "0", "0", "0"],
      "products": [
        [0, 0, 0, "1"], [0, 1, 1, "1"], [0, 2, 2, "1"], [0, 3, 3, "1"], [0, 4, 4, "1"],
        [1, 0, 1, "1"], [2, 0, 2, "1"], [3, 0, 3, "1"], [4, 0, 4, "1"],
        [1, 1, 1, "1"], [1, 2, 2, "1"], [1, 3, 1, "1"], [1, 4, 2, "1"],
        [2, 1, 1, "1"], [2, 2, 2, "1"], [2, 3, 1, "1"], [2, 4, 2, "1"],
        [3, 1, 3, "1"], [3, 2, 4, "1"], [3, 3, 3, "1"], [3, 4, 4, "1"],
        [4, 1, 3, "1"], [4, 2, 4, "1"], [4, 3, 3, "1"], [4, 4, 4, "1"]
      ]
    }
  },
  "modules": {
    "k": {
      "algebra": "kM", "dim": 1, "side": "right",
      "action": {"one": [["1"]], "x11": [["1"]], "x12": [["1"]], "x21": [["1"]], "x22": [["1"]]}
    },
    "k-left": {
      "algebra": "kM", "dim": 1, "side": "left",
      "action": {"one": [["1"]], "x11": [["1"]], "x12": [["1"]], "x21": [["1"]], "x22": [["1"]]}
    }
  },
  "defaults": {"period": "inf", "depth": 4, "samples": 200, "seed": 1}
}
)fixture";

inline const char* const dualnumbers_json = R"fixture({
  "algebras": {
    "dual": {
      "quiver": {
        "field": "Q",
        "vertices": ["v"],
        "arrows": [{"name": "x", "src": "v", "dst": "v"}],
        "relations": [[{"arrows": ["x", "x"], "coeff": "1"}]],
        "path_cap": 1
      }
    }
  },
  "homs": {
    "residue": {
      "algebra": "dual",
      "n": 1,
      "images": {"e_v": [["1"]], "x": [["0"]]}
    }
  },
  "modules": {
    "k": {"algebra": "dual", "dim": 1, "side": "right", "action": {"e_v": [["1"]]}},
    "k-left": {"algebra": "dual", "dim": 1, "side": "left", "action": {"e_v": [["1"]]}}
  },
  "complexes": {
    "unit": {"algebra": "dual", "degrees": [{"n": 0, "rank": 1}]},
    "twoterm-x": {
      "algebra": "dual",
      "degrees": [{"n": 1, "rank": 1}, {"n": 0, "rank": 1}],
      "differentials": {"1": [[["0", "1"]]]}
    }
  },
  "matrices": {
    "jordan": {
      "algebra": "dual",
      "rows": 2,
      "cols": 2,
      "entries": [
        [["0", "1"], ["1", "0"]],
        [["0", "0"], ["0", "1"]]
      ]
    }
  },
  "defaults": {"period": "inf", "depth": 6, "samples": 200, "seed": 1}
}
)fixture";

inline const std::map<std::string, const char*>& workspaces() {
    static const std::map<std::string, const char*> m = {
        {"smallexample", smallexample_json},
        {"fiedorowicz", fiedorowicz_json},
        {"dualnumbers", dualnumbers_json},
    };
    return m;
}

} // namespace perfrank::fixtures
