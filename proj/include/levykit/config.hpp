#pragma once
// JSON run configuration. Every config carries a kind, a seed, and whatever the kind
// needs; grid and model blocks are shared across kinds.
//
//   {
//     "kind": "kernel",                     // symbol-check | kernel | moments | solve
//                                           // | estimates | filter
//     "seed": 7,
//     "grid": {"dim": 1, "n": 1024, "box": 20.0},
//     "model": {
//       "alpha": 1.5, "dim": 1, "horizon": 1.0,
//       "cutoff": 8.0,                      // optional jump truncation radius
//       "measure": {"type": "line", "plus": 1.0, "minus": 1.0},
//       // d = 2 alternatives: {"type": "circle", "value": c}
//       //                     {"type": "atoms", "atoms": [[theta, weight], ...]}
//       "drift": [0.0, 0.0],                // alpha = 1 only
//       "diffusion": [[1.0, 0.0], [0.0, 1.0]]  // alpha = 2 only
//     },
//     ... kind-specific keys, see the tool's --help ...
//   }
//
// Seed is mandatory. Unknown kinds are rejected; malformed blocks throw with the key path.

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"
#include "levykit/grid.hpp"
#include "levykit/model.hpp"

namespace levykit {

struct RunConfig {
  std::string kind;
  std::uint64_t seed = 0;
  std::optional<FrequencyGrid> grid;
  std::optional<StableModel> model;
  nlohmann::json extras;  // the full document, for kind-specific keys
  std::string path;       // source file
};

bool known_kind(const std::string& kind);

FrequencyGrid grid_from_json(const nlohmann::json& block);
StableModel model_from_json(const nlohmann::json& block);

// parse + validate; throws std::invalid_argument / std::runtime_error on bad input
RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& text, const std::string& origin = "<inline>");

}  // namespace levykit
