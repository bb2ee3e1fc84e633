#include "levykit/config.hpp"

#include <array>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace levykit {

namespace {

const std::array<const char*, 6> kKinds = {"symbol-check", "kernel", "moments",
                                           "solve",        "estimates", "filter"};

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw std::invalid_argument("config: " + where + ": " + what);
}

double number_at(const nlohmann::json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j[key].is_number()) fail(where, std::string(key) + " must be a number");
  return j[key].get<double>();
}

}  // namespace

bool known_kind(const std::string& kind) {
  for (const char* k : kKinds)
    if (kind == k) return true;
  return false;
}

FrequencyGrid grid_from_json(const nlohmann::json& block) {
  if (!block.is_object()) fail("grid", "must be an object");
  const int dim = static_cast<int>(number_at(block, "dim", "grid"));
  const int n = static_cast<int>(number_at(block, "n", "grid"));
  const double box = number_at(block, "box", "grid");
  return FrequencyGrid(dim, n, box);
}

StableModel model_from_json(const nlohmann::json& block) {
  if (!block.is_object()) fail("model", "must be an object");
  const double alpha = number_at(block, "alpha", "model");
  const int dim = static_cast<int>(number_at(block, "dim", "model"));
  const double horizon = number_at(block, "horizon", "model");
  std::optional<double> cutoff;
  if (block.contains("cutoff") && !block["cutoff"].is_null())
    cutoff = number_at(block, "cutoff", "model");

  ModelCoeffs c;
  if (alpha < 2.0) {
    if (!block.contains("measure")) fail("model", "alpha < 2 needs a measure block");
    const auto& m = block["measure"];
    const std::string type = m.value("type", "");
    if (type == "line") {
      c.measure = SphereMeasure::line(number_at(m, "plus", "model.measure"),
                                      number_at(m, "minus", "model.measure"));
    } else if (type == "circle") {
      c.measure = SphereMeasure::circle_constant(number_at(m, "value", "model.measure"));
    } else if (type == "atoms") {
      if (!m.contains("atoms") || !m["atoms"].is_array())
        fail("model.measure", "atoms must be an array of [theta, weight] pairs");
      std::vector<std::pair<double, double>> atoms;
      for (const auto& a : m["atoms"]) {
        if (!a.is_array() || a.size() != 2) fail("model.measure", "each atom is [theta, weight]");
        atoms.emplace_back(a[0].get<double>(), a[1].get<double>());
      }
      c.measure = SphereMeasure::circle_atoms(atoms);
    } else {
      fail("model.measure", "type must be line, circle, or atoms");
    }
  } else {
    c.measure = SphereMeasure::zero(dim);
  }
  if (block.contains("drift")) {
    const auto& d = block["drift"];
    if (!d.is_array() || d.size() < static_cast<std::size_t>(dim))
      fail("model", "drift must be an array with one entry per dimension");
    for (int i = 0; i < dim; ++i) c.drift[static_cast<std::size_t>(i)] = d[i].get<double>();
  }
  if (block.contains("diffusion")) {
    const auto& B = block["diffusion"];
    if (!B.is_array() || B.size() < static_cast<std::size_t>(dim))
      fail("model", "diffusion must be a dim x dim array");
    for (int i = 0; i < dim; ++i) {
      if (!B[i].is_array() || B[i].size() < static_cast<std::size_t>(dim))
        fail("model", "diffusion must be a dim x dim array");
      for (int k = 0; k < dim; ++k)
        c.diffusion[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] =
            B[i][k].get<double>();
    }
  }
  return StableModel::constant(alpha, dim, std::move(c), horizon, cutoff);
}

RunConfig parse_config(const std::string& text, const std::string& origin) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("config: " + origin + " is not valid JSON: " + e.what());
  }
  if (!doc.is_object()) fail(origin, "top level must be an object");
  if (!doc.contains("kind") || !doc["kind"].is_string()) fail(origin, "kind is required");
  if (!doc.contains("seed") || !doc["seed"].is_number_unsigned())
    fail(origin, "seed is required and must be a nonnegative integer");

  RunConfig cfg;
  cfg.kind = doc["kind"].get<std::string>();
  cfg.seed = doc["seed"].get<std::uint64_t>();
  cfg.extras = doc;
  cfg.path = origin;
  if (!known_kind(cfg.kind)) fail(origin, "unknown kind '" + cfg.kind + "'");
  if (doc.contains("grid")) cfg.grid = grid_from_json(doc["grid"]);
  if (doc.contains("model")) cfg.model = model_from_json(doc["model"]);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

}  // namespace levykit
