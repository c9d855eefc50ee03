#pragma once

// Scenario files: JSON descriptions of a tracking run - sensor reliability,
// tracker tuning, initial known objects and per-frame perceived measurements.
// A scenario may instead carry a raw pairwise mass grid (bypassing the
// similarity stage) or a generator block for synthetic randomized frames.

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "evassoc/errors.hpp"
#include "evassoc/fuzzy.hpp"
#include "evassoc/masses.hpp"
#include "evassoc/tracker.hpp"

namespace evassoc {

struct ScenarioFrame {
  std::vector<PerceivedObject> perceived;
};

/// Synthetic-scenario recipe: `objects` 1D targets drifting at `velocity`
/// units/frame from evenly spread start centers, with seeded uniform jitter of
/// +-`noise` applied per frame (the seed comes from run options).
struct GeneratorSpec {
  std::size_t frames = 0;
  std::size_t objects = 0;
  double start = 0.0;
  double spacing = 10.0;
  double velocity = 1.0;
  double noise = 0.5;
  double support_width = 4.0;
  double core_width = 2.0;
};

struct Scenario {
  int version = 1;
  int dimensionality = 1;
  double alpha0 = 0.9;
  TrackerConfig tracker;  ///< alpha0 field mirrors the scenario-level value
  std::vector<PerceivedObject> known;
  std::vector<ScenarioFrame> frames;
  std::optional<MassGrid> mass_grid;
  std::vector<std::string> perceived_labels;  ///< labels for mass-grid rows
  std::vector<std::string> known_labels;      ///< labels for mass-grid columns
  std::optional<GeneratorSpec> generator;
};

namespace detail {

[[noreturn]] inline void scenario_fail(const std::string& path, const std::string& what) {
  throw ScenarioError(path + ": " + what);
}

inline double json_number(const nlohmann::json& j, const std::string& path) {
  if (!j.is_number()) scenario_fail(path, "expected a number");
  return j.get<double>();
}

inline double json_field_number(const nlohmann::json& j, const char* key, const std::string& path,
                                double fallback) {
  if (!j.contains(key)) return fallback;
  return json_number(j.at(key), path.empty() ? key : path + "." + key);
}

inline FuzzyQuantity1D parse_quantity_1d(const nlohmann::json& j, const std::string& path) {
  if (!j.is_object()) scenario_fail(path, "expected an object");
  if (!j.contains("support") || !j.contains("core"))
    scenario_fail(path, "needs 'support' and 'core' arrays");
  const auto& sup = j.at("support");
  const auto& core = j.at("core");
  if (!sup.is_array() || sup.size() != 2) scenario_fail(path + ".support", "expected [lo, hi]");
  if (!core.is_array() || core.size() != 2) scenario_fail(path + ".core", "expected [lo, hi]");
  const double height = json_field_number(j, "height", path, 1.0);
  try {
    return FuzzyQuantity1D(json_number(sup[0], path + ".support[0]"),
                           json_number(core[0], path + ".core[0]"),
                           json_number(core[1], path + ".core[1]"),
                           json_number(sup[1], path + ".support[1]"), height);
  } catch (const std::invalid_argument& e) {
    scenario_fail(path, e.what());
  }
}

inline TrackState parse_quantity(const nlohmann::json& j, int dims, const std::string& path) {
  if (dims == 1) return parse_quantity_1d(j, path);
  if (!j.is_object() || !j.contains("x") || !j.contains("y"))
    scenario_fail(path, "2D quantity needs 'x' and 'y' objects");
  FuzzyQuantity1D x = parse_quantity_1d(j.at("x"), path + ".x");
  FuzzyQuantity1D y = parse_quantity_1d(j.at("y"), path + ".y");
  const double height =
      json_field_number(j, "height", path, std::min(x.height(), y.height()));
  try {
    return FuzzyQuantity2D(x, y, height);
  } catch (const std::invalid_argument& e) {
    scenario_fail(path, e.what());
  }
}

inline PerceivedObject parse_object(const nlohmann::json& j, int dims, const std::string& path) {
  PerceivedObject obj;
  obj.quantity = parse_quantity(j, dims, path);
  if (j.is_object() && j.contains("label")) {
    if (!j.at("label").is_string()) scenario_fail(path + ".label", "expected a string");
    obj.label = j.at("label").get<std::string>();
  }
  return obj;
}

inline MassGrid parse_mass_grid(const nlohmann::json& j, const std::string& path) {
  if (!j.is_array()) scenario_fail(path, "expected an array of rows");
  std::vector<std::vector<MassTriple>> rows;
  rows.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string row_path = path + "[" + std::to_string(i) + "]";
    const auto& row = j[i];
    if (!row.is_array()) scenario_fail(row_path, "expected an array of triples");
    std::vector<MassTriple> triples;
    triples.reserve(row.size());
    for (std::size_t k = 0; k < row.size(); ++k) {
      const std::string cell_path = row_path + "[" + std::to_string(k) + "]";
      const auto& cell = row[k];
      if (!cell.is_array() || cell.size() != 3)
        scenario_fail(cell_path, "expected [m_yes, m_no, m_theta]");
      try {
        triples.emplace_back(json_number(cell[0], cell_path), json_number(cell[1], cell_path),
                             json_number(cell[2], cell_path));
      } catch (const std::invalid_argument& e) {
        scenario_fail(cell_path, e.what());
      }
    }
    rows.push_back(std::move(triples));
  }
  if (!rows.empty())
    for (const auto& r : rows)
      if (r.size() != rows.front().size()) scenario_fail(path, "rows must have equal length");
  try {
    return MassGrid::from_rows(rows);
  } catch (const std::invalid_argument& e) {
    scenario_fail(path, e.what());
  }
}

inline std::vector<std::string> parse_labels(const nlohmann::json& j, const std::string& path) {
  if (!j.is_array()) scenario_fail(path, "expected an array of strings");
  std::vector<std::string> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) scenario_fail(path + "[" + std::to_string(i) + "]", "expected a string");
    out.push_back(j[i].get<std::string>());
  }
  return out;
}

}  // namespace detail

/// Parses and validates a scenario from already-loaded JSON. `source` names
/// the origin (file path) for error messages.
inline Scenario scenario_from_json(const nlohmann::json& j, const std::string& source) {
  using detail::scenario_fail;
  if (!j.is_object()) scenario_fail(source, "top level must be an object");
  Scenario sc;

  if (j.contains("version")) {
    if (!j.at("version").is_number_integer()) scenario_fail("version", "expected an integer");
    sc.version = j.at("version").get<int>();
    if (sc.version != 1) scenario_fail("version", "unsupported scenario version");
  }
  if (j.contains("dimensionality")) {
    if (!j.at("dimensionality").is_number_integer())
      scenario_fail("dimensionality", "expected an integer");
    sc.dimensionality = j.at("dimensionality").get<int>();
    if (sc.dimensionality != 1 && sc.dimensionality != 2)
      scenario_fail("dimensionality", "must be 1 or 2");
  }
  sc.alpha0 = detail::json_field_number(j, "alpha0", "", 0.9);
  if (sc.alpha0 < 0.0 || sc.alpha0 > 1.0) scenario_fail("alpha0", "must be in [0,1]");
  sc.tracker.alpha0 = sc.alpha0;

  if (j.contains("tracker")) {
    const auto& t = j.at("tracker");
    if (!t.is_object()) scenario_fail("tracker", "expected an object");
    sc.tracker.inflation = detail::json_field_number(t, "inflation", "tracker", sc.tracker.inflation);
    sc.tracker.height_decay =
        detail::json_field_number(t, "height_decay", "tracker", sc.tracker.height_decay);
    sc.tracker.delete_height =
        detail::json_field_number(t, "delete_height", "tracker", sc.tracker.delete_height);
    sc.tracker.dt = detail::json_field_number(t, "dt", "tracker", sc.tracker.dt);
    if (t.contains("max_misses")) {
      if (!t.at("max_misses").is_number_integer() || t.at("max_misses").get<int>() < 0)
        scenario_fail("tracker.max_misses", "expected an integer >= 0");
      sc.tracker.max_misses = t.at("max_misses").get<int>();
    }
    if (t.contains("confirm_hits")) {
      if (!t.at("confirm_hits").is_number_integer() || t.at("confirm_hits").get<int>() < 1)
        scenario_fail("tracker.confirm_hits", "expected an integer >= 1");
      sc.tracker.confirm_hits = t.at("confirm_hits").get<int>();
    }
    if (sc.tracker.inflation < 1.0) scenario_fail("tracker.inflation", "must be >= 1");
    if (sc.tracker.height_decay <= 0.0 || sc.tracker.height_decay > 1.0)
      scenario_fail("tracker.height_decay", "must be in (0,1]");
    if (sc.tracker.delete_height < 0.0) scenario_fail("tracker.delete_height", "must be >= 0");
    if (sc.tracker.dt <= 0.0) scenario_fail("tracker.dt", "must be > 0");
  }

  if (j.contains("known")) {
    const auto& arr = j.at("known");
    if (!arr.is_array()) scenario_fail("known", "expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i)
      sc.known.push_back(
          detail::parse_object(arr[i], sc.dimensionality, "known[" + std::to_string(i) + "]"));
  }
  if (j.contains("frames")) {
    const auto& arr = j.at("frames");
    if (!arr.is_array()) scenario_fail("frames", "expected an array");
    for (std::size_t f = 0; f < arr.size(); ++f) {
      const std::string fpath = "frames[" + std::to_string(f) + "]";
      const auto& frame = arr[f];
      if (!frame.is_object() || !frame.contains("perceived"))
        scenario_fail(fpath, "expected an object with a 'perceived' array");
      const auto& objs = frame.at("perceived");
      if (!objs.is_array()) scenario_fail(fpath + ".perceived", "expected an array");
      ScenarioFrame sf;
      for (std::size_t i = 0; i < objs.size(); ++i)
        sf.perceived.push_back(detail::parse_object(
            objs[i], sc.dimensionality, fpath + ".perceived[" + std::to_string(i) + "]"));
      sc.frames.push_back(std::move(sf));
    }
  }

  if (j.contains("mass_grid")) sc.mass_grid = detail::parse_mass_grid(j.at("mass_grid"), "mass_grid");
  if (j.contains("perceived_labels"))
    sc.perceived_labels = detail::parse_labels(j.at("perceived_labels"), "perceived_labels");
  if (j.contains("known_labels"))
    sc.known_labels = detail::parse_labels(j.at("known_labels"), "known_labels");

  if (sc.mass_grid) {
    if (!sc.frames.empty())
      scenario_fail("mass_grid", "a mass-grid scenario must not also declare frames");
    if (!sc.perceived_labels.empty() &&
        sc.perceived_labels.size() != sc.mass_grid->perceived_count())
      scenario_fail("perceived_labels", "length must match mass_grid row count");
    if (!sc.known_labels.empty() && sc.known_labels.size() != sc.mass_grid->known_count())
      scenario_fail("known_labels", "length must match mass_grid column count");
    if (!sc.known.empty() && sc.known.size() != sc.mass_grid->known_count())
      scenario_fail("known", "count must match mass_grid column count");
  }

  if (j.contains("generator")) {
    const auto& g = j.at("generator");
    if (!g.is_object()) scenario_fail("generator", "expected an object");
    if (sc.mass_grid) scenario_fail("generator", "cannot combine a generator with a mass grid");
    if (sc.dimensionality != 1) scenario_fail("generator", "only 1D generation is supported");
    GeneratorSpec gen;
    if (g.contains("frames")) {
      if (!g.at("frames").is_number_integer() || g.at("frames").get<int>() < 0)
        scenario_fail("generator.frames", "expected an integer >= 0");
      gen.frames = g.at("frames").get<std::size_t>();
    }
    if (g.contains("objects")) {
      if (!g.at("objects").is_number_integer() || g.at("objects").get<int>() < 0)
        scenario_fail("generator.objects", "expected an integer >= 0");
      gen.objects = g.at("objects").get<std::size_t>();
    }
    gen.start = detail::json_field_number(g, "start", "generator", gen.start);
    gen.spacing = detail::json_field_number(g, "spacing", "generator", gen.spacing);
    gen.velocity = detail::json_field_number(g, "velocity", "generator", gen.velocity);
    gen.noise = detail::json_field_number(g, "noise", "generator", gen.noise);
    gen.support_width =
        detail::json_field_number(g, "support_width", "generator", gen.support_width);
    gen.core_width = detail::json_field_number(g, "core_width", "generator", gen.core_width);
    if (gen.support_width <= 0.0) scenario_fail("generator.support_width", "must be > 0");
    if (gen.core_width < 0.0 || gen.core_width > gen.support_width)
      scenario_fail("generator.core_width", "must be in [0, support_width]");
    if (gen.noise < 0.0) scenario_fail("generator.noise", "must be >= 0");
    sc.generator = gen;
  }

  return sc;
}

/// Loads a scenario file. Throws ScenarioError on I/O problems, JSON syntax
/// errors (with the parser's line/column context) and invariant violations
/// (with the offending field path).
inline Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError(path + ": cannot open scenario file");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ScenarioError(path + ": " + e.what());
  }
  return scenario_from_json(j, path);
}

}  // namespace evassoc
