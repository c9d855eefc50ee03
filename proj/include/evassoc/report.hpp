#pragma once

// Drives a scenario through the tracker and renders the outcome: per frame
// the two belief matrices, the combined matrix, the assignment with the
// "associated with nothing" column, the confidence score and the track table.
// JSON output is deterministic (same scenario + options => same bytes).

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "evassoc/assignment.hpp"
#include "evassoc/errors.hpp"
#include "evassoc/scenario.hpp"
#include "evassoc/tracker.hpp"

namespace evassoc {

struct RunOptions {
  std::optional<double> alpha0;           ///< overrides the scenario value
  std::optional<std::size_t> max_frames;  ///< truncates the frame list
  std::uint64_t seed = 0;                 ///< drives generator scenarios
  bool force_hungarian = false;
};

struct FrameReport {
  std::size_t index = 0;
  std::vector<std::string> perceived_labels;
  std::vector<std::string> known_labels;  ///< track labels at frame entry
  AssociationArtifacts artifacts;
  std::vector<Track> tracks;  ///< track set after the lifecycle update
};

struct Report {
  int version = 1;
  std::vector<FrameReport> frames;
};

/// Expands a generator block into concrete 1D frames using the given seed.
inline std::vector<ScenarioFrame> generate_frames(const GeneratorSpec& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(-g.noise, g.noise);
  std::vector<ScenarioFrame> frames;
  frames.reserve(g.frames);
  for (std::size_t f = 0; f < g.frames; ++f) {
    ScenarioFrame frame;
    for (std::size_t k = 0; k < g.objects; ++k) {
      const double center = g.start + static_cast<double>(k) * g.spacing +
                            static_cast<double>(f) * g.velocity +
                            (g.noise > 0.0 ? jitter(rng) : 0.0);
      PerceivedObject obj;
      obj.quantity = FuzzyQuantity1D(center - g.support_width / 2, center - g.core_width / 2,
                                     center + g.core_width / 2, center + g.support_width / 2);
      obj.label = "O" + std::to_string(k + 1);
      frame.perceived.push_back(std::move(obj));
    }
    frames.push_back(std::move(frame));
  }
  return frames;
}

namespace detail {

inline std::vector<std::string> current_known_labels(const std::vector<Track>& tracks) {
  std::vector<std::string> labels;
  labels.reserve(tracks.size());
  for (const auto& t : tracks)
    labels.push_back(t.label.empty() ? "T" + std::to_string(t.id) : t.label);
  return labels;
}

inline FuzzyQuantity1D placeholder_state() { return FuzzyQuantity1D(-0.5, -0.25, 0.25, 0.5); }

}  // namespace detail

/// Runs the whole scenario and collects one FrameReport per processed frame.
/// Mass-grid scenarios contribute exactly one frame; generator scenarios are
/// expanded first with `options.seed`.
inline Report run_scenario(const Scenario& scenario, const RunOptions& options = {}) {
  TrackerConfig cfg = scenario.tracker;
  if (options.alpha0) {
    if (*options.alpha0 < 0.0 || *options.alpha0 > 1.0)
      throw ScenarioError("alpha0 override must be in [0,1]");
    cfg.alpha0 = *options.alpha0;
  }
  cfg.force_hungarian = options.force_hungarian;
  Tracker tracker(cfg);
  Report report;
  const std::size_t limit =
      options.max_frames ? *options.max_frames : std::numeric_limits<std::size_t>::max();
  if (limit == 0) return report;

  if (scenario.mass_grid) {
    const MassGrid& grid = *scenario.mass_grid;
    if (!scenario.known.empty()) {
      for (const auto& k : scenario.known) tracker.seed_track(k.quantity, k.label);
    } else {
      for (std::size_t jx = 0; jx < grid.known_count(); ++jx)
        tracker.seed_track(detail::placeholder_state(),
                           jx < scenario.known_labels.size() ? scenario.known_labels[jx]
                                                             : "Y" + std::to_string(jx + 1));
    }
    std::vector<PerceivedObject> perceived(grid.perceived_count());
    for (std::size_t i = 0; i < perceived.size(); ++i) {
      perceived[i].quantity = detail::placeholder_state();
      perceived[i].label = i < scenario.perceived_labels.size() ? scenario.perceived_labels[i]
                                                                : "X" + std::to_string(i + 1);
    }
    FrameReport fr;
    fr.index = 0;
    for (const auto& p : perceived) fr.perceived_labels.push_back(p.label);
    fr.known_labels = detail::current_known_labels(tracker.tracks());
    StepResult sr = tracker.step_with_grid(grid, &perceived);
    fr.artifacts = std::move(sr.artifacts);
    fr.tracks = std::move(sr.tracks);
    report.frames.push_back(std::move(fr));
    return report;
  }

  for (const auto& k : scenario.known) tracker.seed_track(k.quantity, k.label);
  std::vector<ScenarioFrame> generated;
  if (scenario.frames.empty() && scenario.generator)
    generated = generate_frames(*scenario.generator, options.seed);
  const std::vector<ScenarioFrame>& frames = generated.empty() ? scenario.frames : generated;
  for (std::size_t f = 0; f < frames.size() && f < limit; ++f) {
    FrameReport fr;
    fr.index = f;
    for (std::size_t i = 0; i < frames[f].perceived.size(); ++i)
      fr.perceived_labels.push_back(frames[f].perceived[i].label.empty()
                                        ? "X" + std::to_string(i + 1)
                                        : frames[f].perceived[i].label);
    fr.known_labels = detail::current_known_labels(tracker.tracks());
    StepResult sr = tracker.step(frames[f].perceived);
    fr.artifacts = std::move(sr.artifacts);
    fr.tracks = std::move(sr.tracks);
    report.frames.push_back(std::move(fr));
  }
  return report;
}

namespace detail {

inline nlohmann::ordered_json quantity_to_json(const TrackState& s) {
  nlohmann::ordered_json out;
  if (std::holds_alternative<FuzzyQuantity1D>(s)) {
    const auto& q = std::get<FuzzyQuantity1D>(s);
    out["support"] = {q.support_lo(), q.support_hi()};
    out["core"] = {q.core_lo(), q.core_hi()};
    out["height"] = q.height();
  } else {
    const auto& q = std::get<FuzzyQuantity2D>(s);
    out["x"] = quantity_to_json(TrackState(q.x()));
    out["y"] = quantity_to_json(TrackState(q.y()));
    out["height"] = q.height();
  }
  return out;
}

inline nlohmann::ordered_json belief_matrix_to_json(const BeliefMatrix& m) {
  nlohmann::ordered_json cols = nlohmann::ordered_json::array();
  for (const auto& c : m.columns) {
    nlohmann::ordered_json col;
    col["singles"] = c.singles;
    col["star"] = c.star;
    col["theta"] = c.theta;
    col["k_norm"] = c.k_norm;
    col["conflict"] = c.conflict;
    cols.push_back(std::move(col));
  }
  return cols;
}

inline const char* status_name(TrackStatus s) {
  switch (s) {
    case TrackStatus::Tentative: return "tentative";
    case TrackStatus::Confirmed: return "confirmed";
    case TrackStatus::Coasting: return "coasting";
  }
  return "unknown";
}

}  // namespace detail

inline nlohmann::ordered_json report_to_json(const Report& report) {
  nlohmann::ordered_json out;
  out["version"] = report.version;
  out["frames"] = nlohmann::ordered_json::array();
  for (const auto& fr : report.frames) {
    nlohmann::ordered_json jf;
    jf["index"] = fr.index;
    jf["perceived_labels"] = fr.perceived_labels;
    jf["known_labels"] = fr.known_labels;
    jf["belief_matrix_pk"] = detail::belief_matrix_to_json(fr.artifacts.pk);
    jf["belief_matrix_kp"] = detail::belief_matrix_to_json(fr.artifacts.kp);
    nlohmann::ordered_json combined = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < fr.artifacts.combined.cells.rows(); ++i) {
      nlohmann::ordered_json row = nlohmann::ordered_json::array();
      for (std::size_t jx = 0; jx < fr.artifacts.combined.cells.cols(); ++jx)
        row.push_back(fr.artifacts.combined.cells(i, jx));
      combined.push_back(std::move(row));
    }
    jf["combined"] = std::move(combined);
    nlohmann::ordered_json assignment;
    nlohmann::ordered_json matched = nlohmann::ordered_json::array();
    for (const auto& [i, jx] : fr.artifacts.result.matched) matched.push_back({i, jx});
    assignment["matched"] = std::move(matched);
    assignment["appeared"] = fr.artifacts.result.appeared;
    assignment["disappeared"] = fr.artifacts.result.disappeared;
    jf["assignment"] = std::move(assignment);
    jf["psi"] = fr.artifacts.result.confidence;
    jf["via_shortcut"] = fr.artifacts.result.via_shortcut;
    nlohmann::ordered_json tracks = nlohmann::ordered_json::array();
    for (const auto& t : fr.tracks) {
      nlohmann::ordered_json jt;
      jt["id"] = t.id;
      jt["label"] = t.label;
      jt["status"] = detail::status_name(t.status);
      jt["misses"] = t.misses;
      jt["hits"] = t.hits;
      jt["last_confidence"] = t.last_confidence;
      jt["state"] = detail::quantity_to_json(t.state);
      tracks.push_back(std::move(jt));
    }
    jf["tracks"] = std::move(tracks);
    out["frames"].push_back(std::move(jf));
  }
  return out;
}

namespace detail {

inline std::string fmt4(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(4) << v;
  return os.str();
}

inline void print_table(std::ostringstream& os, const std::string& title,
                        const std::vector<std::string>& col_labels,
                        const std::vector<std::string>& row_labels,
                        const std::vector<std::vector<std::string>>& cells) {
  os << title << "\n";
  std::size_t label_w = 0;
  for (const auto& r : row_labels) label_w = std::max(label_w, r.size());
  std::vector<std::size_t> widths(col_labels.size());
  for (std::size_t c = 0; c < col_labels.size(); ++c) {
    widths[c] = col_labels[c].size();
    for (const auto& row : cells) widths[c] = std::max(widths[c], row[c].size());
  }
  os << std::string(label_w, ' ');
  for (std::size_t c = 0; c < col_labels.size(); ++c)
    os << "  " << std::setw(static_cast<int>(widths[c])) << col_labels[c];
  os << "\n";
  for (std::size_t r = 0; r < row_labels.size(); ++r) {
    os << std::left << std::setw(static_cast<int>(label_w)) << row_labels[r] << std::right;
    for (std::size_t c = 0; c < col_labels.size(); ++c)
      os << "  " << std::setw(static_cast<int>(widths[c])) << cells[r][c];
    os << "\n";
  }
}

inline void print_belief_matrix(std::ostringstream& os, const std::string& title,
                                const BeliefMatrix& m, const std::vector<std::string>& col_labels,
                                const std::vector<std::string>& cand_labels) {
  std::vector<std::string> rows(cand_labels);
  rows.push_back("*");
  rows.push_back("Theta");
  std::vector<std::vector<std::string>> cells(rows.size(),
                                              std::vector<std::string>(m.columns.size()));
  for (std::size_t c = 0; c < m.columns.size(); ++c) {
    for (std::size_t r = 0; r < m.candidate_count; ++r) cells[r][c] = fmt4(m.columns[c].singles[r]);
    cells[m.candidate_count][c] = fmt4(m.columns[c].star);
    cells[m.candidate_count + 1][c] = fmt4(m.columns[c].theta);
  }
  print_table(os, title, col_labels, rows, cells);
}

}  // namespace detail

/// Human-oriented rendering: aligned 4-decimal tables per frame.
inline std::string report_to_text(const Report& report) {
  std::ostringstream os;
  for (const auto& fr : report.frames) {
    const auto& art = fr.artifacts;
    const std::size_t n = art.combined.cells.rows();
    const std::size_t m = art.combined.cells.cols();
    os << "== Frame " << fr.index << " ==\n";
    detail::print_belief_matrix(os, "Belief matrix (perceived -> known):", art.pk,
                                fr.perceived_labels, fr.known_labels);
    detail::print_belief_matrix(os, "Belief matrix (known -> perceived):", art.kp, fr.known_labels,
                                fr.perceived_labels);
    {
      std::vector<std::vector<std::string>> cells(n, std::vector<std::string>(m));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t jx = 0; jx < m; ++jx) cells[i][jx] = detail::fmt4(art.combined.cells(i, jx));
      detail::print_table(os, "Combined matrix:", fr.known_labels, fr.perceived_labels, cells);
    }
    {
      std::vector<std::string> cols(fr.known_labels);
      cols.push_back("*");
      std::vector<std::vector<std::string>> cells(n, std::vector<std::string>(m + 1, "0"));
      for (const auto& [i, jx] : art.result.matched) cells[i][jx] = "1";
      for (std::size_t i : art.result.appeared) cells[i][m] = "1";
      detail::print_table(os, "Assignment:", cols, fr.perceived_labels, cells);
    }
    os << "Disappeared:";
    if (art.result.disappeared.empty()) os << " (none)";
    for (std::size_t jx : art.result.disappeared) os << " " << fr.known_labels[jx];
    os << "\n";
    os << "Psi = " << detail::fmt4(art.result.confidence)
       << (art.result.via_shortcut ? " (shortcut)" : " (hungarian)") << "\n";
    {
      std::vector<std::string> cols{"label", "status", "misses", "hits", "conf"};
      std::vector<std::string> rows;
      std::vector<std::vector<std::string>> cells;
      for (const auto& t : fr.tracks) {
        rows.push_back("#" + std::to_string(t.id));
        cells.push_back({t.label.empty() ? "-" : t.label, detail::status_name(t.status),
                         std::to_string(t.misses), std::to_string(t.hits),
                         detail::fmt4(t.last_confidence)});
      }
      detail::print_table(os, "Tracks:", cols, rows, cells);
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace evassoc
