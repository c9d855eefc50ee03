#pragma once

// Minimal track lifecycle around the association core: perceived objects that
// match nothing spawn tentative tracks, unmatched tracks coast with growing
// imprecision and shrinking certainty, and tracks whose uncertainty grows too
// large are dropped. The state update is plain measurement replacement; a real
// estimator-predictor would slot in where `predict` and the replacement sit.

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "evassoc/assignment.hpp"
#include "evassoc/combination.hpp"
#include "evassoc/fuzzy.hpp"
#include "evassoc/masses.hpp"

namespace evassoc {

enum class TrackStatus { Tentative, Confirmed, Coasting };

using TrackState = std::variant<FuzzyQuantity1D, FuzzyQuantity2D>;

struct Track {
  std::uint64_t id = 0;
  TrackState state;
  TrackStatus status = TrackStatus::Tentative;
  int misses = 0;
  int hits = 0;
  double last_confidence = 0.0;
  std::string label;
};

struct TrackerConfig {
  double alpha0 = 0.9;
  double inflation = 1.2;     ///< per-coast support growth base, >= 1
  double height_decay = 0.9;  ///< per-coast certainty factor, in (0, 1]
  double delete_height = 0.3;
  int max_misses = 5;
  int confirm_hits = 2;
  double dt = 1.0;  ///< frame period in seconds (kept for future motion models)
  bool force_hungarian = false;
};

/// A perceived object: one fuzzy measurement plus an optional display label.
struct PerceivedObject {
  TrackState quantity;
  std::string label;
};

namespace detail {

inline FuzzyQuantity1D widen_1d(const FuzzyQuantity1D& q, double factor, double height_factor) {
  const double cc = q.core_center();
  return FuzzyQuantity1D(cc + (q.support_lo() - cc) * factor, q.core_lo(), q.core_hi(),
                         cc + (q.support_hi() - cc) * factor, q.height() * height_factor);
}

}  // namespace detail

/// Coasting propagation: the support widens by inflation^misses about the
/// core center (the longer a track goes unseen, the more imprecise it is) and
/// the height shrinks by `height_decay` (the less certain it is). The core is
/// left in place; there is no motion model. With inflation = 1 and decay = 1
/// the state is returned unchanged.
inline Track predict(Track t, double dt, double inflation, double height_decay = 1.0) {
  if (dt <= 0.0) throw std::invalid_argument("predict: dt must be positive");
  if (inflation < 1.0) throw std::invalid_argument("predict: inflation must be >= 1");
  const double factor = std::pow(inflation, t.misses);
  if (std::holds_alternative<FuzzyQuantity1D>(t.state)) {
    t.state = detail::widen_1d(std::get<FuzzyQuantity1D>(t.state), factor, height_decay);
  } else {
    const auto& q = std::get<FuzzyQuantity2D>(t.state);
    t.state = FuzzyQuantity2D(detail::widen_1d(q.x(), factor, 1.0),
                              detail::widen_1d(q.y(), factor, 1.0), q.height() * height_decay);
  }
  return t;
}

/// Result of one tracker step: the association evidence and outcome, plus the
/// updated track set (value copy; the tracker keeps its own).
struct StepResult {
  AssociationArtifacts artifacts;
  std::vector<Track> tracks;
};

class Tracker {
 public:
  explicit Tracker(TrackerConfig config = {}) : config_(config) {
    if (config_.alpha0 < 0.0 || config_.alpha0 > 1.0)
      throw std::invalid_argument("tracker: alpha0 must be in [0,1]");
    if (config_.inflation < 1.0) throw std::invalid_argument("tracker: inflation must be >= 1");
    if (config_.height_decay <= 0.0 || config_.height_decay > 1.0)
      throw std::invalid_argument("tracker: height_decay must be in (0,1]");
    if (config_.dt <= 0.0) throw std::invalid_argument("tracker: dt must be positive");
  }

  const TrackerConfig& config() const { return config_; }
  const std::vector<Track>& tracks() const { return tracks_; }

  /// Registers an already-known object; it starts confirmed.
  std::uint64_t seed_track(TrackState state, std::string label = "") {
    Track t;
    t.id = next_id_++;
    t.state = std::move(state);
    t.status = TrackStatus::Confirmed;
    t.hits = config_.confirm_hits;
    t.label = std::move(label);
    tracks_.push_back(std::move(t));
    return tracks_.back().id;
  }

  /// Advances one frame: measures similarity of every perceived object
  /// against every track's prediction window, generates masses, associates,
  /// and applies the lifecycle rules.
  StepResult step(const std::vector<PerceivedObject>& perceived) {
    return apply(build_grid(perceived), &perceived);
  }

  /// Advances one frame from an externally supplied mass grid (similarity
  /// bypassed). Rows must index `perceived`, columns the current tracks.
  /// `perceived` may be null when the measurements carry no geometry; spawned
  /// tracks then get a placeholder unit window.
  StepResult step_with_grid(const MassGrid& grid,
                            const std::vector<PerceivedObject>* perceived = nullptr) {
    if (grid.known_count() != tracks_.size())
      throw std::invalid_argument("tracker: grid column count must equal track count");
    if (perceived != nullptr && grid.perceived_count() != perceived->size())
      throw std::invalid_argument("tracker: grid row count must equal perceived count");
    return apply(grid, perceived);
  }

 private:
  MassGrid build_grid(const std::vector<PerceivedObject>& perceived) const {
    MassGrid grid(perceived.size(), tracks_.size());
    const Reliability rel(config_.alpha0);
    for (std::size_t i = 0; i < perceived.size(); ++i)
      for (std::size_t j = 0; j < tracks_.size(); ++j)
        grid.at(i, j) = generate_mass_triple(similarity_of(perceived[i].quantity, tracks_[j].state), rel);
    return grid;
  }

  static SimilarityIndex similarity_of(const TrackState& perceived, const TrackState& known) {
    if (std::holds_alternative<FuzzyQuantity1D>(perceived) &&
        std::holds_alternative<FuzzyQuantity1D>(known))
      return similarity_1d(std::get<FuzzyQuantity1D>(perceived), std::get<FuzzyQuantity1D>(known));
    if (std::holds_alternative<FuzzyQuantity2D>(perceived) &&
        std::holds_alternative<FuzzyQuantity2D>(known))
      return similarity_2d(std::get<FuzzyQuantity2D>(perceived), std::get<FuzzyQuantity2D>(known));
    throw std::invalid_argument("tracker: mixed 1D/2D quantities in one frame");
  }

  StepResult apply(const MassGrid& grid, const std::vector<PerceivedObject>* perceived) {
    AssociationArtifacts art = associate_detailed(grid, config_.force_hungarian);

    std::vector<char> matched(tracks_.size(), 0);
    for (const auto& [i, j] : art.result.matched) {
      Track& t = tracks_[j];
      matched[j] = 1;
      if (perceived != nullptr) {
        t.state = (*perceived)[i].quantity;
        if (t.label.empty()) t.label = (*perceived)[i].label;
      }
      t.misses = 0;
      ++t.hits;
      t.last_confidence = art.combined.cells(i, j);
      if (t.status == TrackStatus::Coasting)
        t.status = TrackStatus::Confirmed;
      else if (t.status == TrackStatus::Tentative && t.hits >= config_.confirm_hits)
        t.status = TrackStatus::Confirmed;
    }

    std::vector<Track> survivors;
    survivors.reserve(tracks_.size() + art.result.appeared.size());
    for (std::size_t j = 0; j < tracks_.size(); ++j) {
      Track& t = tracks_[j];
      if (!matched[j]) {
        ++t.misses;
        if (t.status == TrackStatus::Confirmed) t.status = TrackStatus::Coasting;
        t = predict(std::move(t), config_.dt, config_.inflation, config_.height_decay);
        if (t.misses > config_.max_misses || state_height(t.state) < config_.delete_height)
          continue;
      }
      survivors.push_back(std::move(t));
    }
    for (std::size_t i : art.result.appeared) {
      Track t;
      t.id = next_id_++;
      if (perceived != nullptr) {
        t.state = (*perceived)[i].quantity;
        t.label = (*perceived)[i].label;
      } else {
        t.state = FuzzyQuantity1D(-0.5, -0.25, 0.25, 0.5);  // placeholder window
      }
      t.status = config_.confirm_hits <= 1 ? TrackStatus::Confirmed : TrackStatus::Tentative;
      t.hits = 1;
      survivors.push_back(std::move(t));
    }
    tracks_ = std::move(survivors);

    return StepResult{std::move(art), tracks_};
  }

  static double state_height(const TrackState& s) {
    return std::holds_alternative<FuzzyQuantity1D>(s) ? std::get<FuzzyQuantity1D>(s).height()
                                                      : std::get<FuzzyQuantity2D>(s).height();
  }

  TrackerConfig config_;
  std::vector<Track> tracks_;
  std::uint64_t next_id_ = 1;
};

}  // namespace evassoc
