#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>
#include <vector>

#include "evassoc/tracker.hpp"

using namespace evassoc;

namespace {

MassGrid reference_grid() {
  return MassGrid::from_rows({
      {{0.8, 0.1, 0.1}, {0.5, 0.4, 0.1}, {0.1, 0.8, 0.1}, {0.0, 0.9, 0.1}},
      {{0.5, 0.1, 0.4}, {0.5, 0.1, 0.4}, {0.1, 0.7, 0.2}, {0.0, 0.9, 0.1}},
      {{0.4, 0.1, 0.5}, {0.8, 0.1, 0.1}, {0.1, 0.6, 0.3}, {0.0, 0.9, 0.1}},
  });
}

PerceivedObject measurement(double center, const std::string& label) {
  return PerceivedObject{FuzzyQuantity1D(center - 4.0, center - 1.0, center + 1.0, center + 4.0),
                         label};
}

}  // namespace

TEST_CASE("predict with identity inflation leaves the state unchanged") {
  Track t;
  t.state = FuzzyQuantity1D(0.0, 1.0, 3.0, 4.0, 0.8);
  t.misses = 3;
  const Track out = predict(t, 1.0, 1.0);
  const auto& q = std::get<FuzzyQuantity1D>(out.state);
  CHECK(q.support_lo() == 0.0);
  CHECK(q.core_lo() == 1.0);
  CHECK(q.core_hi() == 3.0);
  CHECK(q.support_hi() == 4.0);
  CHECK(q.height() == 0.8);
}

TEST_CASE("predict widens the support by inflation^misses about the core center") {
  Track t;
  t.state = FuzzyQuantity1D(-2.0, -1.0, 1.0, 2.0);
  t.misses = 2;
  const Track out = predict(t, 1.0, 1.5);
  const auto& q = std::get<FuzzyQuantity1D>(out.state);
  CHECK(q.support_width() == Catch::Approx(4.0 * 2.25));
  CHECK(q.support_lo() == Catch::Approx(-4.5));
  CHECK(q.support_hi() == Catch::Approx(4.5));
  // core untouched
  CHECK(q.core_lo() == -1.0);
  CHECK(q.core_hi() == 1.0);
}

TEST_CASE("predict decays the height per coast") {
  Track t;
  t.state = FuzzyQuantity1D(-2.0, -1.0, 1.0, 2.0, 1.0);
  t.misses = 0;
  for (int k = 0; k < 3; ++k) t = predict(t, 1.0, 1.0, 0.9);
  CHECK(std::get<FuzzyQuantity1D>(t.state).height() == Catch::Approx(0.729).margin(1e-12));
}

TEST_CASE("predict works on 2D states and validates arguments") {
  Track t;
  t.state = FuzzyQuantity2D(FuzzyQuantity1D(-2.0, -1.0, 1.0, 2.0),
                            FuzzyQuantity1D(-4.0, -2.0, 2.0, 4.0));
  t.misses = 1;
  const Track out = predict(t, 0.5, 2.0, 0.5);
  const auto& q = std::get<FuzzyQuantity2D>(out.state);
  CHECK(q.x().support_width() == Catch::Approx(8.0));
  CHECK(q.y().support_width() == Catch::Approx(16.0));
  CHECK(q.height() == Catch::Approx(0.5));

  CHECK_THROWS_AS(predict(t, 0.0, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(predict(t, 1.0, 0.5), std::invalid_argument);
}

TEST_CASE("stepping an empty tracker spawns tentative tracks") {
  Tracker tracker;
  const StepResult r = tracker.step({measurement(0.0, "a"), measurement(20.0, "b")});
  REQUIRE(r.tracks.size() == 2);
  CHECK(r.tracks[0].status == TrackStatus::Tentative);
  CHECK(r.tracks[1].status == TrackStatus::Tentative);
  CHECK(r.tracks[0].hits == 1);
  CHECK(r.artifacts.result.confidence == 0.0);
  CHECK(r.artifacts.result.appeared.size() == 2);
}

TEST_CASE("reference grid drives the lifecycle as expected") {
  TrackerConfig cfg;
  Tracker tracker(cfg);
  for (int j = 0; j < 4; ++j)
    tracker.seed_track(FuzzyQuantity1D(), "Y" + std::to_string(j + 1));

  const StepResult r = tracker.step_with_grid(reference_grid());
  REQUIRE(r.tracks.size() == 5);  // Y1..Y4 survive, one spawn for X2

  CHECK(r.tracks[0].label == "Y1");
  CHECK(r.tracks[0].status == TrackStatus::Confirmed);
  CHECK(r.tracks[0].misses == 0);

  CHECK(r.tracks[2].label == "Y3");
  CHECK(r.tracks[2].status == TrackStatus::Coasting);
  CHECK(r.tracks[2].misses == 1);
  CHECK(r.tracks[3].label == "Y4");
  CHECK(r.tracks[3].status == TrackStatus::Coasting);
  CHECK(r.tracks[3].misses == 1);

  CHECK(r.tracks[4].status == TrackStatus::Tentative);
  CHECK(r.tracks[4].hits == 1);
}

TEST_CASE("a never-matched track dies within max_misses+1 empty frames") {
  TrackerConfig cfg;
  cfg.max_misses = 5;
  Tracker tracker(cfg);
  tracker.seed_track(FuzzyQuantity1D(-2.0, -1.0, 1.0, 2.0), "lost");

  int frames_until_gone = 0;
  for (int f = 0; f < cfg.max_misses + 1; ++f) {
    tracker.step({});
    ++frames_until_gone;
    if (tracker.tracks().empty()) break;
  }
  CHECK(tracker.tracks().empty());
  CHECK(frames_until_gone <= cfg.max_misses + 1);
}

TEST_CASE("height decay alone can delete a track") {
  TrackerConfig cfg;
  cfg.max_misses = 1000;
  cfg.height_decay = 0.5;
  cfg.delete_height = 0.3;
  Tracker tracker(cfg);
  tracker.seed_track(FuzzyQuantity1D(-2.0, -1.0, 1.0, 2.0));
  tracker.step({});  // height 0.5
  REQUIRE(tracker.tracks().size() == 1);
  tracker.step({});  // height 0.25 < 0.3 -> deleted
  CHECK(tracker.tracks().empty());
}

TEST_CASE("an empty frame coasts every track without spawning") {
  TrackerConfig cfg;
  Tracker tracker(cfg);
  tracker.seed_track(FuzzyQuantity1D(-2.0, -1.0, 1.0, 2.0), "a");
  tracker.seed_track(FuzzyQuantity1D(8.0, 9.0, 11.0, 12.0), "b");

  const StepResult r = tracker.step({});
  REQUIRE(r.tracks.size() == 2);
  for (const auto& t : r.tracks) {
    CHECK(t.misses == 1);
    CHECK(t.status == TrackStatus::Coasting);
    CHECK(std::get<FuzzyQuantity1D>(t.state).support_width() >
          4.0);  // inflated by 1.2^1
    CHECK(std::get<FuzzyQuantity1D>(t.state).height() == Catch::Approx(0.9));
  }
  CHECK(r.artifacts.result.appeared.empty());
  CHECK(r.artifacts.result.disappeared.size() == 2);
}

TEST_CASE("a matched-every-frame track stays confirmed and ids never recycle") {
  Tracker tracker;
  std::set<std::uint64_t> all_ids;
  tracker.seed_track(FuzzyQuantity1D(-4.0, -1.0, 1.0, 4.0), "stable");
  all_ids.insert(tracker.tracks()[0].id);
  const std::uint64_t stable_id = tracker.tracks()[0].id;

  for (int f = 0; f < 10; ++f) {
    // The stable object plus one far-away transient that appears and vanishes,
    // forcing spawns and deletions around the stable track.
    std::vector<PerceivedObject> frame{measurement(0.0, "stable")};
    if (f % 2 == 0) frame.push_back(measurement(100.0 + 10.0 * f, "blip"));
    const StepResult r = tracker.step(frame);
    for (const auto& t : r.tracks) all_ids.insert(t.id);

    bool found = false;
    for (const auto& t : r.tracks)
      if (t.id == stable_id) {
        found = true;
        CHECK(t.status == TrackStatus::Confirmed);
        CHECK(t.misses == 0);
      }
    CHECK(found);
  }
  // Every spawn got a fresh id: the set only ever grows.
  CHECK(all_ids.size() >= 6);
}

TEST_CASE("tentative tracks confirm after confirm_hits matches") {
  TrackerConfig cfg;
  cfg.confirm_hits = 2;
  Tracker tracker(cfg);

  tracker.step({measurement(0.0, "new")});
  REQUIRE(tracker.tracks().size() == 1);
  CHECK(tracker.tracks()[0].status == TrackStatus::Tentative);

  tracker.step({measurement(0.5, "new")});
  REQUIRE(tracker.tracks().size() == 1);
  CHECK(tracker.tracks()[0].status == TrackStatus::Confirmed);
  CHECK(tracker.tracks()[0].hits == 2);
}

TEST_CASE("a coasting track recovers to confirmed on re-match") {
  Tracker tracker;
  tracker.seed_track(FuzzyQuantity1D(-4.0, -1.0, 1.0, 4.0), "blinker");
  tracker.step({});
  REQUIRE(tracker.tracks().size() == 1);
  CHECK(tracker.tracks()[0].status == TrackStatus::Coasting);

  tracker.step({measurement(0.0, "blinker")});
  REQUIRE(tracker.tracks().size() == 1);
  CHECK(tracker.tracks()[0].status == TrackStatus::Confirmed);
  CHECK(tracker.tracks()[0].misses == 0);
}

TEST_CASE("mixed dimensionalities are rejected") {
  Tracker tracker;
  tracker.seed_track(FuzzyQuantity1D(-2.0, -1.0, 1.0, 2.0));
  const FuzzyQuantity2D q2(FuzzyQuantity1D(-2.0, -1.0, 1.0, 2.0),
                           FuzzyQuantity1D(-2.0, -1.0, 1.0, 2.0));
  CHECK_THROWS_AS(tracker.step({PerceivedObject{q2, ""}}), std::invalid_argument);
}

TEST_CASE("grid dimensions are validated against the track set") {
  Tracker tracker;
  tracker.seed_track(FuzzyQuantity1D());
  CHECK_THROWS_AS(tracker.step_with_grid(MassGrid(1, 3)), std::invalid_argument);
}

TEST_CASE("tracker config is validated") {
  TrackerConfig bad;
  bad.inflation = 0.9;
  CHECK_THROWS_AS(Tracker(bad), std::invalid_argument);
  bad = TrackerConfig{};
  bad.height_decay = 0.0;
  CHECK_THROWS_AS(Tracker(bad), std::invalid_argument);
  bad = TrackerConfig{};
  bad.alpha0 = 1.5;
  CHECK_THROWS_AS(Tracker(bad), std::invalid_argument);
  bad = TrackerConfig{};
  bad.dt = 0.0;
  CHECK_THROWS_AS(Tracker(bad), std::invalid_argument);
}
