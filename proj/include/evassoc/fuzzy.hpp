#pragma once

// Trapezoidal fuzzy quantities and the concordance (similarity) index between
// a perceived measurement and a known prediction window. Support width encodes
// imprecision, height encodes certainty.

#include <algorithm>
#include <cassert>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace evassoc {

/// Trapezoidal possibility distribution on the real line.
/// Membership is 0 at the support edges, `height` on [core_lo, core_hi],
/// and linear in between.
class FuzzyQuantity1D {
 public:
  /// Unit placeholder window around 0 (used for default-constructed states).
  FuzzyQuantity1D() : FuzzyQuantity1D(-0.5, -0.25, 0.25, 0.5) {}

  FuzzyQuantity1D(double support_lo, double core_lo, double core_hi, double support_hi,
                  double height = 1.0)
      : support_lo_(support_lo),
        core_lo_(core_lo),
        core_hi_(core_hi),
        support_hi_(support_hi),
        height_(height) {
    if (!(std::isfinite(support_lo) && std::isfinite(core_lo) && std::isfinite(core_hi) &&
          std::isfinite(support_hi) && std::isfinite(height)))
      throw std::invalid_argument("fuzzy quantity: non-finite bound");
    if (!(support_lo <= core_lo && core_lo <= core_hi && core_hi <= support_hi))
      throw std::invalid_argument("fuzzy quantity: requires support_lo <= core_lo <= core_hi <= support_hi");
    if (!(height > 0.0 && height <= 1.0))
      throw std::invalid_argument("fuzzy quantity: height must be in (0, 1]");
  }

  double support_lo() const { return support_lo_; }
  double core_lo() const { return core_lo_; }
  double core_hi() const { return core_hi_; }
  double support_hi() const { return support_hi_; }
  double height() const { return height_; }

  double support_width() const { return support_hi_ - support_lo_; }
  double core_width() const { return core_hi_ - core_lo_; }
  double core_center() const { return 0.5 * (core_lo_ + core_hi_); }

  /// Closed-form trapezoid area, (support_width + core_width) * height / 2.
  double area() const { return 0.5 * (support_width() + core_width()) * height_; }

  double membership(double x) const {
    if (x < support_lo_ || x > support_hi_) return 0.0;
    if (x >= core_lo_ && x <= core_hi_) return height_;
    if (x < core_lo_) return height_ * (x - support_lo_) / (core_lo_ - support_lo_);
    return height_ * (support_hi_ - x) / (support_hi_ - core_hi_);
  }

  /// Same shape shifted to unit height.
  FuzzyQuantity1D normalized() const {
    return FuzzyQuantity1D(support_lo_, core_lo_, core_hi_, support_hi_, 1.0);
  }

  FuzzyQuantity1D translated(double offset) const {
    return FuzzyQuantity1D(support_lo_ + offset, core_lo_ + offset, core_hi_ + offset,
                           support_hi_ + offset, height_);
  }

 private:
  double support_lo_, core_lo_, core_hi_, support_hi_;
  double height_;
};

/// Index of agreement between two fuzzy quantities, always in [0, 1].
struct SimilarityIndex {
  double value = 0.0;
};

namespace detail {

// Piecewise-linear profile of min(mu_a, mu_b) over the support overlap,
// sampled at every corner of either trapezoid plus every crossing of their
// linear segments. Between consecutive sample points the min is linear, so
// the trapezoid rule on these points integrates it exactly.
inline std::vector<std::pair<double, double>> min_profile(const FuzzyQuantity1D& a,
                                                          const FuzzyQuantity1D& b) {
  const double lo = std::max(a.support_lo(), b.support_lo());
  const double hi = std::min(a.support_hi(), b.support_hi());
  if (!(hi > lo)) return {};

  std::vector<double> knots{lo, hi};
  for (double x : {a.core_lo(), a.core_hi(), b.core_lo(), b.core_hi()})
    if (x > lo && x < hi) knots.push_back(x);
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

  std::vector<std::pair<double, double>> profile;
  profile.reserve(2 * knots.size());
  auto push = [&](double x) {
    profile.emplace_back(x, std::min(a.membership(x), b.membership(x)));
  };
  push(knots.front());
  for (std::size_t k = 1; k < knots.size(); ++k) {
    const double x0 = knots[k - 1];
    const double x1 = knots[k];
    // Both memberships are linear on (x0, x1); insert their crossing if any.
    const double d0 = a.membership(x0) - b.membership(x0);
    const double d1 = a.membership(x1) - b.membership(x1);
    if ((d0 < 0.0 && d1 > 0.0) || (d0 > 0.0 && d1 < 0.0)) {
      const double t = d0 / (d0 - d1);
      push(x0 + t * (x1 - x0));
    }
    push(x1);
  }
  return profile;
}

inline double profile_area(const std::vector<std::pair<double, double>>& profile) {
  double area = 0.0;
  for (std::size_t k = 1; k < profile.size(); ++k) {
    area += 0.5 * (profile[k - 1].second + profile[k].second) *
            (profile[k].first - profile[k - 1].first);
  }
  return area;
}

inline double clamp_unit(double v) {
  assert(v > -1e-9 && v < 1.0 + 1e-9);
  return std::clamp(v, 0.0, 1.0);
}

}  // namespace detail

/// Exact area under min(mu_a, mu_b). Zero when the supports are disjoint.
inline double overlap_area_1d(const FuzzyQuantity1D& a, const FuzzyQuantity1D& b) {
  return detail::profile_area(detail::min_profile(a, b));
}

/// Min-combination of two trapezoids, reported as its trapezoidal hull:
/// support = extent of the overlap, core = argmax interval of the min
/// membership, height = its peak. The min itself can be piecewise linear
/// rather than trapezoidal; area computations use the exact profile, the
/// hull is a convenience representation. Disjoint supports give nullopt.
inline std::optional<FuzzyQuantity1D> intersect_1d(const FuzzyQuantity1D& a,
                                                   const FuzzyQuantity1D& b) {
  const auto profile = detail::min_profile(a, b);
  if (profile.empty()) return std::nullopt;

  double peak = 0.0;
  for (const auto& [x, v] : profile) peak = std::max(peak, v);
  if (peak <= 0.0) return std::nullopt;

  // The min of two quasi-concave memberships is quasi-concave, so the argmax
  // set is an interval.
  double core_lo = profile.back().first;
  double core_hi = profile.front().first;
  for (const auto& [x, v] : profile) {
    if (v >= peak) {
      core_lo = std::min(core_lo, x);
      core_hi = std::max(core_hi, x);
    }
  }
  return FuzzyQuantity1D(profile.front().first, core_lo, core_hi, profile.back().first, peak);
}

/// Concordance index for 1D quantities: area(intersection) / area(perceived).
/// Throws std::invalid_argument for a degenerate (zero-area) perceived quantity.
inline SimilarityIndex similarity_1d(const FuzzyQuantity1D& perceived,
                                     const FuzzyQuantity1D& known) {
  const double denom = perceived.area();
  if (!(denom > 0.0))
    throw std::invalid_argument("similarity_1d: perceived quantity has zero area");
  return SimilarityIndex{detail::clamp_unit(overlap_area_1d(perceived, known) / denom)};
}

/// Two-dimensional fuzzy quantity: an axis-aligned trapezoid shape per axis,
/// joined with the min operator. The joint height replaces the per-axis
/// heights: membership(x, y) = height * min(ux(x), uy(y)) with ux, uy the
/// axis shapes at unit height.
class FuzzyQuantity2D {
 public:
  FuzzyQuantity2D() = default;

  FuzzyQuantity2D(const FuzzyQuantity1D& x, const FuzzyQuantity1D& y, double height = 1.0)
      : x_(x.normalized()), y_(y.normalized()), height_(height) {
    if (!(height > 0.0 && height <= 1.0))
      throw std::invalid_argument("fuzzy quantity: height must be in (0, 1]");
  }

  const FuzzyQuantity1D& x() const { return x_; }
  const FuzzyQuantity1D& y() const { return y_; }
  double height() const { return height_; }

  double membership(double px, double py) const {
    return height_ * std::min(x_.membership(px), y_.membership(py));
  }

  /// Exact volume via the level-set identity: the t-cut of min(ux, uy) is the
  /// product of the axis cuts, whose widths shrink linearly from support to
  /// core width.
  double volume() const {
    const double ax = x_.support_width(), bx = x_.support_width() - x_.core_width();
    const double ay = y_.support_width(), by = y_.support_width() - y_.core_width();
    // integral over t in [0,1] of (ax - bx t)(ay - by t)
    const double integral = ax * ay - 0.5 * (ax * by + ay * bx) + bx * by / 3.0;
    return height_ * integral;
  }

  FuzzyQuantity2D translated(double dx, double dy) const {
    return FuzzyQuantity2D(x_.translated(dx), y_.translated(dy), height_);
  }

 private:
  FuzzyQuantity1D x_, y_;
  double height_ = 1.0;
};

/// Concordance index for 2D quantities: the symmetric volume ratio
/// vol(min(P, K)) / vol(max(P, K)), integrated on a regular grid over the
/// union support box (midpoint rule, `resolution`^2 cells). Numerator and
/// denominator share one grid, so identical quantities score exactly 1.
/// Throws std::invalid_argument for a zero-volume perceived quantity.
inline SimilarityIndex similarity_2d(const FuzzyQuantity2D& perceived,
                                     const FuzzyQuantity2D& known,
                                     std::size_t resolution = 256) {
  if (!(perceived.volume() > 0.0))
    throw std::invalid_argument("similarity_2d: perceived quantity has zero volume");
  if (resolution < 2) throw std::invalid_argument("similarity_2d: resolution too small");

  const double x_lo = std::min(perceived.x().support_lo(), known.x().support_lo());
  const double x_hi = std::max(perceived.x().support_hi(), known.x().support_hi());
  const double y_lo = std::min(perceived.y().support_lo(), known.y().support_lo());
  const double y_hi = std::max(perceived.y().support_hi(), known.y().support_hi());

  const double dx = (x_hi - x_lo) / static_cast<double>(resolution);
  const double dy = (y_hi - y_lo) / static_cast<double>(resolution);

  double inter = 0.0;
  double uni = 0.0;
  for (std::size_t i = 0; i < resolution; ++i) {
    const double px = x_lo + (static_cast<double>(i) + 0.5) * dx;
    for (std::size_t j = 0; j < resolution; ++j) {
      const double py = y_lo + (static_cast<double>(j) + 0.5) * dy;
      const double mp = perceived.membership(px, py);
      const double mk = known.membership(px, py);
      inter += std::min(mp, mk);
      uni += std::max(mp, mk);
    }
  }
  if (!(uni > 0.0)) return SimilarityIndex{0.0};
  return SimilarityIndex{detail::clamp_unit(inter / uni)};
}

}  // namespace evassoc
