#pragma once

// Conversion of a similarity index into a basic belief assignment for one
// (perceived, known) pair.

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "evassoc/fuzzy.hpp"

namespace evassoc {

/// Reliability coefficient of an information source, in [0, 1].
struct Reliability {
  double alpha0 = 0.9;

  explicit Reliability(double a) : alpha0(a) {
    if (!(a >= 0.0 && a <= 1.0))
      throw std::invalid_argument("reliability alpha0 must be in [0, 1]");
  }
  Reliability() = default;
};

/// Basic belief assignment for one pair: mass that the perceived object is in
/// relation with the candidate, that it is not, and residual ignorance.
/// Components are nonnegative and sum to 1 (tolerance 1e-12).
struct MassTriple {
  double yes = 0.0;
  double no = 0.0;
  double theta = 1.0;

  MassTriple() = default;
  MassTriple(double yes_, double no_, double theta_) : yes(yes_), no(no_), theta(theta_) {
    if (!(yes >= 0.0 && no >= 0.0 && theta >= 0.0))
      throw std::invalid_argument("mass triple: negative component");
    if (std::abs(yes + no + theta - 1.0) > 1e-12)
      throw std::invalid_argument("mass triple: components must sum to 1");
  }
};

/// Half-sine mass generation operator. The similarity index is mapped through
///   d = pi * (2 * (1 - s) - 1)
///   m_no  = alpha0 * (sin(d/2) + 1) / 2
///   m_yes = alpha0 - m_no
///   m_theta = 1 - alpha0
/// so total agreement (s = 1) puts alpha0 on "yes", total discordance (s = 0)
/// puts alpha0 on "no", and the remaining 1 - alpha0 is ignorance.
inline MassTriple generate_mass_triple(SimilarityIndex s, Reliability r) {
  if (!(s.value >= 0.0 && s.value <= 1.0))
    throw std::invalid_argument("generate_mass_triple: similarity out of [0, 1]");
  const double d = std::numbers::pi * (2.0 * (1.0 - s.value) - 1.0);
  const double half_sine = 0.5 * (std::sin(0.5 * d) + 1.0);
  const double no = r.alpha0 * half_sine;
  const double yes = r.alpha0 - no;
  return MassTriple(yes, no, 1.0 - r.alpha0);
}

}  // namespace evassoc
