#pragma once

// Closed-form generalized Dempster combination over the restricted referential
// {Y1..Yn, *, Theta}: per source object, the pairwise mass triples against all
// candidates collapse into one combined mass set without running the cascade.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "evassoc/errors.hpp"
#include "evassoc/masses.hpp"

namespace evassoc {

/// One column of a belief matrix: combined masses over the candidates, the
/// "associated with nothing" hypothesis (*) and ignorance (Theta), plus the
/// renormalizer K and the pre-normalization conflict mass.
struct CombinedMassSet {
  std::vector<double> singles;  ///< one mass per candidate
  double star = 0.0;
  double theta = 1.0;
  double k_norm = 1.0;    ///< 1 / (1 - conflict)
  double conflict = 0.0;  ///< mass on the empty set before renormalization
};

enum class Orientation { PerceivedToKnown, KnownToPerceived };

/// Combined mass sets arranged in columns, one per source object.
struct BeliefMatrix {
  std::vector<CombinedMassSet> columns;
  Orientation orientation = Orientation::PerceivedToKnown;
  std::size_t candidate_count = 0;  ///< dimension of every column's `singles`
};

/// Rectangular grid of pairwise mass triples, perceived objects as rows and
/// known objects as columns. Either side may be empty.
class MassGrid {
 public:
  MassGrid(std::size_t perceived, std::size_t known)
      : perceived_(perceived), known_(known), cells_(perceived * known) {}

  static MassGrid from_rows(const std::vector<std::vector<MassTriple>>& rows) {
    const std::size_t known = rows.empty() ? 0 : rows.front().size();
    MassGrid grid(rows.size(), known);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != known)
        throw std::invalid_argument("mass grid: ragged rows");
      for (std::size_t j = 0; j < known; ++j) grid.at(i, j) = rows[i][j];
    }
    return grid;
  }

  MassTriple& at(std::size_t i, std::size_t j) { return cells_[i * known_ + j]; }
  const MassTriple& at(std::size_t i, std::size_t j) const { return cells_[i * known_ + j]; }

  std::size_t perceived_count() const { return perceived_; }
  std::size_t known_count() const { return known_; }

 private:
  std::size_t perceived_;
  std::size_t known_;
  std::vector<MassTriple> cells_;
};

/// Combines the mass triples of one source object against n candidates.
///
/// Unnormalized masses:
///   u(Yj)    = yes_j * prod_{k != j} (1 - yes_k)
///   u(*)     = prod_j no_j
///   u(Theta) = prod_j (theta_j + no_j) - prod_j no_j
/// The conflict is 1 minus their total and K = 1/(1 - conflict) rescales the
/// rest back onto the frame. An empty input yields the vacuous set (all mass
/// on Theta). Throws TotalConflictError when the evidence is contradictory
/// with certainty (conflict >= 1 - 1e-12, i.e. two candidates asserted with
/// mass 1).
inline CombinedMassSet combine_row(std::span<const MassTriple> triples) {
  const std::size_t n = triples.size();
  if (n == 0) return CombinedMassSet{};

  std::vector<double> unnorm(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double p = triples[j].yes;
    for (std::size_t k = 0; k < n; ++k)
      if (k != j) p *= 1.0 - triples[k].yes;
    unnorm[j] = p;
  }
  double u_star = 1.0;
  for (const auto& t : triples) u_star *= t.no;
  double u_theta = 1.0;
  for (const auto& t : triples) u_theta *= t.theta + t.no;
  u_theta -= u_star;
  u_theta = std::max(u_theta, 0.0);

  double total = u_star + u_theta;
  for (double u : unnorm) total += u;
  if (total <= 1e-12)
    throw TotalConflictError("combine_row: total conflict, contradictory certain evidence");

  CombinedMassSet out;
  out.k_norm = 1.0 / total;
  out.conflict = std::max(0.0, 1.0 - total);
  out.singles.resize(n);
  for (std::size_t j = 0; j < n; ++j) out.singles[j] = unnorm[j] * out.k_norm;
  out.star = u_star * out.k_norm;
  out.theta = u_theta * out.k_norm;
  return out;
}

/// Builds the dual belief matrices from one triple grid: column i of the
/// first combines perceived object i against every known candidate; column j
/// of the second combines known object j against every perceived candidate
/// (same triples, transposed axis).
inline std::pair<BeliefMatrix, BeliefMatrix> build_belief_matrices(const MassGrid& grid) {
  const std::size_t n = grid.perceived_count();
  const std::size_t m = grid.known_count();

  BeliefMatrix pk{{}, Orientation::PerceivedToKnown, m};
  pk.columns.reserve(n);
  std::vector<MassTriple> row(m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) row[j] = grid.at(i, j);
    pk.columns.push_back(combine_row(row));
  }

  BeliefMatrix kp{{}, Orientation::KnownToPerceived, n};
  kp.columns.reserve(m);
  std::vector<MassTriple> col(n);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < n; ++i) col[i] = grid.at(i, j);
    kp.columns.push_back(combine_row(col));
  }
  return {std::move(pk), std::move(kp)};
}

enum class ChoiceKind { Candidate, Star, Theta };

/// Max-of-belief outcome for one column. `index` is meaningful for
/// ChoiceKind::Candidate; `tied` flags a non-unique maximum.
struct ColumnChoice {
  ChoiceKind kind = ChoiceKind::Theta;
  std::size_t index = 0;
  bool tied = false;
};

/// Max-of-belief decisions for every column of one belief matrix.
struct NaiveDecision {
  std::vector<ColumnChoice> choices;
};

struct DecisionPair {
  NaiveDecision perceived;  ///< decisions of the perceived-to-known matrix
  NaiveDecision known;      ///< decisions of the known-to-perceived matrix
  bool agree = false;
};

namespace detail {

inline ColumnChoice column_argmax(const CombinedMassSet& column) {
  ColumnChoice choice;
  double best = column.theta;
  choice.kind = ChoiceKind::Theta;
  std::size_t best_count = 1;

  auto consider = [&](double v, ChoiceKind kind, std::size_t index) {
    if (v > best) {
      best = v;
      choice.kind = kind;
      choice.index = index;
      best_count = 1;
    } else if (v == best) {
      ++best_count;
    }
  };
  consider(column.star, ChoiceKind::Star, 0);
  for (std::size_t j = 0; j < column.singles.size(); ++j)
    consider(column.singles[j], ChoiceKind::Candidate, j);
  choice.tied = best_count > 1;
  return choice;
}

}  // namespace detail

/// Takes the maximum of belief down each column of both matrices. The pair
/// agrees when no maximum is tied and both matrices induce the same relation
/// set; agreement lets the caller skip conflict resolution entirely.
inline DecisionPair naive_decisions(const BeliefMatrix& pk, const BeliefMatrix& kp) {
  DecisionPair out;
  out.perceived.choices.reserve(pk.columns.size());
  for (const auto& c : pk.columns) out.perceived.choices.push_back(detail::column_argmax(c));
  out.known.choices.reserve(kp.columns.size());
  for (const auto& c : kp.columns) out.known.choices.push_back(detail::column_argmax(c));

  for (const auto& c : out.perceived.choices)
    if (c.tied) return out;
  for (const auto& c : out.known.choices)
    if (c.tied) return out;

  std::vector<std::pair<std::size_t, std::size_t>> rel_pk, rel_kp;
  for (std::size_t i = 0; i < out.perceived.choices.size(); ++i)
    if (out.perceived.choices[i].kind == ChoiceKind::Candidate)
      rel_pk.emplace_back(i, out.perceived.choices[i].index);
  for (std::size_t j = 0; j < out.known.choices.size(); ++j)
    if (out.known.choices[j].kind == ChoiceKind::Candidate)
      rel_kp.emplace_back(out.known.choices[j].index, j);
  std::sort(rel_pk.begin(), rel_pk.end());
  std::sort(rel_kp.begin(), rel_kp.end());
  // Each relation is single-valued per column on its own side, so equality of
  // the two sets already makes the relation one-to-one.
  out.agree = rel_pk == rel_kp;
  return out;
}

}  // namespace evassoc
