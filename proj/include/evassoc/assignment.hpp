#pragma once

// Conflict resolution: fuse the dual belief matrices into one pairwise score
// matrix, solve the resulting assignment problem (Hungarian method), filter
// weak pairs against the non-association masses and derive the global
// confidence score of the association.

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "evassoc/combination.hpp"
#include "evassoc/matrix.hpp"

namespace evassoc {

/// Product of the two directed belief matrices plus the star (non-association)
/// masses of each axis, kept for the post-assignment filter.
struct CombinedBeliefMatrix {
  Matrix cells;                  ///< perceived x known pairwise scores
  std::vector<double> row_star;  ///< star mass of each perceived object
  std::vector<double> col_star;  ///< star mass of each known object
};

/// Square zero-padded copy of a rectangular score matrix.
struct PaddedCostMatrix {
  Matrix cells;
  std::size_t real_rows = 0;
  std::size_t real_cols = 0;
};

/// Total assignment over the padded square matrix: pairs[row] = column.
struct Assignment {
  std::vector<std::size_t> pairs;
  std::size_t padded_size = 0;
};

/// Final outcome of one association round.
struct AssociationResult {
  std::vector<std::pair<std::size_t, std::size_t>> matched;  ///< (perceived, known)
  std::vector<std::size_t> appeared;     ///< perceived objects with no partner
  std::vector<std::size_t> disappeared;  ///< known objects with no partner
  double confidence = 0.0;               ///< psi score in [0, 1]
  bool via_shortcut = false;  ///< true when the naive decisions already agreed
};

/// C(i,j) = m_i*(Y_j) * m_j*(X_i): a pair scores high only when each object
/// nominates the other.
inline CombinedBeliefMatrix combine_matrices(const BeliefMatrix& pk, const BeliefMatrix& kp) {
  const std::size_t n = pk.columns.size();
  const std::size_t m = kp.columns.size();
  if (pk.candidate_count != m || kp.candidate_count != n)
    throw std::invalid_argument("combine_matrices: mismatched belief matrices");

  CombinedBeliefMatrix out{Matrix(n, m), std::vector<double>(n), std::vector<double>(m)};
  for (std::size_t i = 0; i < n; ++i) out.row_star[i] = pk.columns[i].star;
  for (std::size_t j = 0; j < m; ++j) out.col_star[j] = kp.columns[j].star;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      out.cells(i, j) = pk.columns[i].singles[j] * kp.columns[j].singles[i];
  return out;
}

/// Pads a rectangular matrix with zero rows/columns into a square one so the
/// assignment solver sees a balanced problem.
inline PaddedCostMatrix pad_square(const Matrix& cells) {
  const std::size_t side = std::max(cells.rows(), cells.cols());
  PaddedCostMatrix out{Matrix(side, side, 0.0), cells.rows(), cells.cols()};
  for (std::size_t i = 0; i < cells.rows(); ++i)
    for (std::size_t j = 0; j < cells.cols(); ++j) out.cells(i, j) = cells(i, j);
  return out;
}

/// Maximum-sum total assignment on a square score matrix via the Munkres
/// star/prime algorithm run on the complement 1 - C. Deterministic: scanning
/// is always row-ascending then column-ascending, so equal-score problems
/// always resolve the same way.
inline Assignment hungarian_max(const Matrix& square) {
  if (!square.square()) throw std::invalid_argument("hungarian_max: matrix must be square");
  const std::size_t n = square.rows();
  Assignment out;
  out.padded_size = n;
  out.pairs.assign(n, 0);
  if (n == 0) return out;

  Matrix d(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d(i, j) = 1.0 - square(i, j);

  // mask: 0 = none, 1 = starred zero, 2 = primed zero
  std::vector<int> mask(n * n, 0);
  std::vector<char> row_cover(n, 0), col_cover(n, 0);
  auto m = [&](std::size_t i, std::size_t j) -> int& { return mask[i * n + j]; };

  // Reduce rows, then star a maximal independent set of zeros.
  for (std::size_t i = 0; i < n; ++i) {
    double lo = d(i, 0);
    for (std::size_t j = 1; j < n; ++j) lo = std::min(lo, d(i, j));
    for (std::size_t j = 0; j < n; ++j) d(i, j) -= lo;
  }
  {
    std::vector<char> col_used(n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d(i, j) == 0.0 && !col_used[j]) {
          m(i, j) = 1;
          col_used[j] = 1;
          break;
        }
  }

  auto covered_stars = [&]() {
    std::fill(col_cover.begin(), col_cover.end(), 0);
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (m(i, j) == 1 && !col_cover[j]) {
          col_cover[j] = 1;
          ++count;
        }
    return count;
  };

  while (covered_stars() < n) {
    std::fill(row_cover.begin(), row_cover.end(), 0);
    // Prime uncovered zeros until an augmenting path appears.
    for (;;) {
      std::size_t zi = n, zj = n;
      for (std::size_t i = 0; i < n && zi == n; ++i) {
        if (row_cover[i]) continue;
        for (std::size_t j = 0; j < n; ++j)
          if (!col_cover[j] && d(i, j) == 0.0) {
            zi = i;
            zj = j;
            break;
          }
      }
      if (zi == n) {
        // No uncovered zero: shift mass with the smallest uncovered value.
        double delta = 0.0;
        bool first = true;
        for (std::size_t i = 0; i < n; ++i) {
          if (row_cover[i]) continue;
          for (std::size_t j = 0; j < n; ++j)
            if (!col_cover[j] && (first || d(i, j) < delta)) {
              delta = d(i, j);
              first = false;
            }
        }
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) {
            if (row_cover[i] && col_cover[j])
              d(i, j) += delta;
            else if (!row_cover[i] && !col_cover[j])
              d(i, j) -= delta;
          }
        continue;
      }

      m(zi, zj) = 2;
      std::size_t star_col = n;
      for (std::size_t j = 0; j < n; ++j)
        if (m(zi, j) == 1) {
          star_col = j;
          break;
        }
      if (star_col != n) {
        row_cover[zi] = 1;
        col_cover[star_col] = 0;
        continue;
      }

      // Augment: alternate primes and stars starting from (zi, zj).
      std::vector<std::pair<std::size_t, std::size_t>> path{{zi, zj}};
      for (;;) {
        std::size_t star_row = n;
        for (std::size_t i = 0; i < n; ++i)
          if (m(i, path.back().second) == 1) {
            star_row = i;
            break;
          }
        if (star_row == n) break;
        path.emplace_back(star_row, path.back().second);
        std::size_t prime_col = 0;
        while (m(star_row, prime_col) != 2) ++prime_col;
        path.emplace_back(star_row, prime_col);
      }
      for (const auto& [i, j] : path) m(i, j) = m(i, j) == 1 ? 0 : 1;
      for (auto& v : mask)
        if (v == 2) v = 0;
      break;
    }
  }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (m(i, j) == 1) out.pairs[i] = j;
  return out;
}

/// psi: mean matched pairwise score against the smaller object count. Zero
/// when either side is empty.
inline double confidence(const Matrix& cells,
                         const std::vector<std::pair<std::size_t, std::size_t>>& matched,
                         std::size_t perceived, std::size_t known) {
  const std::size_t denom = std::min(perceived, known);
  if (denom == 0) return 0.0;
  double total = 0.0;
  for (const auto& [i, j] : matched) total += cells(i, j);
  return total / static_cast<double>(denom);
}

/// Drops assignment pairs that land on padding or do not strictly beat both
/// objects' non-association masses, then classifies the leftovers.
inline AssociationResult filter_assignments(const CombinedBeliefMatrix& combined,
                                            const Assignment& assignment) {
  const std::size_t n = combined.cells.rows();
  const std::size_t m = combined.cells.cols();
  AssociationResult out;
  std::vector<char> known_used(m, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = assignment.pairs[i];
    if (j >= m) continue;
    const double score = combined.cells(i, j);
    if (score > std::max(combined.row_star[i], combined.col_star[j])) {
      out.matched.emplace_back(i, j);
      known_used[j] = 1;
    }
  }
  std::vector<char> perceived_used(n, 0);
  for (const auto& [i, j] : out.matched) perceived_used[i] = 1;
  for (std::size_t i = 0; i < n; ++i)
    if (!perceived_used[i]) out.appeared.push_back(i);
  for (std::size_t j = 0; j < m; ++j)
    if (!known_used[j]) out.disappeared.push_back(j);
  out.confidence = confidence(combined.cells, out.matched, n, m);
  return out;
}

/// Everything one association round produces, for callers that want to report
/// the intermediate evidence as well as the outcome.
struct AssociationArtifacts {
  BeliefMatrix pk;
  BeliefMatrix kp;
  CombinedBeliefMatrix combined;
  AssociationResult result;
};

/// Runs one full association round over a pairwise mass grid. When the naive
/// max-of-belief decisions of both directed matrices agree the relation is
/// accepted as-is; otherwise (or when `force_hungarian` is set) the Hungarian
/// assignment plus star filter resolves the conflict.
inline AssociationArtifacts associate_detailed(const MassGrid& grid, bool force_hungarian = false) {
  AssociationArtifacts art;
  auto [pk, kp] = build_belief_matrices(grid);
  art.pk = std::move(pk);
  art.kp = std::move(kp);
  art.combined = combine_matrices(art.pk, art.kp);
  const std::size_t n = grid.perceived_count();
  const std::size_t m = grid.known_count();

  if (!force_hungarian) {
    const DecisionPair decisions = naive_decisions(art.pk, art.kp);
    if (decisions.agree) {
      AssociationResult res;
      res.via_shortcut = true;
      std::vector<char> known_used(m, 0);
      for (std::size_t i = 0; i < n; ++i) {
        const ColumnChoice& c = decisions.perceived.choices[i];
        if (c.kind == ChoiceKind::Candidate) {
          res.matched.emplace_back(i, c.index);
          known_used[c.index] = 1;
        } else {
          res.appeared.push_back(i);
        }
      }
      for (std::size_t j = 0; j < m; ++j)
        if (!known_used[j]) res.disappeared.push_back(j);
      res.confidence = confidence(art.combined.cells, res.matched, n, m);
      art.result = std::move(res);
      return art;
    }
  }

  const PaddedCostMatrix padded = pad_square(art.combined.cells);
  const Assignment assignment = hungarian_max(padded.cells);
  art.result = filter_assignments(art.combined, assignment);
  return art;
}

inline AssociationResult associate(const MassGrid& grid, bool force_hungarian = false) {
  return associate_detailed(grid, force_hungarian).result;
}

}  // namespace evassoc
