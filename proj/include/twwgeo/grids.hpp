#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "twwgeo/structures.hpp"

namespace twwgeo {

/// Finite set of integer points; stored sorted by (x, y) with duplicates
/// removed, so equality is structural.
struct PointSet {
  std::vector<std::pair<long long, long long>> points;
};

PointSet make_point_set(std::vector<std::pair<long long, long long>> points);

/// Witness for a t-grid: cells[i][j] is the chosen point p_{i,j}, where i
/// indexes the column blocks (x ranges) and j the row blocks (y ranges).
/// Blocks are closed coordinate intervals [lo, hi], strictly increasing and
/// pairwise disjoint along each axis.
struct GridWitness {
  int t = 0;
  std::vector<std::vector<std::pair<long long, long long>>> cells;
  std::vector<std::pair<long long, long long>> col_blocks;
  std::vector<std::pair<long long, long long>> row_blocks;
};

/// True iff all t^2 witness points belong to ps, lie inside their blocks, and
/// satisfy the two strict order conditions (i < i' forces smaller x across all
/// rows; j < j' forces smaller y across all columns).
bool verify_grid(const PointSet& ps, const GridWitness& w);

struct GridSearchOptions {
  bool force = false;  // bypass the size guard
};

/// Exact t-grid search. Returns the canonical (lexicographically smallest)
/// witness or nullopt. Throws TooLarge when the instance exceeds the size
/// guard (more than 4096 distinct columns with t > 8) and force is not set.
std::optional<GridWitness> find_grid(const PointSet& ps, int t, const GridSearchOptions& opts = {});

struct MaxGridResult {
  int t = 0;
  GridWitness witness;
  bool exact = true;  // false when the size guard forced the heuristic fallback
};

/// Largest t with a t-grid, with a witness. On oversized instances the result
/// downgrades to a heuristic lower bound (exact = false).
MaxGridResult max_grid(const PointSet& ps, const GridSearchOptions& opts = {});

/// Given a 2m-grid witness, return an m-grid witness whose x-coordinate range
/// and y-coordinate range are disjoint (all x < all y, or all y < all x).
GridWitness disjointify_grid(const PointSet& ps, const GridWitness& w);

/// First colour class (in colour order 0,1,...) containing a t-grid.
/// `colors[p]` must be defined for every point of ps.
std::optional<std::pair<int, GridWitness>> monochromatic_subgrid(
    const PointSet& ps, const std::vector<int>& colors, int t,
    const GridSearchOptions& opts = {});

/// Incidence point set of a directed relation under an order: one column per
/// vertex (x = 1-based rank in the order), one row per pair (y = 1-based rank
/// of the pair in the lexicographic order of ranked endpoints), a point for
/// each (incident vertex, pair).
PointSet incidence_points(const std::vector<std::pair<int, int>>& rel,
                          const std::vector<int>& order);

/// Adjacency point set: one point (rank(u), rank(v)) per pair, 1-based.
PointSet adjacency_points(const std::vector<std::pair<int, int>>& rel,
                          const std::vector<int>& order);

}  // namespace twwgeo
