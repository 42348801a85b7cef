#include "twwgeo/grids.hpp"

#include <algorithm>
#include <map>

namespace twwgeo {

namespace {

constexpr int kGuardColumns = 4096;
constexpr int kGuardT = 8;

// Index form of a point set: distinct sorted coordinate values plus, for each
// y index, the list of x indices that carry a point.
struct GridInstance {
  std::vector<long long> xs, ys;
  std::vector<std::vector<int>> xs_at_y;

  explicit GridInstance(const PointSet& ps) {
    xs.reserve(ps.points.size());
    ys.reserve(ps.points.size());
    for (auto [x, y] : ps.points) {
      xs.push_back(x);
      ys.push_back(y);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    xs_at_y.resize(ys.size());
    for (auto [x, y] : ps.points) {
      int xi = (int)(std::lower_bound(xs.begin(), xs.end(), x) - xs.begin());
      int yi = (int)(std::lower_bound(ys.begin(), ys.end(), y) - ys.begin());
      xs_at_y[yi].push_back(xi);
    }
  }
};

// Earliest-closing sweep over the rows: how many consecutive row blocks, each
// covering all `target` column blocks, fit into the row range. block_of_x maps
// an x index to its column block, or -1 when the column is outside the chosen
// prefix. Optionally records the closing row index of each block.
int greedy_row_blocks(const GridInstance& inst, const std::vector<int>& block_of_x, int target,
                      std::vector<int>* closings = nullptr) {
  if (target == 0) return 0;
  std::vector<char> covered(target, 0);
  int covered_count = 0;
  int closed = 0;
  for (size_t yi = 0; yi < inst.ys.size(); ++yi) {
    for (int xi : inst.xs_at_y[yi]) {
      int b = block_of_x[xi];
      if (b >= 0 && b < target && !covered[b]) {
        covered[b] = 1;
        ++covered_count;
      }
    }
    if (covered_count == target) {
      ++closed;
      if (closings) closings->push_back((int)yi);
      std::fill(covered.begin(), covered.end(), 0);
      covered_count = 0;
    }
  }
  return closed;
}

// Depth-first search over column breakpoints, in increasing lexicographic
// order, so the first full solution found is the canonical one. Searching
// contiguous partitions that start at column 0 and end at the last column is
// complete: any family of disjoint ordered column intervals can be padded to
// such a partition without emptying a cell. The prefix prune runs the row
// sweep restricted to the already fixed column blocks; adding more column
// blocks can only tighten the row requirement further.
bool search_columns(const GridInstance& inst, int t, int next_block, int start_col,
                    std::vector<int>& block_of_x, std::vector<int>& breaks) {
  int nx = (int)inst.xs.size();
  if (next_block == t - 1) {
    for (int xi = start_col; xi < nx; ++xi) block_of_x[xi] = next_block;
    if (greedy_row_blocks(inst, block_of_x, t) >= t) {
      breaks.push_back(nx);
      return true;
    }
    for (int xi = start_col; xi < nx; ++xi) block_of_x[xi] = -1;
    return false;
  }
  int max_end = nx - (t - next_block - 1);  // leave one column for each later block
  for (int end = start_col + 1; end <= max_end; ++end) {
    for (int xi = start_col; xi < end; ++xi) block_of_x[xi] = next_block;
    if (greedy_row_blocks(inst, block_of_x, next_block + 1) >= t) {
      breaks.push_back(end);
      if (search_columns(inst, t, next_block + 1, end, block_of_x, breaks)) return true;
      breaks.pop_back();
    }
  }
  for (int xi = start_col; xi < max_end; ++xi) block_of_x[xi] = -1;
  return false;
}

GridWitness build_witness(const PointSet& ps, const GridInstance& inst, int t,
                          const std::vector<int>& block_of_x, const std::vector<int>& row_block_of) {
  GridWitness w;
  w.t = t;
  w.cells.assign(t, std::vector<std::pair<long long, long long>>(t, {0, 0}));
  std::vector<std::vector<char>> filled(t, std::vector<char>(t, 0));
  for (auto [x, y] : ps.points) {  // ps is sorted, so the first hit is the smallest point
    int xi = (int)(std::lower_bound(inst.xs.begin(), inst.xs.end(), x) - inst.xs.begin());
    int yi = (int)(std::lower_bound(inst.ys.begin(), inst.ys.end(), y) - inst.ys.begin());
    int bi = block_of_x[xi];
    int bj = row_block_of[yi];
    if (bi < 0 || bj < 0) continue;
    if (!filled[bi][bj]) {
      filled[bi][bj] = 1;
      w.cells[bi][bj] = {x, y};
    }
  }
  w.col_blocks.assign(t, {0, 0});
  w.row_blocks.assign(t, {0, 0});
  for (int i = 0; i < t; ++i) {
    long long xlo = w.cells[i][0].first, xhi = xlo;
    long long ylo = w.cells[0][i].second, yhi = ylo;
    for (int j = 0; j < t; ++j) {
      xlo = std::min(xlo, w.cells[i][j].first);
      xhi = std::max(xhi, w.cells[i][j].first);
      ylo = std::min(ylo, w.cells[j][i].second);
      yhi = std::max(yhi, w.cells[j][i].second);
    }
    w.col_blocks[i] = {xlo, xhi};
    w.row_blocks[i] = {ylo, yhi};
  }
  return w;
}

std::optional<GridWitness> find_grid_no_guard(const PointSet& ps, const GridInstance& inst, int t) {
  if ((int)inst.xs.size() < t || (int)inst.ys.size() < t) return std::nullopt;
  std::vector<int> block_of_x(inst.xs.size(), -1);
  std::vector<int> breaks;
  if (!search_columns(inst, t, 0, 0, block_of_x, breaks)) return std::nullopt;

  std::vector<int> closings;
  greedy_row_blocks(inst, block_of_x, t, &closings);
  std::vector<int> row_block_of(inst.ys.size(), -1);
  int block = 0;
  for (size_t yi = 0; yi < inst.ys.size() && block < t; ++yi) {
    row_block_of[yi] = block;
    if (block < t - 1 && (int)yi == closings[block]) ++block;
    // rows after the (t-1)-th closing all join the final block
  }
  return build_witness(ps, inst, t, block_of_x, row_block_of);
}

// Balanced-block heuristic for oversized instances: equal column chunks, then
// the greedy row sweep. Only a lower bound.
std::optional<GridWitness> balanced_grid(const PointSet& ps, const GridInstance& inst, int t) {
  int nx = (int)inst.xs.size();
  if (nx < t || (int)inst.ys.size() < t) return std::nullopt;
  std::vector<int> block_of_x(nx, -1);
  for (int xi = 0; xi < nx; ++xi) block_of_x[xi] = std::min((int)((long long)xi * t / nx), t - 1);
  std::vector<int> closings;
  if (greedy_row_blocks(inst, block_of_x, t, &closings) < t) return std::nullopt;
  std::vector<int> row_block_of(inst.ys.size(), -1);
  int block = 0;
  for (size_t yi = 0; yi < inst.ys.size() && block < t; ++yi) {
    row_block_of[yi] = block;
    if (block < t - 1 && (int)yi == closings[block]) ++block;
  }
  return build_witness(ps, inst, t, block_of_x, row_block_of);
}

}  // namespace

PointSet make_point_set(std::vector<std::pair<long long, long long>> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  PointSet ps;
  ps.points = std::move(points);
  return ps;
}

bool verify_grid(const PointSet& ps, const GridWitness& w) {
  int t = w.t;
  if (t < 1) return false;
  if ((int)w.cells.size() != t || (int)w.col_blocks.size() != t || (int)w.row_blocks.size() != t)
    return false;
  for (const auto& row : w.cells)
    if ((int)row.size() != t) return false;
  for (int i = 0; i < t; ++i) {
    if (w.col_blocks[i].first > w.col_blocks[i].second) return false;
    if (w.row_blocks[i].first > w.row_blocks[i].second) return false;
    if (i > 0 && w.col_blocks[i - 1].second >= w.col_blocks[i].first) return false;
    if (i > 0 && w.row_blocks[i - 1].second >= w.row_blocks[i].first) return false;
  }
  for (int i = 0; i < t; ++i)
    for (int j = 0; j < t; ++j) {
      auto p = w.cells[i][j];
      if (!std::binary_search(ps.points.begin(), ps.points.end(), p)) return false;
      if (p.first < w.col_blocks[i].first || p.first > w.col_blocks[i].second) return false;
      if (p.second < w.row_blocks[j].first || p.second > w.row_blocks[j].second) return false;
    }
  // Strict order conditions across block indices, over all pairs of cells.
  for (int i = 0; i < t; ++i)
    for (int j = 0; j < t; ++j)
      for (int i2 = 0; i2 < t; ++i2)
        for (int j2 = 0; j2 < t; ++j2) {
          if (i < i2 && !(w.cells[i][j].first < w.cells[i2][j2].first)) return false;
          if (j < j2 && !(w.cells[i][j].second < w.cells[i2][j2].second)) return false;
        }
  return true;
}

std::optional<GridWitness> find_grid(const PointSet& ps, int t, const GridSearchOptions& opts) {
  if (t < 1) fail(ErrorCode::InvalidWitness, "grid order must be at least 1");
  GridInstance inst(ps);
  if (!opts.force && (int)inst.xs.size() > kGuardColumns && t > kGuardT)
    fail(ErrorCode::TooLarge, "instance exceeds the exact-search size guard");
  return find_grid_no_guard(ps, inst, t);
}

MaxGridResult max_grid(const PointSet& ps, const GridSearchOptions& opts) {
  if (ps.points.empty()) fail(ErrorCode::EmptyInput, "max_grid of an empty point set");
  GridInstance inst(ps);
  int cap = (int)std::min(inst.xs.size(), inst.ys.size());
  MaxGridResult res;
  bool guard = !opts.force && (int)inst.xs.size() > kGuardColumns;
  int exact_cap = guard ? std::min(cap, kGuardT) : cap;
  for (int t = 1; t <= exact_cap; ++t) {
    auto w = find_grid_no_guard(ps, inst, t);
    if (!w) break;
    res.t = t;
    res.witness = std::move(*w);
  }
  if (guard && res.t == kGuardT) {
    // Continue with the balanced-block heuristic; result becomes a lower bound.
    for (int t = cap; t > res.t; --t) {
      auto w = balanced_grid(ps, inst, t);
      if (w) {
        res.t = t;
        res.witness = std::move(*w);
        break;
      }
    }
    res.exact = false;
  }
  return res;
}

GridWitness disjointify_grid(const PointSet& ps, const GridWitness& w) {
  if (!verify_grid(ps, w)) fail(ErrorCode::InvalidWitness, "input witness does not verify");
  if (w.t % 2 != 0) fail(ErrorCode::OddOrder, "disjointify needs an even-order witness");
  int m = w.t / 2;
  long long xstar = w.cells[0][0].first;
  long long ystar = w.cells[0][0].second;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < w.t; ++j) xstar = std::max(xstar, w.cells[i][j].first);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < w.t; ++i) ystar = std::max(ystar, w.cells[i][j].second);

  GridWitness out;
  out.t = m;
  out.cells.assign(m, std::vector<std::pair<long long, long long>>(m, {0, 0}));
  if (xstar <= ystar) {
    // Keep the first half of the columns against the second half of the rows:
    // every kept x is <= xstar <= ystar < every kept y.
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) out.cells[i][j] = w.cells[i][j + m];
  } else {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) out.cells[i][j] = w.cells[i + m][j];
  }
  out.col_blocks.assign(m, {0, 0});
  out.row_blocks.assign(m, {0, 0});
  for (int i = 0; i < m; ++i) {
    long long xlo = out.cells[i][0].first, xhi = xlo;
    long long ylo = out.cells[0][i].second, yhi = ylo;
    for (int j = 0; j < m; ++j) {
      xlo = std::min(xlo, out.cells[i][j].first);
      xhi = std::max(xhi, out.cells[i][j].first);
      ylo = std::min(ylo, out.cells[j][i].second);
      yhi = std::max(yhi, out.cells[j][i].second);
    }
    out.col_blocks[i] = {xlo, xhi};
    out.row_blocks[i] = {ylo, yhi};
  }
  return out;
}

std::optional<std::pair<int, GridWitness>> monochromatic_subgrid(const PointSet& ps,
                                                                const std::vector<int>& colors,
                                                                int t,
                                                                const GridSearchOptions& opts) {
  if (colors.size() != ps.points.size())
    fail(ErrorCode::MissingColor, "colour list does not match the point set");
  std::vector<int> classes = colors;
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  for (int c : classes) {
    std::vector<std::pair<long long, long long>> pts;
    for (size_t i = 0; i < ps.points.size(); ++i)
      if (colors[i] == c) pts.push_back(ps.points[i]);
    auto w = find_grid(make_point_set(std::move(pts)), t, opts);
    if (w) return std::make_pair(c, std::move(*w));
  }
  return std::nullopt;
}

PointSet incidence_points(const std::vector<std::pair<int, int>>& rel,
                          const std::vector<int>& order) {
  std::vector<int> rank(order.size());
  for (size_t i = 0; i < order.size(); ++i) rank[order[i]] = (int)i + 1;
  std::vector<std::pair<int, int>> ranked;
  ranked.reserve(rel.size());
  for (auto [u, v] : rel) ranked.emplace_back(rank[u], rank[v]);
  std::sort(ranked.begin(), ranked.end());
  ranked.erase(std::unique(ranked.begin(), ranked.end()), ranked.end());
  std::vector<std::pair<long long, long long>> pts;
  for (size_t r = 0; r < ranked.size(); ++r) {
    pts.emplace_back(ranked[r].first, (long long)r + 1);
    pts.emplace_back(ranked[r].second, (long long)r + 1);
  }
  return make_point_set(std::move(pts));
}

PointSet adjacency_points(const std::vector<std::pair<int, int>>& rel,
                          const std::vector<int>& order) {
  std::vector<int> rank(order.size());
  for (size_t i = 0; i < order.size(); ++i) rank[order[i]] = (int)i + 1;
  std::vector<std::pair<long long, long long>> pts;
  pts.reserve(rel.size());
  for (auto [u, v] : rel) pts.emplace_back(rank[u], rank[v]);
  return make_point_set(std::move(pts));
}

}  // namespace twwgeo
