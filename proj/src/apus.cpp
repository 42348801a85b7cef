#include "twwgeo/apus.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include "twwgeo/error.hpp"

namespace twwgeo {

namespace {

// Crossing-window tests between a horizontal h and a vertical v.
bool x_window(const Segment& h, const Segment& v) { return h.x <= v.x && v.x <= h.x + h.len; }
bool y_window(const Segment& h, const Segment& v) { return v.y <= h.y && h.y <= v.y + v.len; }

// True when moving segment i one eta step left would gain or lose a crossing.
bool left_pinned(const std::vector<Segment>& segs, int i) {
  const Segment& s = segs[i];
  for (int j = 0; j < (int)segs.size(); ++j) {
    if (j == i) continue;
    const Segment& o = segs[j];
    if (o.dir == s.dir) continue;
    if (s.dir == SegDir::H) {
      if (!y_window(s, o)) continue;
      if (o.x == s.x + s.len || o.x == s.x - 1) return true;
    } else {
      if (!y_window(o, s)) continue;
      if (o.x == s.x || o.x + o.len == s.x - 1) return true;
    }
  }
  return false;
}

// True when moving segment i one eta step down would gain or lose a crossing.
bool down_pinned(const std::vector<Segment>& segs, int i) {
  const Segment& s = segs[i];
  for (int j = 0; j < (int)segs.size(); ++j) {
    if (j == i) continue;
    const Segment& o = segs[j];
    if (o.dir == s.dir) continue;
    if (s.dir == SegDir::H) {
      if (!x_window(s, o)) continue;
      if (o.y == s.y || o.y + o.len == s.y - 1) return true;
    } else {
      if (!x_window(o, s)) continue;
      if (o.y == s.y + s.len || o.y == s.y - 1) return true;
    }
  }
  return false;
}

void check_permutation_vector(const std::vector<int>& sigma) {
  int n = (int)sigma.size();
  std::vector<char> seen(n, 0);
  for (int v : sigma) {
    if (v < 0 || v >= n) fail(ErrorCode::InvalidOrder, "permutation value out of range");
    if (seen[v]) fail(ErrorCode::InvalidOrder, "repeated permutation value");
    seen[v] = 1;
  }
}

}  // namespace

SegmentFamily make_segment_family(long long eta_den, long long max_len,
                                  std::vector<Segment> segments) {
  if (eta_den < 1) fail(ErrorCode::InvalidVertex, "eta denominator must be positive");
  if (max_len < 1) fail(ErrorCode::InvalidVertex, "max_len must be positive");
  std::set<int> ids;
  for (const Segment& s : segments) {
    if (s.x < 0 || s.y < 0) fail(ErrorCode::InvalidVertex, "negative segment coordinate");
    if (s.len < 1) fail(ErrorCode::InvalidVertex, "segment length must be positive");
    if (s.len > max_len * eta_den) fail(ErrorCode::InvalidVertex, "segment longer than max_len");
    if (!ids.insert(s.id).second) fail(ErrorCode::InvalidVertex, "repeated segment id");
  }
  SegmentFamily f;
  f.eta_den = eta_den;
  f.max_len = max_len;
  f.segments = std::move(segments);
  return f;
}

bool is_unit_family(const SegmentFamily& f) {
  for (const Segment& s : f.segments)
    if (s.len != f.eta_den) return false;
  return true;
}

bool segments_intersect(const Segment& a, const Segment& b, bool degenerate) {
  if (a.dir != b.dir) {
    const Segment& h = a.dir == SegDir::H ? a : b;
    const Segment& v = a.dir == SegDir::H ? b : a;
    return x_window(h, v) && y_window(h, v);
  }
  if (!degenerate) return false;
  if (a.dir == SegDir::H)
    return a.y == b.y && std::max(a.x, b.x) <= std::min(a.x + a.len, b.x + b.len);
  return a.x == b.x && std::max(a.y, b.y) <= std::min(a.y + a.len, b.y + b.len);
}

Graph apus_intersection_graph(const SegmentFamily& f, bool degenerate) {
  int m = (int)f.segments.size();
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (segments_intersect(f.segments[i], f.segments[j], degenerate)) edges.emplace_back(i, j);
  return make_graph(m, std::move(edges));
}

std::map<SquareKey, SquareCell> split_squares(const SegmentFamily& f) {
  const long long U = f.eta_den;
  const bool unit = is_unit_family(f);
  std::map<SquareKey, SquareCell> out;

  if (unit) {
    std::map<std::pair<long long, long long>, std::vector<int>> hbatch, vbatch;
    for (const Segment& s : f.segments)
      (s.dir == SegDir::H ? hbatch : vbatch)[{s.x / U, s.y / U}].push_back(s.id);
    auto append = [&](long long s, long long t, Quadrant d, const std::vector<int>& ids) {
      SquareKey key{s, t, d, std::nullopt};
      auto& v = out[key].segment_ids;
      v.insert(v.end(), ids.begin(), ids.end());
    };
    for (const auto& [sq, ids] : hbatch) {
      append(sq.first, sq.second, Quadrant::TopRight, ids);
      append(sq.first, sq.second, Quadrant::BottomRight, ids);
      append(sq.first + 1, sq.second, Quadrant::TopLeft, ids);
      append(sq.first + 1, sq.second, Quadrant::BottomLeft, ids);
    }
    for (const auto& [sq, ids] : vbatch) {
      append(sq.first, sq.second, Quadrant::TopRight, ids);
      append(sq.first, sq.second, Quadrant::TopLeft, ids);
      append(sq.first, sq.second + 1, Quadrant::BottomRight, ids);
      append(sq.first, sq.second + 1, Quadrant::BottomLeft, ids);
    }
  }

  int m = (int)f.segments.size();
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      const Segment& a = f.segments[i];
      const Segment& b = f.segments[j];
      if (a.dir == b.dir || !segments_intersect(a, b)) continue;
      const Segment& h = a.dir == SegDir::H ? a : b;
      const Segment& v = a.dir == SegDir::H ? b : a;
      long long ps = v.x / U, pt = h.y / U;  // square of the crossing point
      bool h_left = h.x / U != ps;
      bool v_below = v.y / U != pt;
      Quadrant d = h_left ? (v_below ? Quadrant::BottomLeft : Quadrant::TopLeft)
                          : (v_below ? Quadrant::BottomRight : Quadrant::TopRight);
      SquareKey key{ps, pt, d,
                    unit ? std::nullopt
                         : std::optional<std::pair<long long, long long>>({h.len, v.len})};
      auto& cell = out[key];
      cell.edges.emplace_back(h.id, v.id);
      if (!unit) {
        cell.segment_ids.push_back(h.id);
        cell.segment_ids.push_back(v.id);
      }
    }

  for (auto& [key, cell] : out) {
    std::sort(cell.segment_ids.begin(), cell.segment_ids.end());
    cell.segment_ids.erase(std::unique(cell.segment_ids.begin(), cell.segment_ids.end()),
                           cell.segment_ids.end());
    std::sort(cell.edges.begin(), cell.edges.end());
  }
  return out;
}

std::vector<int> seg_order(const SegmentFamily& f, bool* had_duplicates) {
  const long long U = f.eta_den;
  if (had_duplicates) *had_duplicates = false;
  std::vector<int> idx(f.segments.size());
  std::iota(idx.begin(), idx.end(), 0);
  auto key = [&](int i) {
    const Segment& s = f.segments[i];
    return std::make_tuple((int)s.dir, s.len, s.x / U, s.y / U, s.x, s.y, s.id);
  };
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return key(a) < key(b); });
  std::vector<int> out;
  out.reserve(idx.size());
  for (size_t r = 0; r < idx.size(); ++r) {
    if (r > 0 && had_duplicates) {
      const Segment& a = f.segments[idx[r - 1]];
      const Segment& b = f.segments[idx[r]];
      if (a.dir == b.dir && a.x == b.x && a.y == b.y && a.len == b.len) *had_duplicates = true;
    }
    out.push_back(f.segments[idx[r]].id);
  }
  return out;
}

SegmentFamily minimize_segments(const SegmentFamily& f) {
  SegmentFamily out = f;
  auto& segs = out.segments;
  std::vector<int> visit(segs.size());
  std::iota(visit.begin(), visit.end(), 0);
  std::sort(visit.begin(), visit.end(),
            [&](int a, int b) { return segs[a].id < segs[b].id; });
  bool moved = true;
  while (moved) {
    moved = false;
    for (int i : visit) {
      if (segs[i].x > 0 && !left_pinned(segs, i)) {
        segs[i].x -= 1;
        moved = true;
      }
      if (segs[i].y > 0 && !down_pinned(segs, i)) {
        segs[i].y -= 1;
        moved = true;
      }
    }
  }
  return out;
}

PointSet local_endpoint_matrix(const SegmentFamily& f, const SquareKey& key) {
  auto cells = split_squares(f);
  auto it = cells.find(key);
  if (it == cells.end()) fail(ErrorCode::EmptyCell, "no segments in the requested cell");
  std::map<int, const Segment*> by_id;
  for (const Segment& s : f.segments) by_id[s.id] = &s;
  std::vector<std::pair<long long, long long>> pts;
  for (int id : it->second.segment_ids) pts.emplace_back(by_id[id]->x, by_id[id]->y);
  return make_point_set(std::move(pts));
}

namespace {

// Measured threshold shapes of one side-layer candidate against a k x k
// middle grid; 0 marks "not of this shape", otherwise the 1-based threshold.
struct CandidateForms {
  int col_up = 0;    // adjacent to (i, j) exactly when i >= col_up
  int col_down = 0;  // adjacent exactly when i <= col_down
  int row_up = 0;    // adjacent exactly when j >= row_up
  int row_down = 0;  // adjacent exactly when j <= row_down
};

// Exact assignment of distinct candidates to the 2k side slots, then a final
// verify_transversal gate.  mid[i][j] holds segment indices with i the column
// and j the row, both 0-based.
std::optional<TransversalWitness> try_assembly(const Graph& g, const SegmentFamily& f,
                                               const std::vector<std::vector<int>>& mid,
                                               const std::vector<int>& pool) {
  int k = (int)mid.size();
  if (k < 1) return std::nullopt;
  int np = (int)pool.size();
  std::vector<CandidateForms> forms(np);
  for (int p = 0; p < np; ++p) {
    std::vector<std::vector<char>> adj(k, std::vector<char>(k, 0));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        adj[i][j] = segments_intersect(f.segments[pool[p]], f.segments[mid[i][j]]);
    std::vector<char> col_full(k, 1), col_empty(k, 1), row_full(k, 1), row_empty(k, 1);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        (adj[i][j] ? col_empty[i] : col_full[i]) = 0;
        (adj[i][j] ? row_empty[j] : row_full[j]) = 0;
      }
    auto threshold = [&](const std::vector<char>& full, const std::vector<char>& empty,
                         bool up) -> int {
      for (int q = 1; q <= k; ++q) {
        bool ok = true;
        for (int i = 1; i <= k && ok; ++i) {
          bool want_full = up ? i >= q : i <= q;
          ok = want_full ? full[i - 1] : empty[i - 1];
        }
        if (ok) return q;
      }
      return 0;
    };
    forms[p].col_up = threshold(col_full, col_empty, true);
    forms[p].col_down = threshold(col_full, col_empty, false);
    forms[p].row_up = threshold(row_full, row_empty, true);
    forms[p].row_down = threshold(row_full, row_empty, false);
  }

  for (int col_rev = 0; col_rev < 2; ++col_rev)
    for (int row_rev = 0; row_rev < 2; ++row_rev) {
      // Slot u wants column threshold u (or its reversal); slot k+w wants row
      // threshold w (or its reversal).
      std::vector<std::vector<int>> slots(2 * k);
      for (int u = 1; u <= k; ++u)
        for (int p = 0; p < np; ++p) {
          int want = col_rev ? k + 1 - u : u;
          int got = col_rev ? forms[p].col_down : forms[p].col_up;
          if (got == want) slots[u - 1].push_back(p);
        }
      for (int w = 1; w <= k; ++w)
        for (int p = 0; p < np; ++p) {
          int want = row_rev ? k + 1 - w : w;
          int got = row_rev ? forms[p].row_up : forms[p].row_down;
          if (got == want) slots[k + w - 1].push_back(p);
        }
      std::vector<int> slot_order(2 * k);
      std::iota(slot_order.begin(), slot_order.end(), 0);
      std::sort(slot_order.begin(), slot_order.end(), [&](int a, int b) {
        return slots[a].size() < slots[b].size();
      });
      std::vector<int> chosen(2 * k, -1);
      std::vector<char> used(np, 0);
      auto assign = [&](auto&& self, size_t at) -> bool {
        if (at == slot_order.size()) return true;
        int slot = slot_order[at];
        for (int p : slots[slot]) {
          if (used[p]) continue;
          used[p] = 1;
          chosen[slot] = p;
          if (self(self, at + 1)) return true;
          used[p] = 0;
          chosen[slot] = -1;
        }
        return false;
      };
      if (!assign(assign, 0)) continue;

      TransversalWitness tw;
      tw.k = k;
      for (int u = 1; u <= k; ++u) tw.A.push_back(pool[chosen[u - 1]]);
      for (int w = 1; w <= k; ++w) tw.C.push_back(pool[chosen[k + w - 1]]);
      tw.B.assign(k, std::vector<int>(k, 0));
      for (int u = 1; u <= k; ++u)
        for (int v = 1; v <= k; ++v)
          tw.B[u - 1][v - 1] = mid[col_rev ? k - u : u - 1][row_rev ? k - v : v - 1];
      if (verify_transversal(g, tw)) return tw;
    }
  return std::nullopt;
}

}  // namespace

TransversalWitness extract_transversal_apus(const SegmentFamily& f, const SquareKey& key,
                                            const GridWitness& w) {
  PointSet pts = local_endpoint_matrix(f, key);
  if (!verify_grid(pts, w))
    fail(ErrorCode::InvalidWitness, "witness is not a grid of the cell's endpoint matrix");
  Graph g = apus_intersection_graph(f, false);
  const long long U = f.eta_den;

  auto cells = split_squares(f);
  const SquareCell& cell = cells.at(key);
  std::map<int, int> index_of_id;
  for (int i = 0; i < (int)f.segments.size(); ++i) index_of_id[f.segments[i].id] = i;

  // Cell members at each endpoint, split by direction, smallest id first.
  std::map<std::pair<long long, long long>, std::array<std::vector<int>, 2>> at;
  for (int id : cell.segment_ids) {
    int idx = index_of_id[id];
    const Segment& s = f.segments[idx];
    at[{s.x, s.y}][s.dir == SegDir::H ? 0 : 1].push_back(idx);
  }

  // Pick the direction class carrying the larger grid.
  std::array<std::vector<std::pair<long long, long long>>, 2> class_pts;
  for (const auto& [pt, members] : at)
    for (int d = 0; d < 2; ++d)
      if (!members[d].empty()) class_pts[d].push_back(pt);
  std::array<MaxGridResult, 2> best{};
  for (int d = 0; d < 2; ++d)
    if (!class_pts[d].empty()) best[d] = max_grid(make_point_set(class_pts[d]));
  int dirsel = best[0].t >= best[1].t ? 0 : 1;
  if (best[dirsel].t == 0)
    fail(ErrorCode::GridTooSmall, "no grid in either direction class; achievable k = 0");

  // Every class segment with positive coordinates must have its pins.
  for (const auto& pt : class_pts[dirsel])
    for (int idx : at[pt][dirsel]) {
      const Segment& s = f.segments[idx];
      if (s.x > 0 && !left_pinned(f.segments, idx))
        fail(ErrorCode::NotMinimized, "segment with no left pin; family is not minimized");
      if (s.y > 0 && !down_pinned(f.segments, idx))
        fail(ErrorCode::NotMinimized, "segment with no down pin; family is not minimized");
    }

  std::vector<int> pool;
  for (int i = 0; i < (int)f.segments.size(); ++i)
    if ((f.segments[i].dir == SegDir::H ? 0 : 1) != dirsel) pool.push_back(i);

  auto rep_of = [&](const std::pair<long long, long long>& pt) {
    return at[pt][dirsel].front();  // smallest id at this endpoint
  };
  auto reps = [&](const GridWitness& gw, int take, int stride) {
    std::vector<std::vector<int>> mid(take, std::vector<int>(take));
    for (int i = 0; i < take; ++i)
      for (int j = 0; j < take; ++j) mid[i][j] = rep_of(gw.cells[i * stride][j * stride]);
    return mid;
  };

  // Direct assembly over the full class grid.
  if (auto tw = try_assembly(g, f, reps(best[dirsel].witness, best[dirsel].t, 1), pool))
    return *tw;

  // Halved assembly: drop axis points, classify the rest by pin shape, take
  // the largest single-class subgrid and use its odd cells as the middle.
  std::vector<std::pair<long long, long long>> off_axis;
  for (const auto& pt : class_pts[dirsel])
    if (pt.first > 0 && pt.second > 0) off_axis.push_back(pt);
  if (off_axis.empty())
    fail(ErrorCode::GridTooSmall, "no off-axis points; achievable k = 0");
  PointSet fps = make_point_set(off_axis);

  auto pin_color = [&](const std::pair<long long, long long>& pt) {
    int idx = rep_of(pt);
    const Segment& s = f.segments[idx];
    long long line_x = (s.x / U) * U;  // square's left line
    long long line_y = (s.y / U) * U;  // square's bottom line
    // Left pin: prefer the gain side, then a pin reaching the square border.
    int pin_side = 1, crossing = 1;
    bool found = false;
    for (const Segment& o : f.segments) {
      if (o.dir == s.dir) continue;
      bool yok = s.dir == SegDir::H ? y_window(s, o) : y_window(o, s);
      if (!yok) continue;
      bool gain, reaches;
      if (s.dir == SegDir::H) {
        if (o.x == s.x - 1) gain = true;
        else if (o.x == s.x + s.len) gain = false;
        else continue;
        reaches = o.y <= line_y;
      } else {
        if (o.x + o.len == s.x - 1) gain = true;
        else if (o.x == s.x) gain = false;
        else continue;
        reaches = o.x <= line_x;
      }
      int side = gain ? 0 : 1, cross = reaches ? 0 : 1;
      if (!found || std::make_pair(side, cross) < std::make_pair(pin_side, crossing)) {
        pin_side = side;
        crossing = cross;
        found = true;
      }
    }
    // Down pin: gain side preferred.
    int down_side = 1;
    bool dfound = false;
    for (const Segment& o : f.segments) {
      if (o.dir == s.dir) continue;
      bool xok = s.dir == SegDir::H ? x_window(s, o) : x_window(o, s);
      if (!xok) continue;
      bool gain;
      if (s.dir == SegDir::H) {
        if (o.y + o.len == s.y - 1) gain = true;
        else if (o.y == s.y) gain = false;
        else continue;
      } else {
        if (o.y == s.y - 1) gain = true;
        else if (o.y == s.y + s.len) gain = false;
        else continue;
      }
      if (!dfound || (gain ? 0 : 1) < down_side) {
        down_side = gain ? 0 : 1;
        dfound = true;
      }
    }
    return pin_side | (crossing << 1) | (down_side << 2);
  };
  std::vector<int> colors;
  colors.reserve(fps.points.size());
  for (const auto& pt : fps.points) colors.push_back(pin_color(pt));

  std::optional<GridWitness> mono;
  int t_hi = max_grid(fps).t;
  for (int t = t_hi; t >= 2 && !mono; --t)
    if (auto r = monochromatic_subgrid(fps, colors, t)) mono = r->second;
  if (!mono) fail(ErrorCode::GridTooSmall, "largest uniform subgrid achieves k = 0");

  for (int kp = mono->t / 2; kp >= 1; --kp)
    if (auto tw = try_assembly(g, f, reps(*mono, kp, 2), pool)) return *tw;
  fail(ErrorCode::StructureMismatch,
       "no verified transversal assembly from the uniform subgrid");
}

DichotomyResult analyze_apus(const SegmentFamily& f, int k) {
  if (k < 1) fail(ErrorCode::EmptyInput, "threshold parameter k must be >= 1");
  SegmentFamily fm = minimize_segments(f);
  DichotomyResult out;
  if (fm.segments.empty()) {
    out.contraction = ContractionOutcome{};
    return out;
  }

  auto cells = split_squares(fm);
  const long long need = 4LL * k + 2;
  for (const auto& [key, cell] : cells) {
    if ((long long)cell.segment_ids.size() < need * need) continue;
    PointSet pts = local_endpoint_matrix(fm, key);
    if ((long long)pts.points.size() < need * need) continue;
    auto mg = max_grid(pts);
    if (mg.t >= need) {
      out.transversal = extract_transversal_apus(fm, key, mg.witness);
      return out;
    }
  }

  Graph g = apus_intersection_graph(fm, false);
  std::map<int, int> index_of_id;
  for (int i = 0; i < (int)fm.segments.size(); ++i) index_of_id[fm.segments[i].id] = i;
  std::vector<int> order_idx;
  for (int id : seg_order(fm)) order_idx.push_back(index_of_id[id]);
  auto s_full = structure_from_graph(g, order_idx);

  if (!is_unit_family(fm)) {
    // Mixed lengths break the square-batch interval layout; contract the
    // whole ordered graph directly.
    ContractionOutcome c;
    if (g.n <= 12) {
      auto r = exact_tww(s_full);
      c.seq = r.seq;
    } else {
      auto r = greedy_contraction(s_full);
      c.seq = r.seq;
    }
    c.verified_width = verify_contraction(s_full, c.seq);
    out.contraction = c;
    return out;
  }

  // One block per occupied unit square: the square's horizontal batch on the
  // A side and vertical batch on the B side, squares in (s, t) order.
  const long long U = fm.eta_den;
  std::map<std::pair<long long, long long>, std::array<std::vector<int>, 2>> squares;
  for (int i = 0; i < (int)fm.segments.size(); ++i) {
    const Segment& s = fm.segments[i];
    squares[{s.x / U, s.y / U}][s.dir == SegDir::H ? 0 : 1].push_back(i);
  }
  std::vector<std::pair<int, int>> tr_edges;
  for (const auto& [key, cell] : cells) {
    if (key.d != Quadrant::TopRight) continue;
    for (auto [hid, vid] : cell.edges) {
      int a = index_of_id[hid], b = index_of_id[vid];
      tr_edges.emplace_back(std::min(a, b), std::max(a, b));
    }
  }
  auto s_tr = structure_from_graph(make_graph(g.n, std::move(tr_edges)), order_idx);

  std::vector<Block> blocks;
  std::vector<ContractionSequence> seqs;
  for (const auto& [sq, sides] : squares) {
    Block blk{sides[0], sides[1]};
    std::vector<int> verts = blk.a;
    verts.insert(verts.end(), blk.b.begin(), blk.b.end());
    auto induced = induced_substructure(s_tr, verts);
    int ni = (int)induced.original_ids.size();
    ContractionSequence seq;
    if (blk.a.empty() || blk.b.empty()) {
      // Single-sided square: fold along the order; the batch is edge-free.
      std::vector<int> by_rank(ni);
      std::iota(by_rank.begin(), by_rank.end(), 0);
      auto pos = induced.structure.positions();
      std::sort(by_rank.begin(), by_rank.end(), [&](int a, int b) { return pos[a] < pos[b]; });
      int root = by_rank[0];
      for (int r = 1; r < ni; ++r) {
        seq.merges.emplace_back(std::min(root, by_rank[r]), std::max(root, by_rank[r]));
        root = std::min(root, by_rank[r]);
      }
    } else {
      std::vector<int> side(ni, 1);
      std::set<int> aset(blk.a.begin(), blk.a.end());
      for (int v = 0; v < ni; ++v)
        if (aset.count(induced.original_ids[v])) side[v] = 0;
      if (ni <= 12) {
        ExactTwwOptions opts;
        opts.bipartition = side;
        seq = exact_tww(induced.structure, opts).seq;
      } else {
        GreedyOptions opts;
        opts.bipartition = side;
        seq = greedy_contraction(induced.structure, opts).seq;
      }
    }
    blocks.push_back(std::move(blk));
    seqs.push_back(std::move(seq));
  }

  auto composed = compose_block_sequences(s_tr, blocks, seqs);
  ContractionOutcome c;
  c.seq = composed.seq;
  c.verified_width = verify_contraction(s_full, composed.seq);
  out.contraction = c;
  return out;
}

SegmentFamily gen_Tk_apus(int k) {
  if (k < 1) fail(ErrorCode::EmptyInput, "k must be >= 1");
  const long long U = 4LL * k + 4;  // eta_den; the b-lattice pitch is 2 eta
  std::vector<Segment> segs;
  int id = 0;
  for (int i = 1; i <= k; ++i)
    segs.push_back({id++, SegDir::V, U + 2 * i + 1, U / 2, U});
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= k; ++j)
      segs.push_back({id++, SegDir::H, U + 2 * i, U + 2 * j, U});
  for (int j = 1; j <= k; ++j)
    segs.push_back({id++, SegDir::V, U + 2 * k + 1, U + 2 * j - 1, U});
  return make_segment_family(U, 1, std::move(segs));
}

TransversalWitness canonical_Tk_apus_witness(int k) {
  if (k < 1) fail(ErrorCode::EmptyInput, "k must be >= 1");
  TransversalWitness w;
  w.k = k;
  for (int u = 1; u <= k; ++u) w.A.push_back(k - u);                  // a_{k+1-u}
  w.B.assign(k, std::vector<int>(k, 0));
  for (int u = 1; u <= k; ++u)
    for (int v = 1; v <= k; ++v)
      w.B[u - 1][v - 1] = k + (k - u) * k + (k - v);                  // b_{k+1-u, k+1-v}
  for (int j = 1; j <= k; ++j) w.C.push_back(k + k * k + (k - j));    // c_{k+1-j}
  return w;
}

HsigmaApusResult gen_Hsigma_apus_degenerate(const std::vector<int>& sigma, int ell) {
  int n = (int)sigma.size();
  if (n < 1) fail(ErrorCode::EmptyInput, "empty permutation");
  if (ell < 2) fail(ErrorCode::PathTooShort, "ell must be >= 2");
  check_permutation_vector(sigma);

  const long long U = 16LL * n * ell;   // eta_den
  const long long S = 12LL * n * ell;   // regular path stride
  const long long B0 = 4LL * n + 2;
  const long long Z = B0 + (long long)(ell - 1) * S + 14LL * n * ell;
  std::vector<int> inv(n);
  for (int p = 0; p < n; ++p) inv[sigma[p]] = p;

  auto beta = [&](int p) { return B0 - 4LL * (p + 1); };  // 0-based path index
  auto height = [&](int p) { return 4LL * (p + 1); };

  int N = n * (ell + 3);
  std::vector<Segment> segs(N);
  for (int i = 0; i < n; ++i)  // a_i: meets the path heads b_j with j >= i
    segs[i] = {i, SegDir::V, beta(i), 0, U};
  for (int p = 0; p < n; ++p)  // b_p: head of path p
    segs[n + p] = {n + p, SegDir::H, beta(p), height(p), U};
  for (int i = 0; i < n; ++i)  // c_i: tail of the path mapped onto it
    segs[2 * n + i] = {2 * n + i, SegDir::H, Z - 4LL * (i + 1), height(inv[i]), U};
  for (int j = 0; j < n; ++j)  // d_j: meets the tails c_i with i <= j
    segs[3 * n + j] = {3 * n + j, SegDir::V, Z - 4LL * (j + 1) + U, 0, U};
  for (int p = 0; p < n; ++p)
    for (int t = 1; t < ell; ++t)
      segs[4 * n + p * (ell - 1) + (t - 1)] = {4 * n + p * (ell - 1) + (t - 1), SegDir::H,
                                               beta(p) + t * S, height(p), U};

  HsigmaApusResult out;
  out.family = make_segment_family(U, 1, std::move(segs));
  out.vertex_ids.resize(N);
  std::iota(out.vertex_ids.begin(), out.vertex_ids.end(), 0);
  return out;
}

}  // namespace twwgeo
