#include "twwgeo/circular_arc.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "twwgeo/error.hpp"

namespace twwgeo {

ArcFamily make_arc_family(int n, std::vector<Arc> arcs) {
  if (n < 1) fail(ErrorCode::EmptyInput, "circle size must be >= 1");
  std::set<int> ids;
  for (const Arc& a : arcs) {
    if (a.left < 1 || a.left > n || a.right < 1 || a.right > n)
      fail(ErrorCode::InvalidVertex, "arc endpoint outside the circle");
    if (!ids.insert(a.id).second) fail(ErrorCode::InvalidVertex, "repeated arc id");
  }
  return ArcFamily{n, std::move(arcs)};
}

bool arc_contains(int n, const Arc& a, int p) {
  (void)n;
  if (a.left <= a.right) return a.left <= p && p <= a.right;
  return p >= a.left || p <= a.right;
}

bool arcs_intersect(int n, const Arc& a, const Arc& b) {
  // Every maximal run of the intersection starts at the left endpoint of one
  // of the two arcs, so it suffices to test the two left endpoints.
  return arc_contains(n, b, a.left) || arc_contains(n, a, b.left);
}

Graph arc_intersection_graph(const ArcFamily& f) {
  int m = (int)f.arcs.size();
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (arcs_intersect(f.n, f.arcs[i], f.arcs[j])) edges.emplace_back(i, j);
  return make_graph(m, edges);
}

ArcFamily minimize_arcs(const ArcFamily& f) {
  ArcFamily cur = f;
  int m = (int)cur.arcs.size();
  auto adj = arc_intersection_graph(f).adjacency_lists();
  std::vector<int> by_id(m);
  std::iota(by_id.begin(), by_id.end(), 0);
  std::sort(by_id.begin(), by_id.end(),
            [&](int a, int b) { return cur.arcs[a].id < cur.arcs[b].id; });
  auto keeps_neighbors = [&](int idx, const Arc& cand) {
    for (int nb : adj[idx])
      if (!arcs_intersect(cur.n, cand, cur.arcs[nb])) return false;
    return true;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (int idx : by_id) {
      Arc& a = cur.arcs[idx];
      while (a.left != a.right) {
        Arc cand = a;
        cand.right = cand.right == 1 ? cur.n : cand.right - 1;
        if (!keeps_neighbors(idx, cand)) break;
        a = cand;
        changed = true;
      }
      while (a.left != a.right) {
        Arc cand = a;
        cand.left = cand.left == cur.n ? 1 : cand.left + 1;
        if (!keeps_neighbors(idx, cand)) break;
        a = cand;
        changed = true;
      }
    }
  }
  return cur;
}

PointSet arc_endpoint_matrix(const ArcFamily& f, bool* had_duplicates) {
  std::vector<std::pair<long long, long long>> points;
  points.reserve(f.arcs.size());
  for (const Arc& a : f.arcs) points.emplace_back(a.left, a.right);
  PointSet ps = make_point_set(std::move(points));
  if (had_duplicates) *had_duplicates = ps.points.size() < f.arcs.size();
  return ps;
}

std::vector<int> arc_incidence_positions(const ArcFamily& f) {
  std::vector<int> order((int)f.arcs.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    const Arc &a = f.arcs[x], &b = f.arcs[y];
    return std::tie(a.left, a.right, a.id) < std::tie(b.left, b.right, b.id);
  });
  return order;
}

OrderedBinaryStructure arc_incidence_structure(const ArcFamily& f) {
  int n = f.n, m = (int)f.arcs.size();
  std::vector<int> order = arc_incidence_positions(f);
  Relation inc{"inc", {}};
  Relation wrap{"wrap", {}};
  for (int r = 0; r < m; ++r) {
    const Arc& a = f.arcs[order[r]];
    int v = n + r;
    inc.pairs.emplace_back(v, a.left - 1);
    inc.pairs.emplace_back(a.left - 1, v);
    if (a.right != a.left) {
      inc.pairs.emplace_back(v, a.right - 1);
      inc.pairs.emplace_back(a.right - 1, v);
    }
    if (a.left > a.right) wrap.pairs.emplace_back(v, v);
  }
  std::vector<int> identity(n + m);
  std::iota(identity.begin(), identity.end(), 0);
  return make_structure(n + m, {std::move(inc), std::move(wrap)}, identity);
}

namespace {

// Number of circle points shared by two arcs, capped at 2 (we only care about
// "empty", "exactly the probe point" and "more").
int small_intersection(int n, const Arc& a, const Arc& b) {
  int count = 0;
  int p = a.left;
  for (int steps = 0; steps < n; ++steps) {
    if (arc_contains(n, b, p)) {
      if (++count > 1) return count;
    }
    if (p == a.right) break;
    p = p == n ? 1 : p + 1;
  }
  return count;
}

// Smallest-id arc meeting `probe` in exactly the single point `point`.
int companion_arc(const ArcFamily& f, const Arc& probe, int point) {
  int best = -1;
  for (int idx = 0; idx < (int)f.arcs.size(); ++idx) {
    const Arc& a = f.arcs[idx];
    if (!arc_contains(f.n, a, point)) continue;
    if (small_intersection(f.n, probe, a) != 1) continue;
    if (best < 0 || a.id < f.arcs[best].id) best = idx;
  }
  return best;
}

// Extraction from an already-disjoint (2k+1)-grid (all column coordinates on
// one side of a circle threshold, all row coordinates on the other).
TransversalWitness extract_from_disjoint(const ArcFamily& f, const GridWitness& dw, int k) {
  std::map<std::pair<long long, long long>, int> arc_at;
  for (int idx = 0; idx < (int)f.arcs.size(); ++idx) {
    auto key = std::make_pair((long long)f.arcs[idx].left, (long long)f.arcs[idx].right);
    auto it = arc_at.find(key);
    if (it == arc_at.end() || f.arcs[idx].id < f.arcs[it->second].id) arc_at[key] = idx;
  }
  auto cell_arc = [&](int i1, int j1) {  // 1-based grid indices
    auto it = arc_at.find(dw.cells[i1 - 1][j1 - 1]);
    if (it == arc_at.end())
      fail(ErrorCode::InvalidWitness, "grid cell does not match any arc");
    return it->second;
  };
  std::vector<std::vector<int>> b(k, std::vector<int>(k));
  std::vector<int> a(k), c(k);
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= k; ++j) b[i - 1][j - 1] = cell_arc(2 * i, 2 * j);
  for (int i = 1; i <= k; ++i) {
    const Arc& x = f.arcs[cell_arc(2 * i + 1, 2 * k + 1)];
    a[i - 1] = companion_arc(f, x, x.left);
    if (a[i - 1] < 0)
      fail(ErrorCode::NotMinimized, "no arc meets the probe exactly in its left endpoint");
  }
  for (int j = 1; j <= k; ++j) {
    const Arc& y = f.arcs[cell_arc(1, 2 * j - 1)];
    c[j - 1] = companion_arc(f, y, y.right);
    if (c[j - 1] < 0)
      fail(ErrorCode::NotMinimized, "no arc meets the probe exactly in its right endpoint");
  }
  Graph g = arc_intersection_graph(f);
  // The raw pattern has a_i ~ b_{i',j'} iff i >= i' and c_j ~ b_{i',j'} iff
  // j <= j'; reversing both coordinates maps it onto the transversal
  // definition. Keep the remaining flip combinations as fallbacks and let the
  // verifier pick.
  for (int flip_i : {1, 0})
    for (int flip_j : {1, 0}) {
      TransversalWitness w;
      w.k = k;
      auto ai = [&](int i) { return flip_i ? k - 1 - i : i; };
      auto cj = [&](int j) { return flip_j ? k - 1 - j : j; };
      for (int i = 0; i < k; ++i) w.A.push_back(a[ai(i)]);
      for (int i = 0; i < k; ++i) {
        w.B.emplace_back();
        for (int j = 0; j < k; ++j) w.B.back().push_back(b[ai(i)][cj(j)]);
      }
      for (int j = 0; j < k; ++j) w.C.push_back(c[cj(j)]);
      std::set<int> distinct(w.A.begin(), w.A.end());
      distinct.insert(w.C.begin(), w.C.end());
      for (const auto& row : w.B) distinct.insert(row.begin(), row.end());
      if ((int)distinct.size() != k * k + 2 * k) continue;
      if (verify_transversal(g, w)) return w;
    }
  fail(ErrorCode::StructureMismatch, "extracted vertices do not form the transversal pattern");
}

GridWitness truncate_witness(const GridWitness& w, int t) {
  GridWitness out;
  out.t = t;
  out.col_blocks.assign(w.col_blocks.begin(), w.col_blocks.begin() + t);
  out.row_blocks.assign(w.row_blocks.begin(), w.row_blocks.begin() + t);
  for (int i = 0; i < t; ++i)
    out.cells.emplace_back(w.cells[i].begin(), w.cells[i].begin() + t);
  return out;
}

// Direct search for a (2k+1)-grid whose columns and rows live on opposite
// sides of some circle threshold, as produced by families whose endpoint
// matrix is too small for a full (4k+2)-grid.
std::optional<GridWitness> threshold_disjoint_grid(const PointSet& ps, int t) {
  std::vector<long long> xs;
  for (auto [x, y] : ps.points) xs.push_back(x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  for (long long theta : xs) {
    for (bool wrap : {false, true}) {
      std::vector<std::pair<long long, long long>> sel;
      for (auto [x, y] : ps.points) {
        bool take = wrap ? (y <= theta && theta < x) : (x <= theta && theta < y);
        if (take) sel.emplace_back(x, y);
      }
      if ((int)sel.size() < t * t) continue;
      if (auto w = find_grid(make_point_set(std::move(sel)), t)) return w;
    }
  }
  return std::nullopt;
}

}  // namespace

TransversalWitness extract_transversal_arcs(const ArcFamily& f, const GridWitness& w, int k) {
  if (k < 1) fail(ErrorCode::EmptyInput, "k must be >= 1");
  PointSet ps = arc_endpoint_matrix(f);
  if (!verify_grid(ps, w))
    fail(ErrorCode::InvalidWitness, "not a grid witness for the endpoint matrix");
  if (w.t < 4 * k + 2) fail(ErrorCode::GridTooSmall, "witness order below 4k+2");
  GridWitness dw = disjointify_grid(ps, truncate_witness(w, 4 * k + 2));
  return extract_from_disjoint(f, dw, k);
}

DichotomyResult analyze_arcs(const ArcFamily& f, int k) {
  if (k < 1) fail(ErrorCode::EmptyInput, "k must be >= 1");
  ArcFamily fm = minimize_arcs(f);
  int m = (int)fm.arcs.size();
  DichotomyResult result;
  if (m == 0) {
    result.contraction = ContractionOutcome{};
    return result;
  }
  PointSet ps = arc_endpoint_matrix(fm);
  if ((int)ps.points.size() >= (4 * k + 2) * (4 * k + 2)) {
    MaxGridResult mg = max_grid(ps);
    if (mg.t >= 4 * k + 2) {
      result.transversal = extract_transversal_arcs(fm, mg.witness, k);
      return result;
    }
  }
  if (auto dw = threshold_disjoint_grid(ps, 2 * k + 1)) {
    result.transversal = extract_from_disjoint(fm, *dw, k);
    return result;
  }
  OrderedBinaryStructure h = arc_incidence_structure(fm);
  ContractionSequence on_structure =
      h.n <= 12 ? exact_tww(h).seq : greedy_contraction(h).seq;
  std::vector<int> arc_vertices(m);
  std::iota(arc_vertices.begin(), arc_vertices.end(), fm.n);
  ContractionSequence restricted = restrict_sequence(h.n, on_structure, arc_vertices);
  // Structure vertex n + r holds the arc at position positions[r]; rewrite
  // the sequence onto intersection-graph vertices.
  std::vector<int> positions = arc_incidence_positions(fm);
  ContractionSequence seq = relabel_sequence(m, restricted, positions);
  Graph g = arc_intersection_graph(fm);
  int width = verify_contraction(structure_from_graph(g), seq);
  result.contraction = ContractionOutcome{std::move(seq), width};
  return result;
}

ArcFamily gen_Tk_arcs(int k) {
  if (k < 1) fail(ErrorCode::EmptyInput, "k must be >= 1");
  int n = 4 * k + 2;
  std::vector<Arc> arcs;
  int id = 0;
  for (int i = 1; i <= k; ++i) arcs.push_back({id++, 3 * k + 1 + i, i});      // a_i
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= k; ++j) arcs.push_back({id++, i, k + j});            // b_{i,j}
  for (int j = 1; j <= k; ++j) arcs.push_back({id++, k + j, 2 * k + j});      // c_j
  return make_arc_family(n, std::move(arcs));
}

TransversalWitness canonical_Tk_arcs_witness(int k) {
  TransversalWitness w;
  w.k = k;
  auto a_pos = [&](int i) { return i - 1; };                        // 1-based i
  auto b_pos = [&](int i, int j) { return k + (i - 1) * k + j - 1; };
  auto c_pos = [&](int j) { return k + k * k + j - 1; };
  for (int i = 0; i < k; ++i) w.A.push_back(a_pos(k - i));
  for (int u = 0; u < k; ++u) {
    w.B.emplace_back();
    for (int v = 0; v < k; ++v) w.B.back().push_back(b_pos(k - u, k - v));
  }
  for (int j = 0; j < k; ++j) w.C.push_back(c_pos(k - j));
  return w;
}

}  // namespace twwgeo
