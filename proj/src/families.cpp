#include "twwgeo/families.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "twwgeo/error.hpp"

namespace twwgeo {

namespace {

void check_permutation(const std::vector<int>& sigma) {
  int n = (int)sigma.size();
  std::vector<char> seen(n, 0);
  for (int v : sigma) {
    if (v < 0 || v >= n || seen[v]) fail(ErrorCode::InvalidOrder, "not a permutation");
    seen[v] = 1;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Transversal pairs
// ---------------------------------------------------------------------------

bool verify_transversal(const Graph& g, const TransversalWitness& w) {
  int k = w.k;
  if (k < 1) fail(ErrorCode::InvalidWitness, "k must be >= 1");
  if ((int)w.A.size() != k || (int)w.C.size() != k || (int)w.B.size() != k)
    fail(ErrorCode::InvalidWitness, "witness shape does not match k");
  std::set<int> ids;
  auto note = [&](int v) {
    if (v < 0 || v >= g.n) fail(ErrorCode::InvalidWitness, "witness id outside the graph");
    if (!ids.insert(v).second) fail(ErrorCode::InvalidWitness, "repeated witness id");
  };
  for (int v : w.A) note(v);
  for (const auto& row : w.B) {
    if ((int)row.size() != k) fail(ErrorCode::InvalidWitness, "witness shape does not match k");
    for (int v : row) note(v);
  }
  for (int v : w.C) note(v);
  for (int i = 0; i < k; ++i)
    for (int i2 = 0; i2 < k; ++i2)
      for (int j2 = 0; j2 < k; ++j2)
        if (g.has_edge(w.A[i], w.B[i2][j2]) != (i <= i2)) return false;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      for (int j2 = 0; j2 < k; ++j2)
        if (g.has_edge(w.B[i][j], w.C[j2]) != (j <= j2)) return false;
  return true;
}

Graph gen_transversal_graph(int k) {
  if (k < 1) fail(ErrorCode::EmptyInput, "k must be >= 1");
  auto b = [&](int i, int j) { return k + i * k + j; };
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < k; ++i)
    for (int i2 = i; i2 < k; ++i2)
      for (int j2 = 0; j2 < k; ++j2) edges.emplace_back(i, b(i2, j2));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      for (int j2 = j; j2 < k; ++j2) edges.emplace_back(b(i, j), k + k * k + j2);
  return make_graph(k * k + 2 * k, edges);
}

TransversalWitness canonical_transversal_witness(int k) {
  TransversalWitness w;
  w.k = k;
  for (int i = 0; i < k; ++i) w.A.push_back(i);
  for (int i = 0; i < k; ++i) {
    w.B.emplace_back();
    for (int j = 0; j < k; ++j) w.B.back().push_back(k + i * k + j);
  }
  for (int j = 0; j < k; ++j) w.C.push_back(k + k * k + j);
  return w;
}

// ---------------------------------------------------------------------------
// Half-graphs and variants
// ---------------------------------------------------------------------------

Graph gen_halfgraph(int n) {
  if (n < 1) fail(ErrorCode::EmptyInput, "n must be >= 1");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) edges.emplace_back(i, n + j);
  return make_graph(2 * n, edges);
}

Graph gen_Hsigma(const std::vector<int>& sigma, int ell) {
  int n = (int)sigma.size();
  if (n < 1) fail(ErrorCode::EmptyInput, "empty permutation");
  if (ell < 1) fail(ErrorCode::PathTooShort, "ell must be >= 1");
  check_permutation(sigma);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      edges.emplace_back(i, n + j);          // a_i b_j
      edges.emplace_back(2 * n + i, 3 * n + j);  // c_i d_j
    }
  int next = 4 * n;
  for (int i = 0; i < n; ++i) {
    int prev = n + i;  // b_i
    for (int t = 0; t + 1 < ell; ++t) {
      edges.emplace_back(prev, next);
      prev = next++;
    }
    edges.emplace_back(prev, 2 * n + sigma[i]);  // last hop into c_{sigma(i)}
  }
  return make_graph(n * (ell + 3), edges);
}

std::vector<int> universal_permutation(int n) {
  if (n < 1) fail(ErrorCode::EmptyInput, "n must be >= 1");
  std::vector<int> sigma(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) sigma[i * n + j] = j * n + i;
  return sigma;
}

Graph gen_subdivided_complete(int n, int ell, bool bipartite) {
  if (n < 1) fail(ErrorCode::EmptyInput, "n must be >= 1");
  if (ell < 1) fail(ErrorCode::PathTooShort, "ell must be >= 1");
  std::vector<std::pair<int, int>> edges;
  std::vector<std::pair<int, int>> hub_pairs;
  int hubs;
  if (bipartite) {
    hubs = 2 * n;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) hub_pairs.emplace_back(i, n + j);
  } else {
    hubs = n;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) hub_pairs.emplace_back(i, j);
  }
  int next = hubs;
  for (auto [u, v] : hub_pairs) {
    int prev = u;
    for (int t = 0; t + 1 < ell; ++t) {
      edges.emplace_back(prev, next);
      prev = next++;
    }
    edges.emplace_back(prev, v);
  }
  return make_graph(next, edges);
}

Graph extract_biclique_from_Hsigma(const Graph& g, int n) {
  if (n < 1) fail(ErrorCode::EmptyInput, "n must be >= 1");
  long long N = (long long)n * n;
  if (g.n % N != 0 || g.n / N < 4)
    fail(ErrorCode::StructureMismatch, "vertex count is not N*(ell+3) with N = n^2");
  int ell = (int)(g.n / N) - 3;
  // Layout of the generator: a = [0,N), b = [N,2N), c = [2N,3N), d = [3N,4N).
  std::vector<int> keep;
  std::vector<char> is_x(g.n, 0), is_y(g.n, 0);
  for (int i = 0; i < n; ++i) {
    int x = i * n;                      // a_{(i-1)n+1}, 0-based id
    int y = (int)(3 * N) + i * n + n - 1;  // d_{in}, 0-based id
    is_x[x] = is_y[y] = 1;
    keep.push_back(x);
    keep.push_back(y);
  }
  for (int v = (int)N; v < 2 * N; ++v) keep.push_back(v);      // B
  for (int v = 2 * (int)N; v < 3 * (int)N; ++v) keep.push_back(v);  // C
  for (int v = 4 * (int)N; v < g.n; ++v) keep.push_back(v);    // path internals
  std::sort(keep.begin(), keep.end());
  Graph h1 = induced_subgraph(g, keep);
  // Positions of the hub vertices after relabelling.
  std::vector<int> xs, ys;
  for (int idx = 0; idx < (int)keep.size(); ++idx) {
    if (is_x[keep[idx]]) xs.push_back(idx);
    if (is_y[keep[idx]]) ys.push_back(idx);
  }
  auto adj = h1.adjacency_lists();
  std::vector<std::set<int>> nbr(h1.n);
  for (int v = 0; v < h1.n; ++v) nbr[v] = std::set<int>(adj[v].begin(), adj[v].end());
  auto subset = [&](int u, int v) {
    return std::includes(nbr[v].begin(), nbr[v].end(), nbr[u].begin(), nbr[u].end());
  };
  // Keep a hub edge only when the hub is neighbourhood-minimal among the
  // hubs adjacent to the other endpoint.
  auto hub_edge_kept = [&](const std::vector<int>& hub_set, int hub, int other) {
    for (int h : hub_set)
      if (nbr[other].count(h) && !subset(hub, h)) return false;
    return true;
  };
  std::vector<std::pair<int, int>> edges;
  for (auto [u, v] : h1.edges) {
    bool ux = std::binary_search(xs.begin(), xs.end(), u);
    bool vx = std::binary_search(xs.begin(), xs.end(), v);
    bool uy = std::binary_search(ys.begin(), ys.end(), u);
    bool vy = std::binary_search(ys.begin(), ys.end(), v);
    if (ux || vx) {
      int hub = ux ? u : v, other = ux ? v : u;
      if (!hub_edge_kept(xs, hub, other)) continue;
    }
    if (uy || vy) {
      int hub = uy ? u : v, other = uy ? v : u;
      if (!hub_edge_kept(ys, hub, other)) continue;
    }
    edges.emplace_back(u, v);
  }
  Graph out = make_graph(h1.n, edges);
  if (!graphs_isomorphic(out, gen_subdivided_complete(n, ell + 2, true)))
    fail(ErrorCode::StructureMismatch, "extraction did not yield the subdivided biclique");
  return out;
}

Graph encode_bipartite_in_transversal(const Graph& h, const std::vector<int>& side) {
  if ((int)side.size() != h.n) fail(ErrorCode::NotBipartite, "side vector length mismatch");
  for (int v : side)
    if (v != 0 && v != 1) fail(ErrorCode::NotBipartite, "sides must be 0/1");
  for (auto [u, v] : h.edges)
    if (side[u] == side[v]) fail(ErrorCode::NotBipartite, "edge inside one side");
  if (h.n == 0) return h;
  std::vector<int> X, Y;
  for (int v = 0; v < h.n; ++v) (side[v] == 0 ? X : Y).push_back(v);
  int n = std::max<int>(std::max(X.size(), Y.size()), 1);

  Graph t = gen_transversal_graph(n);
  auto w = canonical_transversal_witness(n);
  auto adj = t.adjacency_lists();
  std::vector<std::set<int>> nbr(t.n);
  for (int v = 0; v < t.n; ++v) nbr[v] = std::set<int>(adj[v].begin(), adj[v].end());
  auto subset = [&](int u, int v) {
    return std::includes(nbr[v].begin(), nbr[v].end(), nbr[u].begin(), nbr[u].end());
  };
  // Neighbourhood-minimality reduction to the once-subdivided biclique:
  // keep a-b (resp. b-c) edges whose a (resp. c) endpoint has minimal
  // neighbourhood among the same-layer neighbours of the b vertex.
  auto minimal_against = [&](const std::vector<int>& layer, int hub, int b) {
    for (int other : layer)
      if (nbr[b].count(other) && !subset(hub, other)) return false;
    return true;
  };
  std::vector<std::vector<char>> sub_ab(n, std::vector<char>(t.n, 0));
  std::vector<std::vector<char>> sub_cb(n, std::vector<char>(t.n, 0));
  for (int i = 0; i < n; ++i)
    for (int bi = 0; bi < n; ++bi)
      for (int bj = 0; bj < n; ++bj) {
        int b = w.B[bi][bj];
        if (nbr[b].count(w.A[i]) && minimal_against(w.A, w.A[i], b)) sub_ab[i][b] = 1;
        if (nbr[b].count(w.C[i]) && minimal_against(w.C, w.C[i], b)) sub_cb[i][b] = 1;
      }
  // Mark F = subdividers of the edges of h, then read edges back through
  // u - w - v with w in F.
  std::vector<char> in_f(t.n, 0);
  std::vector<int> pos_x(h.n, -1), pos_y(h.n, -1);
  for (int i = 0; i < (int)X.size(); ++i) pos_x[X[i]] = i;
  for (int j = 0; j < (int)Y.size(); ++j) pos_y[Y[j]] = j;
  for (auto [u, v] : h.edges) {
    int i = side[u] == 0 ? pos_x[u] : pos_x[v];
    int j = side[u] == 0 ? pos_y[v] : pos_y[u];
    in_f[w.B[i][j]] = 1;
  }
  std::vector<std::pair<int, int>> out_edges;
  for (int i = 0; i < (int)X.size(); ++i)
    for (int j = 0; j < (int)Y.size(); ++j) {
      bool connected = false;
      for (int bi = 0; bi < n && !connected; ++bi)
        for (int bj = 0; bj < n && !connected; ++bj) {
          int b = w.B[bi][bj];
          if (in_f[b] && sub_ab[i][b] && sub_cb[j][b]) connected = true;
        }
      if (connected) out_edges.emplace_back(X[i], Y[j]);
    }
  return make_graph(h.n, out_edges);
}

Graph gen_Gbullet(const Graph& h, const std::vector<int>& side) {
  if ((int)side.size() != h.n) fail(ErrorCode::NotBipartite, "side vector length mismatch");
  for (int v : side)
    if (v != 0 && v != 1) fail(ErrorCode::NotBipartite, "sides must be 0/1");
  for (auto [u, v] : h.edges)
    if (side[u] == side[v]) fail(ErrorCode::NotBipartite, "edge inside one side");
  std::vector<int> U, V;
  for (int v = 0; v < h.n; ++v) (side[v] == 0 ? U : V).push_back(v);
  int nu = (int)U.size(), nv = (int)V.size(), ne = (int)h.edges.size();
  std::vector<int> new_id(h.n);
  for (int i = 0; i < nu; ++i) new_id[U[i]] = i;
  for (int j = 0; j < nv; ++j) new_id[V[j]] = nu + j;
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < nu; ++i)
    for (int j = i + 1; j < nu; ++j) edges.emplace_back(i, j);
  for (int i = 0; i < nv; ++i)
    for (int j = i + 1; j < nv; ++j) edges.emplace_back(nu + i, nu + j);
  for (int i = 0; i < ne; ++i)
    for (int j = i + 1; j < ne; ++j) edges.emplace_back(nu + nv + i, nu + nv + j);
  for (int e = 0; e < ne; ++e) {
    auto [eu, ev] = h.edges[e];
    for (int v = 0; v < h.n; ++v)
      if (v != eu && v != ev) edges.emplace_back(nu + nv + e, new_id[v]);
  }
  return make_graph(nu + nv + ne, edges);
}

// ---------------------------------------------------------------------------
// Terrains
// ---------------------------------------------------------------------------

namespace {

// r strictly above the segment p-q (requires x_p < x_r < x_q).
bool strictly_above(const std::pair<Rational, Rational>& p, const std::pair<Rational, Rational>& q,
                    const std::pair<Rational, Rational>& r) {
  return (q.first - p.first) * (r.second - p.second) >
         (q.second - p.second) * (r.first - p.first);
}

bool sees(const std::vector<std::pair<Rational, Rational>>& pts, int i, int j) {
  if (i > j) std::swap(i, j);
  for (int k = i + 1; k < j; ++k)
    if (strictly_above(pts[i], pts[j], pts[k])) return false;
  return true;
}

}  // namespace

Graph visibility_graph(const Terrain& t) {
  int m = (int)t.points.size();
  if (m < 1) fail(ErrorCode::EmptyInput, "a terrain needs at least one point");
  for (int i = 0; i + 1 < m; ++i)
    if (!(t.points[i].first < t.points[i + 1].first))
      fail(ErrorCode::NotATerrain, "x-coordinates must be strictly increasing");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (sees(t.points, i, j)) edges.emplace_back(i, j);
  return make_graph(m, edges);
}

TerrainRoles classify_terrain(const Terrain& t, int ell) {
  if (ell < 1) fail(ErrorCode::PathTooShort, "ell must be >= 1");
  TerrainRoles roles;
  std::map<long long, int> a_by_m, c_by_j;
  std::map<long long, int> b_by_i;
  for (int idx = 0; idx < (int)t.points.size(); ++idx) {
    const auto& [x, y] = t.points[idx];
    if (x < 0) {
      if (denominator(y) != 1 || y < 1) fail(ErrorCode::NotATerrain, "malformed wall point");
      c_by_j[(long long)numerator(y)] = idx;
    } else if (denominator(x) == 1) {
      a_by_m[(long long)numerator(x)] = idx;
    } else {
      Rational i = (x - Rational(1, 2)) / ell + 1;
      if (denominator(i) != 1 || i < 1) fail(ErrorCode::NotATerrain, "misplaced low point");
      b_by_i[(long long)numerator(i)] = idx;
    }
  }
  auto flatten = [](const std::map<long long, int>& src, long long first, std::vector<int>& dst) {
    long long expect = first;
    for (const auto& [key, idx] : src) {
      if (key != expect++) fail(ErrorCode::NotATerrain, "non-contiguous indices");
      dst.push_back(idx);
    }
  };
  flatten(a_by_m, 0, roles.a);
  flatten(b_by_i, 1, roles.b);
  flatten(c_by_j, 1, roles.c);
  return roles;
}

bool terrain_structure_ok(const Terrain& t, const std::vector<int>& sigma, int ell,
                          std::string* why) {
  check_permutation(sigma);
  int n = (int)sigma.size();
  auto fail_with = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  TerrainRoles roles = classify_terrain(t, ell);
  if ((int)roles.c.size() != n) return fail_with("wall size does not match sigma");
  if ((int)roles.b.size() != n) return fail_with("low point count does not match sigma");
  if ((int)roles.a.size() != ell * (n - 1) + 2) return fail_with("floor size mismatch");
  Graph g = visibility_graph(t);
  int na = (int)roles.a.size();
  for (int m = 0; m < na; ++m)
    for (int m2 = m + 1; m2 < na; ++m2)
      if (g.has_edge(roles.a[m], roles.a[m2]) != (m2 == m + 1))
        return fail_with("floor is not an induced path");
  for (int j = 0; j < n; ++j)
    for (int j2 = j + 1; j2 < n; ++j2)
      if (!g.has_edge(roles.c[j], roles.c[j2])) return fail_with("wall is not a clique");
  for (int m = 0; m < na; ++m)
    for (int j = 0; j < n; ++j)
      if (!g.has_edge(roles.a[m], roles.c[j])) return fail_with("floor-wall pair not visible");
  for (int i = 0; i < n; ++i) {
    for (int i2 = i + 1; i2 < n; ++i2)
      if (g.has_edge(roles.b[i], roles.b[i2])) return fail_with("low points see each other");
    for (int m = 0; m < na; ++m) {
      bool expect = m == ell * i || m == ell * i + 1;
      if (g.has_edge(roles.b[i], roles.a[m]) != expect)
        return fail_with("low point floor adjacency is wrong");
    }
    for (int j = 0; j < n; ++j)
      if (g.has_edge(roles.b[i], roles.c[j]) != (j >= sigma[i]))
        return fail_with("horizon pattern does not match sigma");
  }
  return true;
}

namespace {

struct TerrainBuild {
  int n = 0;
  int ell = 1;
  int last_a = 0;  // index M of the last floor point
  Rational eps_a, eps_c;
  std::vector<std::pair<Rational, Rational>> pts;  // growing terrain, x-sorted
  std::vector<int> c_idx;                          // c_idx[j] = position of c_{j+1}
  std::vector<int> a_idx;                          // a_idx[m] = position of a_m

  void init(int n_, int ell_, const Rational& ea, const Rational& ec) {
    n = n_;
    ell = ell_;
    eps_a = ea;
    eps_c = ec;
    last_a = ell * (n - 1) + 1;
    pts.clear();
    c_idx.assign(n, -1);
    a_idx.assign(last_a + 1, -1);
    for (int j = n; j >= 1; --j)
      pts.emplace_back(Rational(-j) + eps_c * j * j, Rational(j));
    for (int j = 1; j <= n; ++j) c_idx[j - 1] = n - j;
    for (int m = 0; m <= last_a; ++m) {
      a_idx[m] = (int)pts.size();
      pts.emplace_back(Rational(m), -eps_a * m * m);
    }
  }

  // Insert a point keeping x sorted; returns its position.
  int insert(const std::pair<Rational, Rational>& p) {
    auto it = std::lower_bound(pts.begin(), pts.end(), p,
                               [](const auto& u, const auto& v) { return u.first < v.first; });
    int pos = (int)(it - pts.begin());
    pts.insert(it, p);
    for (auto& idx : c_idx)
      if (idx >= pos) ++idx;
    for (auto& idx : a_idx)
      if (idx >= pos) ++idx;
    return pos;
  }

  void erase(int pos) {
    pts.erase(pts.begin() + pos);
    for (auto& idx : c_idx)
      if (idx > pos) --idx;
    for (auto& idx : a_idx)
      if (idx > pos) --idx;
  }
};

enum class Height { TooLow, Feasible, TooHigh };

// Classifies a candidate height y for the low point b_i (1-based i).
Height classify_b(TerrainBuild& tb, int i, const Rational& x, const Rational& y, int sigma_i) {
  int pos = tb.insert({x, y});
  int left_a = tb.ell * (i - 1), right_a = left_a + 1;
  Height verdict = Height::Feasible;
  // Which wall points does the candidate see?
  bool sees_required = true;
  bool sees_forbidden = false;
  for (int j = 1; j <= tb.n; ++j) {
    bool vis = sees(tb.pts, tb.c_idx[j - 1], pos);
    if (j - 1 >= sigma_i && !vis) sees_required = false;
    if (j - 1 < sigma_i && vis) sees_forbidden = true;
  }
  if (!sees_required)
    verdict = Height::TooLow;
  else if (sees_forbidden)
    verdict = Height::TooHigh;
  else {
    // Must see exactly its two floor neighbours, no other floor point and no
    // earlier low point; and must not shadow any floor-floor or floor-wall
    // pair crossing its x position.
    for (int q = 0; q < (int)tb.pts.size() && verdict == Height::Feasible; ++q) {
      if (q == pos) continue;
      bool is_neighbor = q == tb.a_idx[left_a] || q == tb.a_idx[right_a];
      bool is_wall = tb.pts[q].first < 0;
      if (!is_wall && sees(tb.pts, q, pos) != is_neighbor)
        verdict = is_neighbor ? Height::TooLow : Height::TooHigh;
    }
    if (verdict == Height::Feasible) {
      // The two floor neighbours must still see each other, and every floor
      // point right of the candidate must still see the whole wall.
      if (!sees(tb.pts, tb.a_idx[left_a], tb.a_idx[right_a])) verdict = Height::TooHigh;
      for (int m = right_a; m <= tb.last_a && verdict == Height::Feasible; ++m)
        for (int j = 0; j < tb.n && verdict == Height::Feasible; ++j)
          if (!sees(tb.pts, tb.c_idx[j], tb.a_idx[m])) verdict = Height::TooHigh;
    }
  }
  tb.erase(pos);
  return verdict;
}

}  // namespace

Terrain gen_terrain(const std::vector<int>& sigma, int ell) {
  int n = (int)sigma.size();
  if (n < 1) fail(ErrorCode::EmptyInput, "empty permutation");
  if (ell < 1) fail(ErrorCode::PathTooShort, "ell must be >= 1");
  check_permutation(sigma);
  constexpr int kRounds = 24;
  constexpr int kBisection = 220;
  for (int round = 0; round < kRounds; ++round) {
    TerrainBuild tb;
    Rational shrink = Rational(1, 1LL << round);
    int M = ell * (n - 1) + 1;
    tb.init(n, ell, shrink / (16 * (M + 1) * (M + 1)), shrink / (2 * n + 2));
    bool ok = true;
    for (int i = 1; i <= n && ok; ++i) {
      Rational x = Rational(2 * ell * (i - 1) + 1, 2);
      int la = ell * (i - 1), ra = la + 1;
      // Highest legal position: on the chord between the two floor
      // neighbours (being on the chord does not block them).
      const auto& p = tb.pts[tb.a_idx[la]];
      const auto& q = tb.pts[tb.a_idx[ra]];
      Rational hi = p.second + (q.second - p.second) * (x - p.first) / (q.first - p.first);
      Rational lo = Rational(-(long long)n) - 2;
      Height at_hi = classify_b(tb, i, x, hi, sigma[i - 1]);
      if (at_hi == Height::Feasible) {
        tb.insert({x, hi});
        continue;
      }
      if (at_hi == Height::TooLow) {
        ok = false;  // even the ceiling cannot see far enough: flatten more
        break;
      }
      if (classify_b(tb, i, x, lo, sigma[i - 1]) != Height::TooLow) {
        ok = false;
        break;
      }
      bool placed = false;
      for (int it = 0; it < kBisection; ++it) {
        Rational mid = (lo + hi) / 2;
        Height h = classify_b(tb, i, x, mid, sigma[i - 1]);
        if (h == Height::Feasible) {
          tb.insert({x, mid});
          placed = true;
          break;
        }
        (h == Height::TooLow ? lo : hi) = mid;
      }
      if (!placed) ok = false;
    }
    if (!ok) continue;
    Terrain t;
    t.points = tb.pts;
    if (terrain_structure_ok(t, sigma, ell)) return t;
  }
  fail(ErrorCode::PrecisionExhausted,
       "no feasible horizon heights after " + std::to_string(kRounds) + " flattening rounds");
}

// ---------------------------------------------------------------------------
// Isomorphism
// ---------------------------------------------------------------------------

namespace {

// One round of colour refinement shared by both graphs so colours remain
// comparable across them.
bool refine_colors(const std::vector<std::vector<int>>& adj_a,
                   const std::vector<std::vector<int>>& adj_b, std::vector<int>& col_a,
                   std::vector<int>& col_b) {
  std::map<std::pair<int, std::vector<int>>, int> next_ids;
  auto signature = [](int own, const std::vector<int>& nbrs, const std::vector<int>& col) {
    std::vector<int> sig;
    sig.reserve(nbrs.size());
    for (int w : nbrs) sig.push_back(col[w]);
    std::sort(sig.begin(), sig.end());
    return std::make_pair(own, std::move(sig));
  };
  std::vector<int> na(col_a.size()), nb(col_b.size());
  for (size_t v = 0; v < col_a.size(); ++v) {
    auto key = signature(col_a[v], adj_a[v], col_a);
    auto [it, ins] = next_ids.emplace(std::move(key), (int)next_ids.size());
    na[v] = it->second;
  }
  for (size_t v = 0; v < col_b.size(); ++v) {
    auto key = signature(col_b[v], adj_b[v], col_b);
    auto [it, ins] = next_ids.emplace(std::move(key), (int)next_ids.size());
    nb[v] = it->second;
  }
  bool changed = na != col_a || nb != col_b;
  col_a = std::move(na);
  col_b = std::move(nb);
  return changed;
}

struct IsoSearch {
  const Graph& a;
  const Graph& b;
  std::vector<std::vector<int>> adj_a, adj_b;
  BitMatrix mat_a, mat_b;
  std::vector<int> col_a, col_b;
  std::vector<int> mapping;   // a -> b
  std::vector<int> inverse;   // b -> a
  std::vector<int> order;

  IsoSearch(const Graph& a_, const Graph& b_) : a(a_), b(b_), mat_a(a_.n), mat_b(b_.n) {
    adj_a = a.adjacency_lists();
    adj_b = b.adjacency_lists();
    for (auto [u, v] : a.edges) {
      mat_a.set(u, v);
      mat_a.set(v, u);
    }
    for (auto [u, v] : b.edges) {
      mat_b.set(u, v);
      mat_b.set(v, u);
    }
  }

  bool run() {
    col_a.assign(a.n, 0);
    col_b.assign(b.n, 0);
    for (int round = 0; round < a.n; ++round)
      if (!refine_colors(adj_a, adj_b, col_a, col_b)) break;
    auto hist = [](const std::vector<int>& col) {
      std::map<int, int> h;
      for (int c : col) ++h[c];
      return h;
    };
    auto ha = hist(col_a), hb = hist(col_b);
    if (ha != hb) return false;
    // Match rare colours first, then high degree.
    order.resize(a.n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int u, int v) {
      auto ku = std::make_tuple(ha[col_a[u]], -(int)adj_a[u].size(), u);
      auto kv = std::make_tuple(ha[col_a[v]], -(int)adj_a[v].size(), v);
      return ku < kv;
    });
    mapping.assign(a.n, -1);
    inverse.assign(b.n, -1);
    return dfs(0);
  }

  bool dfs(int depth) {
    if (depth == a.n) return true;
    int u = order[depth];
    for (int v = 0; v < b.n; ++v) {
      if (inverse[v] >= 0 || col_a[u] != col_b[v]) continue;
      bool fits = true;
      for (int w : adj_a[u])
        if (mapping[w] >= 0 && !mat_b.get(v, mapping[w])) {
          fits = false;
          break;
        }
      if (fits)
        for (int w : adj_b[v])
          if (inverse[w] >= 0 && !mat_a.get(u, inverse[w])) {
            fits = false;
            break;
          }
      if (!fits) continue;
      mapping[u] = v;
      inverse[v] = u;
      if (dfs(depth + 1)) return true;
      mapping[u] = -1;
      inverse[v] = -1;
    }
    return false;
  }
};

}  // namespace

bool graphs_isomorphic(const Graph& a, const Graph& b) {
  if (a.n != b.n || a.edges.size() != b.edges.size()) return false;
  if (a.n == 0) return true;
  IsoSearch search(a, b);
  return search.run();
}

}  // namespace twwgeo
