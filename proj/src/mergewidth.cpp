#include "twwgeo/mergewidth.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <string>

#include "twwgeo/error.hpp"

namespace twwgeo {

namespace {

enum : int8_t { kUnresolved = 0, kPos = 1, kNeg = 2 };

/// Replay state: partition into canonically named parts plus the resolved
/// graph, with enough bookkeeping to evaluate the width definition.
struct ReplayState {
  int n;
  std::map<int, std::vector<int>> parts;  // canonical id -> sorted members
  std::vector<int8_t> resolution;         // n*n, symmetric
  std::vector<std::vector<int>> adj;      // resolved graph (both signs)
  long long resolved_pairs = 0;

  explicit ReplayState(int n_) : n(n_), resolution((size_t)n_ * n_, kUnresolved), adj(n_) {
    for (int v = 0; v < n; ++v) parts[v] = {v};
  }

  int8_t& res(int u, int v) { return resolution[(size_t)u * n + v]; }

  const std::vector<int>& members(int id, const char* what) {
    auto it = parts.find(id);
    if (it == parts.end())
      fail(ErrorCode::InvalidOp, std::string(what) + ": part " + std::to_string(id) +
                                     " is not a live canonical part id");
    return it->second;
  }

  void merge(int a, int b) {
    if (a == b) fail(ErrorCode::InvalidOp, "merge requires two distinct parts");
    members(a, "merge");
    members(b, "merge");
    int keep = std::min(a, b), gone = std::max(a, b);
    auto& mk = parts[keep];
    auto& mg = parts[gone];
    mk.insert(mk.end(), mg.begin(), mg.end());
    std::sort(mk.begin(), mk.end());
    parts.erase(gone);
  }

  // Resolves every still-unresolved pair between parts a and b (inside the
  // part when a == b) to `sign`; already-resolved pairs are skipped no matter
  // their sign.
  void resolve(int a, int b, int8_t sign) {
    const auto ma = members(a, "resolve");
    const auto mb = members(b, "resolve");
    auto touch = [&](int x, int y) {
      if (x == y) return;
      if (res(x, y) != kUnresolved) return;
      res(x, y) = res(y, x) = sign;
      adj[x].push_back(y);
      adj[y].push_back(x);
      ++resolved_pairs;
    };
    if (a == b) {
      for (size_t i = 0; i < ma.size(); ++i)
        for (size_t j = i + 1; j < ma.size(); ++j) touch(ma[i], ma[j]);
    } else {
      for (int x : ma)
        for (int y : mb) touch(x, y);
    }
  }
};

/// Width contribution of the current state: max over vertices of the number
/// of parts within `radius` in the resolved graph.
int state_width(const ReplayState& st, int radius) {
  int n = st.n;
  if (n == 0) return 0;
  std::vector<int> count(n, 0);
  if (radius == kRadiusInf) {
    // Component labels via BFS.
    std::vector<int> comp(n, -1);
    int nc = 0;
    std::deque<int> queue;
    for (int s = 0; s < n; ++s) {
      if (comp[s] >= 0) continue;
      comp[s] = nc;
      queue.push_back(s);
      while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (int w : st.adj[u])
          if (comp[w] < 0) {
            comp[w] = nc;
            queue.push_back(w);
          }
      }
      ++nc;
    }
    // comp_parts[c] = number of parts touching component c.
    std::vector<int> comp_parts(nc, 0);
    std::vector<int> stamp(nc, -1);
    int part_idx = 0;
    for (const auto& [id, members] : st.parts) {
      for (int v : members)
        if (stamp[comp[v]] != part_idx) {
          stamp[comp[v]] = part_idx;
          ++comp_parts[comp[v]];
        }
      ++part_idx;
    }
    int best = 0;
    for (int v = 0; v < n; ++v) best = std::max(best, comp_parts[comp[v]]);
    return best;
  }
  // Finite radius: one capped multi-source BFS per part.
  std::vector<int> dist(n);
  std::vector<int> stamp(n, -1);
  int part_idx = 0;
  std::deque<int> queue;
  for (const auto& [id, members] : st.parts) {
    for (int v : members) {
      stamp[v] = part_idx;
      dist[v] = 0;
      ++count[v];
      queue.push_back(v);
    }
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      if (dist[u] == radius) continue;
      for (int w : st.adj[u])
        if (stamp[w] != part_idx) {
          stamp[w] = part_idx;
          dist[w] = dist[u] + 1;
          ++count[w];
          queue.push_back(w);
        }
    }
    ++part_idx;
  }
  int best = 0;
  for (int v = 0; v < n; ++v) best = std::max(best, count[v]);
  return best;
}

}  // namespace

int verify_construction(const Graph& g, const ConstructionSequence& seq, int radius) {
  if (radius != kRadiusInf && radius < 0)
    fail(ErrorCode::InvalidOp, "radius must be >= 0 or kRadiusInf");
  if (g.n == 0) fail(ErrorCode::EmptyInput, "empty graph");
  ReplayState st(g.n);
  int width = state_width(st, radius);
  for (const auto& op : seq.ops) {
    switch (op.kind) {
      case OpKind::Merge:
        st.merge(op.a, op.b);
        // A merge can only lower per-vertex part counts, so it never sets
        // a new maximum; skip the width evaluation.
        break;
      case OpKind::ResolvePos:
        st.resolve(op.a, op.b, kPos);
        width = std::max(width, state_width(st, radius));
        break;
      case OpKind::ResolveNeg:
        st.resolve(op.a, op.b, kNeg);
        width = std::max(width, state_width(st, radius));
        break;
    }
  }
  if (st.parts.size() != 1)
    fail(ErrorCode::WrongGraph, "sequence does not end with a single part");
  long long all_pairs = (long long)g.n * (g.n - 1) / 2;
  if (st.resolved_pairs != all_pairs)
    fail(ErrorCode::WrongGraph, "sequence leaves pairs unresolved");
  for (int u = 0; u < g.n; ++u)
    for (int v = u + 1; v < g.n; ++v) {
      int8_t r = st.resolution[(size_t)u * g.n + v];
      int8_t o = st.resolution[(size_t)v * g.n + u];
      if (r != o) fail(ErrorCode::InconsistentResolve, "asymmetric resolution state");
      bool want = g.has_edge(u, v);
      if ((r == kPos) != want)
        fail(ErrorCode::WrongGraph, "resolved edges do not match the target graph");
    }
  return width;
}

ConstructionSequence build_halfgraph_construction(int n) {
  if (n < 1) fail(ErrorCode::EmptyInput, "half-graph needs n >= 1");
  ConstructionSequence seq;
  auto a = [&](int i) { return i - 1; };      // a_i, 1-based
  auto b = [&](int j) { return n + j - 1; };  // b_j, 1-based
  if (n == 1) {
    // Merging first keeps every vertex's part count at 1 throughout.
    seq.ops.push_back({OpKind::Merge, a(1), b(1)});
    seq.ops.push_back({OpKind::ResolvePos, a(1), a(1)});
    return seq;
  }
  // Sweep j = 1..n with merged prefixes Ale = {a_1..a_j}, Ble = {b_1..b_{j-1}}
  // (canonical ids a(1) and b(1) once non-empty).
  for (int j = 1; j <= n; ++j) {
    if (j > 1) seq.ops.push_back({OpKind::Merge, a(1), a(j)});
    if (j > 1) seq.ops.push_back({OpKind::ResolveNeg, a(1), b(1)});
    seq.ops.push_back({OpKind::ResolvePos, b(j), a(1)});
    if (j > 1) seq.ops.push_back({OpKind::Merge, b(1), b(j)});
  }
  seq.ops.push_back({OpKind::ResolveNeg, a(1), a(1)});
  seq.ops.push_back({OpKind::ResolveNeg, b(1), b(1)});
  seq.ops.push_back({OpKind::Merge, a(1), b(1)});
  return seq;
}

AugmentResult augment_with_paths(const Graph& g, const ConstructionSequence& base,
                                 const std::vector<std::pair<int, int>>& pairs, int ell) {
  if (ell < 2) fail(ErrorCode::PathTooShort, "paths must have length >= 2");
  int n0 = g.n;
  for (auto [x, y] : pairs)
    if (x < 0 || x >= n0 || y < 0 || y >= n0)
      fail(ErrorCode::InvalidVertex, "path endpoint outside the base graph");

  int internals_per_path = ell - 1;
  int n1 = n0 + (int)pairs.size() * internals_per_path;
  std::vector<std::pair<int, int>> edges = g.edges;
  AugmentResult out;
  // Phase 1: resolve each path and merge its internal vertices into one part
  // S.  S is canonically named by the first internal vertex, id n0.
  bool have_s = false;
  int s_id = n0;
  int next = n0;
  for (auto [x, y] : pairs) {
    int first = next;
    std::vector<int> chain;  // x, v^1 .. v^{ell-1}, y
    chain.push_back(x);
    for (int j = 1; j < ell; ++j) chain.push_back(next++);
    chain.push_back(y);
    for (int j = 0; j < ell; ++j) edges.emplace_back(chain[j], chain[j + 1]);
    out.seq.ops.push_back({OpKind::ResolvePos, std::min(x, first), std::max(x, first)});
    for (int j = 1; j < ell; ++j) {
      out.seq.ops.push_back(
          {OpKind::ResolvePos, std::min(chain[j], chain[j + 1]), std::max(chain[j], chain[j + 1])});
      if (have_s)
        out.seq.ops.push_back({OpKind::Merge, s_id, chain[j]});
      else
        have_s = true;  // S := {v^1} of the first path, no op needed
    }
  }
  out.graph = make_graph(n1, edges);
  // Phase 2: the base sequence is valid verbatim; part ids of base-graph
  // vertices are untouched by phase 1.
  for (const auto& op : base.ops) out.seq.ops.push_back(op);
  // Phase 3: merge S with the base part and close negatively.
  if (have_s) out.seq.ops.push_back({OpKind::Merge, 0, s_id});
  out.seq.ops.push_back({OpKind::ResolveNeg, 0, 0});
  return out;
}

UnionResult union_constructions(const Graph& g1, const ConstructionSequence& s1, const Graph& g2,
                                const ConstructionSequence& s2) {
  if (g1.n == 0 || g2.n == 0) fail(ErrorCode::EmptyInput, "empty side in union");
  UnionResult out;
  std::vector<std::pair<int, int>> edges = g1.edges;
  for (auto [u, v] : g2.edges) edges.emplace_back(u + g1.n, v + g1.n);
  out.graph = make_graph(g1.n + g2.n, edges);
  out.seq.ops = s1.ops;
  for (const auto& op : s2.ops)
    out.seq.ops.push_back({op.kind, op.a + g1.n, op.b + g1.n});
  out.seq.ops.push_back({OpKind::ResolveNeg, 0, g1.n});
  out.seq.ops.push_back({OpKind::Merge, 0, g1.n});
  return out;
}

}  // namespace twwgeo
