#include "twwgeo/structures.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>

namespace twwgeo {

bool Graph::has_edge(int u, int v) const {
  if (u == v) return false;
  if (u > v) std::swap(u, v);
  return std::binary_search(edges.begin(), edges.end(), std::make_pair(u, v));
}

std::vector<std::vector<int>> Graph::adjacency_lists() const {
  std::vector<std::vector<int>> adj(n);
  for (auto [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  return adj;
}

Graph make_graph(int n, std::vector<std::pair<int, int>> edges) {
  if (n < 0) fail(ErrorCode::InvalidVertex, "negative vertex count");
  for (auto& [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n)
      fail(ErrorCode::InvalidVertex, "edge endpoint out of range");
    if (u == v) fail(ErrorCode::InvalidVertex, "self-loop not allowed");
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  Graph g;
  g.n = n;
  g.edges = std::move(edges);
  return g;
}

BitMatrix::BitMatrix(int n) : n_(n), words_((n + 63) / 64), bits_((size_t)n * words_, 0) {}

void BitMatrix::set(int u, int v) { bits_[(size_t)u * words_ + v / 64] |= uint64_t{1} << (v % 64); }

bool BitMatrix::get(int u, int v) const {
  return (bits_[(size_t)u * words_ + v / 64] >> (v % 64)) & 1;
}

int BitMatrix::row_popcount_masked(int v, const std::vector<uint64_t>& mask) const {
  int cnt = 0;
  const uint64_t* r = &bits_[(size_t)v * words_];
  for (int w = 0; w < words_; ++w) cnt += std::popcount(r[w] & mask[w]);
  return cnt;
}

std::vector<uint64_t> make_mask(int n, const std::vector<int>& members) {
  std::vector<uint64_t> mask((n + 63) / 64, 0);
  for (int v : members) mask[v / 64] |= uint64_t{1} << (v % 64);
  return mask;
}

std::vector<int> OrderedBinaryStructure::positions() const {
  std::vector<int> pos(n, -1);
  if (order) {
    for (int i = 0; i < n; ++i) pos[(*order)[i]] = i;
  } else {
    std::iota(pos.begin(), pos.end(), 0);
  }
  return pos;
}

OrderedBinaryStructure make_structure(int n, std::vector<Relation> relations,
                                      std::optional<std::vector<int>> order) {
  if (n < 0) fail(ErrorCode::InvalidVertex, "negative vertex count");
  std::set<std::string> names;
  for (auto& rel : relations) {
    if (!names.insert(rel.name).second)
      fail(ErrorCode::InvalidRelation, "duplicate relation name " + rel.name);
    for (auto [u, v] : rel.pairs)
      if (u < 0 || u >= n || v < 0 || v >= n)
        fail(ErrorCode::InvalidVertex, "relation pair out of range in " + rel.name);
    std::sort(rel.pairs.begin(), rel.pairs.end());
    rel.pairs.erase(std::unique(rel.pairs.begin(), rel.pairs.end()), rel.pairs.end());
  }
  if (order) {
    if ((int)order->size() != n) fail(ErrorCode::InvalidOrder, "order length != n");
    std::vector<char> seen(n, 0);
    for (int v : *order) {
      if (v < 0 || v >= n || seen[v]) fail(ErrorCode::InvalidOrder, "order is not a permutation");
      seen[v] = 1;
    }
  }
  OrderedBinaryStructure s;
  s.n = n;
  s.relations = std::move(relations);
  s.order = std::move(order);
  return s;
}

OrderedBinaryStructure structure_from_graph(const Graph& g, std::optional<std::vector<int>> order) {
  Relation rel;
  rel.name = "edge";
  rel.pairs.reserve(g.edges.size() * 2);
  for (auto [u, v] : g.edges) {
    rel.pairs.emplace_back(u, v);
    rel.pairs.emplace_back(v, u);
  }
  return make_structure(g.n, {std::move(rel)}, std::move(order));
}

Graph graph_from_structure(const OrderedBinaryStructure& s) {
  std::vector<std::pair<int, int>> edges;
  for (const auto& rel : s.relations) {
    if (rel.name != "edge") continue;
    for (auto [u, v] : rel.pairs)
      if (u < v) edges.emplace_back(u, v);
  }
  return make_graph(s.n, std::move(edges));
}

VertexPartition singleton_partition(int n) {
  VertexPartition p;
  p.parts.resize(n);
  for (int v = 0; v < n; ++v) p.parts[v] = {v};
  return p;
}

void validate_partition(const OrderedBinaryStructure& s, const VertexPartition& p) {
  std::vector<char> seen(s.n, 0);
  int covered = 0;
  for (const auto& part : p.parts) {
    if (part.empty()) fail(ErrorCode::InvalidPartition, "empty part");
    for (int v : part) {
      if (v < 0 || v >= s.n) fail(ErrorCode::InvalidVertex, "part member out of range");
      if (seen[v]) fail(ErrorCode::InvalidPartition, "vertex in two parts");
      seen[v] = 1;
      ++covered;
    }
  }
  if (covered != s.n) fail(ErrorCode::InvalidPartition, "parts do not cover the vertex set");
}

StructureView::StructureView(const OrderedBinaryStructure& s) : n(s.n) {
  rows.reserve(s.relations.size());
  rows_rev.reserve(s.relations.size());
  for (const auto& rel : s.relations) {
    BitMatrix fwd(n), rev(n);
    for (auto [u, v] : rel.pairs) {
      fwd.set(u, v);
      rev.set(v, u);
    }
    rows.push_back(std::move(fwd));
    rows_rev.push_back(std::move(rev));
  }
  if (s.order) pos = s.positions();
}

namespace {

// All-or-none test for one relation direction over X x Y.
bool direction_homogeneous(const BitMatrix& mat, const std::vector<int>& xs,
                           const std::vector<uint64_t>& ymask, int ycount) {
  long long cnt = 0;
  for (int x : xs) cnt += mat.row_popcount_masked(x, ymask);
  return cnt == 0 || cnt == (long long)xs.size() * ycount;
}

}  // namespace

bool is_homogeneous(const StructureView& view, const std::vector<int>& xs,
                    const std::vector<int>& ys) {
  if (xs.empty() || ys.empty()) fail(ErrorCode::InvalidPartition, "homogeneity of empty set");
  if (!view.pos.empty()) {
    auto span = [&](const std::vector<int>& vs) {
      int lo = view.n, hi = -1;
      for (int v : vs) {
        lo = std::min(lo, view.pos[v]);
        hi = std::max(hi, view.pos[v]);
      }
      return std::make_pair(lo, hi);
    };
    auto [xlo, xhi] = span(xs);
    auto [ylo, yhi] = span(ys);
    if (!(xhi < ylo || yhi < xlo)) return false;  // order-interleaved
  }
  auto xmask = make_mask(view.n, xs);
  auto ymask = make_mask(view.n, ys);
  for (size_t r = 0; r < view.rows.size(); ++r) {
    if (!direction_homogeneous(view.rows[r], xs, ymask, (int)ys.size())) return false;
    if (!direction_homogeneous(view.rows_rev[r], xs, ymask, (int)ys.size())) return false;
    // The two checks above cover pairs (x,y) and (y,x) for x in X, y in Y.
  }
  return true;
}

bool is_homogeneous(const OrderedBinaryStructure& s, const std::vector<int>& xs,
                    const std::vector<int>& ys) {
  for (int v : xs)
    if (v < 0 || v >= s.n) fail(ErrorCode::InvalidVertex, "set member out of range");
  for (int v : ys)
    if (v < 0 || v >= s.n) fail(ErrorCode::InvalidVertex, "set member out of range");
  StructureView view(s);
  return is_homogeneous(view, xs, ys);
}

int error_degree(const StructureView& view, const VertexPartition& p) {
  const int m = (int)p.parts.size();
  std::vector<int> deg(m, 0);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (!is_homogeneous(view, p.parts[i], p.parts[j])) {
        ++deg[i];
        ++deg[j];
      }
  int best = 0;
  for (int d : deg) best = std::max(best, d);
  return best;
}

int error_degree(const OrderedBinaryStructure& s, const VertexPartition& p) {
  validate_partition(s, p);
  StructureView view(s);
  return error_degree(view, p);
}

InducedStructure induced_substructure(const OrderedBinaryStructure& s,
                                      const std::vector<int>& vertices) {
  std::vector<int> ids = vertices;
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  for (int v : ids)
    if (v < 0 || v >= s.n) fail(ErrorCode::InvalidVertex, "vertex out of range");
  std::vector<int> new_id(s.n, -1);
  for (size_t i = 0; i < ids.size(); ++i) new_id[ids[i]] = (int)i;

  std::vector<Relation> rels;
  for (const auto& rel : s.relations) {
    Relation r;
    r.name = rel.name;
    for (auto [u, v] : rel.pairs)
      if (new_id[u] >= 0 && new_id[v] >= 0) r.pairs.emplace_back(new_id[u], new_id[v]);
    rels.push_back(std::move(r));
  }
  std::optional<std::vector<int>> order;
  if (s.order) {
    order.emplace();
    for (int v : *s.order)
      if (new_id[v] >= 0) order->push_back(new_id[v]);
  }
  InducedStructure out;
  out.structure = make_structure((int)ids.size(), std::move(rels), std::move(order));
  out.original_ids = std::move(ids);
  return out;
}

Graph induced_subgraph(const Graph& g, const std::vector<int>& vertices) {
  std::vector<int> ids = vertices;
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  std::vector<int> new_id(g.n, -1);
  for (size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] < 0 || ids[i] >= g.n) fail(ErrorCode::InvalidVertex, "vertex out of range");
    new_id[ids[i]] = (int)i;
  }
  std::vector<std::pair<int, int>> edges;
  for (auto [u, v] : g.edges)
    if (new_id[u] >= 0 && new_id[v] >= 0) edges.emplace_back(new_id[u], new_id[v]);
  return make_graph((int)ids.size(), std::move(edges));
}

}  // namespace twwgeo
