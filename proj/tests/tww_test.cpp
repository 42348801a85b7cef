#include "twwgeo/tww.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "twwgeo/error.hpp"
#include "twwgeo/families.hpp"

using namespace twwgeo;

namespace {

Graph path_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return make_graph(n, std::move(edges));
}

Graph complete_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return make_graph(n, std::move(edges));
}

Graph random_graph(std::mt19937& rng, int n, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng)) edges.emplace_back(i, j);
  return make_graph(n, std::move(edges));
}

ContractionSequence fold_all(int n) {
  ContractionSequence seq;
  for (int v = 1; v < n; ++v) seq.merges.emplace_back(0, v);
  return seq;
}

}  // namespace

TEST_CASE("contraction width depends on the merge order") {
  auto p4 = structure_from_graph(path_graph(4));
  ContractionSequence good;
  good.merges = {{0, 1}, {0, 2}, {0, 3}};
  CHECK(verify_contraction(p4, good) == 1);
  // Merging an interior vertex with an endpoint early still leaves every part
  // with at most one inhomogeneous neighbour.
  ContractionSequence interior;
  interior.merges = {{0, 2}, {0, 1}, {0, 3}};
  CHECK(verify_contraction(p4, interior) == 1);
  // Merging the two path ends first is inhomogeneous to both middle parts.
  ContractionSequence rough;
  rough.merges = {{0, 3}, {0, 1}, {0, 2}};
  CHECK(verify_contraction(p4, rough) == 2);

  auto k5 = structure_from_graph(complete_graph(5));
  CHECK(verify_contraction(k5, fold_all(5)) == 0);

  ContractionSequence dead;
  dead.merges = {{0, 1}, {0, 1}, {0, 2}, {0, 3}};
  dead.merges.resize(4);
  CHECK_THROWS_AS(verify_contraction(structure_from_graph(path_graph(5)), dead), Error);
  ContractionSequence stub;
  stub.merges = {{0, 1}};
  CHECK_THROWS_AS(verify_contraction(p4, stub), Error);
}

TEST_CASE("exact width agrees with its own certificate") {
  std::mt19937 rng(41);
  for (int rep = 0; rep < 60; ++rep) {
    std::uniform_int_distribution<int> nd(1, 8);
    Graph g = random_graph(rng, nd(rng), 0.4);
    auto s = structure_from_graph(g);
    auto r = exact_tww(s);
    CHECK(verify_contraction(s, r.seq) == r.width);
  }
  CHECK_THROWS_AS(exact_tww(structure_from_graph(random_graph(rng, 13, 0.5))), Error);
}

TEST_CASE("four-vertex graphs all have width zero except the path") {
  Graph p4 = path_graph(4);
  for (int mask = 0; mask < 64; ++mask) {
    std::vector<std::pair<int, int>> edges;
    int bit = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j, ++bit)
        if (mask & (1 << bit)) edges.emplace_back(i, j);
    Graph g = make_graph(4, std::move(edges));
    int expect = graphs_isomorphic(g, p4) ? 1 : 0;
    CHECK(exact_tww(structure_from_graph(g)).width == expect);
  }
}

TEST_CASE("width never grows under taking induced substructures") {
  std::mt19937 rng(43);
  for (int rep = 0; rep < 25; ++rep) {
    std::uniform_int_distribution<int> nd(2, 8);
    int n = nd(rng);
    Graph g = random_graph(rng, n, 0.5);
    auto s = structure_from_graph(g);
    int full = exact_tww(s).width;
    std::vector<int> verts(n);
    std::iota(verts.begin(), verts.end(), 0);
    std::shuffle(verts.begin(), verts.end(), rng);
    std::uniform_int_distribution<int> kd(1, n);
    verts.resize(kd(rng));
    std::sort(verts.begin(), verts.end());
    auto sub = induced_substructure(s, verts);
    CHECK(exact_tww(sub.structure).width <= full);
  }
}

TEST_CASE("greedy contraction is always valid and flattens easy graphs") {
  auto k8 = structure_from_graph(complete_graph(8));
  auto r = greedy_contraction(k8);
  CHECK(verify_contraction(k8, r.seq) == 0);

  // Ordered half-graph: order-adjacent merging keeps the error degree low.
  auto hg6 = structure_from_graph(gen_halfgraph(6));
  auto h = greedy_contraction(hg6);
  CHECK(verify_contraction(hg6, h.seq) <= 2);

  std::mt19937 rng(47);
  for (int rep = 0; rep < 40; ++rep) {
    std::uniform_int_distribution<int> nd(1, 14);
    Graph g = random_graph(rng, nd(rng), 0.3);
    auto s = structure_from_graph(g);
    auto out = greedy_contraction(s);
    CHECK(out.width == verify_contraction(s, out.seq));
  }
}

TEST_CASE("block composition stays within twice the block width plus two") {
  // Two disjoint bicliques: A_1 = {0,1}, A_2 = {2,3}, B_1 = {4,5},
  // B_2 = {6,7}.
  std::vector<std::pair<int, int>> edges;
  for (int a : {0, 1})
    for (int b : {4, 5}) edges.emplace_back(a, b);
  for (int a : {2, 3})
    for (int b : {6, 7}) edges.emplace_back(a, b);
  std::vector<int> order8(8);
  std::iota(order8.begin(), order8.end(), 0);
  auto s = structure_from_graph(make_graph(8, std::move(edges)), order8);
  std::vector<Block> blocks = {{{0, 1}, {4, 5}}, {{2, 3}, {6, 7}}};
  ContractionSequence twins;  // merge the twin pair on each side
  twins.merges = {{0, 1}, {2, 3}};
  auto composed = compose_block_sequences(s, blocks, {twins, twins});
  CHECK(composed.width <= 2);
  CHECK(verify_contraction(s, composed.seq) == composed.width);

  // Degenerate single-block composition.
  std::vector<std::pair<int, int>> ke;
  for (int a : {0, 1})
    for (int b : {2, 3}) ke.emplace_back(a, b);
  std::vector<int> order4{0, 1, 2, 3};
  auto s1 = structure_from_graph(make_graph(4, std::move(ke)), order4);
  auto one = compose_block_sequences(s1, {{{0, 1}, {2, 3}}}, {twins});
  CHECK(one.width <= 2);

  // Cross-block edges are refused.
  auto sx = structure_from_graph(make_graph(4, {{0, 3}}), order4);
  CHECK_THROWS_AS(compose_block_sequences(sx, {{{0}, {2}}, {{1}, {3}}}, {{}, {}}), Error);

  // Random block instances with exact per-block sequences.
  std::mt19937 rng(53);
  for (int rep = 0; rep < 30; ++rep) {
    std::uniform_int_distribution<int> md(1, 3), szd(1, 3);
    int m = md(rng);
    std::vector<Block> bl(m);
    int next = 0;
    std::vector<std::vector<int>> apart(m), bpart(m);
    for (int i = 0; i < m; ++i)
      for (int c = szd(rng); c-- > 0;) bl[i].a.push_back(next++);
    for (int i = 0; i < m; ++i)
      for (int c = szd(rng); c-- > 0;) bl[i].b.push_back(next++);
    std::bernoulli_distribution coin(0.5);
    std::vector<std::pair<int, int>> be;
    for (int i = 0; i < m; ++i)
      for (int a : bl[i].a)
        for (int b : bl[i].b)
          if (coin(rng)) be.emplace_back(a, b);
    std::vector<int> orderb(next);
    std::iota(orderb.begin(), orderb.end(), 0);
    auto sb = structure_from_graph(make_graph(next, std::move(be)), orderb);
    std::vector<ContractionSequence> seqs;
    int k = 0;
    for (int i = 0; i < m; ++i) {
      std::vector<int> verts = bl[i].a;
      verts.insert(verts.end(), bl[i].b.begin(), bl[i].b.end());
      auto ind = induced_substructure(sb, verts);
      std::vector<int> side(verts.size(), 0);
      for (size_t v = bl[i].a.size(); v < verts.size(); ++v) side[v] = 1;
      ExactTwwOptions opts;
      opts.bipartition = side;
      auto ex = exact_tww(ind.structure, opts);
      k = std::max(k, ex.width);
      seqs.push_back(ex.seq);
    }
    auto out = compose_block_sequences(sb, bl, seqs);
    CHECK(out.width <= 2 * k + 2);
  }
}

TEST_CASE("restricting a sequence to a vertex subset") {
  auto k6 = structure_from_graph(complete_graph(6));
  auto full = fold_all(6);
  std::vector<int> everything{0, 1, 2, 3, 4, 5};
  auto same = restrict_sequence(6, full, everything);
  CHECK(same.merges == full.merges);

  std::vector<int> three{1, 3, 5};
  auto small = restrict_sequence(6, full, three);
  auto sub = induced_substructure(k6, three);
  CHECK(verify_contraction(sub.structure, small) == 0);

  std::mt19937 rng(59);
  for (int rep = 0; rep < 40; ++rep) {
    std::uniform_int_distribution<int> nd(2, 9);
    int n = nd(rng);
    Graph g = random_graph(rng, n, 0.4);
    auto s = structure_from_graph(g);
    auto seq = greedy_contraction(s).seq;
    std::vector<int> verts(n);
    std::iota(verts.begin(), verts.end(), 0);
    std::shuffle(verts.begin(), verts.end(), rng);
    std::uniform_int_distribution<int> kd(1, n);
    verts.resize(kd(rng));
    std::sort(verts.begin(), verts.end());
    auto restricted = restrict_sequence(n, seq, verts);
    auto sub2 = induced_substructure(s, verts);
    verify_contraction(sub2.structure, restricted);  // throws when malformed
  }
}

TEST_CASE("relabeling a sequence follows a permutation") {
  auto p4 = structure_from_graph(path_graph(4));
  ContractionSequence seq;
  seq.merges = {{0, 1}, {0, 2}, {0, 3}};
  // Reverse the path: vertex v becomes 3 - v; the path is preserved.
  std::vector<int> perm{3, 2, 1, 0};
  auto flipped = relabel_sequence(4, seq, perm);
  CHECK(verify_contraction(p4, flipped) == 1);
}
