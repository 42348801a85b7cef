#include "doctest.h"
#include "twwgeo/structures.hpp"
#include "twwgeo/tww.hpp"

using namespace twwgeo;

namespace {

Graph path_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return make_graph(n, e);
}

}  // namespace

TEST_CASE("make_graph normalizes and validates") {
  Graph g = make_graph(3, {{2, 0}, {0, 2}, {1, 2}});
  CHECK(g.edges == std::vector<std::pair<int, int>>{{0, 2}, {1, 2}});
  CHECK(g.has_edge(2, 0));
  CHECK(!g.has_edge(0, 1));
  CHECK_THROWS_AS(make_graph(2, {{0, 0}}), Error);
  CHECK_THROWS_AS(make_graph(2, {{0, 2}}), Error);
}

TEST_CASE("homogeneous pairs in a path") {
  // P_4 as 0-1-2-3.  {0,2} vs {1}: vertex 1 is adjacent to both 0 and 2,
  // so the pair is homogeneous; {0,2} vs {3}: 3 is adjacent to 2 only.
  Graph g = path_graph(4);
  auto s = structure_from_graph(g);
  CHECK(is_homogeneous(s, {0, 2}, {1}));
  CHECK(!is_homogeneous(s, {0, 2}, {3}));
  VertexPartition p;
  p.parts = {{0, 2}, {1}, {3}};
  CHECK(error_degree(s, p) == 1);
}

TEST_CASE("order interleaving breaks homogeneity") {
  Graph g = make_graph(4, {});
  auto s = structure_from_graph(g);
  s.order = std::vector<int>{0, 1, 2, 3};
  CHECK(!is_homogeneous(s, {0, 2}, {1}));
  CHECK(is_homogeneous(s, {0, 1}, {2, 3}));
}

TEST_CASE("induced substructure relabels by increasing id") {
  Graph g = path_graph(5);
  auto s = structure_from_graph(g);
  auto ind = induced_substructure(s, {4, 0, 1});
  CHECK(ind.original_ids == std::vector<int>{0, 1, 4});
  auto gg = graph_from_structure(ind.structure);
  CHECK(gg.edges == std::vector<std::pair<int, int>>{{0, 1}});
}

TEST_CASE("contraction verification on P_4") {
  Graph g = path_graph(4);
  auto s = structure_from_graph(g);
  ContractionSequence seq;
  seq.merges = {{1, 3}, {1, 2}, {0, 1}};
  ContractionTrace trace;
  int w = verify_contraction(s, seq, &trace);
  CHECK(w == 1);
  CHECK(trace.step_error_degrees.size() == 4);
  ContractionSequence bad;
  bad.merges = {{0, 1}};
  CHECK_THROWS_AS(verify_contraction(s, bad, nullptr), Error);
}

TEST_CASE("exact twin-width of small graphs") {
  // Paths are cographs plus one obstruction short: tww(P_4) = 1, and any
  // complete or empty graph has twin-width 0.
  auto p4 = structure_from_graph(path_graph(4));
  auto r = exact_tww(p4, {});
  CHECK(r.width == 1);
  CHECK(verify_contraction(p4, r.seq) == 1);

  Graph k4 = make_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  CHECK(exact_tww(structure_from_graph(k4), {}).width == 0);

  Graph e5 = make_graph(5, {});
  CHECK(exact_tww(structure_from_graph(e5), {}).width == 0);
}
