#include "twwgeo/families.hpp"

#include <algorithm>

#include "doctest.h"
#include "twwgeo/error.hpp"

using namespace twwgeo;

TEST_CASE("transversal pattern graph and witness") {
  Graph t3 = gen_transversal_graph(3);
  CHECK(t3.n == 15);
  CHECK(t3.edges.size() == 36);
  auto w = canonical_transversal_witness(3);
  CHECK(verify_transversal(t3, w));

  // a_1 sees every b, a_3 sees only the last row.
  CHECK(t3.has_edge(0, 3));
  CHECK(t3.has_edge(0, 11));
  CHECK(!t3.has_edge(2, 3));
  CHECK(t3.has_edge(2, 9));

  // Remove one mandated edge: the witness must now fail.
  Graph broken = t3;
  broken.edges.erase(std::remove(broken.edges.begin(), broken.edges.end(),
                                 std::make_pair(0, 3)),
                     broken.edges.end());
  CHECK(!verify_transversal(broken, w));

  // Extra A-B edge in a forbidden slot also fails.
  Graph extra = t3;
  extra.edges.emplace_back(2, 3);
  extra = make_graph(extra.n, extra.edges);
  CHECK(!verify_transversal(extra, w));

  TransversalWitness bad = w;
  bad.A[0] = bad.C[0];
  CHECK_THROWS_AS(verify_transversal(t3, bad), Error);
}

TEST_CASE("half-graph and H_sigma generators") {
  Graph h4 = gen_halfgraph(4);
  CHECK(h4.n == 8);
  CHECK(h4.edges.size() == 10);
  CHECK(h4.has_edge(0, 4));
  CHECK(h4.has_edge(3, 7));
  CHECK(!h4.has_edge(3, 4));

  Graph hs = gen_Hsigma({0, 1}, 3);
  CHECK(hs.n == 12);
  CHECK(hs.edges.size() == 12);
  // Path from b_1 (id 2) through internals 8,9 into c_1 (id 4).
  CHECK(hs.has_edge(2, 8));
  CHECK(hs.has_edge(8, 9));
  CHECK(hs.has_edge(9, 4));
  CHECK(!hs.has_edge(2, 4));

  // ell = 1 joins b_i directly to c_{sigma(i)}.
  Graph hs1 = gen_Hsigma({1, 0}, 1);
  CHECK(hs1.n == 8);
  CHECK(hs1.has_edge(2, 5));  // b_1 -> c_2
  CHECK(hs1.has_edge(3, 4));  // b_2 -> c_1

  CHECK_THROWS_AS(gen_Hsigma({0, 0}, 2), Error);
  CHECK_THROWS_AS(gen_Hsigma({0, 1}, 0), Error);
}

TEST_CASE("universal permutation") {
  CHECK(universal_permutation(2) == std::vector<int>{0, 2, 1, 3});
  CHECK(universal_permutation(3) == std::vector<int>{0, 3, 6, 1, 4, 7, 2, 5, 8});
}

TEST_CASE("subdivided complete graphs") {
  Graph b = gen_subdivided_complete(2, 2, true);
  CHECK(b.n == 8);
  CHECK(b.edges.size() == 8);
  // Hubs x: 0,1 and y: 2,3; each x-y pair joined through one internal.
  for (int v = 4; v < 8; ++v) {
    int deg = 0;
    for (auto [e1, e2] : b.edges) deg += (e1 == v) + (e2 == v);
    CHECK(deg == 2);
  }

  Graph k4 = gen_subdivided_complete(4, 1, false);
  CHECK(k4.n == 4);
  CHECK(k4.edges.size() == 6);

  Graph c = gen_subdivided_complete(3, 3, false);
  CHECK(c.n == 3 + 3 * 2);
  CHECK(c.edges.size() == 9);
}

TEST_CASE("biclique extraction from the universal-permutation gadget") {
  for (int n = 2; n <= 3; ++n)
    for (int ell = 1; ell <= 2; ++ell) {
      Graph g = gen_Hsigma(universal_permutation(n), ell);
      Graph out = extract_biclique_from_Hsigma(g, n);
      CHECK(out.n == 2 * n + n * n * (ell + 1));
      CHECK(graphs_isomorphic(out, gen_subdivided_complete(n, ell + 2, true)));
    }
  // A graph of the wrong shape is rejected.
  CHECK_THROWS_AS(extract_biclique_from_Hsigma(gen_halfgraph(3), 2), Error);
}

TEST_CASE("bipartite encoding round trip") {
  // Path x0 - y0 - x1.
  Graph p3 = make_graph(3, {{0, 1}, {1, 2}});
  Graph echo = encode_bipartite_in_transversal(p3, {0, 1, 0});
  CHECK(echo.n == p3.n);
  CHECK(echo.edges == p3.edges);

  // C4 with an isolated vertex on each side.
  Graph c4 = make_graph(6, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
  Graph echo2 = encode_bipartite_in_transversal(c4, {0, 0, 1, 1, 0, 1});
  CHECK(echo2.edges == c4.edges);

  Graph empty = make_graph(0, {});
  CHECK(encode_bipartite_in_transversal(empty, {}).n == 0);

  Graph tri = make_graph(3, {{0, 1}, {1, 2}, {0, 2}});
  CHECK_THROWS_AS(encode_bipartite_in_transversal(tri, {0, 1, 0}), Error);
}

TEST_CASE("edge-complement gadget") {
  // Single edge: three mutually non-adjacent vertices.
  Graph k2 = make_graph(2, {{0, 1}});
  Graph g1 = gen_Gbullet(k2, {0, 1});
  CHECK(g1.n == 3);
  CHECK(g1.edges.empty());

  // One edge u1-v1 plus isolated u2: E-vertex sees u2 only, and U is a clique.
  Graph h = make_graph(3, {{0, 2}});
  Graph g2 = gen_Gbullet(h, {0, 0, 1});
  CHECK(g2.n == 4);
  CHECK(g2.edges == std::vector<std::pair<int, int>>{{0, 1}, {1, 3}});
}

TEST_CASE("visibility graphs") {
  Terrain zigzag;
  zigzag.points = {{0, 0}, {1, 1}, {2, 0}, {3, 1}};
  Graph g = visibility_graph(zigzag);
  CHECK(g.edges == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {1, 3}, {2, 3}});

  // Collinear points do not block.
  Terrain line;
  line.points = {{0, 0}, {1, 1}, {2, 2}};
  CHECK(visibility_graph(line).edges.size() == 3);

  Terrain bad;
  bad.points = {{0, 0}, {0, 1}};
  CHECK_THROWS_AS(visibility_graph(bad), Error);
}

TEST_CASE("terrain generator realizes the horizon pattern") {
  std::vector<int> sigma = {1, 0};
  Terrain t = gen_terrain(sigma, 2);
  CHECK(terrain_structure_ok(t, sigma, 2));
  TerrainRoles roles = classify_terrain(t, 2);
  CHECK(roles.a.size() == 4);
  CHECK(roles.b.size() == 2);
  CHECK(roles.c.size() == 2);
  Graph g = visibility_graph(t);
  // b_1 must see c_2 but not c_1; b_2 sees both.
  CHECK(!g.has_edge(roles.b[0], roles.c[0]));
  CHECK(g.has_edge(roles.b[0], roles.c[1]));
  CHECK(g.has_edge(roles.b[1], roles.c[0]));
  CHECK(g.has_edge(roles.b[1], roles.c[1]));
  // The wrong permutation is rejected with a reason.
  std::string why;
  CHECK(!terrain_structure_ok(t, {0, 1}, 2, &why));
  CHECK(!why.empty());

  Terrain t1 = gen_terrain({0}, 1);
  CHECK(terrain_structure_ok(t1, {0}, 1));
}

TEST_CASE("graph isomorphism") {
  Graph p4 = make_graph(4, {{0, 1}, {1, 2}, {2, 3}});
  Graph p4b = make_graph(4, {{2, 0}, {0, 3}, {3, 1}});
  CHECK(graphs_isomorphic(p4, p4b));

  Graph star = make_graph(4, {{0, 1}, {0, 2}, {0, 3}});
  CHECK(!graphs_isomorphic(p4, star));

  // Both 2-regular on six vertices: colour refinement cannot separate them,
  // the backtracking phase must.
  Graph c6 = make_graph(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}});
  Graph two_triangles = make_graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
  CHECK(!graphs_isomorphic(c6, two_triangles));
  Graph c6b = make_graph(6, {{0, 2}, {2, 4}, {4, 1}, {1, 3}, {3, 5}, {5, 0}});
  CHECK(graphs_isomorphic(c6, c6b));
}
