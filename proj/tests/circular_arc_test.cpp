#include "twwgeo/circular_arc.hpp"

#include <random>

#include "doctest.h"
#include "twwgeo/error.hpp"

using namespace twwgeo;

namespace {

ArcFamily family(int n, std::vector<std::pair<int, int>> arcs) {
  std::vector<Arc> list;
  int id = 0;
  for (auto [l, r] : arcs) list.push_back({id++, l, r});
  return make_arc_family(n, std::move(list));
}

ArcFamily random_family(std::mt19937& rng, int max_n, int max_arcs) {
  std::uniform_int_distribution<int> nd(1, max_n);
  int n = nd(rng);
  std::uniform_int_distribution<int> md(0, max_arcs);
  std::uniform_int_distribution<int> pd(1, n);
  int m = md(rng);
  std::vector<Arc> arcs;
  for (int i = 0; i < m; ++i) arcs.push_back({i, pd(rng), pd(rng)});
  return make_arc_family(n, std::move(arcs));
}

}  // namespace

TEST_CASE("arc membership and intersection") {
  Graph g = arc_intersection_graph(family(6, {{1, 3}, {3, 5}}));
  CHECK(g.has_edge(0, 1));
  CHECK(!arc_intersection_graph(family(6, {{1, 2}, {4, 5}})).has_edge(0, 1));
  // [5,2] wraps around through 6 and 1.
  CHECK(arc_intersection_graph(family(6, {{5, 2}, {1, 1}})).has_edge(0, 1));
  Arc whole{0, 3, 2};  // covers the full circle when n = 4
  CHECK(arc_contains(4, whole, 2));
  CHECK(arc_contains(4, whole, 3));
  CHECK(arcs_intersect(4, whole, Arc{1, 1, 1}));
}

TEST_CASE("minimization follows the deterministic shrink rule") {
  ArcFamily lone = minimize_arcs(family(5, {{1, 4}}));
  CHECK(lone.arcs[0].left == 1);
  CHECK(lone.arcs[0].right == 1);

  ArcFamily two = minimize_arcs(family(4, {{1, 4}, {2, 3}}));
  CHECK(two.arcs[0].left == two.arcs[0].right);
  CHECK(two.arcs[1].left == two.arcs[1].right);
  CHECK(two.arcs[0].left == two.arcs[1].left);

  // Graph preservation, idempotence and the single-point witness property on
  // a random corpus.
  std::mt19937 rng(2024);
  for (int rep = 0; rep < 200; ++rep) {
    ArcFamily f = random_family(rng, 20, 10);
    ArcFamily mf = minimize_arcs(f);
    REQUIRE(mf.arcs.size() == f.arcs.size());
    CHECK(arc_intersection_graph(mf).edges == arc_intersection_graph(f).edges);
    ArcFamily again = minimize_arcs(mf);
    for (size_t i = 0; i < mf.arcs.size(); ++i) {
      CHECK(again.arcs[i].left == mf.arcs[i].left);
      CHECK(again.arcs[i].right == mf.arcs[i].right);
    }
    // Every non-degenerate arc meets some arc exactly in each endpoint.
    for (const Arc& a : mf.arcs) {
      if (a.left == a.right) continue;
      bool left_pinned = false, right_pinned = false;
      for (const Arc& b : mf.arcs) {
        if (b.id == a.id) continue;
        int shared = 0;
        int only = 0;
        for (int p = 1; p <= mf.n; ++p)
          if (arc_contains(mf.n, a, p) && arc_contains(mf.n, b, p)) {
            ++shared;
            only = p;
          }
        if (shared == 1 && only == a.left) left_pinned = true;
        if (shared == 1 && only == a.right) right_pinned = true;
      }
      CHECK(left_pinned);
      CHECK(right_pinned);
    }
  }
}

TEST_CASE("endpoint matrix") {
  bool dup = true;
  PointSet ps = arc_endpoint_matrix(family(3, {{1, 3}, {2, 2}}), &dup);
  CHECK(ps.points == std::vector<std::pair<long long, long long>>{{1, 3}, {2, 2}});
  CHECK(!dup);
  arc_endpoint_matrix(family(3, {{1, 3}, {1, 3}}), &dup);
  CHECK(dup);
  CHECK(arc_endpoint_matrix(family(4, {})).points.empty());

  PointSet tk = arc_endpoint_matrix(minimize_arcs(gen_Tk_arcs(3)));
  CHECK(max_grid(tk).t >= 3);
}

TEST_CASE("incidence structure layout") {
  OrderedBinaryStructure s = arc_incidence_structure(family(5, {{2, 4}}));
  CHECK(s.n == 6);
  REQUIRE(s.relations.size() == 2);
  CHECK(s.relations[0].name == "inc");
  CHECK(s.relations[0].pairs ==
        std::vector<std::pair<int, int>>{{1, 5}, {3, 5}, {5, 1}, {5, 3}});
  CHECK(s.relations[1].pairs.empty());

  OrderedBinaryStructure pt = arc_incidence_structure(family(5, {{3, 3}}));
  CHECK(pt.relations[0].pairs == std::vector<std::pair<int, int>>{{2, 5}, {5, 2}});

  OrderedBinaryStructure wrapped = arc_incidence_structure(family(5, {{4, 2}}));
  CHECK(wrapped.relations[1].pairs == std::vector<std::pair<int, int>>{{5, 5}});

  OrderedBinaryStructure bare = arc_incidence_structure(family(4, {}));
  CHECK(bare.n == 4);
  CHECK(bare.relations[0].pairs.empty());

  // Arc vertices appear in lexicographic (left, right) order.
  ArcFamily f = family(6, {{4, 5}, {1, 2}, {1, 1}});
  CHECK(arc_incidence_positions(f) == std::vector<int>{2, 1, 0});
}

TEST_CASE("transversal extraction from an endpoint grid") {
  ArcFamily f = minimize_arcs(gen_Tk_arcs(6));
  PointSet ps = arc_endpoint_matrix(f);
  MaxGridResult mg = max_grid(ps);
  REQUIRE(mg.t >= 6);
  TransversalWitness w = extract_transversal_arcs(f, mg.witness, 1);
  CHECK(w.k == 1);
  CHECK(verify_transversal(arc_intersection_graph(f), w));

  CHECK_THROWS_AS(extract_transversal_arcs(f, mg.witness, 2), Error);  // grid too small

  // The 6x6 lattice family is a perfect grid but is not minimized: the
  // probe arcs have no single-point companions.
  std::vector<Arc> lattice;
  int id = 0;
  for (int i = 1; i <= 6; ++i)
    for (int j = 1; j <= 6; ++j) lattice.push_back({id++, i, 6 + j});
  ArcFamily raw = make_arc_family(13, std::move(lattice));
  MaxGridResult rawg = max_grid(arc_endpoint_matrix(raw));
  REQUIRE(rawg.t >= 6);
  CHECK_THROWS_AS(extract_transversal_arcs(raw, rawg.witness, 1), Error);
}

TEST_CASE("dichotomy pipeline") {
  // Proper-interval-like family: no big grid, contraction branch.
  std::vector<Arc> chain;
  for (int i = 1; i <= 20; ++i) chain.push_back({i - 1, i, i + 2});
  DichotomyResult r = analyze_arcs(make_arc_family(30, std::move(chain)), 2);
  REQUIRE(r.contraction.has_value());
  CHECK(!r.transversal.has_value());
  CHECK(r.contraction->verified_width <= 4);

  DichotomyResult big = analyze_arcs(gen_Tk_arcs(8), 1);
  REQUIRE(big.transversal.has_value());
  CHECK(big.transversal->k == 1);

  DichotomyResult tk3 = analyze_arcs(gen_Tk_arcs(3), 1);
  REQUIRE(tk3.transversal.has_value());

  DichotomyResult empty = analyze_arcs(make_arc_family(5, {}), 1);
  REQUIRE(empty.contraction.has_value());
  CHECK(empty.contraction->verified_width == 0);
  CHECK(empty.contraction->seq.merges.empty());
}

TEST_CASE("transversal arc generator") {
  ArcFamily k1 = gen_Tk_arcs(1);
  Graph g1 = arc_intersection_graph(k1);
  CHECK(g1.n == 3);
  CHECK(g1.edges == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});

  ArcFamily k3 = gen_Tk_arcs(3);
  CHECK(k3.arcs.size() == 15);
  Graph g3 = arc_intersection_graph(k3);
  int ab = 0, bc = 0;
  for (int a = 0; a < 3; ++a)
    for (int b = 3; b < 12; ++b) ab += g3.has_edge(a, b);
  for (int b = 3; b < 12; ++b)
    for (int c = 12; c < 15; ++c) bc += g3.has_edge(b, c);
  CHECK(ab == 18);
  CHECK(bc == 18);
  CHECK(verify_transversal(g3, canonical_Tk_arcs_witness(3)));

  CHECK(verify_transversal(arc_intersection_graph(gen_Tk_arcs(5)),
                           canonical_Tk_arcs_witness(5)));
}
