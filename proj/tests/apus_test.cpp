#include "twwgeo/apus.hpp"

#include <algorithm>
#include <random>

#include "doctest.h"
#include "twwgeo/error.hpp"

using namespace twwgeo;

namespace {

Segment hor(int id, long long x, long long y, long long len) {
  return {id, SegDir::H, x, y, len};
}
Segment ver(int id, long long x, long long y, long long len) {
  return {id, SegDir::V, x, y, len};
}

SegmentFamily random_unit(std::mt19937& rng, int max_m, int span) {
  std::uniform_int_distribution<int> ed(1, 4), md(0, max_m), dd(0, 1);
  long long U = ed(rng);
  int m = md(rng);
  std::uniform_int_distribution<long long> cd(0, span * U);
  std::vector<Segment> segs;
  for (int i = 0; i < m; ++i)
    segs.push_back({i, dd(rng) ? SegDir::H : SegDir::V, cd(rng), cd(rng), U});
  return make_segment_family(U, 1, std::move(segs));
}

template <typename F>
ErrorCode thrown_code(F&& body) {
  try {
    body();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::BadFormat;
}

}  // namespace

TEST_CASE("family validation and unit lengths") {
  auto f = make_segment_family(2, 1, {hor(0, 0, 1, 2), ver(1, 1, 0, 2)});
  CHECK(is_unit_family(f));
  CHECK(!is_unit_family(make_segment_family(2, 1, {hor(0, 0, 0, 1)})));
  CHECK_THROWS_AS(make_segment_family(0, 1, {}), Error);
  CHECK_THROWS_AS(make_segment_family(2, 1, {hor(0, -1, 0, 2)}), Error);
  CHECK_THROWS_AS(make_segment_family(2, 1, {hor(0, 0, 0, 3)}), Error);   // longer than max_len
  CHECK_THROWS_AS(make_segment_family(2, 1, {hor(0, 0, 0, 0)}), Error);   // empty segment
  CHECK_THROWS_AS(make_segment_family(2, 1, {hor(0, 0, 0, 2), ver(0, 1, 1, 2)}), Error);
}

TEST_CASE("crossing and collinear-overlap intersection") {
  // Hor(0, 1/2) and Ver(1/2, 0) at eta 1/2 cross at (1/2, 1/2).
  Segment h = hor(0, 0, 1, 2), v = ver(1, 1, 0, 2);
  CHECK(segments_intersect(h, v));
  CHECK(segments_intersect(v, h));
  Graph g = apus_intersection_graph(make_segment_family(2, 1, {h, v}));
  CHECK(g.has_edge(0, 1));

  // Collinear horizontals overlap only under the degenerate convention.
  Segment h2 = hor(1, 1, 0, 2), h1 = hor(0, 0, 0, 2);
  CHECK(!segments_intersect(h1, h2));
  CHECK(segments_intersect(h1, h2, true));
  CHECK(!segments_intersect(hor(0, 0, 0, 2), hor(1, 3, 0, 2), true));  // gap of one eta
  CHECK(segments_intersect(ver(0, 1, 0, 2), ver(1, 1, 2, 2), true));
  CHECK(!segments_intersect(ver(0, 1, 0, 2), ver(1, 2, 0, 2), true));  // different lines
  auto gd = apus_intersection_graph(make_segment_family(2, 1, {h1, h2}), true);
  CHECK(gd.has_edge(0, 1));
  CHECK(!apus_intersection_graph(make_segment_family(2, 1, {h1, h2})).has_edge(0, 1));
}

TEST_CASE("edges split by square and quadrant") {
  // Hor(1/2, 1/2) crosses Ver(6/5, 3/10) inside square (1, 0); the
  // horizontal's endpoint sits one square to the left, the vertical's in the
  // same square, so the pair lands in the top-left class of (1, 0).
  auto f = make_segment_family(10, 1, {hor(0, 5, 5, 10), ver(1, 12, 3, 10)});
  auto cells = split_squares(f);
  SquareKey key{1, 0, Quadrant::TopLeft, std::nullopt};
  REQUIRE(cells.count(key));
  CHECK(cells[key].edges == std::vector<std::pair<int, int>>{{0, 1}});
  for (const auto& [k, cell] : cells)
    if (!(k == key)) CHECK(cell.edges.empty());

  // A family with all endpoints inside [0,1)^2 keeps every edge in the
  // top-right class of square (0, 0).
  auto box = make_segment_family(4, 1, {hor(0, 0, 1, 4), hor(1, 0, 3, 4), ver(2, 1, 0, 4),
                                        ver(3, 3, 0, 4)});
  auto bcells = split_squares(box);
  SquareKey tr{0, 0, Quadrant::TopRight, std::nullopt};
  size_t edge_count = apus_intersection_graph(box).edges.size();
  CHECK(edge_count == 4);
  REQUIRE(bcells.count(tr));
  CHECK(bcells[tr].edges.size() == edge_count);
  CHECK(bcells[tr].segment_ids == std::vector<int>{0, 1, 2, 3});

  // Each crossing pair is assigned to exactly one class.
  std::mt19937 rng(11);
  for (int rep = 0; rep < 200; ++rep) {
    auto rf = random_unit(rng, 12, 5);
    auto rcells = split_squares(rf);
    std::map<std::pair<int, int>, int> seen;
    for (const auto& [k, cell] : rcells)
      for (auto e : cell.edges) seen[e] += 1;
    size_t expect = 0;
    for (size_t i = 0; i < rf.segments.size(); ++i)
      for (size_t j = i + 1; j < rf.segments.size(); ++j)
        if (segments_intersect(rf.segments[i], rf.segments[j])) ++expect;
    CHECK(seen.size() == expect);
    for (const auto& [e, c] : seen) CHECK(c == 1);
  }
}

TEST_CASE("segment order is direction, square, endpoint") {
  // Same square: endpoint order decides.  Hor(1/10, 9/10) before Hor(2/10, 0).
  auto f = make_segment_family(10, 1, {hor(4, 2, 0, 10), hor(7, 1, 9, 10)});
  CHECK(seg_order(f) == std::vector<int>{7, 4});

  // Square order outranks endpoint order, and horizontals precede verticals.
  auto g = make_segment_family(10, 1,
                               {ver(0, 0, 0, 10), hor(1, 0, 10, 10), hor(2, 9, 9, 10)});
  CHECK(seg_order(g) == std::vector<int>{2, 1, 0});

  // In a mixed-length family the length layer comes right after direction.
  auto m = make_segment_family(2, 2, {hor(5, 3, 0, 2), hor(6, 0, 0, 4), ver(7, 0, 0, 2)});
  CHECK(seg_order(m) == std::vector<int>{5, 6, 7});

  bool dup = false;
  auto d = make_segment_family(2, 1, {hor(3, 0, 0, 2), hor(1, 0, 0, 2)});
  CHECK(seg_order(d, &dup) == std::vector<int>{1, 3});
  CHECK(dup);
  seg_order(f, &dup);
  CHECK(!dup);
}

TEST_CASE("minimization slides segments to their pinned fixpoint") {
  // A lone segment drifts all the way to the origin.
  auto lone = minimize_segments(make_segment_family(1, 1, {hor(0, 3, 2, 1)}));
  CHECK(lone.segments[0].x == 0);
  CHECK(lone.segments[0].y == 0);

  // Hor(1, 1) and Ver(3/2, 1/2) at eta 1/2 both end at the origin, still
  // crossing.
  auto pair = minimize_segments(make_segment_family(2, 1, {hor(0, 2, 2, 2), ver(1, 3, 1, 2)}));
  for (const auto& s : pair.segments) {
    CHECK(s.x == 0);
    CHECK(s.y == 0);
  }
  CHECK(segments_intersect(pair.segments[0], pair.segments[1]));

  // The k = 3 lattice family contracts onto the unit lattice: verticals a_i
  // at (i-1, 0), horizontals b_{i,j} at (i-1, j-1), verticals c_j at (2, j-1).
  auto t3 = minimize_segments(gen_Tk_apus(3));
  for (int i = 0; i < 3; ++i) {
    CHECK(t3.segments[i].x == i);
    CHECK(t3.segments[i].y == 0);
    CHECK(t3.segments[12 + i].x == 2);
    CHECK(t3.segments[12 + i].y == i);
  }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      CHECK(t3.segments[3 + 3 * i + j].x == i);
      CHECK(t3.segments[3 + 3 * i + j].y == j);
    }

  // Random corpus: the graph survives, the result is a fixpoint, and every
  // remaining unit move would change the graph (checked by recomputation).
  std::mt19937 rng(23);
  for (int rep = 0; rep < 300; ++rep) {
    auto f = random_unit(rng, 12, 5);
    auto m = minimize_segments(f);
    REQUIRE(apus_intersection_graph(f).edges == apus_intersection_graph(m).edges);
    auto m2 = minimize_segments(m);
    for (size_t i = 0; i < m.segments.size(); ++i) {
      CHECK(m.segments[i].x == m2.segments[i].x);
      CHECK(m.segments[i].y == m2.segments[i].y);
    }
    auto base = apus_intersection_graph(m).edges;
    for (size_t i = 0; i < m.segments.size(); ++i)
      for (int d = 0; d < 2; ++d) {
        auto probe = m;
        auto& s = probe.segments[i];
        if (d == 0 ? s.x == 0 : s.y == 0) continue;
        (d == 0 ? s.x : s.y) -= 1;
        CHECK(apus_intersection_graph(probe).edges != base);
      }
  }
}

TEST_CASE("local endpoint matrices") {
  auto f = make_segment_family(4, 1, {hor(0, 1, 2, 4), ver(1, 3, 1, 4)});
  auto pts = local_endpoint_matrix(f, {0, 0, Quadrant::TopRight, std::nullopt});
  CHECK(pts.points == std::vector<std::pair<long long, long long>>{{1, 2}, {3, 1}});
  CHECK(thrown_code([&] { local_endpoint_matrix(f, {5, 5, Quadrant::TopRight, std::nullopt}); }) ==
        ErrorCode::EmptyCell);

  // The raw k = 3 lattice family keeps its 3 x 3 core in one cell.
  auto t3 = gen_Tk_apus(3);
  auto core = local_endpoint_matrix(t3, {1, 1, Quadrant::TopRight, std::nullopt});
  CHECK(core.points.size() == 12);  // nine lattice points and three tails
  CHECK(max_grid(core).t == 3);
}

TEST_CASE("transversal extraction from lattice cells") {
  for (int k = 1; k <= 4; ++k) {
    auto fm = minimize_segments(gen_Tk_apus(k));
    SquareKey key{0, 0, Quadrant::TopRight, std::nullopt};
    auto mg = max_grid(local_endpoint_matrix(fm, key));
    REQUIRE(mg.t == k);
    auto w = extract_transversal_apus(fm, key, mg.witness);
    CHECK(w.k == k);
    CHECK(verify_transversal(apus_intersection_graph(fm), w));
  }

  // Extraction demands a minimized family.
  auto raw = gen_Tk_apus(3);
  SquareKey key{1, 1, Quadrant::TopRight, std::nullopt};
  auto mg = max_grid(local_endpoint_matrix(raw, key));
  REQUIRE(mg.t >= 3);
  CHECK(thrown_code([&] { extract_transversal_apus(raw, key, mg.witness); }) ==
        ErrorCode::NotMinimized);

  // A witness that is not a grid of the cell is rejected.
  auto fm = minimize_segments(gen_Tk_apus(2));
  SquareKey k00{0, 0, Quadrant::TopRight, std::nullopt};
  auto good = max_grid(local_endpoint_matrix(fm, k00)).witness;
  auto bad = good;
  bad.cells[0][0] = {99, 99};
  CHECK(thrown_code([&] { extract_transversal_apus(fm, k00, bad); }) == ErrorCode::InvalidWitness);
}

TEST_CASE("dichotomy engages exactly one verified branch") {
  // A staircase of crossing pairs is grid-free; the contraction branch wins
  // with a small measured width.
  std::vector<Segment> stair;
  for (int i = 1; i <= 10; ++i) stair.push_back(hor(i - 1, 2 * i, 2 * i, 4));
  for (int i = 1; i <= 10; ++i) stair.push_back(ver(9 + i, 2 * i + 1, 2 * i - 1, 4));
  auto f = make_segment_family(4, 1, std::move(stair));
  auto r = analyze_apus(f, 1);
  REQUIRE(r.contraction.has_value());
  CHECK(!r.transversal.has_value());
  CHECK(r.contraction->seq.merges.size() == 19);
  CHECK(r.contraction->verified_width <= 2);

  // A large lattice family hits the cell-grid gate and yields a verified
  // middle-layer witness.
  auto big = analyze_apus(gen_Tk_apus(8), 1);
  REQUIRE(big.transversal.has_value());
  CHECK(!big.contraction.has_value());
  CHECK(big.transversal->k == 8);
  CHECK(verify_transversal(apus_intersection_graph(minimize_segments(gen_Tk_apus(8))),
                           *big.transversal));

  // Below the 4k + 2 gate the same shape contracts instead.
  auto small = analyze_apus(gen_Tk_apus(5), 1);
  REQUIRE(small.contraction.has_value());
  CHECK(small.contraction->verified_width <= 6);

  auto empty = analyze_apus(make_segment_family(1, 1, {}), 3);
  REQUIRE(empty.contraction.has_value());
  CHECK(empty.contraction->seq.merges.empty());
  CHECK(empty.contraction->verified_width == 0);

  CHECK_THROWS_AS(analyze_apus(f, 0), Error);

  // Random unit families: exactly one branch, and an engaged contraction is a
  // complete verified sequence.
  std::mt19937 rng(31);
  for (int rep = 0; rep < 100; ++rep) {
    auto rf = random_unit(rng, 14, 4);
    auto rr = analyze_apus(rf, 2);
    CHECK(rr.contraction.has_value() != rr.transversal.has_value());
    if (rr.contraction && !rf.segments.empty())
      CHECK(rr.contraction->seq.merges.size() == rf.segments.size() - 1);
  }
}

TEST_CASE("lattice family generator and its canonical witness") {
  auto t1 = gen_Tk_apus(1);
  CHECK(t1.segments.size() == 3);
  auto g1 = apus_intersection_graph(t1);
  CHECK(g1.edges == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});  // a path

  auto t3 = gen_Tk_apus(3);
  CHECK(t3.segments.size() == 15);
  auto g3 = apus_intersection_graph(t3);
  int ab = 0, bc = 0;
  for (auto [u, v] : g3.edges) {
    if (u < 3) ++ab;            // a_i to some b
    else if (v >= 12) ++bc;     // some b to c_j
    else FAIL("unexpected edge class");
  }
  CHECK(ab == 18);
  CHECK(bc == 18);
  CHECK(verify_transversal(g3, canonical_Tk_apus_witness(3)));
  CHECK(verify_transversal(apus_intersection_graph(gen_Tk_apus(4)), canonical_Tk_apus_witness(4)));
  CHECK_THROWS_AS(gen_Tk_apus(0), Error);
}

TEST_CASE("collinear path realization of the permutation family") {
  auto check_equal = [](std::vector<int> sigma, int ell) {
    auto res = gen_Hsigma_apus_degenerate(sigma, ell);
    auto realized = apus_intersection_graph(res.family, true);
    auto target = gen_Hsigma(sigma, ell);
    REQUIRE(realized.n == target.n);
    CHECK(realized.edges == target.edges);
    CHECK(graphs_isomorphic(realized, target));
    REQUIRE(res.vertex_ids.size() == (size_t)target.n);
    for (int i = 0; i < target.n; ++i) CHECK(res.vertex_ids[i] == i);
  };

  // One path of length two: five segments, three collinear horizontals.
  auto one = gen_Hsigma_apus_degenerate({0}, 2);
  CHECK(one.family.segments.size() == 5);
  int hcount = 0;
  long long hy = -1;
  for (const auto& s : one.family.segments)
    if (s.dir == SegDir::H) {
      ++hcount;
      if (hy < 0) hy = s.y;
      CHECK(s.y == hy);
    }
  CHECK(hcount == 3);
  check_equal({0}, 2);

  check_equal({1, 0}, 3);
  auto swapped = gen_Hsigma_apus_degenerate({1, 0}, 3);
  CHECK(swapped.family.segments.size() == 12);
  check_equal({0, 1, 2}, 4);
  check_equal({2, 0, 3, 1}, 5);

  CHECK_THROWS_AS(gen_Hsigma_apus_degenerate({0}, 1), Error);
  CHECK_THROWS_AS(gen_Hsigma_apus_degenerate({}, 3), Error);
  CHECK_THROWS_AS(gen_Hsigma_apus_degenerate({0, 0}, 3), Error);
}
