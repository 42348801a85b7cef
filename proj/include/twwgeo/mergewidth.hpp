#pragma once

#include <utility>
#include <vector>

#include "twwgeo/structures.hpp"

namespace twwgeo {

/// Sentinel radius meaning "unbounded": distance is finite iff the vertices
/// share a connected component of the resolved graph.
inline constexpr int kRadiusInf = -1;

enum class OpKind { Merge, ResolvePos, ResolveNeg };

/// One step of a construction sequence.  `a` and `b` are canonical part ids
/// (a part is named by its smallest member).  Merges require a != b; resolves
/// allow a == b, which resolves the pairs inside the part.
struct ConstructionOp {
  OpKind kind;
  int a = 0;
  int b = 0;
};

struct ConstructionSequence {
  std::vector<ConstructionOp> ops;
};

/// Replays `seq` on the vertex set of `g` and returns its radius-`radius`
/// width: the maximum, over all intermediate states and vertices v, of the
/// number of parts at resolved-graph distance <= radius from v.  Distance from
/// v to a part is the minimum over its members in the graph whose edges are
/// all resolved pairs (both positive and negative); the part containing v is
/// always at distance 0.  Pass kRadiusInf for the unbounded radius.
///
/// The sequence must end with a single part, every pair resolved, and the
/// positively resolved pairs equal to E(g) exactly.
int verify_construction(const Graph& g, const ConstructionSequence& seq, int radius);

/// Construction sequence for the half-graph HG_n (vertices a_1..a_n = 0..n-1,
/// b_1..b_n = n..2n-1, edges a_i b_j iff i <= j) with radius-unbounded width
/// at most 3 (exactly 1 when n = 1).
ConstructionSequence build_halfgraph_construction(int n);

struct AugmentResult {
  Graph graph;
  ConstructionSequence seq;
};

/// Adds, for every pair (x_i, y_i), a fresh path of length `ell` from x_i to
/// y_i (internal vertices get ids g.n, g.n+1, ... in pair order), and returns
/// the augmented graph together with a construction sequence that first
/// resolves the paths and merges their internals into one part, then replays
/// `base`, then merges everything and closes with negative resolutions.  For
/// every radius r with ell > 2r the result verifies with width at most
/// max(k+1, 4) where k is the radius-r width of `base` on `g`.
AugmentResult augment_with_paths(const Graph& g, const ConstructionSequence& base,
                                 const std::vector<std::pair<int, int>>& pairs, int ell);

struct UnionResult {
  Graph graph;
  ConstructionSequence seq;
};

/// Disjoint union of two graphs (second one's ids shifted by g1.n) together
/// with the concatenated construction sequence: s1, then s2 shifted, then a
/// negative resolution of the two sides and a final merge.  The width is
/// max(w1, w2, 2).
UnionResult union_constructions(const Graph& g1, const ConstructionSequence& s1, const Graph& g2,
                                const ConstructionSequence& s2);

}  // namespace twwgeo
