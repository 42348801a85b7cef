#pragma once

#include <optional>
#include <vector>

#include "twwgeo/families.hpp"
#include "twwgeo/grids.hpp"
#include "twwgeo/structures.hpp"
#include "twwgeo/tww.hpp"

namespace twwgeo {

/// Discrete circular arc [left, right] modulo n: the circle points are 1..n
/// and the arc covers left, left+1, ..., right cyclically (a single point
/// when left == right, the whole circle when right == left - 1 mod n).
struct Arc {
  int id = 0;
  int left = 1;
  int right = 1;
};

struct ArcFamily {
  int n = 0;
  std::vector<Arc> arcs;
};

/// Validates 1 <= left, right <= n and pairwise distinct ids.
ArcFamily make_arc_family(int n, std::vector<Arc> arcs);

bool arc_contains(int n, const Arc& a, int p);
bool arcs_intersect(int n, const Arc& a, const Arc& b);

/// Intersection graph; vertex i is f.arcs[i].
Graph arc_intersection_graph(const ArcFamily& f);

/// Deterministic inclusion-wise minimization: visit arcs in increasing id
/// order; for each, delete the right endpoint to exhaustion and then the left
/// endpoint to exhaustion, keeping a deletion only when the intersection
/// graph is unchanged; repeat whole passes until a fixpoint.  Ids, the arc
/// order and the circle size are preserved, and on every output each
/// non-degenerate arc [i,j] has witnesses meeting it exactly in {i} and
/// exactly in {j}.
ArcFamily minimize_arcs(const ArcFamily& f);

/// Endpoint matrix as a point set: one point (left, right) per arc.
/// Duplicate arcs collapse to one point; when had_duplicates is non-null it
/// reports whether a collapse happened.
PointSet arc_endpoint_matrix(const ArcFamily& f, bool* had_duplicates = nullptr);

/// Ordered incidence structure: vertices are the circle points 1..n (ids
/// 0..n-1) followed by the arcs in lexicographic (left, right, id) order;
/// relation "inc" joins each arc to its endpoint(s), both directions;
/// relation "wrap" marks every arc with left > right by a self-loop; the
/// order is the listing order.
OrderedBinaryStructure arc_incidence_structure(const ArcFamily& f);

/// Positions in f.arcs of the structure's arc vertices: entry r is the index
/// of the arc sitting at structure vertex n + r.
std::vector<int> arc_incidence_positions(const ArcFamily& f);

/// Transversal extraction from a grid of order >= 4k+2 in the endpoint
/// matrix of a minimized family: the witness is disjointified to a
/// (2k+1)-grid, the pattern vertices b_{i,j} = I_{2i,2j} are read off, and
/// companion arcs for the left/right vertices are found through the
/// single-point-intersection property of minimized families.  Indices are
/// reversed as needed and the result always passes verify_transversal
/// against arc_intersection_graph(f).  Raises GridTooSmall when w.t < 4k+2,
/// InvalidWitness when w is not a grid of the endpoint matrix, and
/// NotMinimized when the companion arcs do not exist.
TransversalWitness extract_transversal_arcs(const ArcFamily& f, const GridWitness& w, int k);

struct ContractionOutcome {
  ContractionSequence seq;  // on arc_intersection_graph vertices
  int verified_width = 0;
};

/// Exactly one branch is engaged; the engaged branch has been verified.
struct DichotomyResult {
  std::optional<ContractionOutcome> contraction;
  std::optional<TransversalWitness> transversal;
};

/// Full dichotomy pipeline: minimize, then either extract a T_k witness
/// (when the endpoint matrix has a (4k+2)-grid, or directly a (2k+1)-grid
/// whose column and row blocks are separated by a circle threshold) or build
/// the ordered incidence structure, contract it (exactly when it has at most
/// 12 vertices, greedily otherwise), restrict the sequence to the arc
/// vertices and verify it on the intersection graph.
DichotomyResult analyze_arcs(const ArcFamily& f, int k);

/// Circular-arc representation containing T_k: b_{i,j} = [L_i, R_j] with
/// L_1 < ... < L_k < R_1 < ... < R_k, a_i = [P_i, L_i] and c_j = [R_j, Q_j]
/// with P and Q in the wrap region; n = 4k+2.  Arc order: a_1..a_k, then
/// b_{1,1}..b_{k,k} row-major, then c_1..c_k; ids equal positions.
ArcFamily gen_Tk_arcs(int k);

/// Witness on arc_intersection_graph(gen_Tk_arcs(k)) passing
/// verify_transversal.
TransversalWitness canonical_Tk_arcs_witness(int k);

}  // namespace twwgeo
