#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <utility>
#include <vector>

#include "twwgeo/structures.hpp"

namespace twwgeo {

using Rational = boost::multiprecision::cpp_rational;

// ---------------------------------------------------------------------------
// Transversal pairs
// ---------------------------------------------------------------------------

/// Vertices of a transversal pattern T_k inside a host graph: k left vertices
/// A, a k-by-k grid B (B[i][j] = b_{i+1,j+1}), and k right vertices C.
struct TransversalWitness {
  int k = 0;
  std::vector<int> A;
  std::vector<std::vector<int>> B;
  std::vector<int> C;
};

/// True iff the witness realizes the pattern: A[i]-B[i'][j'] is an edge
/// exactly when i <= i', and B[i][j]-C[j'] exactly when j <= j'.  Pairs
/// within A, B, C and between A and C are unconstrained and ignored.
/// Malformed witnesses (wrong shape, ids out of range or repeated) raise
/// InvalidWitness.
bool verify_transversal(const Graph& g, const TransversalWitness& w);

/// The edge-minimal transversal pattern graph on k*k+2k vertices: only the
/// mandated A-B and B-C edges are present.  Layout: A[i] = i, B[i][j] =
/// k + i*k + j, C[j] = k + k*k + j.
Graph gen_transversal_graph(int k);

/// The canonical witness for gen_transversal_graph(k).
TransversalWitness canonical_transversal_witness(int k);

// ---------------------------------------------------------------------------
// Half-graphs and their path-joined variants
// ---------------------------------------------------------------------------

/// Half-graph HG_n: vertices a_1..a_n = 0..n-1 and b_1..b_n = n..2n-1, with
/// edges a_i b_j iff i <= j.
Graph gen_halfgraph(int n);

/// H_sigma^ell: two disjoint half-graphs (a_i b_j and c_i d_j for i <= j)
/// with a path of length ell from each b_i to c_{sigma[i]} (sigma 0-based).
/// Layout: a_i = i, b_i = n+i, c_i = 2n+i, d_i = 3n+i for 0-based i, then
/// path internals 4n.. in path order (ell-1 per path).  |V| = n(ell+3).
Graph gen_Hsigma(const std::vector<int>& sigma, int ell);

/// The universal permutation on n^2 elements: position i*n+j maps to j*n+i
/// (0-based).
std::vector<int> universal_permutation(int n);

/// K_{n,n}^(ell) (bipartite = true; hubs x_1..x_n = 0..n-1, y_1..y_n =
/// n..2n-1) or K_n^(ell) (bipartite = false; hubs 0..n-1), every edge
/// replaced by a path of length ell.  Internals follow the hubs in
/// lexicographic edge order.
Graph gen_subdivided_complete(int n, int ell, bool bipartite);

/// Runs the star-extraction steps on g = gen_Hsigma(universal_permutation(n),
/// ell): keep every n-th vertex of A and D as hubs, drop the rest of A and D,
/// and keep hub-to-b (resp. c-to-hub) edges only when the hub is
/// neighbourhood-minimal among adjacent hubs.  The result must be isomorphic
/// to gen_subdivided_complete(n, ell+2, bipartite); otherwise
/// StructureMismatch is raised.
Graph extract_biclique_from_Hsigma(const Graph& g, int n);

/// Encodes a bipartite graph h (side[v] in {0,1}) inside a transversal
/// pattern: builds T_n for n = max side size, reduces it to the once-
/// subdivided biclique by neighbourhood-minimality, marks the subdividers
/// F = {b_{i,j} : x_i y_j in E(h)}, and reads the edges back through
/// "exists w (F(w) and E(u,w) and E(w,v))".  The output is on h's vertex set
/// and must equal h exactly.  Raises NotBipartite when side is not a proper
/// 2-colouring of h.
Graph encode_bipartite_in_transversal(const Graph& h, const std::vector<int>& side);

/// G-bullet of a bipartite graph h: vertices U + V + E(h); each edge-vertex
/// is adjacent to all of U and V except its two endpoints; U, V and E are
/// cliques; no U-V edges.  Layout: side-0 vertices in id order, then side-1,
/// then edge-vertices in h.edges order.
Graph gen_Gbullet(const Graph& h, const std::vector<int>& side);

// ---------------------------------------------------------------------------
// Terrains
// ---------------------------------------------------------------------------

/// An x-monotone polygonal curve with exact rational coordinates.
struct Terrain {
  std::vector<std::pair<Rational, Rational>> points;  // strictly increasing x
};

/// Visibility graph of the terrain: p_i p_j is a non-edge iff some
/// intermediate p_k lies strictly above the segment p_i p_j (collinear
/// points do not block).  Consecutive points are always adjacent.
/// Raises NotATerrain when x-coordinates are not strictly increasing.
Graph visibility_graph(const Terrain& t);

/// Terrain realizing the half-graph-with-horizons structure for a 0-based
/// permutation sigma of [n] and path parameter ell >= 1:
///  - C = c_1..c_n on a slightly convex left wall (a clique, seen by all
///    of A),
///  - A = a_0..a_{ell(n-1)+1} on a slightly concave floor (an induced path),
///  - one low point b_i between a_{ell(i-1)} and a_{ell(i-1)+1} whose
///    horizon is tuned so that b_i sees exactly c_{sigma[i-1]+1}..c_n among
///    C and nothing else beyond its two floor neighbours.
/// All properties are certified through visibility_graph before returning;
/// PrecisionExhausted is raised when no parameter choice passes.
Terrain gen_terrain(const std::vector<int>& sigma, int ell);

/// Classification of gen_terrain points, recomputed from coordinates:
/// C points have x < 0, A points have integral x >= 0, B points half-integral
/// x.  Indices follow the generator's layout.
struct TerrainRoles {
  std::vector<int> a;  // a[m] = terrain index of a_m
  std::vector<int> b;  // b[i] = terrain index of b_{i+1}
  std::vector<int> c;  // c[j] = terrain index of c_{j+1}
};

TerrainRoles classify_terrain(const Terrain& t, int ell);

/// Checks the five structural clauses of the construction on the visibility
/// graph: A an induced path, C a clique, A-C complete, B edgeless with b_i
/// adjacent among A u B to its two floor neighbours only, and B-C equal to
/// the sigma-threshold pattern.  Returns true iff all hold; on failure and
/// when `why` is non-null, stores a short description.
bool terrain_structure_ok(const Terrain& t, const std::vector<int>& sigma, int ell,
                          std::string* why = nullptr);

// ---------------------------------------------------------------------------
// Isomorphism (small instances)
// ---------------------------------------------------------------------------

/// Exact graph isomorphism via colour refinement plus backtracking; intended
/// for the small, highly structured instances produced by the generators.
bool graphs_isomorphic(const Graph& a, const Graph& b);

}  // namespace twwgeo
