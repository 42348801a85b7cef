#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "twwgeo/circular_arc.hpp"
#include "twwgeo/families.hpp"
#include "twwgeo/grids.hpp"
#include "twwgeo/structures.hpp"
#include "twwgeo/tww.hpp"

namespace twwgeo {

enum class SegDir { H, V };

/// Axis-parallel segment with integer coordinates in units of eta = 1/eta_den.
/// A horizontal segment covers [x, x+len] x {y}; a vertical one covers
/// {x} x [y, y+len].  Lengths are stored in eta units, so a unit segment has
/// len == eta_den.
struct Segment {
  int id = 0;
  SegDir dir = SegDir::H;
  long long x = 0;
  long long y = 0;
  long long len = 1;
};

struct SegmentFamily {
  long long eta_den = 1;  // eta = 1/eta_den
  long long max_len = 1;  // in whole units; every len is <= max_len * eta_den
  std::vector<Segment> segments;
};

/// Validates positive eta_den and max_len, non-negative coordinates, positive
/// lengths within the max_len bound, and pairwise distinct ids.
SegmentFamily make_segment_family(long long eta_den, long long max_len,
                                  std::vector<Segment> segments);

/// True when every segment has length exactly one unit.
bool is_unit_family(const SegmentFamily& f);

/// Closed-segment intersection test.  Non-degenerate mode reports only
/// horizontal-vertical crossings; degenerate mode also reports collinear
/// same-direction overlaps (shared endpoints included).
bool segments_intersect(const Segment& a, const Segment& b, bool degenerate = false);

/// Intersection graph; vertex i is f.segments[i].
Graph apus_intersection_graph(const SegmentFamily& f, bool degenerate = false);

/// The four ways one unit square combines a horizontal and a vertical batch:
/// every crossing at a point inside square [s,s+1) x [t,t+1) joins a
/// horizontal whose endpoint lies in this square (`same`) or left of it, and
/// a vertical whose endpoint lies in this square or below it.
enum class Quadrant {
  TopRight,     // horizontals of this square, verticals of this square
  TopLeft,      // horizontals from the left, verticals of this square
  BottomRight,  // horizontals of this square, verticals from below
  BottomLeft,   // horizontals from the left, verticals from below
};

struct SquareKey {
  long long s = 0;
  long long t = 0;
  Quadrant d = Quadrant::TopRight;
  /// Present only in mixed-length families: the (horizontal, vertical)
  /// segment lengths this cell pairs up, in eta units.
  std::optional<std::pair<long long, long long>> lengths;

  friend bool operator<(const SquareKey& a, const SquareKey& b) {
    auto ka = std::make_tuple(a.s, a.t, (int)a.d, a.lengths.has_value(),
                              a.lengths.value_or(std::make_pair(0LL, 0LL)));
    auto kb = std::make_tuple(b.s, b.t, (int)b.d, b.lengths.has_value(),
                              b.lengths.value_or(std::make_pair(0LL, 0LL)));
    return ka < kb;
  }
  friend bool operator==(const SquareKey& a, const SquareKey& b) {
    return !(a < b) && !(b < a);
  }
};

struct SquareCell {
  std::vector<int> segment_ids;               // sorted
  std::vector<std::pair<int, int>> edges;     // (horizontal id, vertical id), sorted
};

/// Partition of the edge set by unit square and quadrant.  For unit families
/// every quadrant cell with at least one member segment is emitted and its
/// segment set is the full horizontal-batch/vertical-batch union, so one
/// segment shows up in up to four cells while every edge lands in exactly one.
/// For mixed-length families the keys additionally carry the two segment
/// lengths and only edge-bearing cells are emitted, with the edge endpoints as
/// the cell members.
std::map<SquareKey, SquareCell> split_squares(const SegmentFamily& f);

/// Segment ids sorted by direction (horizontals first), then by length in
/// mixed-length families, then by containing square (s, t) lexicographically,
/// then by endpoint (x, y) lexicographically; exact duplicates tie-break by id
/// and set *had_duplicates.  Each square's horizontal batch and vertical batch
/// is a contiguous run of the result.
std::vector<int> seg_order(const SegmentFamily& f, bool* had_duplicates = nullptr);

/// Deterministic push towards the bottom-left: visit segments in increasing
/// id order, each visit tries one eta step left and then one eta step down,
/// keeping a step only when the non-degenerate intersection graph is
/// unchanged; passes repeat until a fixpoint.  Coordinates never go negative,
/// eta and ids are preserved, and re-minimizing the output is a no-op.  On
/// every output, any segment that could still move left (or down) has a
/// crossing partner pinning that move: for a horizontal [x, x+len] x {y} a
/// vertical at x-eta or at x+len overlapping its height, and a vertical at
/// height y or ending at y-eta overlapping its span; symmetrically for
/// verticals.
SegmentFamily minimize_segments(const SegmentFamily& f);

/// Endpoint matrix of one cell as a point set: one point (x, y) per member
/// segment of the cell, in eta units.  Coinciding endpoints collapse to one
/// point.  Missing key: EmptyCell.
PointSet local_endpoint_matrix(const SegmentFamily& f, const SquareKey& key);

/// Rebuild a transversal witness from a grid in one cell's endpoint matrix of
/// a minimized family.  The grid points are restricted to one direction class
/// (the one carrying the larger subgrid); every class segment with positive
/// coordinates must have its pinning partners, otherwise NotMinimized.  The
/// assembly first tries the full subgrid directly as the middle layer, with
/// the side layers drawn from opposite-direction segments whose measured
/// neighborhoods form clean column/row thresholds; if that fails, points on
/// the coordinate axes are discarded, the remaining points are split into
/// eight classes by the shape of their pinning partners (left/right pin,
/// below/at-height pin, pin crossing the square's bottom line), and the
/// largest single-class subgrid is halved so that its odd cells form the
/// middle layer.  Index directions are reversed as needed and every candidate
/// witness is checked with verify_transversal before being returned; grids too
/// small to seat even the one-row pattern raise GridTooSmall with the
/// achievable order in the message.
TransversalWitness extract_transversal_apus(const SegmentFamily& f, const SquareKey& key,
                                            const GridWitness& w);

/// Dichotomy pipeline: minimize, split into cells, and scan the cells'
/// endpoint matrices for a grid of order 4k+2.  If one exists, the transversal
/// branch is engaged through extract_transversal_apus on that cell.
/// Otherwise the contraction branch builds, per unit square, a sequence on the
/// square's horizontal/vertical batches (exact twin-width for at most 12
/// vertices, greedy beyond) that respects the two batches, composes the
/// squares with compose_block_sequences under the seg_order layout, and
/// reports the width of the composed sequence measured on the full
/// intersection graph.
DichotomyResult analyze_apus(const SegmentFamily& f, int k);

/// Unit-segment family whose non-degenerate intersection graph carries T_k:
/// with delta = 1/(2k+2) and eta = delta/2, b_{i,j} = Hor(1+i*delta,
/// 1+j*delta), a_i = Ver(1+i*delta+delta/2, 1/2) and c_j = Ver(1+k*delta+
/// delta/2, 1+j*delta-delta/2), so that a_i crosses b_{i',j'} exactly when
/// i' <= i and c_j crosses b_{i',j'} exactly when j' >= j.  Segment order:
/// a_1..a_k, then b_{1,1}..b_{k,k} row-major, then c_1..c_k; ids equal
/// positions.
SegmentFamily gen_Tk_apus(int k);

/// Witness on apus_intersection_graph(gen_Tk_apus(k)) passing
/// verify_transversal.
TransversalWitness canonical_Tk_apus_witness(int k);

struct HsigmaApusResult {
  SegmentFamily family;
  /// vertex_ids[i] is the gen_Hsigma(sigma, ell) vertex realised by
  /// family.segments[i]; with this layout the degenerate intersection graph
  /// equals the target graph vertex for vertex.
  std::vector<int> vertex_ids;
};

/// Degenerate unit-segment realization of the two-half-graphs-with-paths
/// family: each length-ell path becomes ell+1 collinear horizontals at its own
/// height, overlapping consecutively with strides above half a unit; left
/// verticals meet exactly the path heads whose start lies at or right of
/// theirs, and right verticals symmetrically meet the path tails, which
/// produces both half-graph patterns by x-threshold placement.  Requires
/// ell >= 2.
HsigmaApusResult gen_Hsigma_apus_degenerate(const std::vector<int>& sigma, int ell);

}  // namespace twwgeo
