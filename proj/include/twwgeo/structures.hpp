#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twwgeo/error.hpp"

namespace twwgeo {

/// Simple undirected graph on vertices 0..n-1. Edges are stored normalized
/// (u < v), sorted and deduplicated. Self-loops are rejected.
struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  std::optional<std::vector<std::string>> labels;

  bool has_edge(int u, int v) const;
  std::vector<std::vector<int>> adjacency_lists() const;
};

Graph make_graph(int n, std::vector<std::pair<int, int>> edges);

/// Bit-matrix adjacency view; row(v) holds one bit per vertex.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(int n);
  void set(int u, int v);
  bool get(int u, int v) const;
  int n() const { return n_; }
  int row_popcount_masked(int v, const std::vector<uint64_t>& mask) const;

 private:
  int n_ = 0;
  int words_ = 0;
  std::vector<uint64_t> bits_;
};

std::vector<uint64_t> make_mask(int n, const std::vector<int>& members);

struct Relation {
  std::string name;
  std::vector<std::pair<int, int>> pairs;  // directed, deduplicated, sorted
};

/// Finite binary structure with an optional total order on the vertices.
/// `order`, when present, lists the vertices from smallest to largest.
struct OrderedBinaryStructure {
  int n = 0;
  std::vector<Relation> relations;
  std::optional<std::vector<int>> order;

  std::vector<int> positions() const;  // positions()[v] = rank of v in the order
};

OrderedBinaryStructure make_structure(int n, std::vector<Relation> relations,
                                      std::optional<std::vector<int>> order);
OrderedBinaryStructure structure_from_graph(const Graph& g,
                                            std::optional<std::vector<int>> order = std::nullopt);

/// Graph with exactly the "edge" relation of `s` (both orientations expected).
Graph graph_from_structure(const OrderedBinaryStructure& s);

/// Partition of the vertex set; parts are non-empty and pairwise disjoint and
/// their union is 0..n-1. The canonical id of a part is its smallest member.
struct VertexPartition {
  std::vector<std::vector<int>> parts;
};

VertexPartition singleton_partition(int n);
void validate_partition(const OrderedBinaryStructure& s, const VertexPartition& p);

/// Precomputed adjacency bit-rows for every relation of a structure, plus the
/// order ranks. Shared by the homogeneity test and the sequence verifiers.
struct StructureView {
  int n = 0;
  std::vector<BitMatrix> rows;      // rows[r].row(v) = out-neighbours of v under relation r
  std::vector<BitMatrix> rows_rev;  // transposed rows, for the incoming direction
  std::vector<int> pos;             // empty when the structure carries no order

  explicit StructureView(const OrderedBinaryStructure& s);
};

/// True iff X and Y are homogeneous: for every relation and each direction all
/// pairs are in the relation or none are, and (when an order is present) the
/// two sets do not interleave in the order.
bool is_homogeneous(const OrderedBinaryStructure& s, const std::vector<int>& xs,
                    const std::vector<int>& ys);
bool is_homogeneous(const StructureView& view, const std::vector<int>& xs,
                    const std::vector<int>& ys);

/// Maximum over parts of the number of other parts not homogeneous with it.
int error_degree(const OrderedBinaryStructure& s, const VertexPartition& p);
int error_degree(const StructureView& view, const VertexPartition& p);

struct InducedStructure {
  OrderedBinaryStructure structure;
  std::vector<int> original_ids;  // original_ids[new_id] = vertex in the host structure
};

/// Substructure induced on `vertices`, relabelled to 0..|S|-1 by increasing
/// original id; the order (when present) is restricted accordingly.
InducedStructure induced_substructure(const OrderedBinaryStructure& s,
                                      const std::vector<int>& vertices);

Graph induced_subgraph(const Graph& g, const std::vector<int>& vertices);

}  // namespace twwgeo
