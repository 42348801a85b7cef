#pragma once

#include <map>
#include <optional>
#include <vector>

#include "twwgeo/structures.hpp"

namespace twwgeo {

/// Contraction sequence: merges reference parts by canonical id (the smallest
/// member). A full sequence for an n-vertex structure has exactly n-1 merges.
struct ContractionSequence {
  std::vector<std::pair<int, int>> merges;
};

struct ContractionTrace {
  std::vector<int> step_error_degrees;  // one entry per state, initial state included
};

/// Incremental partition state over a structure. Tracks, for every pair of
/// live parts, per-relation all/none/mixed flags plus the order spans, so a
/// merge costs O(parts * relations) and the error degree is maintained.
class PartitionTracker {
 public:
  explicit PartitionTracker(const OrderedBinaryStructure& s);

  int live_count() const { return (int)parts_.size(); }
  const std::map<int, std::vector<int>>& parts() const { return parts_; }
  int current_error_degree() const;
  bool pair_homogeneous(int a, int b) const;

  /// Merge the parts with canonical ids a and b; the merged part keeps the
  /// smaller id. Returns the error degree of the new partition.
  int merge(int a, int b);

  /// Error degree the partition would have after merging a and b, without
  /// committing the merge.
  int peek_merge(int a, int b) const;

 private:
  struct PairState {
    std::vector<uint8_t> dir_state;  // 2 entries per relation: ALL/NONE/MIXED
    bool mixed = false;              // any direction mixed, or order-interleaved
  };

  int pair_index(int a, int b) const { return std::min(a, b) * n_ + std::max(a, b); }
  void compute_pair(int a, int b, PairState& out) const;
  bool order_overlap(int a, int b) const;

  int n_ = 0;
  int nrel_ = 0;
  std::vector<BitMatrix> rows_, rows_rev_;
  bool has_order_ = false;
  std::vector<int> pos_;
  std::map<int, std::vector<int>> parts_;
  std::vector<int> minpos_, maxpos_;
  std::vector<std::vector<uint64_t>> part_mask_;
  std::vector<PairState> pair_states_;  // indexed by pair_index over canonical ids
  std::vector<int> mixed_degree_;
};

/// Width of a full contraction sequence; throws LengthMismatch unless the
/// sequence has exactly n-1 merges and InvalidMerge on a dead or unknown part.
int verify_contraction(const OrderedBinaryStructure& s, const ContractionSequence& seq,
                       ContractionTrace* trace = nullptr);

/// Replay an arbitrary merge prefix; returns the width over the replayed
/// states and, optionally, the final partition.
int replay_contraction(const OrderedBinaryStructure& s, const ContractionSequence& seq,
                       ContractionTrace* trace = nullptr,
                       std::vector<std::vector<int>>* final_parts = nullptr);

struct ExactTwwOptions {
  /// Restrict merges to one side of the bipartition and stop at the two-part
  /// partition {side 0, side 1}. side[v] must be 0 or 1.
  std::optional<std::vector<int>> bipartition;
  int max_n = 0;  // 0: use the built-in cap (12, overridable via TWWGEO_MAX_EXACT)
};

struct ExactTwwResult {
  int width = 0;
  ContractionSequence seq;
};

/// Optimal width by iterative deepening over partitions with memoised failed
/// states. Hard-capped instance size; TooLarge beyond the cap.
ExactTwwResult exact_tww(const OrderedBinaryStructure& s, const ExactTwwOptions& opts = {});

struct GreedyOptions {
  std::optional<std::vector<int>> bipartition;  // same meaning as for exact_tww
};

struct GreedyResult {
  int width = 0;
  ContractionSequence seq;
};

/// Greedy heuristic: repeatedly merge the candidate pair (order-adjacent parts
/// when the structure is ordered, arbitrary pairs otherwise) that minimises
/// the resulting error degree; ties go to the smallest canonical ids.
GreedyResult greedy_contraction(const OrderedBinaryStructure& s, const GreedyOptions& opts = {});

/// One block of a block-structured instance: two (possibly empty) vertex sets
/// that are consecutive intervals in the order.
struct Block {
  std::vector<int> a;
  std::vector<int> b;
};

struct ComposeResult {
  ContractionSequence seq;
  int width = 0;
};

/// Compose per-block bipartition-respecting sequences (each given on the
/// induced substructure of its block, ending at the two-part partition) into a
/// full sequence for s: replay the blocks, then zip the A-parts and B-parts
/// together pairwise and finish with one cross merge. Requires the blocks to
/// partition the order as A_1 < ... < A_m < B_1 < ... < B_m with every edge
/// inside some A_i cup B_i.
ComposeResult compose_block_sequences(const OrderedBinaryStructure& s,
                                      const std::vector<Block>& blocks,
                                      const std::vector<ContractionSequence>& seqs);

/// Project a merge sequence onto the induced substructure on `vertices`:
/// merges with both sides intersecting survive (with canonical ids translated
/// to induced labels), others are dropped.
ContractionSequence restrict_sequence(int n, const ContractionSequence& seq,
                                      const std::vector<int>& vertices);

/// Rewrite a sequence through a vertex relabelling; perm[old] = new.
ContractionSequence relabel_sequence(int n, const ContractionSequence& seq,
                                     const std::vector<int>& perm);

}  // namespace twwgeo
