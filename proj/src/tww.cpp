#include "twwgeo/tww.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <unordered_set>

namespace twwgeo {

namespace {
enum : uint8_t { kNone = 0, kAll = 1, kMixed = 2 };

uint8_t combine(uint8_t x, uint8_t y) { return x == y ? x : kMixed; }
}  // namespace

PartitionTracker::PartitionTracker(const OrderedBinaryStructure& s)
    : n_(s.n), nrel_((int)s.relations.size()) {
  for (const auto& rel : s.relations) {
    BitMatrix fwd(n_), rev(n_);
    for (auto [u, v] : rel.pairs) {
      fwd.set(u, v);
      rev.set(v, u);
    }
    rows_.push_back(std::move(fwd));
    rows_rev_.push_back(std::move(rev));
  }
  has_order_ = s.order.has_value();
  pos_ = s.positions();
  minpos_.assign(n_, 0);
  maxpos_.assign(n_, 0);
  part_mask_.resize(n_);
  for (int v = 0; v < n_; ++v) {
    parts_[v] = {v};
    minpos_[v] = maxpos_[v] = pos_[v];
    part_mask_[v] = make_mask(n_, {v});
  }
  pair_states_.resize((size_t)n_ * n_);
  mixed_degree_.assign(n_, 0);
  for (int a = 0; a < n_; ++a)
    for (int b = a + 1; b < n_; ++b) {
      compute_pair(a, b, pair_states_[pair_index(a, b)]);
      if (pair_states_[pair_index(a, b)].mixed) {
        ++mixed_degree_[a];
        ++mixed_degree_[b];
      }
    }
}

bool PartitionTracker::order_overlap(int a, int b) const {
  if (!has_order_) return false;
  return !(maxpos_[a] < minpos_[b] || maxpos_[b] < minpos_[a]);
}

void PartitionTracker::compute_pair(int a, int b, PairState& out) const {
  out.dir_state.assign((size_t)nrel_ * 2, kNone);
  const auto& pa = parts_.at(a);
  const auto& pb = parts_.at(b);
  long long full = (long long)pa.size() * (long long)pb.size();
  bool mixed = false;
  for (int r = 0; r < nrel_; ++r) {
    long long fwd = 0, rev = 0;
    for (int v : pa) {
      fwd += rows_[r].row_popcount_masked(v, part_mask_[b]);
      rev += rows_rev_[r].row_popcount_masked(v, part_mask_[b]);
    }
    out.dir_state[2 * r] = fwd == 0 ? kNone : (fwd == full ? kAll : kMixed);
    out.dir_state[2 * r + 1] = rev == 0 ? kNone : (rev == full ? kAll : kMixed);
    mixed |= out.dir_state[2 * r] == kMixed || out.dir_state[2 * r + 1] == kMixed;
  }
  out.mixed = mixed || order_overlap(a, b);
}

int PartitionTracker::current_error_degree() const {
  int best = 0;
  for (int d : mixed_degree_)
    if (d > best) best = d;
  return best;
}

bool PartitionTracker::pair_homogeneous(int a, int b) const {
  return !pair_states_[pair_index(a, b)].mixed;
}

int PartitionTracker::merge(int a, int b) {
  if (a == b) fail(ErrorCode::InvalidMerge, "merging a part with itself");
  if (!parts_.count(a) || !parts_.count(b)) fail(ErrorCode::InvalidMerge, "unknown part id");
  int keep = std::min(a, b), gone = std::max(a, b);
  // Adjust mixed degrees for the disappearing pair relations first.
  for (const auto& [c, members] : parts_) {
    if (c == keep || c == gone) continue;
    bool mk = pair_states_[pair_index(keep, c)].mixed;
    bool mg = pair_states_[pair_index(gone, c)].mixed;
    PairState merged;
    const PairState& sk = pair_states_[pair_index(keep, c)];
    const PairState& sg = pair_states_[pair_index(gone, c)];
    merged.dir_state.resize((size_t)nrel_ * 2);
    bool mixed = false;
    for (int i = 0; i < nrel_ * 2; ++i) {
      merged.dir_state[i] = combine(sk.dir_state[i], sg.dir_state[i]);
      mixed |= merged.dir_state[i] == kMixed;
    }
    if (has_order_) {
      int lo = std::min(minpos_[keep], minpos_[gone]);
      int hi = std::max(maxpos_[keep], maxpos_[gone]);
      if (!(hi < minpos_[c] || maxpos_[c] < lo)) mixed = true;
    }
    merged.mixed = mixed;
    mixed_degree_[c] += (int)merged.mixed - (int)mk - (int)mg;
    pair_states_[pair_index(keep, c)] = std::move(merged);
  }
  if (pair_states_[pair_index(keep, gone)].mixed) {
    mixed_degree_[keep] -= 1;
    mixed_degree_[gone] -= 1;
  }
  // Rebuild the degree of the merged part from its new pair states.
  auto members_gone = parts_[gone];
  auto& members_keep = parts_[keep];
  members_keep.insert(members_keep.end(), members_gone.begin(), members_gone.end());
  std::sort(members_keep.begin(), members_keep.end());
  for (int v : members_gone) part_mask_[keep][v / 64] |= uint64_t{1} << (v % 64);
  minpos_[keep] = std::min(minpos_[keep], minpos_[gone]);
  maxpos_[keep] = std::max(maxpos_[keep], maxpos_[gone]);
  parts_.erase(gone);
  int deg = 0;
  for (const auto& [c, members] : parts_) {
    if (c == keep) continue;
    if (pair_states_[pair_index(keep, c)].mixed) ++deg;
  }
  mixed_degree_[keep] = deg;
  mixed_degree_[gone] = 0;
  return current_error_degree();
}

int PartitionTracker::peek_merge(int a, int b) const {
  int keep = std::min(a, b), gone = std::max(a, b);
  int merged_deg = 0;
  int best = 0;
  for (const auto& [c, members] : parts_) {
    if (c == keep || c == gone) continue;
    const PairState& sk = pair_states_[pair_index(keep, c)];
    const PairState& sg = pair_states_[pair_index(gone, c)];
    bool mixed = false;
    for (int i = 0; i < nrel_ * 2 && !mixed; ++i)
      if (combine(sk.dir_state[i], sg.dir_state[i]) == kMixed) mixed = true;
    if (!mixed && has_order_) {
      int lo = std::min(minpos_[keep], minpos_[gone]);
      int hi = std::max(maxpos_[keep], maxpos_[gone]);
      if (!(hi < minpos_[c] || maxpos_[c] < lo)) mixed = true;
    }
    if (mixed) ++merged_deg;
    int dc = mixed_degree_[c] - (int)sk.mixed - (int)sg.mixed + (int)mixed;
    best = std::max(best, dc);
  }
  best = std::max(best, merged_deg);
  return best;
}

int replay_contraction(const OrderedBinaryStructure& s, const ContractionSequence& seq,
                       ContractionTrace* trace, std::vector<std::vector<int>>* final_parts) {
  PartitionTracker tracker(s);
  int width = tracker.current_error_degree();
  if (trace) trace->step_error_degrees.assign(1, width);
  for (auto [a, b] : seq.merges) {
    int d = tracker.merge(a, b);
    width = std::max(width, d);
    if (trace) trace->step_error_degrees.push_back(d);
  }
  if (final_parts) {
    final_parts->clear();
    for (const auto& [id, members] : tracker.parts()) final_parts->push_back(members);
  }
  return width;
}

int verify_contraction(const OrderedBinaryStructure& s, const ContractionSequence& seq,
                       ContractionTrace* trace) {
  if ((int)seq.merges.size() != std::max(0, s.n - 1))
    fail(ErrorCode::LengthMismatch, "a full sequence needs exactly n-1 merges");
  return replay_contraction(s, seq, trace);
}

// ---------------------------------------------------------------------------
// Exact search (small n): iterative deepening over canonical partitions.
// ---------------------------------------------------------------------------

namespace {

struct MaskContext {
  int n = 0;
  int nrel = 0;
  std::vector<std::vector<uint32_t>> fwd;  // [rel][v] = out-neighbour mask
  std::vector<std::vector<uint32_t>> rev;
  bool has_order = false;
  std::vector<int> pos;
  std::vector<int> side;  // empty when unconstrained

  explicit MaskContext(const OrderedBinaryStructure& s) : n(s.n), nrel((int)s.relations.size()) {
    fwd.assign(nrel, std::vector<uint32_t>(n, 0));
    rev.assign(nrel, std::vector<uint32_t>(n, 0));
    for (int r = 0; r < nrel; ++r)
      for (auto [u, v] : s.relations[r].pairs) {
        fwd[r][u] |= uint32_t{1} << v;
        rev[r][v] |= uint32_t{1} << u;
      }
    has_order = s.order.has_value();
    pos = s.positions();
  }

  bool pair_homog(uint32_t p, uint32_t q) const {
    int psz = std::popcount(p), qsz = std::popcount(q);
    long long full = (long long)psz * qsz;
    for (int r = 0; r < nrel; ++r) {
      long long f = 0, g = 0;
      for (uint32_t m = p; m;) {
        int v = std::countr_zero(m);
        m &= m - 1;
        f += std::popcount(fwd[r][v] & q);
        g += std::popcount(rev[r][v] & q);
      }
      if ((f != 0 && f != full) || (g != 0 && g != full)) return false;
    }
    if (has_order) {
      int plo = n, phi = -1, qlo = n, qhi = -1;
      for (uint32_t m = p; m;) {
        int v = std::countr_zero(m);
        m &= m - 1;
        plo = std::min(plo, pos[v]);
        phi = std::max(phi, pos[v]);
      }
      for (uint32_t m = q; m;) {
        int v = std::countr_zero(m);
        m &= m - 1;
        qlo = std::min(qlo, pos[v]);
        qhi = std::max(qhi, pos[v]);
      }
      if (!(phi < qlo || qhi < plo)) return false;
    }
    return true;
  }

  int error_degree(const std::vector<uint32_t>& partition) const {
    int m = (int)partition.size();
    std::vector<int> deg(m, 0);
    int best = 0;
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        if (!pair_homog(partition[i], partition[j])) {
          best = std::max(best, std::max(++deg[i], ++deg[j]));
        }
    return best;
  }
};

struct PartitionHash {
  size_t operator()(const std::vector<uint32_t>& p) const {
    size_t h = 1469598103934665603ull;
    for (uint32_t m : p) {
      h ^= m;
      h *= 1099511628211ull;
    }
    return h;
  }
};

struct DeepeningSearch {
  const MaskContext& ctx;
  int budget = 0;
  int goal_parts = 1;
  std::unordered_set<std::vector<uint32_t>, PartitionHash> dead;
  std::vector<std::pair<int, int>> merges;

  DeepeningSearch(const MaskContext& c) : ctx(c) {}

  bool merge_allowed(uint32_t p, uint32_t q) const {
    if (ctx.side.empty()) return true;
    int sp = ctx.side[std::countr_zero(p)];
    int sq = ctx.side[std::countr_zero(q)];
    return sp == sq;
  }

  bool dfs(std::vector<uint32_t>& partition) {
    if ((int)partition.size() <= goal_parts) return true;
    if (dead.count(partition)) return false;
    int m = (int)partition.size();
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) {
        if (!merge_allowed(partition[i], partition[j])) continue;
        std::vector<uint32_t> next;
        next.reserve(m - 1);
        uint32_t merged = partition[i] | partition[j];
        for (int k = 0; k < m; ++k)
          if (k != i && k != j) next.push_back(partition[k]);
        next.push_back(merged);
        std::sort(next.begin(), next.end());
        if (ctx.error_degree(next) > budget) continue;
        merges.emplace_back(std::countr_zero(partition[i] | partition[j]),
                            std::max(std::countr_zero(partition[i]),
                                     std::countr_zero(partition[j])));
        if (dfs(next)) return true;
        merges.pop_back();
      }
    dead.insert(partition);
    return false;
  }
};

int exact_cap_from_env() {
  if (const char* env = std::getenv("TWWGEO_MAX_EXACT")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 12;
}

}  // namespace

ExactTwwResult exact_tww(const OrderedBinaryStructure& s, const ExactTwwOptions& opts) {
  int cap = std::min(opts.max_n > 0 ? opts.max_n : exact_cap_from_env(), 30);
  if (s.n > cap) fail(ErrorCode::TooLarge, "exact search capped at n = " + std::to_string(cap));
  if (s.n == 0) return {0, {}};
  GreedyOptions gopts;
  if (opts.bipartition) gopts.bipartition = opts.bipartition;
  GreedyResult upper = greedy_contraction(s, gopts);
  if (s.n == 1) return {0, {}};

  MaskContext ctx(s);
  int goal_parts = 1;
  if (opts.bipartition) {
    if ((int)opts.bipartition->size() != s.n)
      fail(ErrorCode::InvalidPartition, "bipartition length != n");
    ctx.side = *opts.bipartition;
    bool has0 = false, has1 = false;
    for (int v : ctx.side) {
      if (v == 0) has0 = true;
      else if (v == 1) has1 = true;
      else fail(ErrorCode::InvalidPartition, "bipartition sides must be 0/1");
    }
    goal_parts = (has0 && has1) ? 2 : 1;
  }

  std::vector<uint32_t> initial;
  for (int v = 0; v < s.n; ++v) initial.push_back(uint32_t{1} << v);
  std::sort(initial.begin(), initial.end());

  for (int w = 0; w < upper.width; ++w) {
    DeepeningSearch search(ctx);
    search.budget = w;
    search.goal_parts = goal_parts;
    std::vector<uint32_t> start = initial;
    if (ctx.error_degree(start) > w) continue;
    if (search.dfs(start)) {
      ContractionSequence seq;
      seq.merges = search.merges;
      ContractionTrace trace;
      int width = replay_contraction(s, seq, &trace);
      return {width, std::move(seq)};
    }
  }
  return {upper.width, upper.seq};
}

GreedyResult greedy_contraction(const OrderedBinaryStructure& s, const GreedyOptions& opts) {
  if (s.n == 0) return {0, {}};
  std::vector<int> side;
  int goal_parts = 1;
  if (opts.bipartition) {
    if ((int)opts.bipartition->size() != s.n)
      fail(ErrorCode::InvalidPartition, "bipartition length != n");
    side = *opts.bipartition;
    bool has0 = false, has1 = false;
    for (int v : side) {
      if (v == 0) has0 = true;
      else if (v == 1) has1 = true;
      else fail(ErrorCode::InvalidPartition, "bipartition sides must be 0/1");
    }
    goal_parts = (has0 && has1) ? 2 : 1;
  }

  PartitionTracker tracker(s);
  GreedyResult res;
  res.width = tracker.current_error_degree();
  bool ordered = s.order.has_value();
  auto pos = s.positions();

  while (tracker.live_count() > goal_parts) {
    std::vector<std::pair<int, int>> candidates;
    if (ordered) {
      std::vector<std::pair<int, int>> by_pos;  // (min position, id)
      for (const auto& [id, members] : tracker.parts()) {
        int lo = pos[members.front()];
        for (int v : members) lo = std::min(lo, pos[v]);
        by_pos.emplace_back(lo, id);
      }
      std::sort(by_pos.begin(), by_pos.end());
      for (size_t i = 0; i + 1 < by_pos.size(); ++i) {
        int a = by_pos[i].second, b = by_pos[i + 1].second;
        if (!side.empty() && side[a] != side[b]) continue;
        candidates.emplace_back(std::min(a, b), std::max(a, b));
      }
    } else {
      for (auto it = tracker.parts().begin(); it != tracker.parts().end(); ++it)
        for (auto jt = std::next(it); jt != tracker.parts().end(); ++jt) {
          if (!side.empty() && side[it->first] != side[jt->first]) continue;
          candidates.emplace_back(it->first, jt->first);
        }
    }
    if (candidates.empty())
      fail(ErrorCode::InvalidPartition, "no merge candidate respects the constraint");
    std::sort(candidates.begin(), candidates.end());
    int best_cost = -1;
    std::pair<int, int> best = candidates.front();
    for (auto [a, b] : candidates) {
      int cost = tracker.peek_merge(a, b);
      if (best_cost < 0 || cost < best_cost) {
        best_cost = cost;
        best = {a, b};
      }
    }
    int d = tracker.merge(best.first, best.second);
    res.width = std::max(res.width, d);
    res.seq.merges.push_back(best);
  }
  return res;
}

ComposeResult compose_block_sequences(const OrderedBinaryStructure& s,
                                      const std::vector<Block>& blocks,
                                      const std::vector<ContractionSequence>& seqs) {
  if (!s.order) fail(ErrorCode::NotBlockStructured, "block composition needs an ordered structure");
  if (blocks.size() != seqs.size())
    fail(ErrorCode::BadBlockSequence, "one sequence per block required");
  int m = (int)blocks.size();
  if (m == 0) fail(ErrorCode::EmptyInput, "no blocks");

  auto pos = s.positions();
  std::vector<int> owner(s.n, -1);
  // Interval layout check: A_1 < ... < A_m < B_1 < ... < B_m in order positions.
  int cursor = 0;
  auto check_interval = [&](const std::vector<int>& vs, int block_id) {
    std::vector<int> ps;
    for (int v : vs) {
      if (v < 0 || v >= s.n) fail(ErrorCode::InvalidVertex, "block member out of range");
      if (owner[v] != -1) fail(ErrorCode::NotBlockStructured, "vertex in two blocks");
      owner[v] = block_id;
      ps.push_back(pos[v]);
    }
    std::sort(ps.begin(), ps.end());
    for (int p : ps) {
      if (p != cursor) fail(ErrorCode::NotBlockStructured, "blocks are not consecutive intervals");
      ++cursor;
    }
  };
  for (int i = 0; i < m; ++i) check_interval(blocks[i].a, i);
  for (int i = 0; i < m; ++i) check_interval(blocks[i].b, i);
  if (cursor != s.n) fail(ErrorCode::NotBlockStructured, "blocks do not cover the vertex set");
  for (const auto& rel : s.relations)
    for (auto [u, v] : rel.pairs)
      if (owner[u] != owner[v]) fail(ErrorCode::NotBlockStructured, "cross-block edge");

  ComposeResult out;
  std::vector<int> a_roots, b_roots;  // each root is the smallest vertex of its side-part

  for (int i = 0; i < m; ++i) {
    std::vector<int> verts = blocks[i].a;
    verts.insert(verts.end(), blocks[i].b.begin(), blocks[i].b.end());
    if (verts.empty()) fail(ErrorCode::NotBlockStructured, "empty block");
    auto induced = induced_substructure(s, verts);
    int ni = (int)induced.original_ids.size();
    // Validate the block sequence: bipartition-respecting, ending at {A_i, B_i}.
    std::vector<char> in_a(ni, 0);
    std::vector<int> sorted_a = blocks[i].a;
    std::sort(sorted_a.begin(), sorted_a.end());
    for (int k = 0; k < ni; ++k)
      if (std::binary_search(sorted_a.begin(), sorted_a.end(), induced.original_ids[k]))
        in_a[k] = 1;
    std::vector<std::vector<int>> final_parts;
    {
      // merges must stay inside one side
      std::vector<int> root(ni);
      for (int k = 0; k < ni; ++k) root[k] = k;
      for (auto [a, b] : seqs[i].merges) {
        if (a < 0 || a >= ni || b < 0 || b >= ni)
          fail(ErrorCode::BadBlockSequence, "merge id out of range in block sequence");
        if (in_a[a] != in_a[b])
          fail(ErrorCode::BadBlockSequence, "block sequence merges across the bipartition");
      }
      replay_contraction(induced.structure, seqs[i], nullptr, &final_parts);
    }
    int want_parts = (blocks[i].a.empty() || blocks[i].b.empty()) ? 1 : 2;
    if ((int)final_parts.size() != want_parts)
      fail(ErrorCode::BadBlockSequence, "block sequence does not end at its bipartition");
    for (auto [a, b] : seqs[i].merges)
      out.seq.merges.emplace_back(induced.original_ids[a], induced.original_ids[b]);
    if (!blocks[i].a.empty())
      a_roots.push_back(*std::min_element(blocks[i].a.begin(), blocks[i].a.end()));
    if (!blocks[i].b.empty())
      b_roots.push_back(*std::min_element(blocks[i].b.begin(), blocks[i].b.end()));
  }

  // Zip phase: A_1+A_2, B_1+B_2, (A_12)+A_3, ... then one cross merge.
  size_t ai = 1, bi = 1;
  int a_agg = a_roots.empty() ? -1 : a_roots[0];
  int b_agg = b_roots.empty() ? -1 : b_roots[0];
  while (ai < a_roots.size() || bi < b_roots.size()) {
    if (ai < a_roots.size()) {
      out.seq.merges.emplace_back(a_agg, a_roots[ai]);
      a_agg = std::min(a_agg, a_roots[ai]);
      ++ai;
    }
    if (bi < b_roots.size()) {
      out.seq.merges.emplace_back(b_agg, b_roots[bi]);
      b_agg = std::min(b_agg, b_roots[bi]);
      ++bi;
    }
  }
  if (a_agg >= 0 && b_agg >= 0) out.seq.merges.emplace_back(a_agg, b_agg);
  out.width = verify_contraction(s, out.seq);
  return out;
}

ContractionSequence restrict_sequence(int n, const ContractionSequence& seq,
                                      const std::vector<int>& vertices) {
  std::vector<int> sorted = vertices;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<int> induced_id(n, -1);
  for (size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] < 0 || sorted[i] >= n) fail(ErrorCode::InvalidVertex, "vertex out of range");
    induced_id[sorted[i]] = (int)i;
  }
  // Track, per live part, the smallest member inside the restriction (or -1).
  std::vector<int> inner_min(n);
  for (int v = 0; v < n; ++v) inner_min[v] = induced_id[v] >= 0 ? v : -1;
  ContractionSequence out;
  for (auto [a, b] : seq.merges) {
    if (a < 0 || a >= n || b < 0 || b >= n) fail(ErrorCode::InvalidMerge, "merge id out of range");
    int ia = inner_min[a], ib = inner_min[b];
    if (ia >= 0 && ib >= 0)
      out.merges.emplace_back(std::min(induced_id[ia], induced_id[ib]),
                              std::max(induced_id[ia], induced_id[ib]));
    int keep = std::min(a, b), gone = std::max(a, b);
    inner_min[keep] = ia < 0 ? ib : (ib < 0 ? ia : std::min(ia, ib));
    inner_min[gone] = -1;
  }
  return out;
}

ContractionSequence relabel_sequence(int n, const ContractionSequence& seq,
                                     const std::vector<int>& perm) {
  if ((int)perm.size() != n) fail(ErrorCode::InvalidOrder, "relabelling length != n");
  std::vector<int> min_new(n);
  for (int v = 0; v < n; ++v) min_new[v] = perm[v];
  ContractionSequence out;
  for (auto [a, b] : seq.merges) {
    if (a < 0 || a >= n || b < 0 || b >= n) fail(ErrorCode::InvalidMerge, "merge id out of range");
    int na = min_new[a], nb = min_new[b];
    out.merges.emplace_back(std::min(na, nb), std::max(na, nb));
    int keep = std::min(a, b), gone = std::max(a, b);
    min_new[keep] = std::min(na, nb);
    min_new[gone] = -1;
  }
  return out;
}

}  // namespace twwgeo
