#pragma once

#include <map>
#include <unordered_map>
#include <vector>

#include "scott/bitset.hpp"
#include "scott/gspace.hpp"
#include "scott/ordinal.hpp"
#include "scott/perm.hpp"

namespace scott {

// Canonical class identifier for the level-alpha set of a pair (point, sigma).
// For same-range pairs, equality of labels is equality of the extensional
// alpha-sets (certified against AlphaSetOracle in tests).
struct AlphaLabel {
  Ordinal level;
  FinSet range_tag;
  uint64_t key;  // level 1: satisfaction bit set; higher levels: class id

  // the range tag is informational: transported pairs with equal keys count
  // as equal even across ranges
  bool operator==(const AlphaLabel& o) const {
    return level == o.level && key == o.key;
  }
};

// Level-by-level refinement of the pair partition, with interned labels.
// Level-(alpha+1) keys embed the level-alpha class id, so partitions only
// ever refine; equal consecutive class counts mean a fixed point.
class RefinementTrace {
 public:
  explicit RefinementTrace(const EffectiveGSpace& sp);

  const EffectiveGSpace& space() const { return *sp_; }
  const std::vector<PartialBijection>& sigmas() const { return sigmas_; }
  int sigma_index(const PartialBijection& sigma) const;

  int levels() const { return (int)labels_.size(); }
  int classes_at(int level) const { return class_counts_[level - 1]; }
  bool stabilized() const { return stab_ > 0; }
  Ordinal stabilization_level() const;

  // appends one level; jobs > 1 uses the parallel kernel
  void refine_step(int jobs = 1);
  // the plain serial kernel, kept as the reference implementation
  void refine_step_serial();
  // iterate until two consecutive pair-partitions coincide
  void run_to_stabilization(int jobs = 1);

  int32_t label_id(int level, int point, int sigma_idx) const {
    return labels_[level - 1][(size_t)sigma_idx * sp_->npoints() + point];
  }
  AlphaLabel label(int level, int point, const PartialBijection& sigma) const;
  // clamp a requested level to the computed (stabilized) range
  int effective_level(Ordinal alpha) const;

 private:
  void compute_level1();

  const EffectiveGSpace* sp_;
  std::vector<PartialBijection> sigmas_;
  std::map<PartialBijection, int> sigma_idx_;
  std::vector<std::vector<int>> coset_gi_;  // per sigma: group element indices
  // per sigma, per initial segment n (index 0..window): extending sigma
  // indices with range {0..n-1}
  std::vector<std::vector<std::vector<int>>> range_ext_;
  std::vector<uint64_t> point_basis_mask_;

  std::vector<std::vector<int32_t>> labels_;  // [level-1][sigma*np + point]
  std::vector<int> class_counts_;
  std::vector<uint64_t> l1_satset_of_id_;
  int stab_ = 0;
};

AlphaLabel b1_label(const EffectiveGSpace& sp, int x,
                    const PartialBijection& sigma);

RefinementTrace stabilization(const EffectiveGSpace& sp, int jobs = 1);

Ordinal gamma_star(const RefinementTrace& tr, int x);
Bitset orbit_via_labels(const RefinementTrace& tr, int x);
Bitset coset_set_via_labels(const RefinementTrace& tr, int x,
                            const PartialBijection& sigma);
bool same_alpha_class(const RefinementTrace& tr, int x,
                      const PartialBijection& sigma, int y,
                      const PartialBijection& delta, Ordinal alpha);
// class of (x, sigma) at a level, as an extensional point set
Bitset label_class(const RefinementTrace& tr, int level, int x,
                   const PartialBijection& sigma);

// Literal two-sided recursion over extensional sets; test oracle and tiny
// CLI demos only.
class AlphaSetOracle {
 public:
  explicit AlphaSetOracle(const EffectiveGSpace& sp);

  Bitset set(int x, const PartialBijection& sigma, Ordinal alpha);
  const std::vector<PartialBijection>& sigmas() const { return sigmas_; }
  // least finite level at which the full table reaches its fixed point
  int table_fixpoint_level();

 private:
  const std::vector<Bitset>& table(int level);

  const EffectiveGSpace* sp_;
  std::vector<PartialBijection> sigmas_;
  std::map<PartialBijection, int> sigma_idx_;
  std::vector<std::vector<Bitset>> tables_;  // [level-1][sigma*np + point]
  int fix_ = 0;
};

Bitset alpha_set_oracle(const EffectiveGSpace& sp, int x,
                        const PartialBijection& sigma, Ordinal alpha);

}  // namespace scott
