#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "scott/perm.hpp"

namespace scott {

// Permutation of the naturals given as finitely many explicit finite cycles,
// finitely many two-way-infinite cycles (a window of consecutive entries;
// the rest of each Z-orbit lives in a symbolic fresh region), and fixed
// points everywhere else.
class CyclePermutation {
 public:
  // fresh region: ids at kFreshBase + cycle*kFreshStride + zigzag(offset)
  static constexpr long long kFreshBase = 1 << 20;
  static constexpr long long kFreshStride = 4096;

  CyclePermutation() = default;
  CyclePermutation(std::vector<std::vector<int>> finite,
                   std::vector<std::vector<int>> infinite);
  // "(0 1)(2 3)" finite cycles, "[3 4 5]" infinite windows, "()" identity
  static CyclePermutation parse(const std::string& text);
  std::string format() const;

  const std::vector<std::vector<int>>& finite_cycles() const { return fin_; }
  const std::vector<std::vector<int>>& infinite_cycles() const { return inf_; }

  long long apply(long long k) const { return power(1, k); }
  // exact f^m(k); values outside the explicit entries land in the fresh region
  long long power(long long m, long long k) const;
  bool mentions(long long k) const;
  int max_mentioned() const;
  // conjugate by a finite permutation (identity beyond its window)
  CyclePermutation conjugate_by(const Perm& v) const;

 private:
  std::vector<std::vector<int>> fin_;  // each length >= 2
  std::vector<std::vector<int>> inf_;  // each length >= 1, consecutive entries
};

struct CycleType {
  std::multiset<int> finite;  // lengths >= 2
  int infinite = 0;
  // everything else is a fixed point, cofinitely many

  bool operator==(const CycleType&) const = default;
};

CycleType cycle_type(const CyclePermutation& f);
std::string format_cycle_type(const CycleType& t);
bool is_conjugate(const CyclePermutation& f, const CyclePermutation& g);

inline long long power_apply(const CyclePermutation& f, long long m,
                             long long k) {
  return f.power(m, k);
}

struct DisjointnessResult {
  bool disjoint;
  // witness when disjoint
  int k = 0;
  long long m = 0;
  // conjugator in V_c when not disjoint, on the mentioned universe
  std::map<long long, long long> conjugator;
};

DisjointnessResult cosets_disjoint(const CyclePermutation& f,
                                   const CyclePermutation& g, const FinSet& c);

// The chain family A_k^l of length m: permutations p with p^m(k) = l and the
// intermediate points pairwise distinct, avoiding {k, l}. The open set is the
// union of the corresponding cosets; when the witness sits on the g side the
// separator for f is the closed complement.
struct SeparatingOpenSet {
  int k = 0;
  int l = 0;
  long long m = 0;
  bool open_contains_f = true;  // false: open set holds V_c g, marker case

  bool contains(const CyclePermutation& p) const;
};

SeparatingOpenSet separating_open_set(const CyclePermutation& f,
                                      const CyclePermutation& g,
                                      const FinSet& c);

struct SeparationReport {
  int pairs_examined = 0;
  int disjoint_cases = 0;
  int separated = 0;
  std::vector<std::string> lines;
};

// over every c within the window, separate each disjoint sampled pair at
// rank 1 and verify on enumerated coset elements
SeparationReport rank_one_separation_check(
    const std::vector<std::pair<CyclePermutation, CyclePermutation>>& sample,
    int c_window);

}  // namespace scott
