#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "scott/bitset.hpp"
#include "scott/perm.hpp"

namespace scott {

struct BasicSet {
  int index;
  Bitset members;
  FinSet invariance_tag;  // set b with the set invariant under V^G_b
  std::string name;       // e.g. "P(0)+"
};

struct Relation {
  std::string name;
  int arity;
};

struct LogicSignature {
  std::vector<Relation> relations;
};

// Finite point set with a permutation group action and a tagged basis — the
// desk-scale stand-in for a Polish G-space with invariant basic open sets.
class EffectiveGSpace {
 public:
  EffectiveGSpace(GroupPresentation group, int npoints,
                  std::vector<std::vector<int>> action,  // [group idx][point]
                  std::vector<BasicSet> basis,
                  std::vector<std::string> point_names);

  const GroupPresentation& group() const { return group_; }
  int npoints() const { return npoints_; }
  int window() const { return group_.window(); }
  const std::vector<BasicSet>& basis() const { return basis_; }
  const std::string& point_name(int p) const { return point_names_[p]; }

  int act(int group_index, int point) const { return action_[group_index][point]; }
  int act(const Perm& g, int point) const;
  int group_index(const Perm& g) const;

  // logic-action extras; empty signature for hand-built spaces
  const LogicSignature& signature() const { return sig_; }
  std::optional<int> point_by_name(const std::string& designator) const;

  static EffectiveGSpace build_logic_action(const LogicSignature& sig,
                                            int window, GroupPresentation G);

 private:
  friend EffectiveGSpace make_logic_space(const LogicSignature&, int,
                                          GroupPresentation);
  GroupPresentation group_;
  int npoints_;
  std::vector<std::vector<int>> action_;
  std::vector<BasicSet> basis_;
  std::vector<std::string> point_names_;
  LogicSignature sig_;
  std::map<std::string, int> name_index_;
};

Bitset vaught_orbit(const EffectiveGSpace& sp, const PartialBijection& sigma,
                    int x);
bool sat(const EffectiveGSpace& sp, int x, const PartialBijection& sigma, int l);
// F_1(sigma) as a bit mask over basis indices; 0 when sigma has no coset
uint64_t coding_function(const EffectiveGSpace& sp, int x,
                         const PartialBijection& sigma);
bool imp(const EffectiveGSpace& sp, const FinSet& c, int l, int k);
Bitset saturate(const EffectiveGSpace& sp, const std::vector<Perm>& H,
                const Bitset& S);
std::vector<Bitset> canonical_partition(const EffectiveGSpace& sp);

// structure designator: "P(0);E(0,1)", "" for the all-false structure
std::string parse_designator_bits(const LogicSignature& sig, int window,
                                  const std::string& designator,
                                  uint64_t* atom_mask);

struct Instance {
  int window;
  std::vector<std::string> generator_cycles;
  LogicSignature sig;
};
Instance parse_instance(const std::string& text);
EffectiveGSpace load_instance(const std::string& text);

std::string export_mx(const EffectiveGSpace& sp, int x);
struct MxData {
  std::vector<PartialBijection> sgfin;
  std::vector<std::tuple<FinSet, int, int>> imp_rows;   // (c, l, k) true rows
  std::vector<std::pair<PartialBijection, int>> sat_rows;
};
MxData parse_mx(const std::string& text);
std::string format_mx(const MxData& d);

}  // namespace scott
