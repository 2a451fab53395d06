#pragma once

#include <optional>
#include <vector>

#include "scott/alphasets.hpp"
#include "scott/multicode.hpp"

namespace scott {

// one alternation step of the extension construction; the basic-set index
// tracks a shrinking neighborhood of the target point (bookkeeping only —
// totality on the window replaces metric convergence)
struct BackForthState {
  int step;
  int segment;  // the initial-segment target of this step
  PartialBijection sigma;
  int basic_index;
};

enum class WitnessSide { X, Y };

struct SeparationWitness {
  Ordinal level;   // least level of disagreement
  CodePtr code;    // evaluates to the level-set of the side it names
  WitnessSide side;
};

struct OrbitDecision {
  bool same_orbit;
  Perm g;  // y = g.x when same_orbit
  std::vector<BackForthState> steps;
  std::optional<SeparationWitness> witness;
};

// requires a stabilized trace; with_witness=false skips code construction on
// large spaces
OrbitDecision decide_orbit(const RefinementTrace& tr, int x, int y,
                           bool with_witness = true);

SeparationWitness separate(const RefinementTrace& tr, int x,
                           const PartialBijection& sigma, int y,
                           const PartialBijection& delta);

// lexicographic completion: alternately adjoin the least missing domain and
// range point with the least admissible image until total
Perm complete_to_group_element(const GroupPresentation& G,
                               const PartialBijection& sigma);

// coding function of g.x read off from x: F1^g(sigma) = F1(sigma g)
uint64_t recode(const EffectiveGSpace& sp, int x, const Perm& g,
                const PartialBijection& sigma);

}  // namespace scott
