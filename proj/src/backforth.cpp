#include "scott/backforth.hpp"

#include <algorithm>
#include <stdexcept>

namespace scott {

namespace {

int least_basic_containing(const EffectiveGSpace& sp, int y) {
  for (size_t l = 0; l < sp.basis().size(); ++l)
    if (sp.basis()[l].members.test(y)) return (int)l;
  throw std::logic_error("basis does not cover the space");
}

int first_differing_level(const RefinementTrace& tr, int x, int si, int y,
                          int di) {
  int level = 1;
  while (tr.label_id(level, x, si) == tr.label_id(level, y, di)) ++level;
  return level;
}

}  // namespace

SeparationWitness separate(const RefinementTrace& tr, int x,
                           const PartialBijection& sigma, int y,
                           const PartialBijection& delta) {
  if (sigma.rng() != delta.rng())
    throw std::invalid_argument("separation needs equal ranges");
  if (!tr.stabilized()) throw std::logic_error("trace not stabilized");
  int si = tr.sigma_index(sigma), di = tr.sigma_index(delta);
  int stab = (int)tr.stabilization_level().fin;
  if (tr.label_id(stab, x, si) == tr.label_id(stab, y, di))
    throw std::invalid_argument("no separation exists");
  int level = first_differing_level(tr, x, si, y, di);
  CodePtr code =
      build_ux(tr.space(), x, sigma, Ordinal::finite((uint32_t)level));
  return SeparationWitness{Ordinal::finite((uint32_t)level), code,
                           WitnessSide::X};
}

OrbitDecision decide_orbit(const RefinementTrace& tr, int x, int y,
                           bool with_witness) {
  if (!tr.stabilized()) throw std::logic_error("trace not stabilized");
  const EffectiveGSpace& sp = tr.space();
  const GroupPresentation& G = sp.group();
  const int W = sp.window();
  const int stab = (int)tr.stabilization_level().fin;
  PartialBijection empty;
  int ei = tr.sigma_index(empty);

  if (tr.label_id(stab, x, ei) != tr.label_id(stab, y, ei)) {
    OrbitDecision d{false, Perm::identity(W), {}, std::nullopt};
    if (with_witness) d.witness = separate(tr, x, empty, y, empty);
    return d;
  }

  auto segment_above = [W](const FinSet& s) {
    int k = s.empty() ? 0 : s.max_element() + 1;
    return std::min(std::max(k, (int)s.size()) + 1, W);
  };

  PartialBijection sigma;
  std::vector<BackForthState> steps;
  int step = 0;
  while (sigma.size() < W) {
    PartialBijection next;
    int seg;
    if (step % 2 == 0) {
      // range side: extend to the next initial segment, keeping the
      // stabilized-label invariant against (y, id)
      seg = segment_above(sigma.rng());
      FinSet target = FinSet::segment(seg);
      int idn = tr.sigma_index(PartialBijection::identity_on(target));
      bool found = false;
      for (const PartialBijection& cand :
           extensions(G, sigma, Side::Range, target)) {
        if (tr.label_id(stab, x, tr.sigma_index(cand)) ==
            tr.label_id(stab, y, idn)) {
          next = cand;
          found = true;
          break;
        }
      }
      if (!found)
        throw std::logic_error("no label-preserving range extension");
    } else {
      // domain side, transported through the inverse
      seg = segment_above(sigma.dom());
      FinSet target = FinSet::segment(seg);
      int idm = tr.sigma_index(PartialBijection::identity_on(target));
      bool found = false;
      for (const PartialBijection& cand :
           extensions(G, sigma.inverse(), Side::Range, target)) {
        if (tr.label_id(stab, y, tr.sigma_index(cand)) ==
            tr.label_id(stab, x, idm)) {
          next = cand.inverse();
          found = true;
          break;
        }
      }
      if (!found)
        throw std::logic_error("no label-preserving domain extension");
    }
    sigma = next;
    steps.push_back(
        BackForthState{step, seg, sigma, least_basic_containing(sp, y)});
    ++step;
  }

  std::vector<int> img(W);
  for (int k = 0; k < W; ++k) img[k] = sigma.apply(k);
  Perm g(std::move(img));
  if (sp.act(sp.group_index(g), x) != y)
    throw std::logic_error("back-and-forth produced a wrong witness");
  return OrbitDecision{true, g, std::move(steps), std::nullopt};
}

Perm complete_to_group_element(const GroupPresentation& G,
                               const PartialBijection& sigma) {
  if (!coset_nonempty(G, sigma))
    throw std::invalid_argument("sigma not in S^G");
  const int W = G.window();
  PartialBijection cur = sigma;
  bool domain_side = true;
  int spins = 0;
  while (cur.size() < W) {
    if (++spins > 4 * W) throw std::logic_error("completion stalled");
    bool extended = false;
    if (domain_side && cur.dom().size() < W) {
      int k = 0;
      while (cur.dom().contains(k)) ++k;
      for (int v = 0; v < W && !extended; ++v) {
        if (cur.rng().contains(v)) continue;
        auto ps = cur.pairs();
        ps.emplace_back(k, v);
        PartialBijection cand{std::move(ps)};
        if (coset_nonempty(G, cand)) {
          cur = cand;
          extended = true;
        }
      }
    } else if (!domain_side && cur.rng().size() < W) {
      int k = 0;
      while (cur.rng().contains(k)) ++k;
      for (int u = 0; u < W && !extended; ++u) {
        if (cur.dom().contains(u)) continue;
        auto ps = cur.pairs();
        ps.emplace_back(u, k);
        PartialBijection cand{std::move(ps)};
        if (coset_nonempty(G, cand)) {
          cur = cand;
          extended = true;
        }
      }
    }
    (void)extended;
    domain_side = !domain_side;
  }
  std::vector<int> img(W);
  for (int k = 0; k < W; ++k) img[k] = cur.apply(k);
  return Perm(std::move(img));
}

uint64_t recode(const EffectiveGSpace& sp, int x, const Perm& g,
                const PartialBijection& sigma) {
  return coding_function(sp, x, compose_right(sigma, g));
}

}  // namespace scott
