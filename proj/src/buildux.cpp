#include <stdexcept>

#include "scott/alphasets.hpp"
#include "scott/multicode.hpp"

namespace scott {

UxBuilder::UxBuilder(const EffectiveGSpace& sp, int x) : sp_(&sp), x_(x) {}

CodePtr UxBuilder::imp_code(const FinSet& c, int l) {
  auto key = std::make_pair(c, l);
  auto it = imp_memo_.find(key);
  if (it != imp_memo_.end()) return it->second;
  auto vc = pointwise_stabilizer(sp_->group(), c).elements();
  Bitset satl = saturate(*sp_, vc, sp_->basis()[l].members);
  std::vector<bool> bits(sp_->basis().size());
  for (size_t k = 0; k < sp_->basis().size(); ++k)
    bits[k] = sp_->basis()[k].members.is_subset_of(satl);
  CodePtr code = make_s1(std::move(bits), false);
  imp_memo_.emplace(key, code);
  return code;
}

UxCodes UxBuilder::build(Ordinal alpha, const PartialBijection& sigma) {
  if (alpha.is_zero()) throw std::invalid_argument("level must be positive");
  auto key = std::make_pair(alpha, sigma);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  if (!coset_nonempty(sp_->group(), sigma))
    throw std::invalid_argument("sigma not in S^G");

  const int nb = (int)sp_->basis().size();
  UxCodes out;
  if (alpha == Ordinal::finite(1)) {
    // level 1: complements of saturated basis sets, split by satisfaction
    FinSet c = sigma.rng();
    uint64_t f1 = coding_function(*sp_, x_, sigma);
    std::vector<CodePtr> wc(nb), vc(nb);
    for (int l = 0; l < nb; ++l) {
      bool in = (f1 >> l) & 1;
      wc[l] = in ? make_pi(imp_code(c, l)) : mc_empty();
      vc[l] = in ? mc_empty() : imp_code(c, l);
    }
    out.w = make_ssucc(std::move(wc), mc_empty());
    out.v = make_ssucc(std::move(vc), mc_empty());
  } else if (alpha.is_successor()) {
    Ordinal beta = alpha.pred();
    FinSet d = sigma.dom(), c = sigma.rng();
    auto rho = rho_enumeration(sp_->window());
    std::vector<CodePtr> wc, vc;
    for (const FinSet& b : rho) {
      if (d.subset_of(b)) {
        std::vector<CodePtr> kids;
        for (const PartialBijection& s2 :
             extensions(sp_->group(), sigma, Side::Domain, b))
          kids.push_back(build(beta, s2).u);
        wc.push_back(make_pi(make_ssucc(std::move(kids), mc_empty())));
      } else {
        wc.push_back(mc_empty());
      }
      if (c.subset_of(b)) {
        std::vector<CodePtr> kids;
        for (const PartialBijection& s2 :
             extensions(sp_->group(), sigma, Side::Range, b))
          kids.push_back(build(beta, s2).u);
        vc.push_back(make_pi(make_ssucc(std::move(kids), mc_empty())));
      } else {
        vc.push_back(mc_empty());
      }
    }
    out.w = make_ssucc(std::move(wc), mc_empty());
    out.v = make_ssucc(std::move(vc), mc_empty());
  } else {
    // limit level: a step function whose pieces complement the lower codes;
    // past the space's fixed point the sets are constant, so the explicit
    // pieces stop there and the last one carries the tail
    if (stab_ == 0) {
      AlphaSetOracle oracle(*sp_);
      stab_ = oracle.table_fixpoint_level();
    }
    std::vector<std::pair<Ordinal, CodePtr>> pieces;
    for (int beta = 1; beta <= stab_; ++beta) {
      CodePtr ub = build(Ordinal::finite((uint32_t)beta), sigma).u;
      pieces.emplace_back(Ordinal::finite((uint32_t)(beta - 1)),
                          make_pi(make_ssucc({}, ub)));
    }
    out.w = make_slim(alpha, std::move(pieces));
    out.v = out.w;
  }
  out.u = meet(make_pi(out.w), make_pi(out.v));
  memo_.emplace(key, out);
  return out;
}

CodePtr build_ux(const EffectiveGSpace& sp, int x,
                 const PartialBijection& sigma, Ordinal alpha) {
  return UxBuilder(sp, x).build(alpha, sigma).u;
}

CodePtr build_wx(const EffectiveGSpace& sp, int x,
                 const PartialBijection& sigma, Ordinal alpha) {
  return UxBuilder(sp, x).build(alpha, sigma).w;
}

CodePtr build_vx(const EffectiveGSpace& sp, int x,
                 const PartialBijection& sigma, Ordinal alpha) {
  return UxBuilder(sp, x).build(alpha, sigma).v;
}

}  // namespace scott
