#include <algorithm>
#include <stdexcept>

#include "scott/alphasets.hpp"

namespace scott {

AlphaSetOracle::AlphaSetOracle(const EffectiveGSpace& sp) : sp_(&sp) {
  if (sp.npoints() > 1024)
    throw std::invalid_argument("oracle capacity exceeded (1024 points)");
  sigmas_ = sg_enumeration(sp.group());
  for (size_t i = 0; i < sigmas_.size(); ++i) sigma_idx_[sigmas_[i]] = (int)i;
}

const std::vector<Bitset>& AlphaSetOracle::table(int level) {
  const int np = sp_->npoints();
  while ((int)tables_.size() < level && fix_ == 0) {
    if (tables_.empty()) {
      // level 1: two-sided intersection over basis sets and their
      // V_c-saturations
      std::vector<Bitset> t((size_t)sigmas_.size() * np);
      std::map<FinSet, std::vector<Bitset>> sat_cache;
      for (size_t si = 0; si < sigmas_.size(); ++si) {
        FinSet c = sigmas_[si].rng();
        auto it = sat_cache.find(c);
        if (it == sat_cache.end()) {
          std::vector<Bitset> sats;
          auto vc = pointwise_stabilizer(sp_->group(), c).elements();
          for (const BasicSet& A : sp_->basis())
            sats.push_back(saturate(*sp_, vc, A.members));
          it = sat_cache.emplace(c, std::move(sats)).first;
        }
        for (int x = 0; x < np; ++x) {
          Bitset orb = vaught_orbit(*sp_, sigmas_[si], x);
          Bitset b = Bitset::all(np);
          for (size_t l = 0; l < sp_->basis().size(); ++l)
            b &= orb.intersects(sp_->basis()[l].members)
                     ? it->second[l]
                     : it->second[l].complement();
          t[si * np + x] = std::move(b);
        }
      }
      tables_.push_back(std::move(t));
      continue;
    }
    // successor step: both the domain-side and range-side intersections of
    // extension unions, over all window subsets covering dom/rng
    const int W = sp_->window();
    std::vector<std::vector<std::vector<int>>> dom_ext(
        sigmas_.size(), std::vector<std::vector<int>>(1 << W));
    auto rng_ext = dom_ext;
    for (size_t sj = 0; sj < sigmas_.size(); ++sj) {
      auto doms = sigmas_[sj].dom().members();
      for (uint32_t dm = 0; dm < (1u << doms.size()); ++dm) {
        std::vector<std::pair<int, int>> ps;
        for (size_t i = 0; i < doms.size(); ++i)
          if ((dm >> i) & 1) ps.emplace_back(doms[i], sigmas_[sj].apply(doms[i]));
        int si = sigma_idx_.at(PartialBijection(std::move(ps)));
        dom_ext[si][sigmas_[sj].dom().mask].push_back((int)sj);
        rng_ext[si][sigmas_[sj].rng().mask].push_back((int)sj);
      }
    }
    const std::vector<Bitset>& prev = tables_.back();
    std::vector<Bitset> t((size_t)sigmas_.size() * np);
    for (size_t si = 0; si < sigmas_.size(); ++si) {
      uint64_t d = sigmas_[si].dom().mask, c = sigmas_[si].rng().mask;
      for (int x = 0; x < np; ++x) {
        Bitset b = Bitset::all(np);
        for (uint64_t m = 0; m < (1u << W); ++m) {
          if ((m & d) == d && !dom_ext[si][m].empty()) {
            Bitset u(np);
            for (int sj : dom_ext[si][m]) u |= prev[(size_t)sj * np + x];
            b &= u;
          }
          if ((m & c) == c && !rng_ext[si][m].empty()) {
            Bitset u(np);
            for (int sj : rng_ext[si][m]) u |= prev[(size_t)sj * np + x];
            b &= u;
          }
        }
        t[si * np + x] = std::move(b);
      }
    }
    if (t == tables_.back()) {
      fix_ = (int)tables_.size();
      break;
    }
    tables_.push_back(std::move(t));
  }
  return tables_[std::min((size_t)level, tables_.size()) - 1];
}

int AlphaSetOracle::table_fixpoint_level() {
  while (fix_ == 0) table((int)tables_.size() + 1);
  return fix_;
}

Bitset AlphaSetOracle::set(int x, const PartialBijection& sigma,
                           Ordinal alpha) {
  auto it = sigma_idx_.find(sigma);
  if (it == sigma_idx_.end())
    throw std::invalid_argument("sigma not in S^G");
  if (alpha.is_zero()) throw std::invalid_argument("level must be positive");
  int level;
  if (alpha.omega > 0) {
    // the limit-clause intersection collapses onto the table fixed point;
    // successor steps past it change nothing
    level = table_fixpoint_level();
  } else {
    level = (int)alpha.fin;
  }
  const auto& t = table(level);
  return t[(size_t)it->second * sp_->npoints() + x];
}

Bitset alpha_set_oracle(const EffectiveGSpace& sp, int x,
                        const PartialBijection& sigma, Ordinal alpha) {
  AlphaSetOracle o(sp);
  return o.set(x, sigma, alpha);
}

}  // namespace scott
