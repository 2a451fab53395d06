#include "scott/alphasets.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace scott {

namespace {

// interns variable-length int32 keys; ids are assigned in call order, so the
// caller's iteration order fixes the numbering
struct KeyInterner {
  std::vector<int32_t> arena;
  std::vector<std::pair<uint32_t, uint32_t>> spans;  // per id: offset, length
  std::unordered_map<uint64_t, std::vector<int32_t>> buckets;

  static uint64_t hash(const int32_t* d, int len) {
    uint64_t h = 1469598103934665603ull;
    for (int i = 0; i < len; ++i) {
      h ^= (uint32_t)d[i];
      h *= 1099511628211ull;
    }
    return h ^ (uint64_t)len;
  }

  int32_t intern(const int32_t* d, int len) {
    uint64_t h = hash(d, len);
    auto& bucket = buckets[h];
    for (int32_t id : bucket) {
      auto [off, l] = spans[id];
      if ((int)l == len && std::memcmp(arena.data() + off, d, len * 4) == 0)
        return id;
    }
    int32_t id = (int32_t)spans.size();
    spans.emplace_back((uint32_t)arena.size(), (uint32_t)len);
    arena.insert(arena.end(), d, d + len);
    bucket.push_back(id);
    return id;
  }
};

}  // namespace

RefinementTrace::RefinementTrace(const EffectiveGSpace& sp) : sp_(&sp) {
  sigmas_ = sg_enumeration(sp.group());
  for (size_t i = 0; i < sigmas_.size(); ++i) sigma_idx_[sigmas_[i]] = (int)i;

  const auto& elems = sp.group().elements();
  coset_gi_.resize(sigmas_.size());
  for (size_t si = 0; si < sigmas_.size(); ++si)
    for (size_t gi = 0; gi < elems.size(); ++gi)
      if (sigmas_[si].restricts(elems[gi])) coset_gi_[si].push_back((int)gi);

  const int W = sp.window();
  range_ext_.assign(sigmas_.size(), std::vector<std::vector<int>>(W + 1));
  for (size_t si = 0; si < sigmas_.size(); ++si) {
    const PartialBijection& sig = sigmas_[si];
    FinSet rng = sig.rng();
    int n = rng.empty() ? 0 : rng.max_element() + 1;
    if (rng != FinSet::segment(n)) continue;  // range not an initial segment
    auto doms = sig.dom().members();
    for (uint32_t dm = 0; dm < (1u << doms.size()); ++dm) {
      std::vector<std::pair<int, int>> ps;
      for (size_t i = 0; i < doms.size(); ++i)
        if ((dm >> i) & 1) ps.emplace_back(doms[i], sig.apply(doms[i]));
      range_ext_[sigma_idx_.at(PartialBijection(std::move(ps)))][n].push_back(
          (int)si);
    }
  }

  point_basis_mask_.assign(sp.npoints(), 0);
  for (size_t l = 0; l < sp.basis().size(); ++l)
    for (int p = 0; p < sp.npoints(); ++p)
      if (sp.basis()[l].members.test(p))
        point_basis_mask_[p] |= uint64_t(1) << l;

  compute_level1();
}

void RefinementTrace::compute_level1() {
  const int np = sp_->npoints();
  KeyInterner interner;
  std::vector<int32_t> level((size_t)sigmas_.size() * np);
  for (size_t si = 0; si < sigmas_.size(); ++si) {
    int32_t rngm = (int32_t)sigmas_[si].rng().mask;
    for (int x = 0; x < np; ++x) {
      uint64_t sat = 0;
      for (int gi : coset_gi_[si])
        sat |= point_basis_mask_[sp_->act(gi, x)];
      int32_t key[3] = {rngm, (int32_t)(sat & 0xffffffff),
                        (int32_t)(sat >> 32)};
      int32_t id = interner.intern(key, 3);
      if (id == (int32_t)l1_satset_of_id_.size()) l1_satset_of_id_.push_back(sat);
      level[si * np + x] = id;
    }
  }
  labels_.push_back(std::move(level));
  class_counts_.push_back((int)interner.spans.size());
}

int RefinementTrace::sigma_index(const PartialBijection& sigma) const {
  auto it = sigma_idx_.find(sigma);
  if (it == sigma_idx_.end())
    throw std::invalid_argument("sigma not in S^G");
  return it->second;
}

void RefinementTrace::refine_step(int jobs) {
  const int np = sp_->npoints();
  const int W = sp_->window();
  const std::vector<int32_t>& prev = labels_.back();
  KeyInterner interner;
  std::vector<int32_t> level((size_t)sigmas_.size() * np);
  std::vector<int32_t> flat;
  std::vector<int> lens(np);
#ifdef _OPENMP
  if (jobs < 1) jobs = omp_get_max_threads();
#else
  (void)jobs;
#endif
  for (size_t si = 0; si < sigmas_.size(); ++si) {
    FinSet rng = sigmas_[si].rng();
    int nmin = rng.empty() ? 0 : rng.max_element() + 1;
    int maxlen = 1 + (W - nmin + 1);  // prev label + one separator per section
    for (int n = nmin; n <= W; ++n) maxlen += (int)range_ext_[si][n].size();
    flat.resize((size_t)np * maxlen);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(jobs)
#endif
    for (int x = 0; x < np; ++x) {
      int32_t* key = flat.data() + (size_t)x * maxlen;
      int len = 0;
      key[len++] = prev[si * np + x];
      for (int n = nmin; n <= W; ++n) {
        int start = len;
        for (int sj : range_ext_[si][n])
          key[len++] = prev[(size_t)sj * np + x];
        std::sort(key + start, key + len);
        len = (int)(std::unique(key + start, key + len) - key);
        key[len++] = -1;  // section separator keeps windows distinguishable
      }
      lens[x] = len;
    }
    for (int x = 0; x < np; ++x)
      level[si * np + x] =
          interner.intern(flat.data() + (size_t)x * maxlen, lens[x]);
  }
  labels_.push_back(std::move(level));
  class_counts_.push_back((int)interner.spans.size());
}

void RefinementTrace::refine_step_serial() {
  const int np = sp_->npoints();
  const int W = sp_->window();
  const std::vector<int32_t>& prev = labels_.back();
  std::map<std::vector<int32_t>, int32_t> interned;
  std::vector<int32_t> level((size_t)sigmas_.size() * np);
  for (size_t si = 0; si < sigmas_.size(); ++si) {
    FinSet rng = sigmas_[si].rng();
    int nmin = rng.empty() ? 0 : rng.max_element() + 1;
    for (int x = 0; x < np; ++x) {
      std::vector<int32_t> key{prev[si * np + x]};
      for (int n = nmin; n <= W; ++n) {
        std::vector<int32_t> part;
        for (int sj : range_ext_[si][n])
          part.push_back(prev[(size_t)sj * np + x]);
        std::sort(part.begin(), part.end());
        part.erase(std::unique(part.begin(), part.end()), part.end());
        key.insert(key.end(), part.begin(), part.end());
        key.push_back(-1);
      }
      auto it = interned.try_emplace(std::move(key), (int32_t)interned.size())
                    .first;
      level[si * np + x] = it->second;
    }
  }
  labels_.push_back(std::move(level));
  class_counts_.push_back((int)interned.size());
}

void RefinementTrace::run_to_stabilization(int jobs) {
  if (stab_ > 0) return;
  const size_t npairs = sigmas_.size() * (size_t)sp_->npoints();
  while (true) {
    if (levels() >= 2 &&
        class_counts_[levels() - 1] == class_counts_[levels() - 2]) {
      stab_ = levels() - 1;
      return;
    }
    if ((size_t)levels() > npairs + 2)
      throw std::logic_error("refinement failed to stabilize");
    refine_step(jobs);
  }
}

Ordinal RefinementTrace::stabilization_level() const {
  if (stab_ == 0) throw std::logic_error("trace not stabilized yet");
  return Ordinal::finite((uint32_t)stab_);
}

AlphaLabel RefinementTrace::label(int level, int point,
                                  const PartialBijection& sigma) const {
  int si = sigma_index(sigma);
  int32_t id = label_id(level, point, si);
  uint64_t key = level == 1 ? l1_satset_of_id_[id] : (uint64_t)id;
  return AlphaLabel{Ordinal::finite((uint32_t)level), sigma.rng(), key};
}

int RefinementTrace::effective_level(Ordinal alpha) const {
  if (alpha.is_zero()) throw std::invalid_argument("level must be positive");
  if (alpha.omega > 0) {
    if (stab_ == 0) throw std::logic_error("limit level needs a stabilized trace");
    return stab_;
  }
  int a = (int)alpha.fin;
  if (a <= levels()) return a;
  if (stab_ == 0) throw std::logic_error("level beyond computed trace");
  return stab_;
}

AlphaLabel b1_label(const EffectiveGSpace& sp, int x,
                    const PartialBijection& sigma) {
  if (!coset_nonempty(sp.group(), sigma))
    throw std::invalid_argument("sigma not in S^G");
  return AlphaLabel{Ordinal::finite(1), sigma.rng(),
                    coding_function(sp, x, sigma)};
}

RefinementTrace stabilization(const EffectiveGSpace& sp, int jobs) {
  RefinementTrace tr(sp);
  tr.run_to_stabilization(jobs);
  return tr;
}

Ordinal gamma_star(const RefinementTrace& tr, int x) {
  if (!tr.stabilized()) throw std::logic_error("trace not stabilized");
  const int stab = (int)tr.stabilization_level().fin;
  const auto& sigmas = tr.sigmas();
  std::map<FinSet, std::vector<int>> by_rng;
  for (size_t i = 0; i < sigmas.size(); ++i)
    by_rng[sigmas[i].rng()].push_back((int)i);
  int gamma = 1;
  for (const auto& [rng, idxs] : by_rng)
    for (size_t i = 0; i < idxs.size(); ++i)
      for (size_t j = i + 1; j < idxs.size(); ++j) {
        if (tr.label_id(stab, x, idxs[i]) == tr.label_id(stab, x, idxs[j]))
          continue;
        int first = 1;
        while (tr.label_id(first, x, idxs[i]) == tr.label_id(first, x, idxs[j]))
          ++first;
        gamma = std::max(gamma, first);
      }
  return Ordinal::finite((uint32_t)gamma);
}

Bitset label_class(const RefinementTrace& tr, int level, int x,
                   const PartialBijection& sigma) {
  int si = tr.sigma_index(sigma);
  int ci = tr.sigma_index(PartialBijection::identity_on(sigma.rng()));
  int32_t target = tr.label_id(level, x, si);
  Bitset out(tr.space().npoints());
  for (int y = 0; y < tr.space().npoints(); ++y)
    if (tr.label_id(level, y, ci) == target) out.set(y);
  return out;
}

Bitset orbit_via_labels(const RefinementTrace& tr, int x) {
  Ordinal g = gamma_star(tr, x);
  int level = tr.effective_level(Ordinal::finite(g.fin + 2));
  return label_class(tr, level, x, PartialBijection());
}

Bitset coset_set_via_labels(const RefinementTrace& tr, int x,
                            const PartialBijection& sigma) {
  int si = tr.sigma_index(sigma);  // throws when sigma has no coset
  (void)si;
  Ordinal g = gamma_star(tr, x);
  int level = tr.effective_level(Ordinal::finite(g.fin + 2));
  return label_class(tr, level, x, sigma);
}

bool same_alpha_class(const RefinementTrace& tr, int x,
                      const PartialBijection& sigma, int y,
                      const PartialBijection& delta, Ordinal alpha) {
  if (sigma.rng() != delta.rng())
    throw std::invalid_argument("alpha-class comparison needs equal ranges");
  int level = tr.effective_level(alpha);
  return tr.label_id(level, x, tr.sigma_index(sigma)) ==
         tr.label_id(level, y, tr.sigma_index(delta));
}

}  // namespace scott
