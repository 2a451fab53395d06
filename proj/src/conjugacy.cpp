#include "scott/conjugacy.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace scott {

namespace {

long long lcmll(long long a, long long b) { return a / std::gcd(a, b) * b; }

}  // namespace

CyclePermutation::CyclePermutation(std::vector<std::vector<int>> finite,
                                   std::vector<std::vector<int>> infinite)
    : fin_(std::move(finite)), inf_(std::move(infinite)) {
  std::set<int> seen;
  for (auto& cyc : fin_) {
    if (cyc.size() < 2)
      throw std::invalid_argument("finite cycle needs at least two points");
    // canonical rotation: least entry first
    auto mn = std::min_element(cyc.begin(), cyc.end());
    std::rotate(cyc.begin(), mn, cyc.end());
  }
  for (const auto& cyc : inf_)
    if (cyc.empty())
      throw std::invalid_argument("infinite cycle needs a window entry");
  for (const auto* group : {&fin_, &inf_})
    for (const auto& cyc : *group)
      for (int e : cyc) {
        if (e < 0 || e >= kFreshBase)
          throw std::invalid_argument("cycle entry out of range");
        if (!seen.insert(e).second)
          throw std::invalid_argument("cycles not disjoint");
      }
  std::sort(fin_.begin(), fin_.end());
  std::sort(inf_.begin(), inf_.end());
  if (inf_.size() * kFreshStride > (1 << 20))
    throw std::invalid_argument("too many infinite cycles");
}

CyclePermutation CyclePermutation::parse(const std::string& text) {
  std::vector<std::vector<int>> fin, inf;
  size_t pos = 0;
  auto ws = [&] {
    while (pos < text.size() && isspace((unsigned char)text[pos])) ++pos;
  };
  ws();
  bool any = false;
  while (pos < text.size()) {
    char open = text[pos];
    if (open != '(' && open != '[')
      throw std::invalid_argument("bad cycle text: " + text);
    char close = open == '(' ? ')' : ']';
    ++pos;
    std::vector<int> cyc;
    ws();
    while (pos < text.size() && text[pos] != close) {
      if (!isdigit((unsigned char)text[pos]))
        throw std::invalid_argument("bad cycle text: " + text);
      int v = 0;
      while (pos < text.size() && isdigit((unsigned char)text[pos]))
        v = v * 10 + (text[pos++] - '0');
      cyc.push_back(v);
      ws();
    }
    if (pos >= text.size())
      throw std::invalid_argument("unterminated cycle: " + text);
    ++pos;
    any = true;
    if (open == '(') {
      if (cyc.size() >= 2) fin.push_back(std::move(cyc));
      // "(5)" and "()" mean fixed points; nothing to record
    } else {
      inf.push_back(std::move(cyc));
    }
    ws();
  }
  if (!any) throw std::invalid_argument("empty cycle text");
  return CyclePermutation(std::move(fin), std::move(inf));
}

std::string CyclePermutation::format() const {
  if (fin_.empty() && inf_.empty()) return "()";
  std::string out;
  for (const auto& cyc : fin_) {
    out += '(';
    for (size_t i = 0; i < cyc.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(cyc[i]);
    }
    out += ')';
  }
  for (const auto& cyc : inf_) {
    out += '[';
    for (size_t i = 0; i < cyc.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(cyc[i]);
    }
    out += ']';
  }
  return out;
}

long long CyclePermutation::power(long long m, long long k) const {
  if (k >= kFreshBase) {
    // one of our own symbolic points (fresh ids are private per permutation)
    long long ci = (k - kFreshBase) / kFreshStride;
    long long z = (k - kFreshBase) % kFreshStride;
    if (ci >= (long long)inf_.size()) return k;
    long long r = (long long)inf_[ci].size();
    long long q = (z % 2 == 0) ? r + z / 2 : -1 - (z - 1) / 2;
    long long q2 = q + m;
    if (q2 >= 0 && q2 < r) return inf_[ci][q2];
    long long z2 = q2 >= r ? 2 * (q2 - r) : 2 * (-1 - q2) + 1;
    if (z2 >= kFreshStride)
      throw std::out_of_range("symbolic cycle offset too large");
    return kFreshBase + ci * kFreshStride + z2;
  }
  for (const auto& cyc : fin_) {
    auto it = std::find(cyc.begin(), cyc.end(), (int)k);
    if (it == cyc.end()) continue;
    long long L = (long long)cyc.size();
    long long p = it - cyc.begin();
    return cyc[((p + m) % L + L) % L];
  }
  for (size_t ci = 0; ci < inf_.size(); ++ci) {
    const auto& cyc = inf_[ci];
    auto it = std::find(cyc.begin(), cyc.end(), (int)k);
    if (it == cyc.end()) continue;
    long long r = (long long)cyc.size();
    long long q = (it - cyc.begin()) + m;
    if (q >= 0 && q < r) return cyc[q];
    long long z = q >= r ? 2 * (q - r) : 2 * (-1 - q) + 1;
    if (z >= kFreshStride)
      throw std::out_of_range("symbolic cycle offset too large");
    return kFreshBase + (long long)ci * kFreshStride + z;
  }
  return k;  // fixed point
}

bool CyclePermutation::mentions(long long k) const {
  for (const auto* group : {&fin_, &inf_})
    for (const auto& cyc : *group)
      if (std::find(cyc.begin(), cyc.end(), (int)k) != cyc.end()) return true;
  return false;
}

int CyclePermutation::max_mentioned() const {
  int mx = -1;
  for (const auto* group : {&fin_, &inf_})
    for (const auto& cyc : *group)
      for (int e : cyc) mx = std::max(mx, e);
  return mx;
}

CyclePermutation CyclePermutation::conjugate_by(const Perm& v) const {
  auto map_entry = [&](int e) { return e < v.degree() ? v(e) : e; };
  auto fin = fin_;
  auto inf = inf_;
  for (auto& cyc : fin)
    for (int& e : cyc) e = map_entry(e);
  for (auto& cyc : inf)
    for (int& e : cyc) e = map_entry(e);
  return CyclePermutation(std::move(fin), std::move(inf));
}

CycleType cycle_type(const CyclePermutation& f) {
  CycleType t;
  for (const auto& cyc : f.finite_cycles()) t.finite.insert((int)cyc.size());
  t.infinite = (int)f.infinite_cycles().size();
  return t;
}

std::string format_cycle_type(const CycleType& t) {
  std::string out;
  for (int L : t.finite) {
    if (!out.empty()) out += ',';
    out += std::to_string(L);
  }
  for (int i = 0; i < t.infinite; ++i) {
    if (!out.empty()) out += ',';
    out += "inf";
  }
  if (out.empty()) out = "id";
  return out + ";fix=cofinite";
}

bool is_conjugate(const CyclePermutation& f, const CyclePermutation& g) {
  return cycle_type(f) == cycle_type(g);
}

namespace {

// orbit length of k: (true, L) for a finite cycle or fixed point, (false,
// window extent) on an infinite cycle
std::pair<bool, long long> orbit_info(const CyclePermutation& f, int k) {
  for (const auto& cyc : f.finite_cycles())
    if (std::find(cyc.begin(), cyc.end(), k) != cyc.end())
      return {true, (long long)cyc.size()};
  for (const auto& cyc : f.infinite_cycles())
    if (std::find(cyc.begin(), cyc.end(), k) != cyc.end())
      return {false, (long long)cyc.size()};
  return {true, 1};
}

std::vector<long long> candidate_powers(const CyclePermutation& f,
                                        const CyclePermutation& g, int k,
                                        int csize) {
  auto [ffin, fl] = orbit_info(f, k);
  auto [gfin, gl] = orbit_info(g, k);
  std::vector<long long> ms;
  if (ffin && gfin) {
    long long M = lcmll(fl, gl);
    for (long long m = 0; m < M; ++m) ms.push_back(m);
  } else {
    long long B = fl + gl + csize + 2;
    for (long long m = -B; m <= B; ++m) ms.push_back(m);
  }
  return ms;
}

struct PinSet {
  std::map<long long, long long> fwd, rev;

  void pin(long long p, long long q) {
    auto it = fwd.find(p);
    if (it != fwd.end()) {
      if (it->second != q)
        throw std::logic_error("conjugator pinning conflict");
      return;
    }
    auto jt = rev.find(q);
    if (jt != rev.end())
      throw std::logic_error("conjugator injectivity conflict");
    fwd[p] = q;
    rev[q] = p;
  }
};

std::map<long long, long long> build_conjugator(const CyclePermutation& f,
                                                const CyclePermutation& g,
                                                const FinSet& c) {
  constexpr long long base = CyclePermutation::kFreshBase;
  PinSet h;
  for (int k : c.members())
    for (long long m : candidate_powers(f, g, k, c.size())) {
      long long p = f.power(m, k), q = g.power(m, k);
      if (p < base && q < base) h.pin(p, q);
    }
  // close under the conjugation law h(f(p)) = g(h(p)), both directions
  for (bool changed = true; changed;) {
    changed = false;
    auto snapshot = h.fwd;
    for (auto [p, q] : snapshot)
      for (long long dir : {1ll, -1ll}) {
        long long fp = f.power(dir, p), gq = g.power(dir, q);
        if (fp < base && gq < base && !h.fwd.count(fp)) {
          h.pin(fp, gq);
          changed = true;
        }
      }
  }

  auto unpinned_f = [&](const std::vector<int>& cyc) {
    for (int e : cyc)
      if (h.fwd.count(e)) return false;
    return true;
  };
  auto unpinned_g = [&](const std::vector<int>& cyc) {
    for (int e : cyc)
      if (h.rev.count(e)) return false;
    return true;
  };

  // leftover cycles matched by shape, least representatives first
  std::vector<std::vector<int>> fr, gr;
  for (const auto& cyc : f.finite_cycles())
    if (unpinned_f(cyc)) fr.push_back(cyc);
  for (const auto& cyc : g.finite_cycles())
    if (unpinned_g(cyc)) gr.push_back(cyc);
  auto shape = [](const std::vector<int>& a, const std::vector<int>& b) {
    return std::make_pair(a.size(), a) < std::make_pair(b.size(), b);
  };
  std::sort(fr.begin(), fr.end(), shape);
  std::sort(gr.begin(), gr.end(), shape);
  if (fr.size() != gr.size())
    throw std::logic_error("conjugator cycle matching failed");
  for (size_t i = 0; i < fr.size(); ++i) {
    if (fr[i].size() != gr[i].size())
      throw std::logic_error("conjugator cycle matching failed");
    for (size_t j = 0; j < fr[i].size(); ++j) h.pin(fr[i][j], gr[i][j]);
  }

  std::vector<std::vector<int>> fi, gi;
  for (const auto& cyc : f.infinite_cycles())
    if (unpinned_f(cyc)) fi.push_back(cyc);
  for (const auto& cyc : g.infinite_cycles())
    if (unpinned_g(cyc)) gi.push_back(cyc);
  if (fi.size() != gi.size())
    throw std::logic_error("conjugator cycle matching failed");
  for (size_t i = 0; i < fi.size(); ++i)
    for (size_t j = 0; j < std::min(fi[i].size(), gi[i].size()); ++j)
      h.pin(fi[i][j], gi[i][j]);

  // mentioned fixed points: keep identity where possible, then match sorted
  std::set<long long> universe;
  for (const auto& p : {&f, &g})
    for (const auto* group : {&p->finite_cycles(), &p->infinite_cycles()})
      for (const auto& cyc : *group)
        for (int e : cyc) universe.insert(e);
  for (int k : c.members()) universe.insert(k);
  std::vector<long long> pfree, qfree;
  for (long long p : universe) {
    bool f_fixed = !f.mentions(p);
    bool g_fixed = !g.mentions(p);
    if (f_fixed && !h.fwd.count(p)) pfree.push_back(p);
    if (g_fixed && !h.rev.count(p)) qfree.push_back(p);
  }
  std::vector<long long> prest, qrest;
  std::set<long long> qtaken;
  for (long long p : pfree) {
    if (std::find(qfree.begin(), qfree.end(), p) != qfree.end() &&
        !qtaken.count(p)) {
      h.pin(p, p);
      qtaken.insert(p);
    } else {
      prest.push_back(p);
    }
  }
  for (long long q : qfree)
    if (!qtaken.count(q) && !h.rev.count(q)) qrest.push_back(q);
  for (size_t i = 0; i < prest.size() && i < qrest.size(); ++i)
    h.pin(prest[i], qrest[i]);
  // any leftover f-fixed point would map into the fresh region; it stays
  // implicit

  // verification on everything representable
  for (auto [p, q] : h.fwd) {
    long long fp = f.apply(p), gq = g.apply(q);
    if (fp < base) {
      auto it = h.fwd.find(fp);
      if (it != h.fwd.end() && gq < base && it->second != gq)
        throw std::logic_error("conjugator fails the conjugation law");
    }
  }
  for (int k : c.members())
    if (h.fwd.count(k) && h.fwd.at(k) != k)
      throw std::logic_error("conjugator moves a point of c");
  return h.fwd;
}

}  // namespace

DisjointnessResult cosets_disjoint(const CyclePermutation& f,
                                   const CyclePermutation& g,
                                   const FinSet& c) {
  if (!is_conjugate(f, g))
    throw std::invalid_argument("inputs are not conjugate");
  for (int k : c.members())
    for (long long m : candidate_powers(f, g, k, c.size())) {
      long long fm = f.power(m, k), gm = g.power(m, k);
      bool fin_c = fm >= 0 && fm < 64 && c.contains((int)fm);
      bool gin_c = gm >= 0 && gm < 64 && c.contains((int)gm);
      if ((fin_c || gin_c) && fm != gm) {
        DisjointnessResult r;
        r.disjoint = true;
        r.k = k;
        r.m = m;
        return r;
      }
    }
  DisjointnessResult r;
  r.disjoint = false;
  r.conjugator = build_conjugator(f, g, c);
  return r;
}

bool SeparatingOpenSet::contains(const CyclePermutation& p) const {
  long long cur = k;
  for (long long i = 1; i <= m; ++i) {
    cur = p.apply(cur);
    if (i < m && (cur == k || cur == l)) return false;
  }
  return cur == l;
}

SeparatingOpenSet separating_open_set(const CyclePermutation& f,
                                      const CyclePermutation& g,
                                      const FinSet& c) {
  DisjointnessResult r = cosets_disjoint(f, g, c);
  if (!r.disjoint)
    throw std::invalid_argument("cosets are not disjoint");
  long long fm = f.power(r.m, r.k), gm = g.power(r.m, r.k);
  bool fside = fm >= 0 && fm < 64 && c.contains((int)fm);
  const CyclePermutation& s = fside ? f : g;
  long long k = r.k, l = fside ? fm : gm, m = r.m;
  if (m < 0) {
    std::swap(k, l);
    m = -m;
  }
  // shortest chain keeps the intermediate points clear of {k, l}
  for (long long m0 = 1; m0 < m; ++m0)
    if (s.power(m0, k) == l) {
      m = m0;
      break;
    }
  SeparatingOpenSet out;
  out.k = (int)k;
  out.l = (int)l;
  out.m = m;
  out.open_contains_f = fside;
  return out;
}

SeparationReport rank_one_separation_check(
    const std::vector<std::pair<CyclePermutation, CyclePermutation>>& sample,
    int c_window) {
  SeparationReport rep;
  rep.pairs_examined = (int)sample.size();
  for (const auto& [f, g] : sample) {
    if (!is_conjugate(f, g)) {
      rep.lines.push_back("pair f=" + f.format() + " g=" + g.format() +
                          ": not conjugate, skipped");
      continue;
    }
    int wv = std::min(std::max({f.max_mentioned(), g.max_mentioned(),
                                c_window - 1}) +
                          2,
                      7);
    for (const FinSet& c : rho_enumeration(c_window)) {
      DisjointnessResult r = cosets_disjoint(f, g, c);
      if (!r.disjoint) continue;
      ++rep.disjoint_cases;
      SeparatingOpenSet sep = separating_open_set(f, g, c);
      bool ok = true;
      for (const Perm& v :
           coset_elements(GroupPresentation::symmetric(wv),
                          PartialBijection::identity_on(c))) {
        if (sep.contains(f.conjugate_by(v)) != sep.open_contains_f) ok = false;
        if (sep.contains(g.conjugate_by(v)) == sep.open_contains_f) ok = false;
      }
      if (ok) ++rep.separated;
      rep.lines.push_back(
          "f=" + f.format() + " g=" + g.format() + " c=" + format_finset(c) +
          ": k=" + std::to_string(sep.k) + " l=" + std::to_string(sep.l) +
          " m=" + std::to_string(sep.m) +
          (sep.open_contains_f ? " open" : " closed-complement") +
          (ok ? " verified" : " FAILED"));
    }
  }
  return rep;
}

}  // namespace scott
