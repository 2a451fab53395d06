#include "scott/perm.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>

namespace scott {

std::string format_finset(const FinSet& s) {
  if (s.empty()) return "-";
  std::string out;
  for (int k : s.members()) {
    if (!out.empty()) out += ',';
    out += std::to_string(k);
  }
  return out;
}

FinSet parse_finset(const std::string& text) {
  FinSet s;
  if (text == "-" || text.empty()) return s;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t pos = 0;
    int k = std::stoi(item, &pos);
    if (pos != item.size() || k < 0 || k >= 64)
      throw std::invalid_argument("bad finite-set literal: " + text);
    s.insert(k);
  }
  return s;
}

Perm::Perm(std::vector<int> img) : img_(std::move(img)) {
  std::vector<bool> seen(img_.size(), false);
  for (int v : img_) {
    if (v < 0 || v >= (int)img_.size() || seen[v])
      throw std::invalid_argument("not a permutation");
    seen[v] = true;
  }
}

Perm Perm::inverse() const {
  std::vector<int> inv(img_.size());
  for (int i = 0; i < (int)img_.size(); ++i) inv[img_[i]] = i;
  return Perm(std::move(inv));
}

bool Perm::is_identity() const {
  for (int i = 0; i < (int)img_.size(); ++i)
    if (img_[i] != i) return false;
  return true;
}

Perm compose(const Perm& f, const Perm& g) {
  assert(f.degree() == g.degree());
  std::vector<int> img(f.degree());
  for (int i = 0; i < f.degree(); ++i) img[i] = f(g(i));
  return Perm(std::move(img));
}

std::string format_cycles(const Perm& p) {
  std::string out;
  std::vector<bool> done(p.degree(), false);
  for (int i = 0; i < p.degree(); ++i) {
    if (done[i] || p(i) == i) continue;
    out += '(';
    int j = i;
    bool first = true;
    do {
      if (!first) out += ' ';
      first = false;
      out += std::to_string(j);
      done[j] = true;
      j = p(j);
    } while (j != i);
    out += ')';
  }
  return out.empty() ? "()" : out;
}

Perm parse_cycles(const std::string& text, int window) {
  std::vector<int> img(window);
  for (int i = 0; i < window; ++i) img[i] = i;
  size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && isspace((unsigned char)text[pos])) ++pos;
  };
  skip_ws();
  bool any = false;
  while (pos < text.size()) {
    if (text[pos] != '(')
      throw std::invalid_argument("bad cycle notation: " + text);
    ++pos;
    std::vector<int> cyc;
    skip_ws();
    while (pos < text.size() && text[pos] != ')') {
      if (!isdigit((unsigned char)text[pos]))
        throw std::invalid_argument("bad cycle notation: " + text);
      int v = 0;
      while (pos < text.size() && isdigit((unsigned char)text[pos]))
        v = v * 10 + (text[pos++] - '0');
      if (v >= window)
        throw std::invalid_argument("cycle entry outside window: " + text);
      cyc.push_back(v);
      skip_ws();
    }
    if (pos >= text.size())
      throw std::invalid_argument("unterminated cycle: " + text);
    ++pos;  // ')'
    for (size_t i = 0; i < cyc.size(); ++i) {
      int from = cyc[i], to = cyc[(i + 1) % cyc.size()];
      if (cyc.size() > 1 && img[from] != from)
        throw std::invalid_argument("cycles not disjoint: " + text);
      if (cyc.size() > 1) img[from] = to;
    }
    any = true;
    skip_ws();
  }
  if (!any) throw std::invalid_argument("empty cycle notation");
  return Perm(std::move(img));
}

PartialBijection::PartialBijection(std::vector<std::pair<int, int>> pairs)
    : pairs_(std::move(pairs)) {
  std::sort(pairs_.begin(), pairs_.end());
  for (auto [a, b] : pairs_) {
    if (a < 0 || a >= 64 || b < 0 || b >= 64)
      throw std::invalid_argument("partial bijection entry out of range");
    if (dom_.contains(a) || rng_.contains(b))
      throw std::invalid_argument("partial bijection not injective");
    dom_.insert(a);
    rng_.insert(b);
  }
}

PartialBijection PartialBijection::identity_on(const FinSet& d) {
  std::vector<std::pair<int, int>> ps;
  for (int k : d.members()) ps.emplace_back(k, k);
  return PartialBijection(std::move(ps));
}

PartialBijection PartialBijection::restriction(const Perm& g, const FinSet& d) {
  std::vector<std::pair<int, int>> ps;
  for (int k : d.members()) ps.emplace_back(k, g(k));
  return PartialBijection(std::move(ps));
}

int PartialBijection::apply(int k) const {
  for (auto [a, b] : pairs_)
    if (a == k) return b;
  throw std::out_of_range("point not in domain of partial bijection");
}

bool PartialBijection::extends(const PartialBijection& o) const {
  if (!o.dom_.subset_of(dom_)) return false;
  for (auto [a, b] : o.pairs_)
    if (apply(a) != b) return false;
  return true;
}

bool PartialBijection::within(int window) const {
  if (pairs_.empty()) return true;
  FinSet w = FinSet::segment(window);
  return dom_.subset_of(w) && rng_.subset_of(w);
}

bool PartialBijection::restricts(const Perm& g) const {
  for (auto [a, b] : pairs_)
    if (a >= g.degree() || g(a) != b) return false;
  return true;
}

PartialBijection PartialBijection::inverse() const {
  std::vector<std::pair<int, int>> ps;
  for (auto [a, b] : pairs_) ps.emplace_back(b, a);
  return PartialBijection(std::move(ps));
}

std::string format_pb(const PartialBijection& s) {
  if (s.empty()) return "-";
  std::string out;
  for (auto [a, b] : s.pairs()) {
    if (!out.empty()) out += ',';
    out += std::to_string(a) + ">" + std::to_string(b);
  }
  return out;
}

PartialBijection parse_pb(const std::string& text) {
  if (text == "-" || text.empty()) return PartialBijection();
  std::vector<std::pair<int, int>> ps;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t gt = item.find('>');
    if (gt == std::string::npos)
      throw std::invalid_argument("bad partial-bijection literal: " + text);
    size_t p1 = 0, p2 = 0;
    int a = std::stoi(item.substr(0, gt), &p1);
    int b = std::stoi(item.substr(gt + 1), &p2);
    if (p1 != gt || p2 != item.size() - gt - 1)
      throw std::invalid_argument("bad partial-bijection literal: " + text);
    ps.emplace_back(a, b);
  }
  return PartialBijection(std::move(ps));
}

PartialBijection compose_right(const PartialBijection& sigma, const Perm& f) {
  std::vector<std::pair<int, int>> ps;
  for (int k = 0; k < f.degree(); ++k)
    if (sigma.maps(f(k))) ps.emplace_back(k, sigma.apply(f(k)));
  return PartialBijection(std::move(ps));
}

PartialBijection compose_left(const Perm& f, const PartialBijection& sigma) {
  std::vector<std::pair<int, int>> ps;
  for (auto [a, b] : sigma.pairs()) ps.emplace_back(a, f(b));
  return PartialBijection(std::move(ps));
}

GroupPresentation::GroupPresentation(int window, std::vector<Perm> generators)
    : window_(window), gens_(std::move(generators)) {
  if (window < 1 || window > kMaxWindow)
    throw std::invalid_argument("window out of range");
  for (const Perm& g : gens_)
    if (g.degree() != window)
      throw std::invalid_argument("generator degree does not match window");
}

GroupPresentation::GroupPresentation(int window, std::vector<Perm> gens,
                                     std::vector<Perm> elems)
    : GroupPresentation(window, std::move(gens)) {
  elems_ = std::make_shared<const std::vector<Perm>>(std::move(elems));
}

const std::vector<Perm>& GroupPresentation::elements() const {
  {
    std::lock_guard<std::mutex> lk(mu_);
    if (elems_) return *elems_;
    std::set<Perm> closed{Perm::identity(window_)};
    std::vector<Perm> frontier(closed.begin(), closed.end());
    while (!frontier.empty()) {
      std::vector<Perm> next;
      for (const Perm& e : frontier)
        for (const Perm& g : gens_) {
          Perm p = compose(g, e);
          if (closed.insert(p).second) next.push_back(std::move(p));
        }
      frontier = std::move(next);
      if (closed.size() > kMaxGroupOrder)
        throw std::runtime_error("group too large to enumerate");
    }
    elems_ = std::make_shared<const std::vector<Perm>>(closed.begin(),
                                                       closed.end());
  }
  return *elems_;
}

GroupPresentation GroupPresentation::symmetric(int window) {
  std::vector<Perm> gens;
  for (int i = 0; i + 1 < window; ++i) {
    std::vector<int> img(window);
    for (int j = 0; j < window; ++j) img[j] = j;
    std::swap(img[i], img[i + 1]);
    gens.emplace_back(std::move(img));
  }
  return GroupPresentation(window, std::move(gens));
}

GroupPresentation GroupPresentation::trivial(int window) {
  return GroupPresentation(window, {});
}

bool coset_nonempty(const GroupPresentation& G, const PartialBijection& sigma) {
  if (!sigma.within(G.window()))
    throw std::invalid_argument("partial bijection outside window");
  for (const Perm& g : G.elements())
    if (sigma.restricts(g)) return true;
  return false;
}

std::vector<Perm> coset_elements(const GroupPresentation& G,
                                 const PartialBijection& sigma) {
  if (!sigma.within(G.window()))
    throw std::invalid_argument("partial bijection outside window");
  std::vector<Perm> out;
  for (const Perm& g : G.elements())
    if (sigma.restricts(g)) out.push_back(g);
  return out;
}

std::vector<PartialBijection> extensions(const GroupPresentation& G,
                                         const PartialBijection& sigma,
                                         Side side, const FinSet& target) {
  const FinSet have = side == Side::Domain ? sigma.dom() : sigma.rng();
  if (!have.subset_of(target))
    throw std::invalid_argument("extension target does not cover sigma");
  std::set<PartialBijection> out;
  for (const Perm& g : G.elements()) {
    if (!sigma.restricts(g)) continue;
    if (side == Side::Domain) {
      out.insert(PartialBijection::restriction(g, target));
    } else {
      out.insert(PartialBijection::restriction(g.inverse(), target).inverse());
    }
  }
  return {out.begin(), out.end()};
}

GroupPresentation pointwise_stabilizer(const GroupPresentation& G,
                                       const FinSet& d) {
  std::vector<Perm> sub;
  PartialBijection id_d = PartialBijection::identity_on(d);
  for (const Perm& g : G.elements())
    if (id_d.restricts(g)) sub.push_back(g);
  // the filtered list is already the whole (sorted) subgroup
  return GroupPresentation(G.window(), sub, sub);
}

std::vector<PartialBijection> sg_enumeration(const GroupPresentation& G) {
  std::set<PartialBijection> all;
  const auto doms = rho_enumeration(G.window());
  for (const Perm& g : G.elements())
    for (const FinSet& d : doms) all.insert(PartialBijection::restriction(g, d));
  std::vector<PartialBijection> out(all.begin(), all.end());
  std::stable_sort(out.begin(), out.end(),
                   [](const PartialBijection& a, const PartialBijection& b) {
                     if (a.size() != b.size()) return a.size() < b.size();
                     return a < b;
                   });
  return out;
}

std::vector<FinSet> rho_enumeration(int window) {
  std::vector<FinSet> out;
  for (uint64_t m = 0; m < (uint64_t(1) << window); ++m) out.push_back({m});
  std::stable_sort(out.begin(), out.end(), [](const FinSet& a, const FinSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.members() < b.members();
  });
  return out;
}

}  // namespace scott
