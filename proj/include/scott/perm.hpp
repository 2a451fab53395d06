#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace scott {

constexpr int kMaxWindow = 8;
constexpr size_t kMaxGroupOrder = 40320;

// Finite set of naturals below the window, kept as a bit mask.
struct FinSet {
  uint64_t mask = 0;

  static FinSet of(std::initializer_list<int> xs) {
    FinSet s;
    for (int x : xs) s.insert(x);
    return s;
  }
  static FinSet segment(int n) {  // {0, ..., n-1}
    FinSet s;
    s.mask = n >= 64 ? ~uint64_t(0) : (uint64_t(1) << n) - 1;
    return s;
  }

  bool contains(int k) const { return (mask >> k) & 1u; }
  void insert(int k) { mask |= uint64_t(1) << k; }
  bool subset_of(const FinSet& o) const { return (mask & ~o.mask) == 0; }
  bool empty() const { return mask == 0; }
  int size() const { return __builtin_popcountll(mask); }
  int max_element() const {
    if (empty()) throw std::logic_error("max of empty FinSet");
    return 63 - __builtin_clzll(mask);
  }
  std::vector<int> members() const {
    std::vector<int> m;
    for (uint64_t w = mask; w; w &= w - 1) m.push_back(__builtin_ctzll(w));
    return m;
  }

  auto operator<=>(const FinSet&) const = default;
};

std::string format_finset(const FinSet& s);     // "0,2" or "-"
FinSet parse_finset(const std::string& text);

// Total permutation of {0, ..., window-1}.
class Perm {
 public:
  Perm() = default;
  static Perm identity(int window) {
    Perm p;
    p.img_.resize(window);
    for (int i = 0; i < window; ++i) p.img_[i] = i;
    return p;
  }
  explicit Perm(std::vector<int> img);

  int degree() const { return (int)img_.size(); }
  int operator()(int k) const { return img_[k]; }
  Perm inverse() const;
  bool is_identity() const;
  const std::vector<int>& image() const { return img_; }

  auto operator<=>(const Perm&) const = default;

 private:
  std::vector<int> img_;
};

// f then-applied-after g: (compose(f,g))(k) = f(g(k)).
Perm compose(const Perm& f, const Perm& g);

std::string format_cycles(const Perm& p);                 // "(0 1)(2 3)", "()"
Perm parse_cycles(const std::string& text, int window);

// Finite partial injection on naturals within the window.
class PartialBijection {
 public:
  PartialBijection() = default;
  explicit PartialBijection(std::vector<std::pair<int, int>> pairs);
  static PartialBijection identity_on(const FinSet& d);
  static PartialBijection restriction(const Perm& g, const FinSet& d);

  const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }
  FinSet dom() const { return dom_; }
  FinSet rng() const { return rng_; }
  int size() const { return (int)pairs_.size(); }
  bool empty() const { return pairs_.empty(); }

  bool maps(int k) const { return dom_.contains(k); }
  int apply(int k) const;
  bool extends(const PartialBijection& o) const;
  bool within(int window) const;
  // true iff g agrees with this map on its whole domain
  bool restricts(const Perm& g) const;

  PartialBijection inverse() const;

  auto operator<=>(const PartialBijection&) const = default;

 private:
  std::vector<std::pair<int, int>> pairs_;  // sorted by first coordinate
  FinSet dom_, rng_;
};

std::string format_pb(const PartialBijection& s);  // "0>1,2>3" or "-"
PartialBijection parse_pb(const std::string& text);

// sigma.f restricted to f^-1[dom sigma]
PartialBijection compose_right(const PartialBijection& sigma, const Perm& f);
// f.sigma, same domain, range transported by f
PartialBijection compose_left(const Perm& f, const PartialBijection& sigma);
inline PartialBijection invert(const PartialBijection& s) { return s.inverse(); }

// Permutation group over a finite window, presented by generators and
// materialized by closure (cached after the first enumeration).
class GroupPresentation {
 public:
  GroupPresentation(int window, std::vector<Perm> generators);
  GroupPresentation(const GroupPresentation& o)
      : window_(o.window_), gens_(o.gens_), elems_(o.snapshot()) {}
  GroupPresentation(GroupPresentation&& o) noexcept
      : window_(o.window_), gens_(std::move(o.gens_)), elems_(o.snapshot()) {}
  GroupPresentation& operator=(const GroupPresentation& o) {
    window_ = o.window_;
    gens_ = o.gens_;
    elems_ = o.snapshot();
    return *this;
  }
  GroupPresentation& operator=(GroupPresentation&& o) noexcept {
    window_ = o.window_;
    gens_ = std::move(o.gens_);
    elems_ = o.snapshot();
    return *this;
  }

  int window() const { return window_; }
  const std::vector<Perm>& generators() const { return gens_; }
  // sorted full element list
  const std::vector<Perm>& elements() const;
  size_t order() const { return elements().size(); }

  static GroupPresentation symmetric(int window);
  static GroupPresentation trivial(int window);

 private:
  // pre-closed element list (already a subgroup, sorted)
  GroupPresentation(int window, std::vector<Perm> gens,
                    std::vector<Perm> elems);
  friend GroupPresentation pointwise_stabilizer(const GroupPresentation& G,
                                                const FinSet& d);

  std::shared_ptr<const std::vector<Perm>> snapshot() const {
    std::lock_guard<std::mutex> lk(mu_);
    return elems_;
  }

  int window_;
  std::vector<Perm> gens_;
  mutable std::mutex mu_;
  mutable std::shared_ptr<const std::vector<Perm>> elems_;
};

enum class Side { Domain, Range };

bool coset_nonempty(const GroupPresentation& G, const PartialBijection& sigma);
std::vector<Perm> coset_elements(const GroupPresentation& G,
                                 const PartialBijection& sigma);
// all sigma' in S^G extending sigma with the requested side equal to target,
// in lexicographic order
std::vector<PartialBijection> extensions(const GroupPresentation& G,
                                         const PartialBijection& sigma,
                                         Side side, const FinSet& target);
GroupPresentation pointwise_stabilizer(const GroupPresentation& G,
                                       const FinSet& d);

// Length-then-lexicographic enumeration of S^G_{<inf} within the window.
std::vector<PartialBijection> sg_enumeration(const GroupPresentation& G);
// Length-then-lexicographic enumeration of window subsets.
std::vector<FinSet> rho_enumeration(int window);

}  // namespace scott
