#pragma once

#include <cstdint>
#include <vector>

namespace scott {

// Fixed-size bit vector used for subsets of a space's point list.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(int n) : n_(n), w_((n + 63) / 64, 0) {}

  static Bitset all(int n) {
    Bitset b(n);
    for (int i = 0; i < n; ++i) b.set(i);
    return b;
  }

  int size() const { return n_; }
  bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void set(int i) { w_[i >> 6] |= uint64_t(1) << (i & 63); }
  void reset(int i) { w_[i >> 6] &= ~(uint64_t(1) << (i & 63)); }

  Bitset& operator|=(const Bitset& o) {
    for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }
  Bitset& operator&=(const Bitset& o) {
    for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }
  Bitset complement() const {
    Bitset r(n_);
    for (size_t i = 0; i < w_.size(); ++i) r.w_[i] = ~w_[i];
    r.trim();
    return r;
  }

  auto operator<=>(const Bitset&) const = default;

  bool empty() const {
    for (uint64_t w : w_)
      if (w) return false;
    return true;
  }
  int count() const {
    int c = 0;
    for (uint64_t w : w_) c += __builtin_popcountll(w);
    return c;
  }
  bool is_subset_of(const Bitset& o) const {
    for (size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }
  bool intersects(const Bitset& o) const {
    for (size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & o.w_[i]) return true;
    return false;
  }

  std::vector<int> members() const {
    std::vector<int> m;
    for (int i = 0; i < n_; ++i)
      if (test(i)) m.push_back(i);
    return m;
  }

  uint64_t hash() const {
    uint64_t h = 1469598103934665603ull;
    for (uint64_t w : w_) {
      h ^= w;
      h *= 1099511628211ull;
    }
    return h;
  }

 private:
  void trim() {
    if (n_ & 63) w_.back() &= (uint64_t(1) << (n_ & 63)) - 1;
  }
  int n_ = 0;
  std::vector<uint64_t> w_;
};

inline Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
inline Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }

}  // namespace scott
