#pragma once

#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "scott/bitset.hpp"
#include "scott/gspace.hpp"
#include "scott/ordinal.hpp"

namespace scott {

enum class CodeKind { Sigma1, Pi, SigmaSucc, SigmaLim };

struct Multicode;
using CodePtr = std::shared_ptr<const Multicode>;

// Ordinal-ranked code tree for a Borel set. Sequences on omega are stored as
// an explicit prefix plus a constant tail; step functions on a limit ordinal
// as (breakpoint, value) pieces. Build through the factories below — they
// keep encodings canonical.
struct Multicode {
  CodeKind kind;

  // Sigma1: bit per basis index, indices past the prefix carry tail_bit
  std::vector<bool> bits;
  bool tail_bit = false;

  // Pi: the wrapped code (0, inner)
  CodePtr inner;

  // SigmaSucc: children u(0), u(1), ... with constant tail
  std::vector<CodePtr> prefix;
  CodePtr tail;

  // SigmaLim: step function on the limit ordinal dom
  Ordinal dom;
  std::vector<std::pair<Ordinal, CodePtr>> pieces;
};

CodePtr make_s1(std::vector<bool> bits, bool tail_bit);
CodePtr make_pi(CodePtr inner);
CodePtr make_ssucc(std::vector<CodePtr> prefix, CodePtr tail);
CodePtr make_slim(Ordinal dom, std::vector<std::pair<Ordinal, CodePtr>> pieces);

CodePtr mc_empty();
CodePtr mc_X();
CodePtr mc_l(int l);

enum class SideKind { Sigma, Pi };

struct Validation {
  SideKind kind;
  Ordinal rank;  // least rank

  auto operator<=>(const Validation&) const = default;
};

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Validation validate(const CodePtr& u);
Bitset evaluate(const CodePtr& u, const EffectiveGSpace& sp);
// memo shared across calls; valid only for codes used with one space
using EvalMemo = std::unordered_map<const Multicode*, Bitset>;
Bitset evaluate(const CodePtr& u, const EffectiveGSpace& sp, EvalMemo& memo);
// union / intersection codes of matching kind and rank; the caller lifts
// mismatched ranks first
CodePtr join(const CodePtr& u, const CodePtr& w);
CodePtr meet(const CodePtr& u, const CodePtr& w);

struct Lifted {
  CodePtr sigma_code;
  CodePtr pi_code;
};
Lifted lift(const CodePtr& u, Ordinal beta);

bool equiv(const CodePtr& u, const CodePtr& v);

std::string format_code(const CodePtr& u);
CodePtr parse_code(const std::string& text);

// Theorem-style builder for the alpha-set codes of one point: u = the
// co-code for B_alpha(x, sigma), with the two companion union codes w, v.
struct UxCodes {
  CodePtr u;
  CodePtr w;
  CodePtr v;
};

class UxBuilder {
 public:
  UxBuilder(const EffectiveGSpace& sp, int x);
  UxCodes build(Ordinal alpha, const PartialBijection& sigma);

 private:
  CodePtr imp_code(const FinSet& c, int l);
  const EffectiveGSpace* sp_;
  int x_;
  std::map<std::pair<Ordinal, PartialBijection>, UxCodes> memo_;
  std::map<std::pair<FinSet, int>, CodePtr> imp_memo_;
  int stab_ = 0;  // oracle table fixed point, filled on first limit request
};

CodePtr build_ux(const EffectiveGSpace& sp, int x,
                 const PartialBijection& sigma, Ordinal alpha);
CodePtr build_wx(const EffectiveGSpace& sp, int x,
                 const PartialBijection& sigma, Ordinal alpha);
CodePtr build_vx(const EffectiveGSpace& sp, int x,
                 const PartialBijection& sigma, Ordinal alpha);

}  // namespace scott
