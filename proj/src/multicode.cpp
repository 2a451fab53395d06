#include "scott/multicode.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

namespace scott {

CodePtr make_s1(std::vector<bool> bits, bool tail_bit) {
  while (!bits.empty() && bits.back() == tail_bit) bits.pop_back();
  auto c = std::make_shared<Multicode>();
  c->kind = CodeKind::Sigma1;
  c->bits = std::move(bits);
  c->tail_bit = tail_bit;
  return c;
}

CodePtr make_pi(CodePtr inner) {
  auto c = std::make_shared<Multicode>();
  c->kind = CodeKind::Pi;
  c->inner = std::move(inner);
  return c;
}

CodePtr make_ssucc(std::vector<CodePtr> prefix, CodePtr tail) {
  auto c = std::make_shared<Multicode>();
  c->kind = CodeKind::SigmaSucc;
  c->prefix = std::move(prefix);
  c->tail = std::move(tail);
  return c;
}

CodePtr make_slim(Ordinal dom, std::vector<std::pair<Ordinal, CodePtr>> pieces) {
  auto c = std::make_shared<Multicode>();
  c->kind = CodeKind::SigmaLim;
  c->dom = dom;
  c->pieces = std::move(pieces);
  return c;
}

CodePtr mc_empty() { return make_s1({}, false); }
CodePtr mc_X() { return make_s1({}, true); }
CodePtr mc_l(int l) {
  std::vector<bool> bits(l + 1, false);
  bits[l] = true;
  return make_s1(std::move(bits), false);
}

Validation validate(const CodePtr& u) {
  if (!u) throw ValidationError("null code");
  switch (u->kind) {
    case CodeKind::Sigma1:
      if (!u->bits.empty() && u->bits.back() == u->tail_bit)
        throw ValidationError("rank-1 code: prefix ends in the tail bit");
      return {SideKind::Sigma, Ordinal::finite(1)};
    case CodeKind::Pi: {
      Validation v = validate(u->inner);
      if (v.kind != SideKind::Pi) return {SideKind::Pi, v.rank};
      throw ValidationError("co-code must wrap a Sigma-side code");
    }
    case CodeKind::SigmaSucc: {
      if (!u->tail) throw ValidationError("successor code: missing tail");
      Ordinal top = Ordinal::finite(0);
      for (const CodePtr& c : u->prefix) top = std::max(top, validate(c).rank);
      top = std::max(top, validate(u->tail).rank);
      return {SideKind::Sigma, top.succ()};
    }
    case CodeKind::SigmaLim: {
      if (!u->dom.is_limit())
        throw ValidationError("limit code: domain is not a limit ordinal");
      if (u->pieces.empty()) throw ValidationError("limit code: no pieces");
      if (!u->pieces.front().first.is_zero())
        throw ValidationError("limit code: first breakpoint must be 0");
      for (size_t i = 0; i < u->pieces.size(); ++i) {
        if (i > 0 && !(u->pieces[i - 1].first < u->pieces[i].first))
          throw ValidationError("limit code: breakpoints not increasing");
        if (!(u->pieces[i].first < u->dom))
          throw ValidationError("limit code: breakpoint outside domain");
        if (!(validate(u->pieces[i].second).rank < u->dom))
          throw ValidationError("limit code: piece rank not below domain");
      }
      return {SideKind::Sigma, u->dom};
    }
  }
  throw ValidationError("corrupt code tag");
}

namespace {

Bitset eval_rec(const CodePtr& u, const EffectiveGSpace& sp,
                std::unordered_map<const Multicode*, Bitset>& memo) {
  auto it = memo.find(u.get());
  if (it != memo.end()) return it->second;
  Bitset r(sp.npoints());
  switch (u->kind) {
    case CodeKind::Sigma1:
      for (size_t l = 0; l < sp.basis().size(); ++l) {
        bool bit = l < u->bits.size() ? u->bits[l] : u->tail_bit;
        if (bit) r |= sp.basis()[l].members;
      }
      break;
    case CodeKind::Pi:
      r = eval_rec(u->inner, sp, memo).complement();
      break;
    case CodeKind::SigmaSucc:
      for (const CodePtr& c : u->prefix) r |= eval_rec(c, sp, memo);
      r |= eval_rec(u->tail, sp, memo);
      break;
    case CodeKind::SigmaLim:
      for (const auto& [br, c] : u->pieces) r |= eval_rec(c, sp, memo);
      break;
  }
  memo.emplace(u.get(), r);
  return r;
}

}  // namespace

Bitset evaluate(const CodePtr& u, const EffectiveGSpace& sp) {
  EvalMemo memo;
  return evaluate(u, sp, memo);
}

Bitset evaluate(const CodePtr& u, const EffectiveGSpace& sp, EvalMemo& memo) {
  validate(u);
  return eval_rec(u, sp, memo);
}

CodePtr join(const CodePtr& u, const CodePtr& w) {
  Validation vu = validate(u), vw = validate(w);
  if (vu != vw)
    throw std::invalid_argument("join needs codes of equal kind and rank");
  if (vu.kind != SideKind::Sigma)
    throw std::invalid_argument("join needs Sigma-side codes");
  if (u->kind == CodeKind::Sigma1) {
    size_t n = std::max(u->bits.size(), w->bits.size());
    std::vector<bool> bits(n);
    for (size_t i = 0; i < n; ++i) {
      bool a = i < u->bits.size() ? u->bits[i] : u->tail_bit;
      bool b = i < w->bits.size() ? w->bits[i] : w->tail_bit;
      bits[i] = a || b;
    }
    return make_s1(std::move(bits), u->tail_bit || w->tail_bit);
  }
  if (u->kind == CodeKind::SigmaSucc) {
    // only the set of children matters downstream, so the interleaving is
    // encoded as concatenation with one tail kept constant
    std::vector<CodePtr> prefix = u->prefix;
    prefix.push_back(u->tail);
    prefix.insert(prefix.end(), w->prefix.begin(), w->prefix.end());
    return make_ssucc(std::move(prefix), w->tail);
  }
  // SigmaLim: replay both step functions over finite breakpoints
  std::vector<std::pair<Ordinal, CodePtr>> pieces;
  for (const auto& [br, c] : u->pieces)
    pieces.emplace_back(Ordinal::finite((uint32_t)pieces.size()), c);
  for (const auto& [br, c] : w->pieces)
    pieces.emplace_back(Ordinal::finite((uint32_t)pieces.size()), c);
  return make_slim(u->dom, std::move(pieces));
}

CodePtr meet(const CodePtr& u, const CodePtr& w) {
  Validation vu = validate(u), vw = validate(w);
  if (vu != vw)
    throw std::invalid_argument("meet needs codes of equal kind and rank");
  if (vu.kind != SideKind::Pi || u->kind != CodeKind::Pi ||
      w->kind != CodeKind::Pi)
    throw std::invalid_argument("meet needs Pi-side codes");
  return make_pi(join(u->inner, w->inner));
}

namespace {

// wrap a code in constant unions until it reaches exactly rank beta
CodePtr sigma_embed(const CodePtr& c, Ordinal beta) {
  Ordinal r = validate(c).rank;
  if (!(r < beta)) throw std::invalid_argument("embed target not above rank");
  if (beta.is_limit()) return make_slim(beta, {{Ordinal::finite(0), c}});
  Ordinal below = beta.pred();
  if (r == below) return make_ssucc({}, c);
  return make_ssucc({}, sigma_embed(c, below));
}

}  // namespace

Lifted lift(const CodePtr& u, Ordinal beta) {
  Validation v = validate(u);
  if (!(v.rank < beta))
    throw std::invalid_argument("lift target must exceed the code's rank");
  CodePtr sigma = sigma_embed(u, beta);
  CodePtr pi;
  if (u->kind == CodeKind::Pi) {
    CodePtr inner = validate(u->inner).rank == beta
                        ? u->inner
                        : sigma_embed(u->inner, beta);
    pi = make_pi(inner);
  } else {
    pi = make_pi(sigma_embed(make_pi(u), beta));
  }
  return {sigma, pi};
}

namespace {

using ValMemo = std::unordered_map<const Multicode*, Validation>;

// ranks of an already-validated tree, shared across the pairwise recursion
Validation val_rec(const CodePtr& u, ValMemo& vmemo) {
  auto it = vmemo.find(u.get());
  if (it != vmemo.end()) return it->second;
  Validation v{SideKind::Sigma, Ordinal::finite(1)};
  switch (u->kind) {
    case CodeKind::Sigma1:
      break;
    case CodeKind::Pi:
      v = {SideKind::Pi, val_rec(u->inner, vmemo).rank};
      break;
    case CodeKind::SigmaSucc: {
      Ordinal top = Ordinal::finite(0);
      for (const CodePtr& c : u->prefix)
        top = std::max(top, val_rec(c, vmemo).rank);
      top = std::max(top, val_rec(u->tail, vmemo).rank);
      v = {SideKind::Sigma, top.succ()};
      break;
    }
    case CodeKind::SigmaLim:
      for (const auto& [br, c] : u->pieces) val_rec(c, vmemo);
      v = {SideKind::Sigma, u->dom};
      break;
  }
  vmemo.emplace(u.get(), v);
  return v;
}

struct EquivMemo {
  std::map<std::pair<const Multicode*, const Multicode*>, bool> pairs;
  ValMemo vals;
};

bool equiv_rec(const CodePtr& a, const CodePtr& b, EquivMemo& memo);

bool children_match(const std::vector<CodePtr>& as,
                    const std::vector<CodePtr>& bs, EquivMemo& memo) {
  for (const CodePtr& a : as) {
    bool found = false;
    for (const CodePtr& b : bs)
      if (equiv_rec(a, b, memo)) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

bool equiv_rec(const CodePtr& a, const CodePtr& b, EquivMemo& memo) {
  if (a.get() == b.get()) return true;
  auto key = std::make_pair(a.get(), b.get());
  auto it = memo.pairs.find(key);
  if (it != memo.pairs.end()) return it->second;
  // optimistic seed breaks no cycles (codes are finite trees); it only
  // short-circuits repeated pairs
  bool result = false;
  if (val_rec(a, memo.vals) == val_rec(b, memo.vals) && a->kind == b->kind) {
    switch (a->kind) {
      case CodeKind::Sigma1:
        result = a->bits == b->bits && a->tail_bit == b->tail_bit;
        break;
      case CodeKind::Pi:
        result = equiv_rec(a->inner, b->inner, memo);
        break;
      case CodeKind::SigmaSucc: {
        std::vector<CodePtr> as = a->prefix, bs = b->prefix;
        as.push_back(a->tail);
        bs.push_back(b->tail);
        result = children_match(as, bs, memo) && children_match(bs, as, memo);
        break;
      }
      case CodeKind::SigmaLim: {
        std::vector<CodePtr> as, bs;
        for (const auto& [br, c] : a->pieces) as.push_back(c);
        for (const auto& [br, c] : b->pieces) bs.push_back(c);
        result = children_match(as, bs, memo) && children_match(bs, as, memo);
        break;
      }
    }
  }
  memo.pairs[key] = result;
  return result;
}

}  // namespace

bool equiv(const CodePtr& u, const CodePtr& v) {
  try {
    validate(u);
    validate(v);
  } catch (const ValidationError&) {
    return false;
  }
  EquivMemo memo;
  return equiv_rec(u, v, memo);
}

std::string format_code(const CodePtr& u) {
  switch (u->kind) {
    case CodeKind::Sigma1: {
      std::string bits;
      for (bool b : u->bits) bits += b ? '1' : '0';
      return "(s1 \"" + bits + "\" tail " + (u->tail_bit ? "1" : "0") + ")";
    }
    case CodeKind::Pi:
      return "(pi " + format_code(u->inner) + ")";
    case CodeKind::SigmaSucc: {
      std::string s = "(ssucc rank " + format_ordinal(validate(u).rank) + " [";
      for (size_t i = 0; i < u->prefix.size(); ++i) {
        if (i) s += ' ';
        s += format_code(u->prefix[i]);
      }
      return s + "] tail " + format_code(u->tail) + ")";
    }
    case CodeKind::SigmaLim: {
      std::string s = "(slim rank " + format_ordinal(u->dom) + " [";
      for (size_t i = 0; i < u->pieces.size(); ++i) {
        if (i) s += ' ';
        s += "(" + format_ordinal(u->pieces[i].first) + " " +
             format_code(u->pieces[i].second) + ")";
      }
      return s + "])";
    }
  }
  throw ValidationError("corrupt code tag");
}

namespace {

struct CodeParser {
  const std::string& text;
  size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) {
    throw ValidationError("code parse at offset " + std::to_string(pos) + ": " +
                          msg);
  }
  void ws() {
    while (pos < text.size() && isspace((unsigned char)text[pos])) ++pos;
  }
  void expect(char c) {
    ws();
    if (pos >= text.size() || text[pos] != c)
      fail(std::string("expected '") + c + "'");
    ++pos;
  }
  std::string word() {
    ws();
    size_t start = pos;
    while (pos < text.size() && (isalnum((unsigned char)text[pos]) ||
                                 text[pos] == '*' || text[pos] == '+'))
      ++pos;
    if (start == pos) fail("expected a word");
    return text.substr(start, pos - start);
  }
  Ordinal ordinal() {
    try {
      return parse_ordinal(word());
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }

  CodePtr code() {
    expect('(');
    std::string tag = word();
    CodePtr result;
    if (tag == "s1") {
      ws();
      expect('"');
      std::vector<bool> bits;
      while (pos < text.size() && text[pos] != '"') {
        if (text[pos] != '0' && text[pos] != '1') fail("bad bit");
        bits.push_back(text[pos++] == '1');
      }
      expect('"');
      if (word() != "tail") fail("expected 'tail'");
      std::string t = word();
      if (t != "0" && t != "1") fail("bad tail bit");
      result = make_s1(std::move(bits), t == "1");
    } else if (tag == "pi") {
      result = make_pi(code());
    } else if (tag == "ssucc") {
      if (word() != "rank") fail("expected 'rank'");
      Ordinal declared = ordinal();
      expect('[');
      std::vector<CodePtr> prefix;
      while (true) {
        ws();
        if (pos < text.size() && text[pos] == ']') break;
        prefix.push_back(code());
      }
      expect(']');
      if (word() != "tail") fail("expected 'tail'");
      CodePtr tail = code();
      result = make_ssucc(std::move(prefix), std::move(tail));
      if (validate(result).rank != declared)
        fail("declared rank does not match the least rank");
    } else if (tag == "slim") {
      if (word() != "rank") fail("expected 'rank'");
      Ordinal declared = ordinal();
      expect('[');
      std::vector<std::pair<Ordinal, CodePtr>> pieces;
      while (true) {
        ws();
        if (pos < text.size() && text[pos] == ']') break;
        expect('(');
        Ordinal br = ordinal();
        CodePtr c = code();
        expect(')');
        pieces.emplace_back(br, std::move(c));
      }
      expect(']');
      result = make_slim(declared, std::move(pieces));
    } else {
      fail("unknown code tag '" + tag + "'");
    }
    expect(')');
    return result;
  }
};

}  // namespace

CodePtr parse_code(const std::string& text) {
  CodeParser p{text};
  CodePtr c = p.code();
  p.ws();
  if (p.pos != text.size()) p.fail("trailing input");
  validate(c);
  return c;
}

}  // namespace scott
