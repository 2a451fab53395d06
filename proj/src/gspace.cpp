#include "scott/gspace.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <stdexcept>

namespace scott {

namespace {

// atoms are enumerated relation by relation, tuples in lexicographic order
// (first argument most significant)
int atom_count(const LogicSignature& sig, int window) {
  int n = 0;
  for (const Relation& r : sig.relations) {
    int t = 1;
    for (int i = 0; i < r.arity; ++i) t *= window;
    n += t;
  }
  return n;
}

int atom_index(const LogicSignature& sig, int window, int rel,
               const std::vector<int>& tuple) {
  int base = 0;
  for (int i = 0; i < rel; ++i) {
    int t = 1;
    for (int j = 0; j < sig.relations[i].arity; ++j) t *= window;
    base += t;
  }
  int off = 0;
  for (int v : tuple) off = off * window + v;
  return base + off;
}

std::vector<std::vector<int>> all_tuples(int window, int arity) {
  std::vector<std::vector<int>> out;
  std::vector<int> t(arity, 0);
  while (true) {
    out.push_back(t);
    int i = arity - 1;
    while (i >= 0 && ++t[i] == window) t[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

std::string atom_name(const Relation& r, const std::vector<int>& tuple) {
  std::string s = r.name + "(";
  for (size_t i = 0; i < tuple.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(tuple[i]);
  }
  return s + ")";
}

}  // namespace

EffectiveGSpace::EffectiveGSpace(GroupPresentation group, int npoints,
                                 std::vector<std::vector<int>> action,
                                 std::vector<BasicSet> basis,
                                 std::vector<std::string> point_names)
    : group_(std::move(group)),
      npoints_(npoints),
      action_(std::move(action)),
      basis_(std::move(basis)),
      point_names_(std::move(point_names)) {
  if (basis_.size() > 64)
    throw std::invalid_argument("basis too large (cap 64 sets)");
  const auto& elems = group_.elements();
  if (action_.size() != elems.size())
    throw std::invalid_argument("action table does not match group order");

  int id = group_index(Perm::identity(window()));
  for (int p = 0; p < npoints_; ++p)
    if (action_[id][p] != p) throw std::invalid_argument("identity acts nontrivially");
  for (const Perm& g : group_.generators())
    for (const Perm& h : group_.generators()) {
      int gi = group_index(g), hi = group_index(h);
      int ghi = group_index(compose(g, h));
      for (int p = 0; p < npoints_; ++p)
        if (action_[gi][action_[hi][p]] != action_[ghi][p])
          throw std::invalid_argument("action law violated");
    }

  Bitset cover(npoints_);
  for (const BasicSet& A : basis_) {
    auto stab = pointwise_stabilizer(group_, A.invariance_tag);
    if (!(saturate(*this, stab.elements(), A.members) == A.members))
      throw std::invalid_argument("basic set not invariant under its tag");
    cover |= A.members;
  }
  // a basis covering the space keeps "F_1 = empty set" unambiguous: it can
  // only mean the coset itself is empty
  if (!(cover == Bitset::all(npoints_)))
    throw std::invalid_argument("basis does not cover the space");
}

int EffectiveGSpace::group_index(const Perm& g) const {
  const auto& elems = group_.elements();
  auto it = std::lower_bound(elems.begin(), elems.end(), g);
  if (it == elems.end() || *it != g)
    throw std::invalid_argument("permutation not in the group");
  return (int)(it - elems.begin());
}

int EffectiveGSpace::act(const Perm& g, int point) const {
  return action_[group_index(g)][point];
}

std::optional<int> EffectiveGSpace::point_by_name(
    const std::string& designator) const {
  if (sig_.relations.empty() && npoints_ == 1)
    return designator.empty() ? std::optional<int>(0) : std::nullopt;
  uint64_t mask = 0;
  try {
    parse_designator_bits(sig_, window(), designator, &mask);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
  if ((int64_t)mask >= npoints_) return std::nullopt;
  return (int)mask;
}

std::string parse_designator_bits(const LogicSignature& sig, int window,
                                  const std::string& designator,
                                  uint64_t* atom_mask) {
  *atom_mask = 0;
  if (designator.empty() || designator == "-") return "";
  std::stringstream ss(designator);
  std::string atom;
  while (std::getline(ss, atom, ';')) {
    size_t lp = atom.find('(');
    size_t rp = atom.rfind(')');
    if (lp == std::string::npos || rp != atom.size() - 1 || rp < lp)
      throw std::invalid_argument("bad atom: " + atom);
    std::string name = atom.substr(0, lp);
    int rel = -1;
    for (size_t i = 0; i < sig.relations.size(); ++i)
      if (sig.relations[i].name == name) rel = (int)i;
    if (rel < 0) throw std::invalid_argument("unknown relation: " + name);
    std::vector<int> tuple;
    std::stringstream args(atom.substr(lp + 1, rp - lp - 1));
    std::string a;
    while (std::getline(args, a, ',')) {
      size_t pos = 0;
      int v = std::stoi(a, &pos);
      if (pos != a.size() || v < 0 || v >= window)
        throw std::invalid_argument("bad atom argument: " + atom);
      tuple.push_back(v);
    }
    if ((int)tuple.size() != sig.relations[rel].arity)
      throw std::invalid_argument("arity mismatch: " + atom);
    *atom_mask |= uint64_t(1) << atom_index(sig, window, rel, tuple);
  }
  return designator;
}

EffectiveGSpace EffectiveGSpace::build_logic_action(const LogicSignature& sig,
                                                    int window,
                                                    GroupPresentation G) {
  if (G.window() != window) throw std::invalid_argument("window mismatch");
  for (const Relation& r : sig.relations)
    if (r.arity < 1 || r.arity > window)
      throw std::invalid_argument("relation arity out of range");

  const int natoms = atom_count(sig, window);
  if (natoms >= 20) throw std::invalid_argument("instance too large (> 10^6 points)");
  const int npoints = 1 << natoms;

  // atom metadata in enumeration order
  struct AtomInfo {
    int rel;
    std::vector<int> tuple;
    std::string name;
  };
  std::vector<AtomInfo> atoms;
  for (size_t r = 0; r < sig.relations.size(); ++r)
    for (auto& t : all_tuples(window, sig.relations[r].arity))
      atoms.push_back({(int)r, t, atom_name(sig.relations[r], t)});

  const auto& elems = G.elements();
  std::vector<std::vector<int>> action(elems.size(),
                                       std::vector<int>(npoints));
  for (size_t gi = 0; gi < elems.size(); ++gi) {
    Perm ginv = elems[gi].inverse();
    // g.x satisfies atom i iff x satisfies the g^-1-translated atom
    std::vector<int> pre(natoms);
    for (int i = 0; i < natoms; ++i) {
      std::vector<int> t = atoms[i].tuple;
      for (int& v : t) v = ginv(v);
      pre[i] = atom_index(sig, window, atoms[i].rel, t);
    }
    for (int p = 0; p < npoints; ++p) {
      int q = 0;
      for (int i = 0; i < natoms; ++i)
        if ((p >> pre[i]) & 1) q |= 1 << i;
      action[gi][p] = q;
    }
  }

  std::vector<BasicSet> basis;
  if (natoms == 0) {
    BasicSet whole{0, Bitset::all(1), FinSet{}, "X"};
    basis.push_back(std::move(whole));
  }
  for (int i = 0; i < natoms; ++i) {
    FinSet tag;
    for (int v : atoms[i].tuple) tag.insert(v);
    BasicSet pos{2 * i, Bitset(npoints), tag, atoms[i].name + "+"};
    BasicSet neg{2 * i + 1, Bitset(npoints), tag, atoms[i].name + "-"};
    for (int p = 0; p < npoints; ++p)
      ((p >> i) & 1 ? pos.members : neg.members).set(p);
    basis.push_back(std::move(pos));
    basis.push_back(std::move(neg));
  }

  std::vector<std::string> names(npoints);
  for (int p = 0; p < npoints; ++p) {
    std::string n;
    for (int i = 0; i < natoms; ++i)
      if ((p >> i) & 1) {
        if (!n.empty()) n += ';';
        n += atoms[i].name;
      }
    names[p] = n;
  }

  EffectiveGSpace sp(std::move(G), npoints, std::move(action),
                     std::move(basis), std::move(names));
  sp.sig_ = sig;
  return sp;
}

Bitset vaught_orbit(const EffectiveGSpace& sp, const PartialBijection& sigma,
                    int x) {
  auto coset = coset_elements(sp.group(), sigma);
  if (coset.empty()) throw std::invalid_argument("sigma not in S^G");
  Bitset out(sp.npoints());
  for (const Perm& g : coset) out.set(sp.act(sp.group_index(g), x));
  return out;
}

bool sat(const EffectiveGSpace& sp, int x, const PartialBijection& sigma,
         int l) {
  if (l < 0 || l >= (int)sp.basis().size())
    throw std::out_of_range("basis index out of range");
  return vaught_orbit(sp, sigma, x).intersects(sp.basis()[l].members);
}

uint64_t coding_function(const EffectiveGSpace& sp, int x,
                         const PartialBijection& sigma) {
  if (!coset_nonempty(sp.group(), sigma)) return 0;
  Bitset orb = vaught_orbit(sp, sigma, x);
  uint64_t f1 = 0;
  for (size_t l = 0; l < sp.basis().size(); ++l)
    if (orb.intersects(sp.basis()[l].members)) f1 |= uint64_t(1) << l;
  return f1;
}

bool imp(const EffectiveGSpace& sp, const FinSet& c, int l, int k) {
  if (l < 0 || l >= (int)sp.basis().size() || k < 0 ||
      k >= (int)sp.basis().size())
    throw std::out_of_range("basis index out of range");
  auto stab = pointwise_stabilizer(sp.group(), c);
  Bitset satl = saturate(sp, stab.elements(), sp.basis()[l].members);
  return sp.basis()[k].members.is_subset_of(satl);
}

Bitset saturate(const EffectiveGSpace& sp, const std::vector<Perm>& H,
                const Bitset& S) {
  Bitset out(sp.npoints());
  for (const Perm& g : H) {
    int gi = sp.group_index(g);
    for (int p = 0; p < sp.npoints(); ++p)
      if (S.test(p)) out.set(sp.act(gi, p));
  }
  return out;
}

std::vector<Bitset> canonical_partition(const EffectiveGSpace& sp) {
  const auto& elems = sp.group().elements();
  std::vector<Bitset> gsat;
  for (const BasicSet& A : sp.basis())
    gsat.push_back(saturate(sp, elems, A.members));
  std::vector<uint64_t> vec(sp.npoints(), 0);
  for (size_t j = 0; j < gsat.size(); ++j)
    for (int p = 0; p < sp.npoints(); ++p)
      if (gsat[j].test(p)) vec[p] |= uint64_t(1) << j;
  std::map<uint64_t, int> block_of;
  std::vector<Bitset> blocks;
  for (int p = 0; p < sp.npoints(); ++p) {
    auto [it, fresh] = block_of.try_emplace(vec[p], (int)blocks.size());
    if (fresh) blocks.emplace_back(sp.npoints());
    blocks[it->second].set(p);
  }
  return blocks;
}

Instance parse_instance(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument("line " + std::to_string(lineno) + ": " + msg);
  };
  Instance inst{0, {}, {}};
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') {
      if (line.rfind("#gspace", 0) == 0) {
        if (line != "#gspace v1") fail("unsupported format version");
        header = true;
      }
      continue;
    }
    std::istringstream ls(line);
    std::string kw;
    ls >> kw;
    if (kw == "window") {
      if (!(ls >> inst.window) || inst.window < 1 || inst.window > kMaxWindow)
        fail("bad window");
    } else if (kw == "gen") {
      std::string rest;
      std::getline(ls, rest);
      size_t b = rest.find_first_not_of(' ');
      if (b == std::string::npos) fail("missing generator");
      inst.generator_cycles.push_back(rest.substr(b));
    } else if (kw == "rel") {
      Relation r;
      if (!(ls >> r.name >> r.arity)) fail("bad relation line");
      for (const Relation& prev : inst.sig.relations)
        if (prev.name == r.name) fail("duplicate relation name");
      inst.sig.relations.push_back(r);
    } else {
      fail("unknown directive '" + kw + "'");
    }
  }
  if (!header) throw std::invalid_argument("line 1: missing #gspace v1 header");
  if (inst.window == 0) throw std::invalid_argument("missing window directive");
  return inst;
}

EffectiveGSpace load_instance(const std::string& text) {
  Instance inst = parse_instance(text);
  std::vector<Perm> gens;
  for (const std::string& c : inst.generator_cycles)
    gens.push_back(parse_cycles(c, inst.window));
  GroupPresentation G(inst.window, std::move(gens));
  return EffectiveGSpace::build_logic_action(inst.sig, inst.window,
                                             std::move(G));
}

std::string export_mx(const EffectiveGSpace& sp, int x) {
  MxData d;
  d.sgfin = sg_enumeration(sp.group());
  for (const FinSet& c : rho_enumeration(sp.window()))
    for (int l = 0; l < (int)sp.basis().size(); ++l)
      for (int k = 0; k < (int)sp.basis().size(); ++k)
        if (imp(sp, c, l, k)) d.imp_rows.emplace_back(c, l, k);
  for (const PartialBijection& s : d.sgfin)
    for (int l = 0; l < (int)sp.basis().size(); ++l)
      if (sat(sp, x, s, l)) d.sat_rows.emplace_back(s, l);
  return format_mx(d);
}

std::string format_mx(const MxData& d) {
  std::string out = "#mx v1\n";
  out += "sgfin:\n";
  for (const auto& s : d.sgfin) out += format_pb(s) + "\n";
  out += "imp:\n";
  for (const auto& [c, l, k] : d.imp_rows)
    out += format_finset(c) + "|" + std::to_string(l) + "|" +
           std::to_string(k) + "\n";
  out += "sat:\n";
  for (const auto& [s, l] : d.sat_rows)
    out += format_pb(s) + "|" + std::to_string(l) + "\n";
  return out;
}

MxData parse_mx(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument("line " + std::to_string(lineno) + ": " + msg);
  };
  MxData d;
  int section = -1;  // 0 sgfin, 1 imp, 2 sat
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line == "#mx v1") header = true;
      continue;
    }
    if (line == "sgfin:") { section = 0; continue; }
    if (line == "imp:") { section = 1; continue; }
    if (line == "sat:") { section = 2; continue; }
    if (section == 0) {
      d.sgfin.push_back(parse_pb(line));
    } else if (section == 1) {
      size_t p1 = line.find('|'), p2 = line.rfind('|');
      if (p1 == std::string::npos || p2 == p1) fail("bad imp row");
      d.imp_rows.emplace_back(parse_finset(line.substr(0, p1)),
                              std::stoi(line.substr(p1 + 1, p2 - p1 - 1)),
                              std::stoi(line.substr(p2 + 1)));
    } else if (section == 2) {
      size_t p1 = line.find('|');
      if (p1 == std::string::npos) fail("bad sat row");
      d.sat_rows.emplace_back(parse_pb(line.substr(0, p1)),
                              std::stoi(line.substr(p1 + 1)));
    } else {
      fail("row outside any section");
    }
  }
  if (!header) throw std::invalid_argument("missing #mx v1 header");
  return d;
}

}  // namespace scott
