#include "scott/cli.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "scott/alphasets.hpp"
#include "scott/backforth.hpp"
#include "scott/conjugacy.hpp"
#include "scott/gspace.hpp"
#include "scott/multicode.hpp"

namespace scott::cli {

namespace {

EffectiveGSpace load_space(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return load_instance(buf.str());
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

int resolve_point(const EffectiveGSpace& sp, const std::string& desg) {
  auto p = sp.point_by_name(desg);
  if (!p) throw std::runtime_error("unknown structure designator: " + desg);
  return *p;
}

std::string conjugator_cycles(const std::map<long long, long long>& h) {
  std::string out;
  std::set<long long> done;
  for (auto [p, q] : h) {
    if (done.count(p) || q == p) continue;
    std::string cyc = "(" + std::to_string(p);
    done.insert(p);
    for (long long cur = q; cur != p; cur = h.at(cur)) {
      cyc += ' ' + std::to_string(cur);
      done.insert(cur);
    }
    out += cyc + ')';
  }
  return out.empty() ? "()" : out;
}

struct Args {
  std::string instance, x, y, sigma, delta, code, code2, f, g, c, alpha;
  bool trace = false;
  int jobs = 1;
};

void print_members(std::ostream& out, const EffectiveGSpace& sp,
                   const Bitset& s) {
  for (int p : s.members()) out << sp.point_name(p) << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"generalized Scott analysis toolkit"};
  app.require_subcommand(1);
  Args a;

  auto add_common = [&](CLI::App* c) {
    c->add_option("--jobs", a.jobs)->check(CLI::PositiveNumber);
    c->add_flag("--trace", a.trace);
  };

  auto* refine = app.add_subcommand("refine", "refine to stabilization");
  refine->add_option("--instance", a.instance)->required();
  add_common(refine);

  auto* rank = app.add_subcommand("rank", "orbit rank of a point");
  rank->add_option("--instance", a.instance)->required();
  rank->add_option("--x", a.x)->required()->expected(1);
  add_common(rank);

  auto* iso = app.add_subcommand("iso", "decide orbit equivalence");
  iso->add_option("--instance", a.instance)->required();
  iso->add_option("--x", a.x)->required()->expected(1);
  iso->add_option("--y", a.y)->required()->expected(1);
  add_common(iso);

  auto* sep = app.add_subcommand("separate", "separating code for a pair");
  sep->add_option("--instance", a.instance)->required();
  sep->add_option("--x", a.x)->required()->expected(1);
  sep->add_option("--y", a.y)->required()->expected(1);
  sep->add_option("--sigma", a.sigma);
  sep->add_option("--delta", a.delta);
  add_common(sep);

  auto* mc = app.add_subcommand("multicode", "multicode calculus");
  mc->require_subcommand(1);
  auto* mval = mc->add_subcommand("validate");
  mval->add_option("--code", a.code)->required();
  auto* meval = mc->add_subcommand("eval");
  meval->add_option("--code", a.code)->required();
  meval->add_option("--instance", a.instance)->required();
  auto* meq = mc->add_subcommand("equiv");
  meq->add_option("--code", a.code)->required();
  meq->add_option("--code2", a.code2)->required();
  auto* mjoin = mc->add_subcommand("join");
  mjoin->add_option("--code", a.code)->required();
  mjoin->add_option("--code2", a.code2)->required();
  auto* mmeet = mc->add_subcommand("meet");
  mmeet->add_option("--code", a.code)->required();
  mmeet->add_option("--code2", a.code2)->required();
  auto* mlift = mc->add_subcommand("lift");
  mlift->add_option("--code", a.code)->required();
  mlift->add_option("--alpha", a.alpha)->required();
  auto* mbuild = mc->add_subcommand("build");
  mbuild->add_option("--instance", a.instance)->required();
  mbuild->add_option("--x", a.x)->required()->expected(1);
  mbuild->add_option("--sigma", a.sigma);
  mbuild->add_option("--alpha", a.alpha)->required();

  auto* conj = app.add_subcommand("conjugacy", "coset disjointness queries");
  conj->require_subcommand(1);
  auto* cchk = conj->add_subcommand("check");
  auto* csep = conj->add_subcommand("separate");
  for (auto* c : {cchk, csep}) {
    c->add_option("--f", a.f)->required();
    c->add_option("--g", a.g)->required();
    c->add_option("--c", a.c)->required()->expected(1);
  }

  auto* exmx = app.add_subcommand("export-mx", "export the M_x table");
  exmx->add_option("--instance", a.instance)->required();
  exmx->add_option("--x", a.x)->required()->expected(1);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return 2;
  }

  try {
    if (refine->parsed()) {
      EffectiveGSpace sp = load_space(a.instance);
      RefinementTrace tr = stabilization(sp, a.jobs);
      if (a.trace)
        for (int lvl = 1; lvl <= tr.levels(); ++lvl)
          out << "level " << lvl << ": " << tr.classes_at(lvl) << " classes\n";
      out << "stabilized at level " << format_ordinal(tr.stabilization_level())
          << " with "
          << tr.classes_at((int)tr.stabilization_level().fin) << " classes\n";
      return 0;
    }
    if (rank->parsed()) {
      EffectiveGSpace sp = load_space(a.instance);
      RefinementTrace tr = stabilization(sp, a.jobs);
      int x = resolve_point(sp, a.x);
      out << "gamma_star = " << format_ordinal(gamma_star(tr, x)) << '\n';
      return 0;
    }
    if (iso->parsed()) {
      EffectiveGSpace sp = load_space(a.instance);
      RefinementTrace tr = stabilization(sp, a.jobs);
      int x = resolve_point(sp, a.x), y = resolve_point(sp, a.y);
      OrbitDecision d = decide_orbit(tr, x, y);
      if (d.same_orbit) {
        if (a.trace)
          for (const auto& st : d.steps)
            out << "step " << st.step << ": segment " << st.segment
                << " sigma " << format_pb(st.sigma) << '\n';
        out << "orbit-equal via g=" << format_cycles(d.g) << '\n';
        return 0;
      }
      out << "distinct at level " << format_ordinal(d.witness->level)
          << "; witness: " << format_code(d.witness->code) << '\n';
      return 1;
    }
    if (sep->parsed()) {
      EffectiveGSpace sp = load_space(a.instance);
      RefinementTrace tr = stabilization(sp, a.jobs);
      int x = resolve_point(sp, a.x), y = resolve_point(sp, a.y);
      PartialBijection sg = a.sigma.empty() ? PartialBijection()
                                            : parse_pb(a.sigma);
      PartialBijection dl = a.delta.empty() ? PartialBijection()
                                            : parse_pb(a.delta);
      try {
        SeparationWitness w = separate(tr, x, sg, y, dl);
        out << "separated at level " << format_ordinal(w.level) << ": "
            << format_code(w.code) << '\n';
        return 0;
      } catch (const std::invalid_argument& e) {
        out << "no separation: " << e.what() << '\n';
        return 1;
      }
    }
    if (mval->parsed()) {
      try {
        Validation v = validate(parse_code(a.code));
        out << (v.kind == SideKind::Sigma ? "Sigma" : "Pi") << " rank "
            << format_ordinal(v.rank) << '\n';
        return 0;
      } catch (const ValidationError& e) {
        out << "invalid: " << e.what() << '\n';
        return 1;
      }
    }
    if (meval->parsed()) {
      EffectiveGSpace sp = load_space(a.instance);
      CodePtr u = parse_code(a.code);
      validate(u);
      print_members(out, sp, evaluate(u, sp));
      return 0;
    }
    if (meq->parsed()) {
      bool e = equiv(parse_code(a.code), parse_code(a.code2));
      out << (e ? "equivalent" : "inequivalent") << '\n';
      return e ? 0 : 1;
    }
    if (mjoin->parsed() || mmeet->parsed()) {
      CodePtr u = parse_code(a.code), w = parse_code(a.code2);
      out << format_code(mjoin->parsed() ? join(u, w) : meet(u, w)) << '\n';
      return 0;
    }
    if (mlift->parsed()) {
      Lifted l = lift(parse_code(a.code), parse_ordinal(a.alpha));
      out << "sigma: " << format_code(l.sigma_code) << '\n';
      out << "pi: " << format_code(l.pi_code) << '\n';
      return 0;
    }
    if (mbuild->parsed()) {
      EffectiveGSpace sp = load_space(a.instance);
      int x = resolve_point(sp, a.x);
      PartialBijection sg = a.sigma.empty() ? PartialBijection()
                                            : parse_pb(a.sigma);
      out << format_code(build_ux(sp, x, sg, parse_ordinal(a.alpha))) << '\n';
      return 0;
    }
    if (cchk->parsed() || csep->parsed()) {
      CyclePermutation f = CyclePermutation::parse(a.f);
      CyclePermutation g = CyclePermutation::parse(a.g);
      FinSet c = parse_finset(a.c);
      if (!is_conjugate(f, g)) {
        err << "inputs are not conjugate\n";
        return 2;
      }
      DisjointnessResult r = cosets_disjoint(f, g, c);
      if (cchk->parsed()) {
        if (r.disjoint)
          out << "DISJOINT k=" << r.k << " m=" << r.m << '\n';
        else
          out << "NOT-DISJOINT h=" << conjugator_cycles(r.conjugator) << '\n';
        return 0;
      }
      if (!r.disjoint) {
        out << "no separator: cosets meet, h=" << conjugator_cycles(r.conjugator)
            << '\n';
        return 1;
      }
      SeparatingOpenSet s = separating_open_set(f, g, c);
      out << "chain family A_" << s.k << "^" << s.l << " length m=" << s.m
          << (s.open_contains_f ? "; open set contains V_c f"
                                : "; closed complement contains V_c f")
          << '\n';
      return 0;
    }
    if (exmx->parsed()) {
      EffectiveGSpace sp = load_space(a.instance);
      out << export_mx(sp, resolve_point(sp, a.x));
      return 0;
    }
  } catch (const std::exception& e) {
    err << e.what() << '\n';
    return 2;
  }
  err << "no verb\n";
  return 2;
}

}  // namespace scott::cli
