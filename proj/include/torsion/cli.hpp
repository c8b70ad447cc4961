// Command-line front end.  run() is kept free of process concerns so tests
// can drive it in-process and compare reports byte for byte.
//
// Every invocation prints exactly one report (see report.hpp) on the output
// stream and returns 0 when the requested property is certified or computed,
// 1 when it is refuted and a witness is reported, 2 on usage or input
// errors, and 3 when a search exceeds its budget.  Error diagnostics are
// repeated on the error stream.  Group arguments accept either a file path
// or a builtin name such as heisenberg or free(2).

#ifndef TORSION_CLI_HPP
#define TORSION_CLI_HPP

#include "torsion/approx.hpp"
#include "torsion/bigint.hpp"
#include "torsion/error.hpp"
#include "torsion/formats.hpp"
#include "torsion/galois.hpp"
#include "torsion/invariants.hpp"
#include "torsion/presentation.hpp"
#include "torsion/report.hpp"
#include "torsion/ttf.hpp"
#include "torsion/virtab.hpp"
#include "torsion/witt.hpp"
#include "torsion/wreath.hpp"

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace torsion::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRefuted = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;

namespace detail {

inline constexpr const char* kUsage =
    "usage: torsiontool <command> [options]\n"
    "  ttf check GROUP [--max-index K] [--budget N] [--all-witnesses]\n"
    "  ttf subgroup GROUP --gen WORD [--gen WORD ...] [--budget N]\n"
    "  ab invariants GROUP\n"
    "  virtab check FILE.vab\n"
    "  embed kk FILE.vab\n"
    "  embed sigma FILE.vab\n"
    "  approx check FILE.as [--seed S]\n"
    "  approx ptorsion FILE.as --p P --g ELEMENT [--seed S]\n"
    "  approx build --systems FILE.as [FILE.as ...] --pairs P:G[,P:G...] "
    "[--seed S]\n"
    "  witt coker --p P --deg D --n N\n"
    "  witt ftilde --p P --deg D --n N\n"
    "  witt pdiv --p P --deg D --n N\n"
    "  galois check --q Q --n N --s S --subgroup FILE.sub\n"
    "  galois fixed --q Q --n N --s S [--bound B]\n"
    "  galois basis --q Q --s S [--bound B] [--seed S]\n"
    "GROUP is a .grp file path or a builtin name: heisenberg, dihedral_inf,\n"
    "free(n), free_abelian(n), surface(g), nonorientable(k).";

// Flag-and-positional splitter.  Every flag is consumed by the handler that
// owns it; leftovers are reported as usage errors.
class Args {
public:
  explicit Args(const std::vector<std::string>& argv) {
    static const std::set<std::string> kBool = {"--all-witnesses"};
    static const std::set<std::string> kList = {"--systems"};
    static const std::set<std::string> kRepeat = {"--gen"};
    for (std::size_t i = 0; i < argv.size(); ++i) {
      const std::string& t = argv[i];
      if (t.rfind("--", 0) != 0) {
        pos_.push_back(t);
        continue;
      }
      if (kBool.count(t)) {
        flags_[t];
        continue;
      }
      if (kList.count(t)) {
        auto& v = flags_[t];
        while (i + 1 < argv.size() && argv[i + 1].rfind("--", 0) != 0)
          v.push_back(argv[++i]);
        if (v.empty())
          throw UsageError("flag " + t + " needs at least one value");
        continue;
      }
      if (i + 1 == argv.size())
        throw UsageError("flag " + t + " needs a value");
      if (flags_.count(t) && !kRepeat.count(t))
        throw UsageError("duplicate flag " + t);
      flags_[t].push_back(argv[++i]);
    }
  }

  const std::string& pos(std::size_t i, const std::string& what) {
    if (i >= pos_.size()) throw UsageError("missing " + what);
    return pos_[i];
  }

  bool take_bool(const std::string& name) {
    auto it = flags_.find(name);
    if (it == flags_.end()) return false;
    flags_.erase(it);
    return true;
  }

  std::optional<std::string> take(const std::string& name) {
    auto it = flags_.find(name);
    if (it == flags_.end()) return std::nullopt;
    std::string v = it->second.at(0);
    flags_.erase(it);
    return v;
  }

  std::string take_required(const std::string& name) {
    auto v = take(name);
    if (!v) throw UsageError("flag " + name + " is required");
    return *v;
  }

  std::vector<std::string> take_list(const std::string& name) {
    auto it = flags_.find(name);
    if (it == flags_.end()) return {};
    std::vector<std::string> v = std::move(it->second);
    flags_.erase(it);
    return v;
  }

  std::size_t take_size(const std::string& name, std::size_t dflt) {
    auto v = take(name);
    if (!v) return dflt;
    Int x = io::detail::parse_int_tok(*v, 1);
    if (x < 0 || x > 1000000000)
      throw UsageError("flag " + name + " is out of range");
    return x.convert_to<std::size_t>();
  }

  Int take_int_required(const std::string& name) {
    return Int(io::detail::parse_int_tok(take_required(name), 1));
  }

  std::uint64_t take_seed(std::uint64_t dflt) {
    auto v = take("--seed");
    if (!v) return dflt;
    Int x = io::detail::parse_int_tok(*v, 1);
    if (x < 0 || x > Int("18446744073709551615"))
      throw UsageError("flag --seed is out of range");
    return x.convert_to<std::uint64_t>();
  }

  void finish(std::size_t npos) {
    if (pos_.size() > npos)
      throw UsageError("unexpected argument '" + pos_[npos] + "'");
    if (!flags_.empty())
      throw UsageError("unknown or misplaced flag " + flags_.begin()->first);
  }

private:
  std::vector<std::string> pos_;
  std::map<std::string, std::vector<std::string>> flags_;
};

inline std::string join_args(const std::vector<std::string>& argv) {
  std::string out;
  for (std::size_t i = 0; i < argv.size(); ++i) {
    if (i) out += ' ';
    out += argv[i];
  }
  return out;
}

inline std::string first_line(const std::string& s) {
  auto nl = s.find('\n');
  return nl == std::string::npos ? s : s.substr(0, nl);
}

// A group argument is a readable file path or a builtin name, optionally
// with one integer parameter in parentheses.
inline fp::GroupPresentation load_group(const std::string& arg) {
  {
    std::ifstream probe(arg);
    if (probe.good()) return fp::parse_presentation(io::read_file(arg));
  }
  auto lp = arg.find('(');
  if (lp != std::string::npos && arg.size() >= lp + 3 && arg.back() == ')') {
    std::string name = arg.substr(0, lp);
    std::string param = arg.substr(lp + 1, arg.size() - lp - 2);
    Int k = io::detail::parse_int_tok(param, 1);
    if (k < 1 || k > 64) throw UsageError("builtin parameter is out of range");
    return fp::builtin(name, {k.convert_to<int>()});
  }
  return fp::builtin(arg);
}

inline std::size_t resolve_element(const vab::FiniteGroup& g,
                                   const std::string& s) {
  for (std::size_t i = 0; i < g.order(); ++i)
    if (g.label(i) == s) return i;
  bool numeric = !s.empty();
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) numeric = false;
  if (numeric) {
    std::size_t i = io::detail::parse_index_tok(s, 1);
    if (i < g.order()) return i;
  }
  throw UsageError("the finite quotient has no element '" + s + "'");
}

inline void put_invariants(Report& rep, std::size_t depth,
                           const ab::FinAbInvariants& inv) {
  rep.line(depth, "invariants", inv.str());
  rep.line(depth, "rank", std::to_string(inv.rank));
  rep.line(depth, "torsion", fmt_vec(inv.torsion));
}

inline void cmd_ttf(Args& a, Report& rep) {
  const std::string& verb = a.pos(1, "ttf verb (check or subgroup)");
  if (verb == "check") {
    fp::GroupPresentation p = load_group(a.pos(2, "group file or builtin"));
    std::size_t max_index = a.take_size("--max-index", 2);
    ttf::TtfOptions opt;
    opt.node_budget = a.take_size("--budget", opt.node_budget);
    opt.all_witnesses = a.take_bool("--all-witnesses");
    a.finish(3);
    ttf::TtfVerdict v = ttf::certify_weak_ttf(p, max_index, opt);
    rep.line(0, "group", p.name.empty() ? "(unnamed)" : p.name);
    rep.line(0, "max_index", std::to_string(max_index));
    rep.line(0, "refuted", fmt_bool(v.refuted));
    rep.line(0, "certified_up_to", std::to_string(v.certified_up_to));
    rep.line(0, "subgroups_examined",
             std::to_string(v.stats.subgroups_examined));
    rep.line(0, "max_index_reached", std::to_string(v.stats.max_index_reached));
    for (const auto& w : v.witnesses) {
      rep.line(0, "witness");
      rep.line(1, "index", std::to_string(w.table.index()));
      put_invariants(rep, 1, w.invariants);
    }
    rep.status(v.refuted ? "refuted" : "certified");
    return;
  }
  if (verb == "subgroup") {
    fp::GroupPresentation p = load_group(a.pos(2, "group file or builtin"));
    std::vector<std::string> words = a.take_list("--gen");
    if (words.empty())
      throw UsageError("flag --gen is required at least once");
    std::size_t budget = a.take_size("--budget", 1000000);
    a.finish(3);
    std::vector<fp::Word> gens;
    for (const auto& w : words) gens.push_back(fp::parse_word(p, w));
    ab::FinAbInvariants inv = ttf::check_designated_subgroup(p, gens, budget);
    rep.line(0, "group", p.name.empty() ? "(unnamed)" : p.name);
    rep.line(0, "subgroup_generators", std::to_string(gens.size()));
    put_invariants(rep, 0, inv);
    rep.status(inv.torsion_free() ? "certified" : "refuted");
    return;
  }
  throw UsageError("unknown ttf verb '" + verb + "'");
}

inline void cmd_ab(Args& a, Report& rep) {
  const std::string& verb = a.pos(1, "ab verb (invariants)");
  if (verb != "invariants") throw UsageError("unknown ab verb '" + verb + "'");
  fp::GroupPresentation p = load_group(a.pos(2, "group file or builtin"));
  a.finish(3);
  ab::FinAbInvariants inv = ab::abelianization(p);
  rep.line(0, "group", p.name.empty() ? "(unnamed)" : p.name);
  put_invariants(rep, 0, inv);
  rep.status("ok");
}

inline void cmd_virtab(Args& a, Report& rep) {
  const std::string& verb = a.pos(1, "virtab verb (check)");
  if (verb != "check")
    throw UsageError("unknown virtab verb '" + verb + "'");
  vab::VirtAbGroup g =
      io::build_vab(io::parse_vab(io::read_file(a.pos(2, "a .vab file"))));
  a.finish(3);
  rep.line(0, "point_order", std::to_string(g.point_group().order()));
  rep.line(0, "rank", std::to_string(g.rank()));
  auto w = vab::torsion_witness(g);
  rep.line(0, "torsion_free", fmt_bool(!w));
  if (w) {
    auto ord = g.element_order(*w);
    rep.line(0, "witness");
    rep.line(1, "point", g.point_group().label(w->q));
    rep.line(1, "vector", fmt_vec(w->v));
    rep.line(1, "order", ord ? to_string(*ord) : "unknown");
  }
  rep.status(w ? "refuted" : "certified");
}

inline void cmd_embed(Args& a, Report& rep) {
  const std::string& verb = a.pos(1, "embed verb (kk or sigma)");
  vab::VirtAbGroup g =
      io::build_vab(io::parse_vab(io::read_file(a.pos(2, "a .vab file"))));
  a.finish(3);
  rep.line(0, "rank", std::to_string(g.rank()));
  rep.line(0, "point_order", std::to_string(g.point_group().order()));
  const vab::EmbeddingReport* er = nullptr;
  vab::KkEmbedding kk(g);
  std::optional<vab::SigmaLatticeEmbedding> sig;
  if (verb == "kk") {
    rep.line(0, "block_rank", std::to_string(kk.block_rank()));
    rep.line(0, "wreath_rank", std::to_string(kk.wreath().rank()));
    er = &kk.report();
  } else if (verb == "sigma") {
    sig.emplace(g);
    rep.line(0, "letters", std::to_string(sig->letters()));
    rep.line(0, "symmetric_order",
             std::to_string(sig->target().point_group().order()));
    er = &sig->report();
  } else {
    throw UsageError("unknown embed verb '" + verb + "'");
  }
  rep.line(0, "homomorphism", fmt_bool(er->homomorphism));
  rep.line(0, "injective", fmt_bool(er->injective));
  rep.line(0, "projection", fmt_bool(er->triangle));
  rep.line(0, "pairs_checked", std::to_string(er->pairs_checked));
  rep.line(0, "products_checked", std::to_string(er->products_checked));
  rep.status(er->passed() ? "certified" : "refuted");
}

inline std::string join_names(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += v[i];
  }
  return out;
}

inline void put_system_summary(Report& rep, const vab::ApproxSystem& sys) {
  rep.line(0, "generators", join_names(sys.source_gens));
  rep.line(0, "rank", std::to_string(sys.ghat.rank()));
  rep.line(0, "point_order", std::to_string(sys.ghat.point_group().order()));
  rep.line(0, "quotient_order", std::to_string(sys.G.order()));
}

inline void cmd_approx(Args& a, Report& rep) {
  const std::string& verb = a.pos(1, "approx verb (check, ptorsion, build)");
  if (verb == "check") {
    std::uint64_t seed = a.take_seed(0x516a);
    vab::ApproxSystem sys =
        io::build_as(io::parse_as(io::read_file(a.pos(2, "an .as file"))), seed);
    a.finish(3);
    rep.seed(seed);
    put_system_summary(rep, sys);
    rep.line(0, "valid", "true");
    rep.status("certified");
    return;
  }
  if (verb == "ptorsion") {
    std::uint64_t seed = a.take_seed(0x516a);
    vab::ApproxSystem sys =
        io::build_as(io::parse_as(io::read_file(a.pos(2, "an .as file"))), seed);
    Int p = a.take_int_required("--p");
    std::string gname = a.take_required("--g");
    a.finish(3);
    rep.seed(seed);
    std::size_t gi = resolve_element(sys.G, gname);
    vab::PTorsionCheck c = vab::p_torsion_check(sys, p, gi);
    rep.line(0, "p", to_string(p));
    rep.line(0, "g", sys.G.label(gi));
    rep.line(0, "torsion_free", fmt_bool(c.torsion_free));
    if (c.witness) {
      rep.line(0, "witness");
      rep.line(1, "point", sys.ghat.point_group().label(c.witness->q));
      rep.line(1, "vector", fmt_vec(c.witness->v));
    }
    rep.status(c.torsion_free ? "certified" : "refuted");
    return;
  }
  if (verb == "build") {
    std::uint64_t seed = a.take_seed(0x516a);
    std::vector<std::string> files = a.take_list("--systems");
    if (files.empty()) throw UsageError("flag --systems is required");
    std::string pairspec = a.take_required("--pairs");
    a.finish(2);
    rep.seed(seed);
    std::vector<vab::ApproxSystem> systems;
    for (const auto& f : files)
      systems.push_back(io::build_as(io::parse_as(io::read_file(f)), seed));
    std::vector<std::pair<Int, std::size_t>> pairs;
    std::size_t start = 0;
    while (start <= pairspec.size()) {
      auto comma = pairspec.find(',', start);
      std::string item = pairspec.substr(
          start, comma == std::string::npos ? std::string::npos : comma - start);
      auto colon = item.find(':');
      if (item.empty() || colon == std::string::npos)
        throw UsageError("--pairs entries must look like P:ELEMENT");
      Int p = io::detail::parse_int_tok(item.substr(0, colon), 1);
      pairs.emplace_back(
          p, resolve_element(systems[0].G, item.substr(colon + 1)));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    vab::QuotientResult res = vab::build_torsion_free_quotient(systems, pairs);
    rep.line(0, "systems", std::to_string(systems.size()));
    for (const auto& pc : res.report.pairs) {
      rep.line(0, "pair");
      rep.line(1, "p", to_string(pc.p));
      rep.line(1, "g", systems[0].G.label(pc.g));
      rep.line(1, "covered_by", fmt_indices(pc.covered_by));
      rep.line(1, "final_ok", fmt_bool(pc.final_ok));
    }
    rep.line(0, "result");
    rep.line(1, "rank", std::to_string(res.system.ghat.rank()));
    rep.line(1, "point_order",
             std::to_string(res.system.ghat.point_group().order()));
    rep.line(1, "torsion_free",
             fmt_bool(res.report.certified_torsion_free));
    rep.status(res.report.certified_torsion_free ? "certified" : "refuted");
    return;
  }
  throw UsageError("unknown approx verb '" + verb + "'");
}

inline void cmd_witt(Args& a, Report& rep) {
  const std::string& verb = a.pos(1, "witt verb (coker, ftilde, pdiv)");
  Int p = a.take_int_required("--p");
  std::size_t deg = a.take_size("--deg", 1);
  std::size_t n = a.take_size("--n", 1);
  a.finish(2);
  rep.line(0, "p", to_string(p));
  rep.line(0, "deg", std::to_string(deg));
  rep.line(0, "n", std::to_string(n));
  if (verb == "coker") {
    witt::ArtinSchreierResult r = witt::artin_schreier_cokernel(p, deg, n);
    rep.line(0, "ring_order", std::to_string(r.stage.total));
    rep.line(0, "cokernel_order", std::to_string(r.stage.reps.size()));
    put_invariants(rep, 0, r.stage.invariants);
    rep.line(0, "next_level");
    rep.line(1, "cokernel_order", std::to_string(r.next.reps.size()));
    put_invariants(rep, 1, r.next.invariants);
    rep.status("ok");
    return;
  }
  if (verb == "ftilde") {
    bool ok = witt::check_ftilde_equals_ftildeV(p, deg, n);
    rep.line(0, "frobenius_commutes_with_shift", fmt_bool(ok));
    rep.status(ok ? "certified" : "refuted");
    return;
  }
  if (verb == "pdiv") {
    bool ok = witt::p_divisibility_stage(p, deg, n);
    rep.line(0, "transition_divisible_by_p", fmt_bool(ok));
    rep.status(ok ? "certified" : "refuted");
    return;
  }
  throw UsageError("unknown witt verb '" + verb + "'");
}

inline void cmd_galois(Args& a, Report& rep) {
  const std::string& verb = a.pos(1, "galois verb (check, fixed, basis)");
  Int q = a.take_int_required("--q");
  std::size_t n = a.take_size("--n", 1);
  Int s = a.take_int_required("--s");
  if (verb == "check") {
    std::string subfile = a.take_required("--subgroup");
    a.finish(2);
    galois::LaurentStage st = galois::make_stage(q, n, s);
    std::vector<galois::StageGroupElement> gens;
    for (const auto& g : io::parse_sub(io::read_file(subfile)))
      gens.push_back(st.canonical(g));
    auto closure = galois::generate_subgroup(st, gens);
    galois::GaloisCertificate cert = galois::galois_criterion(st, gens);
    rep.line(0, "q", to_string(q));
    rep.line(0, "vars", std::to_string(n));
    rep.line(0, "s", to_string(s));
    rep.line(0, "theta", std::to_string(st.field().index_of(st.theta())));
    rep.line(0, "subgroup_order", std::to_string(closure.size()));
    rep.line(0, "points_checked", std::to_string(cert.points_checked));
    rep.line(0, "galois", fmt_bool(cert.galois));
    if (!cert.galois) {
      std::vector<std::size_t> pt;
      for (const auto& c : cert.witness_point)
        pt.push_back(st.field().index_of(c));
      rep.line(0, "witness");
      rep.line(1, "point", fmt_indices(pt));
      rep.line(1, "element", io::serialize_sub_element(cert.witness));
    }
    rep.status(cert.galois ? "certified" : "refuted");
    return;
  }
  if (verb == "fixed") {
    long bound = static_cast<long>(a.take_size("--bound", 0));
    a.finish(2);
    galois::LaurentStage st = galois::make_stage(q, n, s);
    bool ok = galois::fixed_ring_check(st, bound);
    rep.line(0, "q", to_string(q));
    rep.line(0, "vars", std::to_string(n));
    rep.line(0, "s", to_string(s));
    rep.line(0, "fixed_ring_is_integral_subring", fmt_bool(ok));
    rep.status(ok ? "certified" : "refuted");
    return;
  }
  if (verb == "basis") {
    long bound = static_cast<long>(a.take_size("--bound", 0));
    std::uint64_t seed = a.take_seed(0xba515);
    a.finish(2);
    galois::LaurentStage st = galois::make_stage(q, n, s);
    galois::SeparabilityReport r =
        galois::separability_basis_check(st, bound, seed);
    rep.seed(seed);
    rep.line(0, "q", to_string(q));
    rep.line(0, "s", to_string(s));
    rep.line(0, "basis_exponents", fmt_vec(r.basis));
    rep.line(0, "free_module_basis", fmt_bool(r.ok));
    rep.status(r.ok ? "certified" : "refuted");
    return;
  }
  throw UsageError("unknown galois verb '" + verb + "'");
}

inline void dispatch(Args& a, Report& rep) {
  const std::string& cmd = a.pos(0, "command\n" + std::string(kUsage));
  if (cmd == "ttf") return cmd_ttf(a, rep);
  if (cmd == "ab") return cmd_ab(a, rep);
  if (cmd == "virtab") return cmd_virtab(a, rep);
  if (cmd == "embed") return cmd_embed(a, rep);
  if (cmd == "approx") return cmd_approx(a, rep);
  if (cmd == "witt") return cmd_witt(a, rep);
  if (cmd == "galois") return cmd_galois(a, rep);
  throw UsageError("unknown command '" + cmd + "'\n" + std::string(kUsage));
}

} // namespace detail

inline int exit_code_for(const std::string& status) {
  if (status == "ok" || status == "certified") return kExitOk;
  if (status == "refuted") return kExitRefuted;
  if (status == "budget") return kExitBudget;
  return kExitUsage;
}

inline int run(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  const std::string echo = detail::join_args(args);
  try {
    Report rep(echo);
    detail::Args a(args);
    detail::dispatch(a, rep);
    out << rep.str();
    return exit_code_for(rep.status());
  } catch (const BudgetExceeded& e) {
    Report rep(echo);
    rep.status("budget");
    rep.line(0, "error", detail::first_line(e.what()));
    rep.line(0, "progress", detail::first_line(e.progress()));
    out << rep.str();
    err << "error: " << e.what() << " (" << e.progress() << ")\n";
    return kExitBudget;
  } catch (const std::exception& e) {
    // ParseError, ValidationError, UsageError: bad input of one kind or
    // another.  The report keeps the first line; the full text goes to err.
    Report rep(echo);
    rep.status("error");
    rep.line(0, "error", detail::first_line(e.what()));
    out << rep.str();
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

} // namespace torsion::cli

#endif
