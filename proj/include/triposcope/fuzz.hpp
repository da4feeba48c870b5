#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "triposcope/catalog.hpp"
#include "triposcope/common.hpp"
#include "triposcope/lang.hpp"
#include "triposcope/parse.hpp"

namespace triposcope {

// ---------------------------------------------------------------------------
// Seeded random generation of doctrines, signatures, terms, formulas and rule
// instances. Every draw goes through one Rng in a fixed order, so a seed
// pins the whole run.
// ---------------------------------------------------------------------------

struct GenLimits {
  int max_sort_size = 3;
  int max_frame_size = 5;
  int max_formula_depth = 4;
  int max_ctx_vars = 2;
};

inline FramePtr random_frame(Rng& rng, int max_size = 5) {
  const auto& all = frames_up_to_5();
  std::vector<FramePtr> ok;
  for (const auto& f : all)
    if (f->size() <= max_size) ok.push_back(f);
  return rng.pick(ok);
}

inline Predicate random_predicate(Rng& rng, const SetPtr& c, const FramePtr& f) {
  std::vector<int> v(static_cast<size_t>(c->size()));
  for (auto& x : v) x = rng.below(f->size());
  return make_predicate(c, f, std::move(v));
}

inline FinMap random_finmap(Rng& rng, const SetPtr& a, const SetPtr& b) {
  require(b->size() > 0 || a->size() == 0, "map-error", "no maps into the empty set");
  std::vector<int> t(static_cast<size_t>(a->size()));
  for (auto& x : t) x = rng.below(b->size());
  return make_map(a, b, std::move(t));
}

inline SignaturePtr random_signature(Rng& rng, Mode mode, const GenLimits& lim = {}) {
  auto sig = std::make_shared<Signature>();
  sig->doctrine = Doctrine{random_frame(rng, lim.max_frame_size), mode};
  static const std::vector<std::string> sort_names = {"A", "B", "C"};
  int nsorts = rng.range(2, 3);
  bool have_nonempty = false;
  for (int i = 0; i < nsorts; ++i) {
    int size = rng.chance(1, 6) ? 0 : rng.range(1, lim.max_sort_size);
    if (i == nsorts - 1 && !have_nonempty) size = rng.range(1, lim.max_sort_size);
    if (size > 0) have_nonempty = true;
    std::vector<std::string> els;
    for (int e = 0; e < size; ++e)
      els.push_back(sort_names[static_cast<size_t>(i)] + std::to_string(e + 1));
    add_sort(*sig, sort_names[static_cast<size_t>(i)],
             make_set(sort_names[static_cast<size_t>(i)], std::move(els)));
  }
  std::vector<std::string> declared(sort_names.begin(), sort_names.begin() + nsorts);
  int nfun = rng.range(1, 2);
  for (int i = 0; i < nfun; ++i) {
    int arity = rng.range(1, 2);
    std::vector<std::string> args;
    for (int a = 0; a < arity; ++a) args.push_back(rng.pick(declared));
    std::string result = rng.pick(declared);
    SetPtr dom = nested_product(*sig, args);
    SetPtr cod = sig->sort(result);
    if (cod->size() == 0 && dom->size() > 0) continue;  // no such map
    add_function(*sig, "f" + std::to_string(i + 1), args, result, random_finmap(rng, dom, cod));
  }
  int nrel = rng.range(1, 3);
  for (int i = 0; i < nrel; ++i) {
    int arity = rng.range(1, 2);
    std::vector<std::string> args;
    for (int a = 0; a < arity; ++a) args.push_back(rng.pick(declared));
    SetPtr carrier = nested_product(*sig, args);
    add_relation(*sig, "r" + std::to_string(i + 1), args,
                 random_predicate(rng, carrier, sig->doctrine.frame));
  }
  return sig;
}

inline Context random_context(Rng& rng, const Signature& sig, int max_vars) {
  Context ctx;
  int n = rng.range(0, max_vars);
  static const std::vector<std::string> names = {"x", "y0", "z0", "w"};
  std::vector<std::string> sorts;
  for (const auto& [name, s] : sig.sorts) sorts.push_back(name);
  for (int i = 0; i < n; ++i)
    ctx.vars.emplace_back(names[static_cast<size_t>(i)], rng.pick(sorts));
  return ctx;
}

// a random term of the given sort, or nothing if none can be built
inline std::optional<TermPtr> random_term_of(Rng& rng, const Signature& sig, const Context& ctx,
                                             const std::string& sort, int depth) {
  std::vector<TermPtr> vars;
  for (const auto& [name, s] : ctx.vars)
    if (s == sort) vars.push_back(mk_var(name));
  std::vector<const FunctionSymbol*> fns;
  std::vector<std::string> fnames;
  if (depth > 0)
    for (const auto& [name, fs] : sig.functions)
      if (fs.result_sort == sort) {
        fns.push_back(&fs);
        fnames.push_back(name);
      }
  for (int attempt = 0; attempt < 4; ++attempt) {
    bool use_fn = !fns.empty() && (vars.empty() || rng.chance(1, 3));
    if (!use_fn) {
      if (vars.empty()) continue;
      return rng.pick(vars);
    }
    int pick = rng.below(static_cast<int>(fns.size()));
    const FunctionSymbol& fs = *fns[static_cast<size_t>(pick)];
    std::vector<TermPtr> args;
    bool ok = true;
    for (const auto& as : fs.arg_sorts) {
      auto sub = random_term_of(rng, sig, ctx, as, depth - 1);
      if (!sub) { ok = false; break; }
      args.push_back(*sub);
    }
    if (ok) return mk_app(fnames[static_cast<size_t>(pick)], std::move(args));
  }
  if (!vars.empty()) return rng.pick(vars);
  return std::nullopt;
}

// some term somewhere: tries every sort in a random rotation
inline std::optional<std::pair<TermPtr, std::string>> random_term_any(Rng& rng,
                                                                      const Signature& sig,
                                                                      const Context& ctx,
                                                                      int depth) {
  std::vector<std::string> sorts;
  for (const auto& [name, s] : sig.sorts) sorts.push_back(name);
  int start = rng.below(static_cast<int>(sorts.size()));
  for (size_t i = 0; i < sorts.size(); ++i) {
    const std::string& s = sorts[(static_cast<size_t>(start) + i) % sorts.size()];
    if (auto t = random_term_of(rng, sig, ctx, s, depth)) return std::make_pair(*t, s);
  }
  return std::nullopt;
}

inline FormulaPtr random_formula(Rng& rng, const Signature& sig, const Context& ctx, int depth) {
  bool tripos = sig.doctrine.mode == Mode::tripos;
  std::vector<int> kinds = {0, 1, 2};
  if (tripos) kinds.push_back(3);
  if (depth > 0) {
    kinds.insert(kinds.end(), {4, 5, 9});
    if (tripos) kinds.insert(kinds.end(), {6, 7, 8});
  }
  for (int attempt = 0; attempt < 6; ++attempt) {
    int kind = kinds[static_cast<size_t>(rng.below(static_cast<int>(kinds.size())))];
    switch (kind) {
      case 0: {  // atom
        if (sig.relations.empty()) continue;
        std::vector<std::string> rels;
        for (const auto& [name, r] : sig.relations) rels.push_back(name);
        const std::string& rname = rng.pick(rels);
        const RelationSymbol& rs = sig.relations.at(rname);
        std::vector<TermPtr> args;
        bool ok = true;
        for (const auto& as : rs.arg_sorts) {
          auto t = random_term_of(rng, sig, ctx, as, 1);
          if (!t) { ok = false; break; }
          args.push_back(*t);
        }
        if (!ok) continue;
        return mk_atom(rname, std::move(args));
      }
      case 1: {  // equality
        auto a = random_term_any(rng, sig, ctx, 1);
        if (!a) continue;
        auto b = random_term_of(rng, sig, ctx, a->second, 1);
        if (!b) continue;
        return mk_equals(a->first, *b);
      }
      case 2:
        return mk_top();
      case 3:
        return mk_bottom();  // only reachable in tripos mode
      case 4:  // conj
        return mk_conj(random_formula(rng, sig, ctx, depth - 1),
                       random_formula(rng, sig, ctx, depth - 1));
      case 5: {  // exists
        std::string v = fresh_name("v", [&] {
          std::set<std::string> used;
          for (const auto& [n, s] : ctx.vars) used.insert(n);
          return used;
        }());
        std::vector<std::string> sorts;
        for (const auto& [name, s] : sig.sorts) sorts.push_back(name);
        const std::string& s = rng.pick(sorts);
        return mk_exists(v, s, random_formula(rng, sig, ctx.extended(v, s), depth - 1));
      }
      case 6:
        return mk_disj(random_formula(rng, sig, ctx, depth - 1),
                       random_formula(rng, sig, ctx, depth - 1));
      case 7:
        return mk_implies(random_formula(rng, sig, ctx, depth - 1),
                          random_formula(rng, sig, ctx, depth - 1));
      case 8: {  // forall
        std::string v = fresh_name("u", [&] {
          std::set<std::string> used;
          for (const auto& [n, s] : ctx.vars) used.insert(n);
          return used;
        }());
        std::vector<std::string> sorts;
        for (const auto& [name, s] : sig.sorts) sorts.push_back(name);
        const std::string& s = rng.pick(sorts);
        return mk_forall(v, s, random_formula(rng, sig, ctx.extended(v, s), depth - 1));
      }
      case 9: {  // a second chance for atoms, they carry the most signal
        if (sig.relations.empty()) continue;
        std::vector<std::string> rels;
        for (const auto& [name, r] : sig.relations) rels.push_back(name);
        const std::string& rname = rng.pick(rels);
        const RelationSymbol& rs = sig.relations.at(rname);
        std::vector<TermPtr> args;
        bool ok = true;
        for (const auto& as : rs.arg_sorts) {
          auto t = random_term_of(rng, sig, ctx, as, 1);
          if (!t) { ok = false; break; }
          args.push_back(*t);
        }
        if (!ok) continue;
        return mk_atom(rname, std::move(args));
      }
      default: continue;
    }
  }
  return mk_top();
}

inline std::vector<FormulaPtr> random_gamma(Rng& rng, const Signature& sig, const Context& ctx,
                                            int depth, int max_n = 2) {
  std::vector<FormulaPtr> out;
  int n = rng.range(0, max_n);
  for (int i = 0; i < n; ++i) out.push_back(random_formula(rng, sig, ctx, depth));
  return out;
}

// ---------------------------------------------------------------------------
// Rule-instance generation. Instances satisfy each rule's side conditions by
// construction; check_rule then decides soundness of the instance.
// ---------------------------------------------------------------------------

inline RuleInstance random_rule_instance(Rng& rng, Rule rule, const GenLimits& lim = {}) {
  for (;;) {  // retry until the witnesses a rule needs are constructible
    Mode mode = Mode::tripos;
    bool needs_tripos = false;
    for (Rule r : tripos_rules()) needs_tripos |= (r == rule);
    if (!needs_tripos && rule != Rule::pullback_glue) mode = rng.coin() ? Mode::tripos : Mode::regular;
    RuleInstance in;
    in.rule = rule;
    int depth = lim.max_formula_depth;

    if (rule == Rule::pullback_glue) {
      // a fresh signature around a genuine pullback square f: A -> C <- g: B
      auto sig = std::make_shared<Signature>();
      sig->doctrine = Doctrine{random_frame(rng, lim.max_frame_size), mode};
      auto mkset = [&](const std::string& n, int size) {
        std::vector<std::string> els;
        for (int e = 0; e < size; ++e) els.push_back(n + std::to_string(e + 1));
        return make_set(n, std::move(els));
      };
      SetPtr A = mkset("A", rng.range(0, lim.max_sort_size));
      SetPtr B = mkset("B", rng.range(0, lim.max_sort_size));
      SetPtr C = mkset("C", rng.range(1, lim.max_sort_size));
      FinMap f = random_finmap(rng, A, C);
      FinMap g = random_finmap(rng, B, C);
      LimitCone pb = pullback(f, g);
      add_sort(*sig, "A", A);
      add_sort(*sig, "B", B);
      add_sort(*sig, "C", C);
      add_sort(*sig, "D", pb.apex);
      add_function(*sig, "f", {"A"}, "C", f);
      add_function(*sig, "g", {"B"}, "C", g);
      add_function(*sig, "h", {"D"}, "A", pb.legs[0]);
      add_function(*sig, "k", {"D"}, "B", pb.legs[1]);
      int nrel = rng.range(1, 2);
      static const std::vector<std::string> base_sorts = {"A", "B", "C", "D"};
      for (int i = 0; i < nrel; ++i) {
        int arity = rng.range(1, 2);
        std::vector<std::string> args;
        for (int a = 0; a < arity; ++a) args.push_back(rng.pick(base_sorts));
        SetPtr carrier = nested_product(*sig, args);
        add_relation(*sig, "r" + std::to_string(i + 1), args,
                     random_predicate(rng, carrier, sig->doctrine.frame));
      }
      in.sig = sig;
      in.ctx = Context{};
      if (rng.coin()) in.ctx.vars.emplace_back("x", rng.pick(base_sorts));
      in.var = "y0";
      in.sort = "A";
      in.var2 = "z0";
      in.sort2 = "B";
      in.var3 = "p";
      in.f_sym = "f";
      in.g_sym = "g";
      in.h_sym = "h";
      in.k_sym = "k";
      Context cyz = in.ctx.extended("y0", "A").extended("z0", "B");
      in.gamma = random_gamma(rng, *sig, cyz, depth - 1);
      in.Q = random_formula(rng, *sig, cyz, depth - 1);
      return in;
    }

    in.sig = random_signature(rng, mode, lim);
    const Signature& sig = *in.sig;
    in.ctx = random_context(rng, sig, lim.max_ctx_vars);
    in.gamma = random_gamma(rng, sig, in.ctx, depth - 1);
    std::vector<std::string> sorts;
    for (const auto& [name, s] : sig.sorts) sorts.push_back(name);

    switch (rule) {
      case Rule::identity: {
        if (in.gamma.empty()) in.gamma.push_back(random_formula(rng, sig, in.ctx, depth - 1));
        in.index = rng.below(static_cast<int>(in.gamma.size()));
        return in;
      }
      case Rule::exists_intro:
      case Rule::forall_elim: {
        auto witness = random_term_any(rng, sig, in.ctx, 2);
        if (!witness) continue;
        in.t = witness->first;
        in.sort = witness->second;
        in.var = "y";
        in.R = random_formula(rng, sig, in.ctx.extended(in.var, in.sort), depth - 1);
        return in;
      }
      case Rule::exists_elim:
      case Rule::forall_intro: {
        in.var = "y";
        in.sort = rng.pick(sorts);
        in.R = random_formula(rng, sig, in.ctx.extended(in.var, in.sort), depth - 1);
        in.P = random_formula(rng, sig, in.ctx, depth - 1);
        return in;
      }
      case Rule::top_intro:
        return in;
      case Rule::eq_refl: {
        auto witness = random_term_any(rng, sig, in.ctx, 2);
        if (!witness) continue;
        in.t = witness->first;
        return in;
      }
      case Rule::eq_subst: {
        auto a = random_term_any(rng, sig, in.ctx, 2);
        if (!a) continue;
        auto b = random_term_of(rng, sig, in.ctx, a->second, 2);
        if (!b) continue;
        in.s = a->first;
        in.t = *b;
        in.sort = a->second;
        in.var = "y";
        in.R = random_formula(rng, sig, in.ctx.extended(in.var, in.sort), depth - 1);
        return in;
      }
      case Rule::and_elim_left:
      case Rule::and_elim_right:
      case Rule::and_intro:
      case Rule::implies_intro:
      case Rule::implies_elim:
      case Rule::or_intro_left:
      case Rule::or_intro_right:
      case Rule::bot_elim: {
        in.P = random_formula(rng, sig, in.ctx, depth - 1);
        in.Q = random_formula(rng, sig, in.ctx, depth - 1);
        return in;
      }
      case Rule::or_elim: {
        in.P = random_formula(rng, sig, in.ctx, depth - 1);
        in.Q = random_formula(rng, sig, in.ctx, depth - 1);
        in.S = random_formula(rng, sig, in.ctx, depth - 1);
        return in;
      }
      default:
        fail("internal-error", "unhandled rule in the generator");
    }
  }
}

// ---------------------------------------------------------------------------
// Suite scaffolding
// ---------------------------------------------------------------------------

struct SuiteResult {
  std::string suite;
  std::string anchor;  // which law the suite exercises
  std::uint64_t seed = 0;
  long long iterations = 0;
  long long violations = 0;
  std::string first_counterexample;

  bool clean() const { return violations == 0; }
};

inline const std::vector<Rule>& all_rules() {
  static const std::vector<Rule> rules = [] {
    std::vector<Rule> out = regular_rules();
    for (Rule r : tripos_rules()) out.push_back(r);
    out.push_back(Rule::pullback_glue);
    return out;
  }();
  return rules;
}

// soundness of every inference rule on random instances
inline SuiteResult run_soundness_suite(std::uint64_t seed, long long iters_per_rule,
                                       const GenLimits& lim = {}) {
  SuiteResult res{"soundness",
                  "soundness of the inference rules for regular logic, the first-order "
                  "connectives, and the pullback substitution rule",
                  seed, 0, 0, ""};
  Rng rng(seed);
  for (Rule rule : all_rules()) {
    for (long long i = 0; i < iters_per_rule; ++i) {
      RuleInstance in = random_rule_instance(rng, rule, lim);
      RuleCheck rc = check_rule(in);
      ++res.iterations;
      if (!rc.sound) {
        ++res.violations;
        if (res.first_counterexample.empty())
          res.first_counterexample = std::string(rule_name(rule)) + " instance #" +
                                     std::to_string(i) + " falsified at context element " +
                                     rc.witness;
      }
    }
  }
  return res;
}

// the substitution and weakening laws of the interpreter
inline SuiteResult run_substitution_suite(std::uint64_t seed, long long iters,
                                          const GenLimits& lim = {}) {
  SuiteResult res{"substitution",
                  "interpretation commutes with substitution and weakening", seed, 0, 0, ""};
  Rng rng(seed);
  for (long long i = 0; i < iters; ++i) {
    Mode mode = rng.coin() ? Mode::tripos : Mode::regular;
    SignaturePtr sig = random_signature(rng, mode, lim);
    Context ctx = random_context(rng, *sig, lim.max_ctx_vars);
    ++res.iterations;

    // substitution: [[P[u/y]]]_ctx = <id, [[u]]>^* [[P]]_{ctx,y}
    auto u = random_term_any(rng, *sig, ctx, 2);
    if (u) {
      Context cy = ctx.extended("y", u->second);
      FormulaPtr P = random_formula(rng, *sig, cy, lim.max_formula_depth - 1);
      ContextCarrier cc = context_carrier(*sig, ctx);
      ContextCarrier ccy = context_carrier(*sig, cy);
      FinMap uI = interpret_term(*sig, ctx, cc, u->first);
      FinMap graph = cc.proj.empty() ? uI : pairing(identity_map(cc.set), uI);
      Predicate lhs = interpret_formula(*sig, ctx, cc, substitute(P, "y", u->first));
      Predicate rhs = reindex(graph, interpret_formula(*sig, cy, ccy, P));
      if (!pred_eq(lhs, rhs)) {
        ++res.violations;
        if (res.first_counterexample.empty())
          res.first_counterexample = "substitution law failed on " + print_formula(P);
        continue;
      }
    }

    // weakening: [[P]]_{ctx,y} = pi^* [[P]]_ctx  (insertion at the end)
    FormulaPtr P = random_formula(rng, *sig, ctx, lim.max_formula_depth - 1);
    std::vector<std::string> sorts;
    for (const auto& [name, s] : sig->sorts) sorts.push_back(name);
    auto [wctx, wP] = weaken(*sig, ctx, P, static_cast<int>(ctx.vars.size()), "y0w",
                             rng.pick(sorts));
    ContextCarrier cc = context_carrier(*sig, ctx);
    ContextCarrier ccw = cc;
    FinMap back = extend_context_carrier(ccw, sig->sort(wctx.vars.back().second));
    Predicate lhs = interpret_formula(*sig, wctx, ccw, wP);
    Predicate rhs = reindex(back, interpret_formula(*sig, ctx, cc, P));
    if (!pred_eq(lhs, rhs)) {
      ++res.violations;
      if (res.first_counterexample.empty())
        res.first_counterexample = "weakening law failed on " + print_formula(P);
    }
  }
  return res;
}

// congruence: rewriting a random subformula by a semantically equal one
// (top-conjunction padding) preserves the whole interpretation
inline SuiteResult run_congruence_suite(std::uint64_t seed, long long iters,
                                        const GenLimits& lim = {}) {
  SuiteResult res{"congruence", "semantic equality of subformulas is a congruence",
                  seed, 0, 0, ""};
  Rng rng(seed);
  std::function<FormulaPtr(const FormulaPtr&, int&, int)> pad =
      [&](const FormulaPtr& f, int& countdown, int mode) -> FormulaPtr {
    if (countdown-- == 0) return mode == 0 ? mk_conj(f, mk_top()) : mk_conj(mk_top(), f);
    std::vector<FormulaPtr> subs;
    for (const auto& s : f->subs) subs.push_back(pad(s, countdown, mode));
    auto g = std::make_shared<Formula>(*f);
    g->subs = std::move(subs);
    return g;
  };
  auto count_nodes = [](const FormulaPtr& f) {
    std::function<int(const FormulaPtr&)> go = [&](const FormulaPtr& x) {
      int n = 1;
      for (const auto& s : x->subs) n += go(s);
      return n;
    };
    return go(f);
  };
  for (long long i = 0; i < iters; ++i) {
    Mode mode = rng.coin() ? Mode::tripos : Mode::regular;
    SignaturePtr sig = random_signature(rng, mode, lim);
    Context ctx = random_context(rng, *sig, lim.max_ctx_vars);
    FormulaPtr P = random_formula(rng, *sig, ctx, lim.max_formula_depth);
    int node = rng.below(count_nodes(P));
    FormulaPtr padded = pad(P, node, rng.coin() ? 0 : 1);
    ++res.iterations;
    if (!pred_eq(interpret_formula(*sig, ctx, P), interpret_formula(*sig, ctx, padded))) {
      ++res.violations;
      if (res.first_counterexample.empty())
        res.first_counterexample = "congruence failed on " + print_formula(P);
    }
  }
  return res;
}

// Frobenius and Beck-Chevalley on random instances
inline SuiteResult run_frobenius_bc_suite(std::uint64_t seed, long long iters) {
  SuiteResult res{"frobenius-bc",
                  "the Frobenius law and the Beck-Chevalley law for existential quantification",
                  seed, 0, 0, ""};
  Rng rng(seed);
  for (long long i = 0; i < iters; ++i) {
    FramePtr fr = random_frame(rng, 6);
    SetPtr A = canonical_set("a", rng.range(0, 4));
    SetPtr B = canonical_set("b", rng.range(1, 4));
    FinMap f = random_finmap(rng, A, B);
    Predicate phi = random_predicate(rng, A, fr);
    Predicate psi = random_predicate(rng, B, fr);
    ++res.iterations;
    if (!check_frobenius(f, phi, psi)) {
      ++res.violations;
      if (res.first_counterexample.empty()) res.first_counterexample = "Frobenius instance failed";
      continue;
    }
    SetPtr C = canonical_set("c", rng.range(1, 4));
    FinMap g = random_finmap(rng, C, B);
    if (!check_beck_chevalley(make_pullback_square(f, g), phi)) {
      ++res.violations;
      if (res.first_counterexample.empty())
        res.first_counterexample = "Beck-Chevalley instance failed";
    }
  }
  return res;
}

}  // namespace triposcope
