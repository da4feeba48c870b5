#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "triposcope/common.hpp"
#include "triposcope/doctrine.hpp"
#include "triposcope/finset.hpp"

namespace triposcope {

// ---------------------------------------------------------------------------
// The internal language: many-sorted terms and formulas over a signature
// whose sorts are finite sets, whose function symbols are finite maps, and
// whose relation symbols are frame-valued predicates.
//
// Conventions fixed here (the underlying math leaves them open):
//   - n-ary function symbols and relation symbols take their arguments from
//     the right-nested product A1 x (A2 x (... An));
//   - context carriers grow on the right, [ctx, y] = ctx-carrier x sort(y),
//     so the quantifier projection is the first product leg;
//   - in regular mode the connectives are atoms, =, T, &, ex; disjunction,
//     F, => and all are tripos-mode only.
// ---------------------------------------------------------------------------

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  enum class Kind { var, app };
  Kind kind;
  std::string name;           // variable name, or function symbol
  std::vector<TermPtr> args;  // nonempty exactly for app
};

inline TermPtr mk_var(std::string name) {
  return std::make_shared<Term>(Term{Term::Kind::var, std::move(name), {}});
}
inline TermPtr mk_app(std::string fn, std::vector<TermPtr> args) {
  return std::make_shared<Term>(Term{Term::Kind::app, std::move(fn), std::move(args)});
}

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  enum class Kind { atom, equals, top, bottom, conj, disj, implies, exists, forall };
  Kind kind;
  std::string name;             // atom: relation symbol; quantifier: bound variable
  std::string sort;             // quantifier: sort name
  std::vector<TermPtr> terms;   // atom arguments, or {lhs, rhs} for equals
  std::vector<FormulaPtr> subs; // connective children, or the quantifier body
};

inline FormulaPtr mk_atom(std::string rel, std::vector<TermPtr> args) {
  return std::make_shared<Formula>(
      Formula{Formula::Kind::atom, std::move(rel), "", std::move(args), {}});
}
inline FormulaPtr mk_equals(TermPtr a, TermPtr b) {
  return std::make_shared<Formula>(
      Formula{Formula::Kind::equals, "", "", {std::move(a), std::move(b)}, {}});
}
inline FormulaPtr mk_top() {
  return std::make_shared<Formula>(Formula{Formula::Kind::top, "", "", {}, {}});
}
inline FormulaPtr mk_bottom() {
  return std::make_shared<Formula>(Formula{Formula::Kind::bottom, "", "", {}, {}});
}
inline FormulaPtr mk_conj(FormulaPtr a, FormulaPtr b) {
  return std::make_shared<Formula>(
      Formula{Formula::Kind::conj, "", "", {}, {std::move(a), std::move(b)}});
}
inline FormulaPtr mk_disj(FormulaPtr a, FormulaPtr b) {
  return std::make_shared<Formula>(
      Formula{Formula::Kind::disj, "", "", {}, {std::move(a), std::move(b)}});
}
inline FormulaPtr mk_implies(FormulaPtr a, FormulaPtr b) {
  return std::make_shared<Formula>(
      Formula{Formula::Kind::implies, "", "", {}, {std::move(a), std::move(b)}});
}
inline FormulaPtr mk_exists(std::string var, std::string sort, FormulaPtr body) {
  return std::make_shared<Formula>(
      Formula{Formula::Kind::exists, std::move(var), std::move(sort), {}, {std::move(body)}});
}
inline FormulaPtr mk_forall(std::string var, std::string sort, FormulaPtr body) {
  return std::make_shared<Formula>(
      Formula{Formula::Kind::forall, std::move(var), std::move(sort), {}, {std::move(body)}});
}

inline bool term_eq(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (a->kind != b->kind || a->name != b->name || a->args.size() != b->args.size()) return false;
  for (size_t i = 0; i < a->args.size(); ++i)
    if (!term_eq(a->args[i], b->args[i])) return false;
  return true;
}

inline bool formula_eq(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (a->kind != b->kind || a->name != b->name || a->sort != b->sort ||
      a->terms.size() != b->terms.size() || a->subs.size() != b->subs.size())
    return false;
  for (size_t i = 0; i < a->terms.size(); ++i)
    if (!term_eq(a->terms[i], b->terms[i])) return false;
  for (size_t i = 0; i < a->subs.size(); ++i)
    if (!formula_eq(a->subs[i], b->subs[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Signatures, contexts, judgments
// ---------------------------------------------------------------------------

struct FunctionSymbol {
  std::vector<std::string> arg_sorts;
  std::string result_sort;
  FinMap map;  // domain: right-nested product of the argument sorts
};

struct RelationSymbol {
  std::vector<std::string> arg_sorts;
  Predicate pred;  // carrier: right-nested product of the argument sorts
};

struct Signature {
  Doctrine doctrine;
  std::map<std::string, SetPtr> sorts;
  std::map<std::string, FunctionSymbol> functions;
  std::map<std::string, RelationSymbol> relations;

  const SetPtr& sort(const std::string& name) const {
    auto it = sorts.find(name);
    if (it == sorts.end()) fail("unknown-symbol", "no sort '" + name + "'");
    return it->second;
  }
};

using SignaturePtr = std::shared_ptr<const Signature>;

inline SetPtr nested_product(const Signature& sig, const std::vector<std::string>& sort_names) {
  require(!sort_names.empty(), "signature-error", "symbols need at least one argument sort");
  SetPtr acc = sig.sort(sort_names.back());
  for (size_t i = sort_names.size() - 1; i-- > 0;)
    acc = product(sig.sort(sort_names[i]), acc).apex;
  return acc;
}

inline void add_sort(Signature& sig, const std::string& name, SetPtr s) {
  require(!sig.sorts.count(name), "duplicate-id", "sort '" + name + "' declared twice");
  sig.sorts.emplace(name, std::move(s));
}

inline void add_function(Signature& sig, const std::string& name,
                         std::vector<std::string> arg_sorts, std::string result_sort,
                         FinMap map) {
  require(!sig.functions.count(name), "duplicate-id", "function '" + name + "' declared twice");
  require(same_set(map.dom, nested_product(sig, arg_sorts)), "signature-error",
          "function '" + name + "' domain is not the product of its argument sorts");
  require(same_set(map.cod, sig.sort(result_sort)), "signature-error",
          "function '" + name + "' codomain is not its result sort");
  sig.functions.emplace(name, FunctionSymbol{std::move(arg_sorts), std::move(result_sort),
                                             std::move(map)});
}

inline void add_relation(Signature& sig, const std::string& name,
                         std::vector<std::string> arg_sorts, Predicate pred) {
  require(!sig.relations.count(name), "duplicate-id", "relation '" + name + "' declared twice");
  require(same_set(pred.carrier, nested_product(sig, arg_sorts)), "signature-error",
          "relation '" + name + "' carrier is not the product of its argument sorts");
  require(same_frame(pred.frame, sig.doctrine.frame), "frame-mismatch",
          "relation '" + name + "' valued outside the doctrine's frame");
  sig.relations.emplace(name, RelationSymbol{std::move(arg_sorts), std::move(pred)});
}

struct Context {
  std::vector<std::pair<std::string, std::string>> vars;  // (name, sort name)

  int find(const std::string& name) const {
    for (size_t i = 0; i < vars.size(); ++i)
      if (vars[i].first == name) return static_cast<int>(i);
    return -1;
  }
  Context extended(const std::string& name, const std::string& sort) const {
    require(find(name) == -1, "context-error", "variable '" + name + "' already in context");
    Context out = *this;
    out.vars.emplace_back(name, sort);
    return out;
  }
};

struct Judgment {
  Context ctx;
  std::vector<FormulaPtr> premises;
  FormulaPtr conclusion;
};

// ---------------------------------------------------------------------------
// Sort checking
// ---------------------------------------------------------------------------

inline std::string sort_of_term(const Signature& sig, const Context& ctx, const TermPtr& t) {
  if (t->kind == Term::Kind::var) {
    int i = ctx.find(t->name);
    if (i == -1) fail("unbound-variable", "variable '" + t->name + "' not in context");
    return ctx.vars[static_cast<size_t>(i)].second;
  }
  auto it = sig.functions.find(t->name);
  if (it == sig.functions.end()) fail("unknown-symbol", "no function '" + t->name + "'");
  const FunctionSymbol& fs = it->second;
  require(fs.arg_sorts.size() == t->args.size(), "sort-mismatch",
          "function '" + t->name + "' applied to the wrong number of arguments");
  for (size_t i = 0; i < t->args.size(); ++i) {
    std::string got = sort_of_term(sig, ctx, t->args[i]);
    require(got == fs.arg_sorts[i], "sort-mismatch",
            "argument " + std::to_string(i + 1) + " of '" + t->name + "' has sort '" + got +
                "', expected '" + fs.arg_sorts[i] + "'");
  }
  return fs.result_sort;
}

inline void check_formula(const Signature& sig, const Context& ctx, const FormulaPtr& f) {
  Mode mode = sig.doctrine.mode;
  switch (f->kind) {
    case Formula::Kind::atom: {
      auto it = sig.relations.find(f->name);
      if (it == sig.relations.end()) fail("unknown-symbol", "no relation '" + f->name + "'");
      const RelationSymbol& rs = it->second;
      require(rs.arg_sorts.size() == f->terms.size(), "sort-mismatch",
              "relation '" + f->name + "' applied to the wrong number of arguments");
      for (size_t i = 0; i < f->terms.size(); ++i) {
        std::string got = sort_of_term(sig, ctx, f->terms[i]);
        require(got == rs.arg_sorts[i], "sort-mismatch",
                "argument " + std::to_string(i + 1) + " of '" + f->name + "' has sort '" + got +
                    "', expected '" + rs.arg_sorts[i] + "'");
      }
      return;
    }
    case Formula::Kind::equals: {
      std::string a = sort_of_term(sig, ctx, f->terms[0]);
      std::string b = sort_of_term(sig, ctx, f->terms[1]);
      require(a == b, "sort-mismatch", "equality between sorts '" + a + "' and '" + b + "'");
      return;
    }
    case Formula::Kind::top:
      return;
    case Formula::Kind::bottom:
      require(mode == Mode::tripos, "non-regular-connective", "F needs tripos mode");
      return;
    case Formula::Kind::conj:
      check_formula(sig, ctx, f->subs[0]);
      check_formula(sig, ctx, f->subs[1]);
      return;
    case Formula::Kind::disj:
    case Formula::Kind::implies:
      require(mode == Mode::tripos, "non-regular-connective",
              f->kind == Formula::Kind::disj ? "| needs tripos mode" : "=> needs tripos mode");
      check_formula(sig, ctx, f->subs[0]);
      check_formula(sig, ctx, f->subs[1]);
      return;
    case Formula::Kind::exists:
    case Formula::Kind::forall: {
      if (f->kind == Formula::Kind::forall)
        require(mode == Mode::tripos, "non-regular-connective", "all needs tripos mode");
      sig.sort(f->sort);
      check_formula(sig, ctx.extended(f->name, f->sort), f->subs[0]);
      return;
    }
  }
}

// ---------------------------------------------------------------------------
// Free variables, substitution (capture-avoiding), weakening
// ---------------------------------------------------------------------------

inline void free_vars_term(const TermPtr& t, std::set<std::string>& out) {
  if (t->kind == Term::Kind::var)
    out.insert(t->name);
  else
    for (const auto& a : t->args) free_vars_term(a, out);
}

inline void free_vars_formula(const FormulaPtr& f, std::set<std::string>& out) {
  for (const auto& t : f->terms) free_vars_term(t, out);
  if (f->kind == Formula::Kind::exists || f->kind == Formula::Kind::forall) {
    std::set<std::string> inner;
    free_vars_formula(f->subs[0], inner);
    inner.erase(f->name);
    out.insert(inner.begin(), inner.end());
  } else {
    for (const auto& s : f->subs) free_vars_formula(s, out);
  }
}

inline std::set<std::string> free_vars(const FormulaPtr& f) {
  std::set<std::string> out;
  free_vars_formula(f, out);
  return out;
}

inline std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  if (!avoid.count(base)) return base;
  for (int k = 1;; ++k) {
    std::string cand = base + "'" + (k > 1 ? std::to_string(k) : "");
    if (!avoid.count(cand)) return cand;
  }
}

inline TermPtr subst_term(const TermPtr& t, const std::string& var, const TermPtr& u) {
  if (t->kind == Term::Kind::var) return t->name == var ? u : t;
  bool changed = false;
  std::vector<TermPtr> args;
  args.reserve(t->args.size());
  for (const auto& a : t->args) {
    TermPtr n = subst_term(a, var, u);
    changed |= (n != a);
    args.push_back(std::move(n));
  }
  return changed ? mk_app(t->name, std::move(args)) : t;
}

// P[u/var], renaming bound variables that would capture a free variable of u
inline FormulaPtr substitute(const FormulaPtr& f, const std::string& var, const TermPtr& u) {
  switch (f->kind) {
    case Formula::Kind::atom: {
      std::vector<TermPtr> args;
      args.reserve(f->terms.size());
      for (const auto& t : f->terms) args.push_back(subst_term(t, var, u));
      return mk_atom(f->name, std::move(args));
    }
    case Formula::Kind::equals:
      return mk_equals(subst_term(f->terms[0], var, u), subst_term(f->terms[1], var, u));
    case Formula::Kind::top:
    case Formula::Kind::bottom:
      return f;
    case Formula::Kind::conj:
      return mk_conj(substitute(f->subs[0], var, u), substitute(f->subs[1], var, u));
    case Formula::Kind::disj:
      return mk_disj(substitute(f->subs[0], var, u), substitute(f->subs[1], var, u));
    case Formula::Kind::implies:
      return mk_implies(substitute(f->subs[0], var, u), substitute(f->subs[1], var, u));
    case Formula::Kind::exists:
    case Formula::Kind::forall: {
      if (f->name == var) return f;  // shadowed
      std::set<std::string> ufree;
      free_vars_term(u, ufree);
      std::string bound = f->name;
      FormulaPtr body = f->subs[0];
      if (ufree.count(bound) && free_vars(body).count(var)) {
        std::set<std::string> avoid = ufree;
        free_vars_formula(body, avoid);
        avoid.insert(var);
        std::string nb = fresh_name(bound, avoid);
        body = substitute(body, bound, mk_var(nb));
        bound = nb;
      }
      FormulaPtr nbody = substitute(body, var, u);
      return f->kind == Formula::Kind::exists ? mk_exists(bound, f->sort, std::move(nbody))
                                              : mk_forall(bound, f->sort, std::move(nbody));
    }
  }
  fail("internal-error", "unreachable formula kind");
}

// Weakening is context surgery: the formula is untouched, only the context
// grows. Returns the widened context; the semantic content is the lemma that
// interpretation commutes with the projection, which the tests replay.
inline std::pair<Context, FormulaPtr> weaken(const Signature& sig, const Context& ctx,
                                             const FormulaPtr& f, int insert_at,
                                             const std::string& var, const std::string& sort) {
  require(insert_at >= 0 && insert_at <= static_cast<int>(ctx.vars.size()), "context-error",
          "weakening position out of range");
  require(ctx.find(var) == -1, "context-error",
          "weakening by '" + var + "' which is already in context");
  sig.sort(sort);
  Context out = ctx;
  out.vars.insert(out.vars.begin() + insert_at, {var, sort});
  return {out, f};
}

// ---------------------------------------------------------------------------
// Interpretation (the structural-induction clauses)
// ---------------------------------------------------------------------------

struct ContextCarrier {
  SetPtr set;
  std::vector<FinMap> proj;  // one projection per context variable
};

// extend on the right; returns the projection back to the smaller carrier
inline FinMap extend_context_carrier(ContextCarrier& cc, const SetPtr& sort) {
  if (cc.proj.empty()) {
    FinMap back = bang(sort);
    cc.set = sort;
    cc.proj = {identity_map(sort)};
    return back;
  }
  LimitCone cone = product(cc.set, sort);
  for (auto& p : cc.proj) p = compose(p, cone.legs[0]);
  FinMap back = cone.legs[0];
  cc.proj.push_back(cone.legs[1]);
  cc.set = cone.apex;
  return back;
}

inline ContextCarrier context_carrier(const Signature& sig, const Context& ctx) {
  ContextCarrier cc{terminal_set(), {}};
  for (const auto& [name, sortname] : ctx.vars) extend_context_carrier(cc, sig.sort(sortname));
  return cc;
}

// right-nested tuple map matching the symbol-domain convention
inline FinMap nested_tuple(const std::vector<FinMap>& comps) {
  require(!comps.empty(), "internal-error", "empty tuple");
  FinMap acc = comps.back();
  for (size_t i = comps.size() - 1; i-- > 0;) acc = pairing(comps[i], acc);
  return acc;
}

// left-nested tuple matching the context-carrier convention; with no
// components it is the unique map to the empty context's carrier
inline FinMap context_tuple(const SetPtr& z, const std::vector<FinMap>& comps) {
  if (comps.empty()) return bang(z);
  FinMap acc = comps[0];
  for (size_t i = 1; i < comps.size(); ++i) acc = pairing(acc, comps[i]);
  return acc;
}

inline FinMap interpret_term(const Signature& sig, const Context& ctx, const ContextCarrier& cc,
                             const TermPtr& t) {
  if (t->kind == Term::Kind::var) {
    int i = ctx.find(t->name);
    if (i == -1) fail("unbound-variable", "variable '" + t->name + "' not in context");
    return cc.proj[static_cast<size_t>(i)];
  }
  auto it = sig.functions.find(t->name);
  if (it == sig.functions.end()) fail("unknown-symbol", "no function '" + t->name + "'");
  std::vector<FinMap> comps;
  comps.reserve(t->args.size());
  for (const auto& a : t->args) comps.push_back(interpret_term(sig, ctx, cc, a));
  return compose(it->second.map, nested_tuple(comps));
}

inline Predicate interpret_formula(const Signature& sig, const Context& ctx,
                                   const ContextCarrier& cc, const FormulaPtr& f) {
  const FramePtr& frame = sig.doctrine.frame;
  switch (f->kind) {
    case Formula::Kind::atom: {
      auto it = sig.relations.find(f->name);
      if (it == sig.relations.end()) fail("unknown-symbol", "no relation '" + f->name + "'");
      std::vector<FinMap> comps;
      comps.reserve(f->terms.size());
      for (const auto& t : f->terms) comps.push_back(interpret_term(sig, ctx, cc, t));
      return reindex(nested_tuple(comps), it->second.pred);
    }
    case Formula::Kind::equals: {
      FinMap a = interpret_term(sig, ctx, cc, f->terms[0]);
      FinMap b = interpret_term(sig, ctx, cc, f->terms[1]);
      require(same_set(a.cod, b.cod), "sort-mismatch", "equality between different sorts");
      return reindex(pairing(a, b), equality_predicate(a.cod, frame));
    }
    case Formula::Kind::top:
      return top_predicate(cc.set, frame);
    case Formula::Kind::bottom:
      require(sig.doctrine.mode == Mode::tripos, "non-regular-connective", "F needs tripos mode");
      return bottom_predicate(cc.set, frame);
    case Formula::Kind::conj:
      return pred_meet(interpret_formula(sig, ctx, cc, f->subs[0]),
                       interpret_formula(sig, ctx, cc, f->subs[1]));
    case Formula::Kind::disj:
      require(sig.doctrine.mode == Mode::tripos, "non-regular-connective", "| needs tripos mode");
      return pred_join(interpret_formula(sig, ctx, cc, f->subs[0]),
                       interpret_formula(sig, ctx, cc, f->subs[1]));
    case Formula::Kind::implies:
      require(sig.doctrine.mode == Mode::tripos, "non-regular-connective", "=> needs tripos mode");
      return pred_imp(interpret_formula(sig, ctx, cc, f->subs[0]),
                      interpret_formula(sig, ctx, cc, f->subs[1]));
    case Formula::Kind::exists:
    case Formula::Kind::forall: {
      if (f->kind == Formula::Kind::forall)
        require(sig.doctrine.mode == Mode::tripos, "non-regular-connective",
                "all needs tripos mode");
      Context inner_ctx = ctx.extended(f->name, f->sort);
      ContextCarrier inner = cc;
      FinMap back = extend_context_carrier(inner, sig.sort(f->sort));
      Predicate body = interpret_formula(sig, inner_ctx, inner, f->subs[0]);
      return f->kind == Formula::Kind::exists ? exists_along(back, body)
                                              : forall_along(back, body);
    }
  }
  fail("internal-error", "unreachable formula kind");
}

inline Predicate interpret_formula(const Signature& sig, const Context& ctx,
                                   const FormulaPtr& f) {
  return interpret_formula(sig, ctx, context_carrier(sig, ctx), f);
}

// ---------------------------------------------------------------------------
// Judgments
// ---------------------------------------------------------------------------

struct HoldsResult {
  bool valid = false;
  std::string witness;  // falsifying carrier element label when invalid

  explicit operator bool() const { return valid; }
};

inline HoldsResult holds(const Signature& sig, const Judgment& j) {
  for (const auto& p : j.premises) check_formula(sig, j.ctx, p);
  check_formula(sig, j.ctx, j.conclusion);
  ContextCarrier cc = context_carrier(sig, j.ctx);
  Predicate lhs = top_predicate(cc.set, sig.doctrine.frame);
  for (const auto& p : j.premises) lhs = pred_meet(lhs, interpret_formula(sig, j.ctx, cc, p));
  Predicate rhs = interpret_formula(sig, j.ctx, cc, j.conclusion);
  if (auto bad = pred_leq_witness(lhs, rhs))
    return HoldsResult{false, cc.set->label(*bad)};
  return HoldsResult{true, ""};
}

// ---------------------------------------------------------------------------
// Rules: an instance packages concrete metavariables; check_rule decides
// whether validity of the premises forces validity of the conclusion.
// ---------------------------------------------------------------------------

enum class Rule {
  identity,
  exists_intro,
  exists_elim,
  top_intro,
  eq_refl,
  eq_subst,
  and_elim_left,
  and_elim_right,
  and_intro,
  forall_intro,
  forall_elim,
  implies_intro,
  implies_elim,
  or_intro_left,
  or_intro_right,
  bot_elim,
  or_elim,
  pullback_glue,
};

inline const char* rule_name(Rule r) {
  switch (r) {
    case Rule::identity: return "identity";
    case Rule::exists_intro: return "exists-intro";
    case Rule::exists_elim: return "exists-elim";
    case Rule::top_intro: return "top-intro";
    case Rule::eq_refl: return "eq-refl";
    case Rule::eq_subst: return "eq-subst";
    case Rule::and_elim_left: return "and-elim-left";
    case Rule::and_elim_right: return "and-elim-right";
    case Rule::and_intro: return "and-intro";
    case Rule::forall_intro: return "forall-intro";
    case Rule::forall_elim: return "forall-elim";
    case Rule::implies_intro: return "implies-intro";
    case Rule::implies_elim: return "implies-elim";
    case Rule::or_intro_left: return "or-intro-left";
    case Rule::or_intro_right: return "or-intro-right";
    case Rule::bot_elim: return "bot-elim";
    case Rule::or_elim: return "or-elim";
    case Rule::pullback_glue: return "pullback-glue";
  }
  return "?";
}

inline const std::vector<Rule>& regular_rules() {
  static const std::vector<Rule> rules = {
      Rule::identity,     Rule::exists_intro,  Rule::exists_elim,
      Rule::top_intro,    Rule::eq_refl,       Rule::eq_subst,
      Rule::and_elim_left, Rule::and_elim_right, Rule::and_intro,
  };
  return rules;
}

inline const std::vector<Rule>& tripos_rules() {
  static const std::vector<Rule> rules = {
      Rule::forall_intro,   Rule::forall_elim, Rule::implies_intro, Rule::implies_elim,
      Rule::or_intro_left,  Rule::or_intro_right, Rule::bot_elim,   Rule::or_elim,
  };
  return rules;
}

struct RuleInstance {
  Rule rule = Rule::identity;
  SignaturePtr sig;
  Context ctx;                      // the base context
  std::vector<FormulaPtr> gamma;
  FormulaPtr P, Q, R, S;
  TermPtr s, t;
  std::string var, sort;            // quantified variable y and its sort
  std::string var2, sort2;          // z (pullback rule)
  std::string var3;                 // p (pullback rule)
  int index = 0;                    // identity rule: which premise
  std::string f_sym, g_sym, h_sym, k_sym;  // pullback rule function symbols
};

struct RuleCheck {
  bool premises_valid = false;
  bool conclusion_valid = false;
  bool sound = false;  // premises valid implies conclusion valid
  std::string witness;
};

inline RuleCheck evaluate_rule(const std::vector<Judgment>& premises, const Judgment& conclusion,
                               const Signature& sig) {
  RuleCheck rc;
  rc.premises_valid = true;
  for (const auto& p : premises)
    if (!holds(sig, p)) {
      rc.premises_valid = false;
      break;
    }
  HoldsResult c = holds(sig, conclusion);
  rc.conclusion_valid = c.valid;
  rc.sound = !rc.premises_valid || rc.conclusion_valid;
  if (!rc.sound) rc.witness = c.witness;
  return rc;
}

inline RuleCheck check_rule(const RuleInstance& in) {
  const Signature& sig = *in.sig;
  const Context& ctx = in.ctx;
  auto J = [&](std::vector<FormulaPtr> prem, FormulaPtr concl, const Context& c) {
    return Judgment{c, std::move(prem), std::move(concl)};
  };
  auto with = [&](const std::vector<FormulaPtr>& base, const FormulaPtr& extra) {
    std::vector<FormulaPtr> out = base;
    out.push_back(extra);
    return out;
  };
  switch (in.rule) {
    case Rule::identity:
      return evaluate_rule({}, J(in.gamma, in.gamma[static_cast<size_t>(in.index)], ctx), sig);
    case Rule::exists_intro: {
      Judgment prem = J(in.gamma, substitute(in.R, in.var, in.t), ctx);
      Judgment concl = J(in.gamma, mk_exists(in.var, in.sort, in.R), ctx);
      return evaluate_rule({prem}, concl, sig);
    }
    case Rule::exists_elim: {
      Judgment prem1 = J(in.gamma, mk_exists(in.var, in.sort, in.R), ctx);
      Judgment prem2 = J(with(in.gamma, in.R), in.P, ctx.extended(in.var, in.sort));
      Judgment concl = J(in.gamma, in.P, ctx);
      return evaluate_rule({prem1, prem2}, concl, sig);
    }
    case Rule::top_intro:
      return evaluate_rule({}, J(in.gamma, mk_top(), ctx), sig);
    case Rule::eq_refl:
      return evaluate_rule({}, J(in.gamma, mk_equals(in.t, in.t), ctx), sig);
    case Rule::eq_subst: {
      Judgment prem1 = J(in.gamma, substitute(in.R, in.var, in.s), ctx);
      Judgment prem2 = J(in.gamma, mk_equals(in.s, in.t), ctx);
      Judgment concl = J(in.gamma, substitute(in.R, in.var, in.t), ctx);
      return evaluate_rule({prem1, prem2}, concl, sig);
    }
    case Rule::and_elim_left:
      return evaluate_rule({J(in.gamma, mk_conj(in.P, in.Q), ctx)}, J(in.gamma, in.P, ctx), sig);
    case Rule::and_elim_right:
      return evaluate_rule({J(in.gamma, mk_conj(in.P, in.Q), ctx)}, J(in.gamma, in.Q, ctx), sig);
    case Rule::and_intro:
      return evaluate_rule({J(in.gamma, in.P, ctx), J(in.gamma, in.Q, ctx)},
                           J(in.gamma, mk_conj(in.P, in.Q), ctx), sig);
    case Rule::forall_intro: {
      Judgment prem = J(in.gamma, in.R, ctx.extended(in.var, in.sort));
      Judgment concl = J(in.gamma, mk_forall(in.var, in.sort, in.R), ctx);
      return evaluate_rule({prem}, concl, sig);
    }
    case Rule::forall_elim: {
      Judgment prem = J(in.gamma, mk_forall(in.var, in.sort, in.R), ctx);
      Judgment concl = J(in.gamma, substitute(in.R, in.var, in.t), ctx);
      return evaluate_rule({prem}, concl, sig);
    }
    case Rule::implies_intro:
      return evaluate_rule({J(with(in.gamma, in.P), in.Q, ctx)},
                           J(in.gamma, mk_implies(in.P, in.Q), ctx), sig);
    case Rule::implies_elim:
      return evaluate_rule({J(in.gamma, mk_implies(in.P, in.Q), ctx), J(in.gamma, in.P, ctx)},
                           J(in.gamma, in.Q, ctx), sig);
    case Rule::or_intro_left:
      return evaluate_rule({J(in.gamma, in.P, ctx)}, J(in.gamma, mk_disj(in.P, in.Q), ctx), sig);
    case Rule::or_intro_right:
      return evaluate_rule({J(in.gamma, in.Q, ctx)}, J(in.gamma, mk_disj(in.P, in.Q), ctx), sig);
    case Rule::bot_elim:
      return evaluate_rule({J(in.gamma, mk_bottom(), ctx)}, J(in.gamma, in.P, ctx), sig);
    case Rule::or_elim: {
      Judgment prem1 = J(in.gamma, mk_disj(in.P, in.Q), ctx);
      Judgment prem2 = J(with(in.gamma, in.P), in.S, ctx);
      Judgment prem3 = J(with(in.gamma, in.Q), in.S, ctx);
      return evaluate_rule({prem1, prem2, prem3}, J(in.gamma, in.S, ctx), sig);
    }
    case Rule::pullback_glue: {
      // premise over (ctx, p): everything substituted through the pullback legs
      TermPtr hp = mk_app(in.h_sym, {mk_var(in.var3)});
      TermPtr kp = mk_app(in.k_sym, {mk_var(in.var3)});
      auto through = [&](const FormulaPtr& f) {
        return substitute(substitute(f, in.var, hp), in.var2, kp);
      };
      std::vector<FormulaPtr> prem_gamma;
      prem_gamma.reserve(in.gamma.size());
      for (const auto& g : in.gamma) prem_gamma.push_back(through(g));
      const std::string& apex_sort = sig.functions.at(in.h_sym).arg_sorts[0];
      Judgment prem = J(prem_gamma, through(in.Q), ctx.extended(in.var3, apex_sort));
      // conclusion over (ctx, y, z) with the equation f(y) = g(z) as a premise
      Context cyz = ctx.extended(in.var, in.sort).extended(in.var2, in.sort2);
      FormulaPtr eq = mk_equals(mk_app(in.f_sym, {mk_var(in.var)}),
                                mk_app(in.g_sym, {mk_var(in.var2)}));
      Judgment concl = J(with(in.gamma, eq), in.Q, cyz);
      return evaluate_rule({prem}, concl, sig);
    }
  }
  fail("internal-error", "unreachable rule");
}

}  // namespace triposcope
