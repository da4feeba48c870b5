#include "doctest.h"

#include "triposcope/fuzz.hpp"
#include "triposcope/lang.hpp"
#include "triposcope/parse.hpp"

using namespace triposcope;

namespace {

// a two-sort signature with binary rho on A, sig on B, phi on A, f: A -> B
SignaturePtr demo_signature(Mode mode) {
  auto s = std::make_shared<Signature>();
  s->doctrine = Doctrine{bool4_frame(), mode};
  auto A = make_set("A", {"a1", "a2"});
  auto B = make_set("B", {"b1", "b2", "b3"});
  add_sort(*s, "A", A);
  add_sort(*s, "B", B);
  add_function(*s, "f", {"A"}, "B", make_map(A, B, {0, 2}));
  Rng rng(17);
  add_relation(*s, "rho", {"A", "A"},
               random_predicate(rng, product(A, A).apex, s->doctrine.frame));
  add_relation(*s, "sig", {"B", "B"},
               random_predicate(rng, product(B, B).apex, s->doctrine.frame));
  add_relation(*s, "phi", {"A"}, random_predicate(rng, A, s->doctrine.frame));
  return s;
}

}  // namespace

TEST_CASE("parsing: reflexivity judgment holds") {
  auto sig = demo_signature(Mode::tripos);
  Judgment j = parse_judgment("[x:A] T |- x = x", *sig);
  CHECK(holds(*sig, j).valid);
}

TEST_CASE("parsing: a well-formed judgment with quantifier") {
  auto sig = demo_signature(Mode::tripos);
  Judgment j = parse_judgment("[x:A, u:B] rho(x,x) & sig(u,u) |- ex y:A. rho(x,y)", *sig);
  CHECK(j.ctx.vars.size() == 2);
  CHECK(j.premises.size() == 1);
  CHECK(j.conclusion->kind == Formula::Kind::exists);
}

TEST_CASE("parsing: non-regular connectives are rejected in regular mode") {
  auto sig = demo_signature(Mode::regular);
  CHECK_THROWS_AS(parse_judgment("[x:A] phi(x) => F |- T", *sig), ParseError);
  CHECK_THROWS_AS(parse_formula("phi(x) | T", *sig, Context{{{"x", "A"}}}), ParseError);
  CHECK_THROWS_AS(parse_formula("all y:A. phi(y)", *sig, Context{}), ParseError);
  // and fine in tripos mode
  auto trip = demo_signature(Mode::tripos);
  CHECK(parse_formula("phi(x) => F", *trip, Context{{{"x", "A"}}}) != nullptr);
}

TEST_CASE("parse errors carry positions and causes") {
  auto sig = demo_signature(Mode::tripos);
  CHECK_THROWS_WITH_AS(parse_judgment("[x:A] |- nosuch(x)", *sig),
                       doctest::Contains("unknown function"), ParseError);
  CHECK_THROWS_WITH_AS(parse_judgment("[x:Q] |- T", *sig), doctest::Contains("unknown sort"),
                       ParseError);
  CHECK_THROWS_WITH_AS(parse_judgment("[x:A] |- y = y", *sig),
                       doctest::Contains("unbound variable"), ParseError);
  CHECK_THROWS_WITH_AS(parse_judgment("[x:A, u:B] |- x = u", *sig),
                       doctest::Contains("equality between sorts"), ParseError);
  CHECK_THROWS_WITH_AS(parse_judgment("[x:A] |- rho(x)", *sig),
                       doctest::Contains("wrong arity"), ParseError);
}

TEST_CASE("iff desugars to both implications") {
  auto sig = demo_signature(Mode::tripos);
  Context ctx{{{"x", "A"}}};
  FormulaPtr f = parse_formula("phi(x) <=> T", *sig, ctx);
  FormulaPtr expect = mk_conj(mk_implies(mk_atom("phi", {mk_var("x")}), mk_top()),
                              mk_implies(mk_top(), mk_atom("phi", {mk_var("x")})));
  CHECK(formula_eq(f, expect));
}

TEST_CASE("precedence: & over | over =>, right-assoc =>, quantifier to the right") {
  auto sig = demo_signature(Mode::tripos);
  Context ctx{{{"x", "A"}}};
  auto p = [&](const std::string& s) { return parse_formula(s, *sig, ctx); };
  CHECK(formula_eq(p("phi(x) & T | F"), mk_disj(mk_conj(mk_atom("phi", {mk_var("x")}), mk_top()),
                                                mk_bottom())));
  CHECK(formula_eq(p("T => F => T"), mk_implies(mk_top(), mk_implies(mk_bottom(), mk_top()))));
  FormulaPtr q = p("ex y:A. phi(y) & phi(x)");
  REQUIRE(q->kind == Formula::Kind::exists);
  CHECK(q->subs[0]->kind == Formula::Kind::conj);
}

TEST_CASE("print then parse is the identity on random formulas") {
  Rng rng(23);
  for (int i = 0; i < 300; ++i) {
    Mode mode = rng.coin() ? Mode::tripos : Mode::regular;
    SignaturePtr sig = random_signature(rng, mode);
    Context ctx = random_context(rng, *sig, 2);
    FormulaPtr f = random_formula(rng, *sig, ctx, 4);
    FormulaPtr g = parse_formula(print_formula(f), *sig, ctx);
    CHECK(formula_eq(f, g));
  }
  // judgments as well
  auto sig = demo_signature(Mode::tripos);
  Judgment j = parse_judgment("[x:A, u:B] rho(x,x), sig(u,u) |- ex y:A. rho(x,y) & T", *sig);
  Judgment j2 = parse_judgment(print_judgment(j), *sig);
  CHECK(formula_eq(j.conclusion, j2.conclusion));
  REQUIRE(j.premises.size() == j2.premises.size());
  for (size_t i = 0; i < j.premises.size(); ++i) CHECK(formula_eq(j.premises[i], j2.premises[i]));
}

TEST_CASE("interpretation: variables are projections, truth is constant top") {
  auto sig = demo_signature(Mode::tripos);
  Context ctx{{{"x", "A"}}};
  ContextCarrier cc = context_carrier(*sig, ctx);
  FinMap x = interpret_term(*sig, ctx, cc, mk_var("x"));
  CHECK(same_map(x, identity_map(sig->sort("A"))));
  Predicate t = interpret_formula(*sig, ctx, cc, mk_top());
  CHECK(pred_eq(t, top_predicate(sig->sort("A"), sig->doctrine.frame)));
}

TEST_CASE("interpretation: equality is top on the diagonal, bottom off it") {
  auto sig = demo_signature(Mode::tripos);
  Context ctx{{{"x", "A"}, {"y", "A"}}};
  Predicate eq = interpret_formula(*sig, ctx, parse_formula("x = y", *sig, ctx));
  const auto& fr = *sig->doctrine.frame;
  auto A = sig->sort("A");
  for (int i = 0; i < A->size(); ++i)
    for (int j = 0; j < A->size(); ++j)
      CHECK(eq.at(i * A->size() + j) == (i == j ? fr.top() : fr.bottom()));
}

TEST_CASE("interpretation: exists matches the direct fiberwise join") {
  Rng rng(31);
  for (int it = 0; it < 100; ++it) {
    SignaturePtr sig = random_signature(rng, Mode::tripos);
    const RelationSymbol* rel = nullptr;
    std::string rname;
    for (const auto& [name, r] : sig->relations)
      if (r.arg_sorts.size() == 2) {
        rel = &r;
        rname = name;
        break;
      }
    if (!rel) continue;
    Context ctx{{{"x", rel->arg_sorts[0]}}};
    FormulaPtr f = mk_exists("y", rel->arg_sorts[1], mk_atom(rname, {mk_var("x"), mk_var("y")}));
    Predicate got = interpret_formula(*sig, ctx, f);
    auto A = sig->sort(rel->arg_sorts[0]);
    auto B = sig->sort(rel->arg_sorts[1]);
    const auto& fr = *sig->doctrine.frame;
    for (int i = 0; i < A->size(); ++i) {
      int acc = fr.bottom();
      for (int j = 0; j < B->size(); ++j) acc = fr.join(acc, rel->pred.at(i * B->size() + j));
      CHECK(got.at(i) == acc);
    }
  }
}

TEST_CASE("holds: identity, failure with witness, frobenius as a judgment") {
  auto sig = demo_signature(Mode::tripos);
  CHECK(holds(*sig, parse_judgment("[x:A] phi(x) |- phi(x)", *sig)).valid);

  auto res = holds(*sig, parse_judgment("[x:A] T |- F", *sig));
  CHECK(!res.valid);
  CHECK(res.witness == "a1");

  // both directions of the Frobenius law, phrased in the language
  CHECK(holds(*sig, parse_judgment("[u:B] (ex x:A. f(x) = u & rho(x,x)) & sig(u,u) |- "
                                   "ex x:A. f(x) = u & (rho(x,x) & sig(f(x),u))",
                                   *sig))
            .valid);
  CHECK(holds(*sig, parse_judgment("[u:B] ex x:A. f(x) = u & (rho(x,x) & sig(f(x),u)) |- "
                                   "(ex x:A. f(x) = u & rho(x,x)) & sig(u,u)",
                                   *sig))
            .valid);
}

TEST_CASE("substitution: identity case and capture avoidance") {
  auto sig = demo_signature(Mode::tripos);
  Context ctx{{{"x", "A"}}};
  FormulaPtr P = parse_formula("ex y:A. rho(x,y)", *sig, ctx);
  CHECK(formula_eq(substitute(P, "x", mk_var("x")), P));

  // substituting y for x must rename the bound y first
  FormulaPtr Q = substitute(P, "x", mk_var("y"));
  REQUIRE(Q->kind == Formula::Kind::exists);
  CHECK(Q->name != "y");
  std::set<std::string> fv = free_vars(Q);
  CHECK(fv == std::set<std::string>{"y"});

  // semantic check against a manual renaming
  Context cy{{{"y", "A"}}};
  Predicate direct = interpret_formula(*sig, cy, parse_formula("ex w:A. rho(y,w)", *sig, cy));
  Predicate subbed = interpret_formula(*sig, cy, Q);
  CHECK(pred_eq(direct, subbed));
}

TEST_CASE("weakening in the middle of a context matches the projection") {
  Rng rng(41);
  for (int it = 0; it < 100; ++it) {
    SignaturePtr sig = random_signature(rng, Mode::tripos);
    Context ctx = random_context(rng, *sig, 2);
    FormulaPtr P = random_formula(rng, *sig, ctx, 3);
    std::vector<std::string> sorts;
    for (const auto& [name, s] : sig->sorts) sorts.push_back(name);
    int at = rng.below(static_cast<int>(ctx.vars.size()) + 1);
    auto [wctx, wP] = weaken(*sig, ctx, P, at, "mid", rng.pick(sorts));
    ContextCarrier cc = context_carrier(*sig, ctx);
    ContextCarrier ccw = context_carrier(*sig, wctx);
    std::vector<FinMap> comps;
    for (size_t i = 0; i < wctx.vars.size(); ++i)
      if (static_cast<int>(i) != at) comps.push_back(ccw.proj[i]);
    FinMap pi = context_tuple(ccw.set, comps);
    CHECK(pred_eq(interpret_formula(*sig, wctx, ccw, wP),
                  reindex(pi, interpret_formula(*sig, ctx, cc, P))));
  }
}

TEST_CASE("rule spot checks: identity, exists-intro, pullback substitution") {
  Rng rng(57);
  for (Rule r : {Rule::identity, Rule::exists_intro, Rule::pullback_glue}) {
    for (int i = 0; i < 150; ++i) {
      RuleInstance in = random_rule_instance(rng, r);
      RuleCheck rc = check_rule(in);
      CHECK(rc.sound);
    }
  }
}

TEST_CASE("soundness, substitution, congruence, frobenius suites run clean (small)") {
  SuiteResult s1 = run_soundness_suite(2024, 120);
  CHECK(s1.clean());
  CHECK(s1.iterations == 120 * static_cast<long long>(all_rules().size()));
  SuiteResult s2 = run_substitution_suite(77, 250);
  CHECK(s2.clean());
  SuiteResult s3 = run_congruence_suite(78, 250);
  CHECK(s3.clean());
  SuiteResult s4 = run_frobenius_bc_suite(79, 500);
  CHECK(s4.clean());
}

TEST_CASE("judgments over empty sorts separate contexts from conclusions") {
  // over an empty sort a judgment in the extended context is vacuously valid
  // while the corresponding existential is bottom: the evaluator must see
  // the difference (this is what makes the witness form of exists-intro the
  // sound one)
  auto sig = std::make_shared<Signature>();
  sig->doctrine = Doctrine{two_chain(), Mode::regular};
  add_sort(*sig, "E", make_set("E", {}));
  add_sort(*sig, "A", make_set("A", {"a"}));

  Judgment prem{Context{{{"y", "E"}}}, {}, mk_top()};
  Judgment concl{Context{}, {}, mk_exists("y", "E", mk_top())};
  CHECK(holds(*sig, prem).valid);
  CHECK(!holds(*sig, concl).valid);
}
