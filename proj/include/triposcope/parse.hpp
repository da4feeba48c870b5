#pragma once

#include <string>
#include <vector>

#include "triposcope/lang.hpp"

namespace triposcope {

// ---------------------------------------------------------------------------
// Concrete syntax.
//
//   judgment := '[' (v ':' sort (',' v ':' sort)*)? ']' (formula (',' formula)*)? '|-' formula
//   formula  := 'ex' v ':' sort '.' formula | 'all' v ':' sort '.' formula
//             | or-chain (('=>' | '<=>') formula)?
//   or-chain := and-chain ('|' and-chain)*
//   and-chain:= primary ('&' primary)*
//   primary  := 'T' | 'F' | '(' formula ')' | rel '(' term, ... ')' | term '=' term
//   term     := v | fn '(' term, ... ')'
//
// '&' binds tighter than '|', which binds tighter than '=>'; '=>' associates
// to the right; quantifiers extend to the end of the formula. 'P <=> Q' is
// sugar for '(P => Q) & (Q => P)'.
// ---------------------------------------------------------------------------

struct ParseError : Error {
  int line, col;
  ParseError(const std::string& msg, int line_, int col_)
      : Error("parse-error",
              msg + " (line " + std::to_string(line_) + ", column " + std::to_string(col_) + ")"),
        line(line_),
        col(col_) {}
};

namespace detail {

struct Token {
  enum class Kind {
    ident, lparen, rparen, lbracket, rbracket, colon, comma, dot,
    turnstile, eq, implies, iff, amp, bar, top, bottom, ex, all, end
  };
  Kind kind;
  std::string text;
  int line, col;
};

inline std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto push = [&](Token::Kind k, std::string s, int c) { out.push_back({k, std::move(s), line, c}); };
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') { ++line; col = 1; ++i; continue; }
    if (c == ' ' || c == '\t' || c == '\r') { ++col; ++i; continue; }
    int startcol = col;
    auto two = [&](char a, char b) {
      return c == a && i + 1 < text.size() && text[i + 1] == b;
    };
    if (c == '<' && i + 2 < text.size() && text[i + 1] == '=' && text[i + 2] == '>') {
      push(Token::Kind::iff, "<=>", startcol); i += 3; col += 3; continue;
    }
    if (two('=', '>')) { push(Token::Kind::implies, "=>", startcol); i += 2; col += 2; continue; }
    if (two('|', '-')) { push(Token::Kind::turnstile, "|-", startcol); i += 2; col += 2; continue; }
    switch (c) {
      case '(': push(Token::Kind::lparen, "(", startcol); ++i; ++col; continue;
      case ')': push(Token::Kind::rparen, ")", startcol); ++i; ++col; continue;
      case '[': push(Token::Kind::lbracket, "[", startcol); ++i; ++col; continue;
      case ']': push(Token::Kind::rbracket, "]", startcol); ++i; ++col; continue;
      case ':': push(Token::Kind::colon, ":", startcol); ++i; ++col; continue;
      case ',': push(Token::Kind::comma, ",", startcol); ++i; ++col; continue;
      case '.': push(Token::Kind::dot, ".", startcol); ++i; ++col; continue;
      case '=': push(Token::Kind::eq, "=", startcol); ++i; ++col; continue;
      case '&': push(Token::Kind::amp, "&", startcol); ++i; ++col; continue;
      case '|': push(Token::Kind::bar, "|", startcol); ++i; ++col; continue;
      default: break;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) ||
                                 text[j] == '_' || text[j] == '\''))
        ++j;
      std::string word = text.substr(i, j - i);
      col += static_cast<int>(j - i);
      i = j;
      if (word == "T") push(Token::Kind::top, word, startcol);
      else if (word == "F") push(Token::Kind::bottom, word, startcol);
      else if (word == "ex") push(Token::Kind::ex, word, startcol);
      else if (word == "all") push(Token::Kind::all, word, startcol);
      else push(Token::Kind::ident, word, startcol);
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line, startcol);
  }
  out.push_back({Token::Kind::end, "", line, col});
  return out;
}

class Parser {
public:
  Parser(const Signature& sig, std::vector<Token> tokens)
      : sig_(sig), toks_(std::move(tokens)) {}

  Judgment judgment() {
    expect(Token::Kind::lbracket, "expected '[' opening the context");
    Context ctx;
    if (!peek_is(Token::Kind::rbracket)) {
      for (;;) {
        Token v = expect(Token::Kind::ident, "expected a context variable");
        expect(Token::Kind::colon, "expected ':' after the context variable");
        Token s = expect(Token::Kind::ident, "expected a sort name");
        if (!sig_.sorts.count(s.text)) throw ParseError("unknown sort '" + s.text + "'", s.line, s.col);
        if (ctx.find(v.text) != -1)
          throw ParseError("variable '" + v.text + "' repeated in context", v.line, v.col);
        ctx.vars.emplace_back(v.text, s.text);
        if (!peek_is(Token::Kind::comma)) break;
        advance();
      }
    }
    expect(Token::Kind::rbracket, "expected ']' closing the context");
    std::vector<FormulaPtr> premises;
    if (!peek_is(Token::Kind::turnstile)) {
      for (;;) {
        premises.push_back(formula(ctx));
        if (!peek_is(Token::Kind::comma)) break;
        advance();
      }
    }
    expect(Token::Kind::turnstile, "expected '|-'");
    FormulaPtr concl = formula(ctx);
    expect(Token::Kind::end, "trailing input after the judgment");
    return Judgment{std::move(ctx), std::move(premises), std::move(concl)};
  }

  FormulaPtr whole_formula(const Context& ctx) {
    FormulaPtr f = formula(ctx);
    expect(Token::Kind::end, "trailing input after the formula");
    return f;
  }

  TermPtr whole_term(const Context& ctx) {
    auto [t, s] = term(ctx);
    (void)s;
    expect(Token::Kind::end, "trailing input after the term");
    return t;
  }

private:
  const Signature& sig_;
  std::vector<Token> toks_;
  size_t pos_ = 0;

  const Token& peek() const { return toks_[pos_]; }
  bool peek_is(Token::Kind k) const { return peek().kind == k; }
  Token advance() { return toks_[pos_++]; }
  Token expect(Token::Kind k, const std::string& msg) {
    if (!peek_is(k)) throw ParseError(msg, peek().line, peek().col);
    return advance();
  }
  void need_tripos(const Token& at, const std::string& what) {
    if (sig_.doctrine.mode != Mode::tripos)
      throw ParseError("non-regular connective " + what + " is not available in regular mode",
                       at.line, at.col);
  }

  FormulaPtr formula(const Context& ctx) {
    if (peek_is(Token::Kind::ex) || peek_is(Token::Kind::all)) {
      Token q = advance();
      Token v = expect(Token::Kind::ident, "expected a bound variable");
      expect(Token::Kind::colon, "expected ':' after the bound variable");
      Token s = expect(Token::Kind::ident, "expected a sort name");
      if (!sig_.sorts.count(s.text)) throw ParseError("unknown sort '" + s.text + "'", s.line, s.col);
      expect(Token::Kind::dot, "expected '.' after the quantifier binding");
      if (ctx.find(v.text) != -1)
        throw ParseError("bound variable '" + v.text + "' shadows the context", v.line, v.col);
      FormulaPtr body = formula(ctx.extended(v.text, s.text));
      if (q.kind == Token::Kind::all) {
        need_tripos(q, "'all'");
        return mk_forall(v.text, s.text, std::move(body));
      }
      return mk_exists(v.text, s.text, std::move(body));
    }
    FormulaPtr left = or_chain(ctx);
    if (peek_is(Token::Kind::implies)) {
      Token op = advance();
      need_tripos(op, "'=>'");
      return mk_implies(std::move(left), formula(ctx));
    }
    if (peek_is(Token::Kind::iff)) {
      Token op = advance();
      need_tripos(op, "'<=>'");
      FormulaPtr right = formula(ctx);
      return mk_conj(mk_implies(left, right), mk_implies(right, left));
    }
    return left;
  }

  FormulaPtr or_chain(const Context& ctx) {
    FormulaPtr acc = and_chain(ctx);
    while (peek_is(Token::Kind::bar)) {
      Token op = advance();
      need_tripos(op, "'|'");
      acc = mk_disj(std::move(acc), and_chain(ctx));
    }
    return acc;
  }

  FormulaPtr and_chain(const Context& ctx) {
    FormulaPtr acc = primary(ctx);
    while (peek_is(Token::Kind::amp)) {
      advance();
      acc = mk_conj(std::move(acc), primary(ctx));
    }
    return acc;
  }

  FormulaPtr primary(const Context& ctx) {
    if (peek_is(Token::Kind::top)) { advance(); return mk_top(); }
    if (peek_is(Token::Kind::bottom)) {
      Token tk = advance();
      need_tripos(tk, "'F'");
      return mk_bottom();
    }
    if (peek_is(Token::Kind::lparen)) {
      advance();
      FormulaPtr f = formula(ctx);
      expect(Token::Kind::rparen, "expected ')'");
      return f;
    }
    Token head = peek();
    if (head.kind != Token::Kind::ident)
      throw ParseError("expected a formula", head.line, head.col);
    if (sig_.relations.count(head.text)) {
      advance();
      expect(Token::Kind::lparen, "expected '(' after relation '" + head.text + "'");
      const RelationSymbol& rs = sig_.relations.at(head.text);
      std::vector<TermPtr> args;
      std::vector<std::string> arg_sorts;
      if (!peek_is(Token::Kind::rparen)) {
        for (;;) {
          auto [t, s] = term(ctx);
          args.push_back(t);
          arg_sorts.push_back(s);
          if (!peek_is(Token::Kind::comma)) break;
          advance();
        }
      }
      expect(Token::Kind::rparen, "expected ')'");
      if (arg_sorts != rs.arg_sorts)
        throw ParseError("relation '" + head.text + "' applied at the wrong arity or sorts",
                         head.line, head.col);
      return mk_atom(head.text, std::move(args));
    }
    auto [lhs, lsort] = term(ctx);
    Token eq = expect(Token::Kind::eq, "expected '=' after a term");
    auto [rhs, rsort] = term(ctx);
    if (lsort != rsort)
      throw ParseError("equality between sorts '" + lsort + "' and '" + rsort + "'", eq.line,
                       eq.col);
    return mk_equals(std::move(lhs), std::move(rhs));
  }

  std::pair<TermPtr, std::string> term(const Context& ctx) {
    Token head = expect(Token::Kind::ident, "expected a term");
    if (peek_is(Token::Kind::lparen)) {
      auto it = sig_.functions.find(head.text);
      if (it == sig_.functions.end())
        throw ParseError("unknown function '" + head.text + "'", head.line, head.col);
      advance();
      std::vector<TermPtr> args;
      std::vector<std::string> arg_sorts;
      if (!peek_is(Token::Kind::rparen)) {
        for (;;) {
          auto [t, s] = term(ctx);
          args.push_back(t);
          arg_sorts.push_back(s);
          if (!peek_is(Token::Kind::comma)) break;
          advance();
        }
      }
      expect(Token::Kind::rparen, "expected ')'");
      if (arg_sorts != it->second.arg_sorts)
        throw ParseError("function '" + head.text + "' applied at the wrong arity or sorts",
                         head.line, head.col);
      return {mk_app(head.text, std::move(args)), it->second.result_sort};
    }
    int i = ctx.find(head.text);
    if (i == -1)
      throw ParseError("unbound variable '" + head.text + "'", head.line, head.col);
    return {mk_var(head.text), ctx.vars[static_cast<size_t>(i)].second};
  }
};

}  // namespace detail

inline Judgment parse_judgment(const std::string& text, const Signature& sig) {
  return detail::Parser(sig, detail::lex(text)).judgment();
}

inline FormulaPtr parse_formula(const std::string& text, const Signature& sig,
                                const Context& ctx) {
  return detail::Parser(sig, detail::lex(text)).whole_formula(ctx);
}

inline TermPtr parse_term(const std::string& text, const Signature& sig, const Context& ctx) {
  return detail::Parser(sig, detail::lex(text)).whole_term(ctx);
}

// ---------------------------------------------------------------------------
// Printing. parse(print(ast)) == ast; '<=>' never appears in output since it
// desugars at parse time.
// ---------------------------------------------------------------------------

inline std::string print_term(const TermPtr& t) {
  if (t->kind == Term::Kind::var) return t->name;
  std::string out = t->name + "(";
  for (size_t i = 0; i < t->args.size(); ++i) {
    if (i) out += ", ";
    out += print_term(t->args[i]);
  }
  return out + ")";
}

namespace detail {

// precedence: quantifier/implies 0, or 1, and 2, primary 3
inline int formula_prec(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::exists:
    case Formula::Kind::forall:
    case Formula::Kind::implies: return 0;
    case Formula::Kind::disj: return 1;
    case Formula::Kind::conj: return 2;
    default: return 3;
  }
}

inline std::string print_formula_at(const FormulaPtr& f, int minprec) {
  std::string out;
  switch (f->kind) {
    case Formula::Kind::atom: {
      out = f->name + "(";
      for (size_t i = 0; i < f->terms.size(); ++i) {
        if (i) out += ", ";
        out += print_term(f->terms[i]);
      }
      out += ")";
      break;
    }
    case Formula::Kind::equals:
      out = print_term(f->terms[0]) + " = " + print_term(f->terms[1]);
      break;
    case Formula::Kind::top: out = "T"; break;
    case Formula::Kind::bottom: out = "F"; break;
    case Formula::Kind::conj:
      out = print_formula_at(f->subs[0], 2) + " & " + print_formula_at(f->subs[1], 3);
      break;
    case Formula::Kind::disj:
      out = print_formula_at(f->subs[0], 1) + " | " + print_formula_at(f->subs[1], 2);
      break;
    case Formula::Kind::implies:
      out = print_formula_at(f->subs[0], 1) + " => " + print_formula_at(f->subs[1], 0);
      break;
    case Formula::Kind::exists:
    case Formula::Kind::forall:
      out = std::string(f->kind == Formula::Kind::exists ? "ex " : "all ") + f->name + ":" +
            f->sort + ". " + print_formula_at(f->subs[0], 0);
      break;
  }
  if (formula_prec(f) < minprec) return "(" + out + ")";
  return out;
}

}  // namespace detail

inline std::string print_formula(const FormulaPtr& f) { return detail::print_formula_at(f, 0); }

inline std::string print_judgment(const Judgment& j) {
  std::string out = "[";
  for (size_t i = 0; i < j.ctx.vars.size(); ++i) {
    if (i) out += ", ";
    out += j.ctx.vars[i].first + ":" + j.ctx.vars[i].second;
  }
  out += "] ";
  for (size_t i = 0; i < j.premises.size(); ++i) {
    if (i) out += ", ";
    out += print_formula(j.premises[i]);
  }
  if (!j.premises.empty()) out += " ";
  out += "|- " + print_formula(j.conclusion);
  return out;
}

}  // namespace triposcope
