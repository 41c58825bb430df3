#include "proofbench/syntax.hpp"

#include <cctype>

namespace proofbench {

namespace {

enum class Tok { Ident, Bot, Forall, Exists, Not, And, Or, Imp, LParen, RParen, Comma, Dot, Arrow2, End };

const char* tok_name(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Bot: return "'bot'";
    case Tok::Forall: return "'forall'";
    case Tok::Exists: return "'exists'";
    case Tok::Not: return "'~'";
    case Tok::And: return "'&'";
    case Tok::Or: return "'|'";
    case Tok::Imp: return "'->'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::Arrow2: return "'=>'";
    case Tok::End: return "end of input";
  }
  return "?";
}

struct Lexer {
  std::string_view src;
  size_t pos = 0;
  int line = 1, col = 1;

  Tok tok = Tok::End;
  std::string text;
  int tline = 1, tcol = 1;

  explicit Lexer(std::string_view s) : src(s) { advance(); }

  void bump(size_t n) {
    for (size_t i = 0; i < n; ++i) {
      if (pos < src.size() && src[pos] == '\n') {
        line++;
        col = 1;
      } else {
        col++;
      }
      pos++;
    }
  }

  void advance() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) bump(1);
    tline = line;
    tcol = col;
    if (pos >= src.size()) {
      tok = Tok::End;
      text.clear();
      return;
    }
    char c = src[pos];
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t start = pos;
      while (pos < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_' || src[pos] == '\''))
        bump(1);
      text = std::string(src.substr(start, pos - start));
      if (text == "bot")
        tok = Tok::Bot;
      else if (text == "forall")
        tok = Tok::Forall;
      else if (text == "exists")
        tok = Tok::Exists;
      else
        tok = Tok::Ident;
      return;
    }
    switch (c) {
      case '~': tok = Tok::Not; bump(1); return;
      case '&': tok = Tok::And; bump(1); return;
      case '|': tok = Tok::Or; bump(1); return;
      case '(': tok = Tok::LParen; bump(1); return;
      case ')': tok = Tok::RParen; bump(1); return;
      case ',': tok = Tok::Comma; bump(1); return;
      case '.': tok = Tok::Dot; bump(1); return;
      case '-':
        if (pos + 1 < src.size() && src[pos + 1] == '>') {
          tok = Tok::Imp;
          bump(2);
          return;
        }
        break;
      case '=':
        if (pos + 1 < src.size() && src[pos + 1] == '>') {
          tok = Tok::Arrow2;
          bump(2);
          return;
        }
        break;
      default:
        break;
    }
    throw ParseError(line, col, "a token", "'" + std::string(1, c) + "'");
  }

  [[noreturn]] void fail(const std::string& expected) const {
    std::string got = tok == Tok::End ? "end of input"
                      : tok == Tok::Ident ? "'" + text + "'"
                                          : tok_name(tok);
    throw ParseError(tline, tcol, expected, got);
  }

  void expect(Tok t) {
    if (tok != t) fail(tok_name(t));
    advance();
  }
};

struct Parser {
  Lexer lx;
  const ConnectiveNames& customs;

  Parser(std::string_view s, const ConnectiveNames& c) : lx(s), customs(c) {}

  static bool lower_initial(const std::string& s) {
    return !s.empty() && std::islower(static_cast<unsigned char>(s[0]));
  }

  TermPtr term() {
    if (lx.tok != Tok::Ident) lx.fail("a term");
    if (!lower_initial(lx.text))
      throw ParseError(lx.tline, lx.tcol, "a lowercase-initial term symbol", "'" + lx.text + "'");
    std::string name = lx.text;
    lx.advance();
    if (lx.tok == Tok::LParen) {
      lx.advance();
      std::vector<TermPtr> args;
      args.push_back(term());
      while (lx.tok == Tok::Comma) {
        lx.advance();
        args.push_back(term());
      }
      lx.expect(Tok::RParen);
      return mk_fun(name, std::move(args));
    }
    return mk_var(name);
  }

  FormulaPtr atom() {
    switch (lx.tok) {
      case Tok::Bot:
        lx.advance();
        return mk_bottom();
      case Tok::LParen: {
        lx.advance();
        auto f = formula();
        lx.expect(Tok::RParen);
        return f;
      }
      case Tok::Forall:
      case Tok::Exists: {
        bool fa = lx.tok == Tok::Forall;
        lx.advance();
        if (lx.tok != Tok::Ident || !lower_initial(lx.text))
          lx.fail("a lowercase-initial variable");
        std::string var = lx.text;
        lx.advance();
        lx.expect(Tok::Dot);
        auto body = formula();
        return fa ? mk_forall(var, body) : mk_exists(var, body);
      }
      case Tok::Ident: {
        std::string name = lx.text;
        int nline = lx.tline, ncol = lx.tcol;
        lx.advance();
        if (lx.tok == Tok::LParen) {
          if (customs.count(name)) {
            lx.advance();
            std::vector<FormulaPtr> args;
            args.push_back(formula());
            while (lx.tok == Tok::Comma) {
              lx.advance();
              args.push_back(formula());
            }
            lx.expect(Tok::RParen);
            return mk_custom(name, std::move(args));
          }
          if (lower_initial(name))
            throw ParseError(nline, ncol, "a declared connective or an uppercase-initial predicate",
                             "'" + name + "'");
          lx.advance();
          std::vector<TermPtr> args;
          args.push_back(term());
          while (lx.tok == Tok::Comma) {
            lx.advance();
            args.push_back(term());
          }
          lx.expect(Tok::RParen);
          return mk_atom(name, std::move(args));
        }
        return mk_atom(name);
      }
      default:
        lx.fail("a formula");
    }
  }

  FormulaPtr neg() {
    if (lx.tok == Tok::Not) {
      lx.advance();
      return mk_not(neg());
    }
    return atom();
  }

  FormulaPtr conj() {
    auto f = neg();
    while (lx.tok == Tok::And) {
      lx.advance();
      f = mk_and(f, neg());
    }
    return f;
  }

  FormulaPtr disj() {
    auto f = conj();
    while (lx.tok == Tok::Or) {
      lx.advance();
      f = mk_or(f, conj());
    }
    return f;
  }

  FormulaPtr formula() {
    auto f = disj();
    if (lx.tok == Tok::Imp) {
      lx.advance();
      return mk_imp(f, formula());
    }
    return f;
  }

  std::vector<FormulaPtr> formula_list_until(Tok stop) {
    std::vector<FormulaPtr> out;
    if (lx.tok == stop || lx.tok == Tok::End) return out;
    out.push_back(formula());
    while (lx.tok == Tok::Comma) {
      lx.advance();
      out.push_back(formula());
    }
    return out;
  }
};

}  // namespace

FormulaPtr parse_formula(std::string_view text, const ConnectiveNames& customs) {
  Parser p(text, customs);
  auto f = p.formula();
  if (p.lx.tok != Tok::End) p.lx.fail("end of input");
  return f;
}

Sequent parse_sequent(std::string_view text, const ConnectiveNames& customs) {
  Parser p(text, customs);
  Sequent s;
  s.antecedent = p.formula_list_until(Tok::Arrow2);
  p.lx.expect(Tok::Arrow2);
  s.succedent = p.formula_list_until(Tok::End);
  if (p.lx.tok != Tok::End) p.lx.fail("end of input");
  return s;
}

namespace {

// Precedence: Imp=1 (right-assoc), Or=2, And=3 (both left-assoc), Not=4.
// Quantifiers scope maximally right, so they need parentheses exactly when
// they are not in tail position of the rendered formula.
void print_rec(const FormulaPtr& f, int min_prec, bool rightmost, std::string& out) {
  switch (f->kind) {
    case FKind::Atom:
      out += f->name;
      if (!f->args.empty()) {
        out += "(";
        for (size_t i = 0; i < f->args.size(); ++i) {
          if (i) out += ",";
          out += print_term(f->args[i]);
        }
        out += ")";
      }
      return;
    case FKind::Bottom:
      out += "bot";
      return;
    case FKind::Custom:
      out += f->name;
      out += "(";
      for (size_t i = 0; i < f->kids.size(); ++i) {
        if (i) out += ",";
        print_rec(f->kids[i], 0, true, out);
      }
      out += ")";
      return;
    case FKind::Not:
      out += "~";
      print_rec(f->kids[0], 4, rightmost, out);
      return;
    case FKind::And:
    case FKind::Or:
    case FKind::Imp: {
      int prec = f->kind == FKind::Imp ? 1 : f->kind == FKind::Or ? 2 : 3;
      bool parens = prec < min_prec;
      if (parens) out += "(";
      const char* op = f->kind == FKind::Imp ? " -> " : f->kind == FKind::Or ? " | " : " & ";
      bool tail = parens || rightmost;
      if (f->kind == FKind::Imp) {
        print_rec(f->kids[0], prec + 1, false, out);
        out += op;
        print_rec(f->kids[1], prec, tail, out);
      } else {
        print_rec(f->kids[0], prec, false, out);
        out += op;
        print_rec(f->kids[1], prec + 1, tail, out);
      }
      if (parens) out += ")";
      return;
    }
    case FKind::Forall:
    case FKind::Exists: {
      bool parens = !rightmost;
      if (parens) out += "(";
      out += f->kind == FKind::Forall ? "forall " : "exists ";
      out += f->name;
      out += ". ";
      print_rec(f->kids[0], 0, true, out);
      if (parens) out += ")";
      return;
    }
  }
}

}  // namespace

std::string print_formula(const FormulaPtr& f) {
  std::string out;
  print_rec(f, 0, true, out);
  return out;
}

std::string print_sequent(const Sequent& s) {
  std::string out;
  for (size_t i = 0; i < s.antecedent.size(); ++i) {
    if (i) out += ", ";
    out += print_formula(s.antecedent[i]);
  }
  if (!s.antecedent.empty()) out += " ";
  out += "=>";
  for (size_t i = 0; i < s.succedent.size(); ++i) {
    out += i ? ", " : " ";
    out += print_formula(s.succedent[i]);
  }
  return out;
}

}  // namespace proofbench
