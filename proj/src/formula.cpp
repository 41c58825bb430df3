#include "proofbench/formula.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace proofbench {

TermPtr mk_var(std::string name) {
  if (name.empty()) throw std::invalid_argument("empty variable name");
  return std::make_shared<Term>(Term{Term::Kind::Var, std::move(name), {}});
}

TermPtr mk_fun(std::string name, std::vector<TermPtr> args) {
  if (name.empty()) throw std::invalid_argument("empty function name");
  return std::make_shared<Term>(Term{Term::Kind::Fun, std::move(name), std::move(args)});
}

bool term_eq(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (a->kind != b->kind || a->name != b->name) return false;
  if (a->args.size() != b->args.size()) return false;
  for (size_t i = 0; i < a->args.size(); ++i)
    if (!term_eq(a->args[i], b->args[i])) return false;
  return true;
}

void term_vars(const TermPtr& t, std::set<std::string>& out) {
  if (t->is_var()) {
    out.insert(t->name);
    return;
  }
  for (const auto& a : t->args) term_vars(a, out);
}

TermPtr term_subst(const TermPtr& t, const std::string& var, const TermPtr& repl) {
  if (t->is_var()) return t->name == var ? repl : t;
  bool changed = false;
  std::vector<TermPtr> args;
  args.reserve(t->args.size());
  for (const auto& a : t->args) {
    args.push_back(term_subst(a, var, repl));
    changed |= args.back() != a;
  }
  return changed ? mk_fun(t->name, std::move(args)) : t;
}

std::string print_term(const TermPtr& t) {
  if (t->is_var() || t->args.empty()) return t->name;
  std::string out = t->name + "(";
  for (size_t i = 0; i < t->args.size(); ++i) {
    if (i) out += ",";
    out += print_term(t->args[i]);
  }
  return out + ")";
}

static FormulaPtr mk(FKind k, std::string name, std::vector<TermPtr> args,
                     std::vector<FormulaPtr> kids) {
  return std::make_shared<Formula>(Formula{k, std::move(name), std::move(args), std::move(kids)});
}

FormulaPtr mk_atom(std::string name, std::vector<TermPtr> args) {
  if (name.empty()) throw std::invalid_argument("empty atom name");
  return mk(FKind::Atom, std::move(name), std::move(args), {});
}
FormulaPtr mk_bottom() { return mk(FKind::Bottom, "", {}, {}); }
FormulaPtr mk_not(FormulaPtr a) { return mk(FKind::Not, "", {}, {std::move(a)}); }
FormulaPtr mk_and(FormulaPtr a, FormulaPtr b) { return mk(FKind::And, "", {}, {std::move(a), std::move(b)}); }
FormulaPtr mk_or(FormulaPtr a, FormulaPtr b) { return mk(FKind::Or, "", {}, {std::move(a), std::move(b)}); }
FormulaPtr mk_imp(FormulaPtr a, FormulaPtr b) { return mk(FKind::Imp, "", {}, {std::move(a), std::move(b)}); }
FormulaPtr mk_forall(std::string var, FormulaPtr body) {
  return mk(FKind::Forall, std::move(var), {}, {std::move(body)});
}
FormulaPtr mk_exists(std::string var, FormulaPtr body) {
  return mk(FKind::Exists, std::move(var), {}, {std::move(body)});
}
FormulaPtr mk_custom(std::string name, std::vector<FormulaPtr> args) {
  if (name.empty()) throw std::invalid_argument("empty connective name");
  return mk(FKind::Custom, std::move(name), {}, std::move(args));
}

bool is_quantifier(const FormulaPtr& f) {
  return f->kind == FKind::Forall || f->kind == FKind::Exists;
}

static void collect_free(const FormulaPtr& f, std::set<std::string>& bound,
                         std::set<std::string>& out) {
  switch (f->kind) {
    case FKind::Atom: {
      std::set<std::string> vs;
      for (const auto& t : f->args) term_vars(t, vs);
      for (const auto& v : vs)
        if (!bound.count(v)) out.insert(v);
      break;
    }
    case FKind::Forall:
    case FKind::Exists: {
      bool fresh = bound.insert(f->name).second;
      collect_free(f->kids[0], bound, out);
      if (fresh) bound.erase(f->name);
      break;
    }
    default:
      for (const auto& k : f->kids) collect_free(k, bound, out);
  }
}

std::set<std::string> free_vars(const FormulaPtr& f) {
  std::set<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

std::set<std::string> all_vars(const FormulaPtr& f) {
  std::set<std::string> out;
  if (f->kind == FKind::Atom) {
    for (const auto& t : f->args) term_vars(t, out);
  } else if (is_quantifier(f)) {
    out.insert(f->name);
  }
  for (const auto& k : f->kids) {
    auto sub = all_vars(k);
    out.insert(sub.begin(), sub.end());
  }
  return out;
}

std::string fresh_name(const std::string& base, const std::set<std::string>& taken) {
  std::string n = base;
  while (taken.count(n)) n += "'";
  return n;
}

FormulaPtr substitute(const FormulaPtr& f, const std::string& var, const TermPtr& t) {
  switch (f->kind) {
    case FKind::Atom: {
      bool changed = false;
      std::vector<TermPtr> args;
      args.reserve(f->args.size());
      for (const auto& a : f->args) {
        args.push_back(term_subst(a, var, t));
        changed |= args.back() != a;
      }
      return changed ? mk_atom(f->name, std::move(args)) : f;
    }
    case FKind::Bottom:
      return f;
    case FKind::Forall:
    case FKind::Exists: {
      if (f->name == var) return f;  // no free occurrence below
      auto fv = free_vars(f->kids[0]);
      if (!fv.count(var)) return f;
      std::set<std::string> tv;
      term_vars(t, tv);
      std::string bv = f->name;
      FormulaPtr body = f->kids[0];
      if (tv.count(bv)) {
        // rename the binder so t's variables are not captured
        std::set<std::string> taken = tv;
        auto bodyvars = all_vars(body);
        taken.insert(bodyvars.begin(), bodyvars.end());
        taken.insert(var);
        std::string nb = fresh_name(bv, taken);
        body = substitute(body, bv, mk_var(nb));
        bv = nb;
      }
      body = substitute(body, var, t);
      return f->kind == FKind::Forall ? mk_forall(bv, body) : mk_exists(bv, body);
    }
    default: {
      bool changed = false;
      std::vector<FormulaPtr> kids;
      kids.reserve(f->kids.size());
      for (const auto& k : f->kids) {
        kids.push_back(substitute(k, var, t));
        changed |= kids.back() != k;
      }
      if (!changed) return f;
      return mk(f->kind, f->name, {}, std::move(kids));
    }
  }
}

namespace {

// Canonical printing with binders renamed to #0, #1, ... in traversal order.
void canon_rec(const FormulaPtr& f, std::map<std::string, std::string>& ren, int& counter,
               std::string& out) {
  switch (f->kind) {
    case FKind::Atom: {
      out += "A:";
      out += f->name;
      for (const auto& t : f->args) {
        out += ",";
        // rename bound vars inside terms
        std::function<void(const TermPtr&)> pt = [&](const TermPtr& x) {
          if (x->is_var()) {
            auto it = ren.find(x->name);
            out += it == ren.end() ? x->name : it->second;
          } else {
            out += x->name;
            out += "(";
            for (const auto& a : x->args) {
              pt(a);
              out += ",";
            }
            out += ")";
          }
        };
        pt(t);
      }
      out += ";";
      break;
    }
    case FKind::Bottom:
      out += "B;";
      break;
    case FKind::Not:
      out += "N(";
      canon_rec(f->kids[0], ren, counter, out);
      out += ")";
      break;
    case FKind::And:
    case FKind::Or:
    case FKind::Imp: {
      out += f->kind == FKind::And ? "C(" : f->kind == FKind::Or ? "D(" : "I(";
      canon_rec(f->kids[0], ren, counter, out);
      out += ",";
      canon_rec(f->kids[1], ren, counter, out);
      out += ")";
      break;
    }
    case FKind::Forall:
    case FKind::Exists: {
      out += f->kind == FKind::Forall ? "F(" : "E(";
      std::string nn = "#" + std::to_string(counter++);
      auto it = ren.find(f->name);
      std::optional<std::string> saved;
      if (it != ren.end()) saved = it->second;
      ren[f->name] = nn;
      canon_rec(f->kids[0], ren, counter, out);
      if (saved)
        ren[f->name] = *saved;
      else
        ren.erase(f->name);
      out += ")";
      break;
    }
    case FKind::Custom: {
      out += "X:";
      out += f->name;
      out += "(";
      for (const auto& k : f->kids) {
        canon_rec(k, ren, counter, out);
        out += ",";
      }
      out += ")";
      break;
    }
  }
}

}  // namespace

bool alpha_eq(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  return canonical_key(a) == canonical_key(b);
}

std::string canonical_key(const FormulaPtr& f) {
  std::map<std::string, std::string> ren;
  int counter = 0;
  std::string out;
  canon_rec(f, ren, counter, out);
  return out;
}

std::vector<FormulaPtr> subformulas(const FormulaPtr& f) {
  std::vector<FormulaPtr> out;
  std::set<std::string> seen;
  std::function<void(const FormulaPtr&)> go = [&](const FormulaPtr& g) {
    if (!seen.insert(canonical_key(g)).second) return;
    out.push_back(g);
    for (const auto& k : g->kids) go(k);
  };
  go(f);
  return out;
}

namespace {

// Matching where variables in `holes` act as term metavariables on the
// pattern side. Binders are compared up to renaming (pattern binder maps
// onto candidate binder).
struct InstMatch {
  std::map<std::string, TermPtr> assign;       // hole -> term
  std::map<std::string, std::string> binders;  // pattern binder -> cand binder

  bool term(const TermPtr& pat, const TermPtr& cand, const std::set<std::string>& holes) {
    if (pat->is_var()) {
      auto b = binders.find(pat->name);
      if (b != binders.end()) return cand->is_var() && cand->name == b->second;
      if (holes.count(pat->name)) {
        auto it = assign.find(pat->name);
        if (it != assign.end()) return term_eq(it->second, cand);
        assign[pat->name] = cand;
        return true;
      }
      return cand->is_var() && cand->name == pat->name;
    }
    if (cand->is_var() || pat->name != cand->name || pat->args.size() != cand->args.size())
      return false;
    for (size_t i = 0; i < pat->args.size(); ++i)
      if (!term(pat->args[i], cand->args[i], holes)) return false;
    return true;
  }

  bool formula(const FormulaPtr& pat, const FormulaPtr& cand, std::set<std::string> holes) {
    if (pat->kind != cand->kind) return false;
    switch (pat->kind) {
      case FKind::Atom: {
        if (pat->name != cand->name || pat->args.size() != cand->args.size()) return false;
        for (size_t i = 0; i < pat->args.size(); ++i)
          if (!term(pat->args[i], cand->args[i], holes)) return false;
        return true;
      }
      case FKind::Bottom:
        return true;
      case FKind::Forall:
      case FKind::Exists: {
        auto saved = binders;
        binders[pat->name] = cand->name;
        holes.erase(pat->name);
        bool ok = formula(pat->kids[0], cand->kids[0], holes);
        binders = saved;
        return ok;
      }
      case FKind::Custom:
        if (pat->name != cand->name) return false;
        [[fallthrough]];
      default: {
        if (pat->kids.size() != cand->kids.size()) return false;
        for (size_t i = 0; i < pat->kids.size(); ++i)
          if (!formula(pat->kids[i], cand->kids[i], holes)) return false;
        return true;
      }
    }
  }
};

bool occurs_inst(const FormulaPtr& sub, const FormulaPtr& sup, std::set<std::string>& holes) {
  {
    InstMatch m;
    if (m.formula(sup, sub, holes)) return true;
  }
  if (is_quantifier(sup)) {
    auto h2 = holes;
    h2.insert(sup->name);
    return occurs_inst(sub, sup->kids[0], h2);
  }
  for (const auto& k : sup->kids)
    if (occurs_inst(sub, k, holes)) return true;
  return false;
}

}  // namespace

bool is_subformula_instance(const FormulaPtr& sub, const FormulaPtr& sup) {
  std::set<std::string> holes;
  return occurs_inst(sub, sup, holes);
}

std::optional<TermPtr> match_single_instance(const FormulaPtr& pattern, const std::string& hole,
                                             const FormulaPtr& candidate) {
  if (!free_vars(pattern).count(hole))
    return alpha_eq(pattern, candidate) ? std::optional<TermPtr>(mk_var(hole)) : std::nullopt;
  InstMatch m;
  std::set<std::string> holes{hole};
  if (!m.formula(pattern, candidate, holes)) return std::nullopt;
  auto it = m.assign.find(hole);
  if (it == m.assign.end()) return std::nullopt;
  if (!alpha_eq(substitute(pattern, hole, it->second), candidate)) return std::nullopt;
  return it->second;
}

bool is_propositional(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::Atom:
      return f->args.empty();
    case FKind::Forall:
    case FKind::Exists:
    case FKind::Custom:
      return false;
    default:
      for (const auto& k : f->kids)
        if (!is_propositional(k)) return false;
      return true;
  }
}

}  // namespace proofbench
