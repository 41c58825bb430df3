#include "proofbench/schema.hpp"

#include <cctype>
#include <functional>
#include <stdexcept>

namespace proofbench {

bool is_metavariable(const std::string& name) {
  if (name.empty() || !std::isupper(static_cast<unsigned char>(name[0]))) return false;
  if (name.size() == 1) return true;
  for (size_t i = 1; i < name.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return false;
  return true;
}

namespace {

bool match_term(const TermPtr& pat, const TermPtr& t, SchemaAssignment& sigma) {
  if (pat->is_var()) {
    auto it = sigma.term_vars.find(pat->name);
    if (it != sigma.term_vars.end()) return term_eq(it->second, t);
    sigma.term_vars[pat->name] = t;
    return true;
  }
  if (t->is_var() || pat->name != t->name || pat->args.size() != t->args.size()) return false;
  for (size_t i = 0; i < pat->args.size(); ++i)
    if (!match_term(pat->args[i], t->args[i], sigma)) return false;
  return true;
}

bool match_rec(const FormulaPtr& schema, const FormulaPtr& f, SchemaAssignment& sigma) {
  if (schema->kind == FKind::Atom && schema->args.empty() && is_metavariable(schema->name)) {
    auto it = sigma.formula_vars.find(schema->name);
    if (it != sigma.formula_vars.end()) return alpha_eq(it->second, f);
    sigma.formula_vars[schema->name] = f;
    return true;
  }
  if (schema->kind != f->kind) return false;
  switch (schema->kind) {
    case FKind::Atom: {
      if (schema->name != f->name || schema->args.size() != f->args.size()) return false;
      for (size_t i = 0; i < schema->args.size(); ++i)
        if (!match_term(schema->args[i], f->args[i], sigma)) return false;
      return true;
    }
    case FKind::Bottom:
      return true;
    case FKind::Forall:
    case FKind::Exists: {
      // Binders line up via a rigid, scope-local term binding.
      std::optional<TermPtr> saved;
      if (auto it = sigma.term_vars.find(schema->name); it != sigma.term_vars.end())
        saved = it->second;
      sigma.term_vars[schema->name] = mk_var(f->name);
      bool ok = match_rec(schema->kids[0], f->kids[0], sigma);
      if (saved)
        sigma.term_vars[schema->name] = *saved;
      else
        sigma.term_vars.erase(schema->name);
      return ok;
    }
    case FKind::Custom:
      if (schema->name != f->name) return false;
      [[fallthrough]];
    default: {
      if (schema->kids.size() != f->kids.size()) return false;
      for (size_t i = 0; i < schema->kids.size(); ++i)
        if (!match_rec(schema->kids[i], f->kids[i], sigma)) return false;
      return true;
    }
  }
}

}  // namespace

std::optional<SchemaAssignment> match_schema(const FormulaPtr& schema, const FormulaPtr& f) {
  SchemaAssignment sigma;
  if (!match_rec(schema, f, sigma)) return std::nullopt;
  return sigma;
}

FormulaPtr instantiate(const FormulaPtr& schema, const SchemaAssignment& sigma) {
  if (schema->kind == FKind::Atom && schema->args.empty() && is_metavariable(schema->name)) {
    auto it = sigma.formula_vars.find(schema->name);
    if (it == sigma.formula_vars.end())
      throw std::invalid_argument("unbound metavariable " + schema->name);
    return it->second;
  }
  switch (schema->kind) {
    case FKind::Atom: {
      std::vector<TermPtr> args;
      args.reserve(schema->args.size());
      for (const auto& a : schema->args) {
        std::function<TermPtr(const TermPtr&)> inst_t = [&](const TermPtr& t) -> TermPtr {
          if (t->is_var()) {
            auto it = sigma.term_vars.find(t->name);
            return it == sigma.term_vars.end() ? t : it->second;
          }
          std::vector<TermPtr> as;
          as.reserve(t->args.size());
          for (const auto& x : t->args) as.push_back(inst_t(x));
          return mk_fun(t->name, std::move(as));
        };
        args.push_back(inst_t(a));
      }
      return mk_atom(schema->name, std::move(args));
    }
    case FKind::Bottom:
      return schema;
    case FKind::Not:
      return mk_not(instantiate(schema->kids[0], sigma));
    case FKind::And:
      return mk_and(instantiate(schema->kids[0], sigma), instantiate(schema->kids[1], sigma));
    case FKind::Or:
      return mk_or(instantiate(schema->kids[0], sigma), instantiate(schema->kids[1], sigma));
    case FKind::Imp:
      return mk_imp(instantiate(schema->kids[0], sigma), instantiate(schema->kids[1], sigma));
    case FKind::Forall:
    case FKind::Exists: {
      auto body = instantiate(schema->kids[0], sigma);
      return schema->kind == FKind::Forall ? mk_forall(schema->name, body)
                                           : mk_exists(schema->name, body);
    }
    case FKind::Custom: {
      std::vector<FormulaPtr> kids;
      kids.reserve(schema->kids.size());
      for (const auto& k : schema->kids) kids.push_back(instantiate(k, sigma));
      return mk_custom(schema->name, std::move(kids));
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace proofbench
