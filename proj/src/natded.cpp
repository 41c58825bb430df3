#include "proofbench/natded.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "proofbench/schema.hpp"
#include "proofbench/syntax.hpp"

namespace proofbench {

NDPtr nd_hyp(std::string label, FormulaPtr formula) {
  return std::make_shared<NDNode>(
      NDNode{"Hyp", std::move(label), std::move(formula), {}, {}, std::nullopt, nullptr});
}

NDPtr nd_rule(std::string rule, FormulaPtr conclusion, std::vector<NDPtr> premises,
              std::vector<std::string> discharges, std::optional<std::string> eigen,
              TermPtr witness) {
  return std::make_shared<NDNode>(NDNode{std::move(rule), "", std::move(conclusion),
                                         std::move(premises), std::move(discharges),
                                         std::move(eigen), std::move(witness)});
}

std::string NDRuleset::name() const {
  std::string base;
  switch (ext) {
    case ClassicalExt::None: base = "NJ"; break;
    case ClassicalExt::DNE: base = "NK-DNE"; break;
    case ClassicalExt::LEM: base = "NK-LEM"; break;
    case ClassicalExt::RAA: base = "NK-RAA"; break;
    case ClassicalExt::CD: base = "NK-CD"; break;
  }
  return base;
}

std::optional<NDRuleset> NDRuleset::by_name(const std::string& name) {
  if (name == "NJ") return nj();
  if (name == "NK-DNE") return nk(ClassicalExt::DNE);
  if (name == "NK-LEM") return nk(ClassicalExt::LEM);
  if (name == "NK-RAA") return nk(ClassicalExt::RAA);
  if (name == "NK-CD") return nk(ClassicalExt::CD);
  return std::nullopt;
}

namespace {

bool is_hyp(const NDPtr& p) { return p->rule == "Hyp"; }

bool has_discharge(const NDNode& n, const std::string& label) {
  return std::find(n.discharges.begin(), n.discharges.end(), label) != n.discharges.end();
}

void opens_rec(const NDPtr& p, std::map<std::string, FormulaPtr>& out) {
  if (is_hyp(p)) {
    out.emplace(p->label, p->formula);
    return;
  }
  std::map<std::string, FormulaPtr> acc;
  for (const auto& q : p->premises) opens_rec(q, acc);
  for (const auto& d : p->discharges) acc.erase(d);
  for (auto& [k, v] : acc) out.emplace(k, v);
}

std::map<std::string, FormulaPtr> opens_of(const NDPtr& p) {
  std::map<std::string, FormulaPtr> out;
  opens_rec(p, out);
  return out;
}

std::set<std::string> free_vars_of_opens(const std::map<std::string, FormulaPtr>& opens) {
  std::set<std::string> out;
  for (const auto& [l, f] : opens) {
    auto fv = free_vars(f);
    out.insert(fv.begin(), fv.end());
  }
  return out;
}

void proof_vars_rec(const NDPtr& p, std::set<std::string>& out) {
  auto av = all_vars(p->formula);
  out.insert(av.begin(), av.end());
  if (p->eigen) out.insert(*p->eigen);
  if (p->witness) term_vars(p->witness, out);
  for (const auto& q : p->premises) proof_vars_rec(q, out);
}

std::set<std::string> proof_vars(const NDPtr& p) {
  std::set<std::string> out;
  proof_vars_rec(p, out);
  return out;
}

NDPtr with_premise(const NDPtr& p, size_t i, NDPtr q) {
  auto prem = p->premises;
  prem[i] = std::move(q);
  return std::make_shared<NDNode>(
      NDNode{p->rule, p->label, p->formula, std::move(prem), p->discharges, p->eigen, p->witness});
}

NDPtr rename_label(const NDPtr& p, const std::string& from, const std::string& to) {
  if (is_hyp(p)) return p->label == from ? nd_hyp(to, p->formula) : p;
  if (has_discharge(*p, from)) return p;
  bool changed = false;
  auto prem = p->premises;
  for (auto& q : prem) {
    auto r = rename_label(q, from, to);
    changed |= r != q;
    q = std::move(r);
  }
  if (!changed) return p;
  return std::make_shared<NDNode>(
      NDNode{p->rule, p->label, p->formula, std::move(prem), p->discharges, p->eigen, p->witness});
}

}  // namespace

std::vector<NDPtr> hyp_occurrences(const NDPtr& p, const std::string& label) {
  std::vector<NDPtr> out;
  std::function<void(const NDPtr&)> go = [&](const NDPtr& q) {
    if (is_hyp(q)) {
      if (q->label == label) out.push_back(q);
      return;
    }
    if (has_discharge(*q, label)) return;
    for (const auto& r : q->premises) go(r);
  };
  go(p);
  return out;
}

NDPtr subst_hyp(const NDPtr& p, const std::string& label, const NDPtr& replacement) {
  if (is_hyp(p)) return p->label == label ? replacement : p;
  if (has_discharge(*p, label)) return p;
  bool changed = false;
  auto prem = p->premises;
  for (auto& q : prem) {
    auto r = subst_hyp(q, label, replacement);
    changed |= r != q;
    q = std::move(r);
  }
  if (!changed) return p;
  return std::make_shared<NDNode>(
      NDNode{p->rule, p->label, p->formula, std::move(prem), p->discharges, p->eigen, p->witness});
}

NDPtr subst_term_in_proof(const NDPtr& p, const std::string& var, const TermPtr& t) {
  std::set<std::string> tv;
  term_vars(t, tv);
  NDPtr cur = p;
  if (cur->eigen && (*cur->eigen == var || tv.count(*cur->eigen))) {
    // rename this node's eigenvariable out of the way first
    std::string y = *cur->eigen;
    auto taken = proof_vars(cur);
    taken.insert(tv.begin(), tv.end());
    taken.insert(var);
    std::string z = fresh_name(y, taken);
    auto zvar = mk_var(z);
    auto prem = cur->premises;
    for (auto& q : prem) q = subst_term_in_proof(q, y, zvar);
    cur = std::make_shared<NDNode>(NDNode{cur->rule, cur->label, cur->formula, std::move(prem),
                                          cur->discharges, z, cur->witness});
  }
  auto prem = cur->premises;
  for (auto& q : prem) q = subst_term_in_proof(q, var, t);
  auto f = substitute(cur->formula, var, t);
  TermPtr w = cur->witness ? term_subst(cur->witness, var, t) : nullptr;
  if (is_hyp(cur)) return nd_hyp(cur->label, f);
  return std::make_shared<NDNode>(
      NDNode{cur->rule, cur->label, f, std::move(prem), cur->discharges, cur->eigen, w});
}

NDPtr refresh_bound_labels(const NDPtr& p, int& counter) {
  if (is_hyp(p)) return p;
  auto prem = p->premises;
  for (auto& q : prem) q = refresh_bound_labels(q, counter);
  auto discharges = p->discharges;
  for (auto& d : discharges) {
    std::string fresh = "_d" + std::to_string(counter++);
    for (auto& q : prem) q = rename_label(q, d, fresh);
    d = fresh;
  }
  return std::make_shared<NDNode>(
      NDNode{p->rule, p->label, p->formula, std::move(prem), std::move(discharges), p->eigen,
             p->witness});
}

std::map<std::string, int> rule_usage(const NDPtr& p) {
  std::map<std::string, int> out;
  std::function<void(const NDPtr&)> go = [&](const NDPtr& q) {
    if (!is_hyp(q)) out[q->rule]++;
    for (const auto& r : q->premises) go(r);
  };
  go(p);
  return out;
}

std::vector<std::pair<std::string, FormulaPtr>> open_assumptions(const NDPtr& p) {
  auto m = opens_of(p);
  return {m.begin(), m.end()};
}

namespace {

// ---------------------------------------------------------------------------
// Checker
// ---------------------------------------------------------------------------

struct NDChecker {
  const NDRuleset& rs;
  const ConnectiveRegistry& reg;
  std::vector<Diagnostic> diags;

  void err(const std::string& path, std::string msg) { diags.push_back({path, std::move(msg)}); }

  static bool aeq(const FormulaPtr& a, const FormulaPtr& b) { return alpha_eq(a, b); }

  bool rule_available(const std::string& r) const {
    static const std::set<std::string> base = {"AndI",    "AndE1",   "AndE2",   "OrI1",
                                               "OrI2",    "OrE",     "ImpI",    "ImpE",
                                               "NotI",    "NotE",    "BotE",    "ForallI",
                                               "ForallE", "ExistsI", "ExistsE"};
    if (base.count(r)) return true;
    if (r == "GAndE" || r == "GImpE" || r == "GOrE") return rs.general_elim;
    if (r == "DNE") return rs.ext == ClassicalExt::DNE;
    if (r == "LEM") return rs.ext == ClassicalExt::LEM;
    if (r == "RAA") return rs.ext == ClassicalExt::RAA;
    if (r == "CD") return rs.ext == ClassicalExt::CD;
    return reg.find_rule(r) != nullptr;
  }

  // Discharge constraint: label binds leaves of formula `f`, and those
  // leaves may only appear inside premises[allowed_idx].
  struct DischargeSpec {
    std::string label;
    size_t allowed_idx;
    FormulaPtr formula;  // null: formula determined by the leaves themselves
  };

  void check_discharges(const NDPtr& n, const std::vector<DischargeSpec>& specs,
                        const std::string& path) {
    std::set<std::string> seen;
    for (const auto& d : n->discharges)
      if (!seen.insert(d).second) err(path, "duplicate discharge label '" + d + "'");
    if (specs.size() != n->discharges.size()) {
      err(path, n->rule + " expects " + std::to_string(specs.size()) + " discharge label(s), got " +
                    std::to_string(n->discharges.size()));
      return;
    }
    for (const auto& spec : specs) {
      for (size_t j = 0; j < n->premises.size(); ++j) {
        auto occ = hyp_occurrences(n->premises[j], spec.label);
        if (occ.empty()) continue;
        if (j != spec.allowed_idx) {
          err(path, "hypothesis '" + spec.label + "' may only be discharged in premise " +
                        std::to_string(spec.allowed_idx) + ", found in premise " + std::to_string(j));
          continue;
        }
        for (const auto& leaf : occ) {
          if (spec.formula && !aeq(leaf->formula, spec.formula))
            err(path, "discharged hypothesis '" + spec.label + "' has formula " +
                          print_formula(leaf->formula) + ", expected " + print_formula(spec.formula));
        }
      }
    }
  }

  void expect_premises(const NDPtr& n, size_t k, const std::string& path) {
    if (n->premises.size() != k)
      err(path, n->rule + " expects " + std::to_string(k) + " premise(s), got " +
                    std::to_string(n->premises.size()));
  }

  void no_discharges(const NDPtr& n, const std::string& path) {
    if (!n->discharges.empty()) err(path, n->rule + " discharges no hypotheses");
  }

  void check_eigen_fields(const NDPtr& n, const std::string& path) {
    bool wants_eigen = n->rule == "ForallI" || n->rule == "ExistsE";
    if (wants_eigen && !n->eigen) err(path, n->rule + " requires an eigenvariable");
    if (!wants_eigen && n->eigen) err(path, n->rule + " must not carry an eigenvariable");
    bool may_witness = n->rule == "ForallE" || n->rule == "ExistsI";
    if (!may_witness && n->witness) err(path, n->rule + " must not carry a witness term");
  }

  void check_node(const NDPtr& n, const std::string& path) {
    for (size_t i = 0; i < n->premises.size(); ++i)
      check_node(n->premises[i], path + "." + std::to_string(i));

    if (is_hyp(n)) {
      if (n->label.empty()) err(path, "hypothesis without a label");
      if (!n->premises.empty()) err(path, "hypothesis leaves have no premises");
      return;
    }
    if (!rule_available(n->rule)) {
      err(path, "rule '" + n->rule + "' is not part of ruleset " + rs.name() +
                    (reg.empty_set() ? "" : " nor any declared connective"));
      return;
    }
    check_eigen_fields(n, path);

    const auto& r = n->rule;
    const auto& C = n->formula;
    auto prem = [&](size_t i) { return n->premises[i]->formula; };

    if (r == "AndI") {
      expect_premises(n, 2, path);
      no_discharges(n, path);
      if (n->premises.size() == 2 &&
          !(C->kind == FKind::And && aeq(C->kids[0], prem(0)) && aeq(C->kids[1], prem(1))))
        err(path, "AndI conclusion must conjoin its premises");
    } else if (r == "AndE1" || r == "AndE2") {
      expect_premises(n, 1, path);
      no_discharges(n, path);
      if (n->premises.size() == 1) {
        const auto& M = prem(0);
        size_t idx = r == "AndE1" ? 0 : 1;
        if (!(M->kind == FKind::And && aeq(M->kids[idx], C)))
          err(path, r + " conclusion must be the matching conjunct of its premise");
      }
    } else if (r == "OrI1" || r == "OrI2") {
      expect_premises(n, 1, path);
      no_discharges(n, path);
      if (n->premises.size() == 1) {
        size_t idx = r == "OrI1" ? 0 : 1;
        if (!(C->kind == FKind::Or && aeq(C->kids[idx], prem(0))))
          err(path, r + " premise must be the matching disjunct of the conclusion");
      }
    } else if (r == "OrE" || r == "GOrE") {
      expect_premises(n, 3, path);
      if (n->premises.size() == 3) {
        const auto& M = prem(0);
        if (M->kind != FKind::Or) {
          err(path, r + " major premise must be a disjunction");
        } else {
          if (!aeq(prem(1), C) || !aeq(prem(2), C))
            err(path, r + " minor premises must conclude the rule's conclusion");
          if (n->discharges.size() == 2)
            check_discharges(n,
                             {{n->discharges[0], 1, M->kids[0]}, {n->discharges[1], 2, M->kids[1]}},
                             path);
          else
            err(path, r + " expects 2 discharge labels");
        }
      }
    } else if (r == "ImpI") {
      expect_premises(n, 1, path);
      if (C->kind != FKind::Imp)
        err(path, "ImpI conclusion must be an implication");
      else if (n->premises.size() == 1) {
        if (!aeq(C->kids[1], prem(0))) err(path, "ImpI premise must be the consequent");
        if (n->discharges.size() == 1)
          check_discharges(n, {{n->discharges[0], 0, C->kids[0]}}, path);
        else
          err(path, "ImpI expects 1 discharge label");
      }
    } else if (r == "ImpE") {
      expect_premises(n, 2, path);
      no_discharges(n, path);
      if (n->premises.size() == 2) {
        const auto& M = prem(0);
        if (!(M->kind == FKind::Imp && aeq(M->kids[0], prem(1)) && aeq(M->kids[1], C)))
          err(path, "ImpE premises must be A -> B and A, concluding B");
      }
    } else if (r == "NotI") {
      expect_premises(n, 1, path);
      if (C->kind != FKind::Not)
        err(path, "NotI conclusion must be a negation");
      else if (n->premises.size() == 1) {
        if (prem(0)->kind != FKind::Bottom) err(path, "NotI premise must be bot");
        if (n->discharges.size() == 1)
          check_discharges(n, {{n->discharges[0], 0, C->kids[0]}}, path);
        else
          err(path, "NotI expects 1 discharge label");
      }
    } else if (r == "NotE") {
      expect_premises(n, 2, path);
      no_discharges(n, path);
      if (n->premises.size() == 2) {
        if (C->kind != FKind::Bottom) err(path, "NotE concludes bot");
        const auto& M = prem(1);
        if (!(M->kind == FKind::Not && aeq(M->kids[0], prem(0))))
          err(path, "NotE premises must be A and ~A");
      }
    } else if (r == "BotE") {
      expect_premises(n, 1, path);
      no_discharges(n, path);
      if (n->premises.size() == 1 && prem(0)->kind != FKind::Bottom)
        err(path, "BotE premise must be bot");
    } else if (r == "ForallI") {
      expect_premises(n, 1, path);
      no_discharges(n, path);
      if (C->kind != FKind::Forall)
        err(path, "ForallI conclusion must be universally quantified");
      else if (n->premises.size() == 1 && n->eigen) {
        const std::string& y = *n->eigen;
        auto expected = substitute(C->kids[0], C->name, mk_var(y));
        if (!aeq(expected, prem(0)))
          err(path, "ForallI premise must be the body instantiated at the eigenvariable");
        if (free_vars(C).count(y))
          err(path, "eigenvariable '" + y + "' occurs free in the conclusion");
        auto ofv = free_vars_of_opens(opens_of(n->premises[0]));
        if (ofv.count(y))
          err(path, "eigenvariable '" + y + "' occurs free in an open assumption");
      }
    } else if (r == "ForallE") {
      expect_premises(n, 1, path);
      no_discharges(n, path);
      if (n->premises.size() == 1) {
        const auto& M = prem(0);
        if (M->kind != FKind::Forall) {
          err(path, "ForallE premise must be universally quantified");
        } else if (n->witness) {
          if (!aeq(substitute(M->kids[0], M->name, n->witness), C))
            err(path, "ForallE conclusion must be the body at the witness term");
        } else if (!match_single_instance(M->kids[0], M->name, C)) {
          err(path, "ForallE conclusion is not an instance of the premise body");
        }
      }
    } else if (r == "ExistsI") {
      expect_premises(n, 1, path);
      no_discharges(n, path);
      if (C->kind != FKind::Exists) {
        err(path, "ExistsI conclusion must be existentially quantified");
      } else if (n->premises.size() == 1) {
        if (n->witness) {
          if (!aeq(substitute(C->kids[0], C->name, n->witness), prem(0)))
            err(path, "ExistsI premise must be the body at the witness term");
        } else if (!match_single_instance(C->kids[0], C->name, prem(0))) {
          err(path, "ExistsI premise is not an instance of the conclusion body");
        }
      }
    } else if (r == "ExistsE") {
      expect_premises(n, 2, path);
      if (n->premises.size() == 2 && n->eigen) {
        const auto& M = prem(0);
        const std::string& y = *n->eigen;
        if (M->kind != FKind::Exists) {
          err(path, "ExistsE major premise must be existentially quantified");
        } else {
          if (!aeq(prem(1), C)) err(path, "ExistsE concludes its minor premise");
          auto hypf = substitute(M->kids[0], M->name, mk_var(y));
          if (n->discharges.size() == 1)
            check_discharges(n, {{n->discharges[0], 1, hypf}}, path);
          else
            err(path, "ExistsE expects 1 discharge label");
          if (free_vars(C).count(y))
            err(path, "eigenvariable '" + y + "' occurs free in the conclusion");
          if (free_vars(M).count(y))
            err(path, "eigenvariable '" + y + "' occurs free in the major premise");
          if (n->discharges.size() == 1) {
            auto o = opens_of(n->premises[1]);
            o.erase(n->discharges[0]);
            if (free_vars_of_opens(o).count(y))
              err(path, "eigenvariable '" + y + "' occurs free in an open assumption");
          }
        }
      }
    } else if (r == "GAndE") {
      expect_premises(n, 2, path);
      if (n->premises.size() == 2) {
        const auto& M = prem(0);
        if (M->kind != FKind::And) {
          err(path, "GAndE major premise must be a conjunction");
        } else {
          if (!aeq(prem(1), C)) err(path, "GAndE concludes its minor premise");
          if (n->discharges.size() == 2)
            check_discharges(n,
                             {{n->discharges[0], 1, M->kids[0]}, {n->discharges[1], 1, M->kids[1]}},
                             path);
          else
            err(path, "GAndE expects 2 discharge labels");
        }
      }
    } else if (r == "GImpE") {
      expect_premises(n, 3, path);
      if (n->premises.size() == 3) {
        const auto& M = prem(0);
        if (M->kind != FKind::Imp) {
          err(path, "GImpE major premise must be an implication");
        } else {
          if (!aeq(M->kids[0], prem(1))) err(path, "GImpE minor premise must be the antecedent");
          if (!aeq(prem(2), C)) err(path, "GImpE concludes its second minor premise");
          if (n->discharges.size() == 1)
            check_discharges(n, {{n->discharges[0], 2, M->kids[1]}}, path);
          else
            err(path, "GImpE expects 1 discharge label");
        }
      }
    } else if (r == "DNE") {
      expect_premises(n, 1, path);
      no_discharges(n, path);
      if (n->premises.size() == 1) {
        const auto& M = prem(0);
        if (!(M->kind == FKind::Not && M->kids[0]->kind == FKind::Not &&
              aeq(M->kids[0]->kids[0], C)))
          err(path, "DNE premise must be the double negation of the conclusion");
      }
    } else if (r == "LEM") {
      expect_premises(n, 0, path);
      no_discharges(n, path);
      if (!(C->kind == FKind::Or && C->kids[1]->kind == FKind::Not &&
            aeq(C->kids[1]->kids[0], C->kids[0])))
        err(path, "LEM concludes A | ~A");
    } else if (r == "RAA") {
      expect_premises(n, 1, path);
      if (n->premises.size() == 1) {
        if (prem(0)->kind != FKind::Bottom) err(path, "RAA premise must be bot");
        if (n->discharges.size() == 1)
          check_discharges(n, {{n->discharges[0], 0, mk_not(C)}}, path);
        else
          err(path, "RAA expects 1 discharge label");
      }
    } else if (r == "CD") {
      expect_premises(n, 2, path);
      if (n->premises.size() == 2) {
        if (!aeq(prem(0), C) || !aeq(prem(1), C))
          err(path, "CD minor premises must conclude the rule's conclusion");
        if (n->discharges.size() != 2) {
          err(path, "CD expects 2 discharge labels");
        } else {
          std::vector<NDPtr> occ_a, occ_b;
          for (const auto& q : n->premises) {
            auto a = hyp_occurrences(q, n->discharges[0]);
            occ_a.insert(occ_a.end(), a.begin(), a.end());
            auto b = hyp_occurrences(q, n->discharges[1]);
            occ_b.insert(occ_b.end(), b.begin(), b.end());
          }
          FormulaPtr A;
          if (!occ_a.empty()) A = occ_a.front()->formula;
          if (!A && !occ_b.empty()) {
            if (occ_b.front()->formula->kind == FKind::Not)
              A = occ_b.front()->formula->kids[0];
            else
              err(path, "CD second discharge must be a negation");
          }
          if (A) check_discharges(n, {{n->discharges[0], 0, A}, {n->discharges[1], 1, mk_not(A)}},
                                  path);
        }
      }
    } else if (const RuleSchema* schema = reg.find_rule(r)) {
      check_custom(n, *schema, path);
    }
  }

  void check_custom(const NDPtr& n, const RuleSchema& schema, const std::string& path) {
    SchemaAssignment sigma;
    size_t minor_base = 0;
    if (schema.is_elim) {
      if (n->premises.size() != schema.premises.size() + 1) {
        err(path, n->rule + " expects " + std::to_string(schema.premises.size() + 1) +
                      " premise(s)");
        return;
      }
      auto m = match_schema(schema.major, n->premises[0]->formula);
      if (!m) {
        err(path, n->rule + " major premise does not match the declared schema");
        return;
      }
      sigma = *m;
      // bind the generic target C from the node conclusion if the schema
      // conclusion does not already determine it
      if (auto m2 = [&]() {
            SchemaAssignment s2 = sigma;
            return match_rec_public(schema.conclusion, n->formula, s2) ? std::optional(s2)
                                                                       : std::nullopt;
          }()) {
        sigma = *m2;
      } else {
        err(path, n->rule + " conclusion does not match the declared schema");
        return;
      }
      minor_base = 1;
    } else {
      if (n->premises.size() != schema.premises.size()) {
        err(path,
            n->rule + " expects " + std::to_string(schema.premises.size()) + " premise(s)");
        return;
      }
      auto m = match_schema(schema.conclusion, n->formula);
      if (!m) {
        err(path, n->rule + " conclusion does not match the declared schema");
        return;
      }
      sigma = *m;
    }
    std::vector<DischargeSpec> specs;
    size_t label_idx = 0;
    for (size_t j = 0; j < schema.premises.size(); ++j) {
      const auto& sp = schema.premises[j];
      FormulaPtr want;
      try {
        want = instantiate(sp.conclusion, sigma);
      } catch (const std::exception& e) {
        err(path, n->rule + ": " + e.what());
        return;
      }
      if (!aeq(n->premises[minor_base + j]->formula, want))
        err(path, n->rule + " premise " + std::to_string(minor_base + j) + " must conclude " +
                      print_formula(want));
      for (const auto& h : sp.hyps) {
        if (label_idx >= n->discharges.size()) {
          err(path, n->rule + " is missing discharge labels");
          return;
        }
        specs.push_back({n->discharges[label_idx++], minor_base + j, instantiate(h, sigma)});
      }
    }
    if (label_idx != n->discharges.size())
      err(path, n->rule + " has surplus discharge labels");
    else
      check_discharges(n, specs, path);
  }

  // match_schema over an existing partial assignment
  static bool match_rec_public(const FormulaPtr& schema, const FormulaPtr& f,
                               SchemaAssignment& sigma) {
    auto whole = match_schema(schema, f);
    if (!whole) return false;
    for (const auto& [k, v] : whole->formula_vars) {
      auto it = sigma.formula_vars.find(k);
      if (it != sigma.formula_vars.end()) {
        if (!alpha_eq(it->second, v)) return false;
      } else {
        sigma.formula_vars[k] = v;
      }
    }
    for (const auto& [k, v] : whole->term_vars) {
      auto it = sigma.term_vars.find(k);
      if (it != sigma.term_vars.end()) {
        if (!term_eq(it->second, v)) return false;
      } else {
        sigma.term_vars[k] = v;
      }
    }
    return true;
  }
};

}  // namespace

CheckReport check_nd(const NDPtr& p, const NDRuleset& rs, const ConnectiveRegistry& reg) {
  NDChecker ck{rs, reg, {}};
  ck.check_node(p, "root");
  {
    // hypothesis labels must be formula-consistent across the whole tree
    std::map<std::string, FormulaPtr> seen;
    std::function<void(const NDPtr&, const std::string&)> go = [&](const NDPtr& n,
                                                                   const std::string& path) {
      if (n->rule == "Hyp" && !n->label.empty()) {
        auto it = seen.find(n->label);
        if (it == seen.end())
          seen.emplace(n->label, n->formula);
        else if (!alpha_eq(it->second, n->formula))
          ck.err(path, "hypothesis label '" + n->label + "' used with conflicting formulas");
      }
      for (size_t i = 0; i < n->premises.size(); ++i)
        go(n->premises[i], path + "." + std::to_string(i));
    };
    go(p, "root");
  }
  CheckReport rep;
  rep.valid = ck.diags.empty();
  rep.conclusion = p->formula;
  for (const auto& [l, f] : opens_of(p)) rep.open_assumptions.push_back(f);
  rep.rule_usage = rule_usage(p);
  rep.diagnostics = std::move(ck.diags);
  return rep;
}

namespace {

// Major premise index of elimination rules; -1 for non-elims.
int major_index(const std::string& rule) {
  if (rule == "AndE1" || rule == "AndE2" || rule == "OrE" || rule == "GOrE" || rule == "ImpE" ||
      rule == "BotE" || rule == "ForallE" || rule == "ExistsE" || rule == "GAndE" ||
      rule == "GImpE")
    return 0;
  if (rule == "NotE") return 1;
  return -1;
}

// Does `intro` introduce what `elim` eliminates?
bool matching_intro(const std::string& elim, const std::string& intro) {
  if (elim == "AndE1" || elim == "AndE2" || elim == "GAndE") return intro == "AndI";
  if (elim == "OrE" || elim == "GOrE") return intro == "OrI1" || intro == "OrI2";
  if (elim == "ImpE" || elim == "GImpE") return intro == "ImpI";
  if (elim == "NotE") return intro == "NotI";
  if (elim == "ForallE") return intro == "ForallI";
  if (elim == "ExistsE") return intro == "ExistsI";
  return false;
}

bool is_segment_rule(const std::string& rule) {
  return rule == "OrE" || rule == "GOrE" || rule == "ExistsE" || rule == "BotE";
}

}  // namespace

std::vector<std::string> maximal_formulas(const NDPtr& p, const NDRuleset& rs,
                                          const ConnectiveRegistry& reg) {
  auto rep = check_nd(p, rs, reg);
  if (!rep.valid)
    throw std::invalid_argument("maximal_formulas: proof does not check under " + rs.name());
  std::vector<std::string> out;
  std::function<void(const NDPtr&, const std::string&)> go = [&](const NDPtr& n,
                                                                 const std::string& path) {
    int mi = major_index(n->rule);
    if (mi >= 0 && static_cast<size_t>(mi) < n->premises.size()) {
      const auto& m = n->premises[mi];
      if (matching_intro(n->rule, m->rule)) out.push_back(path + "." + std::to_string(mi));
    }
    for (size_t i = 0; i < n->premises.size(); ++i)
      go(n->premises[i], path + "." + std::to_string(i));
  };
  go(p, "root");
  return out;
}

namespace {

struct Normalizer {
  int label_counter = 0;

  NDPtr refresh(const NDPtr& p) { return refresh_bound_labels(p, label_counter); }

  // Detour reduction at `n`; null when not a redex.
  NDPtr reduce(const NDPtr& n) {
    int mi = major_index(n->rule);
    if (mi < 0 || static_cast<size_t>(mi) >= n->premises.size()) return nullptr;
    const NDPtr& m = n->premises[mi];
    if (!matching_intro(n->rule, m->rule)) return nullptr;
    const auto& r = n->rule;
    if (r == "AndE1") return m->premises[0];
    if (r == "AndE2") return m->premises[1];
    if (r == "ImpE") return subst_hyp(refresh(m->premises[0]), m->discharges[0], n->premises[1]);
    if (r == "OrE" || r == "GOrE") {
      size_t branch = m->rule == "OrI1" ? 1 : 2;
      size_t disch = branch - 1;
      return subst_hyp(refresh(n->premises[branch]), n->discharges[disch], m->premises[0]);
    }
    if (r == "NotE") return subst_hyp(refresh(m->premises[0]), m->discharges[0], n->premises[0]);
    if (r == "ForallE") {
      const std::string& y = *m->eigen;
      const auto& body = m->formula->kids[0];
      const auto& x = m->formula->name;
      TermPtr t = n->witness;
      if (!t) {
        auto mt = match_single_instance(body, x, n->formula);
        t = mt ? *mt : mk_var(y);
      }
      return subst_term_in_proof(m->premises[0], y, t);
    }
    if (r == "ExistsE") {
      const std::string& y = *n->eigen;
      const auto& body = m->formula->kids[0];
      const auto& x = m->formula->name;
      TermPtr t = m->witness;
      if (!t) {
        auto mt = match_single_instance(body, x, m->premises[0]->formula);
        t = mt ? *mt : mk_var(y);
      }
      auto minor = subst_term_in_proof(refresh(n->premises[1]), y, t);
      return subst_hyp(minor, n->discharges[0], m->premises[0]);
    }
    if (r == "GAndE") {
      auto host = refresh(n->premises[1]);
      host = subst_hyp(host, n->discharges[0], m->premises[0]);
      return subst_hyp(host, n->discharges[1], m->premises[1]);
    }
    if (r == "GImpE") {
      auto inner = subst_hyp(refresh(m->premises[0]), m->discharges[0], n->premises[1]);
      return subst_hyp(refresh(n->premises[2]), n->discharges[0], inner);
    }
    return nullptr;
  }

  // Permutative conversion: an elimination whose major premise is the
  // conclusion of OrE/ExistsE/BotE moves above that segment node.
  NDPtr permute(const NDPtr& n) {
    int mi = major_index(n->rule);
    if (mi < 0 || static_cast<size_t>(mi) >= n->premises.size()) return nullptr;
    const NDPtr& seg = n->premises[mi];
    if (is_hyp(seg) || !is_segment_rule(seg->rule)) return nullptr;
    if (seg->rule == "BotE") {
      return nd_rule("BotE", n->formula, {seg->premises[0]});
    }
    auto wrap = [&](const NDPtr& minor) {
      auto prem = n->premises;
      prem[mi] = minor;
      return nd_rule(n->rule, n->formula, std::move(prem), n->discharges, n->eigen, n->witness);
    };
    if (seg->rule == "OrE" || seg->rule == "GOrE") {
      auto seg2 = refresh(seg);
      return nd_rule(seg2->rule, n->formula,
                     {seg2->premises[0], wrap(seg2->premises[1]), wrap(seg2->premises[2])},
                     seg2->discharges);
    }
    if (seg->rule == "ExistsE") {
      auto seg2 = refresh(seg);
      // rename the eigenvariable: the wrapped minor gains n's other premises
      std::string y = *seg2->eigen;
      std::set<std::string> taken = proof_vars(seg2);
      for (const auto& q : n->premises) {
        auto pv = proof_vars(q);
        taken.insert(pv.begin(), pv.end());
      }
      auto fv = free_vars(n->formula);
      taken.insert(fv.begin(), fv.end());
      std::string z = fresh_name(y + "'", taken);
      auto minor = subst_term_in_proof(seg2->premises[1], y, mk_var(z));
      return nd_rule("ExistsE", n->formula, {seg2->premises[0], wrap(minor)}, seg2->discharges, z);
    }
    return nullptr;
  }

  std::optional<NDPtr> rewrite_once(const NDPtr& p) {
    for (size_t i = p->premises.size(); i-- > 0;) {
      if (auto r = rewrite_once(p->premises[i])) return with_premise(p, i, *r);
    }
    if (auto r = reduce(p)) return r;
    if (auto r = permute(p)) return r;
    return std::nullopt;
  }
};

}  // namespace

NDPtr normalize(const NDPtr& p, const NDRuleset& rs, const ConnectiveRegistry& reg) {
  auto usage = rule_usage(p);
  for (const char* cls : {"DNE", "LEM", "RAA", "CD"})
    if (usage.count(cls))
      throw NormalizeError(
          std::string("classical residue — not normalizable in this engine (rule ") + cls + ")");
  auto rep = check_nd(p, rs, reg);
  if (!rep.valid) throw NormalizeError("normalize: proof does not check under " + rs.name());

  Normalizer nz;
  NDPtr cur = p;
  const int ceiling = 200000;
  for (int steps = 0;; ++steps) {
    if (steps > ceiling) throw NormalizeError("normalize: step ceiling exceeded");
    auto r = nz.rewrite_once(cur);
    if (!r) break;
    cur = *r;
  }
  return cur;
}

SubformulaReport nd_subformula_check(const NDPtr& p) {
  std::vector<FormulaPtr> candidates;
  candidates.push_back(p->formula);
  for (const auto& [l, f] : opens_of(p)) candidates.push_back(f);
  auto admissible = [&](const FormulaPtr& f) {
    if (f->kind == FKind::Bottom) return true;
    for (const auto& c : candidates)
      if (is_subformula_instance(f, c)) return true;
    if (f->kind == FKind::Not) {
      for (const auto& c : candidates)
        if (is_subformula_instance(f->kids[0], c)) return true;
    }
    return false;
  };
  SubformulaReport rep;
  std::function<void(const NDPtr&, const std::string&)> go = [&](const NDPtr& n,
                                                                 const std::string& path) {
    if (!admissible(n->formula))
      rep.violations.push_back(
          {path, print_formula(n->formula) +
                     " is not a subformula of the conclusion or an open assumption"});
    for (size_t i = 0; i < n->premises.size(); ++i)
      go(n->premises[i], path + "." + std::to_string(i));
  };
  go(p, "root");
  rep.pass = rep.violations.empty();
  return rep;
}

FormulaPtr translate_neg(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::Not:
      return mk_imp(translate_neg(f->kids[0]), mk_bottom());
    case FKind::Atom:
    case FKind::Bottom:
      return f;
    case FKind::Forall:
      return mk_forall(f->name, translate_neg(f->kids[0]));
    case FKind::Exists:
      return mk_exists(f->name, translate_neg(f->kids[0]));
    default: {
      std::vector<FormulaPtr> kids;
      kids.reserve(f->kids.size());
      for (const auto& k : f->kids) kids.push_back(translate_neg(k));
      if (f->kind == FKind::Custom) return mk_custom(f->name, std::move(kids));
      if (f->kind == FKind::And) return mk_and(kids[0], kids[1]);
      if (f->kind == FKind::Or) return mk_or(kids[0], kids[1]);
      return mk_imp(kids[0], kids[1]);
    }
  }
}

std::vector<EquivFixture> classical_equivalences() {
  std::vector<EquivFixture> out;
  auto A = mk_atom("A");
  auto p = mk_atom("p");
  auto lem_a = mk_or(A, mk_not(A));
  {
    // NJ+DNE proves A | ~A
    auto h1 = nd_hyp("h1", mk_not(lem_a));
    auto h2 = nd_hyp("h2", A);
    auto n1 = nd_rule("OrI1", lem_a, {h2});
    auto n2 = nd_rule("NotE", mk_bottom(), {n1, h1});
    auto n3 = nd_rule("NotI", mk_not(A), {n2}, {"h2"});
    auto n4 = nd_rule("OrI2", lem_a, {n3});
    auto n5 = nd_rule("NotE", mk_bottom(), {n4, h1});
    auto n6 = nd_rule("NotI", mk_not(mk_not(lem_a)), {n5}, {"h1"});
    auto n7 = nd_rule("DNE", lem_a, {n6});
    out.push_back({NDRuleset::nk(ClassicalExt::DNE), lem_a, n7});
  }
  {
    // NJ+LEM proves ~~p -> p
    auto goal = mk_imp(mk_not(mk_not(p)), p);
    auto h1 = nd_hyp("h1", mk_not(mk_not(p)));
    auto lem_p = mk_or(p, mk_not(p));
    auto lemn = nd_rule("LEM", lem_p, {});
    auto c1 = nd_hyp("hA", p);
    auto hb = nd_hyp("hB", mk_not(p));
    auto e1 = nd_rule("NotE", mk_bottom(), {hb, h1});
    auto e2 = nd_rule("BotE", p, {e1});
    auto oe = nd_rule("OrE", p, {lemn, c1, e2}, {"hA", "hB"});
    auto impi = nd_rule("ImpI", goal, {oe}, {"h1"});
    out.push_back({NDRuleset::nk(ClassicalExt::LEM), goal, impi});
  }
  {
    // NJ+RAA proves ~~p -> p
    auto goal = mk_imp(mk_not(mk_not(p)), p);
    auto h1 = nd_hyp("h1", mk_not(mk_not(p)));
    auto h2 = nd_hyp("h2", mk_not(p));
    auto e = nd_rule("NotE", mk_bottom(), {h2, h1});
    auto raa = nd_rule("RAA", p, {e}, {"h2"});
    auto impi = nd_rule("ImpI", goal, {raa}, {"h1"});
    out.push_back({NDRuleset::nk(ClassicalExt::RAA), goal, impi});
  }
  {
    // NJ+CD proves A | ~A
    auto c1 = nd_rule("OrI1", lem_a, {nd_hyp("hA", A)});
    auto c2 = nd_rule("OrI2", lem_a, {nd_hyp("hB", mk_not(A))});
    auto cd = nd_rule("CD", lem_a, {c1, c2}, {"hA", "hB"});
    out.push_back({NDRuleset::nk(ClassicalExt::CD), lem_a, cd});
  }
  return out;
}

std::string print_nd(const NDPtr& p) {
  std::string out;
  std::function<void(const NDPtr&, int)> go = [&](const NDPtr& n, int depth) {
    out.append(depth * 2, ' ');
    if (is_hyp(n)) {
      out += "Hyp[" + n->label + "]: " + print_formula(n->formula) + "\n";
      return;
    }
    out += n->rule;
    if (!n->discharges.empty()) {
      out += " [discharges";
      for (const auto& d : n->discharges) out += " " + d;
      out += "]";
    }
    if (n->eigen) out += " [eigen " + *n->eigen + "]";
    if (n->witness) out += " [term " + print_term(n->witness) + "]";
    out += ": " + print_formula(n->formula) + "\n";
    for (const auto& q : n->premises) go(q, depth + 1);
  };
  go(p, 0);
  return out;
}

}  // namespace proofbench
