#include "micrep/lift.hpp"

#include "micrep/error.hpp"

#include <algorithm>
#include <set>

namespace micrep {

namespace {

// lhs + coefficient * v, kept as a leaf when lhs is one.
ChvatalTree add_variable_term(const ChvatalTree& lhs, const Var& v, const Rational& coefficient) {
  if (const auto* leaf = std::get_if<LeafNode>(&lhs.node())) {
    AffineForm form = leaf->form;
    form.add_term(v, coefficient);
    return ChvatalTree::leaf(std::move(form));
  }
  if (coefficient >= 0) {
    return ChvatalTree::sum(Rational(1), lhs, coefficient,
                            ChvatalTree::leaf(AffineForm::variable(v)));
  }
  return ChvatalTree::sum(Rational(1), lhs, Rational(1),
                          ChvatalTree::leaf(AffineForm::variable(v, coefficient)));
}

std::set<Var> declared_set(const MicSystem& sys) {
  auto vars = sys.variables();
  return {vars.begin(), vars.end()};
}

}  // namespace

ReductionStep reduce_one_ceiling_step(const MicSystem& sys, const Var& fresh) {
  auto it = std::find_if(sys.inequalities.begin(), sys.inequalities.end(),
                         [](const ChvatalInequality& q) { return q.lhs.ceiling_count() > 0; });
  if (it == sys.inequalities.end()) {
    throw PreconditionViolation("reduce_one_ceiling needs a positive total ceiling count");
  }
  if (sys.declares(fresh)) {
    throw PreconditionViolation("variable '" + fresh.name() + "' already declared");
  }
  const std::size_t index = static_cast<std::size_t>(it - sys.inequalities.begin());
  auto split = std::get<CeilingCase>(decompose(it->lhs));

  ReductionStep step{sys, AuxDefinition{fresh, split.inner, split.rest, split.gamma, it->rhs},
                     index};
  step.system.integer_vars.push_back(fresh);
  ChvatalInequality lower{add_variable_term(split.inner, fresh, Rational(-1)), Rational(0)};
  ChvatalInequality upper{add_variable_term(split.rest, fresh, split.gamma), it->rhs};
  auto& ineqs = step.system.inequalities;
  ineqs[index] = std::move(lower);
  ineqs.insert(ineqs.begin() + static_cast<std::ptrdiff_t>(index) + 1, std::move(upper));
  return step;
}

MicSystem reduce_one_ceiling(const MicSystem& sys) {
  return reduce_one_ceiling_step(sys, fresh_var("_z", declared_set(sys))).system;
}

MilpSystem read_affine_milp(const MicSystem& sys, const std::vector<Var>& aux_integer) {
  MilpSystem milp;
  std::set<Var> aux_set(aux_integer.begin(), aux_integer.end());
  for (const Var& v : sys.continuous_vars) {
    milp.target_vars.push_back(v);
    milp.target_kinds.push_back(VarKind::Continuous);
  }
  for (const Var& v : sys.integer_vars) {
    if (aux_set.count(v)) continue;
    milp.target_vars.push_back(v);
    milp.target_kinds.push_back(VarKind::Integer);
  }
  milp.integer_aux_vars = aux_integer;
  milp.A = Matrix(0, milp.target_vars.size());
  milp.B = Matrix(0, 0);
  milp.C = Matrix(0, aux_integer.size());
  for (const auto& ineq : sys.inequalities) {
    auto form = as_affine(ineq.lhs);
    if (!form) throw PreconditionViolation("read_affine_milp: inequality still has a ceiling");
    // a.v + c <= b  <=>  -a.v >= c - b
    RationalVector a_row, c_row;
    for (const Var& v : milp.target_vars) a_row.push_back(-form->coefficient(v));
    for (const Var& v : aux_integer) c_row.push_back(-form->coefficient(v));
    milp.A.append_row(a_row);
    milp.C.append_row(c_row);
    milp.d.push_back(form->constant() - ineq.rhs);
  }
  milp.B = Matrix(milp.d.size(), 0);
  return milp;
}

LiftResult lift_to_milp(const MicSystem& sys) {
  sys.validate();
  LiftResult result;
  MicSystem current = sys;
  std::set<Var> taken = declared_set(sys);
  std::vector<Var> aux_vars;
  while (current.total_ceiling_count() > 0) {
    Var fresh = fresh_var("_z", taken);
    taken.insert(fresh);
    ReductionStep step = reduce_one_ceiling_step(current, fresh);
    aux_vars.push_back(fresh);
    result.aux.push_back(std::move(step.aux));
    current = std::move(step.system);
  }
  result.milp = read_affine_milp(current, aux_vars);
  return result;
}

namespace {

// The first ceiling node met in pre-order, left to right.
const ChvatalTree* first_ceiling(const ChvatalTree& t) {
  return std::visit(
      [&](const auto& n) -> const ChvatalTree* {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, CeilNode>) {
          return &t;
        } else if constexpr (std::is_same_v<N, ScaleNode>) {
          return first_ceiling(n.child);
        } else if constexpr (std::is_same_v<N, SumNode>) {
          const ChvatalTree* left = first_ceiling(n.left);
          return left ? left : first_ceiling(n.right);
        } else {
          return nullptr;
        }
      },
      t.node());
}

// t with every subtree equal to `target` replaced by `replacement`.
ChvatalTree replace_subtree(const ChvatalTree& t, const ChvatalTree& target,
                            const ChvatalTree& replacement) {
  if (t.ceiling_count() < target.ceiling_count()) return t;
  if (t.ceiling_count() == target.ceiling_count() && t.depth() == target.depth() && t == target) {
    return replacement;
  }
  return std::visit(
      [&](const auto& n) -> ChvatalTree {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, CeilNode>) {
          return ChvatalTree::ceil(replace_subtree(n.child, target, replacement));
        } else if constexpr (std::is_same_v<N, ScaleNode>) {
          return ChvatalTree::scale(n.weight, replace_subtree(n.child, target, replacement));
        } else if constexpr (std::is_same_v<N, SumNode>) {
          return ChvatalTree::sum(n.left_weight, replace_subtree(n.left, target, replacement),
                                  n.right_weight, replace_subtree(n.right, target, replacement));
        } else {
          return t;
        }
      },
      t.node());
}

}  // namespace

LiftResult lift_to_milp_shared(const MicSystem& sys) {
  sys.validate();
  LiftResult result;
  MicSystem current = sys;
  std::set<Var> taken = declared_set(sys);
  std::vector<Var> aux_vars;
  while (true) {
    const ChvatalTree* found = nullptr;
    for (const auto& ineq : current.inequalities) {
      if ((found = first_ceiling(ineq.lhs))) break;
    }
    if (!found) break;
    const ChvatalTree target = *found;
    const ChvatalTree inner = std::get<CeilNode>(target.node()).child;
    auto constant = as_affine(inner);
    if (constant && constant->is_constant()) {
      ChvatalTree value = ChvatalTree::leaf(AffineForm(micrep::ceil(constant->constant())));
      for (auto& ineq : current.inequalities) ineq.lhs = replace_subtree(ineq.lhs, target, value);
      continue;
    }
    Var fresh = fresh_var("_z", taken);
    taken.insert(fresh);
    aux_vars.push_back(fresh);
    current.integer_vars.push_back(fresh);
    ChvatalTree z = ChvatalTree::leaf(AffineForm::variable(fresh));
    for (auto& ineq : current.inequalities) ineq.lhs = replace_subtree(ineq.lhs, target, z);
    current.inequalities.push_back({add_variable_term(inner, fresh, Rational(-1)), Rational(0)});
    result.aux.push_back(AuxDefinition{fresh, inner, ChvatalTree(), Rational(0), Rational(0)});
  }
  // Leaves may now be sums of leaves; read_affine_milp flattens them.
  result.milp = read_affine_milp(current, aux_vars);
  return result;
}

}  // namespace micrep
