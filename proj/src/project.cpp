#include "micrep/project.hpp"

#include "micrep/error.hpp"
#include "micrep/fm.hpp"

#include <algorithm>
#include <set>

namespace micrep {

namespace {

Matrix drop_column(const Matrix& m, std::size_t j) {
  Matrix out(m.rows(), m.cols() - 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0, k = 0; c < m.cols(); ++c) {
      if (c != j) out(r, k++) = m(r, c);
    }
  }
  return out;
}

Matrix append_column(const Matrix& m, std::size_t rows, const RationalVector& column) {
  Matrix out(rows, m.cols() + 1);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c);
    out(r, m.cols()) = column[r];
  }
  return out;
}

MicSystem empty_set(const MilpSystem& sys) {
  MicSystem out;
  for (std::size_t j = 0; j < sys.target_vars.size(); ++j) {
    (sys.target_kinds[j] == VarKind::Integer ? out.integer_vars : out.continuous_vars)
        .push_back(sys.target_vars[j]);
  }
  out.inequalities.push_back({ChvatalTree::leaf(AffineForm(Rational(1))), Rational(0)});
  return out;
}

}  // namespace

MilpSystem demote_target(const MilpSystem& sys, const Var& var) {
  sys.validate();
  auto it = std::find(sys.target_vars.begin(), sys.target_vars.end(), var);
  if (it == sys.target_vars.end()) throw DimensionMismatch("'" + var.name() + "' is not a target");
  const std::size_t j = static_cast<std::size_t>(it - sys.target_vars.begin());
  RationalVector column(sys.row_count());
  for (std::size_t r = 0; r < sys.row_count(); ++r) column[r] = sys.A(r, j);
  MilpSystem out = sys;
  out.target_vars.erase(out.target_vars.begin() + static_cast<std::ptrdiff_t>(j));
  out.target_kinds.erase(out.target_kinds.begin() + static_cast<std::ptrdiff_t>(j));
  out.A = drop_column(sys.A, j);
  if (sys.target_kinds[j] == VarKind::Integer) {
    out.integer_aux_vars.push_back(var);
    out.C = append_column(sys.C, sys.row_count(), column);
  } else {
    out.continuous_aux_vars.push_back(var);
    out.B = append_column(sys.B, sys.row_count(), column);
  }
  return out;
}

MicSystem project_to_mic(const MilpSystem& sys, const ClosureOptions& options) {
  sys.validate();
  const std::size_t n = sys.target_vars.size(), q = sys.integer_aux_vars.size();
  std::vector<Var> columns = sys.target_vars;
  columns.insert(columns.end(), sys.integer_aux_vars.begin(), sys.integer_aux_vars.end());
  columns.insert(columns.end(), sys.continuous_aux_vars.begin(), sys.continuous_aux_vars.end());
  LinearSystem linear(columns);
  for (std::size_t r = 0; r < sys.row_count(); ++r) {
    RationalVector row = sys.A.row_vector(r);
    for (const Rational& x : sys.C.row(r)) row.push_back(x);
    for (const Rational& x : sys.B.row(r)) row.push_back(x);
    linear.add_row(std::move(row), sys.d[r]);
  }
  linear = eliminate_all(linear, std::span<const Var>(sys.continuous_aux_vars), options.fm);
  if (linear.infeasible()) return empty_set(sys);

  // A' x + C' z >= d'  with  beta = d' - A' x.
  const std::size_t m = linear.size();
  Matrix c(m, q);
  RhsMap map;
  map.parameters = sys.target_vars;
  map.kinds = sys.target_kinds;
  for (std::size_t r = 0; r < m; ++r) {
    const auto& row = linear.rows()[r];
    AffineForm beta(row.rhs);
    for (std::size_t j = 0; j < n; ++j) beta.add_term(sys.target_vars[j], -row.coeffs[j]);
    for (std::size_t k = 0; k < q; ++k) c(r, k) = row.coeffs[n + k];
    map.beta.push_back(std::move(beta));
  }
  FeasibilityFunctions f = feasibility_functions(c, map, options);

  AffineMap substitution;
  for (std::size_t r = 0; r < m; ++r) substitution[f.parameters[r]] = map.beta[r];
  MicSystem out;
  for (std::size_t j = 0; j < n; ++j) {
    (sys.target_kinds[j] == VarKind::Integer ? out.integer_vars : out.continuous_vars)
        .push_back(sys.target_vars[j]);
  }
  for (const ChvatalTree& g : f.functions) {
    out.inequalities.push_back({compose_affine(g, substitution), Rational(0)});
  }
  return out;
}

MicSystem eliminate_variable(const MicSystem& sys, const Var& var, const ClosureOptions& options) {
  sys.validate();
  if (!sys.declares(var)) throw DimensionMismatch("system has no variable '" + var.name() + "'");
  MicSystem out;
  for (const Var& v : sys.continuous_vars) {
    if (v != var) out.continuous_vars.push_back(v);
  }
  for (const Var& v : sys.integer_vars) {
    if (v != var) out.integer_vars.push_back(v);
  }
  MicSystem involved;
  std::set<Var> used;
  for (const auto& ineq : sys.inequalities) {
    if (depends_on(ineq.lhs, var)) {
      involved.inequalities.push_back(ineq);
      for (const Var& v : variables(ineq.lhs)) used.insert(v);
    } else {
      out.inequalities.push_back(ineq);
    }
  }
  if (involved.inequalities.empty()) return out;
  for (const Var& v : sys.continuous_vars) {
    if (used.count(v)) involved.continuous_vars.push_back(v);
  }
  for (const Var& v : sys.integer_vars) {
    if (used.count(v)) involved.integer_vars.push_back(v);
  }
  LiftResult lifted = lift_to_milp_shared(involved);
  MicSystem projected = project_to_mic(demote_target(lifted.milp, var), options);
  for (auto& ineq : projected.inequalities) out.inequalities.push_back(std::move(ineq));
  return out;
}

MicSystem eliminate_variables(const MicSystem& sys, std::span<const Var> order,
                              const ClosureOptions& options) {
  MicSystem current = sys;
  for (const Var& v : order) current = eliminate_variable(current, v, options);
  return current;
}

FeasibilityFunctions monoid_representation(const Matrix& a, const ClosureOptions& options) {
  const std::size_t m = a.rows(), n = a.cols();
  for (std::size_t r = 0; r < m; ++r) {
    for (const Rational& x : a.row(r)) {
      if (!is_integer(x)) throw PreconditionViolation("monoid matrix must be integral");
    }
  }
  Matrix c(2 * m + n, n);
  RhsMap map;
  map.parameters = rhs_variables(m);
  map.kinds.assign(m, VarKind::Integer);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t j = 0; j < n; ++j) {
      c(r, j) = a(r, j);
      c(m + r, j) = -a(r, j);
    }
  }
  for (std::size_t j = 0; j < n; ++j) c(2 * m + j, j) = 1;
  for (std::size_t r = 0; r < m; ++r) map.beta.push_back(AffineForm::variable(map.parameters[r]));
  for (std::size_t r = 0; r < m; ++r) {
    map.beta.push_back(AffineForm::variable(map.parameters[r], Rational(-1)));
  }
  for (std::size_t j = 0; j < n; ++j) map.beta.emplace_back();

  FeasibilityFunctions f = feasibility_functions(c, map, options);
  AffineMap substitution;
  for (std::size_t r = 0; r < c.rows(); ++r) substitution[f.parameters[r]] = map.beta[r];
  for (ChvatalTree& g : f.functions) g = compose_affine(g, substitution);
  f.parameters = map.parameters;
  return f;
}

}  // namespace micrep
