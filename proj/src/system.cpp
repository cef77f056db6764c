#include "micrep/system.hpp"

#include "micrep/error.hpp"

#include <algorithm>
#include <set>

namespace micrep {

std::size_t MicSystem::total_ceiling_count() const {
  std::size_t total = 0;
  for (const auto& ineq : inequalities) total += ineq.lhs.ceiling_count();
  return total;
}

std::vector<Var> MicSystem::variables() const {
  std::vector<Var> all = continuous_vars;
  all.insert(all.end(), integer_vars.begin(), integer_vars.end());
  return all;
}

bool MicSystem::is_integer(const Var& v) const {
  return std::find(integer_vars.begin(), integer_vars.end(), v) != integer_vars.end();
}

bool MicSystem::declares(const Var& v) const {
  return is_integer(v) ||
         std::find(continuous_vars.begin(), continuous_vars.end(), v) != continuous_vars.end();
}

void MicSystem::validate() const {
  std::set<Var> declared;
  for (const Var& v : variables()) {
    if (!declared.insert(v).second) {
      throw PreconditionViolation("variable '" + v.name() + "' declared twice");
    }
  }
  for (const auto& ineq : inequalities) {
    for (const Var& v : micrep::variables(ineq.lhs)) {
      if (!declared.count(v)) {
        throw PreconditionViolation("inequality uses undeclared variable '" + v.name() + "'");
      }
    }
  }
}

void MilpSystem::validate() const {
  const std::size_t m = d.size();
  if (target_kinds.size() != target_vars.size()) {
    throw DimensionMismatch("target kinds do not match target variables");
  }
  auto check = [&](const Matrix& block, std::size_t cols, const char* name) {
    if (block.rows() != m || block.cols() != cols) {
      throw DimensionMismatch(std::string("block ") + name + " has wrong shape");
    }
  };
  check(A, target_vars.size(), "A");
  check(B, continuous_aux_vars.size(), "B");
  check(C, integer_aux_vars.size(), "C");
}

ChvatalInequality affine_at_least(std::span<const Var> vars, std::span<const Rational> coeffs,
                                  const Rational& rhs) {
  if (vars.size() != coeffs.size()) throw DimensionMismatch("row length mismatch");
  AffineForm form(rhs);
  for (std::size_t j = 0; j < vars.size(); ++j) form.add_term(vars[j], -coeffs[j]);
  return {ChvatalTree::leaf(std::move(form)), Rational(0)};
}

Var fresh_var(const std::string& stem, const std::set<Var>& taken) {
  for (std::size_t k = 1;; ++k) {
    Var candidate(stem + std::to_string(k));
    if (!taken.count(candidate)) return candidate;
  }
}

}  // namespace micrep
