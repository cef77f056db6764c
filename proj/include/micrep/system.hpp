#pragma once

#include "micrep/affine.hpp"
#include "micrep/matrix.hpp"
#include "micrep/tree.hpp"

#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace micrep {

enum class VarKind { Continuous, Integer };

/// lhs(point) <= rhs.
struct ChvatalInequality {
  ChvatalTree lhs;
  Rational rhs;

  friend bool operator==(const ChvatalInequality&, const ChvatalInequality&) = default;
};

/// {(x, z) in R^n x Z^q : f_i(x, z) <= b_i for all i}.
struct MicSystem {
  std::vector<Var> continuous_vars;
  std::vector<Var> integer_vars;
  std::vector<ChvatalInequality> inequalities;

  std::size_t total_ceiling_count() const;
  /// Continuous variables first, then integer ones.
  std::vector<Var> variables() const;
  bool is_integer(const Var& v) const;
  bool declares(const Var& v) const;
  /// Throws PreconditionViolation for duplicate declarations or undeclared
  /// leaf variables.
  void validate() const;

  friend bool operator==(const MicSystem&, const MicSystem&) = default;
};

/// Mixed-integer linear system A x + B y + C z >= d, representing its
/// projection onto the target variables x. Targets may themselves be
/// integer-constrained (the kinds vector runs parallel to target_vars).
struct MilpSystem {
  std::vector<Var> target_vars;
  std::vector<VarKind> target_kinds;
  std::vector<Var> continuous_aux_vars;
  std::vector<Var> integer_aux_vars;
  Matrix A;
  Matrix B;
  Matrix C;
  RationalVector d;

  std::size_t row_count() const noexcept { return d.size(); }
  /// Throws DimensionMismatch when blocks disagree.
  void validate() const;

  friend bool operator==(const MilpSystem&, const MilpSystem&) = default;
};

/// The affine inequality coeffs . vars >= rhs as a MIC inequality
/// (rhs - coeffs . vars) <= 0.
ChvatalInequality affine_at_least(std::span<const Var> vars, std::span<const Rational> coeffs,
                                  const Rational& rhs);

/// A fresh variable name "<stem><k>" not in `taken`.
Var fresh_var(const std::string& stem, const std::set<Var>& taken);

}  // namespace micrep
