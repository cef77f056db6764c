#pragma once

#include "micrep/rational.hpp"

#include <compare>
#include <map>
#include <set>
#include <string>
#include <utility>

namespace micrep {

/// A variable, identified by its name.
class Var {
 public:
  Var() = default;
  explicit Var(std::string name) : name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

  friend bool operator==(const Var&, const Var&) = default;
  friend std::strong_ordering operator<=>(const Var& a, const Var& b) {
    return a.name_ <=> b.name_;
  }

 private:
  std::string name_;
};

using Assignment = std::map<Var, Rational>;

class AffineForm;
/// Simultaneous substitution u -> T(x), one affine form per source variable.
using AffineMap = std::map<Var, AffineForm>;

/// Sparse affine form sum_j c_j v_j + c_0. Zero coefficients are never stored.
class AffineForm {
 public:
  AffineForm() = default;
  explicit AffineForm(Rational constant) : constant_(std::move(constant)) {}

  static AffineForm variable(const Var& v, const Rational& coefficient = 1);

  const std::map<Var, Rational>& coefficients() const noexcept { return coeffs_; }
  const Rational& constant() const noexcept { return constant_; }
  Rational coefficient(const Var& v) const;

  void add_term(const Var& v, const Rational& coefficient);
  void add_constant(const Rational& c) { constant_ += c; }

  bool is_constant() const noexcept { return coeffs_.empty(); }
  bool is_homogeneous() const noexcept { return constant_ == 0; }
  bool depends_on(const Var& v) const { return coeffs_.count(v) != 0; }

  /// Throws UnboundVariable when a variable with nonzero coefficient is missing.
  Rational evaluate(const Assignment& point) const;

  /// Throws DimensionMismatch when a variable is absent from `map`.
  AffineForm substitute(const AffineMap& map) const;

  void collect_variables(std::set<Var>& out) const;

  AffineForm& operator+=(const AffineForm& other);
  AffineForm& operator-=(const AffineForm& other);
  AffineForm& operator*=(const Rational& factor);

  friend AffineForm operator+(AffineForm a, const AffineForm& b) { return a += b; }
  friend AffineForm operator-(AffineForm a, const AffineForm& b) { return a -= b; }
  friend AffineForm operator*(const Rational& factor, AffineForm a) { return a *= factor; }
  friend AffineForm operator-(AffineForm a) { return a *= Rational(-1); }

  friend bool operator==(const AffineForm&, const AffineForm&) = default;

 private:
  std::map<Var, Rational> coeffs_;
  Rational constant_{0};
};

}  // namespace micrep
