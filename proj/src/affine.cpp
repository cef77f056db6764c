#include "micrep/affine.hpp"

#include "micrep/error.hpp"

namespace micrep {

AffineForm AffineForm::variable(const Var& v, const Rational& coefficient) {
  AffineForm form;
  form.add_term(v, coefficient);
  return form;
}

Rational AffineForm::coefficient(const Var& v) const {
  auto it = coeffs_.find(v);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

void AffineForm::add_term(const Var& v, const Rational& coefficient) {
  if (coefficient == 0) return;
  auto [it, inserted] = coeffs_.try_emplace(v, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0) coeffs_.erase(it);
  }
}

Rational AffineForm::evaluate(const Assignment& point) const {
  Rational value = constant_;
  for (const auto& [v, c] : coeffs_) {
    auto it = point.find(v);
    if (it == point.end()) throw UnboundVariable(v.name());
    value += c * it->second;
  }
  return value;
}

AffineForm AffineForm::substitute(const AffineMap& map) const {
  AffineForm result(constant_);
  for (const auto& [v, c] : coeffs_) {
    auto it = map.find(v);
    if (it == map.end()) {
      throw DimensionMismatch("affine map has no image for variable '" + v.name() + "'");
    }
    AffineForm term = it->second;
    term *= c;
    result += term;
  }
  return result;
}

void AffineForm::collect_variables(std::set<Var>& out) const {
  for (const auto& entry : coeffs_) out.insert(entry.first);
}

AffineForm& AffineForm::operator+=(const AffineForm& other) {
  for (const auto& [v, c] : other.coeffs_) add_term(v, c);
  constant_ += other.constant_;
  return *this;
}

AffineForm& AffineForm::operator-=(const AffineForm& other) {
  for (const auto& [v, c] : other.coeffs_) add_term(v, -c);
  constant_ -= other.constant_;
  return *this;
}

AffineForm& AffineForm::operator*=(const Rational& factor) {
  if (factor == 0) {
    coeffs_.clear();
    constant_ = 0;
    return *this;
  }
  for (auto& entry : coeffs_) entry.second *= factor;
  constant_ *= factor;
  return *this;
}

}  // namespace micrep
