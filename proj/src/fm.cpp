#include "micrep/fm.hpp"

#include "micrep/error.hpp"
#include "micrep/system.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <set>
#include <type_traits>

namespace micrep {

namespace {

template <class Rhs>
struct RhsOps;

template <>
struct RhsOps<Rational> {
  static Rational scaled(const Rational& w, const Rational& r) { return w * r; }
  static Rational combine(const Rational& w1, const Rational& r1, const Rational& w2,
                          const Rational& r2) {
    return w1 * r1 + w2 * r2;
  }
};

template <>
struct RhsOps<ChvatalTree> {
  static ChvatalTree scaled(const Rational& w, const ChvatalTree& t) {
    return w == 1 ? t : ChvatalTree::scale(w, t);
  }
  static ChvatalTree combine(const Rational& w1, const ChvatalTree& t1, const Rational& w2,
                             const ChvatalTree& t2) {
    return ChvatalTree::sum(w1, t1, w2, t2);
  }
};

Rational leading_magnitude(const RationalVector& coeffs) {
  for (const Rational& c : coeffs) {
    if (c != 0) return abs(c);
  }
  return Rational(1);
}

std::vector<std::uint32_t> merge_support(const std::vector<std::uint32_t>& a,
                                         const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

template <class Rhs>
InequalitySystem<Rhs>::InequalitySystem(std::vector<Var> vars)
    : vars_(std::move(vars)), base_vars_(vars_) {
  std::set<Var> unique(vars_.begin(), vars_.end());
  if (unique.size() != vars_.size()) throw DimensionMismatch("duplicate column variable");
}

template <class Rhs>
std::size_t InequalitySystem<Rhs>::index_of(const Var& v) const {
  auto it = std::find(vars_.begin(), vars_.end(), v);
  if (it == vars_.end()) throw DimensionMismatch("system has no variable '" + v.name() + "'");
  return static_cast<std::size_t>(it - vars_.begin());
}

template <class Rhs>
std::uint32_t InequalitySystem<Rhs>::record_base_row(const RationalVector& coeffs) {
  RationalVector full(base_vars_.size());
  for (std::size_t j = 0; j < vars_.size(); ++j) {
    auto it = std::find(base_vars_.begin(), base_vars_.end(), vars_[j]);
    full[static_cast<std::size_t>(it - base_vars_.begin())] = coeffs[j];
  }
  if (history_.use_count() > 1) history_ = std::make_shared<History>(*history_);
  history_->rows.push_back(std::move(full));
  return static_cast<std::uint32_t>(history_->rows.size() - 1);
}

template <class Rhs>
void InequalitySystem<Rhs>::add_row(RationalVector coeffs, Rhs rhs) {
  if (coeffs.size() != vars_.size()) throw DimensionMismatch("row length does not match columns");
  std::uint32_t base = record_base_row(coeffs);
  Rational s = leading_magnitude(coeffs);
  if (s != 1) {
    for (Rational& c : coeffs) c /= s;
    rhs = RhsOps<Rhs>::scaled(Rational(1) / s, rhs);
  }
  insert_canonical(std::move(coeffs), std::move(rhs), {{base}});
}

// The support filter in eliminate_var needs every origin of a dropped row:
// a descendant of the dropped row can be extreme while the same combination
// through the surviving row's origin is not.
template <class Rhs>
void InequalitySystem<Rhs>::insert_canonical(RationalVector coeffs, Rhs rhs,
                                             std::vector<std::vector<std::uint32_t>> origins) {
  auto absorb = [&](Row& row) {
    for (auto& o : origins) {
      if (std::find(row.origins.begin(), row.origins.end(), o) == row.origins.end()) {
        row.origins.push_back(std::move(o));
      }
    }
  };
  if constexpr (std::is_same_v<Rhs, Rational>) {
    if (infeasible_) return;
    if (is_zero(coeffs)) {
      if (rhs <= 0) return;
      infeasible_ = true;
      rows_.clear();
      rows_.push_back(Row{std::move(coeffs), Rational(1), std::move(origins)});
      return;
    }
    for (Row& row : rows_) {
      if (row.coeffs == coeffs) {
        if (rhs > row.rhs) row.rhs = std::move(rhs);
        absorb(row);
        return;
      }
    }
  } else {
    for (Row& row : rows_) {
      if (row.coeffs == coeffs && row.rhs == rhs) {
        absorb(row);
        return;
      }
    }
  }
  rows_.push_back(Row{std::move(coeffs), std::move(rhs), std::move(origins)});
}

template <class Rhs>
std::vector<Rhs> InequalitySystem<Rhs>::conditions() const {
  std::vector<Rhs> out;
  for (const Row& row : rows_) {
    if (is_zero(row.coeffs)) out.push_back(row.rhs);
  }
  return out;
}

template <class Rhs>
InequalitySystem<Rhs> eliminate_var(const InequalitySystem<Rhs>& sys, const Var& v,
                                    const FmOptions& options) {
  using System = InequalitySystem<Rhs>;
  using Row = typename System::Row;
  const std::size_t j = sys.index_of(v);

  System out;
  out.vars_ = sys.vars_;
  out.vars_.erase(out.vars_.begin() + static_cast<std::ptrdiff_t>(j));
  out.base_vars_ = sys.base_vars_;
  out.history_ = sys.history_;
  out.eliminated_ = sys.eliminated_;
  out.eliminated_.push_back(static_cast<std::size_t>(
      std::find(sys.base_vars_.begin(), sys.base_vars_.end(), v) - sys.base_vars_.begin()));
  if constexpr (std::is_same_v<Rhs, Rational>) {
    if (sys.infeasible_) {
      out.insert_canonical(RationalVector(out.vars_.size()), Rational(1), {});
      return out;
    }
  }

  auto drop_column = [&](const RationalVector& coeffs) {
    RationalVector reduced;
    reduced.reserve(coeffs.size() - 1);
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      if (k != j) reduced.push_back(coeffs[k]);
    }
    return reduced;
  };

  std::vector<const Row*> positive, negative;
  std::set<std::vector<std::uint32_t>> supports;
  for (const Row& row : sys.rows_) {
    const Rational& c = row.coeffs[j];
    if (c > 0) {
      positive.push_back(&row);
    } else if (c < 0) {
      negative.push_back(&row);
    } else {
      if (options.support_minimal) supports.insert(row.origins.begin(), row.origins.end());
      out.insert_canonical(drop_column(row.coeffs), row.rhs, row.origins);
    }
  }

  const auto& history = sys.history_->rows;
  auto is_extreme = [&](const std::vector<std::uint32_t>& support) {
    if (support.size() > out.eliminated_.size() + 1) return false;
    std::vector<RationalVector> sub;
    sub.reserve(support.size());
    for (std::uint32_t i : support) {
      RationalVector r;
      r.reserve(out.eliminated_.size());
      for (std::size_t col : out.eliminated_) r.push_back(history[i][col]);
      sub.push_back(std::move(r));
    }
    return rank(std::move(sub)) + 1 == support.size();
  };

  for (const Row* p : positive) {
    for (const Row* n : negative) {
      std::vector<std::vector<std::uint32_t>> kept;
      for (const auto& po : p->origins) {
        for (const auto& no : n->origins) {
          std::vector<std::uint32_t> support = merge_support(po, no);
          if (options.support_minimal) {
            if (supports.count(support) || !is_extreme(support)) continue;
            supports.insert(support);
          }
          kept.push_back(std::move(support));
          if (!options.support_minimal) break;
        }
        if (!options.support_minimal && !kept.empty()) break;
      }
      if (kept.empty()) continue;
      const Rational a = p->coeffs[j];
      const Rational c = -n->coeffs[j];
      RationalVector combined;
      combined.reserve(out.vars_.size());
      for (std::size_t k = 0; k < p->coeffs.size(); ++k) {
        if (k == j) continue;
        combined.push_back(p->coeffs[k] / a + n->coeffs[k] / c);
      }
      Rational s = leading_magnitude(combined);
      if (s != 1) {
        for (Rational& x : combined) x /= s;
      }
      Rhs rhs = RhsOps<Rhs>::combine(Rational(1) / (a * s), p->rhs, Rational(1) / (c * s), n->rhs);
      out.insert_canonical(std::move(combined), std::move(rhs), std::move(kept));
      if constexpr (std::is_same_v<Rhs, Rational>) {
        if (out.infeasible_) return out;
      }
      if (out.rows_.size() > options.max_rows) {
        throw CapExceeded("Fourier-Motzkin round exceeded " + std::to_string(options.max_rows) +
                          " rows while eliminating '" + v.name() + "'");
      }
    }
  }
  return out;
}

template <class Rhs>
InequalitySystem<Rhs> eliminate_all(const InequalitySystem<Rhs>& sys, std::span<const Var> order,
                                    const FmOptions& options) {
  InequalitySystem<Rhs> current = sys;
  for (const Var& v : order) current = eliminate_var(current, v, options);
  return current;
}

template class InequalitySystem<Rational>;
template class InequalitySystem<ChvatalTree>;
template LinearSystem eliminate_var(const LinearSystem&, const Var&, const FmOptions&);
template SymbolicSystem eliminate_var(const SymbolicSystem&, const Var&, const FmOptions&);
template LinearSystem eliminate_all(const LinearSystem&, std::span<const Var>, const FmOptions&);
template SymbolicSystem eliminate_all(const SymbolicSystem&, std::span<const Var>,
                                      const FmOptions&);

namespace {

LinearSystem rebuild(const std::vector<Var>& vars, const std::vector<const LinearSystem::Row*>& rows) {
  LinearSystem out(vars);
  for (const auto* row : rows) out.add_row(row->coeffs, row->rhs);
  return out;
}

}  // namespace

LinearSystem prune(const LinearSystem& sys, const PruneOptions& options) {
  std::vector<const LinearSystem::Row*> kept;
  for (const auto& row : sys.rows()) kept.push_back(&row);
  if (sys.infeasible() || !options.lp_redundancy) return rebuild(sys.vars(), kept);

  for (std::size_t i = 0; i < kept.size();) {
    std::vector<const LinearSystem::Row*> others = kept;
    others.erase(others.begin() + static_cast<std::ptrdiff_t>(i));
    if (others.empty()) {
      ++i;
      continue;
    }
    LpResult lp = lp_minimize(rebuild(sys.vars(), others), kept[i]->coeffs);
    if (lp.status == LpStatus::Infeasible) {
      LinearSystem empty(sys.vars());
      empty.add_row(RationalVector(sys.vars().size()), Rational(1));
      return empty;
    }
    if (lp.status == LpStatus::Optimal && lp.value >= kept[i]->rhs) {
      kept = std::move(others);
    } else {
      ++i;
    }
  }
  return rebuild(sys.vars(), kept);
}

std::optional<RationalVector> find_feasible_point(const LinearSystem& sys) {
  const auto& vars = sys.vars();
  std::vector<LinearSystem> stages;
  stages.reserve(vars.size() + 1);
  stages.push_back(sys);
  for (const Var& v : vars) {
    if (stages.back().infeasible()) return std::nullopt;
    stages.push_back(eliminate_var(stages.back(), v));
  }
  if (stages.back().infeasible()) return std::nullopt;

  RationalVector point(vars.size());
  for (std::size_t k = vars.size(); k-- > 0;) {
    // stages[k] ranges over vars[k..]; vars[k+1..] are already fixed.
    std::optional<Rational> lower, upper;
    for (const auto& row : stages[k].rows()) {
      const Rational& c = row.coeffs[0];
      if (c == 0) continue;
      Rational rest = row.rhs;
      for (std::size_t t = 1; t < row.coeffs.size(); ++t) rest -= row.coeffs[t] * point[k + t];
      Rational bound = rest / c;
      if (c > 0) {
        if (!lower || bound > *lower) lower = bound;
      } else {
        if (!upper || bound < *upper) upper = bound;
      }
    }
    Rational value(0);
    if (lower && *lower > value) value = *lower;
    if (upper && *upper < value) value = *upper;
    if (lower && upper && *lower > *upper) {
      throw InternalError("back-substitution found an empty interval");
    }
    point[k] = value;
  }
  return point;
}

std::optional<RationalVector> solve_linear_feasibility(const Matrix& a_eq,
                                                       const RationalVector& b_eq,
                                                       const Matrix& a_ineq,
                                                       const RationalVector& b_ineq) {
  const std::size_t n = std::max(a_eq.cols(), a_ineq.cols());
  if ((a_eq.rows() > 0 && a_eq.cols() != n) || (a_ineq.rows() > 0 && a_ineq.cols() != n) ||
      a_eq.rows() != b_eq.size() || a_ineq.rows() != b_ineq.size()) {
    throw DimensionMismatch("solve_linear_feasibility: inconsistent shapes");
  }
  // Reduced row echelon form of [a_eq | b_eq].
  std::vector<RationalVector> eq;
  for (std::size_t r = 0; r < a_eq.rows(); ++r) {
    RationalVector row = a_eq.row_vector(r);
    row.push_back(b_eq[r]);
    eq.push_back(std::move(row));
  }
  std::vector<std::size_t> pivots;
  std::size_t rank_count = 0;
  for (std::size_t c = 0; c < n && rank_count < eq.size(); ++c) {
    std::size_t p = rank_count;
    while (p < eq.size() && eq[p][c] == 0) ++p;
    if (p == eq.size()) continue;
    std::swap(eq[rank_count], eq[p]);
    Rational inv = Rational(1) / eq[rank_count][c];
    for (Rational& x : eq[rank_count]) x *= inv;
    for (std::size_t i = 0; i < eq.size(); ++i) {
      if (i == rank_count || eq[i][c] == 0) continue;
      Rational f = eq[i][c];
      for (std::size_t t = 0; t <= n; ++t) eq[i][t] -= f * eq[rank_count][t];
    }
    pivots.push_back(c);
    ++rank_count;
  }
  for (std::size_t i = rank_count; i < eq.size(); ++i) {
    if (eq[i][n] != 0) return std::nullopt;
  }
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < n; ++c) {
    if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) free_cols.push_back(c);
  }
  // x_pivot[r] = eq[r][n] - sum_f eq[r][f] x_f
  std::vector<Var> free_vars;
  for (std::size_t c : free_cols) free_vars.emplace_back("_v" + std::to_string(c));
  LinearSystem reduced(free_vars);
  for (std::size_t r = 0; r < a_ineq.rows(); ++r) {
    RationalVector coeffs(free_cols.size());
    Rational rhs = b_ineq[r];
    for (std::size_t f = 0; f < free_cols.size(); ++f) coeffs[f] = a_ineq(r, free_cols[f]);
    for (std::size_t pr = 0; pr < pivots.size(); ++pr) {
      const Rational& a = a_ineq(r, pivots[pr]);
      if (a == 0) continue;
      rhs -= a * eq[pr][n];
      for (std::size_t f = 0; f < free_cols.size(); ++f) coeffs[f] -= a * eq[pr][free_cols[f]];
    }
    reduced.add_row(std::move(coeffs), std::move(rhs));
  }
  auto free_point = find_feasible_point(reduced);
  if (!free_point) return std::nullopt;
  RationalVector x(n);
  for (std::size_t f = 0; f < free_cols.size(); ++f) x[free_cols[f]] = (*free_point)[f];
  for (std::size_t pr = 0; pr < pivots.size(); ++pr) {
    Rational value = eq[pr][n];
    for (std::size_t f = 0; f < free_cols.size(); ++f) value -= eq[pr][free_cols[f]] * x[free_cols[f]];
    x[pivots[pr]] = value;
  }
  return x;
}

LpResult lp_minimize(const LinearSystem& sys, const RationalVector& objective) {
  const auto& vars = sys.vars();
  if (objective.size() != vars.size()) throw DimensionMismatch("objective length mismatch");
  if (sys.infeasible()) return {LpStatus::Infeasible, Rational(0), {}};
  Var t = fresh_var("_t", std::set<Var>(vars.begin(), vars.end()));
  std::vector<Var> extended = vars;
  extended.push_back(t);
  LinearSystem lifted(extended);
  for (const auto& row : sys.rows()) {
    RationalVector coeffs = row.coeffs;
    coeffs.push_back(Rational(0));
    lifted.add_row(std::move(coeffs), row.rhs);
  }
  RationalVector up(objective.size() + 1), down(objective.size() + 1);
  for (std::size_t k = 0; k < objective.size(); ++k) {
    up[k] = -objective[k];
    down[k] = objective[k];
  }
  up.back() = 1;
  down.back() = -1;
  lifted.add_row(up, Rational(0));
  lifted.add_row(down, Rational(0));
  LinearSystem projected = eliminate_all(lifted, std::span<const Var>(vars));
  if (projected.infeasible()) return {LpStatus::Infeasible, Rational(0), {}};
  std::optional<Rational> lower;
  for (const auto& row : projected.rows()) {
    if (row.coeffs[0] > 0 && (!lower || row.rhs > *lower)) lower = row.rhs;
  }
  if (!lower) return {LpStatus::Unbounded, Rational(0), {}};
  LinearSystem at_optimum = sys;
  RationalVector neg(objective.size());
  for (std::size_t k = 0; k < objective.size(); ++k) neg[k] = -objective[k];
  at_optimum.add_row(objective, *lower);
  at_optimum.add_row(neg, -*lower);
  auto point = find_feasible_point(at_optimum);
  if (!point) throw InternalError("LP optimum has no attaining point");
  return {LpStatus::Optimal, *lower, std::move(*point)};
}

std::string format_row(const std::vector<Var>& vars, const RationalVector& coeffs) {
  AffineForm form;
  for (std::size_t j = 0; j < vars.size(); ++j) form.add_term(vars[j], coeffs[j]);
  return format_affine(form);
}

}  // namespace micrep
