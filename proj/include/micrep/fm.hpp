#pragma once

#include "micrep/affine.hpp"
#include "micrep/matrix.hpp"
#include "micrep/tree.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace micrep {

struct FmOptions {
  /// Drop combinations whose multiplier vector is not an extreme ray of the
  /// elimination cone (rank test on the originating rows). Such rows are
  /// nonnegative combinations of kept rows for every right-hand side.
  bool support_minimal = true;
  /// CapExceeded when a round would produce more rows than this.
  std::size_t max_rows = 250000;
};

template <class Rhs>
class InequalitySystem;

/// Projects `v` out: rows with a zero coefficient pass through, and each
/// (positive, negative) pair is combined with nonnegative multipliers that
/// cancel v. Output order: pass-through rows, then pairs in lexicographic
/// order of their parent indices.
template <class Rhs>
InequalitySystem<Rhs> eliminate_var(const InequalitySystem<Rhs>& sys, const Var& v,
                                    const FmOptions& options = {});

/// One row coeffs . vars >= rhs.
template <class Rhs>
struct InequalityRow {
  RationalVector coeffs;
  Rhs rhs;
  /// Sorted index sets of input rows this row is derived from. A row that
  /// absorbed duplicates or dominated rows keeps all of their sets.
  std::vector<std::vector<std::uint32_t>> origins;
};

/// A system of >= inequalities over named columns, with a right-hand side
/// that is either a number or a Chvatal tree in parameter variables.
///
/// Rows are stored with their first nonzero coefficient scaled to +-1.
/// Numeric rows with identical coefficients keep only the largest rhs;
/// symbolic rows are deduplicated syntactically. A numeric row 0 >= c is
/// dropped when c <= 0 and marks the system infeasible when c > 0.
template <class Rhs>
class InequalitySystem {
 public:
  using Row = InequalityRow<Rhs>;

  InequalitySystem() = default;
  explicit InequalitySystem(std::vector<Var> vars);

  const std::vector<Var>& vars() const noexcept { return vars_; }
  const std::vector<Row>& rows() const noexcept { return rows_; }
  std::size_t size() const noexcept { return rows_.size(); }
  bool infeasible() const noexcept { return infeasible_; }
  /// Throws DimensionMismatch for an unknown variable.
  std::size_t index_of(const Var& v) const;

  void add_row(RationalVector coeffs, Rhs rhs);

  /// Rows whose coefficients are all zero, i.e. conditions 0 >= rhs.
  std::vector<Rhs> conditions() const;

  friend InequalitySystem eliminate_var<>(const InequalitySystem& sys, const Var& v,
                                          const FmOptions& options);

 private:
  struct History {
    std::vector<RationalVector> rows;  // full coefficient rows over base_vars
  };

  void insert_canonical(RationalVector coeffs, Rhs rhs,
                        std::vector<std::vector<std::uint32_t>> origins);
  std::uint32_t record_base_row(const RationalVector& coeffs);

  std::vector<Var> vars_;
  std::vector<Row> rows_;
  bool infeasible_ = false;
  std::vector<Var> base_vars_;
  std::shared_ptr<History> history_ = std::make_shared<History>();
  std::vector<std::size_t> eliminated_;  // indices into base_vars_
};

using LinearSystem = InequalitySystem<Rational>;
using SymbolicSystem = InequalitySystem<ChvatalTree>;

template <class Rhs>
InequalitySystem<Rhs> eliminate_all(const InequalitySystem<Rhs>& sys, std::span<const Var> order,
                                    const FmOptions& options = {});

struct PruneOptions {
  /// Also remove rows implied by the remaining rows (exact LP check).
  bool lp_redundancy = false;
};

/// Removes scaled duplicates, single-row dominated rows and optionally
/// LP-redundant rows. The feasible region is unchanged.
LinearSystem prune(const LinearSystem& sys, const PruneOptions& options = {});

/// Some point of the system, in column order; nullopt when infeasible.
std::optional<RationalVector> find_feasible_point(const LinearSystem& sys);

/// Some x with Aeq x = beq and Aineq x >= bineq, nullopt when none exists.
/// When there is freedom, back-substitution prefers values near zero.
std::optional<RationalVector> solve_linear_feasibility(const Matrix& a_eq,
                                                       const RationalVector& b_eq,
                                                       const Matrix& a_ineq,
                                                       const RationalVector& b_ineq);

enum class LpStatus { Optimal, Unbounded, Infeasible };

struct LpResult {
  LpStatus status;
  Rational value;
  RationalVector argmin;
};

/// min { objective . x : x in sys }.
LpResult lp_minimize(const LinearSystem& sys, const RationalVector& objective);

std::string format_row(const std::vector<Var>& vars, const RationalVector& coeffs);

}  // namespace micrep
