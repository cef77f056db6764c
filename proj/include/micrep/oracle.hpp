#pragma once

#include "micrep/lift.hpp"
#include "micrep/system.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace micrep {

/// Grid values lower, lower + 1/denominator, ... up to upper (multiples of
/// 1/denominator only).
struct BoxRange {
  Var var;
  Rational lower;
  Rational upper;
  unsigned long denominator = 1;

  std::vector<Rational> values() const;
};

/// A finite grid: one range per variable, ordered as added.
class Box {
 public:
  Box() = default;

  /// Throws PreconditionViolation if lower > upper, the denominator is zero,
  /// or the variable is already ranged.
  Box& add(const Var& v, Rational lower, Rational upper, unsigned long denominator = 1);

  static Box uniform(const std::vector<Var>& vars, const Rational& lower, const Rational& upper,
                     unsigned long denominator = 1);
  /// Integer variables of `sys` get denominator 1, continuous ones `denominator`.
  static Box for_system(const MicSystem& sys, const Rational& lower, const Rational& upper,
                        unsigned long denominator);

  const std::vector<BoxRange>& ranges() const noexcept { return ranges_; }
  const BoxRange* find(const Var& v) const;
  bool empty_grid() const;
  Integer point_count() const;
  void for_each_point(const std::function<void(const Assignment&)>& visit) const;
  std::string describe() const;

 private:
  std::vector<BoxRange> ranges_;
};

/// Some grid point of `ranges` with rows . v >= rhs (column j of the rows
/// belongs to ranges[j]), searched depth first with interval pruning.
std::optional<RationalVector> grid_search(const std::vector<RationalVector>& rows,
                                          const RationalVector& rhs,
                                          const std::vector<BoxRange>& ranges);

/// A grid point of the MILP inside `box`, which must range every target,
/// continuous auxiliary and integer auxiliary variable.
std::optional<Assignment> milp_feasible(const MilpSystem& sys, const Box& box);

/// Some z in [-bound, bound]^q, integral, with C z >= beta.
std::optional<RationalVector> integer_feasible(const Matrix& c, const RationalVector& beta,
                                               const Integer& bound);

/// Throws PreconditionViolation when an integer variable has a fractional
/// value and UnboundVariable for a missing one.
bool mic_member(const MicSystem& sys, const Assignment& point);

/// Membership in the union of the branches.
bool dmic_member(const std::vector<MicSystem>& branches, const Assignment& point);

struct Disagreement {
  Assignment point;
  bool lhs;
  bool rhs;
};

struct ProjectionReport {
  std::string box;
  std::size_t points_checked = 0;
  std::vector<Disagreement> disagreements;

  bool agrees() const noexcept { return disagreements.empty(); }
};

/// lhs over V against proj_V of a MILP whose targets are V; the auxiliaries
/// are searched over `witness`.
ProjectionReport check_projection_equality(const MicSystem& lhs, const MilpSystem& rhs,
                                           const Box& box, const Box& witness);
/// lhs over V against proj_V of a MIC system over V and W; W over `witness`.
ProjectionReport check_projection_equality(const MicSystem& lhs, const MicSystem& rhs,
                                           const Box& box, const Box& witness);
/// lhs against its lift: auxiliary ranges come from interval evaluation of
/// the recorded definitions over the box.
ProjectionReport check_projection_equality(const MicSystem& lhs, const LiftResult& rhs,
                                           const Box& box);

/// Auxiliary ranges implied by the definitions when the original
/// variables range over `box`; appended to a copy of `box`.
Box derived_aux_box(const std::vector<AuxDefinition>& aux, const Box& box);

std::string format_point(const Assignment& point);
/// One `point ; lhs ; rhs` line per disagreement, sorted.
std::string format_report(const ProjectionReport& report);

}  // namespace micrep
