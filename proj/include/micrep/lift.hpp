#pragma once

#include "micrep/system.hpp"

#include <vector>

namespace micrep {

/// Bookkeeping for one integer variable traded for a ceiling: the new
/// variable satisfies lower(v) <= aux <= (rhs - rest(v)) / gamma.
struct AuxDefinition {
  Var aux;
  ChvatalTree lower;
  ChvatalTree rest;
  Rational gamma;
  Rational rhs;
};

struct ReductionStep {
  MicSystem system;
  AuxDefinition aux;
  std::size_t inequality_index;
};

/// Replaces the first inequality with positive ceiling count,
/// gamma*ceil(g1) + g2 <= b, by g1 - z <= 0 and g2 + gamma*z <= b with a new
/// integer variable z. Throws PreconditionViolation when the system has no
/// ceiling.
ReductionStep reduce_one_ceiling_step(const MicSystem& sys, const Var& fresh);
MicSystem reduce_one_ceiling(const MicSystem& sys);

struct LiftResult {
  MilpSystem milp;
  /// In creation order; each definition only refers to earlier variables.
  std::vector<AuxDefinition> aux;
};

/// Removes all ceilings, then reads the affine inequalities off as
/// A x + C z >= d. Targets are the system's variables (continuous first)
/// with their kinds; the added variables are integer auxiliaries.
LiftResult lift_to_milp(const MicSystem& sys);

/// Like lift_to_milp, but every occurrence of a structurally equal ceiling
/// term ceil(g) shares one integer variable z with g - z <= 0. Exact because
/// a Chvatal tree is nondecreasing in each ceiling term, so z = ceil(g) is
/// always the best choice. Ceilings of constants are replaced by their value.
/// The definitions have gamma = 0 (z is bounded by ceil(g) alone).
LiftResult lift_to_milp_shared(const MicSystem& sys);

/// Reads an all-affine MIC system off as a MILP with no auxiliaries.
/// Throws PreconditionViolation if a ceiling remains.
MilpSystem read_affine_milp(const MicSystem& sys, const std::vector<Var>& aux_integer);

}  // namespace micrep
