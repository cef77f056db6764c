#pragma once

#include "micrep/closure.hpp"
#include "micrep/lift.hpp"
#include "micrep/system.hpp"

#include <span>
#include <vector>

namespace micrep {

/// proj_x {(x, y, z) : A x + B y + C z >= d, z integral} as affine Chvatal
/// inequalities g_i(x) <= 0. y is eliminated by Fourier-Motzkin, then the
/// feasibility functions of the remaining integer block are composed with
/// x -> d' - A' x. Integer targets stay integer variables of the result.
MicSystem project_to_mic(const MilpSystem& sys, const ClosureOptions& options = {});

/// Projects `var` out of a MIC system. Inequalities not involving `var` are
/// kept; the others are lifted to a MILP in which `var` and the lift's
/// auxiliaries are eliminated.
MicSystem eliminate_variable(const MicSystem& sys, const Var& var,
                             const ClosureOptions& options = {});

MicSystem eliminate_variables(const MicSystem& sys, std::span<const Var> order,
                              const ClosureOptions& options = {});

/// The target `var` of `sys` becomes a continuous or integer auxiliary.
MilpSystem demote_target(const MilpSystem& sys, const Var& var);

/// {b : b = A x for some integral x >= 0} through the integer feasibility of
/// (A; -A; I) x >= (b; -b; 0). Functions are over b1..bm and homogeneous;
/// the validation grid is integral.
FeasibilityFunctions monoid_representation(const Matrix& a, const ClosureOptions& options = {});

}  // namespace micrep
