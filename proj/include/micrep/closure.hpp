#pragma once

#include "micrep/fm.hpp"
#include "micrep/system.hpp"
#include "micrep/tdi.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace micrep {

/// Row k is sum_i U[k][i] * rhs[i]. The affine leaves are merged into one
/// leaf; the remaining trees are combined with Sum/Scale nodes.
std::vector<ChvatalTree> aggregate_rhs(const Matrix& u, const std::vector<ChvatalTree>& rhs);

/// ceil(rhs[k]) for each row of the integral matrix m.
/// Throws PreconditionViolation when m is not integral and DimensionMismatch
/// when the sizes differ.
std::vector<ChvatalTree> closure_step(const Matrix& m, const std::vector<ChvatalTree>& rhs);

/// State after some closure rounds of {z integral : C z >= beta}.
struct SymbolicClosure {
  Matrix rows;
  std::vector<ChvatalTree> rhs;
  /// Conditions 0 >= t split off from zero rows.
  std::vector<ChvatalTree> conditions;
};

SymbolicClosure closure_rounds(const Matrix& c, const std::vector<ChvatalTree>& rhs,
                               std::size_t rounds, const TdiOptions& tdi = {});

/// Validation grid for auto mode, per parameter.
struct ValidationGrid {
  Rational lower{-3};
  Rational upper{3};
  unsigned long denominator = 2;
  /// Larger grids first drop to denominator 1, then shrink the radius.
  std::size_t max_points = 20'000;
};

struct ClosureOptions {
  /// Fixed round count; nullopt selects auto mode (0, 1, 2, ... validated).
  std::optional<std::size_t> rounds;
  std::size_t max_auto_rounds = 3;
  TdiOptions tdi;
  FmOptions fm;
  ValidationGrid grid;
  /// Integer witnesses are searched in [-witness_bound, witness_bound]^q.
  Integer witness_bound{50};
};

/// beta = map(p) for parameters p; the validation grid runs over p.
struct RhsMap {
  std::vector<Var> parameters;
  std::vector<VarKind> kinds;
  std::vector<AffineForm> beta;
};

struct FeasibilityFunctions {
  /// Trees over b1..bm; C z >= b has an integral solution iff all are <= 0.
  std::vector<ChvatalTree> functions;
  std::size_t rounds_used = 0;
  std::vector<Var> parameters;
  bool validated = false;
  /// Grid and witness bound the auto mode certified against.
  std::string validation;
};

/// b1, ..., bm.
std::vector<Var> rhs_variables(std::size_t m);

FeasibilityFunctions feasibility_functions(const Matrix& c, const ClosureOptions& options = {});
FeasibilityFunctions feasibility_functions(const Matrix& c, const RhsMap& map,
                                           const ClosureOptions& options = {});

}  // namespace micrep
