#pragma once

#include "micrep/hilbert.hpp"
#include "micrep/matrix.hpp"

#include <cstddef>
#include <vector>

namespace micrep {

enum class SubsetMode {
  /// Row subsets whose rows are linearly independent. The dual optimum of
  /// an LP can always be taken basic, i.e. supported on such a subset, so
  /// these cones already cover every objective.
  Independent,
  /// Every nonempty subset of the nonzero rows.
  All,
};

struct TdiOptions {
  SubsetMode mode = SubsetMode::Independent;
  /// Upper bound on the row count in All mode (2^m subsets are visited).
  std::size_t max_subset_rows = 12;
  std::size_t max_subsets = 200'000;
  bool minimal_hilbert = true;
  HilbertOptions hilbert;
};

/// M = U A with U >= 0 and M integral, and {x : A x >= b} = {x : M x >= U b}
/// for every b, such that M x >= U b is totally dual integral.
struct TdiAggregator {
  Matrix U;
  Matrix M;
  /// Row subset of A each row of M was generated from (sorted indices).
  std::vector<std::vector<std::size_t>> subset_index;
};

/// Subsets are visited in increasing bitmask order and the generating
/// vectors of each in lexicographic order. A vector already produced from a
/// subset contained in the current one is skipped. A zero row i of A yields
/// the zero row of M with u = e_i.
TdiAggregator tdi_aggregator(const Matrix& a, const TdiOptions& options = {});

}  // namespace micrep
