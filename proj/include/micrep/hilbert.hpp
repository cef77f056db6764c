#pragma once

#include "micrep/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace micrep {

/// Nonnegative rational combinations of integer generators.
struct Cone {
  std::vector<RationalVector> generators;

  std::size_t dimension() const;
  /// Throws PreconditionViolation for ragged, zero or non-integer generators.
  void validate() const;
};

struct GeneratingSet {
  /// Integer vectors in lexicographic order.
  std::vector<RationalVector> vectors;
  /// lambdas[k] has 0 <= lambda <= 1 and vectors[k] = sum_j lambdas[k][j] g_j.
  std::vector<RationalVector> lambdas;
};

struct HilbertOptions {
  /// Keep only irreducible vectors. Ignored for cones that are not pointed.
  bool minimalize = false;
  std::size_t max_generators = 12;
  /// CapExceeded when the zonotope's bounding box holds more integer points.
  std::size_t max_points = 2'000'000;
};

/// Nonzero integer points of {sum lambda_j g_j : 0 <= lambda <= 1}. Every
/// integer point of the cone is a nonnegative integer combination of them.
GeneratingSet hilbert_generating_set(const Cone& cone, const HilbertOptions& options = {});

/// No nonzero x with x and -x in the cone.
bool is_pointed(const Cone& cone);

bool in_cone(const Cone& cone, const RationalVector& point);

/// Nonnegative integer multipliers mu with sum mu_k vectors[k] = target, or
/// nullopt. Partial sums are searched inside the box of radius
/// |target|_inf + n * max_k |vectors[k]|_inf, which is always enough for
/// some ordering of the summands (Steinitz).
std::optional<std::vector<Integer>> integer_combination(const std::vector<RationalVector>& vectors,
                                                        const RationalVector& target);

/// Every target reachable by nonnegative integer combinations, answered by
/// one breadth-first search over the union of the Steinitz boxes.
std::vector<bool> integer_combinations_exist(const std::vector<RationalVector>& vectors,
                                             const std::vector<RationalVector>& targets);

}  // namespace micrep
