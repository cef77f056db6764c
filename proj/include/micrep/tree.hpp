#pragma once

#include "micrep/affine.hpp"
#include "micrep/rational.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace micrep {

struct LeafNode;
struct CeilNode;
struct ScaleNode;
struct SumNode;
using TreeNode = std::variant<LeafNode, CeilNode, ScaleNode, SumNode>;

/// Binary-tree representation of an affine Chvatal function.
///
/// Leaves are affine forms; a unary edge is either a ceiling or a
/// nonnegative scalar; a binary node is a nonnegative weighted sum of its
/// two children. Trees are immutable and share subtrees, so copies are cheap
/// and a tree may be used from several threads at once. Equality is
/// structural; nothing is simplified on construction.
class ChvatalTree {
 public:
  /// The zero function, as a leaf.
  ChvatalTree();

  static ChvatalTree leaf(AffineForm form);
  static ChvatalTree ceil(ChvatalTree child);
  /// Throws PreconditionViolation when `weight` < 0.
  static ChvatalTree scale(Rational weight, ChvatalTree child);
  /// Throws PreconditionViolation when a weight is negative.
  static ChvatalTree sum(Rational left_weight, ChvatalTree left, Rational right_weight,
                         ChvatalTree right);

  const TreeNode& node() const;

  /// Number of ceiling edges.
  std::size_t ceiling_count() const noexcept;
  /// Longest root-to-node path length; a single leaf has depth 0.
  std::size_t depth() const noexcept;

  /// Identity of the shared node, for memoization.
  const void* id() const noexcept { return impl_.get(); }

  friend bool operator==(const ChvatalTree& a, const ChvatalTree& b);

 private:
  struct Impl;
  explicit ChvatalTree(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  static ChvatalTree make(TreeNode node);

  std::shared_ptr<const Impl> impl_;
};

struct LeafNode {
  AffineForm form;
};
struct CeilNode {
  ChvatalTree child;
};
struct ScaleNode {
  Rational weight;
  ChvatalTree child;
};
struct SumNode {
  Rational left_weight;
  ChvatalTree left;
  Rational right_weight;
  ChvatalTree right;
};

inline std::size_t ceiling_count(const ChvatalTree& tree) { return tree.ceiling_count(); }
inline std::size_t depth(const ChvatalTree& tree) { return tree.depth(); }

/// Exact value at `point`. Throws UnboundVariable naming a missing variable.
Rational evaluate(const ChvatalTree& tree, const Assignment& point);

/// Values of several trees at one point; shared subtrees are evaluated once.
std::vector<Rational> evaluate_many(std::span<const ChvatalTree> trees,
                                    const Assignment& point);

/// Index of the first tree with a positive value at `point`, evaluating no
/// further; nullopt when all are <= 0.
std::optional<std::size_t> first_positive(std::span<const ChvatalTree> trees,
                                          const Assignment& point);

/// Closed interval with rational ends.
struct Interval {
  Rational lower;
  Rational upper;
};

/// Range of the tree over a box given by one interval per variable.
Interval interval_evaluate(const ChvatalTree& tree, const std::map<Var, Interval>& box);

/// f = affine form (ceiling count zero).
struct AffineCase {
  AffineForm form;
};
/// f = gamma * ceil(inner) + rest, with gamma > 0 and
/// cc(inner) + cc(rest) + 1 <= cc(f).
struct CeilingCase {
  Rational gamma;
  ChvatalTree inner;
  ChvatalTree rest;
};
using Decomposition = std::variant<AffineCase, CeilingCase>;

/// Splits off one ceiling following the structural induction on the tree:
/// a root ceiling is taken as is, scalars are pushed into gamma and the
/// remainder, and at a sum node the left child is preferred.
Decomposition decompose(const ChvatalTree& tree);

/// The affine form of a ceiling-free tree; nullopt when cc > 0.
std::optional<AffineForm> as_affine(const ChvatalTree& tree);

/// Substitutes T(x) into every leaf. Ceiling count and shape are preserved.
/// Throws DimensionMismatch when a leaf variable has no image.
ChvatalTree compose_affine(const ChvatalTree& tree, const AffineMap& map);

/// True when every leaf has a zero constant term.
bool is_homogeneous(const ChvatalTree& tree);

std::set<Var> variables(const ChvatalTree& tree);
bool depends_on(const ChvatalTree& tree, const Var& v);

/// Text form, e.g. "(sum 1 (ceil (aff 1*x1)) 1 (aff 1*x2))".
std::string format_tree(const ChvatalTree& tree);
std::string format_affine(const AffineForm& form);

/// Inverse of format_tree. Throws ParseError with the byte offset.
ChvatalTree parse_tree(std::string_view text);

}  // namespace micrep
