#include "micrep/tree.hpp"

#include "micrep/error.hpp"

#include <algorithm>
#include <unordered_map>

namespace micrep {

struct ChvatalTree::Impl {
  TreeNode node;
  std::size_t cc;
  std::size_t depth;
};

ChvatalTree ChvatalTree::make(TreeNode node) {
  std::size_t cc = 0;
  std::size_t d = 0;
  std::visit(
      [&](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, CeilNode>) {
          cc = n.child.ceiling_count() + 1;
          d = n.child.depth() + 1;
        } else if constexpr (std::is_same_v<N, ScaleNode>) {
          cc = n.child.ceiling_count();
          d = n.child.depth() + 1;
        } else if constexpr (std::is_same_v<N, SumNode>) {
          cc = n.left.ceiling_count() + n.right.ceiling_count();
          d = std::max(n.left.depth(), n.right.depth()) + 1;
        }
      },
      node);
  return ChvatalTree(std::make_shared<const Impl>(Impl{std::move(node), cc, d}));
}

ChvatalTree::ChvatalTree() : ChvatalTree(leaf(AffineForm())) {}

ChvatalTree ChvatalTree::leaf(AffineForm form) { return make(LeafNode{std::move(form)}); }

ChvatalTree ChvatalTree::ceil(ChvatalTree child) { return make(CeilNode{std::move(child)}); }

ChvatalTree ChvatalTree::scale(Rational weight, ChvatalTree child) {
  if (weight < 0) {
    throw PreconditionViolation("scale weight must be nonnegative, got " + to_string(weight));
  }
  return make(ScaleNode{std::move(weight), std::move(child)});
}

ChvatalTree ChvatalTree::sum(Rational left_weight, ChvatalTree left, Rational right_weight,
                             ChvatalTree right) {
  if (left_weight < 0 || right_weight < 0) {
    throw PreconditionViolation("sum weights must be nonnegative");
  }
  return make(SumNode{std::move(left_weight), std::move(left), std::move(right_weight),
                      std::move(right)});
}

const TreeNode& ChvatalTree::node() const { return impl_->node; }
std::size_t ChvatalTree::ceiling_count() const noexcept { return impl_->cc; }
std::size_t ChvatalTree::depth() const noexcept { return impl_->depth; }

bool operator==(const ChvatalTree& a, const ChvatalTree& b) {
  if (a.impl_ == b.impl_) return true;
  if (a.impl_->cc != b.impl_->cc || a.impl_->depth != b.impl_->depth) return false;
  const TreeNode& na = a.node();
  const TreeNode& nb = b.node();
  if (na.index() != nb.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using N = std::decay_t<decltype(x)>;
        const N& y = std::get<N>(nb);
        if constexpr (std::is_same_v<N, LeafNode>) {
          return x.form == y.form;
        } else if constexpr (std::is_same_v<N, CeilNode>) {
          return x.child == y.child;
        } else if constexpr (std::is_same_v<N, ScaleNode>) {
          return x.weight == y.weight && x.child == y.child;
        } else {
          return x.left_weight == y.left_weight && x.right_weight == y.right_weight &&
                 x.left == y.left && x.right == y.right;
        }
      },
      na);
}

namespace {

class Evaluator {
 public:
  explicit Evaluator(const Assignment& point) : point_(point) {}

  const Rational& operator()(const ChvatalTree& tree) {
    auto it = memo_.find(tree.id());
    if (it != memo_.end()) return it->second;
    Rational value = std::visit(
        [&](const auto& n) -> Rational {
          using N = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<N, LeafNode>) {
            return n.form.evaluate(point_);
          } else if constexpr (std::is_same_v<N, CeilNode>) {
            return micrep::ceil((*this)(n.child));
          } else if constexpr (std::is_same_v<N, ScaleNode>) {
            return n.weight * (*this)(n.child);
          } else {
            Rational left = n.left_weight * (*this)(n.left);
            Rational right = n.right_weight * (*this)(n.right);
            return left + right;
          }
        },
        tree.node());
    return memo_.emplace(tree.id(), std::move(value)).first->second;
  }

 private:
  const Assignment& point_;
  std::unordered_map<const void*, Rational> memo_;
};

}  // namespace

Rational evaluate(const ChvatalTree& tree, const Assignment& point) {
  Evaluator eval(point);
  return eval(tree);
}

std::vector<Rational> evaluate_many(std::span<const ChvatalTree> trees,
                                    const Assignment& point) {
  Evaluator eval(point);
  std::vector<Rational> values;
  values.reserve(trees.size());
  for (const ChvatalTree& t : trees) values.push_back(eval(t));
  return values;
}

std::optional<std::size_t> first_positive(std::span<const ChvatalTree> trees,
                                          const Assignment& point) {
  Evaluator eval(point);
  for (std::size_t i = 0; i < trees.size(); ++i) {
    if (eval(trees[i]) > 0) return i;
  }
  return std::nullopt;
}

Interval interval_evaluate(const ChvatalTree& tree, const std::map<Var, Interval>& box) {
  return std::visit(
      [&](const auto& n) -> Interval {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, LeafNode>) {
          Interval out{n.form.constant(), n.form.constant()};
          for (const auto& [v, c] : n.form.coefficients()) {
            auto it = box.find(v);
            if (it == box.end()) throw UnboundVariable(v.name());
            const Interval& r = it->second;
            if (c > 0) {
              out.lower += c * r.lower;
              out.upper += c * r.upper;
            } else {
              out.lower += c * r.upper;
              out.upper += c * r.lower;
            }
          }
          return out;
        } else if constexpr (std::is_same_v<N, CeilNode>) {
          Interval in = interval_evaluate(n.child, box);
          return {micrep::ceil(in.lower), micrep::ceil(in.upper)};
        } else if constexpr (std::is_same_v<N, ScaleNode>) {
          Interval in = interval_evaluate(n.child, box);
          return {n.weight * in.lower, n.weight * in.upper};
        } else {
          Interval l = interval_evaluate(n.left, box);
          Interval r = interval_evaluate(n.right, box);
          return {n.left_weight * l.lower + n.right_weight * r.lower,
                  n.left_weight * l.upper + n.right_weight * r.upper};
        }
      },
      tree.node());
}

Decomposition decompose(const ChvatalTree& tree) {
  return std::visit(
      [&](const auto& n) -> Decomposition {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, LeafNode>) {
          return AffineCase{n.form};
        } else if constexpr (std::is_same_v<N, CeilNode>) {
          return CeilingCase{Rational(1), n.child, ChvatalTree()};
        } else if constexpr (std::is_same_v<N, ScaleNode>) {
          Decomposition inner = decompose(n.child);
          if (auto* affine = std::get_if<AffineCase>(&inner)) {
            return AffineCase{n.weight * affine->form};
          }
          auto& c = std::get<CeilingCase>(inner);
          if (n.weight == 0) {
            // The function is identically zero but still carries ceilings.
            return CeilingCase{Rational(1), ChvatalTree(), ChvatalTree()};
          }
          return CeilingCase{n.weight * c.gamma, c.inner,
                             ChvatalTree::scale(n.weight, c.rest)};
        } else {
          Decomposition left = decompose(n.left);
          Decomposition right = decompose(n.right);
          auto* la = std::get_if<AffineCase>(&left);
          auto* ra = std::get_if<AffineCase>(&right);
          if (la && ra) {
            return AffineCase{n.left_weight * la->form + n.right_weight * ra->form};
          }
          if (!la && n.left_weight > 0) {
            auto& c = std::get<CeilingCase>(left);
            return CeilingCase{n.left_weight * c.gamma, c.inner,
                               ChvatalTree::sum(n.left_weight, c.rest, n.right_weight, n.right)};
          }
          if (!ra && n.right_weight > 0) {
            auto& c = std::get<CeilingCase>(right);
            return CeilingCase{n.right_weight * c.gamma, c.inner,
                               ChvatalTree::sum(n.left_weight, n.left, n.right_weight, c.rest)};
          }
          // Every child with ceilings has weight zero.
          AffineForm rest;
          if (la) rest += n.left_weight * la->form;
          if (ra) rest += n.right_weight * ra->form;
          return CeilingCase{Rational(1), ChvatalTree(), ChvatalTree::leaf(std::move(rest))};
        }
      },
      tree.node());
}

std::optional<AffineForm> as_affine(const ChvatalTree& tree) {
  if (tree.ceiling_count() != 0) return std::nullopt;
  return std::get<AffineCase>(decompose(tree)).form;
}

ChvatalTree compose_affine(const ChvatalTree& tree, const AffineMap& map) {
  std::unordered_map<const void*, ChvatalTree> memo;
  auto go = [&](auto& self, const ChvatalTree& t) -> ChvatalTree {
    auto it = memo.find(t.id());
    if (it != memo.end()) return it->second;
    ChvatalTree out = std::visit(
        [&](const auto& n) -> ChvatalTree {
          using N = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<N, LeafNode>) {
            return ChvatalTree::leaf(n.form.substitute(map));
          } else if constexpr (std::is_same_v<N, CeilNode>) {
            return ChvatalTree::ceil(self(self, n.child));
          } else if constexpr (std::is_same_v<N, ScaleNode>) {
            return ChvatalTree::scale(n.weight, self(self, n.child));
          } else {
            return ChvatalTree::sum(n.left_weight, self(self, n.left), n.right_weight,
                                    self(self, n.right));
          }
        },
        t.node());
    memo.emplace(t.id(), out);
    return out;
  };
  return go(go, tree);
}

namespace {

template <class Fn>
void for_each_leaf(const ChvatalTree& tree, Fn&& fn) {
  std::unordered_map<const void*, bool> seen;
  auto go = [&](auto& self, const ChvatalTree& t) -> void {
    if (!seen.emplace(t.id(), true).second) return;
    std::visit(
        [&](const auto& n) {
          using N = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<N, LeafNode>) {
            fn(n.form);
          } else if constexpr (std::is_same_v<N, SumNode>) {
            self(self, n.left);
            self(self, n.right);
          } else {
            self(self, n.child);
          }
        },
        t.node());
  };
  go(go, tree);
}

}  // namespace

bool is_homogeneous(const ChvatalTree& tree) {
  bool homogeneous = true;
  for_each_leaf(tree, [&](const AffineForm& f) { homogeneous = homogeneous && f.is_homogeneous(); });
  return homogeneous;
}

std::set<Var> variables(const ChvatalTree& tree) {
  std::set<Var> out;
  for_each_leaf(tree, [&](const AffineForm& f) { f.collect_variables(out); });
  return out;
}

bool depends_on(const ChvatalTree& tree, const Var& v) {
  bool found = false;
  for_each_leaf(tree, [&](const AffineForm& f) { found = found || f.depends_on(v); });
  return found;
}

}  // namespace micrep
