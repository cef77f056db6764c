#include "support.hpp"

#include "micrep/error.hpp"
#include "micrep/tree.hpp"

#include <gtest/gtest.h>

namespace micrep {
namespace {

using testing::q;

ChvatalTree leaf(const AffineForm& f) { return ChvatalTree::leaf(f); }
ChvatalTree x1_leaf(const Rational& c = 1) { return leaf(AffineForm::variable(Var("x1"), c)); }

Rational reassemble(const Decomposition& d, const Assignment& p) {
  if (const auto* a = std::get_if<AffineCase>(&d)) return a->form.evaluate(p);
  const auto& c = std::get<CeilingCase>(d);
  return c.gamma * ceil(evaluate(c.inner, p)) + evaluate(c.rest, p);
}

TEST(Rational, ParseAndFormat) {
  EXPECT_EQ(q("-6/4"), Rational(-3, 2));
  EXPECT_EQ(to_string(q("-6/4")), "-3/2");
  EXPECT_EQ(to_string(q("4/2")), "2");
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("0.5"), ParseError);
  EXPECT_THROW(parse_rational(""), ParseError);
  EXPECT_THROW(parse_rational("+1"), ParseError);
}

TEST(Rational, CeilFloor) {
  EXPECT_EQ(ceil(q("1/2")), 1);
  EXPECT_EQ(ceil(q("-1/2")), 0);
  EXPECT_EQ(ceil(q("3")), 3);
  EXPECT_EQ(floor(q("-1/2")), -1);
  EXPECT_TRUE(is_integer(q("4/2")));
  EXPECT_FALSE(is_integer(q("1/3")));
}

TEST(Rational, Scaling) {
  RationalVector v{q("-1"), q("1/2"), q("-1/10")};
  EXPECT_EQ(common_denominator(v), 10);
  EXPECT_EQ(clear_denominators(v), (RationalVector{-10, 5, -1}));
  EXPECT_EQ(clear_denominators({q("2"), q("4")}), (RationalVector{2, 4}));
  EXPECT_EQ(primitive_integer_vector({q("2"), q("4")}), (RationalVector{1, 2}));
}

TEST(Affine, ZeroCoefficientsAreNotStored) {
  AffineForm f = AffineForm::variable(Var("x"), 2);
  f.add_term(Var("x"), -2);
  EXPECT_TRUE(f.is_constant());
  EXPECT_TRUE(f.coefficients().empty());
}

TEST(Affine, EvaluateUnbound) {
  AffineForm f = AffineForm::variable(Var("x"), 2);
  try {
    f.evaluate({});
    FAIL();
  } catch (const UnboundVariable& e) {
    EXPECT_EQ(e.name(), "x");
  }
}

TEST(Eval, AffineLeaf) {
  AffineForm f = AffineForm::variable(Var("x1"));
  f.add_constant(q("1/2"));
  EXPECT_EQ(evaluate(leaf(f), {{Var("x1"), q("1/4")}}), q("3/4"));
}

TEST(Eval, CeilOfHalf) {
  EXPECT_EQ(evaluate(ChvatalTree::ceil(x1_leaf(q("1/2"))), {{Var("x1"), 1}}), 1);
}

TEST(Eval, SeparatingFunction) {
  ChvatalTree g = testing::separating_tree();
  EXPECT_EQ(evaluate(g, testing::b_point({"0", "0", "0", "1", "-1"})), q("3/5"));
  EXPECT_EQ(evaluate(g, testing::b_point({"-1", "0", "0", "1", "-1"})), q("-7/5"));
}

TEST(Eval, UnboundVariableNamesIt) {
  try {
    evaluate(ChvatalTree::ceil(x1_leaf()), {});
    FAIL();
  } catch (const UnboundVariable& e) {
    EXPECT_EQ(e.name(), "x1");
  }
}

TEST(Eval, RecursiveDefinitionOnRandomTrees) {
  testing::Rng rng(11);
  auto xs = testing::vars("x", 3);
  for (int i = 0; i < 300; ++i) {
    ChvatalTree t = testing::random_tree(rng, xs, 5, 8);
    Assignment p = testing::random_point(rng, xs, 8);
    Rational v = evaluate(t, p);
    EXPECT_EQ(evaluate(ChvatalTree::ceil(t), p), ceil(v));
    EXPECT_EQ(evaluate(ChvatalTree::scale(q("3/7"), t), p), q("3/7") * v);
    ChvatalTree u = testing::random_tree(rng, xs, 3, 8);
    EXPECT_EQ(evaluate(ChvatalTree::sum(2, t, q("1/3"), u), p), 2 * v + q("1/3") * evaluate(u, p));
    Rational gap = evaluate(ChvatalTree::ceil(t), p) - v;
    EXPECT_GE(gap, 0);
    EXPECT_LT(gap, 1);
  }
}

TEST(CeilingCount, Examples) {
  EXPECT_EQ(ceiling_count(x1_leaf()), 0u);
  EXPECT_EQ(ceiling_count(ChvatalTree::ceil(x1_leaf())), 1u);
  ChvatalTree x2 = leaf(AffineForm::variable(Var("x2")));
  ChvatalTree t = ChvatalTree::sum(
      2, ChvatalTree::ceil(x1_leaf()), 3,
      ChvatalTree::ceil(ChvatalTree::scale(q("1/2"), ChvatalTree::ceil(x2))));
  EXPECT_EQ(ceiling_count(t), 3u);
  EXPECT_EQ(depth(t), 4u);
  EXPECT_EQ(depth(x1_leaf()), 0u);
}

TEST(Tree, NegativeWeightsRejected) {
  EXPECT_THROW(ChvatalTree::scale(-1, x1_leaf()), PreconditionViolation);
  EXPECT_THROW(ChvatalTree::sum(1, x1_leaf(), q("-1/2"), x1_leaf()), PreconditionViolation);
  EXPECT_NO_THROW(ChvatalTree::scale(0, x1_leaf()));
}

TEST(Tree, NoAutomaticSimplification) {
  ChvatalTree t = ChvatalTree::scale(1, x1_leaf());
  EXPECT_NE(t, x1_leaf());
  EXPECT_TRUE(std::holds_alternative<ScaleNode>(t.node()));
}

TEST(Decompose, AffineLeaf) {
  AffineForm f = AffineForm::variable(Var("x1"), 3);
  f.add_constant(-1);
  auto d = decompose(leaf(f));
  ASSERT_TRUE(std::holds_alternative<AffineCase>(d));
  EXPECT_EQ(std::get<AffineCase>(d).form, f);
}

TEST(Decompose, RootCeiling) {
  auto d = decompose(ChvatalTree::ceil(x1_leaf()));
  ASSERT_TRUE(std::holds_alternative<CeilingCase>(d));
  const auto& c = std::get<CeilingCase>(d);
  EXPECT_EQ(c.gamma, 1);
  EXPECT_EQ(c.inner, x1_leaf());
  EXPECT_EQ(as_affine(c.rest), AffineForm());
}

TEST(Decompose, ScaledCeiling) {
  Decomposition d = decompose(ChvatalTree::scale(2, ChvatalTree::ceil(x1_leaf())));
  const auto& c = std::get<CeilingCase>(d);
  EXPECT_EQ(c.gamma, 2);
  EXPECT_EQ(c.inner, x1_leaf());
  EXPECT_EQ(as_affine(c.rest), AffineForm());
}

TEST(Decompose, SumWithAffineRight) {
  ChvatalTree x2 = leaf(AffineForm::variable(Var("x2")));
  ChvatalTree t = ChvatalTree::sum(1, ChvatalTree::ceil(x1_leaf()), 1, x2);
  Decomposition d = decompose(t);
  const auto& c = std::get<CeilingCase>(d);
  EXPECT_EQ(c.gamma, 1);
  EXPECT_EQ(c.inner, x1_leaf());
  EXPECT_EQ(as_affine(c.rest), AffineForm::variable(Var("x2")));
  testing::Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    Assignment p = testing::random_point(rng, testing::vars("x", 2), 8);
    EXPECT_EQ(reassemble(decompose(t), p), evaluate(t, p));
  }
}

TEST(Decompose, ZeroWeightedCeilingStillSplits) {
  ChvatalTree t = ChvatalTree::scale(0, ChvatalTree::ceil(x1_leaf()));
  Decomposition d = decompose(t);
  const auto& c = std::get<CeilingCase>(d);
  EXPECT_GT(c.gamma, 0);
  testing::Rng rng(5);
  for (int i = 0; i < 20; ++i) {
    Assignment p = testing::random_point(rng, testing::vars("x", 1), 8);
    EXPECT_EQ(reassemble(decompose(t), p), 0);
  }
}

TEST(Decompose, RandomTreesReassembleExactly) {
  testing::Rng rng(20240601);
  auto xs = testing::vars("x", 3);
  for (int i = 0; i < 1000; ++i) {
    ChvatalTree t = testing::random_tree(rng, xs, 6, 8);
    Decomposition d = decompose(t);
    if (t.ceiling_count() == 0) {
      ASSERT_TRUE(std::holds_alternative<AffineCase>(d));
    } else {
      ASSERT_TRUE(std::holds_alternative<CeilingCase>(d));
      const auto& c = std::get<CeilingCase>(d);
      EXPECT_GT(c.gamma, 0);
      EXPECT_LE(c.inner.ceiling_count() + c.rest.ceiling_count() + 1, t.ceiling_count());
    }
    for (int k = 0; k < 10; ++k) {
      Assignment p = testing::random_point(rng, xs, 8);
      ASSERT_EQ(reassemble(d, p), evaluate(t, p)) << format_tree(t);
    }
  }
}

TEST(Compose, Identity) {
  ChvatalTree t = ChvatalTree::ceil(x1_leaf(q("1/2")));
  AffineMap id{{Var("x1"), AffineForm::variable(Var("x1"))}};
  EXPECT_EQ(compose_affine(t, id), t);
}

TEST(Compose, Negation) {
  ChvatalTree t = ChvatalTree::ceil(leaf(AffineForm::variable(Var("u1"))));
  AffineMap neg{{Var("u1"), AffineForm::variable(Var("x"), -1)}};
  EXPECT_EQ(compose_affine(t, neg), ChvatalTree::ceil(leaf(AffineForm::variable(Var("x"), -1))));
}

TEST(Compose, HalfCeilingPlusShift) {
  // ceil(u1/2) + u2 with u = (2 x1, x1 + 1) is ceil(x1) + x1 + 1.
  ChvatalTree t = ChvatalTree::sum(1, ChvatalTree::ceil(leaf(AffineForm::variable(Var("u1"), q("1/2")))),
                                   1, leaf(AffineForm::variable(Var("u2"))));
  AffineForm u2 = AffineForm::variable(Var("x1"));
  u2.add_constant(1);
  AffineMap map{{Var("u1"), AffineForm::variable(Var("x1"), 2)}, {Var("u2"), u2}};
  ChvatalTree composed = compose_affine(t, map);
  EXPECT_EQ(composed.ceiling_count(), 1u);
  testing::Rng rng(9);
  for (int i = 0; i < 100; ++i) {
    Rational x = testing::random_rational(rng, -5, 5, 8);
    EXPECT_EQ(evaluate(composed, {{Var("x1"), x}}), ceil(x) + x + 1);
  }
}

TEST(Compose, MissingImage) {
  ChvatalTree t = leaf(AffineForm::variable(Var("u1")));
  EXPECT_THROW(compose_affine(t, {}), DimensionMismatch);
}

TEST(Compose, RandomTreesAndMaps) {
  testing::Rng rng(77);
  auto us = testing::vars("u", 3);
  auto xs = testing::vars("x", 2);
  for (int i = 0; i < 300; ++i) {
    ChvatalTree t = testing::random_tree(rng, us, 6, 8);
    AffineMap map;
    for (const Var& u : us) map[u] = testing::random_affine(rng, xs, 4);
    ChvatalTree c = compose_affine(t, map);
    EXPECT_EQ(c.ceiling_count(), t.ceiling_count());
    for (int k = 0; k < 5; ++k) {
      Assignment p = testing::random_point(rng, xs, 8);
      Assignment image;
      for (const Var& u : us) image[u] = map[u].evaluate(p);
      ASSERT_EQ(evaluate(c, p), evaluate(t, image));
    }
  }
}

ChvatalTree strip_constants(const ChvatalTree& t) {
  return std::visit(
      [&](const auto& n) -> ChvatalTree {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, LeafNode>) {
          AffineForm f = n.form;
          f.add_constant(-f.constant());
          return ChvatalTree::leaf(f);
        } else if constexpr (std::is_same_v<N, CeilNode>) {
          return ChvatalTree::ceil(strip_constants(n.child));
        } else if constexpr (std::is_same_v<N, ScaleNode>) {
          return ChvatalTree::scale(n.weight, strip_constants(n.child));
        } else {
          return ChvatalTree::sum(n.left_weight, strip_constants(n.left), n.right_weight,
                                  strip_constants(n.right));
        }
      },
      t.node());
}

TEST(Compose, HomogeneousStaysHomogeneous) {
  testing::Rng rng(4);
  auto us = testing::vars("u", 2);
  auto xs = testing::vars("x", 2);
  for (int i = 0; i < 100; ++i) {
    ChvatalTree t = strip_constants(testing::random_tree(rng, us, 5, 4));
    ASSERT_TRUE(is_homogeneous(t));
    AffineMap linear;
    for (const Var& u : us) {
      AffineForm f = testing::random_affine(rng, xs, 4);
      f.add_constant(-f.constant());
      linear[u] = f;
    }
    EXPECT_TRUE(is_homogeneous(compose_affine(t, linear)));
  }
}

TEST(Format, Grammar) {
  AffineForm f = AffineForm::variable(Var("x1"));
  f.add_constant(q("1/2"));
  EXPECT_EQ(parse_tree("(aff 1*x1 + 1/2)"), leaf(f));
  EXPECT_EQ(parse_tree("(ceil (aff 1/2*x1))"), ChvatalTree::ceil(x1_leaf(q("1/2"))));
  EXPECT_EQ(format_tree(leaf(f)), "(aff 1*x1 + 1/2)");
  EXPECT_EQ(parse_tree("  ( aff  -2*x1 - 3 ) "), leaf([] {
              AffineForm g = AffineForm::variable(Var("x1"), -2);
              g.add_constant(-3);
              return g;
            }()));
  EXPECT_EQ(parse_tree("(aff)"), leaf(AffineForm()));
}

TEST(Format, Errors) {
  EXPECT_THROW(parse_tree("(scale -1 (aff 1*x1))"), ParseError);
  EXPECT_THROW(parse_tree("(sum 1 (aff 1*x1) -1/2 (aff 1*x1))"), ParseError);
  EXPECT_THROW(parse_tree("(ceil (aff 1*x1)"), ParseError);
  EXPECT_THROW(parse_tree("(floor (aff 1*x1))"), ParseError);
  EXPECT_THROW(parse_tree("(aff 1*x1) trailing"), ParseError);
  try {
    parse_tree("(ceil (oops))");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_GT(e.position(), 0u);
  }
}

TEST(Format, SeparatingFunctionRoundTrip) {
  ChvatalTree g = testing::separating_tree();
  EXPECT_EQ(parse_tree(format_tree(g)), g);
}

TEST(Format, RandomRoundTrip) {
  testing::Rng rng(123);
  auto xs = testing::vars("x", 3);
  for (int i = 0; i < 500; ++i) {
    ChvatalTree t = testing::random_tree(rng, xs, 6, 8);
    ASSERT_EQ(parse_tree(format_tree(t)), t) << format_tree(t);
  }
}

TEST(Interval, ContainsSampledValues) {
  testing::Rng rng(8);
  auto xs = testing::vars("x", 2);
  std::map<Var, Interval> box{{xs[0], {q("-2"), q("3/2")}}, {xs[1], {q("0"), q("1")}}};
  for (int i = 0; i < 200; ++i) {
    ChvatalTree t = testing::random_tree(rng, xs, 4, 4);
    Interval range = interval_evaluate(t, box);
    for (int k = 0; k < 5; ++k) {
      Assignment p{{xs[0], testing::random_rational(rng, -2, 1, 2)},
                   {xs[1], testing::random_rational(rng, 0, 1, 4)}};
      Rational v = evaluate(t, p);
      EXPECT_LE(range.lower, v);
      EXPECT_GE(range.upper, v);
    }
  }
}

}  // namespace
}  // namespace micrep
