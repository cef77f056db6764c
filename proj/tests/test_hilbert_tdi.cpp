#include "support.hpp"

#include "micrep/error.hpp"
#include "micrep/fm.hpp"
#include "micrep/hilbert.hpp"
#include "micrep/tdi.hpp"

#include <gtest/gtest.h>

namespace micrep {
namespace {

using testing::q;

RationalVector row_of(const Matrix& m, std::size_t r) { return m.row_vector(r); }

Rational dot(const RationalVector& a, const RationalVector& b) {
  Rational s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Matrix random_integer_matrix(testing::Rng& rng, std::size_t m, std::size_t n, long lo, long hi) {
  Matrix a(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = testing::random_int(rng, lo, hi);
  }
  return a;
}

/// Every integer point of the cone with |p|_inf <= radius is a nonnegative
/// integer combination of the generating set.
bool certificate_holds(const Cone& cone, const GeneratingSet& set, long radius) {
  const std::size_t n = cone.dimension();
  std::vector<RationalVector> targets;
  RationalVector p(n, Rational(-radius));
  while (true) {
    if (in_cone(cone, p)) targets.push_back(p);
    std::size_t k = 0;
    while (k < n && p[k] == radius) p[k++] = -radius;
    if (k == n) break;
    p[k] += 1;
  }
  for (bool ok : integer_combinations_exist(set.vectors, targets)) {
    if (!ok) return false;
  }
  return true;
}

TEST(Hilbert, TwoByTwoExample) {
  Cone cone{{{1, 2}, {2, 1}}};
  GeneratingSet set = hilbert_generating_set(cone);
  EXPECT_EQ(set.vectors, (std::vector<RationalVector>{{1, 1}, {1, 2}, {2, 1}, {2, 2}, {3, 3}}));
  EXPECT_EQ(set.lambdas[0], (RationalVector{q("1/3"), q("1/3")}));
  GeneratingSet minimal = hilbert_generating_set(cone, {.minimalize = true});
  EXPECT_EQ(minimal.vectors, (std::vector<RationalVector>{{1, 1}, {1, 2}, {2, 1}}));
  EXPECT_TRUE(certificate_holds(cone, minimal, 8));
  for (std::size_t k = 0; k < set.vectors.size(); ++k) {
    RationalVector back(2);
    for (std::size_t j = 0; j < 2; ++j) {
      for (std::size_t i = 0; i < 2; ++i) back[i] += set.lambdas[k][j] * cone.generators[j][i];
    }
    EXPECT_EQ(back, set.vectors[k]);
  }
}

TEST(Hilbert, NonPrimitiveGenerator) {
  GeneratingSet set = hilbert_generating_set(Cone{{{2}}});
  EXPECT_EQ(set.vectors, (std::vector<RationalVector>{{1}, {2}}));
  EXPECT_EQ(hilbert_generating_set(Cone{{{2}}}, {.minimalize = true}).vectors,
            (std::vector<RationalVector>{{1}}));
}

TEST(Hilbert, Validation) {
  EXPECT_THROW(hilbert_generating_set(Cone{{{0, 0}}}), PreconditionViolation);
  EXPECT_THROW(hilbert_generating_set(Cone{{{q("1/2"), 1}}}), PreconditionViolation);
  EXPECT_THROW(hilbert_generating_set(Cone{{{1, 0}, {1}}}), PreconditionViolation);
}

TEST(Hilbert, PointedAndMembership) {
  EXPECT_TRUE(is_pointed(Cone{{{1, 2}, {2, 1}}}));
  EXPECT_FALSE(is_pointed(Cone{{{1, 0}, {-1, 0}, {0, 1}}}));
  Cone cone{{{1, 2}, {2, 1}}};
  EXPECT_TRUE(in_cone(cone, {3, 3}));
  EXPECT_TRUE(in_cone(cone, {0, 0}));
  EXPECT_FALSE(in_cone(cone, {1, 3}));
  EXPECT_TRUE(in_cone(cone, {q("1/2"), 1}));
}

TEST(Hilbert, IntegerCombination) {
  std::vector<RationalVector> g = {{1, 2}, {2, 1}};
  auto mu = integer_combination(g, {3, 3});
  ASSERT_TRUE(mu.has_value());
  EXPECT_EQ(*mu, (std::vector<Integer>{1, 1}));
  EXPECT_FALSE(integer_combination(g, {1, 1}).has_value());
  EXPECT_EQ(integer_combination(g, {0, 0}), (std::vector<Integer>{0, 0}));
  EXPECT_EQ(integer_combinations_exist(g, {{4, 5}, {2, 2}, {6, 3}}),
            (std::vector<bool>{true, false, true}));
}

TEST(Hilbert, NonPointedCone) {
  Cone line{{{1, 1}, {-1, -1}, {0, 1}}};
  GeneratingSet set = hilbert_generating_set(line, {.minimalize = true});
  EXPECT_TRUE(certificate_holds(line, set, 4));
}

TEST(Hilbert, CertificateOnRandomSubsetCones) {
  testing::Rng rng(606);
  for (int trial = 0; trial < 10; ++trial) {
    for (std::size_t m : {2u, 3u}) {
      Matrix a = random_integer_matrix(rng, m, 2, -3, 3);
      for (unsigned mask = 1; mask < (1u << m); ++mask) {
        Cone cone;
        for (std::size_t i = 0; i < m; ++i) {
          RationalVector r = row_of(a, i);
          if ((mask >> i & 1) && !is_zero(r)) cone.generators.push_back(r);
        }
        if (cone.generators.empty()) continue;
        EXPECT_TRUE(certificate_holds(cone, hilbert_generating_set(cone), 5));
        EXPECT_TRUE(certificate_holds(cone, hilbert_generating_set(cone, {.minimalize = true}), 5));
      }
    }
  }
}

TEST(Tdi, Identity) {
  TdiAggregator agg = tdi_aggregator(Matrix({{1, 0}, {0, 1}}, 2));
  EXPECT_EQ(agg.M, Matrix({{1, 0}, {0, 1}}, 2));
  EXPECT_EQ(agg.U, Matrix({{1, 0}, {0, 1}}, 2));
  TdiAggregator full = tdi_aggregator(Matrix({{1, 0}, {0, 1}}, 2), {.minimal_hilbert = false});
  EXPECT_EQ(full.M, Matrix({{1, 0}, {0, 1}, {1, 1}}, 2));
  EXPECT_EQ(full.U, Matrix({{1, 0}, {0, 1}, {1, 1}}, 2));
}

TEST(Tdi, SingleRowWithGcd) {
  TdiAggregator agg = tdi_aggregator(Matrix({{2}}, 1), {.minimal_hilbert = false});
  EXPECT_EQ(agg.M, Matrix({{1}, {2}}, 1));
  EXPECT_EQ(agg.U, Matrix({{q("1/2")}, {1}}, 1));
  TdiAggregator minimal = tdi_aggregator(Matrix({{2}}, 1));
  EXPECT_EQ(minimal.M, Matrix({{1}}, 1));
  EXPECT_EQ(minimal.U, Matrix({{q("1/2")}}, 1));
}

TEST(Tdi, RowsOfAReappearUpToScaling) {
  testing::Rng rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix a = random_integer_matrix(rng, 3, 2, -3, 3);
    TdiAggregator agg = tdi_aggregator(a);
    for (std::size_t i = 0; i < 3; ++i) {
      RationalVector ai = a.row_vector(i);
      bool found = false;
      for (std::size_t r = 0; r < agg.M.rows() && !found; ++r) {
        RationalVector mr = agg.M.row_vector(r);
        if (is_zero(ai)) {
          found = is_zero(mr);
          continue;
        }
        std::optional<Rational> ratio;
        bool parallel = true;
        for (std::size_t j = 0; j < 2 && parallel; ++j) {
          if ((ai[j] == 0) != (mr[j] == 0)) parallel = false;
          if (ai[j] == 0 || !parallel) continue;
          Rational t = mr[j] / ai[j];
          if (t <= 0 || (ratio && *ratio != t)) parallel = false;
          ratio = t;
        }
        found = parallel;
      }
      EXPECT_TRUE(found);
    }
  }
}

TEST(Tdi, TwoRowsGainTheDiagonal) {
  TdiAggregator agg = tdi_aggregator(Matrix({{1, 2}, {2, 1}}, 2));
  bool found = false;
  for (std::size_t r = 0; r < agg.M.rows(); ++r) {
    if (row_of(agg.M, r) == RationalVector{1, 1}) {
      found = true;
      EXPECT_EQ(row_of(agg.U, r), (RationalVector{q("1/3"), q("1/3")}));
      EXPECT_EQ(agg.subset_index[r], (std::vector<std::size_t>{0, 1}));
    }
  }
  EXPECT_TRUE(found);
}

TEST(Tdi, ZeroRowKeepsItsCondition) {
  TdiAggregator agg = tdi_aggregator(Matrix({{0, 0}, {1, 0}}, 2));
  ASSERT_GE(agg.M.rows(), 2u);
  bool zero = false;
  for (std::size_t r = 0; r < agg.M.rows(); ++r) {
    if (is_zero(row_of(agg.M, r))) {
      zero = true;
      EXPECT_EQ(row_of(agg.U, r), (RationalVector{1, 0}));
    }
  }
  EXPECT_TRUE(zero);
}

TEST(Tdi, ProductIsExact) {
  testing::Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix a = random_integer_matrix(rng, 3, 2, -2, 2);
    TdiAggregator agg = tdi_aggregator(a);
    for (std::size_t r = 0; r < agg.M.rows(); ++r) {
      RationalVector u = row_of(agg.U, r), prod(2);
      for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_GE(u[i], 0);
        for (std::size_t j = 0; j < 2; ++j) prod[j] += u[i] * a(i, j);
      }
      EXPECT_EQ(prod, row_of(agg.M, r));
      for (const Rational& x : prod) EXPECT_EQ(x.get_den(), 1);
    }
  }
}

LinearSystem system_of(const Matrix& a, const RationalVector& b) {
  std::vector<Var> cols = testing::vars("x", a.cols());
  LinearSystem sys(cols);
  for (std::size_t i = 0; i < a.rows(); ++i) sys.add_row(a.row_vector(i), b[i]);
  return sys;
}

RationalVector times(const Matrix& u, const RationalVector& b) {
  RationalVector out(u.rows());
  for (std::size_t r = 0; r < u.rows(); ++r) out[r] = dot(u.row_vector(r), b);
  return out;
}

TEST(Tdi, SamePolyhedron) {
  testing::Rng rng(23);
  for (int trial = 0; trial < 15; ++trial) {
    Matrix a = random_integer_matrix(rng, 3, 2, -3, 3);
    TdiAggregator agg = tdi_aggregator(a);
    RationalVector b;
    for (int i = 0; i < 3; ++i) b.push_back(testing::random_rational(rng, -3, 3, 3));
    RationalVector ub = times(agg.U, b);
    for (int k = 0; k < 40; ++k) {
      RationalVector x = {testing::random_rational(rng, -4, 4, 4), testing::random_rational(rng, -4, 4, 4)};
      bool in_a = true, in_m = true;
      for (std::size_t i = 0; i < 3; ++i) in_a = in_a && dot(a.row_vector(i), x) >= b[i];
      for (std::size_t r = 0; r < agg.M.rows(); ++r) in_m = in_m && dot(agg.M.row_vector(r), x) >= ub[r];
      EXPECT_EQ(in_a, in_m);
    }
  }
}

/// For each objective with a finite minimum over {x : M x >= U b}, an
/// integral dual optimum exists. By complementary slackness it is a
/// nonnegative integer combination of the rows tight at any primal optimum.
void tdi_spot_check(testing::Rng& rng, const Matrix& a) {
  TdiAggregator agg = tdi_aggregator(a);
  const std::size_t n = a.cols();
  for (int bi = 0; bi < 5; ++bi) {
    RationalVector b;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      b.push_back(bi == 0 ? Rational(testing::random_int(rng, -3, 3))
                          : testing::random_rational(rng, -3, 3, 4));
    }
    RationalVector ub = times(agg.U, b);
    LinearSystem sys = system_of(agg.M, ub);
    for (int ci = 0; ci < 20; ++ci) {
      RationalVector c;
      for (std::size_t j = 0; j < n; ++j) c.push_back(testing::random_int(rng, -3, 3));
      LpResult lp = lp_minimize(sys, c);
      if (lp.status != LpStatus::Optimal) continue;
      std::vector<RationalVector> tight;
      for (std::size_t r = 0; r < agg.M.rows(); ++r) {
        if (dot(agg.M.row_vector(r), lp.argmin) == ub[r]) tight.push_back(agg.M.row_vector(r));
      }
      EXPECT_TRUE(integer_combination(tight, c).has_value())
          << "objective " << format_row(testing::vars("x", n), c);
    }
  }
}

TEST(Tdi, IntegralDualOptima) {
  testing::Rng rng(31);
  for (int trial = 0; trial < 12; ++trial) {
    std::size_t m = static_cast<std::size_t>(testing::random_int(rng, 1, 4));
    std::size_t n = static_cast<std::size_t>(testing::random_int(rng, 1, 3));
    tdi_spot_check(rng, random_integer_matrix(rng, m, n, -3, 3));
  }
}

TEST(Tdi, AllSubsetsModeAgreesOnTheCone) {
  Matrix a({{1, 2}, {2, 1}, {1, 0}}, 2);
  TdiAggregator all = tdi_aggregator(a, {.mode = SubsetMode::All});
  TdiAggregator ind = tdi_aggregator(a);
  EXPECT_GE(all.M.rows(), ind.M.rows());
}

}  // namespace
}  // namespace micrep
