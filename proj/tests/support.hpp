#pragma once

#include "micrep/closure.hpp"
#include "micrep/lift.hpp"
#include "micrep/oracle.hpp"
#include "micrep/system.hpp"

#include <random>
#include <string>
#include <vector>

namespace micrep::testing {

using Rng = std::mt19937_64;

inline Rational q(const char* text) { return parse_rational(text); }

inline Rational random_rational(Rng& rng, long lo, long hi, long max_den) {
  std::uniform_int_distribution<long> den(1, max_den);
  long d = den(rng);
  std::uniform_int_distribution<long> num(lo * d, hi * d);
  Rational r(num(rng), d);
  r.canonicalize();
  return r;
}

inline long random_int(Rng& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline std::vector<Var> vars(const std::string& stem, std::size_t n) {
  std::vector<Var> out;
  for (std::size_t i = 1; i <= n; ++i) out.emplace_back(stem + std::to_string(i));
  return out;
}

inline AffineForm random_affine(Rng& rng, const std::vector<Var>& over, long max_den) {
  AffineForm f(random_rational(rng, -3, 3, max_den));
  for (const Var& v : over) {
    if (random_int(rng, 0, 2) == 0) continue;
    f.add_term(v, random_rational(rng, -3, 3, max_den));
  }
  return f;
}

inline Rational random_weight(Rng& rng, long max_den) {
  if (random_int(rng, 0, 9) == 0) return Rational(0);
  return random_rational(rng, 0, 3, max_den);
}

/// Depth at most max_depth, at most max_ceilings ceiling nodes.
inline ChvatalTree random_tree(Rng& rng, const std::vector<Var>& over, int max_depth,
                               long max_den, std::size_t& ceilings_left) {
  if (max_depth == 0 || random_int(rng, 0, 3) == 0) {
    return ChvatalTree::leaf(random_affine(rng, over, max_den));
  }
  switch (random_int(rng, 0, 2)) {
    case 0:
      if (ceilings_left > 0) {
        --ceilings_left;
        return ChvatalTree::ceil(random_tree(rng, over, max_depth - 1, max_den, ceilings_left));
      }
      [[fallthrough]];
    case 1:
      return ChvatalTree::scale(random_weight(rng, max_den),
                                random_tree(rng, over, max_depth - 1, max_den, ceilings_left));
    default: {
      Rational a = random_weight(rng, max_den), b = random_weight(rng, max_den);
      ChvatalTree l = random_tree(rng, over, max_depth - 1, max_den, ceilings_left);
      ChvatalTree r = random_tree(rng, over, max_depth - 1, max_den, ceilings_left);
      return ChvatalTree::sum(a, l, b, r);
    }
  }
}

inline ChvatalTree random_tree(Rng& rng, const std::vector<Var>& over, int max_depth,
                               long max_den) {
  std::size_t unlimited = 1000;
  return random_tree(rng, over, max_depth, max_den, unlimited);
}

inline Assignment random_point(Rng& rng, const std::vector<Var>& over, long max_den) {
  Assignment p;
  for (const Var& v : over) p[v] = random_rational(rng, -5, 5, max_den);
  return p;
}

/// n <= 2 continuous, q <= 2 integer, <= 3 inequalities, total cc <= 3.
inline MicSystem random_mic(Rng& rng, long max_den) {
  MicSystem sys;
  sys.continuous_vars = vars("x", static_cast<std::size_t>(random_int(rng, 0, 2)));
  sys.integer_vars = vars("z", static_cast<std::size_t>(random_int(rng, sys.continuous_vars.empty() ? 1 : 0, 2)));
  std::vector<Var> all = sys.variables();
  std::size_t ceilings = 3;
  long count = random_int(rng, 1, 3);
  for (long i = 0; i < count; ++i) {
    ChvatalTree t = random_tree(rng, all, 3, max_den, ceilings);
    sys.inequalities.push_back({t, random_rational(rng, -3, 3, max_den)});
  }
  return sys;
}

/// The five-row example system C x >= b.
inline Matrix fm_example_matrix() {
  return Matrix({{q("-1"), q("1/2"), q("-1/10")},
                 {q("1"), q("-1/4"), q("0")},
                 {q("0"), q("-1"), q("1")},
                 {q("0"), q("0"), q("1")},
                 {q("0"), q("0"), q("-1")}},
                3);
}

/// b in R^5 as targets, x1..x3 integer auxiliaries: -b + C x >= 0.
inline MilpSystem fm_example_milp() {
  Matrix c = fm_example_matrix();
  MilpSystem sys;
  sys.target_vars = rhs_variables(5);
  sys.target_kinds.assign(5, VarKind::Continuous);
  sys.integer_aux_vars = vars("x", 3);
  sys.A = Matrix(5, 5);
  for (std::size_t i = 0; i < 5; ++i) sys.A(i, i) = -1;
  sys.B = Matrix(5, 0);
  sys.C = c;
  sys.d.assign(5, Rational(0));
  return sys;
}

/// Same set as a MIC system over (b, x): b_i - C_i x <= 0, x integral.
inline MicSystem fm_example_mic() {
  Matrix c = fm_example_matrix();
  MicSystem sys;
  sys.continuous_vars = rhs_variables(5);
  sys.integer_vars = vars("x", 3);
  for (std::size_t i = 0; i < 5; ++i) {
    AffineForm f = AffineForm::variable(sys.continuous_vars[i]);
    for (std::size_t j = 0; j < 3; ++j) f.add_term(sys.integer_vars[j], -c(i, j));
    sys.inequalities.push_back({ChvatalTree::leaf(f), Rational(0)});
  }
  return sys;
}

inline Assignment b_point(std::initializer_list<const char*> values) {
  Assignment p;
  std::size_t i = 1;
  for (const char* v : values) p[Var("b" + std::to_string(i++))] = q(v);
  return p;
}

/// The separating function b1 + b3/2 + ceil(b1 + 2 b2 + b4/10) + 2 b5/5.
inline ChvatalTree separating_tree() {
  AffineForm outer;
  outer.add_term(Var("b1"), 1);
  outer.add_term(Var("b3"), q("1/2"));
  outer.add_term(Var("b5"), q("2/5"));
  AffineForm inner;
  inner.add_term(Var("b1"), 1);
  inner.add_term(Var("b2"), 2);
  inner.add_term(Var("b4"), q("1/10"));
  return ChvatalTree::sum(Rational(1), ChvatalTree::leaf(outer), Rational(1),
                          ChvatalTree::ceil(ChvatalTree::leaf(inner)));
}

inline bool all_nonpositive(const std::vector<ChvatalTree>& fs, const Assignment& p) {
  return !first_positive(fs, p).has_value();
}

}  // namespace micrep::testing
