#include "micrep/closure.hpp"

#include "micrep/error.hpp"
#include "micrep/oracle.hpp"

#include <algorithm>

namespace micrep {

std::vector<ChvatalTree> aggregate_rhs(const Matrix& u, const std::vector<ChvatalTree>& rhs) {
  if (u.cols() != rhs.size()) throw DimensionMismatch("aggregate_rhs: U columns vs rhs");
  std::vector<std::optional<AffineForm>> affine;
  affine.reserve(rhs.size());
  for (const auto& t : rhs) {
    const auto* leaf = std::get_if<LeafNode>(&t.node());
    affine.push_back(leaf ? std::optional<AffineForm>(leaf->form) : std::nullopt);
  }
  std::vector<ChvatalTree> out;
  out.reserve(u.rows());
  for (std::size_t k = 0; k < u.rows(); ++k) {
    AffineForm leaf;
    bool has_leaf = false;
    std::optional<ChvatalTree> acc;
    for (std::size_t i = 0; i < rhs.size(); ++i) {
      const Rational& w = u(k, i);
      if (w == 0) continue;
      if (w < 0) throw PreconditionViolation("aggregate_rhs: negative multiplier");
      if (affine[i]) {
        leaf += w * *affine[i];
        has_leaf = true;
        continue;
      }
      if (!acc) {
        acc = w == 1 ? rhs[i] : ChvatalTree::scale(w, rhs[i]);
      } else {
        acc = ChvatalTree::sum(Rational(1), *acc, w, rhs[i]);
      }
    }
    if (!acc) {
      out.push_back(ChvatalTree::leaf(std::move(leaf)));
    } else if (has_leaf) {
      out.push_back(ChvatalTree::sum(Rational(1), *acc, Rational(1), ChvatalTree::leaf(std::move(leaf))));
    } else {
      out.push_back(std::move(*acc));
    }
  }
  return out;
}

std::vector<ChvatalTree> closure_step(const Matrix& m, const std::vector<ChvatalTree>& rhs) {
  if (m.rows() != rhs.size()) throw DimensionMismatch("closure_step: rows vs rhs");
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (const Rational& x : m.row(r)) {
      if (!is_integer(x)) throw PreconditionViolation("closure_step: matrix is not integral");
    }
  }
  std::vector<ChvatalTree> out;
  out.reserve(rhs.size());
  for (const auto& t : rhs) out.push_back(ChvatalTree::ceil(t));
  return out;
}

SymbolicClosure closure_rounds(const Matrix& c, const std::vector<ChvatalTree>& rhs,
                               std::size_t rounds, const TdiOptions& tdi) {
  if (c.rows() != rhs.size()) throw DimensionMismatch("closure: rows vs rhs");
  SymbolicClosure state;
  std::vector<RationalVector> rows;
  for (std::size_t r = 0; r < c.rows(); ++r) {
    if (is_zero(c.row_vector(r))) {
      state.conditions.push_back(rhs[r]);
    } else {
      rows.push_back(c.row_vector(r));
      state.rhs.push_back(rhs[r]);
    }
  }
  state.rows = Matrix(rows, c.cols());
  for (std::size_t k = 0; k < rounds && state.rows.rows() > 0; ++k) {
    TdiAggregator agg = tdi_aggregator(state.rows, tdi);
    state.rhs = closure_step(agg.M, aggregate_rhs(agg.U, state.rhs));
    state.rows = std::move(agg.M);
  }
  return state;
}

std::vector<Var> rhs_variables(std::size_t m) {
  std::vector<Var> out;
  for (std::size_t i = 1; i <= m; ++i) out.emplace_back("b" + std::to_string(i));
  return out;
}

namespace {

std::vector<ChvatalTree> functions_for_rounds(const Matrix& c, std::size_t rounds,
                                              const ClosureOptions& options) {
  std::vector<ChvatalTree> rhs;
  for (const Var& b : rhs_variables(c.rows())) rhs.push_back(ChvatalTree::leaf(AffineForm::variable(b)));
  SymbolicClosure state = closure_rounds(c, rhs, rounds, options.tdi);
  std::vector<ChvatalTree> out = state.conditions;
  std::vector<Var> zs;
  for (std::size_t j = 0; j < c.cols(); ++j) zs.emplace_back("_z" + std::to_string(j + 1));
  SymbolicSystem sys(zs);
  for (std::size_t r = 0; r < state.rows.rows(); ++r) sys.add_row(state.rows.row_vector(r), state.rhs[r]);
  SymbolicSystem projected = eliminate_all(sys, std::span<const Var>(zs), options.fm);
  for (ChvatalTree& t : projected.conditions()) out.push_back(std::move(t));
  return out;
}

// Shrinks the grid until it has at most max_points points.
Box validation_box(const RhsMap& map, const ValidationGrid& grid) {
  auto build = [&](const Rational& lo, const Rational& hi, unsigned long den) {
    Box box;
    for (std::size_t i = 0; i < map.parameters.size(); ++i) {
      box.add(map.parameters[i], lo, hi, map.kinds[i] == VarKind::Integer ? 1 : den);
    }
    return box;
  };
  Box box = build(grid.lower, grid.upper, grid.denominator);
  if (box.point_count() <= Integer(grid.max_points)) return box;
  box = build(grid.lower, grid.upper, 1);
  Rational lo = grid.lower, hi = grid.upper;
  while (box.point_count() > Integer(grid.max_points) && (hi - lo) > 2) {
    if (hi > 1) hi -= 1;
    if (lo < -1) lo += 1;
    box = build(lo, hi, 1);
  }
  return box;
}

// First grid point where the functions and the integer search disagree.
std::optional<Assignment> first_disagreement(const Matrix& c, const RhsMap& map,
                                             const std::vector<ChvatalTree>& functions,
                                             const Box& box, const Integer& bound) {
  const std::vector<Var> bs = rhs_variables(c.rows());
  std::optional<Assignment> witness;
  box.for_each_point([&](const Assignment& p) {
    if (witness) return;
    Assignment b;
    RationalVector beta(c.rows());
    for (std::size_t i = 0; i < c.rows(); ++i) {
      beta[i] = map.beta[i].evaluate(p);
      b[bs[i]] = beta[i];
    }
    bool predicted = !first_positive(functions, b).has_value();
    bool actual = integer_feasible(c, beta, bound).has_value();
    if (predicted != actual) witness = p;
  });
  return witness;
}

}  // namespace

FeasibilityFunctions feasibility_functions(const Matrix& c, const ClosureOptions& options) {
  RhsMap identity;
  identity.parameters = rhs_variables(c.rows());
  identity.kinds.assign(c.rows(), VarKind::Continuous);
  for (const Var& b : identity.parameters) identity.beta.push_back(AffineForm::variable(b));
  return feasibility_functions(c, identity, options);
}

FeasibilityFunctions feasibility_functions(const Matrix& c, const RhsMap& map,
                                           const ClosureOptions& options) {
  if (map.beta.size() != c.rows() || map.kinds.size() != map.parameters.size()) {
    throw DimensionMismatch("feasibility_functions: rhs map size");
  }
  FeasibilityFunctions out;
  out.parameters = rhs_variables(c.rows());
  if (options.rounds) {
    out.functions = functions_for_rounds(c, *options.rounds, options);
    out.rounds_used = *options.rounds;
    return out;
  }
  Box box = validation_box(map, options.grid);
  out.validation = box.describe() + "; witnesses |z| <= " + options.witness_bound.get_str();
  std::optional<Assignment> witness;
  for (std::size_t k = 0; k <= options.max_auto_rounds; ++k) {
    std::vector<ChvatalTree> functions = functions_for_rounds(c, k, options);
    witness = first_disagreement(c, map, functions, box, options.witness_bound);
    if (!witness) {
      out.functions = std::move(functions);
      out.rounds_used = k;
      out.validated = true;
      return out;
    }
  }
  throw CapExceeded("closure did not validate within " + std::to_string(options.max_auto_rounds) +
                    " rounds; disagreement at " + format_point(*witness) + " on " +
                    out.validation);
}

}  // namespace micrep
