#include "micrep/hilbert.hpp"

#include "micrep/error.hpp"
#include "micrep/fm.hpp"
#include "micrep/matrix.hpp"

#include <algorithm>
#include <deque>
#include <cstdint>
#include <map>

namespace micrep {

std::size_t Cone::dimension() const {
  return generators.empty() ? 0 : generators.front().size();
}

void Cone::validate() const {
  const std::size_t n = dimension();
  for (const RationalVector& g : generators) {
    if (g.size() != n) throw PreconditionViolation("cone generators differ in length");
    if (is_zero(g)) throw PreconditionViolation("zero cone generator");
    for (const Rational& x : g) {
      if (!is_integer(x)) throw PreconditionViolation("cone generator is not integral");
    }
  }
}

namespace {

Matrix generator_columns(const Cone& cone) {
  const std::size_t n = cone.dimension(), k = cone.generators.size();
  Matrix g(n, k);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < n; ++i) g(i, j) = cone.generators[j][i];
  }
  return g;
}

// lambda = solve(p) for linearly independent generators.
class IndependentSolver {
 public:
  explicit IndependentSolver(const Matrix& g) : n_(g.rows()), k_(g.cols()) {
    // Row reduce [G | I]; pivots land in the first k rows.
    std::vector<RationalVector> rows(n_, RationalVector(k_ + n_));
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < k_; ++j) rows[i][j] = g(i, j);
      rows[i][k_ + i] = 1;
    }
    std::size_t r = 0;
    for (std::size_t c = 0; c < k_; ++c) {
      std::size_t p = r;
      while (p < n_ && rows[p][c] == 0) ++p;
      if (p == n_) throw InternalError("generators are not independent");
      std::swap(rows[r], rows[p]);
      Rational inv = Rational(1) / rows[r][c];
      for (Rational& x : rows[r]) x *= inv;
      for (std::size_t i = 0; i < n_; ++i) {
        if (i == r || rows[i][c] == 0) continue;
        Rational f = rows[i][c];
        for (std::size_t t = 0; t < rows[i].size(); ++t) rows[i][t] -= f * rows[r][t];
      }
      ++r;
    }
    for (auto& row : rows) transform_.emplace_back(row.begin() + static_cast<std::ptrdiff_t>(k_), row.end());
  }

  std::optional<RationalVector> solve(const RationalVector& p) const {
    for (std::size_t i = k_; i < n_; ++i) {
      if (dot(transform_[i], p) != 0) return std::nullopt;
    }
    RationalVector lambda(k_);
    for (std::size_t j = 0; j < k_; ++j) lambda[j] = dot(transform_[j], p);
    return lambda;
  }

 private:
  static Rational dot(const RationalVector& a, const RationalVector& b) {
    Rational s;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
    }
    return s;
  }

  std::size_t n_, k_;
  std::vector<RationalVector> transform_;
};

std::optional<RationalVector> zonotope_coefficients(const Matrix& g, const RationalVector& p) {
  const std::size_t k = g.cols();
  Matrix bounds(2 * k, k);
  RationalVector rhs(2 * k);
  for (std::size_t j = 0; j < k; ++j) {
    bounds(2 * j, j) = 1;
    bounds(2 * j + 1, j) = -1;
    rhs[2 * j + 1] = -1;
  }
  return solve_linear_feasibility(g, p, bounds, rhs);
}

bool lambda_in_unit_box(const RationalVector& lambda) {
  return std::all_of(lambda.begin(), lambda.end(),
                     [](const Rational& l) { return l >= 0 && l <= 1; });
}

}  // namespace

bool is_pointed(const Cone& cone) {
  cone.validate();
  const std::size_t k = cone.generators.size();
  if (k == 0) return true;
  Matrix g = generator_columns(cone);
  Matrix eq(g.rows() + 1, k);
  RationalVector rhs(g.rows() + 1);
  for (std::size_t i = 0; i < g.rows(); ++i) {
    for (std::size_t j = 0; j < k; ++j) eq(i, j) = g(i, j);
  }
  for (std::size_t j = 0; j < k; ++j) eq(g.rows(), j) = 1;
  rhs.back() = 1;
  Matrix nonneg(k, k);
  for (std::size_t j = 0; j < k; ++j) nonneg(j, j) = 1;
  return !solve_linear_feasibility(eq, rhs, nonneg, RationalVector(k)).has_value();
}

bool in_cone(const Cone& cone, const RationalVector& point) {
  cone.validate();
  const std::size_t k = cone.generators.size();
  if (k == 0) return is_zero(point);
  if (point.size() != cone.dimension()) throw DimensionMismatch("point dimension");
  Matrix nonneg(k, k);
  for (std::size_t j = 0; j < k; ++j) nonneg(j, j) = 1;
  return solve_linear_feasibility(generator_columns(cone), point, nonneg, RationalVector(k))
      .has_value();
}

GeneratingSet hilbert_generating_set(const Cone& cone, const HilbertOptions& options) {
  cone.validate();
  const std::size_t k = cone.generators.size();
  if (k > options.max_generators) {
    throw CapExceeded("cone has " + std::to_string(k) + " generators, cap is " +
                      std::to_string(options.max_generators));
  }
  GeneratingSet out;
  if (k == 0) return out;
  const std::size_t n = cone.dimension();
  Matrix g = generator_columns(cone);

  std::vector<Integer> lo(n), hi(n);
  Integer volume = 1;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const Integer v = g(i, j).get_num();
      if (v < 0) lo[i] += v;
      else hi[i] += v;
    }
    volume *= hi[i] - lo[i] + 1;
  }
  if (volume > Integer(options.max_points)) {
    throw CapExceeded("zonotope box holds " + volume.get_str() + " integer points, cap is " +
                      std::to_string(options.max_points));
  }

  std::optional<IndependentSolver> fast;
  if (rank(cone.generators) == k) fast.emplace(g);

  RationalVector p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = lo[i];
  while (true) {
    if (!is_zero(p)) {
      std::optional<RationalVector> lambda;
      if (fast) {
        lambda = fast->solve(p);
        if (lambda && !lambda_in_unit_box(*lambda)) lambda.reset();
      } else {
        lambda = zonotope_coefficients(g, p);
      }
      if (lambda) {
        out.vectors.push_back(p);
        out.lambdas.push_back(std::move(*lambda));
      }
    }
    // Odometer over the box, last coordinate fastest (lexicographic order).
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (p[i] < hi[i]) {
        p[i] += 1;
        break;
      }
      p[i] = lo[i];
      if (i == 0) {
        i = n + 1;
        break;
      }
    }
    if (i == n + 1 || n == 0) break;
  }

  if (options.minimalize && is_pointed(cone)) {
    GeneratingSet reduced;
    for (std::size_t a = 0; a < out.vectors.size(); ++a) {
      bool reducible = false;
      for (std::size_t b = 0; b < out.vectors.size() && !reducible; ++b) {
        if (a == b) continue;
        RationalVector diff(n);
        for (std::size_t i = 0; i < n; ++i) diff[i] = out.vectors[a][i] - out.vectors[b][i];
        // diff is nonzero since the set has no repeats.
        reducible = in_cone(cone, diff);
      }
      if (!reducible) {
        reduced.vectors.push_back(out.vectors[a]);
        reduced.lambdas.push_back(out.lambdas[a]);
      }
    }
    out = std::move(reduced);
  }
  return out;
}

namespace {

// Breadth-first closure of the origin under adding `vectors`, within the box
// of radius |targets|_inf + n * max|vectors|_inf. Maps each reached point to
// the index of the last vector added (SIZE_MAX for the origin).
std::map<RationalVector, std::size_t> reachable(const std::vector<RationalVector>& vectors,
                                                const std::vector<RationalVector>& targets) {
  std::map<RationalVector, std::size_t> seen;
  const std::size_t n = targets.front().size();
  Integer vmax = 0, tmax = 0;
  for (const auto& v : vectors) {
    if (v.size() != n) throw DimensionMismatch("integer_combination: vector length");
    for (const auto& x : v) vmax = std::max(vmax, Integer(ceil(Rational(abs(x))).get_num()));
  }
  for (const auto& t : targets) {
    if (t.size() != n) throw DimensionMismatch("integer_combination: target length");
    for (const auto& x : t) tmax = std::max(tmax, Integer(ceil(Rational(abs(x))).get_num()));
  }
  const Rational radius(tmax + Integer(static_cast<unsigned long>(n)) * vmax);
  std::deque<RationalVector> queue;
  seen.emplace(RationalVector(n), SIZE_MAX);
  queue.emplace_back(n);
  while (!queue.empty()) {
    RationalVector p = std::move(queue.front());
    queue.pop_front();
    for (std::size_t k = 0; k < vectors.size(); ++k) {
      RationalVector q(n);
      bool inside = true;
      for (std::size_t i = 0; i < n && inside; ++i) {
        q[i] = p[i] + vectors[k][i];
        inside = abs(q[i]) <= radius;
      }
      if (!inside || seen.count(q)) continue;
      seen.emplace(q, k);
      queue.push_back(std::move(q));
    }
    if (seen.size() > 5'000'000) throw CapExceeded("integer combination search too large");
  }
  return seen;
}

}  // namespace

std::vector<bool> integer_combinations_exist(const std::vector<RationalVector>& vectors,
                                             const std::vector<RationalVector>& targets) {
  std::vector<bool> found(targets.size(), false);
  if (targets.empty()) return found;
  auto seen = reachable(vectors, targets);
  for (std::size_t t = 0; t < targets.size(); ++t) found[t] = seen.count(targets[t]) > 0;
  return found;
}

std::optional<std::vector<Integer>> integer_combination(const std::vector<RationalVector>& vectors,
                                                        const RationalVector& target) {
  auto seen = reachable(vectors, {target});
  auto it = seen.find(target);
  if (it == seen.end()) return std::nullopt;
  std::vector<Integer> mu(vectors.size());
  RationalVector p = target;
  while (it->second != SIZE_MAX) {
    const std::size_t k = it->second;
    mu[k] += 1;
    for (std::size_t i = 0; i < p.size(); ++i) p[i] -= vectors[k][i];
    it = seen.find(p);
  }
  return mu;
}

}  // namespace micrep
