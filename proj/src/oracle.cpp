#include "micrep/oracle.hpp"

#include "micrep/error.hpp"

#include <algorithm>
#include <sstream>

namespace micrep {

std::vector<Rational> BoxRange::values() const {
  std::vector<Rational> out;
  const Rational k(static_cast<unsigned long>(denominator));
  Rational lo = ceil(lower * k), hi = floor(upper * k);
  for (Rational t = lo; t <= hi; t += 1) out.push_back(t / k);
  return out;
}

Box& Box::add(const Var& v, Rational lower, Rational upper, unsigned long denominator) {
  if (lower > upper) throw PreconditionViolation("box range for '" + v.name() + "' is empty");
  if (denominator == 0) throw PreconditionViolation("box denominator must be positive");
  if (find(v)) throw PreconditionViolation("variable '" + v.name() + "' ranged twice");
  ranges_.push_back(BoxRange{v, std::move(lower), std::move(upper), denominator});
  return *this;
}

Box Box::uniform(const std::vector<Var>& vars, const Rational& lower, const Rational& upper,
                 unsigned long denominator) {
  Box box;
  for (const Var& v : vars) box.add(v, lower, upper, denominator);
  return box;
}

Box Box::for_system(const MicSystem& sys, const Rational& lower, const Rational& upper,
                    unsigned long denominator) {
  Box box;
  for (const Var& v : sys.continuous_vars) box.add(v, lower, upper, denominator);
  for (const Var& v : sys.integer_vars) box.add(v, lower, upper, 1);
  return box;
}

const BoxRange* Box::find(const Var& v) const {
  for (const BoxRange& r : ranges_) {
    if (r.var == v) return &r;
  }
  return nullptr;
}

bool Box::empty_grid() const {
  return std::any_of(ranges_.begin(), ranges_.end(),
                     [](const BoxRange& r) { return r.values().empty(); });
}

Integer Box::point_count() const {
  Integer count = 1;
  for (const BoxRange& r : ranges_) count *= static_cast<unsigned long>(r.values().size());
  return count;
}

void Box::for_each_point(const std::function<void(const Assignment&)>& visit) const {
  std::vector<std::vector<Rational>> values;
  for (const BoxRange& r : ranges_) {
    values.push_back(r.values());
    if (values.back().empty()) return;
  }
  std::vector<std::size_t> at(values.size(), 0);
  Assignment point;
  for (std::size_t i = 0; i < values.size(); ++i) point[ranges_[i].var] = values[i][0];
  while (true) {
    visit(point);
    std::size_t i = values.size();
    while (i > 0) {
      --i;
      if (++at[i] < values[i].size()) {
        point[ranges_[i].var] = values[i][at[i]];
        break;
      }
      at[i] = 0;
      point[ranges_[i].var] = values[i][0];
      if (i == 0) return;
    }
    if (values.empty()) return;
  }
}

std::string Box::describe() const {
  std::ostringstream out;
  bool first = true;
  for (const BoxRange& r : ranges_) {
    if (!first) out << ", ";
    first = false;
    out << r.var.name() << " in [" << to_string(r.lower) << "," << to_string(r.upper) << "]";
    if (r.denominator != 1) out << "/" << r.denominator;
  }
  return out.str();
}

namespace {

struct GridSearch {
  const std::vector<RationalVector>& rows;
  const RationalVector& rhs;
  const std::vector<BoxRange>& ranges;
  std::vector<Rational> scale;  // per-column denominator

  GridSearch(const std::vector<RationalVector>& rows_, const RationalVector& rhs_,
             const std::vector<BoxRange>& ranges_)
      : rows(rows_), rhs(rhs_), ranges(ranges_) {
    for (const BoxRange& r : ranges) scale.emplace_back(static_cast<unsigned long>(r.denominator));
  }

  // Tightens lo/hi to the grid values compatible with every row, given the
  // other columns' ranges. False when some range becomes empty.
  bool propagate(std::vector<Rational>& lo, std::vector<Rational>& hi) const {
    const std::size_t n = lo.size();
    for (int pass = 0; pass < 64; ++pass) {
      bool changed = false;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        const RationalVector& a = rows[r];
        Rational best;
        for (std::size_t j = 0; j < n; ++j) {
          if (a[j] > 0) best += a[j] * hi[j];
          else if (a[j] < 0) best += a[j] * lo[j];
        }
        if (best < rhs[r]) return false;
        for (std::size_t j = 0; j < n; ++j) {
          if (a[j] == 0) continue;
          Rational own = a[j] > 0 ? a[j] * hi[j] : a[j] * lo[j];
          // a_j v_j >= rhs - (best - own)
          Rational bound = (rhs[r] - best + own) / a[j];
          if (a[j] > 0) {
            Rational snapped = ceil(bound * scale[j]) / scale[j];
            if (snapped > lo[j]) {
              lo[j] = snapped;
              changed = true;
            }
          } else {
            Rational snapped = floor(bound * scale[j]) / scale[j];
            if (snapped < hi[j]) {
              hi[j] = snapped;
              changed = true;
            }
          }
          if (lo[j] > hi[j]) return false;
          if (changed) {
            best = Rational(0);
            for (std::size_t t = 0; t < n; ++t) {
              if (a[t] > 0) best += a[t] * hi[t];
              else if (a[t] < 0) best += a[t] * lo[t];
            }
          }
        }
      }
      if (!changed) return true;
    }
    return true;
  }

  std::optional<RationalVector> run(std::size_t t, std::vector<Rational> lo,
                                    std::vector<Rational> hi) const {
    if (!propagate(lo, hi)) return std::nullopt;
    const std::size_t n = lo.size();
    while (t < n && lo[t] == hi[t]) ++t;
    if (t == n) {
      for (std::size_t r = 0; r < rows.size(); ++r) {
        Rational sum;
        for (std::size_t j = 0; j < n; ++j) sum += rows[r][j] * lo[j];
        if (sum < rhs[r]) return std::nullopt;
      }
      return lo;
    }
    for (Rational step = lo[t] * scale[t]; step <= hi[t] * scale[t]; step += 1) {
      std::vector<Rational> l = lo, h = hi;
      l[t] = h[t] = step / scale[t];
      if (auto found = run(t + 1, std::move(l), std::move(h))) return found;
    }
    return std::nullopt;
  }
};

}  // namespace

std::optional<RationalVector> grid_search(const std::vector<RationalVector>& rows,
                                          const RationalVector& rhs,
                                          const std::vector<BoxRange>& ranges) {
  if (rows.size() != rhs.size()) throw DimensionMismatch("grid_search: rhs length");
  for (const auto& row : rows) {
    if (row.size() != ranges.size()) throw DimensionMismatch("grid_search: row length");
  }
  for (const BoxRange& r : ranges) {
    if (r.values().empty()) return std::nullopt;
  }
  GridSearch search(rows, rhs, ranges);
  std::vector<Rational> lo, hi;
  for (const BoxRange& r : ranges) {
    Rational k(static_cast<unsigned long>(r.denominator));
    lo.push_back(ceil(r.lower * k) / k);
    hi.push_back(floor(r.upper * k) / k);
  }
  return search.run(0, std::move(lo), std::move(hi));
}

std::optional<Assignment> milp_feasible(const MilpSystem& sys, const Box& box) {
  sys.validate();
  std::vector<Var> vars = sys.target_vars;
  vars.insert(vars.end(), sys.continuous_aux_vars.begin(), sys.continuous_aux_vars.end());
  vars.insert(vars.end(), sys.integer_aux_vars.begin(), sys.integer_aux_vars.end());
  std::vector<BoxRange> ranges;
  for (std::size_t j = 0; j < vars.size(); ++j) {
    const BoxRange* r = box.find(vars[j]);
    if (!r) throw PreconditionViolation("box does not range '" + vars[j].name() + "'");
    BoxRange range = *r;
    const bool integral =
        j < sys.target_vars.size()
            ? sys.target_kinds[j] == VarKind::Integer
            : j >= sys.target_vars.size() + sys.continuous_aux_vars.size();
    if (integral) range.denominator = 1;
    ranges.push_back(std::move(range));
  }
  std::vector<RationalVector> rows;
  for (std::size_t r = 0; r < sys.row_count(); ++r) {
    RationalVector row = sys.A.row_vector(r);
    for (const Rational& x : sys.B.row(r)) row.push_back(x);
    for (const Rational& x : sys.C.row(r)) row.push_back(x);
    rows.push_back(std::move(row));
  }
  auto found = grid_search(rows, sys.d, ranges);
  if (!found) return std::nullopt;
  Assignment out;
  for (std::size_t j = 0; j < vars.size(); ++j) out[vars[j]] = (*found)[j];
  return out;
}

std::optional<RationalVector> integer_feasible(const Matrix& c, const RationalVector& beta,
                                               const Integer& bound) {
  if (c.rows() != beta.size()) throw DimensionMismatch("integer_feasible: rhs length");
  std::vector<BoxRange> ranges;
  for (std::size_t j = 0; j < c.cols(); ++j) {
    ranges.push_back(BoxRange{Var("z" + std::to_string(j + 1)), Rational(-bound), Rational(bound), 1});
  }
  std::vector<RationalVector> rows;
  for (std::size_t r = 0; r < c.rows(); ++r) rows.push_back(c.row_vector(r));
  return grid_search(rows, beta, ranges);
}

bool mic_member(const MicSystem& sys, const Assignment& point) {
  for (const Var& v : sys.integer_vars) {
    auto it = point.find(v);
    if (it == point.end()) throw UnboundVariable(v.name());
    if (!is_integer(it->second)) {
      throw PreconditionViolation("integer variable '" + v.name() + "' has value " +
                                  to_string(it->second));
    }
  }
  std::vector<ChvatalTree> lhs;
  lhs.reserve(sys.inequalities.size());
  for (const auto& ineq : sys.inequalities) lhs.push_back(ineq.lhs);
  std::vector<Rational> values = evaluate_many(lhs, point);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] > sys.inequalities[i].rhs) return false;
  }
  return true;
}

bool dmic_member(const std::vector<MicSystem>& branches, const Assignment& point) {
  return std::any_of(branches.begin(), branches.end(),
                     [&](const MicSystem& b) { return mic_member(b, point); });
}

namespace {

std::vector<Var> lhs_variables(const MicSystem& lhs) { return lhs.variables(); }

void require_covered(const std::vector<Var>& vars, const Box& box) {
  for (const Var& v : vars) {
    if (!box.find(v)) throw PreconditionViolation("box does not range '" + v.name() + "'");
  }
}

Assignment restrict(const Assignment& point, const std::vector<Var>& vars) {
  Assignment out;
  for (const Var& v : vars) out[v] = point.at(v);
  return out;
}

ProjectionReport compare(const MicSystem& lhs, const Box& box,
                         const std::function<bool(const Assignment&)>& rhs_member) {
  const std::vector<Var> vars = lhs_variables(lhs);
  require_covered(vars, box);
  ProjectionReport report;
  report.box = box.describe();
  box.for_each_point([&](const Assignment& full) {
    Assignment point = restrict(full, vars);
    ++report.points_checked;
    bool in_lhs = mic_member(lhs, point);
    bool in_rhs = rhs_member(point);
    if (in_lhs != in_rhs) report.disagreements.push_back({point, in_lhs, in_rhs});
  });
  std::sort(report.disagreements.begin(), report.disagreements.end(),
            [](const Disagreement& a, const Disagreement& b) { return a.point < b.point; });
  return report;
}

}  // namespace

ProjectionReport check_projection_equality(const MicSystem& lhs, const MilpSystem& rhs,
                                           const Box& box, const Box& witness) {
  std::set<Var> targets(rhs.target_vars.begin(), rhs.target_vars.end());
  std::vector<Var> vars = lhs.variables();
  if (targets != std::set<Var>(vars.begin(), vars.end())) {
    throw DimensionMismatch("MILP targets differ from the MIC variables");
  }
  std::vector<Var> aux = rhs.continuous_aux_vars;
  aux.insert(aux.end(), rhs.integer_aux_vars.begin(), rhs.integer_aux_vars.end());
  require_covered(aux, witness);
  return compare(lhs, box, [&](const Assignment& point) {
    MilpSystem fixed = rhs;
    Box search;
    for (std::size_t j = 0; j < rhs.target_vars.size(); ++j) {
      const Rational& v = point.at(rhs.target_vars[j]);
      if (rhs.target_kinds[j] == VarKind::Integer && !is_integer(v)) return false;
      search.add(rhs.target_vars[j], v, v, static_cast<unsigned long>(mpz_get_ui(v.get_den_mpz_t())));
    }
    for (const Var& a : aux) {
      const BoxRange* r = witness.find(a);
      search.add(a, r->lower, r->upper, r->denominator);
    }
    return milp_feasible(fixed, search).has_value();
  });
}

ProjectionReport check_projection_equality(const MicSystem& lhs, const MicSystem& rhs,
                                           const Box& box, const Box& witness) {
  std::vector<Var> vars = lhs.variables();
  std::set<Var> own(vars.begin(), vars.end());
  std::vector<Var> extra;
  for (const Var& v : rhs.variables()) {
    if (!own.count(v)) extra.push_back(v);
  }
  Box search;
  for (const Var& v : extra) {
    const BoxRange* r = witness.find(v);
    if (!r) throw PreconditionViolation("witness box does not range '" + v.name() + "'");
    search.add(v, r->lower, r->upper, rhs.is_integer(v) ? 1 : r->denominator);
  }
  return compare(lhs, box, [&](const Assignment& point) {
    for (const Var& v : rhs.integer_vars) {
      auto it = point.find(v);
      if (it != point.end() && !is_integer(it->second)) return false;
    }
    bool found = false;
    Assignment full = point;
    search.for_each_point([&](const Assignment& w) {
      if (found) return;
      for (const auto& [v, value] : w) full[v] = value;
      found = mic_member(rhs, full);
    });
    if (extra.empty()) found = mic_member(rhs, full);
    return found;
  });
}

Box derived_aux_box(const std::vector<AuxDefinition>& aux, const Box& box) {
  Box out = box;
  std::map<Var, Interval> intervals;
  for (const BoxRange& r : box.ranges()) intervals[r.var] = Interval{r.lower, r.upper};
  for (const AuxDefinition& def : aux) {
    // z = ceil(lower(v)) is always a witness; the inequality may cap it further.
    Interval low = interval_evaluate(def.lower, intervals);
    Rational lo = ceil(low.lower);
    Rational hi = ceil(low.upper);
    if (def.gamma > 0) {
      Interval rest = interval_evaluate(def.rest, intervals);
      hi = std::min(hi, floor((def.rhs - rest.lower) / def.gamma));
    }
    // An empty range means no point of the box satisfies this inequality.
    if (hi < lo) hi = lo;
    out.add(def.aux, lo, hi, 1);
    intervals[def.aux] = Interval{lo, hi};
  }
  return out;
}

ProjectionReport check_projection_equality(const MicSystem& lhs, const LiftResult& rhs,
                                           const Box& box) {
  Box witness = derived_aux_box(rhs.aux, box);
  return check_projection_equality(lhs, rhs.milp, box, witness);
}

std::string format_point(const Assignment& point) {
  std::string out = "(";
  bool first = true;
  for (const auto& [v, value] : point) {
    if (!first) out += ", ";
    first = false;
    out += v.name() + "=" + to_string(value);
  }
  return out + ")";
}

std::string format_report(const ProjectionReport& report) {
  std::string out;
  for (const Disagreement& d : report.disagreements) {
    out += format_point(d.point) + " ; " + (d.lhs ? "in" : "out") + " ; " +
           (d.rhs ? "in" : "out") + "\n";
  }
  return out;
}

}  // namespace micrep
