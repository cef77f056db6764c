#include "micrep/tdi.hpp"

#include "micrep/error.hpp"

#include <algorithm>
#include <map>

namespace micrep {

namespace {

// Numeric order of the bitmasks sum 2^i over the (sorted) index sets.
bool mask_less(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  auto ia = a.rbegin(), ib = b.rbegin();
  for (; ia != a.rend() && ib != b.rend(); ++ia, ++ib) {
    if (*ia != *ib) return *ia < *ib;
  }
  return ia == a.rend() && ib != b.rend();
}

void independent_subsets(const std::vector<RationalVector>& rows,
                         const std::vector<std::size_t>& candidates, std::size_t from,
                         std::vector<std::size_t>& current,
                         std::vector<RationalVector>& current_rows,
                         std::vector<std::vector<std::size_t>>& out, std::size_t cap) {
  for (std::size_t c = from; c < candidates.size(); ++c) {
    const std::size_t i = candidates[c];
    current_rows.push_back(rows[i]);
    if (rank(current_rows) == current_rows.size()) {
      current.push_back(i);
      out.push_back(current);
      if (out.size() > cap) {
        throw CapExceeded("more than " + std::to_string(cap) + " independent row subsets");
      }
      independent_subsets(rows, candidates, c + 1, current, current_rows, out, cap);
      current.pop_back();
    }
    current_rows.pop_back();
  }
}

bool subset_of(const std::vector<std::size_t>& small, const std::vector<std::size_t>& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

}  // namespace

TdiAggregator tdi_aggregator(const Matrix& a, const TdiOptions& options) {
  const std::size_t m = a.rows(), n = a.cols();
  std::vector<RationalVector> rows(m);
  std::vector<std::size_t> nonzero, zero;
  for (std::size_t i = 0; i < m; ++i) {
    rows[i] = a.row_vector(i);
    (is_zero(rows[i]) ? zero : nonzero).push_back(i);
  }

  std::vector<std::vector<std::size_t>> subsets;
  if (options.mode == SubsetMode::Independent) {
    std::vector<std::size_t> current;
    std::vector<RationalVector> current_rows;
    independent_subsets(rows, nonzero, 0, current, current_rows, subsets, options.max_subsets);
  } else {
    if (nonzero.size() > options.max_subset_rows) {
      throw CapExceeded("power-set aggregation over " + std::to_string(nonzero.size()) +
                        " rows exceeds the cap of " + std::to_string(options.max_subset_rows));
    }
    const std::size_t count = (std::size_t{1} << nonzero.size()) - 1;
    if (count > options.max_subsets) {
      throw CapExceeded("more than " + std::to_string(options.max_subsets) + " row subsets");
    }
    for (std::size_t mask = 1; mask <= count; ++mask) {
      std::vector<std::size_t> s;
      for (std::size_t b = 0; b < nonzero.size(); ++b) {
        if (mask >> b & 1) s.push_back(nonzero[b]);
      }
      subsets.push_back(std::move(s));
    }
  }
  std::sort(subsets.begin(), subsets.end(), mask_less);

  // Integer generator for each row and the factor it was scaled by.
  std::vector<RationalVector> generator(m);
  std::vector<Rational> factor(m);
  for (std::size_t i : nonzero) {
    generator[i] = clear_denominators(rows[i]);
    factor[i] = Rational(common_denominator(rows[i]));
  }

  std::vector<RationalVector> m_rows, u_rows;
  std::vector<std::vector<std::size_t>> index, supports;
  std::map<RationalVector, std::vector<std::size_t>> by_row;
  HilbertOptions hilbert = options.hilbert;
  hilbert.minimalize = options.minimal_hilbert;
  for (const auto& s : subsets) {
    Cone cone;
    for (std::size_t i : s) cone.generators.push_back(generator[i]);
    GeneratingSet set = hilbert_generating_set(cone, hilbert);
    for (std::size_t k = 0; k < set.vectors.size(); ++k) {
      auto& seen = by_row[set.vectors[k]];
      bool duplicate = std::any_of(seen.begin(), seen.end(), [&](std::size_t r) {
        return subset_of(supports[r], s);
      });
      if (duplicate) continue;
      RationalVector u(m);
      for (std::size_t j = 0; j < s.size(); ++j) u[s[j]] = set.lambdas[k][j] * factor[s[j]];
      seen.push_back(m_rows.size());
      m_rows.push_back(set.vectors[k]);
      u_rows.push_back(std::move(u));
      // Support of u, which may be smaller than s.
      std::vector<std::size_t> support;
      for (std::size_t i : s) {
        if (u_rows.back()[i] != 0) support.push_back(i);
      }
      supports.push_back(std::move(support));
      index.push_back(s);
    }
  }
  for (std::size_t i : zero) {
    RationalVector u(m);
    u[i] = 1;
    m_rows.emplace_back(n);
    u_rows.push_back(std::move(u));
    index.push_back({i});
  }
  return TdiAggregator{Matrix(u_rows, m), Matrix(m_rows, n), std::move(index)};
}

}  // namespace micrep
