#include "papqr/vc.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "papqr/cover.hpp"
#include "papqr/errors.hpp"

namespace papqr {

namespace {

// VC dimension of a set of distinct rows (behaviors over `cols` columns) by
// exhaustive search over column subsets, ascending in size. Stops at the
// first size with no shattered subset (subsets of shattered sets are
// shattered, so larger sizes cannot succeed either).
int matrix_vc(const std::vector<std::vector<std::int8_t>>& rows,
              std::size_t cols) {
  if (rows.empty() || cols == 0) return 0;
  // A shattered k-set needs 2^k distinct rows.
  int max_k = 0;
  while ((std::size_t{1} << (max_k + 1)) <= rows.size() &&
         static_cast<std::size_t>(max_k + 1) <= cols)
    ++max_k;
  int best = 0;
  std::vector<std::size_t> subset;
  for (int k = 1; k <= max_k; ++k) {
    bool found = false;
    subset.assign(static_cast<std::size_t>(k), 0);
    // Iterate all column subsets of size k.
    for (int i = 0; i < k; ++i) subset[static_cast<std::size_t>(i)] = static_cast<std::size_t>(i);
    while (true) {
      const std::size_t want = std::size_t{1} << k;
      std::vector<bool> seen(want, false);
      std::size_t distinct = 0;
      for (const auto& row : rows) {
        std::size_t code = 0;
        for (int b = 0; b < k; ++b) {
          if (row[subset[static_cast<std::size_t>(b)]] > 0)
            code |= std::size_t{1} << b;
        }
        if (!seen[code]) {
          seen[code] = true;
          if (++distinct == want) break;
        }
      }
      if (distinct == want) {
        found = true;
        break;
      }
      // Next combination.
      int i = k - 1;
      while (i >= 0 && subset[static_cast<std::size_t>(i)] ==
                           cols - static_cast<std::size_t>(k - i))
        --i;
      if (i < 0) break;
      ++subset[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < k; ++j)
        subset[static_cast<std::size_t>(j)] =
            subset[static_cast<std::size_t>(j - 1)] + 1;
    }
    if (!found) break;
    best = k;
  }
  return best;
}

void check_domain_size(std::span<const DomainPoint> domain) {
  if (domain.size() > 20)
    throw SizeLimitError("brute-force VC oracle supports |domain| <= 20");
  if (domain.empty())
    throw std::invalid_argument("VC oracle needs a nonempty domain");
}

}  // namespace

int compute_vc(const HypothesisClass& cls,
               std::span<const DomainPoint> domain) {
  check_domain_size(domain);
  // Distinct behaviors on the domain are exactly the projection patterns.
  const auto rows = projection_patterns(cls, domain);
  return matrix_vc(rows, domain.size());
}

int compute_dual_vc(const HypothesisClass& cls,
                    std::span<const DomainPoint> domain) {
  check_domain_size(domain);
  const auto rows = projection_patterns(cls, domain);
  if (rows.size() > 4096)
    throw SizeLimitError("dual VC oracle supports <= 4096 distinct behaviors");
  // Transpose: each domain point becomes a row over the distinct behaviors.
  std::vector<std::vector<std::int8_t>> transposed(
      domain.size(), std::vector<std::int8_t>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < domain.size(); ++c)
      transposed[c][r] = rows[r][c];
  std::set<std::vector<std::int8_t>> distinct(transposed.begin(),
                                              transposed.end());
  std::vector<std::vector<std::int8_t>> point_rows(distinct.begin(),
                                                   distinct.end());
  return matrix_vc(point_rows, rows.size());
}

double sauer_bound(std::size_t m, int d) {
  if (d <= 0) return 1.0;
  const double e = std::exp(1.0);
  return std::pow(e * static_cast<double>(m) / static_cast<double>(d),
                  static_cast<double>(d));
}

}  // namespace papqr
