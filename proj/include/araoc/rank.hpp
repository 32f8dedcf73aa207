// rank.hpp — exact integer matrix rank via one-step fraction-free (Bareiss)
// elimination. Intermediate entries are minors of the input matrix, which for
// 30x30 digit matrices exceed 64-bit range, so arithmetic runs on
// arbitrary-precision integers. No floating point anywhere.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "araoc/grid.hpp"

namespace araoc {

inline int rank_exact(const Grid& g) {
  using bigint = boost::multiprecision::cpp_int;
  const int rows = g.rows(), cols = g.cols();
  std::vector<std::vector<bigint>> m(static_cast<std::size_t>(rows));
  for (int r = 0; r < rows; ++r) {
    m[r].reserve(static_cast<std::size_t>(cols));
    for (int c = 0; c < cols; ++c) m[r].emplace_back(g.at(r, c).code());
  }

  int rank = 0;
  bigint prev_pivot = 1;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int pivot_row = -1;
    for (int r = rank; r < rows; ++r)
      if (m[r][c] != 0) {
        pivot_row = r;
        break;
      }
    if (pivot_row < 0) continue;  // column already eliminated
    std::swap(m[rank], m[pivot_row]);
    // One-step fraction-free update: every entry below the pivot row becomes
    // a (rank+2)-minor of the original matrix divided by the previous pivot;
    // the division is exact by the Bareiss identity.
    for (int r = rank + 1; r < rows; ++r) {
      for (int c2 = c + 1; c2 < cols; ++c2)
        m[r][c2] = (m[rank][c] * m[r][c2] - m[r][c] * m[rank][c2]) / prev_pivot;
      m[r][c] = 0;
    }
    prev_pivot = m[rank][c];
    ++rank;
  }
  return rank;
}

}  // namespace araoc
