#ifndef FLEXKIN_DET_HPP
#define FLEXKIN_DET_HPP

#include <utility>
#include <vector>

#include "flexkin/error.hpp"
#include "flexkin/rational.hpp"

namespace flexkin {

template <class R>
using Matrix = std::vector<std::vector<R>>;

enum class DetMethod { Auto, Cofactor, Bareiss };

namespace detail {

template <class R>
void check_square(const Matrix<R>& m) {
  if (m.empty()) throw UsageError("determinant of an empty matrix");
  for (auto& row : m)
    if (row.size() != m.size()) throw UsageError("determinant of a non-square matrix");
}

template <class R>
R cofactor_det(const Matrix<R>& m, std::vector<std::size_t>& cols, std::size_t row) {
  const std::size_t n = m.size();
  if (row + 1 == n) return m[row][cols[0]];
  R acc{};
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const R& a = m[row][cols[k]];
    if (detail::zero(a)) continue;
    std::size_t c = cols[k];
    cols.erase(cols.begin() + static_cast<long>(k));
    R minor = cofactor_det(m, cols, row + 1);
    cols.insert(cols.begin() + static_cast<long>(k), c);
    if (k % 2 == 0) acc += a * minor;
    else acc -= a * minor;
  }
  return acc;
}

}  // namespace detail

/// Laplace expansion along rows; division free, so it works over any commutative ring.
template <class R>
R det_cofactor(const Matrix<R>& m) {
  detail::check_square(m);
  std::vector<std::size_t> cols(m.size());
  for (std::size_t i = 0; i < cols.size(); ++i) cols[i] = i;
  return detail::cofactor_det(m, cols, 0);
}

/// Fraction-free Gaussian elimination with row pivoting; needs exact_div(R, R).
template <class R>
R det_bareiss(Matrix<R> m) {
  detail::check_square(m);
  const std::size_t n = m.size();
  bool negate = false;
  R prev{};
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t p = k;
    while (p < n && detail::zero(m[p][k])) ++p;
    if (p == n) return R{};
    if (p != k) {
      std::swap(m[p], m[k]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        R v = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        m[i][j] = k == 0 ? std::move(v) : exact_div(v, prev);
      }
      m[i][k] = R{};
    }
    prev = m[k][k];
  }
  R out = m[n - 1][n - 1];
  if (negate) out = -out;
  return out;
}

/// Auto uses cofactor expansion up to 4x4 and Bareiss beyond.
template <class R>
R determinant(const Matrix<R>& m, DetMethod method = DetMethod::Auto) {
  detail::check_square(m);
  if (method == DetMethod::Cofactor || (method == DetMethod::Auto && m.size() <= 4)) return det_cofactor(m);
  return det_bareiss(m);
}

}  // namespace flexkin

#endif  // FLEXKIN_DET_HPP
