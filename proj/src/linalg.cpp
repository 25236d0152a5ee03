#include "linefol/linalg.hpp"

#include "linefol/error.hpp"

namespace linefol {

std::vector<std::size_t> row_reduce(Matrix& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    Gq inv = m[r][c].inverse();
    for (std::size_t k = c; k < cols; ++k) m[r][k] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      Gq f = m[i][c];
      for (std::size_t k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t rank(Matrix m) { return row_reduce(m).size(); }

std::vector<std::vector<Gq>> kernel(Matrix m, std::size_t cols) {
  auto pivots = row_reduce(m);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Gq>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Gq> v(cols);
    v[free] = Gq(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

Gq determinant(Matrix m) {
  const std::size_t n = m.size();
  Gq det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c].is_zero()) ++p;
    if (p == n) return Gq();
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    Gq inv = m[c][c].inverse();
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m[i][c].is_zero()) continue;
      Gq f = m[i][c] * inv;
      for (std::size_t k = c; k < n; ++k) m[i][k] -= f * m[c][k];
    }
  }
  return det;
}

Matrix inverse(const Matrix& m) {
  const std::size_t n = m.size();
  Matrix aug(n, std::vector<Gq>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) fail(ErrorCode::InvalidArgument, "matrix is not square");
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = m[i][j];
    aug[i][n + i] = Gq(1);
  }
  auto pivots = row_reduce(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) fail(ErrorCode::SingularMatrix, "matrix is singular");
  Matrix out(n, std::vector<Gq>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i][j] = aug[i][n + j];
  return out;
}

std::optional<std::vector<Gq>> solve(Matrix m, const std::vector<Gq>& b) {
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t i = 0; i < m.size(); ++i) m[i].push_back(b[i]);
  auto pivots = row_reduce(m);
  if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
  std::vector<Gq> x(cols);
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = m[r][cols];
  return x;
}

}  // namespace linefol
