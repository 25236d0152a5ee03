#pragma once

#include <optional>
#include <vector>

#include "linefol/arith.hpp"

namespace linefol {

/// Dense row-major matrix over Q(i).
using Matrix = std::vector<std::vector<Gq>>;

/// Reduced row echelon form in place; returns the pivot columns.
std::vector<std::size_t> row_reduce(Matrix& m);

std::size_t rank(Matrix m);

/// Basis of {x : m x = 0}; `cols` is needed when m has no rows.
std::vector<std::vector<Gq>> kernel(Matrix m, std::size_t cols);

Gq determinant(Matrix m);

/// Throws SingularMatrix.
Matrix inverse(const Matrix& m);

/// Some solution of m x = b, if one exists.
std::optional<std::vector<Gq>> solve(Matrix m, const std::vector<Gq>& b);

}  // namespace linefol
