#pragma once

#include <optional>
#include <vector>

#include "chernvan/rational.hpp"

namespace chernvan {

using RatMatrix = std::vector<std::vector<Rat>>;

// Reduced row echelon form in place; returns the pivot columns.
std::vector<std::size_t> row_reduce(RatMatrix& m);

std::size_t rank(RatMatrix m);

// One solution of A x = b (free variables set to zero), or nullopt when the
// system is inconsistent. `cols` is needed when A has no rows.
std::optional<std::vector<Rat>> solve_particular(const RatMatrix& a, const std::vector<Rat>& b,
                                                 std::size_t cols);

// Basis of the right null space {x : A x = 0}.
std::vector<std::vector<Rat>> null_space(const RatMatrix& a, std::size_t cols);

}  // namespace chernvan
