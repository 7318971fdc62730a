#pragma once

// Exact dense linear algebra over Q.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "overdet/poly.hpp"

namespace overdet {

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Reduced row echelon form in place; returns the pivot columns.
std::vector<std::size_t> rref(RationalMatrix& a, std::size_t ncols);

/// Basis of the null space of a (rows x ncols).
std::vector<std::vector<Rational>> nullspace(RationalMatrix a, std::size_t ncols);

/// All q in P^r with entries of degree <= degree and sum q_i gens_i = 0,
/// as a vector-space basis. Empty optional when the unknown count exceeds
/// max_unknowns.
std::optional<std::vector<ModuleElement>> bounded_kernel(std::span<const ModuleElement> gens,
                                                         int degree,
                                                         std::size_t max_unknowns = 2000);

std::vector<Monomial> monomials_up_to(std::size_t nvars, int degree);

}  // namespace overdet
