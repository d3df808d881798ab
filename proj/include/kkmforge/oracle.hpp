#pragma once

// Brute-force reference implementations. They share no code with the solvers
// they check and are only meant for small inputs.

#include <optional>
#include <vector>

#include "kkmforge/complex.hpp"
#include "kkmforge/lp.hpp"
#include "kkmforge/rational.hpp"

namespace kkmforge::oracle {

/// Some solution of A x = b (free variables set to zero), or nullopt.
std::optional<RationalVector> solve_linear(std::vector<RationalVector> a, RationalVector b,
                                           std::size_t columns);

/// Feasibility by enumerating candidate minimal faces: every equality row plus
/// each subset of at most n inequality rows taken as equalities.
bool feasible_by_enumeration(const LinearSystem& system);

/// Hull membership by searching affinely independent subsets (Caratheodory).
bool in_hull_by_simplices(const RationalVector& query, const std::vector<RationalVector>& points);

/// Tukey depth for points in dimension 1 or 2, by sweeping the critical
/// directions perpendicular to p - q.
int depth_low_dimension(const RationalVector& query, const std::vector<RationalVector>& points);

/// Rank of a dense 0/1 matrix over GF(2).
std::size_t gf2_rank(std::vector<std::vector<bool>> rows);

/// Mod-2 Betti numbers from coboundary matrix ranks.
std::vector<int> betti_numbers(const SimplicialComplex& complex);

}  // namespace kkmforge::oracle
