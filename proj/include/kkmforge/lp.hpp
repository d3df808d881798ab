#pragma once

#include <cstddef>
#include <vector>

#include "kkmforge/rational.hpp"

namespace kkmforge {

enum class Relation { LessEqual, Equal, GreaterEqual };

struct LinearRow {
    RationalVector coeffs;
    Relation relation;
    Rational rhs;
};

/// Rows of the form coeffs . x (relation) rhs over free real variables.
/// Nonnegativity is expressed as ordinary rows (x_j >= 0).
class LinearSystem {
public:
    explicit LinearSystem(std::size_t variable_count = 0) : variables_(variable_count) {}

    std::size_t variable_count() const noexcept { return variables_; }
    std::size_t row_count() const noexcept { return rows_.size(); }
    const std::vector<LinearRow>& rows() const noexcept { return rows_; }

    /// Throws std::invalid_argument when coeffs.size() != variable_count().
    void add_row(RationalVector coeffs, Relation relation, Rational rhs);
    void add_nonnegative(std::size_t variable);

private:
    std::size_t variables_;
    std::vector<LinearRow> rows_;
};

/// Exact feasibility witness or Farkas certificate.
///
/// Farkas convention: one multiplier y_i per row, y_i >= 0 on inequality rows
/// and free on equality rows. With s_i = -1 for ">=" rows and +1 otherwise,
/// sum_i y_i s_i coeffs_i = 0 and sum_i y_i s_i rhs_i < 0.
struct RationalCertificate {
    enum class Kind { Feasible, Infeasible };
    Kind kind = Kind::Infeasible;
    RationalVector point;
    RationalVector multipliers;

    bool is_feasible() const noexcept { return kind == Kind::Feasible; }
};

RationalCertificate lp_feasible(const LinearSystem& system);

/// Re-checks a certificate by substitution only.
bool verify_certificate(const LinearSystem& system, const RationalCertificate& certificate);

struct LpSolution {
    enum class Status { Optimal, Infeasible, Unbounded };
    Status status = Status::Infeasible;
    RationalVector point;
    Rational value;
    RationalCertificate infeasibility;
};

/// Maximizes objective . x over the system (Bland's rule, exact).
LpSolution lp_maximize(const LinearSystem& system, const RationalVector& objective);

struct AffineFunctional {
    RationalVector linear;
    Rational constant;

    Rational operator()(const RationalVector& x) const { return dot(linear, x) + constant; }
};

struct HullMembership {
    bool inside = false;
    /// Barycentric weights (inside).
    RationalVector weights;
    /// Positive on every generator, negative at the query (outside).
    AffineFunctional separator;
};

HullMembership in_hull(const RationalVector& query, const std::vector<RationalVector>& points);

bool verify_hull_weights(const RationalVector& query, const std::vector<RationalVector>& points,
                         const RationalVector& weights);

struct Separation {
    bool separated = false;
    /// z(basepoint) = -1, z < 0 on the first set, z > 0 on the second.
    AffineFunctional functional;
    /// Common point of both hulls when not separated.
    RationalVector common_point;
};

/// Strict separation of hull(negative_side) from hull(positive_side), with the
/// functional normalized to -1 at `basepoint` (which must lie in hull(negative_side)).
Separation separate(const std::vector<RationalVector>& negative_side,
                    const std::vector<RationalVector>& positive_side,
                    const RationalVector& basepoint);

bool verify_separation(const std::vector<RationalVector>& negative_side,
                       const std::vector<RationalVector>& positive_side,
                       const RationalVector& basepoint, const AffineFunctional& functional);

struct DepthResult {
    int depth = 0;
    /// u with #{p : u.(p - q) >= 0} == depth.
    RationalVector direction;
};

/// Tukey depth of `query` with respect to `config`, computed exactly.
DepthResult halfspace_depth(const RationalVector& query, const std::vector<RationalVector>& config);

}  // namespace kkmforge
