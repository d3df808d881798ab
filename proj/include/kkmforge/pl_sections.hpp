#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "kkmforge/rational.hpp"

namespace kkmforge {

/// Point of the simplex Delta(V) with V = {0, ..., size-1}.
class WeightVector {
public:
    WeightVector() = default;
    /// Throws std::invalid_argument on negative weights or a sum other than 1.
    explicit WeightVector(RationalVector weights);

    /// Indicator of vertex v.
    static WeightVector vertex(std::size_t size, std::size_t v);

    std::size_t size() const noexcept { return weights_.size(); }
    const RationalVector& weights() const noexcept { return weights_; }
    const Rational& operator[](std::size_t v) const { return weights_[v]; }
    std::vector<std::size_t> support() const;

    bool operator==(const WeightVector& other) const = default;

private:
    RationalVector weights_;
};

/// Line [t] in R[V], stored as the integer representative whose first
/// nonzero coordinate is positive and whose entries have gcd 1.
class ProjectivePoint {
public:
    /// Throws std::invalid_argument for the zero vector.
    explicit ProjectivePoint(const RationalVector& representative);

    std::size_t size() const noexcept { return coords_.size(); }
    const std::vector<Integer>& coords() const noexcept { return coords_; }
    RationalVector representative() const;

    bool operator==(const ProjectivePoint& other) const = default;

private:
    std::vector<Integer> coords_;
};

/// Members of Delta(V) with pairwise disjoint supports; codim = #V - #members.
class DisjointFamily {
public:
    /// Throws std::invalid_argument on an empty list, mismatched sizes or overlapping supports.
    explicit DisjointFamily(std::vector<WeightVector> members);

    std::size_t vertex_count() const noexcept { return members_.front().size(); }
    const std::vector<WeightVector>& members() const noexcept { return members_; }
    int codim() const noexcept { return static_cast<int>(vertex_count() - members_.size()); }

private:
    std::vector<WeightVector> members_;
};

/// Squares of the coordinates, normalized. Throws std::invalid_argument on zero.
WeightVector pi_V(const RationalVector& representative);
inline WeightVector pi_V(const ProjectivePoint& p) { return pi_V(p.representative()); }

/// Coordinatewise square root; a unit vector with nonnegative entries.
std::vector<double> sigma_V(const WeightVector& t);

struct SectionValue {
    /// Coordinates of the component orthogonal to E_T in a fixed orthonormal
    /// basis of the complement; linear, hence odd, in the representative.
    std::vector<double> value;
    /// Exact: the representative lies in E_T = span sigma_V(T).
    bool is_zero = false;
};

/// Section of d.H whose zero set projects onto Delta_T. Throws
/// std::invalid_argument when the sizes differ or the representative is zero.
SectionValue section_sT(const DisjointFamily& family, const RationalVector& representative);

/// Exact test for t in pi_V(Zero(s_T)), phrased on squares: t vanishes off the
/// union of supports and is proportional to each member on its support.
bool in_zero_image(const DisjointFamily& family, const WeightVector& t);

/// All vertex families of codimension d, followed by `count` random families.
/// Throws std::invalid_argument unless 0 <= d < vertex_count.
std::vector<DisjointFamily> sample_Sd(std::size_t vertex_count, int d, std::size_t count, std::uint64_t seed);

struct PalaisRefinement {
    /// Indices attaining the maximum.
    std::vector<std::size_t> argmax;
    /// Every J with x in U_J (at most one per cardinality), ordered by size.
    std::vector<std::vector<std::size_t>> memberships;
    bool within_bound = false;
};

/// Throws std::invalid_argument unless values are nonnegative with sum 1.
PalaisRefinement palais_refine(const RationalVector& values, std::size_t bound);

/// x in U_J straight from the definition: phi_j(x) > 0 for j in J and
/// phi_i(x) < phi_j(x) whenever i is not in J and j is.
bool in_refined_set(const RationalVector& values, const std::vector<std::size_t>& J);

/// Exact partition of unity on some parameter space.
struct PartitionOfUnity {
    std::size_t size = 0;
    std::function<RationalVector(const RationalVector&)> evaluate;
};

class GluingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Sum of line bundles xi_1..xi_n over a space covered by the supports of a
/// partition of unity, with a nowhere-zero local section of each xi_k on each set.
struct GluingProblem {
    std::size_t components = 0;
    PartitionOfUnity partition;
    /// local_section(i, k, x): value at x of the section of xi_{k+1} over set i.
    std::function<std::vector<double>(std::size_t, std::size_t, const RationalVector&)> local_section;
    double vanishing_tolerance = 1e-9;
};

struct GluedValue {
    /// s_1(x), ..., s_n(x).
    std::vector<std::vector<double>> components;
    /// (J, psi_J(x)) for every J with psi_J(x) > 0.
    std::vector<std::pair<std::vector<std::size_t>, Rational>> weights;
    PalaisRefinement refinement;
};

/// psi_J-weighted gluing s_k = sum over #J = k of psi_J s_J. Throws GluingError
/// when more than n functions are positive at x or a local section vanishes
/// where it is used.
GluedValue glue_sections(const GluingProblem& problem, const RationalVector& x);

struct GluingSample {
    Rational parameter;
    double angle = 0;
    std::vector<double> norms;
    std::vector<std::pair<std::vector<std::size_t>, Rational>> weights;
    bool disjoint = false;
    bool covered = false;
};

struct TwoArcDemo {
    std::vector<GluingSample> samples;
    double min_max_norm = 0;
    bool disjointness_holds = false;
    std::size_t resolution = 0;
};

/// RP^1 = {[cos pi s, sin pi s] : s in [0, 1)} covered by two overlapping arcs,
/// each trivializing H, with xi_1 = xi_2 = H. Samples s = j / resolution.
TwoArcDemo rp1_two_arc_demo(std::size_t resolution);

}  // namespace kkmforge
