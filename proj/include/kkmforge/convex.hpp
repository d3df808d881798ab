#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kkmforge/covers.hpp"
#include "kkmforge/lp.hpp"
#include "kkmforge/rational.hpp"

namespace kkmforge {

struct Centerpoint {
    RationalVector point;
    int required_depth = 0;
    DepthResult depth;
    /// "critical-halfspaces", or "cutting-planes" when depth cuts were needed.
    std::string method;
};

/// Point of depth >= ceil(N / (d + 1)), certified by halfspace_depth.
/// Throws std::invalid_argument outside 1 <= N <= 16, 1 <= d <= 3.
Centerpoint centerpoint(const std::vector<RationalVector>& config);

/// Piecewise-linear map on a grid base, given by its values at grid points.
struct GridMap {
    GridBase base;
    /// Indexed by product point id.
    std::vector<RationalVector> values;
};

struct CentralPointReport {
    bool found = false;
    int factor = -1;
    RationalVector point;
    /// Exact mode: a certified common point of the images. Otherwise z is within
    /// `tolerance` (an upper bound on Euclidean distance) of every probed image.
    bool exact = false;
    double tolerance = 0;
    int resolution = 0;
    std::size_t probe_count = 0;
    /// Squared distance from z to the nearest pushed-forward cell corner, per probe.
    std::vector<Rational> squared_gaps;
};

/// Looks for l and z near every g(... x Delta_T x ...) with T in the factor-l
/// probes. Requires #V_l = d_l n_l + 1 and D < n = sum n_l (throws
/// std::invalid_argument otherwise). With one factor at resolution 1 the map is
/// affine and the check is an exact LP.
CentralPointReport central_point_check(const GridMap& map, const std::vector<FactorParams>& params,
                                       const std::vector<std::vector<DisjointFamily>>& probes);

/// Convex set given by a point list (hull) or by a linear system.
struct ConvexSet {
    std::vector<RationalVector> points;
    std::optional<LinearSystem> system;

    static ConvexSet hull(std::vector<RationalVector> points);
    static ConvexSet polyhedron(LinearSystem system);
    bool contains(const RationalVector& x) const;
};

enum class TheoremStatus { Conclusion, HypothesisViolated, DimensionRefused, NoConclusion };
std::string to_string(TheoremStatus status);

struct HellyResult {
    TheoremStatus status = TheoremStatus::NoConclusion;
    /// Color (0-based) whose sets share `point`.
    int color = -1;
    RationalVector point;
    std::size_t tuples_checked = 0;
    /// Colorful choice with empty intersection and its Farkas certificate.
    std::vector<std::size_t> violating_tuple;
    RationalCertificate infeasibility;
};

/// Variables: the point (first `dim`), then hull weights set by set.
LinearSystem intersection_system(const std::vector<const ConvexSet*>& sets, std::size_t dim);

/// Common point of a family of convex sets (LP over intersection_system), with
/// a Farkas certificate on failure.
RationalCertificate intersect_sets(const std::vector<const ConvexSet*>& sets, std::size_t dim);

HellyResult colorful_helly(const std::vector<std::vector<ConvexSet>>& classes, std::size_t dim);

struct BaranyResult {
    TheoremStatus status = TheoremStatus::NoConclusion;
    int color = -1;
    /// -1 at the basepoint, negative on K, positive on the chosen class.
    AffineFunctional functional;
    std::size_t tuples_checked = 0;
    /// Colorful choice whose hull meets K, with a common point and weights on the tuple.
    std::vector<std::size_t> violating_tuple;
    RationalVector common_point;
    RationalVector tuple_weights;
};

/// With `enforce_dimension`, refuses dim >= m.
BaranyResult barany_dual(const std::vector<RationalVector>& k_points,
                         const std::vector<std::vector<RationalVector>>& classes, std::size_t dim,
                         bool enforce_dimension = true);

struct TverbergInstance {
    int r = 1;
    std::size_t dim = 0;
    /// images[l][s] lists phi_{l,s}(V_{l,s}).
    std::vector<std::vector<std::vector<RationalVector>>> images;
    /// Linear form equal to 1 on every image, when present.
    std::optional<RationalVector> alpha;
};

/// Throws std::invalid_argument on shape errors, empty V_{l,s} or an alpha
/// that is not 1 on some image.
void validate_instance(const TverbergInstance& instance);

struct TverbergWitness {
    /// parts[s] = I_s (0-based colors).
    std::vector<std::vector<std::size_t>> parts;
    /// For color l: its part s_l and the index of v_l in V_{l,s_l}.
    std::vector<std::size_t> part_of;
    std::vector<std::size_t> chosen;
    RationalVector lambda;
    RationalVector common;
};

bool verify_witness(const TverbergInstance& instance, const TverbergWitness& witness);

struct LiftedClasses {
    std::size_t dim = 0;
    std::vector<std::vector<RationalVector>> points;
    /// origin[l][j] = (s, index in V_{l,s}) of points[l][j].
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> origin;
};

/// [e_s] (x) x in the basis [e_1], ..., [e_r] of L_r, with [e_0] = -sum [e_s].
RationalVector lift_vector(int r, std::size_t s, const RationalVector& x);
LiftedClasses sarkaria_lift(const TverbergInstance& instance);

struct TverbergReport {
    enum class Status { Witness, HypothesisViolated, Inconclusive };
    Status status = Status::Inconclusive;
    bool below_threshold = false;
    std::string violation;
    std::optional<TverbergWitness> sarkaria;
    std::optional<TverbergWitness> brute_force;
    bool paths_agree = false;
    std::size_t tuples_checked = 0;
    std::size_t partitions_checked = 0;
};
std::string to_string(TverbergReport::Status status);

/// Checks the hypotheses (a nonzero vector in every cone of phi_{l,s}(V_{l,s})
/// over s; 0 outside each single-part colorful hull), then searches both through
/// the lift (Barany dual with K = {0}) and by brute force over partitions.
TverbergReport generalized_tverberg(const TverbergInstance& instance);

/// Classical instance: points lifted by an appended 1, alpha = last coordinate.
TverbergInstance tverberg_instance(const std::vector<RationalVector>& points, int r);
TverbergReport tverberg_partition(const std::vector<RationalVector>& points, int r);

}  // namespace kkmforge
