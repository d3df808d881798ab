#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kkmforge/complex.hpp"
#include "kkmforge/pl_sections.hpp"
#include "kkmforge/rational.hpp"

namespace kkmforge {

/// Edgewise (Kuhn) subdivision of Delta(V) into resolution^dim cells.
/// Grid points are the compositions a of `resolution` into #V parts, t = a / N.
class SimplexGrid {
public:
    /// Throws std::invalid_argument unless vertex_count >= 1 and resolution >= 1.
    SimplexGrid(std::size_t vertex_count, int resolution);

    std::size_t vertex_count() const noexcept { return vertex_count_; }
    int dimension() const noexcept { return static_cast<int>(vertex_count_) - 1; }
    int resolution() const noexcept { return resolution_; }

    std::size_t point_count() const noexcept { return points_.size(); }
    const std::vector<int>& point(std::size_t id) const { return points_.at(id); }
    RationalVector coordinates(std::size_t id) const;
    std::optional<std::size_t> point_id(const std::vector<int>& composition) const;

    std::size_t cell_count() const noexcept { return cells_.size(); }
    /// Point ids of a top cell, in increasing id order.
    const std::vector<std::size_t>& cell(std::size_t id) const { return cells_.at(id); }
    /// Cells sharing a facet with `id`.
    const std::vector<std::size_t>& neighbours(std::size_t id) const { return adjacency_.at(id); }

    /// The subdivision as a simplicial complex whose vertices are point ids.
    SimplicialComplex complex() const;

private:
    std::size_t vertex_count_;
    int resolution_;
    std::vector<std::vector<int>> points_;
    std::map<std::vector<int>, std::size_t> point_index_;
    std::vector<std::vector<std::size_t>> cells_;
    std::vector<std::vector<std::size_t>> adjacency_;
};

/// Product of simplex grids, all at one resolution. Product cells and points
/// use mixed-radix ids with factor 0 most significant.
class GridBase {
public:
    /// Throws std::invalid_argument on an empty size list or bad entries.
    GridBase(std::vector<std::size_t> simplex_sizes, int resolution);

    const std::vector<std::size_t>& simplex_sizes() const noexcept { return sizes_; }
    int resolution() const noexcept { return resolution_; }
    std::size_t factor_count() const noexcept { return factors_.size(); }
    const SimplexGrid& factor(std::size_t l) const { return factors_.at(l); }

    std::size_t cell_count() const noexcept { return cell_count_; }
    std::size_t point_count() const noexcept { return point_count_; }
    std::vector<std::size_t> split_cell(std::size_t id) const;
    std::size_t join_cell(const std::vector<std::size_t>& factor_cells) const;
    std::vector<std::size_t> split_point(std::size_t id) const;
    std::size_t join_point(const std::vector<std::size_t>& factor_points) const;

    /// Product point ids of the corners of a product cell.
    std::vector<std::size_t> cell_points(std::size_t id) const;
    std::vector<std::size_t> neighbours(std::size_t id) const;

    /// Staircase triangulation of the product; vertices are product point ids.
    /// Each product cell maps to the top simplices listed in cell_simplices().
    SimplicialComplex triangulation() const;
    std::vector<Simplex> cell_simplices(std::size_t id) const;

private:
    std::vector<std::size_t> sizes_;
    int resolution_;
    std::vector<SimplexGrid> factors_;
    std::size_t cell_count_ = 1;
    std::size_t point_count_ = 1;
};

/// Labelled unions of closed grid cells.
class GridCover {
public:
    /// Deduplicates cell lists. Throws std::invalid_argument on out-of-range
    /// cells or, when `require_covering`, when some cell is in no set.
    GridCover(GridBase base, std::map<std::string, std::vector<std::size_t>> sets, bool require_covering = true);

    const GridBase& base() const noexcept { return base_; }
    const std::map<std::string, std::vector<std::size_t>>& sets() const noexcept { return sets_; }
    bool covers_base() const;

    /// Labels containing each grid point (closed sets, so a point lies in a
    /// set iff one of the set's cells has it as a corner).
    std::vector<std::vector<std::string>> point_labels() const;

private:
    GridBase base_;
    std::map<std::string, std::vector<std::size_t>> sets_;
};

/// Largest number of sets sharing a point. Attained at a grid point because
/// every face of a cell contains a grid point of the cell.
int multiplicity(const GridCover& cover);

/// Open cover of |K| built from a closed subcomplex cover: U_i is the union of
/// the open stars, in the barycentric subdivision, of the barycenters of the
/// faces of A_i. A point lies in U_i iff the face spanned by its largest
/// barycentric coordinates belongs to A_i, so U_i contains A_i and the
/// multiplicity of (U_i) equals the largest number of A_i sharing a face.
struct OpenCover {
    std::shared_ptr<const SimplicialComplex> complex;
    std::map<std::string, SimplicialComplex> closed_sets;
    int multiplicity = 0;

    /// Labels whose open set contains the point with the given barycentric
    /// coordinates on `simplex` (coordinates aligned with the sorted vertices).
    std::vector<std::string> labels_at(const Simplex& simplex, const RationalVector& barycentric) const;
};

/// Throws std::invalid_argument when the sets do not cover K or their closed
/// multiplicity exceeds n.
OpenCover fatten_cover(std::shared_ptr<const SimplicialComplex> complex,
                       std::map<std::string, SimplicialComplex> closed_sets, int n);

/// Grid version: triangulates the base and each set (staircase) first.
OpenCover fatten_cover(const GridCover& cover, int n);

/// Largest number of subcomplexes sharing a simplex.
int subcomplex_multiplicity(const SimplicialComplex& complex, const std::map<std::string, SimplicialComplex>& sets);

enum class Verdict { Witness, Counterexample, Inconclusive };
std::string to_string(Verdict verdict);

struct ProbeCertificate {
    std::size_t probe = 0;
    /// Cell (factor cell for product checks) meeting Delta_T.
    std::size_t cell = 0;
    RationalVector point;
    RationalVector cell_weights;
    RationalVector hull_weights;
};

struct ProbeFailure {
    std::string label;
    int factor = -1;
    std::size_t probe = 0;
};

struct HypothesisCheck {
    int multiplicity = 0;
    int bound = 0;
    bool holds = false;
};

struct SamplingParams {
    int resolution = 0;
    std::size_t vertex_probes = 0;
    std::size_t random_probes = 0;
    std::uint64_t seed = 0;
};

struct CheckReport {
    std::string check;
    Verdict verdict = Verdict::Inconclusive;
    HypothesisCheck hypothesis;
    std::string label;
    int factor = -1;
    /// Strengthened KKM: "a" (a set meets all S_d probes) or "b" (a complement component meets all S_r probes).
    std::string branch;
    std::vector<std::size_t> component_cells;
    std::vector<ProbeCertificate> certificates;
    std::vector<ProbeFailure> failures;
    /// Probe families per factor.
    std::vector<std::vector<DisjointFamily>> probes;
    SamplingParams sampling;
    std::string note;
};

/// Exact test that hull(cell_vertices) meets hull(points); with
/// `relative_interior`, the cell's relative interior must be met.
std::optional<ProbeCertificate> hulls_meet(const std::vector<RationalVector>& cell_vertices,
                                           const std::vector<RationalVector>& points, bool relative_interior = false);

/// Vertex families of S_d(V) followed by `random_count` random families.
std::vector<DisjointFamily> default_probes(std::size_t vertex_count, int d, std::size_t random_count, std::uint64_t seed);

/// Requires one factor with #V = d n + 1.
CheckReport kkm_check(const GridCover& cover, int d, int n, const std::vector<DisjointFamily>& probes);

struct FactorParams {
    int d = 1;
    int n = 1;
};

/// Requires #V_l = d_l n_l + 1 for every factor; the bound is n = sum n_l.
CheckReport lebesgue_check(const GridCover& cover, const std::vector<FactorParams>& params,
                           const std::vector<std::vector<DisjointFamily>>& probes);

/// Sets need not cover; requires one factor with #V = d n + r + 1.
CheckReport strengthened_kkm_check(const GridCover& sets, int d, int n, int r,
                                   const std::vector<DisjointFamily>& d_probes,
                                   const std::vector<DisjointFamily>& r_probes);

/// Facet-adjacency components of the cells in no set.
std::vector<std::vector<std::size_t>> complement_components(const GridCover& sets);

struct CupVanishingReport {
    enum class Outcome { ProductVanishes, NonzeroRestriction, ProductNonzero };
    Outcome outcome = Outcome::ProductVanishes;
    HypothesisCheck hypothesis;
    /// First (set, class index) whose restriction is not a coboundary.
    std::string label;
    int class_index = -1;
    /// Cycle inside the set on which the restricted class evaluates to 1.
    std::vector<Simplex> restriction_cycle;
    std::optional<Gf2Cochain> primitive;
    Gf2Cochain product;
    std::vector<Simplex> product_cycle;
};

/// Throws std::invalid_argument when the sets are not subcomplexes covering K
/// or a class is not a cocycle.
CupVanishingReport cup_vanishing_check(const SimplicialComplex& complex,
                                       const std::map<std::string, SimplicialComplex>& sets,
                                       const std::vector<Gf2Cochain>& classes);

/// Random cover of the base by unions of bands of a random linear functional,
/// with multiplicity at most `max_multiplicity` (rejection sampling).
GridCover random_band_cover(const GridBase& base, int max_multiplicity, std::uint64_t seed);

/// The closed sets {t : t(v) >= 1/#V}; resolution must be divisible by #V.
GridCover vertex_star_cover(const GridBase& base);

/// Random subcomplex cover of K grown from random facet seeds, merged until
/// the multiplicity is at most `max_multiplicity` (which must be >= 2).
std::map<std::string, SimplicialComplex> random_subcomplex_cover(const SimplicialComplex& complex,
                                                                 int max_multiplicity, std::uint64_t seed);

}  // namespace kkmforge
