#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "kkmforge/gf2.hpp"

namespace kkmforge {

using Vertex = std::int64_t;
/// Strictly increasing vertex tuple.
using Simplex = std::vector<Vertex>;

/// Finite abstract simplicial complex, closed under nonempty faces. Vertices
/// are ordered by identifier; that order drives every order-dependent formula
/// (cup products, staircase products).
class SimplicialComplex {
public:
    /// Downward closure of `facets`. Throws std::invalid_argument on an empty
    /// facet list, an empty facet or a repeated vertex inside a facet.
    static SimplicialComplex from_facets(std::vector<std::vector<Vertex>> facets);

    int dimension() const noexcept { return static_cast<int>(by_dim_.size()) - 1; }
    const std::vector<Vertex>& vertices() const noexcept { return vertices_; }

    /// k-simplices in lexicographic order; empty for k outside [0, dim].
    const std::vector<Simplex>& simplices(int k) const;
    std::size_t count(int k) const { return simplices(k).size(); }
    std::optional<std::size_t> index_of(const Simplex& s) const;
    bool contains(const Simplex& s) const { return index_of(s).has_value(); }

    /// Maximal simplices, ordered by dimension then lexicographically.
    std::vector<Simplex> facets() const;
    std::vector<std::size_t> f_vector() const;
    long euler_characteristic() const;

    bool operator==(const SimplicialComplex& other) const { return by_dim_ == other.by_dim_; }

private:
    std::vector<std::vector<Simplex>> by_dim_;
    std::vector<std::map<Simplex, std::size_t>> index_;
    std::vector<Vertex> vertices_;
};

/// All nonempty faces of `s` of the given size.
std::vector<Simplex> faces_of_size(const Simplex& s, std::size_t size);

/// GF(2) cochain. Values are indexed by the ambient complex's k-simplex order.
class Gf2Cochain {
public:
    Gf2Cochain() = default;
    /// Zero cochain of the given degree. Degrees above dim K are allowed and
    /// carry no values (see beyond_dimension()).
    Gf2Cochain(const SimplicialComplex& complex, int degree);

    /// Throws std::invalid_argument if a support simplex is not a k-simplex.
    static Gf2Cochain from_support(const SimplicialComplex& complex, int degree,
                                   const std::vector<Simplex>& support);

    int degree() const noexcept { return degree_; }
    bool beyond_dimension() const noexcept { return beyond_; }
    const BitVector& values() const noexcept { return values_; }
    BitVector& values() noexcept { return values_; }

    bool value(const SimplicialComplex& complex, const Simplex& s) const;
    bool is_zero() const noexcept { return values_.none(); }
    std::vector<Simplex> support(const SimplicialComplex& complex) const;

    Gf2Cochain& operator+=(const Gf2Cochain& other);
    bool operator==(const Gf2Cochain& other) const {
        return degree_ == other.degree_ && values_ == other.values_;
    }

private:
    int degree_ = 0;
    bool beyond_ = false;
    BitVector values_;
};

Gf2Cochain operator+(Gf2Cochain a, const Gf2Cochain& b);

Gf2Cochain coboundary(const SimplicialComplex& complex, const Gf2Cochain& c);
bool is_cocycle(const SimplicialComplex& complex, const Gf2Cochain& c);

struct CohomologyBasis {
    int betti = 0;
    std::vector<Gf2Cochain> basis;
};

/// dim H^k(K; Z/2) with cocycle representatives of a basis.
CohomologyBasis cohomology_basis(const SimplicialComplex& complex, int degree);

/// Ordered Alexander-Whitney product:
/// (a u b)(v0..v_{p+q}) = a(v0..vp) * b(vp..v_{p+q}).
/// A result degree above dim K yields the zero cochain with beyond_dimension().
Gf2Cochain cup_product(const SimplicialComplex& complex, const Gf2Cochain& a, const Gf2Cochain& b);

struct CoboundaryTest {
    bool is_coboundary = false;
    /// u with delta(u) = c (degree k-1); empty for k = 0.
    std::optional<Gf2Cochain> primitive;
    /// Mod-2 k-cycle z with c(z) = 1, proving c is not a coboundary.
    std::vector<Simplex> cycle_witness;
};

/// Throws std::invalid_argument when c is not a cocycle.
CoboundaryTest is_coboundary(const SimplicialComplex& complex, const Gf2Cochain& c);

/// True iff `chain` (a set of k-simplices) has zero mod-2 boundary.
bool is_cycle(const SimplicialComplex& complex, const std::vector<Simplex>& chain);

/// Values of c on the simplices of the subcomplex. Throws std::invalid_argument
/// if some simplex of `sub` is not in `complex`.
Gf2Cochain restrict_cochain(const SimplicialComplex& complex, const SimplicialComplex& sub,
                            const Gf2Cochain& c);

bool is_subcomplex(const SimplicialComplex& complex, const SimplicialComplex& sub);

/// Pulls c back along a simplicial vertex map source -> target. Simplices that
/// collapse get value 0.
Gf2Cochain pullback(const SimplicialComplex& source, const SimplicialComplex& target,
                    const std::map<Vertex, Vertex>& vertex_map, const Gf2Cochain& c);

struct ProductComplex {
    SimplicialComplex complex;
    /// Vertex (v, w) is encoded as index(v) * |L| + index(w).
    std::map<Vertex, Vertex> to_left;
    std::map<Vertex, Vertex> to_right;
};

/// Staircase triangulation of |K| x |L| keyed to the vertex orders.
ProductComplex product_complex(const SimplicialComplex& left, const SimplicialComplex& right);

/// Antipodal double cover of a triangulated sphere onto its quotient.
struct QuotientMap {
    std::shared_ptr<const SimplicialComplex> source;
    std::shared_ptr<const SimplicialComplex> target;
    std::map<Vertex, Vertex> vertex_map;
    std::map<Vertex, Vertex> deck;
};

/// Throws std::invalid_argument describing the first violated invariant.
void validate_quotient(const QuotientMap& cover);

struct ProjectiveSpace {
    std::shared_ptr<const SimplicialComplex> complex;
    QuotientMap cover;
};

/// RP^n as the antipodal quotient of the barycentric subdivision of the
/// boundary of the (n+1)-dimensional cross-polytope. Throws
/// std::invalid_argument for n < 1 or n > max_dimension.
ProjectiveSpace projective_space(int n, int max_dimension = 4);

}  // namespace kkmforge
