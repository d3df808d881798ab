#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "kkmforge/complex.hpp"

namespace kkmforge {

/// Real line bundle given by GF(2) transition data on the edges.
class LineBundleCocycle {
public:
    /// Throws std::invalid_argument unless edge_signs is a degree-1 cocycle on `complex`.
    LineBundleCocycle(std::shared_ptr<const SimplicialComplex> complex, Gf2Cochain edge_signs);

    const std::shared_ptr<const SimplicialComplex>& complex() const noexcept { return complex_; }
    const Gf2Cochain& edge_signs() const noexcept { return edge_signs_; }

    /// Trivial bundle (all signs 0).
    static LineBundleCocycle trivial(std::shared_ptr<const SimplicialComplex> complex);

private:
    std::shared_ptr<const SimplicialComplex> complex_;
    Gf2Cochain edge_signs_;
};

/// Tautological bundle of an antipodal double cover: an edge has sign 1 iff
/// the least lifts of its endpoints are not adjacent upstairs.
LineBundleCocycle hopf_cocycle(const std::shared_ptr<const SimplicialComplex>& rpn, const QuotientMap& cover);

/// Pulls a bundle back along a simplicial vertex map source -> bundle.complex().
LineBundleCocycle pullback_bundle(const LineBundleCocycle& bundle,
                                  const std::shared_ptr<const SimplicialComplex>& source,
                                  const std::map<Vertex, Vertex>& vertex_map);

struct CohomologyClass {
    Gf2Cochain representative;
    bool nonzero = false;
    CoboundaryTest certificate;
};

CohomologyClass w1(const LineBundleCocycle& bundle);

struct EulerClassReport {
    Gf2Cochain euler_class;
    int degree = 0;
    bool nonzero = false;
    /// Set when degree exceeds the dimension, where the class vanishes for lack of simplices.
    bool beyond_dimension = false;
    std::vector<std::pair<Gf2Cochain, int>> factorization;
    CoboundaryTest certificate;
};

/// Mod-2 Euler class of a sum of line bundles with multiplicities: the cup
/// product of w1 powers, in the given factor order. Throws
/// std::invalid_argument for an empty list, negative exponents or bundles on
/// different complexes.
EulerClassReport euler_class_product(const std::vector<std::pair<LineBundleCocycle, int>>& factors);

}  // namespace kkmforge
