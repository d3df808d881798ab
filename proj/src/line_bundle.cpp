#include "kkmforge/line_bundle.hpp"

#include <algorithm>
#include <stdexcept>

namespace kkmforge {

LineBundleCocycle::LineBundleCocycle(std::shared_ptr<const SimplicialComplex> complex, Gf2Cochain edge_signs)
    : complex_(std::move(complex)), edge_signs_(std::move(edge_signs)) {
    if (!complex_) throw std::invalid_argument("line bundle: missing complex");
    if (edge_signs_.degree() != 1 || edge_signs_.values().size() != complex_->count(1)) {
        throw std::invalid_argument("line bundle: edge signs must be a 1-cochain on the complex");
    }
    if (!is_cocycle(*complex_, edge_signs_)) throw std::invalid_argument("line bundle: edge signs are not a cocycle");
}

LineBundleCocycle LineBundleCocycle::trivial(std::shared_ptr<const SimplicialComplex> complex) {
    Gf2Cochain zero(*complex, 1);
    return LineBundleCocycle(std::move(complex), std::move(zero));
}

LineBundleCocycle hopf_cocycle(const std::shared_ptr<const SimplicialComplex>& rpn, const QuotientMap& cover) {
    validate_quotient(cover);
    if (!rpn || !(*cover.target == *rpn)) throw std::invalid_argument("hopf_cocycle: cover does not map onto complex");
    std::map<Vertex, Vertex> lift;
    for (const auto& [up, down] : cover.vertex_map) {
        auto it = lift.find(down);
        if (it == lift.end() || up < it->second) lift[down] = up;
    }
    Gf2Cochain signs(*rpn, 1);
    const auto& edges = rpn->simplices(1);
    for (std::size_t i = 0; i < edges.size(); ++i) {
        Simplex upstairs{lift.at(edges[i][0]), lift.at(edges[i][1])};
        std::sort(upstairs.begin(), upstairs.end());
        if (!cover.source->contains(upstairs)) signs.values().set(i);
    }
    return LineBundleCocycle(rpn, std::move(signs));
}

LineBundleCocycle pullback_bundle(const LineBundleCocycle& bundle,
                                  const std::shared_ptr<const SimplicialComplex>& source,
                                  const std::map<Vertex, Vertex>& vertex_map) {
    return LineBundleCocycle(source, pullback(*source, *bundle.complex(), vertex_map, bundle.edge_signs()));
}

CohomologyClass w1(const LineBundleCocycle& bundle) {
    CohomologyClass out;
    out.representative = bundle.edge_signs();
    out.certificate = is_coboundary(*bundle.complex(), out.representative);
    out.nonzero = !out.certificate.is_coboundary;
    return out;
}

EulerClassReport euler_class_product(const std::vector<std::pair<LineBundleCocycle, int>>& factors) {
    if (factors.empty()) throw std::invalid_argument("euler_class_product: no factors");
    const auto& complex = factors.front().first.complex();
    for (const auto& [bundle, exponent] : factors) {
        if (exponent < 0) throw std::invalid_argument("euler_class_product: negative exponent");
        if (bundle.complex() != complex && !(*bundle.complex() == *complex)) {
            throw std::invalid_argument("euler_class_product: bundles live on different complexes");
        }
    }
    EulerClassReport report;
    // Unit class: constant 1 in degree 0.
    Gf2Cochain product(*complex, 0);
    for (std::size_t i = 0; i < complex->count(0); ++i) product.values().set(i);
    for (const auto& [bundle, exponent] : factors) {
        report.factorization.emplace_back(bundle.edge_signs(), exponent);
        for (int e = 0; e < exponent; ++e) product = cup_product(*complex, product, bundle.edge_signs());
        report.degree += exponent;
    }
    report.beyond_dimension = product.beyond_dimension();
    report.certificate = is_coboundary(*complex, product);
    report.nonzero = !report.certificate.is_coboundary;
    report.euler_class = std::move(product);
    return report;
}

}  // namespace kkmforge
