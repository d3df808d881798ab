#include "kkmforge/pl_sections.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace kkmforge {

WeightVector::WeightVector(RationalVector weights) : weights_(std::move(weights)) {
    if (weights_.empty()) throw std::invalid_argument("weight vector: empty index set");
    Rational sum(0);
    for (const auto& w : weights_) {
        if (w < 0) throw std::invalid_argument("weight vector: negative weight");
        sum += w;
    }
    if (sum != 1) throw std::invalid_argument("weight vector: weights sum to " + format_rational(sum));
}

WeightVector WeightVector::vertex(std::size_t size, std::size_t v) {
    RationalVector w(size, Rational(0));
    w.at(v) = 1;
    return WeightVector(std::move(w));
}

std::vector<std::size_t> WeightVector::support() const {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < weights_.size(); ++v) {
        if (!weights_[v].is_zero()) out.push_back(v);
    }
    return out;
}

ProjectivePoint::ProjectivePoint(const RationalVector& representative) {
    Integer lcm(1);
    for (const auto& c : representative) {
        const Integer den = denominator(c);
        lcm = lcm / boost::multiprecision::gcd(lcm, den) * den;
    }
    Integer g(0);
    for (const auto& c : representative) {
        coords_.push_back(numerator(c) * (lcm / denominator(c)));
        g = boost::multiprecision::gcd(g, coords_.back());
    }
    if (g == 0) throw std::invalid_argument("projective point: zero vector");
    auto first = std::find_if(coords_.begin(), coords_.end(), [](const Integer& c) { return c != 0; });
    if (*first < 0) g = -g;
    for (auto& c : coords_) c /= g;
}

RationalVector ProjectivePoint::representative() const {
    RationalVector out;
    for (const auto& c : coords_) out.emplace_back(c);
    return out;
}

DisjointFamily::DisjointFamily(std::vector<WeightVector> members) : members_(std::move(members)) {
    if (members_.empty()) throw std::invalid_argument("disjoint family: no members");
    std::vector<bool> used(members_.front().size(), false);
    for (const auto& m : members_) {
        if (m.size() != used.size()) throw std::invalid_argument("disjoint family: index sets differ");
        for (std::size_t v : m.support()) {
            if (used[v]) throw std::invalid_argument("disjoint family: supports overlap");
            used[v] = true;
        }
    }
}

WeightVector pi_V(const RationalVector& representative) {
    Rational total(0);
    RationalVector squares;
    for (const auto& c : representative) {
        squares.push_back(c * c);
        total += squares.back();
    }
    if (total.is_zero()) throw std::invalid_argument("pi_V: zero vector");
    for (auto& s : squares) s /= total;
    return WeightVector(std::move(squares));
}

std::vector<double> sigma_V(const WeightVector& t) {
    std::vector<double> out;
    for (const auto& w : t.weights()) out.push_back(std::sqrt(to_double(w)));
    return out;
}

namespace {

// Orthonormal basis of the orthogonal complement of span sigma_V(T).
std::vector<std::vector<double>> complement_basis(const DisjointFamily& family) {
    const std::size_t n = family.vertex_count();
    std::vector<std::vector<double>> kept;
    for (const auto& m : family.members()) kept.push_back(sigma_V(m));
    std::vector<std::vector<double>> basis;
    const std::size_t wanted = static_cast<std::size_t>(family.codim());
    for (std::size_t e = 0; e < n && basis.size() < wanted; ++e) {
        std::vector<double> v(n, 0.0);
        v[e] = 1.0;
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& b : kept) {
                const double c = std::inner_product(v.begin(), v.end(), b.begin(), 0.0);
                for (std::size_t i = 0; i < n; ++i) v[i] -= c * b[i];
            }
        }
        const double norm = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
        if (norm < 1e-6) continue;
        for (auto& x : v) x /= norm;
        kept.push_back(v);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace

SectionValue section_sT(const DisjointFamily& family, const RationalVector& representative) {
    if (representative.size() != family.vertex_count()) throw std::invalid_argument("section_sT: dimension mismatch");
    if (std::all_of(representative.begin(), representative.end(), [](const Rational& c) { return c.is_zero(); })) {
        throw std::invalid_argument("section_sT: zero representative");
    }
    SectionValue out;
    std::vector<double> x;
    for (const auto& c : representative) x.push_back(to_double(c));
    for (const auto& b : complement_basis(family)) out.value.push_back(std::inner_product(x.begin(), x.end(), b.begin(), 0.0));

    std::vector<bool> covered(representative.size(), false);
    out.is_zero = true;
    for (const auto& m : family.members()) {
        const auto supp = m.support();
        const std::size_t ref = supp.front();
        const Rational ref_sq = representative[ref] * representative[ref];
        for (std::size_t v : supp) {
            covered[v] = true;
            const Rational sq = representative[v] * representative[v];
            if (sq * m[ref] != ref_sq * m[v] || representative[v].sign() != representative[ref].sign()) {
                out.is_zero = false;
            }
        }
    }
    for (std::size_t v = 0; v < representative.size(); ++v) {
        if (!covered[v] && !representative[v].is_zero()) out.is_zero = false;
    }
    return out;
}

bool in_zero_image(const DisjointFamily& family, const WeightVector& t) {
    if (t.size() != family.vertex_count()) throw std::invalid_argument("in_zero_image: dimension mismatch");
    std::vector<bool> covered(t.size(), false);
    for (const auto& m : family.members()) {
        const auto supp = m.support();
        const std::size_t ref = supp.front();
        for (std::size_t v : supp) {
            covered[v] = true;
            if (t[v] * m[ref] != t[ref] * m[v]) return false;
        }
    }
    for (std::size_t v = 0; v < t.size(); ++v) {
        if (!covered[v] && !t[v].is_zero()) return false;
    }
    return true;
}

std::vector<DisjointFamily> sample_Sd(std::size_t vertex_count, int d, std::size_t count, std::uint64_t seed) {
    if (d < 0 || static_cast<std::size_t>(d) >= vertex_count) {
        throw std::invalid_argument("sample_Sd: codimension out of range");
    }
    const std::size_t blocks = vertex_count - static_cast<std::size_t>(d);
    std::vector<DisjointFamily> out;
    std::vector<bool> pick(vertex_count, false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(blocks), true);
    do {
        std::vector<WeightVector> members;
        for (std::size_t v = 0; v < vertex_count; ++v) {
            if (pick[v]) members.push_back(WeightVector::vertex(vertex_count, v));
        }
        out.emplace_back(std::move(members));
    } while (std::prev_permutation(pick.begin(), pick.end()));

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> weight(1, 9);
    for (std::size_t r = 0; r < count; ++r) {
        std::uniform_int_distribution<std::size_t> support_size(blocks, vertex_count);
        std::vector<std::size_t> order(vertex_count);
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        order.resize(support_size(rng));
        std::vector<std::vector<std::size_t>> parts(blocks);
        std::uniform_int_distribution<std::size_t> block(0, blocks - 1);
        for (std::size_t i = 0; i < order.size(); ++i) parts[i < blocks ? i : block(rng)].push_back(order[i]);
        std::vector<WeightVector> members;
        for (const auto& part : parts) {
            RationalVector w(vertex_count, Rational(0));
            Rational total(0);
            for (std::size_t v : part) {
                w[v] = weight(rng);
                total += w[v];
            }
            for (auto& x : w) x /= total;
            members.emplace_back(std::move(w));
        }
        out.emplace_back(std::move(members));
    }
    return out;
}

PalaisRefinement palais_refine(const RationalVector& values, std::size_t bound) {
    Rational sum(0);
    for (const auto& v : values) {
        if (v < 0) throw std::invalid_argument("palais_refine: negative value");
        sum += v;
    }
    if (sum != 1) throw std::invalid_argument("palais_refine: values do not sum to 1");
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });

    PalaisRefinement out;
    for (std::size_t k = 1; k <= order.size(); ++k) {
        const Rational& last = values[order[k - 1]];
        if (last.is_zero()) break;
        if (k < order.size() && values[order[k]] == last) continue;
        std::vector<std::size_t> members(order.begin(), order.begin() + static_cast<long>(k));
        std::sort(members.begin(), members.end());
        if (out.memberships.empty()) out.argmax = members;
        out.memberships.push_back(std::move(members));
    }
    out.within_bound = out.argmax.size() <= bound;
    return out;
}

bool in_refined_set(const RationalVector& values, const std::vector<std::size_t>& J) {
    if (J.empty()) return false;
    for (std::size_t j : J) {
        if (values.at(j) <= 0) return false;
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (std::find(J.begin(), J.end(), i) == J.end() && values[i] >= values[j]) return false;
        }
    }
    return true;
}

GluedValue glue_sections(const GluingProblem& problem, const RationalVector& x) {
    const RationalVector phi = problem.partition.evaluate(x);
    if (phi.size() != problem.partition.size) throw std::invalid_argument("glue_sections: partition size mismatch");
    const auto positive = static_cast<std::size_t>(
        std::count_if(phi.begin(), phi.end(), [](const Rational& v) { return v > 0; }));
    if (positive > problem.components) {
        throw GluingError("glue_sections: " + std::to_string(positive) + " sets overlap at a point, more than " +
                          std::to_string(problem.components));
    }
    GluedValue out;
    out.refinement = palais_refine(phi, problem.components);

    // psi~_J = max(0, min_J phi - max_{not J} phi) is positive exactly on U_J.
    Rational total(0);
    for (const auto& J : out.refinement.memberships) {
        Rational inside = phi[J.front()];
        for (std::size_t j : J) inside = std::min(inside, phi[j]);
        Rational outside(0);
        for (std::size_t i = 0; i < phi.size(); ++i) {
            if (!std::binary_search(J.begin(), J.end(), i)) outside = std::max(outside, phi[i]);
        }
        const Rational bump = inside - outside;
        if (bump > 0) {
            out.weights.emplace_back(J, bump);
            total += bump;
        }
    }
    for (auto& w : out.weights) w.second /= total;

    out.components.assign(problem.components, {});
    for (const auto& [J, psi] : out.weights) {
        const std::size_t k = J.size() - 1;
        const auto local = problem.local_section(J.front(), k, x);
        double norm = 0;
        for (double c : local) norm += c * c;
        if (std::sqrt(norm) <= problem.vanishing_tolerance) {
            throw GluingError("glue_sections: local section of component " + std::to_string(k + 1) +
                              " vanishes on set " + std::to_string(J.front()));
        }
        auto& target = out.components[k];
        if (target.empty()) target.assign(local.size(), 0.0);
        const double scale = to_double(psi);
        for (std::size_t c = 0; c < local.size(); ++c) target[c] += scale * local[c];
    }
    return out;
}

namespace {

Rational clamp_hat(const Rational& a, const Rational& b, const Rational& cap) {
    const Rational v = std::min({a, b, cap});
    return v > 0 ? v : Rational(0);
}

}  // namespace

TwoArcDemo rp1_two_arc_demo(std::size_t resolution) {
    if (resolution == 0) throw std::invalid_argument("rp1_two_arc_demo: resolution must be positive");
    const Rational eighth = make_rational(1, 8);
    GluingProblem problem;
    problem.components = 2;
    problem.partition.size = 2;
    // Arc 1 is s in (-1/8, 5/8), arc 2 is s in (3/8, 9/8), both mod 1.
    problem.partition.evaluate = [eighth](const RationalVector& x) {
        const Rational& s = x.at(0);
        const Rational s1 = s < make_rational(3, 4) ? s : s - 1;
        const Rational s2 = s >= make_rational(1, 4) ? s : s + 1;
        const Rational g1 = clamp_hat(s1 + eighth, make_rational(5, 8) - s1, eighth);
        const Rational g2 = clamp_hat(s2 - make_rational(3, 8), make_rational(9, 8) - s2, eighth);
        const Rational total = g1 + g2;
        return RationalVector{g1 / total, g2 / total};
    };
    // Section of H over arc i: v -> (u_i . v) v with u_1, u_2 at angles pi/4, 3pi/4.
    problem.local_section = [](std::size_t set, std::size_t, const RationalVector& x) {
        const double theta = M_PI * to_double(x.at(0));
        const double phi = set == 0 ? M_PI / 4 : 3 * M_PI / 4;
        const double f = std::cos(theta - phi);
        return std::vector<double>{f * std::cos(theta), f * std::sin(theta)};
    };

    TwoArcDemo demo;
    demo.resolution = resolution;
    demo.disjointness_holds = true;
    demo.min_max_norm = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < resolution; ++j) {
        GluingSample sample;
        sample.parameter = make_rational(static_cast<long long>(j), static_cast<long long>(resolution));
        sample.angle = M_PI * to_double(sample.parameter);
        const auto glued = glue_sections(problem, {sample.parameter});
        double best = 0;
        for (const auto& comp : glued.components) {
            double sq = 0;
            for (double c : comp) sq += c * c;
            sample.norms.push_back(std::sqrt(sq));
            best = std::max(best, sample.norms.back());
        }
        sample.weights = glued.weights;
        // Every nonempty J, checked against the definition of U_J.
        const RationalVector phi = problem.partition.evaluate({sample.parameter});
        std::vector<int> per_size(phi.size() + 1, 0);
        bool any = false;
        for (unsigned mask = 1; mask < (1u << phi.size()); ++mask) {
            std::vector<std::size_t> J;
            for (std::size_t i = 0; i < phi.size(); ++i) {
                if (mask >> i & 1u) J.push_back(i);
            }
            if (in_refined_set(phi, J)) {
                any = true;
                ++per_size[J.size()];
            }
        }
        sample.disjoint = std::all_of(per_size.begin(), per_size.end(), [](int c) { return c <= 1; });
        sample.covered = any;
        demo.disjointness_holds = demo.disjointness_holds && sample.disjoint && sample.covered;
        demo.min_max_norm = std::min(demo.min_max_norm, best);
        demo.samples.push_back(std::move(sample));
    }
    return demo;
}

}  // namespace kkmforge
