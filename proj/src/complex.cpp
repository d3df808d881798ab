#include "kkmforge/complex.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

namespace kkmforge {

namespace {

const std::vector<Simplex> kNoSimplices;

std::string simplex_str(const Simplex& s) {
    std::string out = "[";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s[i]);
    }
    return out + "]";
}

}  // namespace

std::vector<Simplex> faces_of_size(const Simplex& s, std::size_t size) {
    std::vector<Simplex> out;
    if (size == 0 || size > s.size()) return out;
    std::vector<bool> pick(s.size(), false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(size), true);
    do {
        Simplex f;
        f.reserve(size);
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (pick[i]) f.push_back(s[i]);
        }
        out.push_back(std::move(f));
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return out;
}

SimplicialComplex SimplicialComplex::from_facets(std::vector<std::vector<Vertex>> facets) {
    if (facets.empty()) throw std::invalid_argument("build_complex: empty facet list");
    std::vector<std::set<Simplex>> levels;
    for (auto& f : facets) {
        if (f.empty()) throw std::invalid_argument("build_complex: empty facet");
        std::sort(f.begin(), f.end());
        if (std::adjacent_find(f.begin(), f.end()) != f.end()) {
            throw std::invalid_argument("build_complex: duplicate vertex in facet " + simplex_str(f));
        }
        if (levels.size() < f.size()) levels.resize(f.size());
        if (levels[f.size() - 1].count(f)) continue;
        for (std::size_t size = 1; size <= f.size(); ++size) {
            for (auto& face : faces_of_size(f, size)) levels[size - 1].insert(std::move(face));
        }
    }
    SimplicialComplex out;
    out.by_dim_.reserve(levels.size());
    out.index_.resize(levels.size());
    for (std::size_t k = 0; k < levels.size(); ++k) {
        out.by_dim_.emplace_back(levels[k].begin(), levels[k].end());
        for (std::size_t i = 0; i < out.by_dim_[k].size(); ++i) out.index_[k].emplace(out.by_dim_[k][i], i);
    }
    for (const auto& v : out.by_dim_[0]) out.vertices_.push_back(v[0]);
    return out;
}

const std::vector<Simplex>& SimplicialComplex::simplices(int k) const {
    if (k < 0 || k > dimension()) return kNoSimplices;
    return by_dim_[static_cast<std::size_t>(k)];
}

std::optional<std::size_t> SimplicialComplex::index_of(const Simplex& s) const {
    if (s.empty() || s.size() > by_dim_.size()) return std::nullopt;
    const auto& idx = index_[s.size() - 1];
    auto it = idx.find(s);
    if (it == idx.end()) return std::nullopt;
    return it->second;
}

std::vector<Simplex> SimplicialComplex::facets() const {
    std::vector<Simplex> out;
    for (int k = 0; k <= dimension(); ++k) {
        for (const auto& s : simplices(k)) {
            bool maximal = true;
            if (k < dimension()) {
                // s is maximal iff no (k+1)-simplex contains it.
                for (Vertex v : vertices_) {
                    if (std::binary_search(s.begin(), s.end(), v)) continue;
                    Simplex t = s;
                    t.insert(std::upper_bound(t.begin(), t.end(), v), v);
                    if (contains(t)) {
                        maximal = false;
                        break;
                    }
                }
            }
            if (maximal) out.push_back(s);
        }
    }
    return out;
}

std::vector<std::size_t> SimplicialComplex::f_vector() const {
    std::vector<std::size_t> out;
    for (const auto& level : by_dim_) out.push_back(level.size());
    return out;
}

long SimplicialComplex::euler_characteristic() const {
    long chi = 0;
    for (std::size_t k = 0; k < by_dim_.size(); ++k) {
        chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(by_dim_[k].size());
    }
    return chi;
}

Gf2Cochain::Gf2Cochain(const SimplicialComplex& complex, int degree)
    : degree_(degree), beyond_(degree > complex.dimension()), values_(complex.count(degree)) {
    if (degree < 0) throw std::invalid_argument("Gf2Cochain: negative degree");
}

Gf2Cochain Gf2Cochain::from_support(const SimplicialComplex& complex, int degree,
                                    const std::vector<Simplex>& support) {
    Gf2Cochain c(complex, degree);
    for (auto s : support) {
        std::sort(s.begin(), s.end());
        if (s.size() != static_cast<std::size_t>(degree) + 1) {
            throw std::invalid_argument("cochain support " + simplex_str(s) + " has wrong degree");
        }
        auto idx = complex.index_of(s);
        if (!idx) throw std::invalid_argument("cochain support " + simplex_str(s) + " not in complex");
        c.values_.flip(*idx);
    }
    return c;
}

bool Gf2Cochain::value(const SimplicialComplex& complex, const Simplex& s) const {
    if (s.size() != static_cast<std::size_t>(degree_) + 1) return false;
    auto idx = complex.index_of(s);
    return idx && values_.test(*idx);
}

std::vector<Simplex> Gf2Cochain::support(const SimplicialComplex& complex) const {
    std::vector<Simplex> out;
    const auto& simplices = complex.simplices(degree_);
    for (std::size_t i : values_.ones()) out.push_back(simplices[i]);
    return out;
}

Gf2Cochain& Gf2Cochain::operator+=(const Gf2Cochain& other) {
    if (other.degree_ != degree_) throw std::invalid_argument("Gf2Cochain: degree mismatch");
    values_ ^= other.values_;
    return *this;
}

Gf2Cochain operator+(Gf2Cochain a, const Gf2Cochain& b) {
    a += b;
    return a;
}

namespace {

// delta(e_s) for a k-simplex s, as a vector over (k+1)-simplices.
BitVector coboundary_of_simplex(const SimplicialComplex& K, const Simplex& s,
                                const std::vector<std::vector<std::size_t>>& cofaces_index,
                                std::size_t idx) {
    BitVector out(K.count(static_cast<int>(s.size())));
    for (std::size_t t : cofaces_index[idx]) out.set(t);
    return out;
}

// For each k-simplex, the indices of the (k+1)-simplices that contain it.
std::vector<std::vector<std::size_t>> cofaces(const SimplicialComplex& K, int k) {
    std::vector<std::vector<std::size_t>> out(K.count(k));
    const auto& upper = K.simplices(k + 1);
    for (std::size_t t = 0; t < upper.size(); ++t) {
        for (const auto& f : faces_of_size(upper[t], static_cast<std::size_t>(k) + 1)) {
            out[*K.index_of(f)].push_back(t);
        }
    }
    return out;
}

Gf2Reducer coboundary_reducer(const SimplicialComplex& K, int k) {
    // Generators: delta(e_t) for (k-1)-simplices t, living in C^k.
    const std::size_t gens = k >= 1 ? K.count(k - 1) : 0;
    Gf2Reducer reducer(K.count(k), gens);
    if (k >= 1) {
        const auto co = cofaces(K, k - 1);
        const auto& lower = K.simplices(k - 1);
        for (std::size_t t = 0; t < lower.size(); ++t) {
            reducer.insert(coboundary_of_simplex(K, lower[t], co, t), t);
        }
    }
    return reducer;
}

}  // namespace

Gf2Cochain coboundary(const SimplicialComplex& K, const Gf2Cochain& c) {
    Gf2Cochain out(K, c.degree() + 1);
    if (c.beyond_dimension()) return out;
    const auto& upper = K.simplices(c.degree() + 1);
    for (std::size_t t = 0; t < upper.size(); ++t) {
        bool v = false;
        for (const auto& f : faces_of_size(upper[t], static_cast<std::size_t>(c.degree()) + 1)) {
            if (c.values().test(*K.index_of(f))) v = !v;
        }
        if (v) out.values().set(t);
    }
    return out;
}

bool is_cocycle(const SimplicialComplex& K, const Gf2Cochain& c) { return coboundary(K, c).is_zero(); }

CohomologyBasis cohomology_basis(const SimplicialComplex& K, int k) {
    if (k < 0 || k > K.dimension()) {
        throw std::invalid_argument("cohomology_basis: degree " + std::to_string(k) + " out of range");
    }
    const std::size_t n = K.count(k);
    // Cocycles: dependencies among delta(e_s).
    std::vector<BitVector> cocycles;
    {
        const auto co = cofaces(K, k);
        Gf2Reducer kernel(K.count(k + 1), n);
        const auto& simplices = K.simplices(k);
        for (std::size_t s = 0; s < n; ++s) {
            BitVector dep;
            if (!kernel.insert(coboundary_of_simplex(K, simplices[s], co, s), s, &dep)) {
                cocycles.push_back(std::move(dep));
            }
        }
    }
    const std::size_t lower = k >= 1 ? K.count(k - 1) : 0;
    Gf2Reducer quotient(n, lower + cocycles.size());
    if (k >= 1) {
        const auto co = cofaces(K, k - 1);
        const auto& low = K.simplices(k - 1);
        for (std::size_t t = 0; t < lower; ++t) quotient.insert(coboundary_of_simplex(K, low[t], co, t), t);
    }
    CohomologyBasis out;
    for (std::size_t i = 0; i < cocycles.size(); ++i) {
        if (quotient.insert(cocycles[i], lower + i)) {
            Gf2Cochain rep(K, k);
            rep.values() = cocycles[i];
            out.basis.push_back(std::move(rep));
        }
    }
    out.betti = static_cast<int>(out.basis.size());
    return out;
}

Gf2Cochain cup_product(const SimplicialComplex& K, const Gf2Cochain& a, const Gf2Cochain& b) {
    const int p = a.degree();
    const int q = b.degree();
    Gf2Cochain out(K, p + q);
    if (out.beyond_dimension()) return out;
    if (a.values().size() != K.count(p) || b.values().size() != K.count(q)) {
        throw std::invalid_argument("cup_product: cochain does not match complex");
    }
    const auto& simplices = K.simplices(p + q);
    for (std::size_t i = 0; i < simplices.size(); ++i) {
        const Simplex& s = simplices[i];
        const Simplex front(s.begin(), s.begin() + p + 1);
        if (!a.values().test(*K.index_of(front))) continue;
        const Simplex back(s.begin() + p, s.end());
        if (b.values().test(*K.index_of(back))) out.values().set(i);
    }
    return out;
}

CoboundaryTest is_coboundary(const SimplicialComplex& K, const Gf2Cochain& c) {
    if (c.values().size() != K.count(c.degree())) {
        throw std::invalid_argument("is_coboundary: cochain does not match complex");
    }
    if (!is_cocycle(K, c)) throw std::invalid_argument("is_coboundary: cochain is not a cocycle");
    CoboundaryTest out;
    const int k = c.degree();
    if (c.beyond_dimension() || c.is_zero()) {
        out.is_coboundary = true;
        if (k >= 1) out.primitive = Gf2Cochain(K, k - 1);
        return out;
    }
    const Gf2Reducer reducer = coboundary_reducer(K, k);
    BitVector witness;
    auto solution = reducer.solve(c.values(), &witness);
    if (solution) {
        out.is_coboundary = true;
        Gf2Cochain u(K, k - 1);
        u.values() = std::move(*solution);
        out.primitive = std::move(u);
        return out;
    }
    const auto& simplices = K.simplices(k);
    for (std::size_t i : witness.ones()) out.cycle_witness.push_back(simplices[i]);
    return out;
}

bool is_cycle(const SimplicialComplex& K, const std::vector<Simplex>& chain) {
    if (chain.empty()) return true;
    const std::size_t size = chain.front().size();
    std::map<Simplex, bool> boundary;
    for (const auto& s : chain) {
        if (s.size() != size || !K.contains(s)) return false;
        if (size == 1) continue;
        for (auto& f : faces_of_size(s, size - 1)) boundary[f] = !boundary[f];
    }
    return std::none_of(boundary.begin(), boundary.end(), [](const auto& e) { return e.second; });
}

bool is_subcomplex(const SimplicialComplex& K, const SimplicialComplex& sub) {
    for (int k = 0; k <= sub.dimension(); ++k) {
        for (const auto& s : sub.simplices(k)) {
            if (!K.contains(s)) return false;
        }
    }
    return true;
}

Gf2Cochain restrict_cochain(const SimplicialComplex& K, const SimplicialComplex& sub, const Gf2Cochain& c) {
    if (!is_subcomplex(K, sub)) throw std::invalid_argument("restrict_cochain: not a subcomplex");
    Gf2Cochain out(sub, c.degree());
    const auto& simplices = sub.simplices(c.degree());
    for (std::size_t i = 0; i < simplices.size(); ++i) {
        if (c.values().test(*K.index_of(simplices[i]))) out.values().set(i);
    }
    return out;
}

Gf2Cochain pullback(const SimplicialComplex& source, const SimplicialComplex& target,
                    const std::map<Vertex, Vertex>& vertex_map, const Gf2Cochain& c) {
    Gf2Cochain out(source, c.degree());
    const auto& simplices = source.simplices(c.degree());
    for (std::size_t i = 0; i < simplices.size(); ++i) {
        Simplex image;
        image.reserve(simplices[i].size());
        for (Vertex v : simplices[i]) {
            auto it = vertex_map.find(v);
            if (it == vertex_map.end()) throw std::invalid_argument("pullback: vertex map is not total");
            image.push_back(it->second);
        }
        std::sort(image.begin(), image.end());
        if (std::adjacent_find(image.begin(), image.end()) != image.end()) continue;
        auto idx = target.index_of(image);
        if (!idx) throw std::invalid_argument("pullback: vertex map is not simplicial");
        if (c.values().test(*idx)) out.values().set(i);
    }
    return out;
}

ProductComplex product_complex(const SimplicialComplex& left, const SimplicialComplex& right) {
    const auto& lv = left.vertices();
    const auto& rv = right.vertices();
    if (lv.empty() || rv.empty()) throw std::invalid_argument("product_complex: empty factor");
    std::map<Vertex, Vertex> lpos, rpos;
    for (std::size_t i = 0; i < lv.size(); ++i) lpos[lv[i]] = static_cast<Vertex>(i);
    for (std::size_t i = 0; i < rv.size(); ++i) rpos[rv[i]] = static_cast<Vertex>(i);
    const Vertex width = static_cast<Vertex>(rv.size());

    ProductComplex out;
    std::vector<std::vector<Vertex>> facets;
    for (const auto& s : left.facets()) {
        for (const auto& t : right.facets()) {
            const std::size_t p = s.size() - 1;
            const std::size_t q = t.size() - 1;
            // Lattice paths: false = advance in s, true = advance in t.
            std::vector<bool> moves(p + q, false);
            std::fill(moves.begin() + static_cast<long>(p), moves.end(), true);
            do {
                std::size_t i = 0, j = 0;
                std::vector<Vertex> simplex{lpos[s[0]] * width + rpos[t[0]]};
                for (bool up : moves) {
                    (up ? j : i) += 1;
                    simplex.push_back(lpos[s[i]] * width + rpos[t[j]]);
                }
                facets.push_back(std::move(simplex));
            } while (std::next_permutation(moves.begin(), moves.end()));
        }
    }
    out.complex = SimplicialComplex::from_facets(std::move(facets));
    for (Vertex v : out.complex.vertices()) {
        out.to_left[v] = lv[static_cast<std::size_t>(v / width)];
        out.to_right[v] = rv[static_cast<std::size_t>(v % width)];
    }
    return out;
}

void validate_quotient(const QuotientMap& cover) {
    if (!cover.source || !cover.target) throw std::invalid_argument("quotient: missing complex");
    const auto& src = *cover.source;
    const auto& tgt = *cover.target;
    for (Vertex v : src.vertices()) {
        auto d = cover.deck.find(v);
        if (d == cover.deck.end()) throw std::invalid_argument("quotient: deck is not total");
        if (d->second == v) throw std::invalid_argument("quotient: deck has a fixed vertex");
        auto back = cover.deck.find(d->second);
        if (back == cover.deck.end() || back->second != v) {
            throw std::invalid_argument("quotient: deck is not an involution");
        }
        auto m = cover.vertex_map.find(v);
        auto md = cover.vertex_map.find(d->second);
        if (m == cover.vertex_map.end() || md == cover.vertex_map.end() || m->second != md->second) {
            throw std::invalid_argument("quotient: vertex map does not identify deck orbits");
        }
    }
    // Orbits are exactly the fibres.
    std::map<Vertex, int> fibre;
    for (Vertex v : src.vertices()) ++fibre[cover.vertex_map.at(v)];
    for (Vertex w : tgt.vertices()) {
        if (fibre[w] != 2) throw std::invalid_argument("quotient: fibre size is not 2");
    }
    if (fibre.size() != tgt.vertices().size()) throw std::invalid_argument("quotient: map not onto target");
    for (int k = 0; k <= src.dimension(); ++k) {
        for (const auto& s : src.simplices(k)) {
            Simplex image, flipped;
            for (Vertex v : s) {
                image.push_back(cover.vertex_map.at(v));
                flipped.push_back(cover.deck.at(v));
            }
            std::sort(image.begin(), image.end());
            std::sort(flipped.begin(), flipped.end());
            if (std::adjacent_find(image.begin(), image.end()) != image.end() || !tgt.contains(image)) {
                throw std::invalid_argument("quotient: image of " + simplex_str(s) + " is not a simplex");
            }
            if (!src.contains(flipped)) throw std::invalid_argument("quotient: deck is not simplicial");
            if (flipped == s) throw std::invalid_argument("quotient: deck fixes a simplex");
        }
    }
}

ProjectiveSpace projective_space(int n, int max_dimension) {
    if (n < 1) throw std::invalid_argument("projective_space: n must be >= 1");
    if (n > max_dimension) {
        throw std::invalid_argument("projective_space: n = " + std::to_string(n) +
                                    " exceeds the configured budget " + std::to_string(max_dimension));
    }
    // Cross-polytope vertices: bit 2i is +e_i, bit 2i+1 is -e_i.
    const int coords = n + 1;
    std::vector<unsigned> faces;
    for (unsigned mask = 1; mask < (1u << (2 * coords)); ++mask) {
        bool ok = true;
        for (int i = 0; i < coords && ok; ++i) {
            if ((mask >> (2 * i) & 3u) == 3u) ok = false;
        }
        if (ok) faces.push_back(mask);
    }
    std::sort(faces.begin(), faces.end(), [](unsigned a, unsigned b) {
        const int pa = std::popcount(a), pb = std::popcount(b);
        return pa != pb ? pa < pb : a < b;
    });
    std::map<unsigned, Vertex> face_id;
    for (std::size_t i = 0; i < faces.size(); ++i) face_id[faces[i]] = static_cast<Vertex>(i);
    auto antipode = [coords](unsigned mask) {
        unsigned out = 0;
        for (int i = 0; i < coords; ++i) {
            const unsigned pair = mask >> (2 * i) & 3u;
            const unsigned swapped = ((pair & 1u) << 1) | (pair >> 1);
            out |= swapped << (2 * i);
        }
        return out;
    };

    // Maximal chains: a facet (sign choice per coordinate) and an order of its vertices.
    std::vector<std::vector<Vertex>> sphere_facets;
    for (unsigned signs = 0; signs < (1u << coords); ++signs) {
        std::vector<unsigned> bits;
        for (int i = 0; i < coords; ++i) bits.push_back(1u << (2 * i + ((signs >> i) & 1u)));
        std::vector<int> order(static_cast<std::size_t>(coords));
        std::iota(order.begin(), order.end(), 0);
        do {
            std::vector<Vertex> chain;
            unsigned acc = 0;
            for (int idx : order) {
                acc |= bits[static_cast<std::size_t>(idx)];
                chain.push_back(face_id.at(acc));
            }
            sphere_facets.push_back(std::move(chain));
        } while (std::next_permutation(order.begin(), order.end()));
    }

    auto sphere = std::make_shared<SimplicialComplex>(SimplicialComplex::from_facets(sphere_facets));
    QuotientMap cover;
    cover.source = sphere;
    std::map<Vertex, Vertex> orbit_rep;
    for (unsigned f : faces) {
        const Vertex a = face_id.at(f);
        const Vertex b = face_id.at(antipode(f));
        cover.deck[a] = b;
        orbit_rep[a] = std::min(a, b);
    }
    std::map<Vertex, Vertex> rep_to_target;
    for (const auto& [v, rep] : orbit_rep) {
        if (!rep_to_target.count(rep)) {
            const Vertex next = static_cast<Vertex>(rep_to_target.size());
            rep_to_target[rep] = next;
        }
    }
    for (const auto& [v, rep] : orbit_rep) cover.vertex_map[v] = rep_to_target.at(rep);
    std::vector<std::vector<Vertex>> target_facets;
    for (const auto& f : sphere_facets) {
        std::vector<Vertex> image;
        for (Vertex v : f) image.push_back(cover.vertex_map.at(v));
        target_facets.push_back(std::move(image));
    }
    auto rpn = std::make_shared<SimplicialComplex>(SimplicialComplex::from_facets(std::move(target_facets)));
    cover.target = rpn;
    validate_quotient(cover);
    return ProjectiveSpace{rpn, std::move(cover)};
}

}  // namespace kkmforge
