#include "kkmforge/convex.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <stdexcept>

#include "kkmforge/parallel.hpp"

namespace kkmforge {

namespace {

constexpr std::size_t kEnumerationLimit = 50'000'000;

std::size_t product_of(const std::vector<std::size_t>& radices) {
    std::size_t total = 1;
    for (std::size_t r : radices) {
        if (r == 0) return 0;
        if (total > kEnumerationLimit / r) throw std::invalid_argument("enumeration too large");
        total *= r;
    }
    return total;
}

// Mixed radix with the first digit most significant.
std::vector<std::size_t> decode(std::size_t index, const std::vector<std::size_t>& radices) {
    std::vector<std::size_t> out(radices.size());
    for (std::size_t i = radices.size(); i-- > 0;) {
        out[i] = index % radices[i];
        index /= radices[i];
    }
    return out;
}

// Lowest index in [0, total) accepted by `test`, evaluated in parallel blocks.
std::optional<std::size_t> first_hit(std::size_t total, const std::function<bool(std::size_t)>& test) {
    const std::size_t block = 32 * worker_count();
    for (std::size_t start = 0; start < total; start += block) {
        const std::size_t count = std::min(block, total - start);
        std::vector<char> hit(count, 0);
        parallel_for(count, [&](std::size_t i) { hit[i] = test(start + i) ? 1 : 0; });
        for (std::size_t i = 0; i < count; ++i) {
            if (hit[i]) return start + i;
        }
    }
    return std::nullopt;
}

void for_each_combination(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
    std::vector<std::size_t> idx(k);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t from) {
        if (pos == k) {
            f(idx);
            return;
        }
        for (std::size_t i = from; i + (k - pos) <= n; ++i) {
            idx[pos] = i;
            rec(pos + 1, i + 1);
        }
    };
    rec(0, 0);
}

void check_dims(const std::vector<RationalVector>& points, std::size_t dim, const char* what) {
    for (const auto& p : points) {
        if (p.size() != dim) throw std::invalid_argument(std::string(what) + ": point of wrong dimension");
    }
}

// Normal of the hyperplane through d points in R^d (zero when they are dependent).
RationalVector hyperplane_normal(const std::vector<RationalVector>& pts) {
    const std::size_t d = pts.front().size();
    if (d == 1) return {Rational(1)};
    const RationalVector a = pts[1] - pts[0];
    if (d == 2) return {-a[1], a[0]};
    const RationalVector b = pts[2] - pts[0];
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

bool is_zero_vector(const RationalVector& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

}  // namespace

Centerpoint centerpoint(const std::vector<RationalVector>& config) {
    if (config.empty() || config.size() > 16) throw std::invalid_argument("centerpoint needs 1 to 16 points");
    const std::size_t d = config.front().size();
    if (d < 1 || d > 3) throw std::invalid_argument("centerpoint needs dimension 1 to 3");
    check_dims(config, d, "centerpoint");
    const std::size_t n = config.size();
    Centerpoint out;
    out.required_depth = static_cast<int>((n + d) / (d + 1));
    const std::size_t keep = n - static_cast<std::size_t>(out.required_depth) + 1;

    // Every closed halfspace holding at least N - k + 1 points contains the
    // depth-k region; bounding hyperplanes through d points give a first model.
    std::set<std::pair<RationalVector, Rational>> rows;
    for_each_combination(n, d, [&](const std::vector<std::size_t>& idx) {
        std::vector<RationalVector> pts;
        for (std::size_t i : idx) pts.push_back(config[i]);
        RationalVector u = hyperplane_normal(pts);
        if (is_zero_vector(u)) return;
        const Rational scale = abs(*std::find_if(u.begin(), u.end(), [](const Rational& x) { return x != 0; }));
        for (auto& x : u) x /= scale;
        for (int sign : {1, -1}) {
            const RationalVector w = Rational(sign) * u;
            const Rational b = dot(w, pts[0]);
            const auto inside = std::count_if(config.begin(), config.end(),
                                              [&](const RationalVector& p) { return dot(w, p) >= b; });
            if (static_cast<std::size_t>(inside) >= keep) rows.emplace(w, b);
        }
    });
    LinearSystem system(d);
    for (const auto& [w, b] : rows) system.add_row(w, Relation::GreaterEqual, b);
    out.method = "critical-halfspaces";

    for (int round = 0; round < 1000; ++round) {
        const auto cert = lp_feasible(system);
        if (!cert.is_feasible()) throw std::logic_error("centerpoint region came out empty");
        out.point = cert.point;
        out.depth = halfspace_depth(out.point, config);
        if (out.depth.depth >= out.required_depth) return out;
        // The open side opposite the shallow direction holds >= N - k + 1
        // points; the closed halfspace through its extreme point is a valid cut.
        const RationalVector& u = out.depth.direction;
        const Rational level = dot(u, out.point);
        std::optional<Rational> top;
        for (const auto& p : config) {
            const Rational v = dot(u, p);
            if (v < level && (!top || v > *top)) top = v;
        }
        system.add_row(u, Relation::LessEqual, *top);
        out.method = "cutting-planes";
    }
    throw std::runtime_error("centerpoint cutting planes did not converge");
}

CentralPointReport central_point_check(const GridMap& map, const std::vector<FactorParams>& params,
                                       const std::vector<std::vector<DisjointFamily>>& probes) {
    const GridBase& base = map.base;
    const std::size_t m = base.factor_count();
    if (params.size() != m || probes.size() != m) throw std::invalid_argument("one parameter set and probe list per factor");
    if (map.values.size() != base.point_count()) throw std::invalid_argument("one image per grid point required");
    int n = 0;
    for (std::size_t l = 0; l < m; ++l) {
        const auto& p = params[l];
        if (p.d < 1 || p.n < 1 || base.simplex_sizes()[l] != static_cast<std::size_t>(p.d * p.n + 1)) {
            throw std::invalid_argument("factor " + std::to_string(l) + " needs #V = d n + 1");
        }
        for (const auto& f : probes[l]) {
            if (f.vertex_count() != base.simplex_sizes()[l] || f.codim() != p.d) {
                throw std::invalid_argument("probe family does not lie in S_" + std::to_string(p.d));
            }
        }
        n += p.n;
    }
    const std::size_t dim = map.values.front().size();
    check_dims(map.values, dim, "central point");
    if (static_cast<int>(dim) >= n) throw std::invalid_argument("target dimension must be below n");

    CentralPointReport out;
    out.resolution = base.resolution();

    if (m == 1 && base.resolution() == 1) {
        // Affine map on one simplex: g(Delta_T) is the hull of the member images.
        out.exact = true;
        const SimplexGrid& grid = base.factor(0);
        std::vector<RationalVector> vertex_images;
        for (std::size_t v = 0; v < grid.vertex_count(); ++v) {
            std::vector<int> comp(grid.vertex_count(), 0);
            comp[v] = 1;
            vertex_images.push_back(map.values[*grid.point_id(comp)]);
        }
        std::vector<ConvexSet> images;
        for (const auto& family : probes[0]) {
            std::vector<RationalVector> pts;
            for (const auto& member : family.members()) {
                RationalVector img(dim, Rational(0));
                for (std::size_t v : member.support()) img = img + member[v] * vertex_images[v];
                pts.push_back(std::move(img));
            }
            images.push_back(ConvexSet::hull(std::move(pts)));
        }
        out.probe_count = images.size();
        std::vector<const ConvexSet*> ptrs;
        for (const auto& s : images) ptrs.push_back(&s);
        const auto cert = intersect_sets(ptrs, dim);
        if (cert.is_feasible()) {
            out.found = true;
            out.factor = 0;
            out.point.assign(cert.point.begin(), cert.point.begin() + static_cast<long>(dim));
            out.squared_gaps.assign(images.size(), Rational(0));
        }
        return out;
    }

    // Largest squared diameter of a pushed-forward product cell.
    Rational diam2 = 0;
    for (std::size_t c = 0; c < base.cell_count(); ++c) {
        const auto pts = base.cell_points(c);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            for (std::size_t j = i + 1; j < pts.size(); ++j) {
                diam2 = std::max(diam2, squared_distance(map.values[pts[i]], map.values[pts[j]]));
            }
        }
    }
    const Rational bound = 4 * diam2;
    out.tolerance = 2 * std::sqrt(to_double(diam2));

    std::vector<std::vector<std::size_t>> split(base.point_count());
    for (std::size_t p = 0; p < base.point_count(); ++p) split[p] = base.split_point(p);

    for (std::size_t l = 0; l < m; ++l) {
        const SimplexGrid& grid = base.factor(l);
        std::vector<RationalVector> coords;
        for (std::size_t p = 0; p < grid.point_count(); ++p) coords.push_back(grid.coordinates(p));
        // Per probe: product points that are corners of cells meeting it.
        std::vector<std::vector<std::size_t>> near(probes[l].size());
        parallel_for(probes[l].size(), [&](std::size_t t) {
            std::vector<RationalVector> members;
            for (const auto& w : probes[l][t].members()) members.push_back(w.weights());
            std::vector<char> allowed(grid.point_count(), 0);
            for (std::size_t c = 0; c < grid.cell_count(); ++c) {
                std::vector<RationalVector> corners;
                for (std::size_t p : grid.cell(c)) corners.push_back(coords[p]);
                if (hulls_meet(corners, members)) {
                    for (std::size_t p : grid.cell(c)) allowed[p] = 1;
                }
            }
            for (std::size_t p = 0; p < base.point_count(); ++p) {
                if (allowed[split[p][l]]) near[t].push_back(p);
            }
        });
        for (std::size_t candidate = 0; candidate < base.point_count(); ++candidate) {
            const RationalVector& z = map.values[candidate];
            std::vector<Rational> gaps;
            bool ok = true;
            for (const auto& pts : near) {
                std::optional<Rational> best;
                for (std::size_t p : pts) {
                    const Rational g = squared_distance(z, map.values[p]);
                    if (!best || g < *best) best = g;
                }
                if (!best || *best > bound) {
                    ok = false;
                    break;
                }
                gaps.push_back(*best);
            }
            if (ok) {
                out.found = true;
                out.factor = static_cast<int>(l);
                out.point = z;
                out.probe_count = near.size();
                out.squared_gaps = std::move(gaps);
                return out;
            }
        }
    }
    return out;
}

ConvexSet ConvexSet::hull(std::vector<RationalVector> points) {
    if (points.empty()) throw std::invalid_argument("hull of no points");
    check_dims(points, points.front().size(), "hull");
    ConvexSet s;
    s.points = std::move(points);
    return s;
}

ConvexSet ConvexSet::polyhedron(LinearSystem system) {
    ConvexSet s;
    s.system = std::move(system);
    return s;
}

bool ConvexSet::contains(const RationalVector& x) const {
    if (!system) return in_hull(x, points).inside;
    if (x.size() != system->variable_count()) return false;
    for (const auto& row : system->rows()) {
        const Rational v = dot(row.coeffs, x);
        if ((row.relation == Relation::LessEqual && v > row.rhs) || (row.relation == Relation::Equal && v != row.rhs) ||
            (row.relation == Relation::GreaterEqual && v < row.rhs)) {
            return false;
        }
    }
    return true;
}

std::string to_string(TheoremStatus status) {
    switch (status) {
    case TheoremStatus::Conclusion:
        return "conclusion";
    case TheoremStatus::HypothesisViolated:
        return "hypothesis-violated";
    case TheoremStatus::DimensionRefused:
        return "dimension-refused";
    case TheoremStatus::NoConclusion:
        return "no-conclusion";
    }
    return "unknown";
}

namespace {

std::size_t set_dimension(const ConvexSet& s) {
    return s.system ? s.system->variable_count() : s.points.front().size();
}

}  // namespace

LinearSystem intersection_system(const std::vector<const ConvexSet*>& sets, std::size_t dim) {
    std::size_t weights = 0;
    for (const ConvexSet* s : sets) {
        if (set_dimension(*s) != dim) throw std::invalid_argument("convex set of wrong dimension");
        if (!s->system) weights += s->points.size();
    }
    const std::size_t total = dim + weights;
    LinearSystem sys(total);
    std::size_t offset = dim;
    for (const ConvexSet* s : sets) {
        if (s->system) {
            for (const auto& row : s->system->rows()) {
                RationalVector coeffs(total, Rational(0));
                std::copy(row.coeffs.begin(), row.coeffs.end(), coeffs.begin());
                sys.add_row(std::move(coeffs), row.relation, row.rhs);
            }
            continue;
        }
        const std::size_t k = s->points.size();
        RationalVector sum(total, Rational(0));
        for (std::size_t j = 0; j < k; ++j) {
            sys.add_nonnegative(offset + j);
            sum[offset + j] = 1;
        }
        sys.add_row(std::move(sum), Relation::Equal, Rational(1));
        for (std::size_t c = 0; c < dim; ++c) {
            RationalVector coeffs(total, Rational(0));
            coeffs[c] = 1;
            for (std::size_t j = 0; j < k; ++j) coeffs[offset + j] = -s->points[j][c];
            sys.add_row(std::move(coeffs), Relation::Equal, Rational(0));
        }
        offset += k;
    }
    return sys;
}

RationalCertificate intersect_sets(const std::vector<const ConvexSet*>& sets, std::size_t dim) {
    return lp_feasible(intersection_system(sets, dim));
}

HellyResult colorful_helly(const std::vector<std::vector<ConvexSet>>& classes, std::size_t dim) {
    if (classes.empty()) throw std::invalid_argument("colorful Helly needs at least one color");
    std::vector<std::size_t> radices;
    for (const auto& cls : classes) {
        if (cls.empty()) throw std::invalid_argument("empty color class");
        for (const auto& s : cls) {
            if (set_dimension(s) != dim) throw std::invalid_argument("convex set of wrong dimension");
        }
        radices.push_back(cls.size());
    }
    HellyResult out;
    if (dim >= classes.size()) {
        out.status = TheoremStatus::DimensionRefused;
        return out;
    }
    auto tuple_sets = [&](const std::vector<std::size_t>& tuple) {
        std::vector<const ConvexSet*> ptrs;
        for (std::size_t l = 0; l < tuple.size(); ++l) ptrs.push_back(&classes[l][tuple[l]]);
        return ptrs;
    };
    const std::size_t total = product_of(radices);
    const auto bad = first_hit(total, [&](std::size_t i) {
        return !intersect_sets(tuple_sets(decode(i, radices)), dim).is_feasible();
    });
    if (bad) {
        out.status = TheoremStatus::HypothesisViolated;
        out.tuples_checked = *bad + 1;
        out.violating_tuple = decode(*bad, radices);
        out.infeasibility = intersect_sets(tuple_sets(out.violating_tuple), dim);
        return out;
    }
    out.tuples_checked = total;
    for (std::size_t l = 0; l < classes.size(); ++l) {
        std::vector<const ConvexSet*> ptrs;
        for (const auto& s : classes[l]) ptrs.push_back(&s);
        const auto cert = intersect_sets(ptrs, dim);
        if (cert.is_feasible()) {
            out.status = TheoremStatus::Conclusion;
            out.color = static_cast<int>(l);
            out.point.assign(cert.point.begin(), cert.point.begin() + static_cast<long>(dim));
            return out;
        }
    }
    return out;
}

BaranyResult barany_dual(const std::vector<RationalVector>& k_points,
                         const std::vector<std::vector<RationalVector>>& classes, std::size_t dim,
                         bool enforce_dimension) {
    if (k_points.empty()) throw std::invalid_argument("K needs at least one point");
    if (classes.empty()) throw std::invalid_argument("at least one color class required");
    check_dims(k_points, dim, "K");
    std::vector<std::size_t> radices;
    for (const auto& cls : classes) {
        if (cls.empty()) throw std::invalid_argument("empty color class");
        check_dims(cls, dim, "color class");
        radices.push_back(cls.size());
    }
    BaranyResult out;
    if (enforce_dimension && dim >= classes.size()) {
        out.status = TheoremStatus::DimensionRefused;
        return out;
    }
    const RationalVector& basepoint = k_points.front();
    auto tuple_points = [&](const std::vector<std::size_t>& tuple) {
        std::vector<RationalVector> pts;
        for (std::size_t l = 0; l < tuple.size(); ++l) pts.push_back(classes[l][tuple[l]]);
        return pts;
    };
    const std::size_t total = product_of(radices);
    const auto bad = first_hit(total, [&](std::size_t i) {
        return !separate(k_points, tuple_points(decode(i, radices)), basepoint).separated;
    });
    if (bad) {
        out.status = TheoremStatus::HypothesisViolated;
        out.tuples_checked = *bad + 1;
        out.violating_tuple = decode(*bad, radices);
        const auto pts = tuple_points(out.violating_tuple);
        out.common_point = separate(k_points, pts, basepoint).common_point;
        out.tuple_weights = in_hull(out.common_point, pts).weights;
        return out;
    }
    out.tuples_checked = total;
    for (std::size_t l = 0; l < classes.size(); ++l) {
        const auto sep = separate(k_points, classes[l], basepoint);
        if (sep.separated) {
            out.status = TheoremStatus::Conclusion;
            out.color = static_cast<int>(l);
            out.functional = sep.functional;
            return out;
        }
    }
    return out;
}

void validate_instance(const TverbergInstance& instance) {
    if (instance.r < 1) throw std::invalid_argument("r must be at least 1");
    if (instance.dim < 1) throw std::invalid_argument("F must have positive dimension");
    if (instance.images.empty()) throw std::invalid_argument("at least one color required");
    if (instance.alpha && instance.alpha->size() != instance.dim) throw std::invalid_argument("alpha of wrong dimension");
    for (std::size_t l = 0; l < instance.images.size(); ++l) {
        const auto& per_part = instance.images[l];
        if (per_part.size() != static_cast<std::size_t>(instance.r) + 1) {
            throw std::invalid_argument("color " + std::to_string(l) + " needs r + 1 blocks");
        }
        for (const auto& block : per_part) {
            if (block.empty()) throw std::invalid_argument("color " + std::to_string(l) + " has an empty block");
            check_dims(block, instance.dim, "image");
            if (instance.alpha) {
                for (const auto& p : block) {
                    if (dot(*instance.alpha, p) != 1) throw std::invalid_argument("alpha is not 1 on every image");
                }
            }
        }
    }
}

bool verify_witness(const TverbergInstance& instance, const TverbergWitness& w) {
    const std::size_t m = instance.images.size();
    const std::size_t parts = static_cast<std::size_t>(instance.r) + 1;
    if (w.parts.size() != parts || w.part_of.size() != m || w.chosen.size() != m || w.lambda.size() != m) return false;
    if (w.common.size() != instance.dim || is_zero_vector(w.common)) return false;
    std::vector<int> seen(m, 0);
    for (std::size_t s = 0; s < parts; ++s) {
        if (w.parts[s].empty()) return false;
        RationalVector sum(instance.dim, Rational(0));
        for (std::size_t l : w.parts[s]) {
            if (l >= m || seen[l]++ || w.part_of[l] != s) return false;
            const auto& block = instance.images[l][s];
            if (w.chosen[l] >= block.size() || w.lambda[l] < 0) return false;
            sum = sum + w.lambda[l] * block[w.chosen[l]];
        }
        if (sum != w.common) return false;
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end()) return false;
    return !instance.alpha || dot(*instance.alpha, w.common) == 1;
}

RationalVector lift_vector(int r, std::size_t s, const RationalVector& x) {
    if (r < 1 || s > static_cast<std::size_t>(r)) throw std::invalid_argument("lift index out of range");
    const std::size_t d = x.size();
    RationalVector out(static_cast<std::size_t>(r) * d, Rational(0));
    for (std::size_t b = 0; b < static_cast<std::size_t>(r); ++b) {
        if (s != 0 && b != s - 1) continue;
        for (std::size_t i = 0; i < d; ++i) out[b * d + i] = s == 0 ? Rational(-x[i]) : x[i];
    }
    return out;
}

LiftedClasses sarkaria_lift(const TverbergInstance& instance) {
    validate_instance(instance);
    LiftedClasses out;
    out.dim = static_cast<std::size_t>(instance.r) * instance.dim;
    for (const auto& per_part : instance.images) {
        std::vector<RationalVector> pts;
        std::vector<std::pair<std::size_t, std::size_t>> origin;
        for (std::size_t s = 0; s < per_part.size(); ++s) {
            for (std::size_t j = 0; j < per_part[s].size(); ++j) {
                pts.push_back(lift_vector(instance.r, s, per_part[s][j]));
                origin.emplace_back(s, j);
            }
        }
        out.points.push_back(std::move(pts));
        out.origin.push_back(std::move(origin));
    }
    return out;
}

std::string to_string(TverbergReport::Status status) {
    switch (status) {
    case TverbergReport::Status::Witness:
        return "witness";
    case TverbergReport::Status::HypothesisViolated:
        return "hypothesis-violated";
    case TverbergReport::Status::Inconclusive:
        return "inconclusive";
    }
    return "unknown";
}

namespace {

// Some nonzero x in every cone(phi_{l,s}(V_{l,s})), s = 0..r.
bool common_cone_nonzero(const TverbergInstance& inst, std::size_t l) {
    const auto& per_part = inst.images[l];
    std::size_t total = inst.dim;
    for (const auto& block : per_part) total += block.size();
    LinearSystem base(total);
    std::size_t offset = inst.dim;
    for (const auto& block : per_part) {
        for (std::size_t j = 0; j < block.size(); ++j) base.add_nonnegative(offset + j);
        for (std::size_t c = 0; c < inst.dim; ++c) {
            RationalVector coeffs(total, Rational(0));
            coeffs[c] = 1;
            for (std::size_t j = 0; j < block.size(); ++j) coeffs[offset + j] = -block[j][c];
            base.add_row(std::move(coeffs), Relation::Equal, Rational(0));
        }
        offset += block.size();
    }
    auto with_row = [&](RationalVector head, const Rational& rhs) {
        LinearSystem sys = base;
        head.resize(total, Rational(0));
        sys.add_row(std::move(head), Relation::Equal, rhs);
        return lp_feasible(sys).is_feasible();
    };
    // alpha is 1 on the generators, so alpha(x) = 0 forces x = 0.
    if (inst.alpha) return with_row(*inst.alpha, Rational(1));
    for (std::size_t c = 0; c < inst.dim; ++c) {
        RationalVector e(inst.dim, Rational(0));
        e[c] = 1;
        if (with_row(e, Rational(1)) || with_row(e, Rational(-1))) return true;
    }
    return false;
}

std::string check_hypotheses(const TverbergInstance& inst) {
    for (std::size_t l = 0; l < inst.images.size(); ++l) {
        if (!common_cone_nonzero(inst, l)) {
            return "color " + std::to_string(l) + ": the cones of its blocks share no nonzero vector";
        }
    }
    if (inst.alpha) return {};  // alpha = 1 on every such hull.
    for (std::size_t s = 0; s <= static_cast<std::size_t>(inst.r); ++s) {
        std::vector<std::size_t> radices;
        for (const auto& per_part : inst.images) radices.push_back(per_part[s].size());
        const std::size_t total = product_of(radices);
        const RationalVector origin(inst.dim, Rational(0));
        const auto bad = first_hit(total, [&](std::size_t i) {
            const auto tuple = decode(i, radices);
            std::vector<RationalVector> pts;
            for (std::size_t l = 0; l < tuple.size(); ++l) pts.push_back(inst.images[l][s][tuple[l]]);
            return in_hull(origin, pts).inside;
        });
        if (bad) {
            const auto tuple = decode(*bad, radices);
            std::string text = "block " + std::to_string(s) + ": 0 lies in the hull of the choice (";
            for (std::size_t l = 0; l < tuple.size(); ++l) text += (l ? "," : "") + std::to_string(tuple[l]);
            return text + ")";
        }
    }
    return {};
}

bool symmetric_blocks(const TverbergInstance& inst) {
    for (const auto& per_part : inst.images) {
        for (const auto& block : per_part) {
            if (block != per_part.front()) return false;
        }
    }
    return true;
}

std::optional<TverbergWitness> witness_from_lift(const TverbergInstance& inst, const LiftedClasses& lift,
                                                 const BaranyResult& hit) {
    const std::size_t m = inst.images.size();
    TverbergWitness w;
    w.parts.resize(static_cast<std::size_t>(inst.r) + 1);
    w.part_of.resize(m);
    w.chosen.resize(m);
    w.lambda = hit.tuple_weights;
    RationalVector c(inst.dim, Rational(0));
    for (std::size_t l = 0; l < m; ++l) {
        const auto [s, j] = lift.origin[l][hit.violating_tuple[l]];
        w.part_of[l] = s;
        w.chosen[l] = j;
        w.parts[s].push_back(l);
        if (s == 0) c = c + w.lambda[l] * inst.images[l][0][j];
    }
    if (is_zero_vector(c)) return std::nullopt;
    if (inst.alpha) {
        const Rational scale = dot(*inst.alpha, c);
        for (auto& x : w.lambda) x /= scale;
        for (auto& x : c) x /= scale;
    }
    w.common = std::move(c);
    if (!verify_witness(inst, w)) return std::nullopt;
    return w;
}

std::optional<TverbergWitness> solve_partition(const TverbergInstance& inst, const std::vector<std::size_t>& part_of,
                                               const std::vector<std::size_t>& chosen) {
    const std::size_t m = part_of.size();
    const std::size_t d = inst.dim;
    const std::size_t total = d + m;
    LinearSystem base(total);
    for (std::size_t l = 0; l < m; ++l) base.add_nonnegative(d + l);
    for (std::size_t s = 0; s <= static_cast<std::size_t>(inst.r); ++s) {
        for (std::size_t c = 0; c < d; ++c) {
            RationalVector coeffs(total, Rational(0));
            coeffs[c] = -1;
            for (std::size_t l = 0; l < m; ++l) {
                if (part_of[l] == s) coeffs[d + l] = inst.images[l][s][chosen[l]][c];
            }
            base.add_row(std::move(coeffs), Relation::Equal, Rational(0));
        }
    }
    std::vector<std::pair<RationalVector, Rational>> normalizations;
    if (inst.alpha) {
        normalizations.emplace_back(*inst.alpha, Rational(1));
    } else {
        for (std::size_t c = 0; c < d; ++c) {
            RationalVector e(d, Rational(0));
            e[c] = 1;
            normalizations.emplace_back(e, Rational(1));
            normalizations.emplace_back(e, Rational(-1));
        }
    }
    for (auto [head, rhs] : normalizations) {
        LinearSystem sys = base;
        head.resize(total, Rational(0));
        sys.add_row(std::move(head), Relation::Equal, rhs);
        const auto cert = lp_feasible(sys);
        if (!cert.is_feasible()) continue;
        TverbergWitness w;
        w.parts.resize(static_cast<std::size_t>(inst.r) + 1);
        for (std::size_t l = 0; l < m; ++l) w.parts[part_of[l]].push_back(l);
        w.part_of = part_of;
        w.chosen = chosen;
        w.common.assign(cert.point.begin(), cert.point.begin() + static_cast<long>(d));
        w.lambda.assign(cert.point.begin() + static_cast<long>(d), cert.point.end());
        return w;
    }
    return std::nullopt;
}

struct PartitionSearch {
    std::optional<TverbergWitness> witness;
    std::size_t checked = 0;
};

// Labeled partitions with nonempty parts, most balanced size signature first,
// lexicographic within a signature. Symmetric instances keep one labeling per
// unlabeled partition.
PartitionSearch brute_force_search(const TverbergInstance& inst) {
    const std::size_t m = inst.images.size();
    const std::size_t parts = static_cast<std::size_t>(inst.r) + 1;
    const bool symmetric = symmetric_blocks(inst);
    const std::vector<std::size_t> radices(m, parts);
    const std::size_t all = product_of(radices);

    struct Entry {
        std::vector<std::size_t> signature;
        std::vector<std::size_t> assignment;
    };
    std::vector<Entry> entries;
    for (std::size_t i = 0; i < all; ++i) {
        auto a = decode(i, radices);
        std::vector<std::size_t> sizes(parts, 0);
        bool growth = true;
        std::size_t next_label = 0;
        for (std::size_t s : a) {
            if (s > next_label) growth = false;
            if (s == next_label) ++next_label;
            ++sizes[s];
        }
        if (std::find(sizes.begin(), sizes.end(), 0) != sizes.end()) continue;
        if (symmetric && !growth) continue;
        std::sort(sizes.begin(), sizes.end());
        entries.push_back({std::move(sizes), std::move(a)});
    }
    std::stable_sort(entries.begin(), entries.end(),
                     [](const Entry& x, const Entry& y) { return x.signature > y.signature; });

    std::vector<std::vector<std::size_t>> choice_radices;
    std::vector<std::size_t> offsets{0};
    for (const auto& e : entries) {
        std::vector<std::size_t> r;
        for (std::size_t l = 0; l < m; ++l) r.push_back(inst.images[l][e.assignment[l]].size());
        offsets.push_back(offsets.back() + product_of(r));
        if (offsets.back() > kEnumerationLimit) throw std::invalid_argument("enumeration too large");
        choice_radices.push_back(std::move(r));
    }
    auto locate = [&](std::size_t index) {
        const std::size_t e = static_cast<std::size_t>(std::upper_bound(offsets.begin(), offsets.end(), index) -
                                                       offsets.begin()) - 1;
        return std::make_pair(e, decode(index - offsets[e], choice_radices[e]));
    };
    const std::size_t total = offsets.back();
    PartitionSearch out;
    const auto hit = first_hit(total, [&](std::size_t i) {
        const auto [e, chosen] = locate(i);
        return solve_partition(inst, entries[e].assignment, chosen).has_value();
    });
    if (!hit) {
        out.checked = total;
        return out;
    }
    out.checked = *hit + 1;
    const auto [e, chosen] = locate(*hit);
    out.witness = solve_partition(inst, entries[e].assignment, chosen);
    return out;
}

}  // namespace

TverbergReport generalized_tverberg(const TverbergInstance& instance) {
    validate_instance(instance);
    TverbergReport out;
    const std::size_t m = instance.images.size();
    out.below_threshold = static_cast<std::size_t>(instance.r) * instance.dim >= m;
    out.violation = check_hypotheses(instance);
    if (!out.violation.empty()) {
        out.status = TverbergReport::Status::HypothesisViolated;
        return out;
    }

    // A colorful hull of the lift through 0 is exactly a partition witness;
    // the search runs below the dimension threshold too so both paths compare.
    const LiftedClasses lift = sarkaria_lift(instance);
    const BaranyResult dual = barany_dual({RationalVector(lift.dim, Rational(0))}, lift.points, lift.dim, false);
    out.tuples_checked = dual.tuples_checked;
    if (dual.status == TheoremStatus::HypothesisViolated) out.sarkaria = witness_from_lift(instance, lift, dual);

    const PartitionSearch brute = brute_force_search(instance);
    out.brute_force = brute.witness;
    out.partitions_checked = brute.checked;

    out.paths_agree = out.sarkaria.has_value() == out.brute_force.has_value();
    out.status = (out.sarkaria || out.brute_force) ? TverbergReport::Status::Witness : TverbergReport::Status::Inconclusive;
    return out;
}

TverbergInstance tverberg_instance(const std::vector<RationalVector>& points, int r) {
    if (points.empty()) throw std::invalid_argument("no points");
    const std::size_t d = points.front().size();
    if (d < 1) throw std::invalid_argument("points need positive dimension");
    check_dims(points, d, "tverberg");
    TverbergInstance inst;
    inst.r = r;
    inst.dim = d + 1;
    for (const auto& p : points) {
        RationalVector lifted = p;
        lifted.push_back(Rational(1));
        inst.images.emplace_back(static_cast<std::size_t>(std::max(r, 0)) + 1, std::vector<RationalVector>{lifted});
    }
    RationalVector alpha(d + 1, Rational(0));
    alpha[d] = 1;
    inst.alpha = std::move(alpha);
    return inst;
}

TverbergReport tverberg_partition(const std::vector<RationalVector>& points, int r) {
    return generalized_tverberg(tverberg_instance(points, r));
}

}  // namespace kkmforge
