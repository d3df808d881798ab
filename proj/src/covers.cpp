#include "kkmforge/covers.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <stdexcept>

#include "kkmforge/lp.hpp"
#include "kkmforge/parallel.hpp"

namespace kkmforge {

namespace {

void compositions(int total, std::size_t parts, std::vector<int>& prefix, std::vector<std::vector<int>>& out) {
    if (prefix.size() + 1 == parts) {
        prefix.push_back(total);
        out.push_back(prefix);
        prefix.pop_back();
        return;
    }
    for (int c = 0; c <= total; ++c) {
        prefix.push_back(c);
        compositions(total - c, parts, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace

SimplexGrid::SimplexGrid(std::size_t vertex_count, int resolution)
    : vertex_count_(vertex_count), resolution_(resolution) {
    if (vertex_count == 0) throw std::invalid_argument("simplex grid: no vertices");
    if (resolution < 1) throw std::invalid_argument("simplex grid: resolution must be >= 1");
    std::vector<int> prefix;
    compositions(resolution, vertex_count, prefix, points_);
    for (std::size_t i = 0; i < points_.size(); ++i) point_index_[points_[i]] = i;

    const std::size_t k = vertex_count - 1;
    if (k == 0) {
        cells_.push_back({0});
        adjacency_.emplace_back();
        return;
    }
    // Kuhn cells of the order simplex 0 <= y_1 <= ... <= y_k <= N, where
    // y_j = a_0 + ... + a_{j-1}. A cell is a base corner c and a permutation.
    std::vector<std::size_t> order(k);
    std::vector<int> corner(k, 0);
    auto to_point = [&](const std::vector<int>& y) {
        std::vector<int> a(vertex_count);
        a[0] = y[0];
        for (std::size_t j = 1; j < k; ++j) a[j] = y[j] - y[j - 1];
        a[k] = resolution - y[k - 1];
        return point_index_.at(a);
    };
    while (true) {
        std::iota(order.begin(), order.end(), 0);
        do {
            bool valid = true;
            std::vector<std::size_t> position(k);
            for (std::size_t s = 0; s < k; ++s) position[order[s]] = s;
            for (std::size_t i = 0; i + 1 < k && valid; ++i) {
                if (corner[i] == corner[i + 1] && position[i + 1] > position[i]) valid = false;
            }
            if (!valid) continue;
            std::vector<int> y = corner;
            std::vector<std::size_t> cell{to_point(y)};
            for (std::size_t s = 0; s < k; ++s) {
                ++y[order[s]];
                cell.push_back(to_point(y));
            }
            std::sort(cell.begin(), cell.end());
            cells_.push_back(std::move(cell));
        } while (std::next_permutation(order.begin(), order.end()));
        // Next nondecreasing corner with entries in [0, N-1].
        std::size_t i = k;
        while (i > 0 && corner[i - 1] == resolution - 1) --i;
        if (i == 0) break;
        ++corner[i - 1];
        for (std::size_t j = i; j < k; ++j) corner[j] = corner[i - 1];
    }

    std::map<std::vector<std::size_t>, std::vector<std::size_t>> facet_cells;
    for (std::size_t c = 0; c < cells_.size(); ++c) {
        for (std::size_t drop = 0; drop < cells_[c].size(); ++drop) {
            auto facet = cells_[c];
            facet.erase(facet.begin() + static_cast<long>(drop));
            facet_cells[facet].push_back(c);
        }
    }
    adjacency_.assign(cells_.size(), {});
    for (const auto& [facet, owners] : facet_cells) {
        if (owners.size() == 2) {
            adjacency_[owners[0]].push_back(owners[1]);
            adjacency_[owners[1]].push_back(owners[0]);
        }
    }
    for (auto& list : adjacency_) std::sort(list.begin(), list.end());
}

RationalVector SimplexGrid::coordinates(std::size_t id) const {
    RationalVector out;
    for (int a : point(id)) out.push_back(make_rational(a, resolution_));
    return out;
}

std::optional<std::size_t> SimplexGrid::point_id(const std::vector<int>& composition) const {
    auto it = point_index_.find(composition);
    if (it == point_index_.end()) return std::nullopt;
    return it->second;
}

SimplicialComplex SimplexGrid::complex() const {
    std::vector<std::vector<Vertex>> facets;
    for (const auto& cell : cells_) facets.emplace_back(cell.begin(), cell.end());
    return SimplicialComplex::from_facets(std::move(facets));
}

GridBase::GridBase(std::vector<std::size_t> simplex_sizes, int resolution)
    : sizes_(std::move(simplex_sizes)), resolution_(resolution) {
    if (sizes_.empty()) throw std::invalid_argument("grid base: no factors");
    for (std::size_t s : sizes_) {
        factors_.emplace_back(s, resolution);
        cell_count_ *= factors_.back().cell_count();
        point_count_ *= factors_.back().point_count();
    }
}

std::vector<std::size_t> GridBase::split_cell(std::size_t id) const {
    if (id >= cell_count_) throw std::out_of_range("grid base: cell id out of range");
    std::vector<std::size_t> out(factors_.size());
    for (std::size_t l = factors_.size(); l-- > 0;) {
        out[l] = id % factors_[l].cell_count();
        id /= factors_[l].cell_count();
    }
    return out;
}

std::size_t GridBase::join_cell(const std::vector<std::size_t>& factor_cells) const {
    std::size_t id = 0;
    for (std::size_t l = 0; l < factors_.size(); ++l) id = id * factors_[l].cell_count() + factor_cells[l];
    return id;
}

std::vector<std::size_t> GridBase::split_point(std::size_t id) const {
    std::vector<std::size_t> out(factors_.size());
    for (std::size_t l = factors_.size(); l-- > 0;) {
        out[l] = id % factors_[l].point_count();
        id /= factors_[l].point_count();
    }
    return out;
}

std::size_t GridBase::join_point(const std::vector<std::size_t>& factor_points) const {
    std::size_t id = 0;
    for (std::size_t l = 0; l < factors_.size(); ++l) id = id * factors_[l].point_count() + factor_points[l];
    return id;
}

std::vector<std::size_t> GridBase::cell_points(std::size_t id) const {
    const auto parts = split_cell(id);
    std::vector<std::size_t> out{0};
    for (std::size_t l = 0; l < factors_.size(); ++l) {
        std::vector<std::size_t> next;
        for (std::size_t prefix : out) {
            for (std::size_t p : factors_[l].cell(parts[l])) next.push_back(prefix * factors_[l].point_count() + p);
        }
        out = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::size_t> GridBase::neighbours(std::size_t id) const {
    const auto parts = split_cell(id);
    std::vector<std::size_t> out;
    for (std::size_t l = 0; l < factors_.size(); ++l) {
        for (std::size_t other : factors_[l].neighbours(parts[l])) {
            auto moved = parts;
            moved[l] = other;
            out.push_back(join_cell(moved));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Simplex> GridBase::cell_simplices(std::size_t id) const {
    const auto parts = split_cell(id);
    std::vector<const std::vector<std::size_t>*> corners;
    std::vector<std::size_t> moves;
    for (std::size_t l = 0; l < factors_.size(); ++l) {
        corners.push_back(&factors_[l].cell(parts[l]));
        moves.insert(moves.end(), corners.back()->size() - 1, l);
    }
    // Maximal chains in the product of the per-factor vertex orders.
    std::vector<Simplex> out;
    do {
        std::vector<std::size_t> step(factors_.size(), 0);
        auto current = [&] {
            std::vector<std::size_t> pts;
            for (std::size_t l = 0; l < factors_.size(); ++l) pts.push_back((*corners[l])[step[l]]);
            return static_cast<Vertex>(join_point(pts));
        };
        Simplex chain{current()};
        for (std::size_t l : moves) {
            ++step[l];
            chain.push_back(current());
        }
        std::sort(chain.begin(), chain.end());
        out.push_back(std::move(chain));
    } while (std::next_permutation(moves.begin(), moves.end()));
    return out;
}

SimplicialComplex GridBase::triangulation() const {
    std::vector<std::vector<Vertex>> facets;
    for (std::size_t c = 0; c < cell_count_; ++c) {
        for (auto& s : cell_simplices(c)) facets.push_back(std::move(s));
    }
    return SimplicialComplex::from_facets(std::move(facets));
}

GridCover::GridCover(GridBase base, std::map<std::string, std::vector<std::size_t>> sets, bool require_covering)
    : base_(std::move(base)), sets_(std::move(sets)) {
    if (sets_.empty()) throw std::invalid_argument("grid cover: no sets");
    for (auto& [label, cells] : sets_) {
        std::sort(cells.begin(), cells.end());
        cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
        if (!cells.empty() && cells.back() >= base_.cell_count()) {
            throw std::invalid_argument("grid cover: set '" + label + "' has a cell id out of range");
        }
    }
    if (require_covering && !covers_base()) throw std::invalid_argument("grid cover: sets do not cover the base");
}

bool GridCover::covers_base() const {
    std::vector<bool> seen(base_.cell_count(), false);
    for (const auto& [label, cells] : sets_) {
        for (std::size_t c : cells) seen[c] = true;
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

std::vector<std::vector<std::string>> GridCover::point_labels() const {
    std::vector<std::vector<std::string>> out(base_.point_count());
    for (const auto& [label, cells] : sets_) {
        std::vector<bool> hit(base_.point_count(), false);
        for (std::size_t c : cells) {
            for (std::size_t p : base_.cell_points(c)) hit[p] = true;
        }
        for (std::size_t p = 0; p < hit.size(); ++p) {
            if (hit[p]) out[p].push_back(label);
        }
    }
    return out;
}

int multiplicity(const GridCover& cover) {
    std::size_t best = 0;
    for (const auto& labels : cover.point_labels()) best = std::max(best, labels.size());
    return static_cast<int>(best);
}

int subcomplex_multiplicity(const SimplicialComplex& complex, const std::map<std::string, SimplicialComplex>& sets) {
    std::map<Simplex, int> count;
    for (const auto& [label, sub] : sets) {
        if (!is_subcomplex(complex, sub)) throw std::invalid_argument("set '" + label + "' is not a subcomplex");
        for (int k = 0; k <= sub.dimension(); ++k) {
            for (const auto& s : sub.simplices(k)) ++count[s];
        }
    }
    int best = 0;
    for (const auto& [s, c] : count) best = std::max(best, c);
    return best;
}

std::vector<std::string> OpenCover::labels_at(const Simplex& simplex, const RationalVector& barycentric) const {
    if (simplex.size() != barycentric.size() || simplex.empty()) {
        throw std::invalid_argument("labels_at: coordinates do not match the simplex");
    }
    const Rational top = *std::max_element(barycentric.begin(), barycentric.end());
    Simplex face;
    for (std::size_t i = 0; i < simplex.size(); ++i) {
        if (barycentric[i] == top) face.push_back(simplex[i]);
    }
    std::vector<std::string> out;
    for (const auto& [label, sub] : closed_sets) {
        if (sub.contains(face)) out.push_back(label);
    }
    return out;
}

OpenCover fatten_cover(std::shared_ptr<const SimplicialComplex> complex,
                       std::map<std::string, SimplicialComplex> closed_sets, int n) {
    if (!complex) throw std::invalid_argument("fatten_cover: missing complex");
    OpenCover out;
    out.multiplicity = subcomplex_multiplicity(*complex, closed_sets);
    for (const auto& facet : complex->facets()) {
        const bool covered = std::any_of(closed_sets.begin(), closed_sets.end(),
                                         [&](const auto& entry) { return entry.second.contains(facet); });
        if (!covered) throw std::invalid_argument("fatten_cover: sets do not cover the complex");
    }
    if (out.multiplicity > n) {
        throw std::invalid_argument("fatten_cover: closed multiplicity " + std::to_string(out.multiplicity) +
                                    " exceeds " + std::to_string(n));
    }
    out.complex = std::move(complex);
    out.closed_sets = std::move(closed_sets);
    return out;
}

OpenCover fatten_cover(const GridCover& cover, int n) {
    const int m = multiplicity(cover);
    if (m > n) {
        throw std::invalid_argument("fatten_cover: closed multiplicity " + std::to_string(m) + " exceeds " +
                                    std::to_string(n));
    }
    auto complex = std::make_shared<const SimplicialComplex>(cover.base().triangulation());
    std::map<std::string, SimplicialComplex> sets;
    for (const auto& [label, cells] : cover.sets()) {
        std::vector<std::vector<Vertex>> facets;
        for (std::size_t c : cells) {
            for (auto& s : cover.base().cell_simplices(c)) facets.push_back(std::move(s));
        }
        if (!facets.empty()) sets.emplace(label, SimplicialComplex::from_facets(std::move(facets)));
    }
    return fatten_cover(std::move(complex), std::move(sets), n);
}

std::string to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::Witness:
            return "witness";
        case Verdict::Counterexample:
            return "counterexample";
        case Verdict::Inconclusive:
            return "inconclusive";
    }
    return "inconclusive";
}

std::optional<ProbeCertificate> hulls_meet(const std::vector<RationalVector>& cell_vertices,
                                           const std::vector<RationalVector>& points, bool relative_interior) {
    if (cell_vertices.empty() || points.empty()) return std::nullopt;
    const std::size_t dim = cell_vertices.front().size();
    // Bounding-box filter.
    for (std::size_t c = 0; c < dim; ++c) {
        Rational lo = cell_vertices[0][c], hi = lo;
        for (const auto& v : cell_vertices) {
            lo = std::min(lo, v[c]);
            hi = std::max(hi, v[c]);
        }
        Rational plo = points[0][c], phi = plo;
        for (const auto& p : points) {
            plo = std::min(plo, p[c]);
            phi = std::max(phi, p[c]);
        }
        if (phi < lo || plo > hi) return std::nullopt;
    }
    const std::size_t a = cell_vertices.size();
    const std::size_t b = points.size();
    const std::size_t vars = a + b + (relative_interior ? 1 : 0);
    LinearSystem sys(vars);
    for (std::size_t i = 0; i < a; ++i) {
        RationalVector row(vars, Rational(0));
        row[i] = 1;
        if (relative_interior) row[a + b] = -1;
        sys.add_row(std::move(row), Relation::GreaterEqual, Rational(0));
    }
    for (std::size_t j = 0; j < b; ++j) sys.add_nonnegative(a + j);
    RationalVector sum_a(vars, Rational(0)), sum_b(vars, Rational(0));
    for (std::size_t i = 0; i < a; ++i) sum_a[i] = 1;
    for (std::size_t j = 0; j < b; ++j) sum_b[a + j] = 1;
    sys.add_row(std::move(sum_a), Relation::Equal, Rational(1));
    sys.add_row(std::move(sum_b), Relation::Equal, Rational(1));
    for (std::size_t c = 0; c < dim; ++c) {
        RationalVector row(vars, Rational(0));
        for (std::size_t i = 0; i < a; ++i) row[i] = cell_vertices[i][c];
        for (std::size_t j = 0; j < b; ++j) row[a + j] = -points[j][c];
        sys.add_row(std::move(row), Relation::Equal, Rational(0));
    }
    RationalVector solution;
    if (relative_interior) {
        RationalVector cap(vars, Rational(0));
        cap[a + b] = 1;
        sys.add_row(cap, Relation::LessEqual, Rational(1));
        const auto opt = lp_maximize(sys, cap);
        if (opt.status != LpSolution::Status::Optimal || opt.value <= 0) return std::nullopt;
        solution = opt.point;
    } else {
        const auto cert = lp_feasible(sys);
        if (!cert.is_feasible()) return std::nullopt;
        solution = cert.point;
    }
    ProbeCertificate out;
    out.cell_weights.assign(solution.begin(), solution.begin() + static_cast<long>(a));
    out.hull_weights.assign(solution.begin() + static_cast<long>(a), solution.begin() + static_cast<long>(a + b));
    out.point.assign(dim, Rational(0));
    for (std::size_t i = 0; i < a; ++i) out.point = out.point + out.cell_weights[i] * cell_vertices[i];
    return out;
}

std::vector<DisjointFamily> default_probes(std::size_t vertex_count, int d, std::size_t random_count, std::uint64_t seed) {
    return sample_Sd(vertex_count, d, random_count, seed);
}

namespace {

std::vector<RationalVector> members_of(const DisjointFamily& family) {
    std::vector<RationalVector> out;
    for (const auto& m : family.members()) out.push_back(m.weights());
    return out;
}

struct ProbeSweep {
    std::vector<ProbeCertificate> certificates;
    std::optional<std::size_t> first_failure;
};

// Checks every probe against a union of cells of one simplex grid. Probes are
// independent; the reported failure is the lowest failing probe index.
ProbeSweep sweep_probes(const SimplexGrid& grid, const std::vector<RationalVector>& coords,
                        const std::vector<std::size_t>& cells, const std::vector<DisjointFamily>& probes) {
    std::vector<std::optional<ProbeCertificate>> found(probes.size());
    std::atomic<std::size_t> failure{probes.size()};
    parallel_for(probes.size(), [&](std::size_t p) {
        if (p > failure.load()) return;
        const auto hull = members_of(probes[p]);
        for (std::size_t c : cells) {
            std::vector<RationalVector> corners;
            for (std::size_t pt : grid.cell(c)) corners.push_back(coords[pt]);
            if (auto cert = hulls_meet(corners, hull)) {
                cert->probe = p;
                cert->cell = c;
                found[p] = std::move(cert);
                return;
            }
        }
        std::size_t current = failure.load();
        while (p < current && !failure.compare_exchange_weak(current, p)) {
        }
    });
    ProbeSweep out;
    if (failure.load() < probes.size()) {
        out.first_failure = failure.load();
        return out;
    }
    for (auto& f : found) out.certificates.push_back(std::move(*f));
    return out;
}

std::vector<RationalVector> grid_coordinates(const SimplexGrid& grid) {
    std::vector<RationalVector> out;
    for (std::size_t p = 0; p < grid.point_count(); ++p) out.push_back(grid.coordinates(p));
    return out;
}

SamplingParams sampling_of(const GridBase& base, const std::vector<DisjointFamily>& probes) {
    SamplingParams s;
    s.resolution = base.resolution();
    for (const auto& f : probes) {
        const bool vertex_family = std::all_of(f.members().begin(), f.members().end(),
                                               [](const WeightVector& w) { return w.support().size() == 1; });
        (vertex_family ? s.vertex_probes : s.random_probes) += 1;
    }
    return s;
}

void check_probe_size(const std::vector<DisjointFamily>& probes, std::size_t vertex_count, int codim) {
    for (const auto& f : probes) {
        if (f.vertex_count() != vertex_count || f.codim() != codim) {
            throw std::invalid_argument("probe family does not lie in S_" + std::to_string(codim));
        }
    }
}

}  // namespace

CheckReport kkm_check(const GridCover& cover, int d, int n, const std::vector<DisjointFamily>& probes) {
    const auto& base = cover.base();
    if (base.factor_count() != 1) throw std::invalid_argument("kkm_check: base must be a single simplex");
    if (d < 1 || n < 1 || base.simplex_sizes()[0] != static_cast<std::size_t>(d * n + 1)) {
        throw std::invalid_argument("kkm_check: #V must equal d*n+1");
    }
    check_probe_size(probes, base.simplex_sizes()[0], d);
    CheckReport report;
    report.check = "kkm";
    report.hypothesis = {multiplicity(cover), n, false};
    report.hypothesis.holds = report.hypothesis.multiplicity <= n;
    report.probes = {probes};
    report.sampling = sampling_of(base, probes);
    const auto& grid = base.factor(0);
    const auto coords = grid_coordinates(grid);
    for (const auto& [label, cells] : cover.sets()) {
        auto sweep = sweep_probes(grid, coords, cells, probes);
        if (sweep.first_failure) {
            report.failures.push_back({label, -1, *sweep.first_failure});
            continue;
        }
        report.verdict = Verdict::Witness;
        report.label = label;
        report.certificates = std::move(sweep.certificates);
        return report;
    }
    report.verdict = Verdict::Counterexample;
    return report;
}

CheckReport lebesgue_check(const GridCover& cover, const std::vector<FactorParams>& params,
                           const std::vector<std::vector<DisjointFamily>>& probes) {
    const auto& base = cover.base();
    const std::size_t m = base.factor_count();
    if (params.size() != m || probes.size() != m) throw std::invalid_argument("lebesgue_check: one parameter set per factor");
    int n = 0;
    for (std::size_t l = 0; l < m; ++l) {
        if (params[l].d < 1 || params[l].n < 1 ||
            base.simplex_sizes()[l] != static_cast<std::size_t>(params[l].d * params[l].n + 1)) {
            throw std::invalid_argument("lebesgue_check: #V_l must equal d_l*n_l+1");
        }
        check_probe_size(probes[l], base.simplex_sizes()[l], params[l].d);
        n += params[l].n;
    }
    CheckReport report;
    report.check = "lebesgue";
    report.hypothesis = {multiplicity(cover), n, false};
    report.hypothesis.holds = report.hypothesis.multiplicity <= n;
    report.probes = probes;
    std::vector<DisjointFamily> all;
    for (const auto& list : probes) all.insert(all.end(), list.begin(), list.end());
    report.sampling = sampling_of(base, all);
    std::vector<std::vector<RationalVector>> coords;
    for (std::size_t l = 0; l < m; ++l) coords.push_back(grid_coordinates(base.factor(l)));
    for (const auto& [label, cells] : cover.sets()) {
        for (std::size_t l = 0; l < m; ++l) {
            std::set<std::size_t> projected;
            for (std::size_t c : cells) projected.insert(base.split_cell(c)[l]);
            const std::vector<std::size_t> factor_cells(projected.begin(), projected.end());
            auto sweep = sweep_probes(base.factor(l), coords[l], factor_cells, probes[l]);
            if (sweep.first_failure) {
                report.failures.push_back({label, static_cast<int>(l), *sweep.first_failure});
                continue;
            }
            report.verdict = Verdict::Witness;
            report.label = label;
            report.factor = static_cast<int>(l);
            report.certificates = std::move(sweep.certificates);
            return report;
        }
    }
    report.verdict = Verdict::Counterexample;
    return report;
}

std::vector<std::vector<std::size_t>> complement_components(const GridCover& sets) {
    const auto& base = sets.base();
    std::vector<bool> covered(base.cell_count(), false);
    for (const auto& [label, cells] : sets.sets()) {
        for (std::size_t c : cells) covered[c] = true;
    }
    std::vector<bool> seen(base.cell_count(), false);
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t start = 0; start < base.cell_count(); ++start) {
        if (covered[start] || seen[start]) continue;
        std::vector<std::size_t> component;
        std::queue<std::size_t> queue;
        queue.push(start);
        seen[start] = true;
        while (!queue.empty()) {
            const std::size_t c = queue.front();
            queue.pop();
            component.push_back(c);
            for (std::size_t nb : base.neighbours(c)) {
                if (!covered[nb] && !seen[nb]) {
                    seen[nb] = true;
                    queue.push(nb);
                }
            }
        }
        std::sort(component.begin(), component.end());
        out.push_back(std::move(component));
    }
    return out;
}

CheckReport strengthened_kkm_check(const GridCover& sets, int d, int n, int r,
                                   const std::vector<DisjointFamily>& d_probes,
                                   const std::vector<DisjointFamily>& r_probes) {
    const auto& base = sets.base();
    if (base.factor_count() != 1) throw std::invalid_argument("strengthened_kkm_check: base must be a single simplex");
    const std::size_t vertices = base.simplex_sizes()[0];
    if (d < 1 || n < 1 || r < 0 || vertices != static_cast<std::size_t>(d * n + r + 1)) {
        throw std::invalid_argument("strengthened_kkm_check: #V must equal d*n+r+1");
    }
    check_probe_size(d_probes, vertices, d);
    check_probe_size(r_probes, vertices, r);
    CheckReport report;
    report.check = "skkm";
    report.hypothesis = {multiplicity(sets), n, false};
    report.hypothesis.holds = report.hypothesis.multiplicity <= n;
    report.probes = {d_probes, r_probes};
    std::vector<DisjointFamily> all(d_probes);
    all.insert(all.end(), r_probes.begin(), r_probes.end());
    report.sampling = sampling_of(base, all);
    const auto& grid = base.factor(0);
    const auto coords = grid_coordinates(grid);

    for (const auto& [label, cells] : sets.sets()) {
        auto sweep = sweep_probes(grid, coords, cells, d_probes);
        if (sweep.first_failure) {
            report.failures.push_back({label, 0, *sweep.first_failure});
            continue;
        }
        report.verdict = Verdict::Witness;
        report.branch = "a";
        report.label = label;
        report.certificates = std::move(sweep.certificates);
        return report;
    }

    // Faces of covered cells make up Y.
    std::set<std::vector<std::size_t>> in_y;
    auto faces_of = [&](std::size_t cell) {
        const auto& pts = grid.cell(cell);
        std::vector<std::vector<std::size_t>> out;
        for (unsigned mask = 1; mask < (1u << pts.size()); ++mask) {
            std::vector<std::size_t> f;
            for (std::size_t i = 0; i < pts.size(); ++i) {
                if (mask >> i & 1u) f.push_back(pts[i]);
            }
            out.push_back(std::move(f));
        }
        // Top faces first: the interior of a cell is the likeliest hit.
        std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.size() > y.size(); });
        return out;
    };
    for (const auto& [label, cells] : sets.sets()) {
        for (std::size_t c : cells) {
            for (auto& f : faces_of(c)) in_y.insert(std::move(f));
        }
    }
    const auto components = complement_components(sets);
    for (std::size_t k = 0; k < components.size(); ++k) {
        // Open faces of the component that avoid Y, with an owning cell.
        std::vector<std::pair<std::vector<std::size_t>, std::size_t>> open_faces;
        std::set<std::vector<std::size_t>> listed;
        for (std::size_t c : components[k]) {
            for (auto& f : faces_of(c)) {
                if (in_y.count(f) || listed.count(f)) continue;
                listed.insert(f);
                open_faces.emplace_back(std::move(f), c);
            }
        }
        std::stable_sort(open_faces.begin(), open_faces.end(),
                         [](const auto& x, const auto& y) { return x.first.size() > y.first.size(); });
        std::vector<std::optional<ProbeCertificate>> found(r_probes.size());
        std::atomic<std::size_t> failure{r_probes.size()};
        parallel_for(r_probes.size(), [&](std::size_t p) {
            if (p > failure.load()) return;
            const auto hull = members_of(r_probes[p]);
            for (const auto& [face, owner] : open_faces) {
                std::vector<RationalVector> corners;
                for (std::size_t pt : face) corners.push_back(coords[pt]);
                if (auto cert = hulls_meet(corners, hull, true)) {
                    cert->probe = p;
                    cert->cell = owner;
                    found[p] = std::move(cert);
                    return;
                }
            }
            std::size_t current = failure.load();
            while (p < current && !failure.compare_exchange_weak(current, p)) {
            }
        });
        if (failure.load() < r_probes.size()) {
            report.failures.push_back({"component " + std::to_string(k), 0, failure.load()});
            continue;
        }
        report.verdict = Verdict::Witness;
        report.branch = "b";
        report.component_cells = components[k];
        for (auto& f : found) report.certificates.push_back(std::move(*f));
        return report;
    }
    report.verdict = Verdict::Counterexample;
    return report;
}

CupVanishingReport cup_vanishing_check(const SimplicialComplex& complex,
                                       const std::map<std::string, SimplicialComplex>& sets,
                                       const std::vector<Gf2Cochain>& classes) {
    if (classes.empty()) throw std::invalid_argument("cup_vanishing_check: no classes");
    for (const auto& facet : complex.facets()) {
        const bool covered =
            std::any_of(sets.begin(), sets.end(), [&](const auto& entry) { return entry.second.contains(facet); });
        if (!covered) throw std::invalid_argument("cup_vanishing_check: sets do not cover the complex");
    }
    for (const auto& c : classes) {
        if (c.values().size() != complex.count(c.degree()) || !is_cocycle(complex, c)) {
            throw std::invalid_argument("cup_vanishing_check: class is not a cocycle on the complex");
        }
    }
    CupVanishingReport report;
    const int n = static_cast<int>(classes.size());
    report.hypothesis = {subcomplex_multiplicity(complex, sets), n, false};
    report.hypothesis.holds = report.hypothesis.multiplicity <= n;
    for (const auto& [label, sub] : sets) {
        for (std::size_t k = 0; k < classes.size(); ++k) {
            const auto restricted = restrict_cochain(complex, sub, classes[k]);
            auto test = is_coboundary(sub, restricted);
            if (!test.is_coboundary) {
                report.outcome = CupVanishingReport::Outcome::NonzeroRestriction;
                report.label = label;
                report.class_index = static_cast<int>(k);
                report.restriction_cycle = std::move(test.cycle_witness);
                return report;
            }
        }
    }
    Gf2Cochain product = classes.front();
    for (std::size_t k = 1; k < classes.size(); ++k) product = cup_product(complex, product, classes[k]);
    auto test = is_coboundary(complex, product);
    report.product = std::move(product);
    if (test.is_coboundary) {
        report.outcome = CupVanishingReport::Outcome::ProductVanishes;
        report.primitive = std::move(test.primitive);
    } else {
        report.outcome = CupVanishingReport::Outcome::ProductNonzero;
        report.product_cycle = std::move(test.cycle_witness);
    }
    return report;
}

GridCover random_band_cover(const GridBase& base, int max_multiplicity, std::uint64_t seed) {
    if (max_multiplicity < 2) throw std::invalid_argument("random_band_cover: multiplicity bound must be >= 2");
    std::mt19937_64 rng(seed);
    // Cell barycenters, as concatenated factor coordinates scaled by N * corners.
    std::vector<std::vector<long long>> centers(base.cell_count());
    std::vector<std::vector<std::vector<int>>> corner_coords(base.cell_count());
    for (std::size_t c = 0; c < base.cell_count(); ++c) {
        const auto parts = base.split_cell(c);
        for (std::size_t l = 0; l < base.factor_count(); ++l) {
            const auto& grid = base.factor(l);
            std::vector<long long> sum(grid.vertex_count(), 0);
            for (std::size_t p : grid.cell(parts[l])) {
                for (std::size_t v = 0; v < grid.vertex_count(); ++v) sum[v] += grid.point(p)[v];
            }
            // Scale to a common denominator N * (#V_l).
            for (std::size_t v = 0; v < grid.vertex_count(); ++v) {
                long long scale = 1;
                for (std::size_t o = 0; o < base.factor_count(); ++o) {
                    if (o != l) scale *= static_cast<long long>(base.factor(o).vertex_count());
                }
                centers[c].push_back(sum[v] * scale);
            }
        }
    }
    std::uniform_int_distribution<int> coef(-6, 6);
    std::uniform_int_distribution<int> band_count(2, 6);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        std::vector<long long> w(centers.front().size());
        for (auto& x : w) x = coef(rng);
        std::vector<long long> value(base.cell_count());
        for (std::size_t c = 0; c < base.cell_count(); ++c) {
            value[c] = std::inner_product(w.begin(), w.end(), centers[c].begin(), 0LL);
        }
        const auto [lo_it, hi_it] = std::minmax_element(value.begin(), value.end());
        const long long lo = *lo_it, hi = *hi_it;
        if (lo == hi) continue;
        const int bands = band_count(rng);
        std::uniform_int_distribution<long long> cut(lo + 1, hi);
        std::vector<long long> cuts;
        for (int b = 1; b < bands; ++b) cuts.push_back(cut(rng));
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        std::uniform_int_distribution<int> label_count(2, static_cast<int>(cuts.size()) + 1);
        const int labels = label_count(rng);
        std::vector<int> band_label(cuts.size() + 1);
        for (std::size_t b = 0; b < band_label.size(); ++b) band_label[b] = static_cast<int>(b) % labels;
        std::shuffle(band_label.begin(), band_label.end(), rng);
        std::map<std::string, std::vector<std::size_t>> sets;
        for (std::size_t c = 0; c < base.cell_count(); ++c) {
            const auto band = static_cast<std::size_t>(std::upper_bound(cuts.begin(), cuts.end(), value[c]) - cuts.begin());
            sets[std::to_string(band_label[band])].push_back(c);
        }
        if (sets.size() < 2) continue;
        GridCover cover(base, std::move(sets));
        if (multiplicity(cover) <= max_multiplicity) return cover;
    }
    throw std::runtime_error("random_band_cover: no cover within the multiplicity bound");
}

GridCover vertex_star_cover(const GridBase& base) {
    if (base.factor_count() != 1) throw std::invalid_argument("vertex_star_cover: base must be a single simplex");
    const auto& grid = base.factor(0);
    const int v_count = static_cast<int>(grid.vertex_count());
    if (grid.resolution() % v_count != 0) {
        throw std::invalid_argument("vertex_star_cover: resolution must be divisible by #V");
    }
    const int threshold = grid.resolution() / v_count;
    std::map<std::string, std::vector<std::size_t>> sets;
    for (std::size_t c = 0; c < grid.cell_count(); ++c) {
        for (int v = 0; v < v_count; ++v) {
            const bool inside = std::all_of(grid.cell(c).begin(), grid.cell(c).end(), [&](std::size_t p) {
                return grid.point(p)[static_cast<std::size_t>(v)] >= threshold;
            });
            if (inside) sets[std::to_string(v)].push_back(c);
        }
    }
    return GridCover(base, std::move(sets));
}

std::map<std::string, SimplicialComplex> random_subcomplex_cover(const SimplicialComplex& complex,
                                                                 int max_multiplicity, std::uint64_t seed) {
    if (max_multiplicity < 2) throw std::invalid_argument("random_subcomplex_cover: bound must be >= 2");
    std::mt19937_64 rng(seed);
    const auto facets = complex.facets();
    if (facets.size() < 2) throw std::invalid_argument("random_subcomplex_cover: need at least two facets");
    std::map<Simplex, std::vector<std::size_t>> ridge_owners;
    for (std::size_t f = 0; f < facets.size(); ++f) {
        if (facets[f].size() < 2) continue;
        for (auto& r : faces_of_size(facets[f], facets[f].size() - 1)) ridge_owners[r].push_back(f);
    }
    std::vector<std::vector<std::size_t>> adjacent(facets.size());
    for (const auto& [ridge, owners] : ridge_owners) {
        for (std::size_t a : owners) {
            for (std::size_t b : owners) {
                if (a != b) adjacent[a].push_back(b);
            }
        }
    }
    std::uniform_int_distribution<std::size_t> seeds_dist(2, std::min<std::size_t>(6, facets.size()));
    const std::size_t seeds = seeds_dist(rng);
    std::vector<std::size_t> order(facets.size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<int> label(facets.size(), -1);
    std::vector<std::size_t> frontier;
    for (std::size_t s = 0; s < seeds; ++s) {
        label[order[s]] = static_cast<int>(s);
        frontier.push_back(order[s]);
    }
    // Random growth: repeatedly extend a random labelled facet into a neighbour.
    std::size_t unlabeled = facets.size() - seeds;
    while (unlabeled > 0) {
        if (frontier.empty()) {
            for (std::size_t f = 0; f < facets.size(); ++f) {
                if (label[f] < 0) {
                    label[f] = static_cast<int>(rng() % seeds);
                    frontier.push_back(f);
                    --unlabeled;
                    break;
                }
            }
            continue;
        }
        std::uniform_int_distribution<std::size_t> pick(0, frontier.size() - 1);
        const std::size_t idx = pick(rng);
        const std::size_t f = frontier[idx];
        std::vector<std::size_t> open;
        for (std::size_t nb : adjacent[f]) {
            if (label[nb] < 0) open.push_back(nb);
        }
        if (open.empty()) {
            frontier.erase(frontier.begin() + static_cast<long>(idx));
            continue;
        }
        const std::size_t nb = open[rng() % open.size()];
        label[nb] = label[f];
        frontier.push_back(nb);
        --unlabeled;
    }
    auto build = [&](const std::vector<int>& labels) {
        std::map<int, std::vector<std::vector<Vertex>>> groups;
        for (std::size_t f = 0; f < facets.size(); ++f) groups[labels[f]].push_back(facets[f]);
        std::map<std::string, SimplicialComplex> out;
        int next = 0;
        for (auto& [l, group] : groups) out.emplace(std::to_string(next++), SimplicialComplex::from_facets(std::move(group)));
        return out;
    };
    auto sets = build(label);
    while (subcomplex_multiplicity(complex, sets) > max_multiplicity) {
        std::set<int> present(label.begin(), label.end());
        std::vector<int> ids(present.begin(), present.end());
        std::shuffle(ids.begin(), ids.end(), rng);
        for (auto& l : label) {
            if (l == ids[1]) l = ids[0];
        }
        sets = build(label);
    }
    return sets;
}

}  // namespace kkmforge
