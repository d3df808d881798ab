#include "kkmforge/lp.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <stdexcept>

namespace kkmforge {

void LinearSystem::add_row(RationalVector coeffs, Relation relation, Rational rhs) {
    if (coeffs.size() != variables_) {
        throw std::invalid_argument("LinearSystem::add_row: expected " + std::to_string(variables_) +
                                    " coefficients, got " + std::to_string(coeffs.size()));
    }
    rows_.push_back(LinearRow{std::move(coeffs), relation, std::move(rhs)});
}

void LinearSystem::add_nonnegative(std::size_t variable) {
    if (variable >= variables_) throw std::out_of_range("LinearSystem::add_nonnegative");
    RationalVector coeffs(variables_, Rational(0));
    coeffs[variable] = 1;
    add_row(std::move(coeffs), Relation::GreaterEqual, Rational(0));
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

int row_sign(Relation r) { return r == Relation::GreaterEqual ? -1 : 1; }

// Dense tableau for  min c.z  s.t.  A z = b, z >= 0, b >= 0, with one
// artificial column per row appended after the structural columns.
class Tableau {
public:
    Tableau(std::vector<RationalVector> a, RationalVector b)
        : rows_(a.size()), structural_(rows_ ? a[0].size() : 0) {
        cols_ = structural_ + rows_;
        t_.assign(rows_ + 1, RationalVector(cols_ + 1, Rational(0)));
        basis_.resize(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < structural_; ++j) t_[i][j] = std::move(a[i][j]);
            t_[i][structural_ + i] = 1;
            t_[i][cols_] = std::move(b[i]);
            basis_[i] = structural_ + i;
        }
        // Phase 1 reduced costs: minimize the sum of artificials.
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < structural_; ++j) {
                if (!t_[i][j].is_zero()) t_[rows_][j] -= t_[i][j];
            }
            t_[rows_][cols_] -= t_[i][cols_];
        }
    }

    // Returns false when unbounded.
    bool run(bool allow_artificial) {
        const std::size_t limit = allow_artificial ? cols_ : structural_;
        while (true) {
            std::size_t enter = kNone;
            for (std::size_t j = 0; j < limit; ++j) {
                if (t_[rows_][j] < 0) {
                    enter = j;
                    break;
                }
            }
            if (enter == kNone) return true;
            std::size_t leave = kNone;
            Rational best;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (removed(i) || t_[i][enter] <= 0) continue;
                Rational ratio = t_[i][cols_] / t_[i][enter];
                if (leave == kNone || ratio < best ||
                    (ratio == best && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = std::move(ratio);
                }
            }
            if (leave == kNone) return false;
            pivot(leave, enter);
        }
    }

    void pivot(std::size_t p, std::size_t q) {
        const Rational inv = 1 / t_[p][q];
        for (auto& v : t_[p]) {
            if (!v.is_zero()) v *= inv;
        }
        for (std::size_t i = 0; i <= rows_; ++i) {
            if (i == p || t_[i][q].is_zero()) continue;
            const Rational factor = t_[i][q];
            for (std::size_t j = 0; j <= cols_; ++j) {
                if (!t_[p][j].is_zero()) t_[i][j] -= factor * t_[p][j];
            }
        }
        basis_[p] = q;
    }

    Rational objective() const { return -t_[rows_][cols_]; }
    const Rational& reduced_cost(std::size_t j) const { return t_[rows_][j]; }
    std::size_t artificial(std::size_t row) const { return structural_count_ + row; }

    // After phase 1 (value 0), pivot zero-level artificials out or drop their rows.
    void expel_artificials() {
        for (std::size_t i = 0; i < rows_; ++i) {
            if (basis_[i] < structural_count_) continue;
            std::size_t col = kNone;
            for (std::size_t j = 0; j < structural_count_; ++j) {
                if (!t_[i][j].is_zero()) {
                    col = j;
                    break;
                }
            }
            if (col == kNone) {
                removed_.push_back(i);
            } else {
                pivot(i, col);
            }
        }
    }

    void set_phase2_costs(const RationalVector& cost) {
        structural_ = structural_count_;
        auto& obj = t_[rows_];
        std::fill(obj.begin(), obj.end(), Rational(0));
        for (std::size_t j = 0; j < structural_count_; ++j) obj[j] = cost[j];
        for (std::size_t i = 0; i < rows_; ++i) {
            if (removed(i)) continue;
            const std::size_t b = basis_[i];
            if (b >= structural_count_ || cost[b].is_zero()) continue;
            for (std::size_t j = 0; j <= cols_; ++j) {
                if (!t_[i][j].is_zero()) obj[j] -= cost[b] * t_[i][j];
            }
        }
    }

    RationalVector solution() const {
        RationalVector z(structural_count_, Rational(0));
        for (std::size_t i = 0; i < rows_; ++i) {
            if (!removed(i) && basis_[i] < structural_count_) z[basis_[i]] = t_[i][cols_];
        }
        return z;
    }

    void remember_structural() { structural_count_ = structural_; }

private:
    bool removed(std::size_t i) const {
        return std::find(removed_.begin(), removed_.end(), i) != removed_.end();
    }

    std::size_t rows_;
    std::size_t structural_;
    std::size_t structural_count_ = 0;
    std::size_t cols_;
    std::vector<RationalVector> t_;
    std::vector<std::size_t> basis_;
    std::vector<std::size_t> removed_;
};

// Mapping from a LinearSystem onto the standard form used by Tableau.
struct StandardForm {
    std::vector<bool> nonnegative;
    std::vector<std::size_t> bound_row;  // variable -> defining bound row or kNone
    std::vector<bool> is_bound_row;
    std::vector<std::size_t> general_rows;
    std::vector<std::size_t> pos_col, neg_col;  // neg_col == kNone for nonneg variables
    std::vector<int> flip;                       // per general row
    std::size_t columns = 0;
    std::vector<RationalVector> a;
    RationalVector b;
};

StandardForm to_standard_form(const LinearSystem& sys) {
    const std::size_t n = sys.variable_count();
    const auto& rows = sys.rows();
    StandardForm sf;
    sf.nonnegative.assign(n, false);
    sf.bound_row.assign(n, kNone);
    sf.is_bound_row.assign(rows.size(), false);

    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (!row.rhs.is_zero() || row.relation == Relation::Equal) continue;
        std::size_t nz = kNone;
        bool single = true;
        for (std::size_t j = 0; j < n; ++j) {
            if (row.coeffs[j].is_zero()) continue;
            if (nz != kNone) {
                single = false;
                break;
            }
            nz = j;
        }
        if (!single || nz == kNone) continue;
        const bool lower = (row.coeffs[nz] > 0 && row.relation == Relation::GreaterEqual) ||
                           (row.coeffs[nz] < 0 && row.relation == Relation::LessEqual);
        if (!lower) continue;
        sf.is_bound_row[r] = true;
        if (!sf.nonnegative[nz]) {
            sf.nonnegative[nz] = true;
            sf.bound_row[nz] = r;
        }
    }

    sf.pos_col.assign(n, kNone);
    sf.neg_col.assign(n, kNone);
    for (std::size_t j = 0; j < n; ++j) {
        sf.pos_col[j] = sf.columns++;
        if (!sf.nonnegative[j]) sf.neg_col[j] = sf.columns++;
    }
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (!sf.is_bound_row[r]) sf.general_rows.push_back(r);
    }
    const std::size_t slack_base = sf.columns;
    std::size_t slacks = 0;
    for (std::size_t r : sf.general_rows) {
        if (rows[r].relation != Relation::Equal) ++slacks;
    }
    sf.columns += slacks;

    std::size_t slack = slack_base;
    for (std::size_t r : sf.general_rows) {
        const auto& row = rows[r];
        RationalVector line(sf.columns, Rational(0));
        for (std::size_t j = 0; j < n; ++j) {
            if (row.coeffs[j].is_zero()) continue;
            line[sf.pos_col[j]] = row.coeffs[j];
            if (sf.neg_col[j] != kNone) line[sf.neg_col[j]] = -row.coeffs[j];
        }
        if (row.relation == Relation::LessEqual) line[slack++] = 1;
        if (row.relation == Relation::GreaterEqual) line[slack++] = -1;
        Rational rhs = row.rhs;
        int f = 1;
        if (rhs < 0) {
            f = -1;
            rhs = -rhs;
            for (auto& v : line) {
                if (!v.is_zero()) v = -v;
            }
        }
        sf.flip.push_back(f);
        sf.a.push_back(std::move(line));
        sf.b.push_back(std::move(rhs));
    }
    return sf;
}

RationalVector recover_point(const StandardForm& sf, const RationalVector& z, std::size_t n) {
    RationalVector x(n, Rational(0));
    for (std::size_t j = 0; j < n; ++j) {
        x[j] = z[sf.pos_col[j]];
        if (sf.neg_col[j] != kNone) x[j] -= z[sf.neg_col[j]];
    }
    return x;
}

// Farkas multipliers from the phase-1 optimum (y = c_B B^-1 read off the
// artificial reduced costs).
RationalVector farkas_multipliers(const LinearSystem& sys, const StandardForm& sf,
                                  const Tableau& tab) {
    const auto& rows = sys.rows();
    const std::size_t n = sys.variable_count();
    RationalVector out(rows.size(), Rational(0));
    RationalVector combined(n, Rational(0));
    for (std::size_t g = 0; g < sf.general_rows.size(); ++g) {
        const std::size_t r = sf.general_rows[g];
        const Rational y = 1 - tab.reduced_cost(tab.artificial(g));
        const Rational u = -y * sf.flip[g];
        out[r] = u * row_sign(rows[r].relation);
        if (u.is_zero()) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (!rows[r].coeffs[j].is_zero()) combined[j] += u * rows[r].coeffs[j];
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (!sf.nonnegative[j]) continue;
        const std::size_t r = sf.bound_row[j];
        out[r] = combined[j] / abs(rows[r].coeffs[j]);
    }
    return out;
}

struct Phase1 {
    StandardForm sf;
    std::optional<Tableau> tableau;
    bool feasible = false;
};

Phase1 run_phase1(const LinearSystem& sys) {
    Phase1 p;
    p.sf = to_standard_form(sys);
    std::vector<RationalVector> a = p.sf.a;
    if (a.empty()) {
        p.feasible = true;
        return p;
    }
    p.tableau.emplace(std::move(a), p.sf.b);
    p.tableau->remember_structural();
    p.tableau->run(true);
    p.feasible = p.tableau->objective().is_zero();
    return p;
}

}  // namespace

RationalCertificate lp_feasible(const LinearSystem& sys) {
    for (const auto& row : sys.rows()) {
        if (row.coeffs.size() != sys.variable_count()) {
            throw std::invalid_argument("lp_feasible: dimension mismatch");
        }
    }
    Phase1 p = run_phase1(sys);
    RationalCertificate cert;
    if (p.feasible) {
        cert.kind = RationalCertificate::Kind::Feasible;
        RationalVector z = p.tableau ? p.tableau->solution() : RationalVector(p.sf.columns, Rational(0));
        cert.point = recover_point(p.sf, z, sys.variable_count());
    } else {
        cert.kind = RationalCertificate::Kind::Infeasible;
        cert.multipliers = farkas_multipliers(sys, p.sf, *p.tableau);
    }
    if (!verify_certificate(sys, cert)) {
        throw std::logic_error("lp_feasible: produced certificate failed verification");
    }
    return cert;
}

bool verify_certificate(const LinearSystem& sys, const RationalCertificate& cert) {
    const auto& rows = sys.rows();
    const std::size_t n = sys.variable_count();
    if (cert.is_feasible()) {
        if (cert.point.size() != n) return false;
        for (const auto& row : rows) {
            const Rational lhs = dot(row.coeffs, cert.point);
            switch (row.relation) {
                case Relation::LessEqual:
                    if (lhs > row.rhs) return false;
                    break;
                case Relation::Equal:
                    if (lhs != row.rhs) return false;
                    break;
                case Relation::GreaterEqual:
                    if (lhs < row.rhs) return false;
                    break;
            }
        }
        return true;
    }
    if (cert.multipliers.size() != rows.size()) return false;
    RationalVector combo(n, Rational(0));
    Rational rhs = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Rational& y = cert.multipliers[i];
        if (rows[i].relation != Relation::Equal && y < 0) return false;
        if (y.is_zero()) continue;
        const Rational ys = y * row_sign(rows[i].relation);
        for (std::size_t j = 0; j < n; ++j) {
            if (!rows[i].coeffs[j].is_zero()) combo[j] += ys * rows[i].coeffs[j];
        }
        rhs += ys * rows[i].rhs;
    }
    for (const auto& c : combo) {
        if (!c.is_zero()) return false;
    }
    return rhs < 0;
}

LpSolution lp_maximize(const LinearSystem& sys, const RationalVector& objective) {
    if (objective.size() != sys.variable_count()) {
        throw std::invalid_argument("lp_maximize: objective dimension mismatch");
    }
    LpSolution out;
    Phase1 p = run_phase1(sys);
    const std::size_t n = sys.variable_count();
    if (!p.feasible) {
        out.status = LpSolution::Status::Infeasible;
        out.infeasibility.kind = RationalCertificate::Kind::Infeasible;
        out.infeasibility.multipliers = farkas_multipliers(sys, p.sf, *p.tableau);
        return out;
    }
    RationalVector cost(p.sf.columns, Rational(0));
    for (std::size_t j = 0; j < n; ++j) {
        cost[p.sf.pos_col[j]] = -objective[j];
        if (p.sf.neg_col[j] != kNone) cost[p.sf.neg_col[j]] = objective[j];
    }
    if (!p.tableau) {
        // No general rows: only sign bounds.
        for (std::size_t j = 0; j < n; ++j) {
            if (objective[j] > 0 || (!p.sf.nonnegative[j] && objective[j] < 0)) {
                out.status = LpSolution::Status::Unbounded;
                return out;
            }
        }
        out.status = LpSolution::Status::Optimal;
        out.point.assign(n, Rational(0));
        out.value = 0;
        return out;
    }
    Tableau& tab = *p.tableau;
    tab.expel_artificials();
    tab.set_phase2_costs(cost);
    if (!tab.run(false)) {
        out.status = LpSolution::Status::Unbounded;
        return out;
    }
    out.status = LpSolution::Status::Optimal;
    out.point = recover_point(p.sf, tab.solution(), n);
    out.value = dot(objective, out.point);
    return out;
}

HullMembership in_hull(const RationalVector& query, const std::vector<RationalVector>& points) {
    if (points.empty()) throw std::invalid_argument("in_hull: empty point set");
    const std::size_t dim = query.size();
    for (const auto& p : points) {
        if (p.size() != dim) throw std::invalid_argument("in_hull: dimension mismatch");
    }
    const std::size_t m = points.size();
    LinearSystem sys(m);
    for (std::size_t j = 0; j < m; ++j) sys.add_nonnegative(j);
    sys.add_row(RationalVector(m, Rational(1)), Relation::Equal, Rational(1));
    for (std::size_t c = 0; c < dim; ++c) {
        RationalVector row(m);
        for (std::size_t j = 0; j < m; ++j) row[j] = points[j][c];
        sys.add_row(std::move(row), Relation::Equal, query[c]);
    }
    const RationalCertificate cert = lp_feasible(sys);
    HullMembership out;
    if (cert.is_feasible()) {
        out.inside = true;
        out.weights = cert.point;
        return out;
    }
    // f(x) = y.x + y0 is >= 0 on the generators and negative at the query.
    const Rational& y0 = cert.multipliers[m];
    RationalVector y(dim);
    for (std::size_t c = 0; c < dim; ++c) y[c] = cert.multipliers[m + 1 + c];
    const Rational fq = dot(y, query) + y0;
    out.separator.linear = y;
    out.separator.constant = y0 - fq / 2;
    return out;
}

bool verify_hull_weights(const RationalVector& query, const std::vector<RationalVector>& points,
                         const RationalVector& weights) {
    if (weights.size() != points.size()) return false;
    Rational total = 0;
    RationalVector combo(query.size(), Rational(0));
    for (std::size_t j = 0; j < points.size(); ++j) {
        if (weights[j] < 0 || points[j].size() != query.size()) return false;
        total += weights[j];
        for (std::size_t c = 0; c < query.size(); ++c) combo[c] += weights[j] * points[j][c];
    }
    return total == 1 && combo == query;
}

Separation separate(const std::vector<RationalVector>& negative_side,
                    const std::vector<RationalVector>& positive_side,
                    const RationalVector& basepoint) {
    if (negative_side.empty() || positive_side.empty()) {
        throw std::invalid_argument("separate: empty point set");
    }
    const std::size_t dim = basepoint.size();
    for (const auto& p : negative_side) {
        if (p.size() != dim) throw std::invalid_argument("separate: dimension mismatch");
    }
    for (const auto& p : positive_side) {
        if (p.size() != dim) throw std::invalid_argument("separate: dimension mismatch");
    }
    if (!in_hull(basepoint, negative_side).inside) {
        throw std::invalid_argument("separate: basepoint is not in the hull of the first set");
    }
    // Variables: a (dim), b, margin.
    const std::size_t nv = dim + 2;
    LinearSystem sys(nv);
    auto row_for = [&](const RationalVector& p, const Rational& margin_coeff) {
        RationalVector row(nv, Rational(0));
        for (std::size_t c = 0; c < dim; ++c) row[c] = p[c];
        row[dim] = 1;
        row[dim + 1] = margin_coeff;
        return row;
    };
    for (const auto& k : negative_side) sys.add_row(row_for(k, 1), Relation::LessEqual, 0);
    for (const auto& q : positive_side) sys.add_row(row_for(q, -1), Relation::GreaterEqual, 0);
    sys.add_row(row_for(basepoint, 0), Relation::Equal, -1);
    RationalVector cap(nv, Rational(0));
    cap[dim + 1] = 1;
    sys.add_row(cap, Relation::LessEqual, 1);
    RationalVector objective(nv, Rational(0));
    objective[dim + 1] = 1;
    const LpSolution sol = lp_maximize(sys, objective);

    Separation out;
    if (sol.status == LpSolution::Status::Optimal && sol.value > 0) {
        out.separated = true;
        out.functional.linear.assign(sol.point.begin(), sol.point.begin() + static_cast<long>(dim));
        out.functional.constant = sol.point[dim];
        return out;
    }
    // Hulls meet: find the common point.
    const std::size_t a = negative_side.size();
    const std::size_t b = positive_side.size();
    LinearSystem meet(a + b);
    for (std::size_t j = 0; j < a + b; ++j) meet.add_nonnegative(j);
    RationalVector sum_a(a + b, Rational(0)), sum_b(a + b, Rational(0));
    for (std::size_t j = 0; j < a; ++j) sum_a[j] = 1;
    for (std::size_t j = 0; j < b; ++j) sum_b[a + j] = 1;
    meet.add_row(sum_a, Relation::Equal, 1);
    meet.add_row(sum_b, Relation::Equal, 1);
    for (std::size_t c = 0; c < dim; ++c) {
        RationalVector row(a + b);
        for (std::size_t j = 0; j < a; ++j) row[j] = negative_side[j][c];
        for (std::size_t j = 0; j < b; ++j) row[a + j] = -positive_side[j][c];
        meet.add_row(std::move(row), Relation::Equal, 0);
    }
    const RationalCertificate cert = lp_feasible(meet);
    if (!cert.is_feasible()) {
        throw std::logic_error("separate: neither separated nor intersecting");
    }
    out.common_point.assign(dim, Rational(0));
    for (std::size_t j = 0; j < a; ++j) {
        for (std::size_t c = 0; c < dim; ++c) out.common_point[c] += cert.point[j] * negative_side[j][c];
    }
    return out;
}

bool verify_separation(const std::vector<RationalVector>& negative_side,
                       const std::vector<RationalVector>& positive_side,
                       const RationalVector& basepoint, const AffineFunctional& functional) {
    if (functional.linear.size() != basepoint.size()) return false;
    if (functional(basepoint) != -1) return false;
    for (const auto& k : negative_side) {
        if (!(functional(k) < 0)) return false;
    }
    for (const auto& q : positive_side) {
        if (!(functional(q) > 0)) return false;
    }
    return true;
}

namespace {

// Orthogonal projection onto the complement of span(removed); `removed` is
// an orthogonal family.
RationalVector project_out(const RationalVector& v, const std::vector<RationalVector>& removed) {
    RationalVector out = v;
    for (const auto& g : removed) {
        const Rational coef = dot(out, g) / dot(g, g);
        if (coef.is_zero()) continue;
        for (std::size_t i = 0; i < out.size(); ++i) out[i] -= coef * g[i];
    }
    return out;
}

bool is_zero_vector(const RationalVector& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x.is_zero(); });
}

bool parallel(const RationalVector& a, const RationalVector& b) {
    std::size_t i = 0;
    while (i < a.size() && a[i].is_zero()) ++i;
    if (i == a.size() || b[i].is_zero()) return false;
    const Rational scale = b[i] / a[i];
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (b[j] != scale * a[j]) return false;
    }
    return true;
}

int count_closed(const std::vector<RationalVector>& w, const RationalVector& u) {
    int c = 0;
    for (const auto& v : w) {
        if (dot(u, v) >= 0) ++c;
    }
    return c;
}

// Minimum over directions u in the subspace orthogonal to `removed` of
// #{w : u.w >= 0}. The returned direction lies in an open cell of the
// arrangement {u.w = 0} restricted to that subspace.
DepthResult depth_in_subspace(const std::vector<RationalVector>& w,
                              const std::vector<RationalVector>& removed, std::size_t dim) {
    RationalVector axis;
    for (std::size_t i = 0; i < dim && axis.empty(); ++i) {
        RationalVector e(dim, Rational(0));
        e[i] = 1;
        RationalVector p = project_out(e, removed);
        if (!is_zero_vector(p)) axis = std::move(p);
    }
    if (dim - removed.size() == 1) {
        const RationalVector neg = Rational(-1) * axis;
        const int up = count_closed(w, axis);
        const int down = count_closed(w, neg);
        return up <= down ? DepthResult{up, axis} : DepthResult{down, neg};
    }
    std::vector<RationalVector> normals;
    for (const auto& v : w) {
        RationalVector p = project_out(v, removed);
        if (is_zero_vector(p)) continue;
        bool seen = false;
        for (const auto& h : normals) {
            if (parallel(h, p)) {
                seen = true;
                break;
            }
        }
        if (!seen) normals.push_back(std::move(p));
    }
    if (normals.empty()) return DepthResult{static_cast<int>(w.size()), axis};

    DepthResult best{std::numeric_limits<int>::max(), {}};
    for (const auto& h : normals) {
        std::vector<RationalVector> next = removed;
        next.push_back(h);
        const DepthResult inner = depth_in_subspace(w, next, dim);
        int flat = 0;
        int side[2] = {0, 0};
        for (const auto& v : w) {
            if (!is_zero_vector(project_out(v, next))) continue;
            ++flat;
            const Rational s = dot(h, v);
            if (s >= 0) ++side[0];
            if (s <= 0) ++side[1];
        }
        for (int k = 0; k < 2; ++k) {
            const int value = inner.depth - flat + side[k];
            if (value >= best.depth) continue;
            // Step off the hyperplane without crossing any other one.
            Rational eps = 1;
            for (const auto& v : w) {
                const Rational a = dot(inner.direction, v);
                const Rational b = dot(h, v);
                if (a.is_zero() || b.is_zero()) continue;
                const Rational bound = abs(a) / (2 * abs(b));
                if (bound < eps) eps = bound;
            }
            const Rational step = k == 0 ? eps : Rational(-eps);
            RationalVector u = inner.direction;
            for (std::size_t i = 0; i < dim; ++i) u[i] += step * h[i];
            best = DepthResult{value, std::move(u)};
        }
    }
    return best;
}

}  // namespace

DepthResult halfspace_depth(const RationalVector& query, const std::vector<RationalVector>& config) {
    const std::size_t dim = query.size();
    if (dim == 0) throw std::invalid_argument("halfspace_depth: degenerate dimension");
    std::vector<RationalVector> w;
    w.reserve(config.size());
    for (const auto& p : config) {
        if (p.size() != dim) throw std::invalid_argument("halfspace_depth: dimension mismatch");
        w.push_back(p - query);
    }
    DepthResult out = depth_in_subspace(w, {}, dim);
    if (count_closed(w, out.direction) != out.depth) {
        throw std::logic_error("halfspace_depth: direction does not realize the depth");
    }
    return out;
}

}  // namespace kkmforge
