#include "kkmforge/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace kkmforge::oracle {

std::optional<RationalVector> solve_linear(std::vector<RationalVector> a, RationalVector b,
                                           std::size_t columns) {
    const std::size_t rows = a.size();
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < columns && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        std::swap(b[p], b[r]);
        const Rational inv = 1 / a[r][c];
        for (std::size_t j = c; j < columns; ++j) a[r][j] *= inv;
        b[r] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            const Rational f = a[i][c];
            for (std::size_t j = c; j < columns; ++j) a[i][j] -= f * a[r][j];
            b[i] -= f * b[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i) {
        if (!b[i].is_zero()) return std::nullopt;
    }
    RationalVector x(columns, Rational(0));
    for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = b[i];
    return x;
}

namespace {

bool satisfies(const LinearSystem& system, const RationalVector& x) {
    for (const auto& row : system.rows()) {
        const Rational v = dot(row.coeffs, x);
        switch (row.relation) {
            case Relation::LessEqual:
                if (v > row.rhs) return false;
                break;
            case Relation::GreaterEqual:
                if (v < row.rhs) return false;
                break;
            case Relation::Equal:
                if (v != row.rhs) return false;
                break;
        }
    }
    return true;
}

}  // namespace

bool feasible_by_enumeration(const LinearSystem& system) {
    const std::size_t n = system.variable_count();
    std::vector<std::size_t> equalities, inequalities;
    for (std::size_t i = 0; i < system.row_count(); ++i) {
        (system.rows()[i].relation == Relation::Equal ? equalities : inequalities).push_back(i);
    }
    const std::size_t m = inequalities.size();
    for (std::size_t size = 0; size <= std::min(n, m); ++size) {
        std::vector<bool> pick(m, false);
        std::fill(pick.begin(), pick.begin() + static_cast<long>(size), true);
        do {
            std::vector<RationalVector> a;
            RationalVector b;
            for (std::size_t i : equalities) {
                a.push_back(system.rows()[i].coeffs);
                b.push_back(system.rows()[i].rhs);
            }
            for (std::size_t k = 0; k < m; ++k) {
                if (!pick[k]) continue;
                a.push_back(system.rows()[inequalities[k]].coeffs);
                b.push_back(system.rows()[inequalities[k]].rhs);
            }
            auto x = solve_linear(std::move(a), std::move(b), n);
            if (x && satisfies(system, *x)) return true;
        } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    return false;
}

bool in_hull_by_simplices(const RationalVector& query, const std::vector<RationalVector>& points) {
    const std::size_t d = query.size();
    const std::size_t n = points.size();
    for (std::size_t size = 1; size <= std::min(n, d + 1); ++size) {
        std::vector<bool> pick(n, false);
        std::fill(pick.begin(), pick.begin() + static_cast<long>(size), true);
        do {
            std::vector<std::size_t> chosen;
            for (std::size_t i = 0; i < n; ++i) {
                if (pick[i]) chosen.push_back(i);
            }
            std::vector<RationalVector> a(d + 1, RationalVector(size));
            RationalVector b(query);
            b.push_back(Rational(1));
            for (std::size_t c = 0; c < size; ++c) {
                for (std::size_t k = 0; k < d; ++k) a[k][c] = points[chosen[c]][k];
                a[d][c] = 1;
            }
            auto lambda = solve_linear(std::move(a), std::move(b), size);
            if (lambda && std::all_of(lambda->begin(), lambda->end(), [](const Rational& v) { return v >= 0; })) {
                return true;
            }
        } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    return false;
}

int depth_low_dimension(const RationalVector& query, const std::vector<RationalVector>& points) {
    const int n = static_cast<int>(points.size());
    if (query.size() == 1) {
        int above = 0, below = 0;
        for (const auto& p : points) {
            if (p[0] >= query[0]) ++above;
            if (p[0] <= query[0]) ++below;
        }
        return std::min(above, below);
    }
    if (query.size() != 2) throw std::invalid_argument("depth oracle: dimension must be 1 or 2");
    int best = n;
    for (const auto& p : points) {
        const Rational wx = p[0] - query[0];
        const Rational wy = p[1] - query[1];
        if (wx.is_zero() && wy.is_zero()) continue;
        for (int s : {-1, 1}) {
            int count = 0;
            for (const auto& o : points) {
                const Rational dx = o[0] - query[0];
                const Rational dy = o[1] - query[1];
                const Rational a = -wy * dx + wx * dy;
                const Rational b = wx * dx + wy * dy;
                if (a > 0 || (a.is_zero() && s * b.sign() >= 0)) ++count;
            }
            best = std::min(best, count);
        }
    }
    return best;
}

std::size_t gf2_rank(std::vector<std::vector<bool>> rows) {
    if (rows.empty()) return 0;
    const std::size_t cols = rows[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && !rows[p][c]) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[r]);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i != r && rows[i][c]) {
                for (std::size_t j = 0; j < cols; ++j) rows[i][j] = rows[i][j] != rows[r][j];
            }
        }
        ++r;
    }
    return r;
}

std::vector<int> betti_numbers(const SimplicialComplex& complex) {
    const int dim = complex.dimension();
    std::vector<std::size_t> ranks(static_cast<std::size_t>(dim) + 1, 0);
    for (int k = 0; k < dim; ++k) {
        const auto& upper = complex.simplices(k + 1);
        std::vector<std::vector<bool>> matrix(upper.size(), std::vector<bool>(complex.count(k), false));
        for (std::size_t t = 0; t < upper.size(); ++t) {
            for (std::size_t drop = 0; drop < upper[t].size(); ++drop) {
                Simplex face = upper[t];
                face.erase(face.begin() + static_cast<long>(drop));
                matrix[t][*complex.index_of(face)] = true;
            }
        }
        ranks[static_cast<std::size_t>(k)] = gf2_rank(std::move(matrix));
    }
    std::vector<int> betti;
    for (int k = 0; k <= dim; ++k) {
        const std::size_t below = k > 0 ? ranks[static_cast<std::size_t>(k) - 1] : 0;
        betti.push_back(static_cast<int>(complex.count(k) - ranks[static_cast<std::size_t>(k)] - below));
    }
    return betti;
}

}  // namespace kkmforge::oracle
