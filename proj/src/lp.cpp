#include "elicit/lp.hpp"

#include <cmath>
#include <limits>

#include "elicit/errors.hpp"

namespace elicit::lp {

namespace {

constexpr double kPivotEps = 1e-12;

}  // namespace

Feasibility phase_one(const Matrix& a, const Vector& b, double tol) {
    const std::size_t m = a.size();
    require_same_dim(b.size(), m, "constraint right-hand side");
    const std::size_t n = m > 0 ? a.front().size() : 0;
    for (const auto& row : a) require_same_dim(row.size(), n, "constraint row");

    Feasibility out;
    if (m == 0) {
        out.feasible = true;
        out.x.assign(n, 0.0);
        return out;
    }

    // Columns: x (n) | slack (m) | artificial (one per row with b < 0) | rhs.
    std::vector<std::size_t> art_col(m, 0);
    std::size_t n_art = 0;
    for (std::size_t i = 0; i < m; ++i)
        if (b[i] < 0.0) art_col[i] = n + m + n_art++;
    const std::size_t cols = n + m + n_art;
    const std::size_t rhs = cols;

    Matrix t(m + 1, Vector(cols + 1, 0.0));
    std::vector<std::size_t> basis(m);
    Vector& obj = t[m];  // reduced costs, and -objective in the rhs slot
    for (std::size_t i = 0; i < m; ++i) {
        const double sign = b[i] < 0.0 ? -1.0 : 1.0;
        for (std::size_t j = 0; j < n; ++j) t[i][j] = sign * a[i][j];
        t[i][n + i] = sign;
        t[i][rhs] = sign * b[i];
        if (b[i] < 0.0) {
            t[i][art_col[i]] = 1.0;
            basis[i] = art_col[i];
            obj[art_col[i]] = 1.0;
        } else {
            basis[i] = n + i;
        }
    }
    for (std::size_t i = 0; i < m; ++i) {
        if (b[i] >= 0.0) continue;
        for (std::size_t j = 0; j <= cols; ++j) obj[j] -= t[i][j];
    }

    while (true) {
        std::size_t enter = cols;
        for (std::size_t j = 0; j < cols; ++j)
            if (obj[j] < -kPivotEps) {
                enter = j;
                break;
            }
        if (enter == cols) break;

        std::size_t leave = m;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < m; ++i) {
            if (t[i][enter] <= kPivotEps) continue;
            const double ratio = t[i][rhs] / t[i][enter];
            if (ratio < best_ratio - kPivotEps ||
                (std::abs(ratio - best_ratio) <= kPivotEps && leave < m && basis[i] < basis[leave])) {
                best_ratio = ratio;
                leave = i;
            }
        }
        // Phase I is bounded below by zero, so an entering column always has
        // a positive entry.
        if (leave == m) break;

        const double piv = t[leave][enter];
        for (double& v : t[leave]) v /= piv;
        for (std::size_t i = 0; i <= m; ++i) {
            if (i == leave) continue;
            const double f = t[i][enter];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j <= cols; ++j) t[i][j] -= f * t[leave][j];
        }
        basis[leave] = enter;
        ++out.pivots;
    }

    const double residual = -obj[rhs];
    if (residual <= tol) {
        out.feasible = true;
        out.x.assign(n, 0.0);
        for (std::size_t i = 0; i < m; ++i)
            if (basis[i] < n) out.x[basis[i]] = std::max(0.0, t[i][rhs]);
        return out;
    }

    // Simplex multipliers read off the initial identity columns.
    out.farkas.assign(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        const double y = b[i] < 0.0 ? 1.0 - obj[art_col[i]] : obj[n + i];
        out.farkas[i] = std::max(0.0, y);
    }
    return out;
}

}  // namespace elicit::lp
