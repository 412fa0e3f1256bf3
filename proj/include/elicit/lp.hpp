#pragma once

#include <cstddef>
#include <vector>

#include "elicit/vec.hpp"

namespace elicit::lp {

using Matrix = std::vector<Vector>;

struct Feasibility {
    bool feasible = false;
    Vector x;       // feasible point when `feasible`
    Vector farkas;  // y >= 0 with y^T A >= 0 and y^T b < 0 otherwise
    std::size_t pivots = 0;
};

/// Decides {x >= 0 : A x <= b} with a dense Phase-I tableau simplex under
/// Bland's rule. `tol` bounds the residual Phase-I objective accepted as zero.
Feasibility phase_one(const Matrix& a, const Vector& b, double tol = kTol);

}  // namespace elicit::lp
