#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace elicit {

using Vector = std::vector<double>;

/// Absolute tolerance for equalities and inequality checks.
inline constexpr double kTol = 1e-9;

double dot(std::span<const double> a, std::span<const double> b);
double squared_norm(std::span<const double> a);
double squared_distance(std::span<const double> a, std::span<const double> b);
double distance(std::span<const double> a, std::span<const double> b);
Vector subtract(std::span<const double> a, std::span<const double> b);
Vector add(std::span<const double> a, std::span<const double> b);
Vector scaled(std::span<const double> a, double k);

/// Throws DimensionMismatch when the sizes differ; `what` names the operands.
void require_same_dim(std::size_t a, std::size_t b, const char* what);

bool on_simplex(std::span<const double> p, double tol = kTol);

}  // namespace elicit
