#include "elicit/vec.hpp"

#include <cmath>
#include <string>

#include "elicit/errors.hpp"

namespace elicit {

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
    if (a != b) {
        throw DimensionMismatch(std::string(what) + ": dimension " + std::to_string(a) +
                                " vs " + std::to_string(b));
    }
}

double dot(std::span<const double> a, std::span<const double> b) {
    require_same_dim(a.size(), b.size(), "dot");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double squared_norm(std::span<const double> a) {
    double s = 0.0;
    for (double x : a) s += x * x;
    return s;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
    require_same_dim(a.size(), b.size(), "distance");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

double distance(std::span<const double> a, std::span<const double> b) {
    return std::sqrt(squared_distance(a, b));
}

Vector subtract(std::span<const double> a, std::span<const double> b) {
    require_same_dim(a.size(), b.size(), "subtract");
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

Vector add(std::span<const double> a, std::span<const double> b) {
    require_same_dim(a.size(), b.size(), "add");
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

Vector scaled(std::span<const double> a, double k) {
    Vector out(a.begin(), a.end());
    for (double& x : out) x *= k;
    return out;
}

bool on_simplex(std::span<const double> p, double tol) {
    if (p.empty()) return false;
    double total = 0.0;
    for (double x : p) {
        if (!(x >= -tol)) return false;
        total += x;
    }
    return std::abs(total - 1.0) <= tol;
}

}  // namespace elicit
