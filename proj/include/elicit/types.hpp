#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "elicit/report.hpp"
#include "elicit/vec.hpp"

namespace elicit {

/// Finite, ordered set of distinct type vectors sharing one dimension.
class TypeSpace {
public:
    explicit TypeSpace(std::vector<Vector> points);

    std::size_t size() const { return points_.size(); }
    std::size_t dim() const { return dim_; }
    const Vector& operator[](std::size_t i) const { return points_[i]; }
    const std::vector<Vector>& points() const { return points_; }
    auto begin() const { return points_.begin(); }
    auto end() const { return points_.end(); }

    /// Largest pairwise Euclidean distance.
    double diameter() const;

private:
    std::vector<Vector> points_;
    std::size_t dim_ = 0;
};

/// `count` evenly spaced points on [lo, hi] (count >= 1).
TypeSpace uniform_grid_1d(double lo, double hi, std::size_t count);

/// Tensor lattice on the box [lo, hi]^dim with `count` points per axis.
TypeSpace box_lattice(double lo, double hi, std::size_t count, std::size_t dim);

/// All distributions over `n_outcomes` outcomes with coordinates in
/// {0, 1/k, ..., 1}, in lexicographically decreasing order of the
/// first coordinate (so (1,0,...) comes first).
std::vector<Vector> simplex_lattice(std::size_t n_outcomes, std::size_t denominator);

/// One linear functional per type, positionally aligned with a TypeSpace.
class LinearFamily {
public:
    explicit LinearFamily(std::vector<Vector> entries);

    std::size_t size() const { return entries_.size(); }
    std::size_t dim() const { return dim_; }
    const Vector& operator[](std::size_t i) const { return entries_[i]; }
    const std::vector<Vector>& entries() const { return entries_; }

    /// Throws DimensionMismatch unless aligned with `ts` in count and dimension.
    void require_aligned(const TypeSpace& ts) const;

private:
    std::vector<Vector> entries_;
    std::size_t dim_ = 0;
};

struct AffinePiece {
    Vector slope;
    double intercept = 0.0;
};

struct MaxAffine {
    std::vector<AffinePiece> pieces;
};

enum class AnalyticKind { SquaredNorm, NegEntropy };

struct DomainHint {
    bool simplex = false;
    std::optional<std::pair<Vector, Vector>> box;  // lower, upper corners
};

/// A finite convex function: max of affine pieces or a named closed form.
class ConvexSpec {
public:
    using Representation = std::variant<MaxAffine, AnalyticKind>;

    static ConvexSpec max_affine(std::vector<AffinePiece> pieces);
    static ConvexSpec squared_norm();
    static ConvexSpec neg_entropy();

    const Representation& representation() const { return repr_; }
    const MaxAffine* as_max_affine() const { return std::get_if<MaxAffine>(&repr_); }
    std::optional<AnalyticKind> analytic() const;

    /// Dimension fixed by the pieces; nullopt for analytic forms.
    std::optional<std::size_t> fixed_dim() const;

    const DomainHint& hint() const { return hint_; }
    ConvexSpec with_box(Vector lower, Vector upper) const;

private:
    explicit ConvexSpec(Representation repr) : repr_(std::move(repr)) {}

    Representation repr_;
    DomainHint hint_;
};

/// Max-affine envelope of the tangent planes value_k + <grad_k, t - t_k>.
ConvexSpec tangent_envelope(const TypeSpace& at, std::span<const double> values,
                            const LinearFamily& grads);

/// A real number or -infinity. +infinity and NaN are rejected.
class ExtendedReal {
public:
    ExtendedReal(double v);  // NOLINT(google-explicit-constructor)

    static ExtendedReal neg_infinity();

    bool is_neg_infinity() const;
    bool is_finite() const { return !is_neg_infinity(); }
    /// Returns -inf as a double for the marker.
    double value() const { return v_; }

    /// k * x with 0 * (-inf) = 0; negative k times -inf is rejected.
    ExtendedReal times(double k) const;

    friend ExtendedReal operator+(ExtendedReal a, ExtendedReal b);
    friend bool operator==(ExtendedReal a, ExtendedReal b) { return a.v_ == b.v_; }
    friend std::partial_ordering operator<=>(ExtendedReal a, ExtendedReal b) {
        return a.v_ <=> b.v_;
    }

private:
    double v_;
};

struct ScoreRow {
    Vector linear;
    ExtendedReal constant = 0.0;
};

/// Affine score on finitely many reports: A(r)(t) = <linear_r, t> + constant_r.
class ScoreTable {
public:
    explicit ScoreTable(std::vector<ScoreRow> rows);

    std::size_t size() const { return rows_.size(); }
    std::size_t dim() const { return dim_; }
    const ScoreRow& row(std::size_t r) const { return rows_[r]; }
    const std::vector<ScoreRow>& rows() const { return rows_; }

    ExtendedReal value(std::size_t report, std::span<const double> t) const;

    /// Lowest-index maximizing report at t, plus whether another report is
    /// within `tol` of the maximum.
    std::pair<std::size_t, bool> best_report(std::span<const double> t, double tol = kTol) const;

    /// Throws DomainError when sup_r A(r)(t) is -inf at some t of `ts`.
    void require_regular(const TypeSpace& ts) const;

private:
    std::vector<ScoreRow> rows_;
    std::size_t dim_ = 0;
};

/// Pairwise truthfulness scan shared by the global and local checkers:
/// for every pair of types within `radius`, both A(report_of[j])(t_i) <=
/// A(report_of[i])(t_i) and the mirrored inequality must hold within `tol`.
/// Witness indices are (true type, imitated type). Records the smallest
/// truthful margin as metric "min_slack".
CheckReport check_score_pairs(const ScoreTable& score, const TypeSpace& ts,
                              std::span<const std::size_t> report_of, double radius,
                              double tol);

}  // namespace elicit
