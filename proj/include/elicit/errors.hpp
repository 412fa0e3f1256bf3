#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "elicit/report.hpp"

namespace elicit {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Point outside the valid domain of a convex function or score.
class DomainError : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// Malformed construction input (empty sets, duplicate points, bad indices).
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// A caller-supplied callable failed during evaluation.
class EvaluationError : public Error {
public:
    using Error::Error;
};

class NonPositiveScale : public Error {
public:
    using Error::Error;
};

/// Step allocation decreases between breakpoint segments `first` and `second`.
class NotMonotone : public Error {
public:
    NotMonotone(std::size_t first, std::size_t second);
    std::size_t first;
    std::size_t second;
};

/// The family admits a positive-weight cycle; `certificate` holds it.
class NotImplementable : public Error {
public:
    explicit NotImplementable(CheckReport certificate);
    CheckReport certificate;
};

/// Two anchored surplus values cannot both hold for any convex surplus.
class InconsistentAnchors : public Error {
public:
    InconsistentAnchors(std::size_t from, std::size_t to, double excess);
    std::size_t from;
    std::size_t to;
    double excess;
};

/// Subgradient is nonzero on an action the decision rule never takes.
class UnreachableAction : public Error {
public:
    UnreachableAction(std::size_t report, std::size_t action, std::size_t outcome);
    std::size_t report;
    std::size_t action;
    std::size_t outcome;
};

}  // namespace elicit
