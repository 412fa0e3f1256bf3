#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace elicit {

/// One violation record: the offending indices (pair, cycle, sample triple...)
/// and how far past the tolerance the inequality was broken.
struct Witness {
    std::vector<std::size_t> indices;
    double slack = 0.0;
    std::string kind = "violation";

    friend bool operator==(const Witness&, const Witness&) = default;
};

/// Certificate returned by every checker. `passed` holds exactly when
/// `witnesses` is empty; witnesses are sorted by their index lists.
struct CheckReport {
    bool passed = true;
    std::vector<Witness> witnesses;
    std::map<std::string, double> metrics;
    std::optional<bool> agrees_with_global;

    static CheckReport from_witnesses(std::vector<Witness> witnesses);
};

}  // namespace elicit
