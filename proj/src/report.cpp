#include "elicit/report.hpp"

#include <algorithm>

#include "elicit/errors.hpp"

namespace elicit {

CheckReport CheckReport::from_witnesses(std::vector<Witness> witnesses) {
    std::stable_sort(witnesses.begin(), witnesses.end(),
                     [](const Witness& a, const Witness& b) { return a.indices < b.indices; });
    CheckReport report;
    report.passed = witnesses.empty();
    report.witnesses = std::move(witnesses);
    return report;
}

NotMonotone::NotMonotone(std::size_t first, std::size_t second)
    : Error("allocation decreases between segments " + std::to_string(first) + " and " +
            std::to_string(second)),
      first(first),
      second(second) {}

NotImplementable::NotImplementable(CheckReport certificate)
    : Error("family violates cyclic monotonicity"), certificate(std::move(certificate)) {}

InconsistentAnchors::InconsistentAnchors(std::size_t from, std::size_t to, double excess)
    : Error("anchors " + std::to_string(from) + " and " + std::to_string(to) +
            " are inconsistent with the family"),
      from(from),
      to(to),
      excess(excess) {}

UnreachableAction::UnreachableAction(std::size_t report, std::size_t action, std::size_t outcome)
    : Error("subgradient nonzero on unreachable action " + std::to_string(action) +
            " (report " + std::to_string(report) + ", outcome " + std::to_string(outcome) + ")"),
      report(report),
      action(action),
      outcome(outcome) {}

}  // namespace elicit
