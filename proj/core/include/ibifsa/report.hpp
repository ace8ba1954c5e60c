#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ibifsa/truth_value.hpp"

namespace ibifsa {

/// One instantiation of a quantified condition, recorded so it can be
/// re-evaluated standalone. `binding` is an ordered list of variable -> value
/// pairs (element indices, letters, or whole words as printed text).
struct Witness {
    std::string condition;
    std::vector<std::pair<std::string, std::string>> binding;
    TruthValue antecedent;
    TruthValue consequent;
    TruthValue degree;

    std::string binding_str() const;
};

/// Per-condition tautology degrees plus the witnesses that explain them.
///
/// `conditions` drive `overall` (their minimum); `auxiliary` entries are
/// reported alongside but excluded from it. A witness is recorded for the
/// arg-min of each condition below 1, and for every instantiation below
/// `query_lambda` when one was supplied (capped, lexicographic-first).
struct DegreeReport {
    std::vector<std::pair<std::string, TruthValue>> conditions;
    std::vector<std::pair<std::string, TruthValue>> auxiliary;
    TruthValue overall = TruthValue::one();
    std::vector<Witness> witnesses;
    std::vector<std::string> conventions;

    const TruthValue* find(std::string_view label) const;
    const TruthValue* find_auxiliary(std::string_view label) const;

    void add_condition(std::string label, TruthValue degree);
    void add_auxiliary(std::string label, TruthValue degree);

    /// Recompute `overall` as the min over `conditions` (1 when empty).
    void finalize();
};

/// Names of the resolved reading of the source material, stamped into every
/// report so results are interpretable.
std::vector<std::string> standard_conventions();

/// How many below-lambda witnesses a report keeps per condition.
inline constexpr int max_witnesses_per_condition = 25;

} // namespace ibifsa
