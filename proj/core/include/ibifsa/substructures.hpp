#pragma once

#include <optional>
#include <string>

#include "ibifsa/ifs.hpp"
#include "ibifsa/machine.hpp"
#include "ibifsa/report.hpp"

namespace ibifsa {

// Degree evaluators for fuzzy substructures of a machine. Conditions:
//   subsemi:  "subgroup" (aggregate), "transition_mu", "transition_nu"
//   kernel:   "normal_subgroup" (aggregate), "difference_mu", "difference_nu"
//   epsilon:  "epsilon_mu", "epsilon_nu"
// Star variants quantify the transition/difference families over all words of
// length <= max_len (including the empty word) via the extension matrices.

DegreeReport subsemi_degree(const Machine& m, const IFSubset& s,
                            std::optional<TruthValue> query_lambda = {});

DegreeReport kernel_degree(const Machine& m, const IFSubset& s,
                           std::optional<TruthValue> query_lambda = {});

DegreeReport subsemi_star_degree(const Machine& m, const IFSubset& s, int max_len,
                                 std::optional<TruthValue> query_lambda = {},
                                 bool mutate = false);

DegreeReport kernel_star_degree(const Machine& m, const IFSubset& s, int max_len,
                                std::optional<TruthValue> query_lambda = {},
                                bool mutate = false);

DegreeReport kernel_epsilon_degree(const Machine& m, const IFSubset& s,
                                   std::optional<TruthValue> query_lambda = {});

/// The degree orderings claimed by the source theorems, checked on one
/// instance. `pass` means derived_degree >= base_degree; a failure is a
/// finding, not an exception.
enum class TheoremRelation {
    subsemi_star,            // star transition degrees vs. single-letter overall
    kernel_star,             // star difference degrees vs. single-letter overall
    kernel_implies_subsemi,  // transition degrees vs. min(kernel, epsilon)
    subsemi_implies_epsilon, // epsilon degrees vs. transition degrees (always holds)
};

std::string to_string(TheoremRelation relation);

struct RelationCheck {
    TheoremRelation relation;
    bool pass = true;
    TruthValue base_degree;    // right-hand side of derived >= base
    TruthValue derived_degree; // left-hand side
    DegreeReport base;
    DegreeReport derived; // witnesses list instantiations below base_degree
};

RelationCheck theorem_relation_check(const Machine& m, const IFSubset& s,
                                     TheoremRelation relation, int max_len,
                                     bool mutate = false);

/// Standalone re-evaluation of a recorded witness.
struct WitnessEval {
    TruthValue antecedent;
    TruthValue consequent;
    TruthValue degree;

    bool matches(const Witness& w) const {
        return antecedent == w.antecedent && consequent == w.consequent && degree == w.degree;
    }
};

/// Subset-level conditions (subgroup/normal/identity families).
WitnessEval reevaluate_witness(const FiniteGroup& g, const IFSubset& s, const Witness& w);

/// Machine-level conditions (transition/difference/epsilon families); falls
/// back to the subset-level overload for subgroup-family labels.
WitnessEval reevaluate_witness(const Machine& m, const IFSubset& s, const Witness& w);

/// Machine-only conditions (structural product-subgroup families and
/// concat_equality).
WitnessEval reevaluate_witness(const Machine& m, const Witness& w);

} // namespace ibifsa
