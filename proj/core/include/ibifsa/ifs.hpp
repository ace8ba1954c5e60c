#pragma once

#include <optional>
#include <vector>

#include "ibifsa/group.hpp"
#include "ibifsa/report.hpp"
#include "ibifsa/truth_value.hpp"

namespace ibifsa {

/// An intuitionistic fuzzy subset of a finite carrier: paired membership and
/// nonmembership maps with mu(x) + nu(x) <= 1 at every point.
class IFSubset {
public:
    /// Throws LengthMismatch, EmptyCarrier, or ConsistencyViolation naming the
    /// first element where mu + nu exceeds 1.
    static IFSubset create(std::vector<TruthValue> mu, std::vector<TruthValue> nu);

    /// mu = 1 on `members`, 0 elsewhere; nu is the complement.
    static IFSubset crisp(int carrier_size, const std::vector<int>& members);

    /// mu identically 1, nu identically 0.
    static IFSubset whole(int carrier_size);

    int size() const { return static_cast<int>(mu_.size()); }
    const TruthValue& mu(int x) const { return mu_[x]; }
    const TruthValue& nu(int x) const { return nu_[x]; }
    const std::vector<TruthValue>& mu_values() const { return mu_; }
    const std::vector<TruthValue>& nu_values() const { return nu_; }

    /// Every mu and nu value is 0 or 1.
    bool is_crisp() const;

    friend bool operator==(const IFSubset& a, const IFSubset& b) {
        return a.mu_ == b.mu_ && a.nu_ == b.nu_;
    }

private:
    IFSubset(std::vector<TruthValue> mu, std::vector<TruthValue> nu)
        : mu_(std::move(mu)), nu_(std::move(nu)) {}
    std::vector<TruthValue> mu_;
    std::vector<TruthValue> nu_;
};

/// Tautology degrees of the four subgroup conditions and their minimum.
struct SubgroupDegrees {
    TruthValue closure_mu;
    TruthValue inverse_mu;
    TruthValue closure_nu;
    TruthValue inverse_nu;
    TruthValue overall;
};

// Degree evaluators. All quantifier scans run in lexicographic element order;
// each throws CarrierMismatch when the subset does not live on the group.

/// min over pairs of I(min(mu(x),mu(y)), mu(xy)) and duals, plus the
/// one-variable inverse conditions.
SubgroupDegrees subgroup_degree(const FiniteGroup& g, const IFSubset& s);

/// Commutation form: min over pairs of I(mu(xy), mu(yx)) and I(nu(yx), nu(xy)).
TruthValue normal_degree(const FiniteGroup& g, const IFSubset& s);

/// Conjugation form: min over pairs of I(mu(y), mu(xyx^-1)) and its dual.
/// Reported side-by-side with the commutation form; they may differ below 1.
TruthValue normal_degree_conjugation(const FiniteGroup& g, const IFSubset& s);

/// min over x of I(mu(x), mu(e)) and I(nu(e), nu(x)).
TruthValue identity_condition_degree(const FiniteGroup& g, const IFSubset& s);

// Report builders: same degrees plus witnesses and conventions.
DegreeReport subgroup_report(const FiniteGroup& g, const IFSubset& s,
                             std::optional<TruthValue> query_lambda = {});
DegreeReport normal_report(const FiniteGroup& g, const IFSubset& s,
                           std::optional<TruthValue> query_lambda = {});
DegreeReport identity_report(const FiniteGroup& g, const IFSubset& s,
                             std::optional<TruthValue> query_lambda = {});

/// Image on f(source): mu_B(t) = max over the fiber, nu_B(t) = min over the
/// fiber; target elements outside the image get mu = 0, nu = 1.
IFSubset hom_image(const GroupHomomorphism& f, const IFSubset& s);

/// Pullback: mu_A(x) = mu_B(f(x)), nu_A(x) = nu_B(f(x)).
IFSubset hom_preimage(const GroupHomomorphism& f, const IFSubset& s);

// Independent inequality-based checkers (no implication evaluation anywhere on
// this path). Degree-1 acceptance of the evaluators above must coincide with
// these on every instance.
bool is_classical_subgroup(const FiniteGroup& g, const IFSubset& s);
bool is_classical_normal(const FiniteGroup& g, const IFSubset& s);
bool is_classical_identity_maximal(const FiniteGroup& g, const IFSubset& s);

} // namespace ibifsa
