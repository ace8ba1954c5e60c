#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "ibifsa/errors.hpp"

namespace ibifsa {

/// Exact rational truth value in [0,1].
///
/// The carrier of every fuzzy degree and every lambda threshold. Values are
/// kept in lowest terms with a positive denominator, so operator== is
/// structural equality and the threshold test `degree >= lambda` is exact.
class TruthValue {
public:
    using Ratio = boost::rational<long long>;

    /// Largest denominator accepted from external input. Intermediate results
    /// of the evaluation kernel then stay far away from 64-bit overflow.
    static constexpr long long max_input_denominator = 1'000'000'000;

    TruthValue() : r_(0) {}

    static TruthValue zero() { return TruthValue(); }
    static TruthValue one() { return TruthValue(Ratio(1), Checked{}); }

    /// num/den, validated to lie in [0,1].
    static TruthValue fraction(long long num, long long den);

    /// A ratio already known to be a truth value; throws DomainError otherwise.
    static TruthValue from_ratio(const Ratio& r);

    /// Accepts "p/q" or a bare integer ("0", "1"); lowest terms not required.
    static TruthValue parse(std::string_view text);

    const Ratio& ratio() const { return r_; }
    long long num() const { return r_.numerator(); }
    long long den() const { return r_.denominator(); }

    bool is_zero() const { return r_.numerator() == 0; }
    bool is_one() const { return r_ == Ratio(1); }

    /// Lowest-terms rendering: "p/q", or the bare integer when q == 1.
    std::string str() const;

    friend bool operator==(const TruthValue& a, const TruthValue& b) { return a.r_ == b.r_; }
    friend bool operator!=(const TruthValue& a, const TruthValue& b) { return a.r_ != b.r_; }
    friend bool operator<(const TruthValue& a, const TruthValue& b) { return a.r_ < b.r_; }
    friend bool operator<=(const TruthValue& a, const TruthValue& b) { return !(b.r_ < a.r_); }
    friend bool operator>(const TruthValue& a, const TruthValue& b) { return b.r_ < a.r_; }
    friend bool operator>=(const TruthValue& a, const TruthValue& b) { return !(a.r_ < b.r_); }

private:
    struct Checked {};
    TruthValue(Ratio r, Checked) : r_(std::move(r)) {}
    Ratio r_;
};

/// min(1, 1 - a + b). Equals 1 exactly when b >= a.
TruthValue luk_implies(const TruthValue& a, const TruthValue& b);

/// 1 if a <= b, else b. Comparison toggle used by the harness only; every
/// definition evaluates under luk_implies.
TruthValue goedel_implies(const TruthValue& a, const TruthValue& b);

TruthValue conj(const TruthValue& a, const TruthValue& b); // min
TruthValue disj(const TruthValue& a, const TruthValue& b); // max

/// 1 - a. Handy for building dual fixtures; stays in [0,1].
TruthValue complement(const TruthValue& a);

/// inf / sup over a finite non-empty carrier. Throws EmptyCarrier.
TruthValue aggregate_forall(std::span<const TruthValue> values);
TruthValue aggregate_exists(std::span<const TruthValue> values);

/// min over pairs of luk_implies(antecedent, consequent): the supremal lambda
/// at which the quantified implication is a lambda-tautology.
TruthValue tautology_degree(std::span<const std::pair<TruthValue, TruthValue>> pairs);

/// max(0, 2s - 1): the lower bound that one implication chaining step
/// preserves. Used by the harness to bound degradation of derived degrees.
TruthValue chaining_floor(const TruthValue& s);

} // namespace ibifsa
