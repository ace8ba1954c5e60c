#include "ibifsa/truth_value.hpp"

#include <charconv>

namespace ibifsa {

namespace {

long long parse_integer(std::string_view text) {
    long long value = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw ParseError("not an integer: '" + std::string(text) + "'");
    }
    return value;
}

} // namespace

TruthValue TruthValue::fraction(long long num, long long den) {
    if (den == 0) {
        throw ParseError("zero denominator");
    }
    return from_ratio(Ratio(num, den));
}

TruthValue TruthValue::from_ratio(const Ratio& r) {
    if (r < Ratio(0) || r > Ratio(1)) {
        throw DomainError("truth value " + std::to_string(r.numerator()) + "/" +
                          std::to_string(r.denominator()) + " outside [0,1]");
    }
    return TruthValue(r, Checked{});
}

TruthValue TruthValue::parse(std::string_view text) {
    if (text.empty()) {
        throw ParseError("empty rational");
    }
    const auto slash = text.find('/');
    long long num = 0;
    long long den = 1;
    if (slash == std::string_view::npos) {
        num = parse_integer(text);
    } else {
        num = parse_integer(text.substr(0, slash));
        den = parse_integer(text.substr(slash + 1));
    }
    if (den <= 0) {
        throw ParseError("denominator must be positive in '" + std::string(text) + "'");
    }
    if (den > max_input_denominator) {
        throw ParseError("denominator above " + std::to_string(max_input_denominator) +
                         " in '" + std::string(text) + "'");
    }
    return fraction(num, den);
}

std::string TruthValue::str() const {
    if (r_.denominator() == 1) {
        return std::to_string(r_.numerator());
    }
    return std::to_string(r_.numerator()) + "/" + std::to_string(r_.denominator());
}

TruthValue luk_implies(const TruthValue& a, const TruthValue& b) {
    TruthValue::Ratio r = TruthValue::Ratio(1) - a.ratio() + b.ratio();
    if (r > TruthValue::Ratio(1)) {
        return TruthValue::one();
    }
    return TruthValue::from_ratio(r);
}

TruthValue goedel_implies(const TruthValue& a, const TruthValue& b) {
    return a <= b ? TruthValue::one() : b;
}

TruthValue conj(const TruthValue& a, const TruthValue& b) {
    return a <= b ? a : b;
}

TruthValue disj(const TruthValue& a, const TruthValue& b) {
    return a <= b ? b : a;
}

TruthValue complement(const TruthValue& a) {
    return TruthValue::from_ratio(TruthValue::Ratio(1) - a.ratio());
}

TruthValue aggregate_forall(std::span<const TruthValue> values) {
    if (values.empty()) {
        throw EmptyCarrier("forall over an empty carrier");
    }
    TruthValue acc = values.front();
    for (const TruthValue& v : values.subspan(1)) {
        acc = conj(acc, v);
    }
    return acc;
}

TruthValue aggregate_exists(std::span<const TruthValue> values) {
    if (values.empty()) {
        throw EmptyCarrier("exists over an empty carrier");
    }
    TruthValue acc = values.front();
    for (const TruthValue& v : values.subspan(1)) {
        acc = disj(acc, v);
    }
    return acc;
}

TruthValue tautology_degree(std::span<const std::pair<TruthValue, TruthValue>> pairs) {
    if (pairs.empty()) {
        throw EmptyCarrier("tautology degree over an empty instantiation list");
    }
    TruthValue acc = TruthValue::one();
    for (const auto& [antecedent, consequent] : pairs) {
        acc = conj(acc, luk_implies(antecedent, consequent));
    }
    return acc;
}

TruthValue chaining_floor(const TruthValue& s) {
    TruthValue::Ratio r = s.ratio() * 2 - 1;
    if (r < TruthValue::Ratio(0)) {
        return TruthValue::zero();
    }
    return TruthValue::from_ratio(r);
}

} // namespace ibifsa
