#pragma once

// Internal helper: runs a quantified-implication scan, tracking the condition
// degree (the min), the first arg-min witness, and every instantiation below a
// query lambda (capped). Visits must happen in lexicographic instantiation
// order so reports are deterministic.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ibifsa/report.hpp"
#include "ibifsa/truth_value.hpp"

namespace ibifsa::detail {

class ConditionScan {
public:
    ConditionScan(std::string label, std::optional<TruthValue> query_lambda)
        : label_(std::move(label)), query_(query_lambda) {}

    template <typename MakeBinding>
    void visit(const TruthValue& antecedent, const TruthValue& consequent, MakeBinding&& make) {
        const TruthValue deg = luk_implies(antecedent, consequent);
        if (!seen_ || deg < min_) {
            seen_ = true;
            min_ = deg;
            argmin_ = Witness{label_, make(), antecedent, consequent, deg};
        }
        if (query_ && deg < *query_ &&
            static_cast<int>(below_.size()) < max_witnesses_per_condition) {
            below_.push_back(Witness{label_, make(), antecedent, consequent, deg});
        }
    }

    TruthValue degree() const { return seen_ ? min_ : TruthValue::one(); }

    bool empty() const { return !seen_; }

    void emit(DegreeReport& report) const {
        report.add_condition(label_, degree());
        emit_witnesses(report);
    }

    void emit_auxiliary(DegreeReport& report) const {
        report.add_auxiliary(label_, degree());
        emit_witnesses(report);
    }

private:
    void emit_witnesses(DegreeReport& report) const {
        int emitted = 0;
        if (seen_ && min_ < TruthValue::one()) {
            report.witnesses.push_back(argmin_);
            ++emitted;
        }
        for (const Witness& w : below_) {
            if (emitted >= max_witnesses_per_condition) {
                break;
            }
            if (seen_ && w.binding == argmin_.binding) {
                continue;
            }
            report.witnesses.push_back(w);
            ++emitted;
        }
    }

    std::string label_;
    std::optional<TruthValue> query_;
    bool seen_ = false;
    TruthValue min_ = TruthValue::one();
    Witness argmin_;
    std::vector<Witness> below_;
};

inline std::vector<std::pair<std::string, std::string>> binding(
    std::initializer_list<std::pair<std::string, std::string>> items) {
    return {items.begin(), items.end()};
}

} // namespace ibifsa::detail
