#include "ibifsa/report.hpp"

namespace ibifsa {

std::string Witness::binding_str() const {
    std::string out;
    for (const auto& [key, value] : binding) {
        if (!out.empty()) {
            out += ", ";
        }
        out += key + "=" + value;
    }
    return out;
}

const TruthValue* DegreeReport::find(std::string_view label) const {
    for (const auto& [name, degree] : conditions) {
        if (name == label) {
            return &degree;
        }
    }
    return nullptr;
}

const TruthValue* DegreeReport::find_auxiliary(std::string_view label) const {
    for (const auto& [name, degree] : auxiliary) {
        if (name == label) {
            return &degree;
        }
    }
    return nullptr;
}

void DegreeReport::add_condition(std::string label, TruthValue degree) {
    conditions.emplace_back(std::move(label), degree);
}

void DegreeReport::add_auxiliary(std::string label, TruthValue degree) {
    auxiliary.emplace_back(std::move(label), degree);
}

void DegreeReport::finalize() {
    overall = TruthValue::one();
    for (const auto& [name, degree] : conditions) {
        overall = conj(overall, degree);
    }
}

std::vector<std::string> standard_conventions() {
    return {
        "empty-word:identity-pair",
        "dual-nu-v1",
        "normal:commutation-form",
    };
}

} // namespace ibifsa
