#include "ibifsa/substructures.hpp"

#include <algorithm>

#include "scan.hpp"

namespace ibifsa {

namespace {

void require_state_carrier(const Machine& m, const IFSubset& s) {
    if (s.size() != m.group().order()) {
        throw CarrierMismatch("subset carrier " + std::to_string(s.size()) +
                              " does not match the state group of order " +
                              std::to_string(m.group().order()));
    }
}

std::string idx(int x) { return std::to_string(x); }

std::vector<std::string> machine_conventions(const Machine& m) {
    auto conventions = standard_conventions();
    conventions.push_back("structure:" + to_string(m.structure_mode()));
    return conventions;
}

// Shared scan bodies: the single-letter evaluators pass the per-letter
// matrices, the star evaluators pass extension matrices per word.

void scan_transition_conditions(const Machine& m, const IFSubset& s,
                                const TransitionMatrixPair& t, const std::string& word_text,
                                detail::ConditionScan& mu_scan,
                                detail::ConditionScan& nu_scan) {
    const int n = m.group().order();
    for (int alpha = 0; alpha < n; ++alpha) {
        for (int beta = 0; beta < n; ++beta) {
            auto bind = [&] {
                return detail::binding(
                    {{"word", word_text}, {"alpha", idx(alpha)}, {"beta", idx(beta)}});
            };
            mu_scan.visit(conj(t.a(alpha, beta), s.mu(alpha)), s.mu(beta), bind);
            nu_scan.visit(s.nu(beta), disj(t.b(alpha, beta), s.nu(alpha)), bind);
        }
    }
}

void scan_difference_conditions(const Machine& m, const IFSubset& s,
                                const TransitionMatrixPair& t, const std::string& word_text,
                                detail::ConditionScan& mu_scan,
                                detail::ConditionScan& nu_scan) {
    const FiniteGroup& g = m.group();
    const int n = g.order();
    for (int alpha = 0; alpha < n; ++alpha) {
        for (int beta = 0; beta < n; ++beta) {
            for (int gamma = 0; gamma < n; ++gamma) {
                const int diff = g.mul(alpha, g.inverse(gamma));
                for (int kappa = 0; kappa < n; ++kappa) {
                    const int bk = g.mul(beta, kappa);
                    auto bind = [&] {
                        return detail::binding({{"word", word_text},
                                                {"alpha", idx(alpha)},
                                                {"beta", idx(beta)},
                                                {"gamma", idx(gamma)},
                                                {"kappa", idx(kappa)}});
                    };
                    mu_scan.visit(conj(conj(t.a(bk, alpha), t.a(beta, gamma)), s.mu(kappa)),
                                  s.mu(diff), bind);
                    nu_scan.visit(s.nu(diff),
                                  disj(disj(t.b(bk, alpha), t.b(beta, gamma)), s.nu(kappa)), bind);
                }
            }
        }
    }
}

} // namespace

DegreeReport subsemi_degree(const Machine& m, const IFSubset& s,
                            std::optional<TruthValue> query_lambda) {
    require_state_carrier(m, s);
    DegreeReport report;
    report.add_condition("subgroup", subgroup_degree(m.group(), s).overall);

    detail::ConditionScan mu_scan("transition_mu", query_lambda);
    detail::ConditionScan nu_scan("transition_nu", query_lambda);
    for (int letter = 0; letter < m.alphabet_size(); ++letter) {
        scan_transition_conditions(m, s, m.letter_matrices(letter), m.alphabet()[letter], mu_scan,
                                   nu_scan);
    }
    mu_scan.emit(report);
    nu_scan.emit(report);
    report.conventions = machine_conventions(m);
    report.finalize();
    return report;
}

DegreeReport kernel_degree(const Machine& m, const IFSubset& s,
                           std::optional<TruthValue> query_lambda) {
    require_state_carrier(m, s);
    DegreeReport report;
    report.add_condition("normal_subgroup", conj(subgroup_degree(m.group(), s).overall,
                                                 normal_degree(m.group(), s)));

    detail::ConditionScan mu_scan("difference_mu", query_lambda);
    detail::ConditionScan nu_scan("difference_nu", query_lambda);
    for (int letter = 0; letter < m.alphabet_size(); ++letter) {
        scan_difference_conditions(m, s, m.letter_matrices(letter), m.alphabet()[letter], mu_scan,
                                   nu_scan);
    }
    mu_scan.emit(report);
    nu_scan.emit(report);
    report.conventions = machine_conventions(m);
    report.finalize();
    return report;
}

DegreeReport subsemi_star_degree(const Machine& m, const IFSubset& s, int max_len,
                                 std::optional<TruthValue> query_lambda, bool mutate) {
    require_state_carrier(m, s);
    if (max_len < 0) {
        throw DomainError("max_len must be >= 0");
    }
    WordExtender extender(m, mutate);
    DegreeReport report;
    detail::ConditionScan mu_scan("transition_mu", query_lambda);
    detail::ConditionScan nu_scan("transition_nu", query_lambda);
    for (const Word& w : words_up_to(m, max_len)) {
        scan_transition_conditions(m, s, *extender.extend(w), m.word_str(w), mu_scan, nu_scan);
    }
    mu_scan.emit(report);
    nu_scan.emit(report);
    report.add_auxiliary("subgroup", subgroup_degree(m.group(), s).overall);
    report.conventions = machine_conventions(m);
    report.finalize();
    return report;
}

DegreeReport kernel_star_degree(const Machine& m, const IFSubset& s, int max_len,
                                std::optional<TruthValue> query_lambda, bool mutate) {
    require_state_carrier(m, s);
    if (max_len < 0) {
        throw DomainError("max_len must be >= 0");
    }
    WordExtender extender(m, mutate);
    DegreeReport report;
    detail::ConditionScan mu_scan("difference_mu", query_lambda);
    detail::ConditionScan nu_scan("difference_nu", query_lambda);
    for (const Word& w : words_up_to(m, max_len)) {
        scan_difference_conditions(m, s, *extender.extend(w), m.word_str(w), mu_scan, nu_scan);
    }
    mu_scan.emit(report);
    nu_scan.emit(report);
    report.add_auxiliary("normal_subgroup", conj(subgroup_degree(m.group(), s).overall,
                                                 normal_degree(m.group(), s)));
    report.conventions = machine_conventions(m);
    report.finalize();
    return report;
}

DegreeReport kernel_epsilon_degree(const Machine& m, const IFSubset& s,
                                   std::optional<TruthValue> query_lambda) {
    require_state_carrier(m, s);
    const int n = m.group().order();
    const int e = m.group().identity();
    DegreeReport report;
    detail::ConditionScan mu_scan("epsilon_mu", query_lambda);
    detail::ConditionScan nu_scan("epsilon_nu", query_lambda);
    for (int letter = 0; letter < m.alphabet_size(); ++letter) {
        const std::string& sym = m.alphabet()[letter];
        for (int alpha = 0; alpha < n; ++alpha) {
            auto bind = [&] {
                return detail::binding({{"word", sym}, {"alpha", idx(alpha)}});
            };
            mu_scan.visit(conj(m.a(e, letter, alpha), s.mu(e)), s.mu(alpha), bind);
            nu_scan.visit(s.nu(alpha), disj(m.b(e, letter, alpha), s.nu(e)), bind);
        }
    }
    mu_scan.emit(report);
    nu_scan.emit(report);
    report.conventions = machine_conventions(m);
    report.finalize();
    return report;
}

std::string to_string(TheoremRelation relation) {
    switch (relation) {
        case TheoremRelation::subsemi_star: return "subsemi-star";
        case TheoremRelation::kernel_star: return "kernel-star";
        case TheoremRelation::kernel_implies_subsemi: return "kernel-implies-subsemi";
        case TheoremRelation::subsemi_implies_epsilon: return "subsemi-implies-epsilon";
    }
    return "?";
}

namespace {

TruthValue transition_only_degree(const DegreeReport& report) {
    TruthValue out = TruthValue::one();
    for (const auto& [label, degree] : report.conditions) {
        if (label != "subgroup" && label != "normal_subgroup") {
            out = conj(out, degree);
        }
    }
    return out;
}

} // namespace

RelationCheck theorem_relation_check(const Machine& m, const IFSubset& s,
                                     TheoremRelation relation, int max_len, bool mutate) {
    RelationCheck check;
    check.relation = relation;
    switch (relation) {
        case TheoremRelation::subsemi_star: {
            check.base = subsemi_degree(m, s);
            check.base_degree = check.base.overall;
            check.derived = subsemi_star_degree(m, s, max_len, check.base_degree, mutate);
            check.derived_degree = check.derived.overall;
            break;
        }
        case TheoremRelation::kernel_star: {
            check.base = kernel_degree(m, s);
            check.base_degree = check.base.overall;
            check.derived = kernel_star_degree(m, s, max_len, check.base_degree, mutate);
            check.derived_degree = check.derived.overall;
            break;
        }
        case TheoremRelation::kernel_implies_subsemi: {
            check.base = kernel_degree(m, s);
            const DegreeReport epsilon = kernel_epsilon_degree(m, s);
            check.base_degree = conj(check.base.overall, epsilon.overall);
            for (const auto& [label, degree] : epsilon.conditions) {
                check.base.add_auxiliary(label, degree);
            }
            DegreeReport derived = subsemi_degree(m, s, check.base_degree);
            check.derived_degree = transition_only_degree(derived);
            check.derived = std::move(derived);
            break;
        }
        case TheoremRelation::subsemi_implies_epsilon: {
            DegreeReport base = subsemi_degree(m, s);
            check.base_degree = transition_only_degree(base);
            check.base = std::move(base);
            check.derived = kernel_epsilon_degree(m, s, check.base_degree);
            check.derived_degree = check.derived.overall;
            break;
        }
    }
    check.pass = check.derived_degree >= check.base_degree;
    return check;
}

namespace {

std::string binding_value(const Witness& w, const std::string& key) {
    for (const auto& [k, v] : w.binding) {
        if (k == key) {
            return v;
        }
    }
    throw ParseError("witness for '" + w.condition + "' lacks binding '" + key + "'");
}

int binding_int(const Witness& w, const std::string& key) {
    return std::stoi(binding_value(w, key));
}

WitnessEval eval_from(const TruthValue& antecedent, const TruthValue& consequent) {
    return WitnessEval{antecedent, consequent, luk_implies(antecedent, consequent)};
}

} // namespace

WitnessEval reevaluate_witness(const FiniteGroup& g, const IFSubset& s, const Witness& w) {
    const std::string& c = w.condition;
    if (c == "closure_mu" || c == "closure_nu" || c == "commutation_mu" || c == "commutation_nu" ||
        c == "conjugation_mu" || c == "conjugation_nu") {
        const int xi = binding_int(w, "xi");
        const int psi = binding_int(w, "psi");
        const int xy = g.mul(xi, psi);
        const int yx = g.mul(psi, xi);
        if (c == "closure_mu") return eval_from(conj(s.mu(xi), s.mu(psi)), s.mu(xy));
        if (c == "closure_nu") return eval_from(s.nu(xy), disj(s.nu(xi), s.nu(psi)));
        if (c == "commutation_mu") return eval_from(s.mu(xy), s.mu(yx));
        if (c == "commutation_nu") return eval_from(s.nu(yx), s.nu(xy));
        const int conj_elem = g.conjugate(xi, psi);
        if (c == "conjugation_mu") return eval_from(s.mu(psi), s.mu(conj_elem));
        return eval_from(s.nu(conj_elem), s.nu(psi));
    }
    if (c == "inverse_mu" || c == "inverse_nu") {
        const int xi = binding_int(w, "xi");
        const int inv = g.inverse(xi);
        if (c == "inverse_mu") return eval_from(s.mu(xi), s.mu(inv));
        return eval_from(s.nu(inv), s.nu(xi));
    }
    if (c == "identity_mu" || c == "identity_nu") {
        const int xi = binding_int(w, "xi");
        const int e = g.identity();
        if (c == "identity_mu") return eval_from(s.mu(xi), s.mu(e));
        return eval_from(s.nu(e), s.nu(xi));
    }
    throw ParseError("cannot re-evaluate condition '" + c + "' at subset level");
}

WitnessEval reevaluate_witness(const Machine& m, const IFSubset& s, const Witness& w) {
    const std::string& c = w.condition;
    const FiniteGroup& g = m.group();
    if (c == "transition_mu" || c == "transition_nu" || c == "difference_mu" ||
        c == "difference_nu") {
        const Word word = m.parse_word(binding_value(w, "word"));
        WordExtender extender(m);
        const auto t = extender.extend(word);
        const int alpha = binding_int(w, "alpha");
        const int beta = binding_int(w, "beta");
        if (c == "transition_mu") {
            return eval_from(conj(t->a(alpha, beta), s.mu(alpha)), s.mu(beta));
        }
        if (c == "transition_nu") {
            return eval_from(s.nu(beta), disj(t->b(alpha, beta), s.nu(alpha)));
        }
        const int gamma = binding_int(w, "gamma");
        const int kappa = binding_int(w, "kappa");
        const int diff = g.mul(alpha, g.inverse(gamma));
        const int bk = g.mul(beta, kappa);
        if (c == "difference_mu") {
            return eval_from(conj(conj(t->a(bk, alpha), t->a(beta, gamma)), s.mu(kappa)),
                             s.mu(diff));
        }
        return eval_from(s.nu(diff), disj(disj(t->b(bk, alpha), t->b(beta, gamma)), s.nu(kappa)));
    }
    if (c == "epsilon_mu" || c == "epsilon_nu") {
        const int letter = m.letter_index(binding_value(w, "word"));
        const int alpha = binding_int(w, "alpha");
        const int e = g.identity();
        if (c == "epsilon_mu") {
            return eval_from(conj(m.a(e, letter, alpha), s.mu(e)), s.mu(alpha));
        }
        return eval_from(s.nu(alpha), disj(m.b(e, letter, alpha), s.nu(e)));
    }
    return reevaluate_witness(g, s, w);
}

WitnessEval reevaluate_witness(const Machine& m, const Witness& w) {
    const std::string& c = w.condition;
    if (c == "concat_equality") {
        const Word xi = m.parse_word(binding_value(w, "xi"));
        const Word psi = m.parse_word(binding_value(w, "psi"));
        const int row = binding_int(w, "row");
        const int col = binding_int(w, "col");
        const std::string side = binding_value(w, "side");
        WordExtender extender(m);
        const auto lhs = extender.extend(xi.concat(psi));
        const auto rhs = compose(*extender.extend(xi), *extender.extend(psi));
        const TruthValue left = side == "a" ? lhs->a(row, col) : lhs->b(row, col);
        const TruthValue right = side == "a" ? rhs.a(row, col) : rhs.b(row, col);
        return WitnessEval{left, right,
                           left == right ? TruthValue::one() : TruthValue::zero()};
    }
    // Structural product-subgroup conditions: "<letter>.closure_mu" etc.
    const auto dot = c.rfind('.');
    if (dot != std::string::npos) {
        const std::string kind = c.substr(dot + 1);
        const int letter = m.letter_index(binding_value(w, "letter"));
        const FiniteGroup& g = m.group();
        const int alpha = binding_int(w, "alpha");
        const int beta = binding_int(w, "beta");
        if (kind == "inverse_mu" || kind == "inverse_nu") {
            const int ia = g.inverse(alpha);
            const int ib = g.inverse(beta);
            if (kind == "inverse_mu") {
                return eval_from(m.a(alpha, letter, beta), m.a(ia, letter, ib));
            }
            return eval_from(m.b(ia, letter, ib), m.b(alpha, letter, beta));
        }
        const int alpha2 = binding_int(w, "alpha2");
        const int beta2 = binding_int(w, "beta2");
        const int pa = g.mul(alpha, alpha2);
        const int pb = g.mul(beta, beta2);
        if (kind == "closure_mu") {
            return eval_from(conj(m.a(alpha, letter, beta), m.a(alpha2, letter, beta2)),
                             m.a(pa, letter, pb));
        }
        if (kind == "closure_nu") {
            return eval_from(m.b(pa, letter, pb),
                             disj(m.b(alpha, letter, beta), m.b(alpha2, letter, beta2)));
        }
    }
    throw ParseError("cannot re-evaluate condition '" + c + "' at machine level");
}

} // namespace ibifsa
