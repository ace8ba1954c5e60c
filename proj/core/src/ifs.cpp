#include "ibifsa/ifs.hpp"

#include "scan.hpp"

namespace ibifsa {

namespace {

void require_carrier(const FiniteGroup& g, const IFSubset& s) {
    if (s.size() != g.order()) {
        throw CarrierMismatch("subset carrier " + std::to_string(s.size()) +
                              " does not match group order " + std::to_string(g.order()));
    }
}

std::string idx(int x) { return std::to_string(x); }

} // namespace

IFSubset IFSubset::create(std::vector<TruthValue> mu, std::vector<TruthValue> nu) {
    if (mu.size() != nu.size()) {
        throw LengthMismatch("mu has " + std::to_string(mu.size()) + " entries, nu has " +
                             std::to_string(nu.size()));
    }
    if (mu.empty()) {
        throw EmptyCarrier("subset carrier is empty");
    }
    for (size_t x = 0; x < mu.size(); ++x) {
        if (mu[x].ratio() + nu[x].ratio() > TruthValue::Ratio(1)) {
            throw ConsistencyViolation("element " + std::to_string(x));
        }
    }
    return IFSubset(std::move(mu), std::move(nu));
}

IFSubset IFSubset::crisp(int carrier_size, const std::vector<int>& members) {
    std::vector<TruthValue> mu(carrier_size, TruthValue::zero());
    std::vector<TruthValue> nu(carrier_size, TruthValue::one());
    for (int m : members) {
        mu[m] = TruthValue::one();
        nu[m] = TruthValue::zero();
    }
    return create(std::move(mu), std::move(nu));
}

IFSubset IFSubset::whole(int carrier_size) {
    return create(std::vector<TruthValue>(carrier_size, TruthValue::one()),
                  std::vector<TruthValue>(carrier_size, TruthValue::zero()));
}

bool IFSubset::is_crisp() const {
    for (const TruthValue& v : mu_) {
        if (!v.is_zero() && !v.is_one()) return false;
    }
    for (const TruthValue& v : nu_) {
        if (!v.is_zero() && !v.is_one()) return false;
    }
    return true;
}

DegreeReport subgroup_report(const FiniteGroup& g, const IFSubset& s,
                             std::optional<TruthValue> query_lambda) {
    require_carrier(g, s);
    const int n = g.order();

    detail::ConditionScan closure_mu("closure_mu", query_lambda);
    detail::ConditionScan inverse_mu("inverse_mu", query_lambda);
    detail::ConditionScan closure_nu("closure_nu", query_lambda);
    detail::ConditionScan inverse_nu("inverse_nu", query_lambda);

    for (int xi = 0; xi < n; ++xi) {
        for (int psi = 0; psi < n; ++psi) {
            const int prod = g.mul(xi, psi);
            auto bind = [&] { return detail::binding({{"xi", idx(xi)}, {"psi", idx(psi)}}); };
            closure_mu.visit(conj(s.mu(xi), s.mu(psi)), s.mu(prod), bind);
            closure_nu.visit(s.nu(prod), disj(s.nu(xi), s.nu(psi)), bind);
        }
    }
    for (int xi = 0; xi < n; ++xi) {
        const int inv = g.inverse(xi);
        auto bind = [&] { return detail::binding({{"xi", idx(xi)}}); };
        inverse_mu.visit(s.mu(xi), s.mu(inv), bind);
        inverse_nu.visit(s.nu(inv), s.nu(xi), bind);
    }

    DegreeReport report;
    closure_mu.emit(report);
    inverse_mu.emit(report);
    closure_nu.emit(report);
    inverse_nu.emit(report);
    report.conventions = standard_conventions();
    report.finalize();
    return report;
}

SubgroupDegrees subgroup_degree(const FiniteGroup& g, const IFSubset& s) {
    const DegreeReport report = subgroup_report(g, s);
    return SubgroupDegrees{
        *report.find("closure_mu"),
        *report.find("inverse_mu"),
        *report.find("closure_nu"),
        *report.find("inverse_nu"),
        report.overall,
    };
}

DegreeReport normal_report(const FiniteGroup& g, const IFSubset& s,
                           std::optional<TruthValue> query_lambda) {
    require_carrier(g, s);
    const int n = g.order();

    detail::ConditionScan commutation_mu("commutation_mu", query_lambda);
    detail::ConditionScan commutation_nu("commutation_nu", query_lambda);
    detail::ConditionScan conjugation_mu("conjugation_mu", query_lambda);
    detail::ConditionScan conjugation_nu("conjugation_nu", query_lambda);

    for (int xi = 0; xi < n; ++xi) {
        for (int psi = 0; psi < n; ++psi) {
            const int xy = g.mul(xi, psi);
            const int yx = g.mul(psi, xi);
            const int conj_elem = g.conjugate(xi, psi);
            auto bind = [&] { return detail::binding({{"xi", idx(xi)}, {"psi", idx(psi)}}); };
            commutation_mu.visit(s.mu(xy), s.mu(yx), bind);
            commutation_nu.visit(s.nu(yx), s.nu(xy), bind);
            conjugation_mu.visit(s.mu(psi), s.mu(conj_elem), bind);
            conjugation_nu.visit(s.nu(conj_elem), s.nu(psi), bind);
        }
    }

    DegreeReport report;
    commutation_mu.emit(report);
    commutation_nu.emit(report);
    conjugation_mu.emit_auxiliary(report);
    conjugation_nu.emit_auxiliary(report);
    report.conventions = standard_conventions();
    report.finalize();
    return report;
}

TruthValue normal_degree(const FiniteGroup& g, const IFSubset& s) {
    return normal_report(g, s).overall;
}

TruthValue normal_degree_conjugation(const FiniteGroup& g, const IFSubset& s) {
    const DegreeReport report = normal_report(g, s);
    return conj(*report.find_auxiliary("conjugation_mu"),
                *report.find_auxiliary("conjugation_nu"));
}

DegreeReport identity_report(const FiniteGroup& g, const IFSubset& s,
                             std::optional<TruthValue> query_lambda) {
    require_carrier(g, s);
    const int n = g.order();
    const int e = g.identity();

    detail::ConditionScan identity_mu("identity_mu", query_lambda);
    detail::ConditionScan identity_nu("identity_nu", query_lambda);
    for (int xi = 0; xi < n; ++xi) {
        auto bind = [&] { return detail::binding({{"xi", idx(xi)}}); };
        identity_mu.visit(s.mu(xi), s.mu(e), bind);
        identity_nu.visit(s.nu(e), s.nu(xi), bind);
    }

    DegreeReport report;
    identity_mu.emit(report);
    identity_nu.emit(report);
    report.conventions = standard_conventions();
    report.finalize();
    return report;
}

TruthValue identity_condition_degree(const FiniteGroup& g, const IFSubset& s) {
    return identity_report(g, s).overall;
}

IFSubset hom_image(const GroupHomomorphism& f, const IFSubset& s) {
    if (s.size() != f.source().order()) {
        throw CarrierMismatch("subset does not live on the homomorphism source");
    }
    const int m = f.target().order();
    std::vector<TruthValue> mu(m, TruthValue::zero());
    std::vector<TruthValue> nu(m, TruthValue::one());
    std::vector<bool> hit(m, false);
    for (int x = 0; x < f.source().order(); ++x) {
        const int t = f.apply(x);
        if (!hit[t]) {
            hit[t] = true;
            mu[t] = s.mu(x);
            nu[t] = s.nu(x);
        } else {
            mu[t] = disj(mu[t], s.mu(x));
            nu[t] = conj(nu[t], s.nu(x));
        }
    }
    return IFSubset::create(std::move(mu), std::move(nu));
}

IFSubset hom_preimage(const GroupHomomorphism& f, const IFSubset& s) {
    if (s.size() != f.target().order()) {
        throw CarrierMismatch("subset does not live on the homomorphism target");
    }
    const int n = f.source().order();
    std::vector<TruthValue> mu(n), nu(n);
    for (int x = 0; x < n; ++x) {
        mu[x] = s.mu(f.apply(x));
        nu[x] = s.nu(f.apply(x));
    }
    return IFSubset::create(std::move(mu), std::move(nu));
}

bool is_classical_subgroup(const FiniteGroup& g, const IFSubset& s) {
    require_carrier(g, s);
    const int n = g.order();
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            const int xy = g.mul(x, y);
            if (s.mu(xy) < conj(s.mu(x), s.mu(y))) return false;
            if (s.nu(xy) > disj(s.nu(x), s.nu(y))) return false;
        }
    }
    for (int x = 0; x < n; ++x) {
        const int inv = g.inverse(x);
        if (s.mu(inv) < s.mu(x)) return false;
        if (s.nu(inv) > s.nu(x)) return false;
    }
    return true;
}

bool is_classical_normal(const FiniteGroup& g, const IFSubset& s) {
    require_carrier(g, s);
    const int n = g.order();
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            const int xy = g.mul(x, y);
            const int yx = g.mul(y, x);
            if (s.mu(yx) < s.mu(xy)) return false;
            if (s.nu(yx) > s.nu(xy)) return false;
        }
    }
    return true;
}

bool is_classical_identity_maximal(const FiniteGroup& g, const IFSubset& s) {
    require_carrier(g, s);
    const int e = g.identity();
    for (int x = 0; x < g.order(); ++x) {
        if (s.mu(e) < s.mu(x)) return false;
        if (s.nu(e) > s.nu(x)) return false;
    }
    return true;
}

} // namespace ibifsa
