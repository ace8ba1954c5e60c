#pragma once

// Shared test fixtures. "E3" is the two-state one-letter machine used across
// the suites: A_u = [[1/2,1/4],[1/4,1/2]], B_u = [[1/4,1/2],[1/2,1/4]].

#include <random>
#include <vector>

#include "ibifsa/ifs.hpp"
#include "ibifsa/machine.hpp"

namespace fixtures {

using namespace ibifsa;

inline TruthValue tv(long long num, long long den = 1) {
    return TruthValue::fraction(num, den);
}

inline std::vector<std::vector<TruthValue>> matrix2(TruthValue a00, TruthValue a01, TruthValue a10,
                                                    TruthValue a11) {
    return {{a00, a01}, {a10, a11}};
}

inline Machine e3_machine(StructureMode mode = StructureMode::none) {
    return Machine::create(
        FiniteGroup::cyclic(2), {"u"},
        {matrix2(tv(1, 2), tv(1, 4), tv(1, 4), tv(1, 2))},
        {matrix2(tv(1, 4), tv(1, 2), tv(1, 2), tv(1, 4))}, tv(1, 2), mode);
}

inline IFSubset crisp_zero_subset() { return IFSubset::crisp(2, {0}); }

/// Seeded generator of random machines and subsets on a given group; values
/// are drawn from the grid {0..den}/den with mu + nu <= 1 by construction.
class RandomInstances {
public:
    explicit RandomInstances(unsigned seed = 20240817) : rng_(seed) {}

    TruthValue value(int den) { return tv(draw(den), den); }

    std::pair<TruthValue, TruthValue> value_pair(int den) {
        const long long mu = draw(den);
        const long long nu = draw(den - mu);
        return {tv(mu, den), tv(nu, den)};
    }

    IFSubset subset(int carrier, int den) {
        std::vector<TruthValue> mu, nu;
        for (int i = 0; i < carrier; ++i) {
            auto [m, n] = value_pair(den);
            mu.push_back(m);
            nu.push_back(n);
        }
        return IFSubset::create(std::move(mu), std::move(nu));
    }

    Machine machine(FiniteGroup group, int letters, int den,
                    StructureMode mode = StructureMode::none) {
        const int n = group.order();
        std::vector<std::string> alphabet;
        for (int l = 0; l < letters; ++l) {
            alphabet.push_back(std::string(1, static_cast<char>('u' + l)));
        }
        std::vector<std::vector<std::vector<TruthValue>>> mu, nu;
        for (int l = 0; l < letters; ++l) {
            std::vector<std::vector<TruthValue>> ma(n, std::vector<TruthValue>(n));
            std::vector<std::vector<TruthValue>> mb(n, std::vector<TruthValue>(n));
            for (int r = 0; r < n; ++r) {
                for (int c = 0; c < n; ++c) {
                    auto [a, b] = value_pair(den);
                    ma[r][c] = a;
                    mb[r][c] = b;
                }
            }
            mu.push_back(std::move(ma));
            nu.push_back(std::move(mb));
        }
        return Machine::create(std::move(group), std::move(alphabet), std::move(mu), std::move(nu),
                               TruthValue::one(), mode);
    }

    long long draw(long long bound_inclusive) {
        if (bound_inclusive <= 0) {
            return 0;
        }
        return static_cast<long long>(rng_() % static_cast<unsigned long long>(bound_inclusive + 1));
    }

private:
    std::mt19937_64 rng_;
};

} // namespace fixtures
