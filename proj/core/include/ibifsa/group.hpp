#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ibifsa/errors.hpp"

namespace ibifsa {

/// A finite group presented by its full Cayley table.
///
/// Elements are dense indices 0..n-1; names are presentation-only. The
/// constructor checks closure, identity, inverses and associativity, so a
/// FiniteGroup in hand is always a group. Immutable after construction.
class FiniteGroup {
public:
    /// Validates the table (O(n^3) associativity scan) and derives identity
    /// and inverse tables. Throws NotClosed / NoIdentity / NoInverse /
    /// NotAssociative with a witness of the violated axiom.
    static FiniteGroup from_table(const std::vector<std::vector<long long>>& table,
                                  std::vector<std::string> names = {},
                                  std::string group_name = "");

    // Standard constructions, all routed through from_table.
    static FiniteGroup cyclic(int n);
    static FiniteGroup dihedral(int n); // order 2n
    static FiniteGroup klein4();
    static FiniteGroup symmetric(int n); // n <= 5; throws TooLarge beyond
    static FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h);

    /// "cyclic:4", "dihedral:3", "klein4", "symmetric:3",
    /// "product:cyclic:2,cyclic:3". Throws ParseError on anything else.
    static FiniteGroup from_spec(std::string_view spec);

    int order() const { return order_; }
    int mul(int x, int y) const { return table_[static_cast<size_t>(x) * order_ + y]; }
    int inverse(int x) const { return inverse_[x]; }
    int identity() const { return identity_; }
    int conjugate(int x, int y) const { return mul(mul(x, y), inverse(x)); } // x y x^-1

    const std::string& element_name(int x) const { return names_[x]; }
    const std::string& name() const { return name_; }
    const std::vector<std::string>& element_names() const { return names_; }

    /// Index of the named element; throws UnknownState.
    int element_by_name(std::string_view name) const;

    bool is_abelian() const;

    std::vector<std::vector<long long>> table_rows() const;

private:
    FiniteGroup() = default;

    int order_ = 0;
    std::vector<int> table_; // row-major, table_[x*n+y] = x*y
    int identity_ = 0;
    std::vector<int> inverse_;
    std::vector<std::string> names_;
    std::string name_;
};

/// A map between validated groups with map(x*y) = map(x)*map(y).
class GroupHomomorphism {
public:
    /// Throws LengthMismatch or NotHomomorphism (with a witness pair).
    GroupHomomorphism(FiniteGroup source, FiniteGroup target, std::vector<int> map);

    const FiniteGroup& source() const { return source_; }
    const FiniteGroup& target() const { return target_; }
    int apply(int x) const { return map_[x]; }
    const std::vector<int>& map() const { return map_; }

    /// Elements of the target hit by the map, ascending.
    std::vector<int> image() const;

private:
    FiniteGroup source_;
    FiniteGroup target_;
    std::vector<int> map_;
};

} // namespace ibifsa
