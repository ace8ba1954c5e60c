#include "ibifsa/group.hpp"

#include <algorithm>
#include <numeric>

namespace ibifsa {

FiniteGroup FiniteGroup::from_table(const std::vector<std::vector<long long>>& table,
                                    std::vector<std::string> names,
                                    std::string group_name) {
    const int n = static_cast<int>(table.size());
    if (n == 0) {
        throw EmptyCarrier("group carrier is empty");
    }

    FiniteGroup g;
    g.order_ = n;
    g.table_.resize(static_cast<size_t>(n) * n);
    for (int r = 0; r < n; ++r) {
        if (static_cast<int>(table[r].size()) != n) {
            throw LengthMismatch("row " + std::to_string(r) + " has " +
                                 std::to_string(table[r].size()) + " entries, expected " +
                                 std::to_string(n));
        }
        for (int c = 0; c < n; ++c) {
            const long long e = table[r][c];
            if (e < 0 || e >= n) {
                throw NotClosed(r, c, e);
            }
            g.table_[static_cast<size_t>(r) * n + c] = static_cast<int>(e);
        }
    }

    int identity = -1;
    for (int e = 0; e < n; ++e) {
        bool ok = true;
        for (int x = 0; x < n && ok; ++x) {
            ok = g.mul(e, x) == x && g.mul(x, e) == x;
        }
        if (ok) {
            identity = e;
            break;
        }
    }
    if (identity < 0) {
        throw NoIdentity();
    }
    g.identity_ = identity;

    g.inverse_.assign(n, -1);
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            if (g.mul(x, y) == identity && g.mul(y, x) == identity) {
                g.inverse_[x] = y;
                break;
            }
        }
        if (g.inverse_[x] < 0) {
            throw NoInverse(x);
        }
    }

    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            const int ab = g.mul(a, b);
            for (int c = 0; c < n; ++c) {
                if (g.mul(ab, c) != g.mul(a, g.mul(b, c))) {
                    throw NotAssociative(a, b, c);
                }
            }
        }
    }

    if (!names.empty() && static_cast<int>(names.size()) != n) {
        throw LengthMismatch("got " + std::to_string(names.size()) + " element names for order " +
                             std::to_string(n));
    }
    if (names.empty()) {
        names.reserve(n);
        for (int x = 0; x < n; ++x) {
            names.push_back(std::to_string(x));
        }
    }
    g.names_ = std::move(names);
    g.name_ = group_name.empty() ? "order:" + std::to_string(n) : std::move(group_name);
    return g;
}

FiniteGroup FiniteGroup::cyclic(int n) {
    if (n < 1) {
        throw ParseError("cyclic group order must be >= 1");
    }
    std::vector<std::vector<long long>> table(n, std::vector<long long>(n));
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            table[a][b] = (a + b) % n;
        }
    }
    return from_table(table, {}, "cyclic:" + std::to_string(n));
}

FiniteGroup FiniteGroup::dihedral(int n) {
    if (n < 1) {
        throw ParseError("dihedral parameter must be >= 1");
    }
    // Indices 0..n-1 are rotations r^k, n..2n-1 are reflections s*r^k.
    const int order = 2 * n;
    auto rot = [n](int k) { return ((k % n) + n) % n; };
    std::vector<std::vector<long long>> table(order, std::vector<long long>(order));
    std::vector<std::string> names;
    for (int a = 0; a < order; ++a) {
        for (int b = 0; b < order; ++b) {
            const bool ra = a < n, rb = b < n;
            const int ka = a % n, kb = b % n;
            if (ra && rb) {
                table[a][b] = rot(ka + kb);
            } else if (ra && !rb) {
                table[a][b] = n + rot(kb - ka);
            } else if (!ra && rb) {
                table[a][b] = n + rot(ka + kb);
            } else {
                table[a][b] = rot(kb - ka);
            }
        }
    }
    for (int k = 0; k < n; ++k) names.push_back("r" + std::to_string(k));
    for (int k = 0; k < n; ++k) names.push_back("s" + std::to_string(k));
    return from_table(table, std::move(names), "dihedral:" + std::to_string(n));
}

FiniteGroup FiniteGroup::klein4() {
    const std::vector<std::vector<long long>> table = {
        {0, 1, 2, 3},
        {1, 0, 3, 2},
        {2, 3, 0, 1},
        {3, 2, 1, 0},
    };
    return from_table(table, {"e", "a", "b", "c"}, "klein4");
}

FiniteGroup FiniteGroup::symmetric(int n) {
    if (n < 1) {
        throw ParseError("symmetric group parameter must be >= 1");
    }
    if (n > 5) {
        throw TooLarge("symmetric(" + std::to_string(n) + ") has order > 120");
    }
    // Permutations in lexicographic order of their one-line notation.
    std::vector<std::vector<int>> perms;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));

    const int order = static_cast<int>(perms.size());
    auto index_of = [&](const std::vector<int>& q) {
        return static_cast<int>(std::lower_bound(perms.begin(), perms.end(), q) - perms.begin());
    };

    std::vector<std::vector<long long>> table(order, std::vector<long long>(order));
    std::vector<int> composed(n);
    for (int a = 0; a < order; ++a) {
        for (int b = 0; b < order; ++b) {
            // (a*b)(i) = a(b(i)): apply b first.
            for (int i = 0; i < n; ++i) {
                composed[i] = perms[a][perms[b][i]];
            }
            table[a][b] = index_of(composed);
        }
    }
    std::vector<std::string> names;
    names.reserve(order);
    for (const auto& perm : perms) {
        std::string s;
        for (int i : perm) s += std::to_string(i);
        names.push_back(s);
    }
    return from_table(table, std::move(names), "symmetric:" + std::to_string(n));
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& g, const FiniteGroup& h) {
    const int n = g.order(), m = h.order();
    const int order = n * m;
    std::vector<std::vector<long long>> table(order, std::vector<long long>(order));
    std::vector<std::string> names;
    names.reserve(order);
    for (int a = 0; a < order; ++a) {
        const int ga = a / m, ha = a % m;
        names.push_back("(" + g.element_name(ga) + "," + h.element_name(ha) + ")");
        for (int b = 0; b < order; ++b) {
            const int gb = b / m, hb = b % m;
            table[a][b] = static_cast<long long>(g.mul(ga, gb)) * m + h.mul(ha, hb);
        }
    }
    return from_table(table, std::move(names), "product:" + g.name() + "," + h.name());
}

namespace {

int parse_group_param(std::string_view spec, std::string_view family) {
    const auto tail = spec.substr(family.size() + 1);
    try {
        size_t used = 0;
        const int value = std::stoi(std::string(tail), &used);
        if (used != tail.size()) throw std::invalid_argument("trailing");
        return value;
    } catch (const std::exception&) {
        throw ParseError("bad parameter in group spec '" + std::string(spec) + "'");
    }
}

} // namespace

FiniteGroup FiniteGroup::from_spec(std::string_view spec) {
    if (spec == "klein4") {
        return klein4();
    }
    if (spec.starts_with("cyclic:")) {
        return cyclic(parse_group_param(spec, "cyclic"));
    }
    if (spec.starts_with("dihedral:")) {
        return dihedral(parse_group_param(spec, "dihedral"));
    }
    if (spec.starts_with("symmetric:")) {
        return symmetric(parse_group_param(spec, "symmetric"));
    }
    if (spec.starts_with("product:")) {
        const auto body = spec.substr(8);
        // Split at the top-level comma; factors may themselves contain ':'.
        const auto comma = body.find(',');
        if (comma == std::string_view::npos) {
            throw ParseError("product spec needs two factors: '" + std::string(spec) + "'");
        }
        return direct_product(from_spec(body.substr(0, comma)), from_spec(body.substr(comma + 1)));
    }
    throw ParseError("unknown group spec '" + std::string(spec) + "'");
}

int FiniteGroup::element_by_name(std::string_view name) const {
    for (int x = 0; x < order_; ++x) {
        if (names_[x] == name) {
            return x;
        }
    }
    throw UnknownState(std::string(name));
}

bool FiniteGroup::is_abelian() const {
    for (int x = 0; x < order_; ++x) {
        for (int y = x + 1; y < order_; ++y) {
            if (mul(x, y) != mul(y, x)) {
                return false;
            }
        }
    }
    return true;
}

std::vector<std::vector<long long>> FiniteGroup::table_rows() const {
    std::vector<std::vector<long long>> rows(order_, std::vector<long long>(order_));
    for (int r = 0; r < order_; ++r) {
        for (int c = 0; c < order_; ++c) {
            rows[r][c] = mul(r, c);
        }
    }
    return rows;
}

GroupHomomorphism::GroupHomomorphism(FiniteGroup source, FiniteGroup target, std::vector<int> map)
    : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {
    if (static_cast<int>(map_.size()) != source_.order()) {
        throw LengthMismatch("homomorphism map has " + std::to_string(map_.size()) +
                             " entries for a source of order " + std::to_string(source_.order()));
    }
    for (int v : map_) {
        if (v < 0 || v >= target_.order()) {
            throw CarrierMismatch("map value " + std::to_string(v) + " outside the target group");
        }
    }
    for (int x = 0; x < source_.order(); ++x) {
        for (int y = 0; y < source_.order(); ++y) {
            if (map_[source_.mul(x, y)] != target_.mul(map_[x], map_[y])) {
                throw NotHomomorphism(x, y);
            }
        }
    }
}

std::vector<int> GroupHomomorphism::image() const {
    std::vector<bool> hit(target_.order(), false);
    for (int v : map_) {
        hit[v] = true;
    }
    std::vector<int> out;
    for (int t = 0; t < target_.order(); ++t) {
        if (hit[t]) {
            out.push_back(t);
        }
    }
    return out;
}

} // namespace ibifsa
