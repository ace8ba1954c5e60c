#include "ibifsa/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <ctime>
#include <map>
#include <random>
#include <sstream>
#include <thread>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

#include "ibifsa/documents.hpp"

namespace ibifsa {

using boost::multiprecision::cpp_int;
using nlohmann::json;

std::string to_string(TheoremId id) {
    switch (id) {
        case TheoremId::thm_ext: return "thm-ext";
        case TheoremId::thm_subsemi_star: return "thm-subsemi-star";
        case TheoremId::thm_kernel_star: return "thm-kernel-star";
        case TheoremId::thm_kernel_subsemi: return "thm-kernel-subsemi";
        case TheoremId::prop_identity: return "prop-identity";
    }
    return "?";
}

TheoremId theorem_id_from_string(std::string_view text) {
    if (text == "thm-ext") return TheoremId::thm_ext;
    if (text == "thm-subsemi-star") return TheoremId::thm_subsemi_star;
    if (text == "thm-kernel-star") return TheoremId::thm_kernel_star;
    if (text == "thm-kernel-subsemi") return TheoremId::thm_kernel_subsemi;
    if (text == "prop-identity") return TheoremId::prop_identity;
    throw ParseError("unknown theorem id '" + std::string(text) + "'");
}

std::string to_string(GridDof dof) {
    switch (dof) {
        case GridDof::machine: return "machine";
        case GridDof::subset: return "subset";
        case GridDof::joint: return "joint";
    }
    return "?";
}

namespace {

std::vector<std::string> default_alphabet(int size) {
    static constexpr char base[] = "uvwxyz";
    std::vector<std::string> out;
    out.reserve(size);
    for (int i = 0; i < size; ++i) {
        if (i < 6) {
            out.emplace_back(1, base[i]);
        } else {
            out.push_back("u" + std::to_string(i));
        }
    }
    return out;
}

GridDof dof_for(TheoremId id) {
    switch (id) {
        case TheoremId::thm_ext: return GridDof::machine;
        case TheoremId::prop_identity: return GridDof::subset;
        default: return GridDof::joint;
    }
}

// ------------------------------------------------------------------
// Integer engine. All degrees live on the grid {0..D}/D, where min, max
// and min(1, 1-a+b) stay exact as numerator arithmetic over the shared
// denominator. The public TruthValue path re-derives every recorded
// counterexample and a strided sample of instances; any disagreement is
// itself reported as a failure.
// ------------------------------------------------------------------

inline int iimp(int a, int b, int d) { return std::min(d, d - a + b); }

struct WordTable {
    int count = 1;
    std::vector<int> parent{-1};
    std::vector<int> last_letter{-1};
    std::vector<int> length{0};
    std::vector<std::vector<int>> symbols{{}};
    std::vector<int> concat; // count*count, -1 when the concatenation is too long

    void build(int letters, int max_len) {
        std::map<std::vector<int>, int> index{{{}, 0}};
        int level_begin = 0;
        int level_end = 1;
        for (int len = 1; len <= max_len; ++len) {
            for (int w = level_begin; w < level_end; ++w) {
                for (int l = 0; l < letters; ++l) {
                    std::vector<int> syms = symbols[w];
                    syms.push_back(l);
                    parent.push_back(w);
                    last_letter.push_back(l);
                    length.push_back(len);
                    index.emplace(syms, count);
                    symbols.push_back(std::move(syms));
                    ++count;
                }
            }
            level_begin = level_end;
            level_end = count;
        }
        concat.assign(static_cast<size_t>(count) * count, -1);
        for (int i = 0; i < count; ++i) {
            for (int j = 0; j < count; ++j) {
                if (length[i] + length[j] > max_len) {
                    continue;
                }
                std::vector<int> syms = symbols[i];
                syms.insert(syms.end(), symbols[j].begin(), symbols[j].end());
                concat[static_cast<size_t>(i) * count + j] = index.at(syms);
            }
        }
    }
};

struct EngineCtx {
    explicit EngineCtx(FiniteGroup g) : group(std::move(g)) {}

    FiniteGroup group;
    std::vector<std::string> alphabet;
    int n = 0;
    int letters = 1;
    int denom = 1;
    GridDof dof = GridDof::joint;
    bool mutate = false;
    int max_len = 4;
    bool abelian = true;
    int identity = 0;
    std::vector<int> mul;
    std::vector<int> inv;
    WordTable words;
    std::vector<std::pair<int16_t, int16_t>> pairs; // legal (mu, nu), lexicographic
    std::optional<StructureMode> structure_filter;
    TheoremId theorem = TheoremId::thm_ext;

    int machine_entries() const {
        return dof == GridDof::subset ? 0 : letters * n * n;
    }
    int subset_entries() const { return dof == GridDof::machine ? 0 : n; }
    int entries() const { return machine_entries() + subset_entries(); }

    bool has_machine() const { return dof != GridDof::subset; }
    bool has_subset() const { return dof != GridDof::machine; }
};

EngineCtx make_ctx(TheoremId theorem, const std::string& group_spec, int alphabet_size, int denom,
                   int max_len, bool mutate, GridDof dof,
                   std::optional<StructureMode> structure_filter) {
    if (denom < 1) {
        throw DomainError("grid denominator must be >= 1");
    }
    if (alphabet_size < 1) {
        throw EmptyCarrier("alphabet size must be >= 1");
    }
    EngineCtx ctx(load_group(group_spec));
    ctx.theorem = theorem;
    ctx.alphabet = default_alphabet(alphabet_size);
    ctx.n = ctx.group.order();
    ctx.letters = alphabet_size;
    ctx.denom = denom;
    ctx.dof = dof;
    ctx.mutate = mutate;
    ctx.max_len = max_len;
    ctx.abelian = ctx.group.is_abelian();
    ctx.identity = ctx.group.identity();
    ctx.mul.resize(static_cast<size_t>(ctx.n) * ctx.n);
    ctx.inv.resize(ctx.n);
    for (int x = 0; x < ctx.n; ++x) {
        ctx.inv[x] = ctx.group.inverse(x);
        for (int y = 0; y < ctx.n; ++y) {
            ctx.mul[static_cast<size_t>(x) * ctx.n + y] = ctx.group.mul(x, y);
        }
    }
    ctx.words.build(ctx.letters, max_len);
    for (int mu = 0; mu <= denom; ++mu) {
        for (int nu = 0; nu + mu <= denom; ++nu) {
            ctx.pairs.emplace_back(static_cast<int16_t>(mu), static_cast<int16_t>(nu));
        }
    }
    ctx.structure_filter = structure_filter;
    return ctx;
}

/// One instance in engine form; null spans when the dof omits that part.
struct InstanceView {
    const int16_t* av = nullptr; // letters*n*n
    const int16_t* bv = nullptr;
    const int16_t* smu = nullptr; // n
    const int16_t* snu = nullptr;
};

struct InstanceCopy {
    std::vector<int16_t> av, bv, smu, snu;

    static InstanceCopy from(const EngineCtx& ctx, const InstanceView& v) {
        InstanceCopy c;
        if (v.av) {
            c.av.assign(v.av, v.av + ctx.machine_entries());
            c.bv.assign(v.bv, v.bv + ctx.machine_entries());
        }
        if (v.smu) {
            c.smu.assign(v.smu, v.smu + ctx.n);
            c.snu.assign(v.snu, v.snu + ctx.n);
        }
        return c;
    }

    InstanceView view() const {
        return InstanceView{av.empty() ? nullptr : av.data(), bv.empty() ? nullptr : bv.data(),
                            smu.empty() ? nullptr : smu.data(), snu.empty() ? nullptr : snu.data()};
    }
};

// ----- subset-level degrees -----

struct SubgroupInts {
    int closure_mu, inverse_mu, closure_nu, inverse_nu;
    int overall() const {
        return std::min(std::min(closure_mu, inverse_mu), std::min(closure_nu, inverse_nu));
    }
};

SubgroupInts subgroup_ints(const EngineCtx& ctx, const InstanceView& v) {
    const int n = ctx.n, d = ctx.denom;
    SubgroupInts r{d, d, d, d};
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            const int p = ctx.mul[static_cast<size_t>(x) * n + y];
            r.closure_mu = std::min(r.closure_mu, iimp(std::min<int>(v.smu[x], v.smu[y]), v.smu[p], d));
            r.closure_nu = std::min(r.closure_nu, iimp(v.snu[p], std::max<int>(v.snu[x], v.snu[y]), d));
        }
        const int ix = ctx.inv[x];
        r.inverse_mu = std::min(r.inverse_mu, iimp(v.smu[x], v.smu[ix], d));
        r.inverse_nu = std::min(r.inverse_nu, iimp(v.snu[ix], v.snu[x], d));
    }
    return r;
}

int normal_ints(const EngineCtx& ctx, const InstanceView& v) {
    const int n = ctx.n, d = ctx.denom;
    int deg = d;
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            const int xy = ctx.mul[static_cast<size_t>(x) * n + y];
            const int yx = ctx.mul[static_cast<size_t>(y) * n + x];
            deg = std::min(deg, iimp(v.smu[xy], v.smu[yx], d));
            deg = std::min(deg, iimp(v.snu[yx], v.snu[xy], d));
        }
    }
    return deg;
}

int identity_ints(const EngineCtx& ctx, const InstanceView& v) {
    const int d = ctx.denom, e = ctx.identity;
    int deg = d;
    for (int x = 0; x < ctx.n; ++x) {
        deg = std::min(deg, iimp(v.smu[x], v.smu[e], d));
        deg = std::min(deg, iimp(v.snu[e], v.snu[x], d));
    }
    return deg;
}

// Comparison-only checkers; the degree-1 acceptance of the evaluators above
// must coincide with these.

bool classical_subgroup_ints(const EngineCtx& ctx, const InstanceView& v) {
    const int n = ctx.n;
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            const int p = ctx.mul[static_cast<size_t>(x) * n + y];
            if (v.smu[p] < std::min(v.smu[x], v.smu[y])) return false;
            if (v.snu[p] > std::max(v.snu[x], v.snu[y])) return false;
        }
        if (v.smu[ctx.inv[x]] < v.smu[x]) return false;
        if (v.snu[ctx.inv[x]] > v.snu[x]) return false;
    }
    return true;
}

bool classical_identity_ints(const EngineCtx& ctx, const InstanceView& v) {
    for (int x = 0; x < ctx.n; ++x) {
        if (v.smu[ctx.identity] < v.smu[x]) return false;
        if (v.snu[ctx.identity] > v.snu[x]) return false;
    }
    return true;
}

bool classical_normal_ints(const EngineCtx& ctx, const InstanceView& v) {
    const int n = ctx.n;
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            const int xy = ctx.mul[static_cast<size_t>(x) * n + y];
            const int yx = ctx.mul[static_cast<size_t>(y) * n + x];
            if (v.smu[yx] < v.smu[xy]) return false;
            if (v.snu[yx] > v.snu[xy]) return false;
        }
    }
    return true;
}

// ----- crisp boolean oracles (independent route; no implication arithmetic) -----

bool instance_crisp(const EngineCtx& ctx, const InstanceView& v) {
    const int d = ctx.denom;
    auto crisp = [d](int16_t x) { return x == 0 || x == d; };
    if (v.av) {
        for (int i = 0; i < ctx.machine_entries(); ++i) {
            if (!crisp(v.av[i]) || !crisp(v.bv[i])) return false;
        }
    }
    if (v.smu) {
        for (int x = 0; x < ctx.n; ++x) {
            if (!crisp(v.smu[x]) || !crisp(v.snu[x])) return false;
        }
    }
    return true;
}

// ----- machine-level degrees -----

struct Workspace {
    std::vector<int16_t> ext_a, ext_b; // words * n * n
    std::vector<int16_t> tmp_a, tmp_b; // n * n
    std::vector<uint8_t> bool_a, bool_nb; // crisp oracle rows, words * n
    // first consistency violation site
    int bad_word = -1, bad_row = 0, bad_col = 0;
};

void compose_int(int n, const int16_t* pa, const int16_t* pb, const int16_t* qa,
                 const int16_t* qb, int16_t* oa, int16_t* ob, bool corrupted, int d) {
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            int acc_a = corrupted ? d : 0;
            int acc_b = corrupted ? 0 : d;
            for (int g = 0; g < n; ++g) {
                const int ma = std::min<int>(pa[r * n + g], qa[g * n + c]);
                const int xb = std::max<int>(pb[r * n + g], qb[g * n + c]);
                if (corrupted) {
                    acc_a = std::min(acc_a, std::max<int>(pa[r * n + g], qa[g * n + c]));
                    acc_b = std::max(acc_b, std::min<int>(pb[r * n + g], qb[g * n + c]));
                } else {
                    acc_a = std::max(acc_a, ma);
                    acc_b = std::min(acc_b, xb);
                }
            }
            oa[r * n + c] = static_cast<int16_t>(acc_a);
            ob[r * n + c] = static_cast<int16_t>(acc_b);
        }
    }
}

/// Left-fold extension of every word in the table; returns false (and records
/// the first site) if any extension violates a + b <= 1.
bool build_extensions(const EngineCtx& ctx, const InstanceView& v, Workspace& ws) {
    const int n = ctx.n, nn = n * n, d = ctx.denom;
    const int W = ctx.words.count;
    ws.ext_a.resize(static_cast<size_t>(W) * nn);
    ws.ext_b.resize(static_cast<size_t>(W) * nn);
    ws.bad_word = -1;
    // empty word: identity pair
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            ws.ext_a[r * n + c] = static_cast<int16_t>(r == c ? d : 0);
            ws.ext_b[r * n + c] = static_cast<int16_t>(r == c ? 0 : d);
        }
    }
    for (int w = 1; w < W; ++w) {
        int16_t* oa = ws.ext_a.data() + static_cast<size_t>(w) * nn;
        int16_t* ob = ws.ext_b.data() + static_cast<size_t>(w) * nn;
        const int letter = ctx.words.last_letter[w];
        const int16_t* la = v.av + static_cast<size_t>(letter) * nn;
        const int16_t* lb = v.bv + static_cast<size_t>(letter) * nn;
        if (ctx.words.length[w] == 1) {
            std::copy(la, la + nn, oa);
            std::copy(lb, lb + nn, ob);
        } else {
            const int p = ctx.words.parent[w];
            compose_int(n, ws.ext_a.data() + static_cast<size_t>(p) * nn,
                        ws.ext_b.data() + static_cast<size_t>(p) * nn, la, lb, oa, ob, ctx.mutate,
                        d);
        }
    }
    for (int w = 0; w < W; ++w) {
        const int16_t* oa = ws.ext_a.data() + static_cast<size_t>(w) * nn;
        const int16_t* ob = ws.ext_b.data() + static_cast<size_t>(w) * nn;
        for (int i = 0; i < nn; ++i) {
            if (oa[i] + ob[i] > d) {
                ws.bad_word = w;
                ws.bad_row = i / n;
                ws.bad_col = i % n;
                return false;
            }
        }
    }
    return true;
}

/// Exact matrix equality of ext(xi.psi) against compose(ext(xi), ext(psi)),
/// the two-sided evaluation, for every admissible split. The right side always
/// uses the true compose.
bool concat_law_holds(const EngineCtx& ctx, Workspace& ws) {
    const int n = ctx.n, nn = n * n, d = ctx.denom;
    const int W = ctx.words.count;
    ws.tmp_a.resize(nn);
    ws.tmp_b.resize(nn);
    for (int i = 0; i < W; ++i) {
        for (int j = 0; j < W; ++j) {
            const int target = ctx.words.concat[static_cast<size_t>(i) * W + j];
            if (target < 0) {
                continue;
            }
            compose_int(n, ws.ext_a.data() + static_cast<size_t>(i) * nn,
                        ws.ext_b.data() + static_cast<size_t>(i) * nn,
                        ws.ext_a.data() + static_cast<size_t>(j) * nn,
                        ws.ext_b.data() + static_cast<size_t>(j) * nn, ws.tmp_a.data(),
                        ws.tmp_b.data(), false, d);
            const int16_t* ta = ws.ext_a.data() + static_cast<size_t>(target) * nn;
            const int16_t* tb = ws.ext_b.data() + static_cast<size_t>(target) * nn;
            if (!std::equal(ws.tmp_a.begin(), ws.tmp_a.end(), ta) ||
                !std::equal(ws.tmp_b.begin(), ws.tmp_b.end(), tb)) {
                return false;
            }
        }
    }
    return true;
}

/// Crisp oracle for extensions: boolean reachability by bitmask matrix
/// products; the nonmembership side folds as the complement.
bool crisp_extensions_agree(const EngineCtx& ctx, const InstanceView& v, Workspace& ws) {
    const int n = ctx.n, nn = n * n, d = ctx.denom;
    const int W = ctx.words.count;
    ws.bool_a.assign(static_cast<size_t>(W) * n, 0);
    ws.bool_nb.assign(static_cast<size_t>(W) * n, 0);
    for (int r = 0; r < n; ++r) {
        ws.bool_a[r] = static_cast<uint8_t>(1u << r);
        ws.bool_nb[r] = static_cast<uint8_t>(1u << r);
    }
    for (int w = 1; w < W; ++w) {
        uint8_t* oa = ws.bool_a.data() + static_cast<size_t>(w) * n;
        uint8_t* onb = ws.bool_nb.data() + static_cast<size_t>(w) * n;
        const int letter = ctx.words.last_letter[w];
        const int16_t* la = v.av + static_cast<size_t>(letter) * nn;
        const int16_t* lb = v.bv + static_cast<size_t>(letter) * nn;
        uint8_t letter_a[8] = {0}, letter_nb[8] = {0};
        for (int r = 0; r < n; ++r) {
            for (int c = 0; c < n; ++c) {
                if (la[r * n + c] == d) letter_a[r] |= static_cast<uint8_t>(1u << c);
                if (lb[r * n + c] != d) letter_nb[r] |= static_cast<uint8_t>(1u << c);
            }
        }
        const int p = ctx.words.parent[w];
        const uint8_t* pa = ws.bool_a.data() + static_cast<size_t>(p) * n;
        const uint8_t* pnb = ws.bool_nb.data() + static_cast<size_t>(p) * n;
        for (int r = 0; r < n; ++r) {
            uint8_t acc_a = 0, acc_nb = 0;
            for (int g = 0; g < n; ++g) {
                if (pa[r] & (1u << g)) acc_a |= letter_a[g];
                if (pnb[r] & (1u << g)) acc_nb |= letter_nb[g];
            }
            oa[r] = acc_a;
            onb[r] = acc_nb;
        }
    }
    for (int w = 0; w < W; ++w) {
        const int16_t* ea = ws.ext_a.data() + static_cast<size_t>(w) * nn;
        const int16_t* eb = ws.ext_b.data() + static_cast<size_t>(w) * nn;
        const uint8_t* ba = ws.bool_a.data() + static_cast<size_t>(w) * n;
        const uint8_t* bnb = ws.bool_nb.data() + static_cast<size_t>(w) * n;
        for (int r = 0; r < n; ++r) {
            for (int c = 0; c < n; ++c) {
                const bool oracle_a = (ba[r] >> c) & 1u;
                const bool oracle_nb = (bnb[r] >> c) & 1u;
                if ((ea[r * n + c] == d) != oracle_a) return false;
                if ((eb[r * n + c] != d) != oracle_nb) return false;
            }
        }
    }
    return true;
}

struct TransitionInts {
    int tmu, tnu;
};

/// Single-letter transition conditions; pass ws extensions for the star form.
TransitionInts transition_ints(const EngineCtx& ctx, const InstanceView& v) {
    const int n = ctx.n, d = ctx.denom;
    TransitionInts r{d, d};
    for (int letter = 0; letter < ctx.letters; ++letter) {
        const int16_t* la = v.av + static_cast<size_t>(letter) * n * n;
        const int16_t* lb = v.bv + static_cast<size_t>(letter) * n * n;
        for (int alpha = 0; alpha < n; ++alpha) {
            for (int beta = 0; beta < n; ++beta) {
                r.tmu = std::min(r.tmu, iimp(std::min<int>(la[alpha * n + beta], v.smu[alpha]),
                                             v.smu[beta], d));
                r.tnu = std::min(r.tnu, iimp(v.snu[beta],
                                             std::max<int>(lb[alpha * n + beta], v.snu[alpha]), d));
            }
        }
    }
    return r;
}

TransitionInts transition_star_ints(const EngineCtx& ctx, const InstanceView& v,
                                    const Workspace& ws) {
    const int n = ctx.n, nn = n * n, d = ctx.denom;
    TransitionInts r{d, d};
    for (int w = 0; w < ctx.words.count; ++w) {
        const int16_t* ea = ws.ext_a.data() + static_cast<size_t>(w) * nn;
        const int16_t* eb = ws.ext_b.data() + static_cast<size_t>(w) * nn;
        for (int alpha = 0; alpha < n; ++alpha) {
            for (int beta = 0; beta < n; ++beta) {
                r.tmu = std::min(r.tmu,
                                 iimp(std::min<int>(ea[alpha * n + beta], v.smu[alpha]),
                                      v.smu[beta], d));
                r.tnu = std::min(r.tnu, iimp(v.snu[beta],
                                             std::max<int>(eb[alpha * n + beta], v.snu[alpha]), d));
            }
        }
    }
    return r;
}

struct DifferenceInts {
    int dmu, dnu;
};

DifferenceInts difference_ints_one(const EngineCtx& ctx, const InstanceView& v, const int16_t* ta,
                                   const int16_t* tb) {
    const int n = ctx.n, d = ctx.denom;
    DifferenceInts r{d, d};
    for (int alpha = 0; alpha < n; ++alpha) {
        for (int beta = 0; beta < n; ++beta) {
            for (int gamma = 0; gamma < n; ++gamma) {
                const int diff = ctx.mul[static_cast<size_t>(alpha) * n + ctx.inv[gamma]];
                const int leg2_a = ta[beta * n + gamma];
                const int leg2_b = tb[beta * n + gamma];
                for (int kappa = 0; kappa < n; ++kappa) {
                    const int bk = ctx.mul[static_cast<size_t>(beta) * n + kappa];
                    const int ant =
                        std::min(std::min<int>(ta[bk * n + alpha], leg2_a), static_cast<int>(v.smu[kappa]));
                    r.dmu = std::min(r.dmu, iimp(ant, v.smu[diff], d));
                    const int con =
                        std::max(std::max<int>(tb[bk * n + alpha], leg2_b), static_cast<int>(v.snu[kappa]));
                    r.dnu = std::min(r.dnu, iimp(v.snu[diff], con, d));
                }
            }
        }
    }
    return r;
}

DifferenceInts difference_ints(const EngineCtx& ctx, const InstanceView& v) {
    const int nn = ctx.n * ctx.n;
    DifferenceInts r{ctx.denom, ctx.denom};
    for (int letter = 0; letter < ctx.letters; ++letter) {
        const DifferenceInts one = difference_ints_one(ctx, v, v.av + static_cast<size_t>(letter) * nn,
                                                       v.bv + static_cast<size_t>(letter) * nn);
        r.dmu = std::min(r.dmu, one.dmu);
        r.dnu = std::min(r.dnu, one.dnu);
    }
    return r;
}

DifferenceInts difference_star_ints(const EngineCtx& ctx, const InstanceView& v,
                                    const Workspace& ws) {
    const int nn = ctx.n * ctx.n;
    DifferenceInts r{ctx.denom, ctx.denom};
    for (int w = 0; w < ctx.words.count; ++w) {
        const DifferenceInts one =
            difference_ints_one(ctx, v, ws.ext_a.data() + static_cast<size_t>(w) * nn,
                                ws.ext_b.data() + static_cast<size_t>(w) * nn);
        r.dmu = std::min(r.dmu, one.dmu);
        r.dnu = std::min(r.dnu, one.dnu);
    }
    return r;
}

struct EpsilonInts {
    int emu, enu;
};

EpsilonInts epsilon_ints(const EngineCtx& ctx, const InstanceView& v) {
    const int n = ctx.n, d = ctx.denom, e = ctx.identity;
    EpsilonInts r{d, d};
    for (int letter = 0; letter < ctx.letters; ++letter) {
        const int16_t* la = v.av + static_cast<size_t>(letter) * n * n;
        const int16_t* lb = v.bv + static_cast<size_t>(letter) * n * n;
        for (int alpha = 0; alpha < n; ++alpha) {
            r.emu = std::min(r.emu,
                             iimp(std::min<int>(la[e * n + alpha], v.smu[e]), v.smu[alpha], d));
            r.enu = std::min(r.enu,
                             iimp(v.snu[alpha], std::max<int>(lb[e * n + alpha], v.snu[e]), d));
        }
    }
    return r;
}

/// Per-letter product-subgroup structural degrees all equal to 1?
bool structure_degree_one(const EngineCtx& ctx, const InstanceView& v) {
    const int n = ctx.n, nn = n * n;
    for (int letter = 0; letter < ctx.letters; ++letter) {
        const int16_t* la = v.av + static_cast<size_t>(letter) * nn;
        const int16_t* lb = v.bv + static_cast<size_t>(letter) * nn;
        for (int a1 = 0; a1 < n; ++a1) {
            for (int b1 = 0; b1 < n; ++b1) {
                const int ia = ctx.inv[a1], ib = ctx.inv[b1];
                if (la[ia * n + ib] < la[a1 * n + b1]) return false;
                if (lb[ia * n + ib] > lb[a1 * n + b1]) return false;
                for (int a2 = 0; a2 < n; ++a2) {
                    for (int b2 = 0; b2 < n; ++b2) {
                        const int pa = ctx.mul[static_cast<size_t>(a1) * n + a2];
                        const int pb = ctx.mul[static_cast<size_t>(b1) * n + b2];
                        if (la[pa * n + pb] < std::min(la[a1 * n + b1], la[a2 * n + b2]))
                            return false;
                        if (lb[pa * n + pb] > std::max(lb[a1 * n + b1], lb[a2 * n + b2]))
                            return false;
                    }
                }
            }
        }
    }
    return true;
}

// ------------------------------------------------------------------
// Search driver
// ------------------------------------------------------------------

struct PendingRecord {
    unsigned long long index = 0;
    std::string kind;
    InstanceCopy instance;
    std::vector<std::pair<std::string, std::string>> degrees;
};

struct ChunkAccum {
    unsigned long long examined = 0;
    unsigned long long filtered_out = 0;
    unsigned long long hard = 0;
    unsigned long long findings = 0;
    std::map<std::string, unsigned long long> kinds;
    SearchChecks checks;
    std::vector<PendingRecord> hard_records;
    std::vector<PendingRecord> finding_records;
};

std::string ratio_str(int num, int denom) { return TruthValue::fraction(num, denom).str(); }

void push_record(std::vector<PendingRecord>& records, const EngineCtx& ctx,
                 unsigned long long index, const InstanceView& v, std::string kind,
                 std::vector<std::pair<std::string, std::string>> degrees) {
    if (static_cast<int>(records.size()) >= max_records_per_report) {
        return;
    }
    records.push_back(
        PendingRecord{index, std::move(kind), InstanceCopy::from(ctx, v), std::move(degrees)});
}

void record_hard(ChunkAccum& acc, const EngineCtx& ctx, unsigned long long index,
                 const InstanceView& v, const std::string& kind,
                 std::vector<std::pair<std::string, std::string>> degrees = {}) {
    ++acc.hard;
    ++acc.kinds[kind];
    push_record(acc.hard_records, ctx, index, v, kind, std::move(degrees));
}

void record_finding(ChunkAccum& acc, const EngineCtx& ctx, unsigned long long index,
                    const InstanceView& v, const std::string& kind,
                    std::vector<std::pair<std::string, std::string>> degrees = {}) {
    ++acc.findings;
    ++acc.kinds[kind];
    push_record(acc.finding_records, ctx, index, v, kind, std::move(degrees));
}

Machine build_public_machine(const EngineCtx& ctx, const InstanceView& v) {
    const int n = ctx.n;
    std::vector<std::vector<std::vector<TruthValue>>> mu, nu;
    for (int letter = 0; letter < ctx.letters; ++letter) {
        std::vector<std::vector<TruthValue>> ma(n, std::vector<TruthValue>(n));
        std::vector<std::vector<TruthValue>> mb(n, std::vector<TruthValue>(n));
        for (int alpha = 0; alpha < n; ++alpha) {
            for (int beta = 0; beta < n; ++beta) {
                const size_t at = (static_cast<size_t>(letter) * n + alpha) * n + beta;
                ma[alpha][beta] = TruthValue::fraction(v.av[at], ctx.denom);
                mb[alpha][beta] = TruthValue::fraction(v.bv[at], ctx.denom);
            }
        }
        mu.push_back(std::move(ma));
        nu.push_back(std::move(mb));
    }
    return Machine::create(ctx.group, ctx.alphabet, std::move(mu), std::move(nu),
                           TruthValue::one(), StructureMode::none);
}

IFSubset build_public_subset(const EngineCtx& ctx, const InstanceView& v) {
    std::vector<TruthValue> mu(ctx.n), nu(ctx.n);
    for (int x = 0; x < ctx.n; ++x) {
        mu[x] = TruthValue::fraction(v.smu[x], ctx.denom);
        nu[x] = TruthValue::fraction(v.snu[x], ctx.denom);
    }
    return IFSubset::create(std::move(mu), std::move(nu));
}

/// Re-derives the engine verdict through the public TruthValue path.
bool public_path_agrees(const EngineCtx& ctx, const InstanceView& v) {
    const int d = ctx.denom;
    switch (ctx.theorem) {
        case TheoremId::thm_ext: {
            const Machine m = build_public_machine(ctx, v);
            Workspace ws;
            const bool consistent = build_extensions(ctx, v, ws);
            const bool law = concat_law_holds(ctx, ws);
            const ConcatCheckResult pub = concat_equality_check(m, ctx.max_len, ctx.mutate);
            if (law != pub.witnesses.empty()) return false;
            bool pub_consistent = true;
            WordExtender extender(m, ctx.mutate);
            for (const Word& w : words_up_to(m, ctx.max_len)) {
                if (!extender.extend(w)->consistent()) {
                    pub_consistent = false;
                    break;
                }
            }
            return consistent == pub_consistent;
        }
        case TheoremId::prop_identity: {
            const IFSubset s = build_public_subset(ctx, v);
            const SubgroupInts sg = subgroup_ints(ctx, v);
            const int id_deg = identity_ints(ctx, v);
            return subgroup_degree(ctx.group, s).overall == TruthValue::fraction(sg.overall(), d) &&
                   identity_condition_degree(ctx.group, s) == TruthValue::fraction(id_deg, d) &&
                   normal_degree(ctx.group, s) == TruthValue::fraction(normal_ints(ctx, v), d);
        }
        case TheoremId::thm_subsemi_star: {
            const Machine m = build_public_machine(ctx, v);
            const IFSubset s = build_public_subset(ctx, v);
            Workspace ws;
            build_extensions(ctx, v, ws);
            const TransitionInts single = transition_ints(ctx, v);
            const TransitionInts star = transition_star_ints(ctx, v, ws);
            const DegreeReport base = subsemi_degree(m, s);
            const DegreeReport derived = subsemi_star_degree(m, s, ctx.max_len, {}, ctx.mutate);
            return *base.find("transition_mu") == TruthValue::fraction(single.tmu, d) &&
                   *base.find("transition_nu") == TruthValue::fraction(single.tnu, d) &&
                   *derived.find("transition_mu") == TruthValue::fraction(star.tmu, d) &&
                   *derived.find("transition_nu") == TruthValue::fraction(star.tnu, d);
        }
        case TheoremId::thm_kernel_star: {
            const Machine m = build_public_machine(ctx, v);
            const IFSubset s = build_public_subset(ctx, v);
            Workspace ws;
            build_extensions(ctx, v, ws);
            const DifferenceInts single = difference_ints(ctx, v);
            const DifferenceInts star = difference_star_ints(ctx, v, ws);
            const DegreeReport base = kernel_degree(m, s);
            const DegreeReport derived = kernel_star_degree(m, s, ctx.max_len, {}, ctx.mutate);
            return *base.find("difference_mu") == TruthValue::fraction(single.dmu, d) &&
                   *base.find("difference_nu") == TruthValue::fraction(single.dnu, d) &&
                   *derived.find("difference_mu") == TruthValue::fraction(star.dmu, d) &&
                   *derived.find("difference_nu") == TruthValue::fraction(star.dnu, d);
        }
        case TheoremId::thm_kernel_subsemi: {
            const Machine m = build_public_machine(ctx, v);
            const IFSubset s = build_public_subset(ctx, v);
            const DifferenceInts diff = difference_ints(ctx, v);
            const EpsilonInts eps = epsilon_ints(ctx, v);
            const TransitionInts trans = transition_ints(ctx, v);
            const DegreeReport kernel = kernel_degree(m, s);
            const DegreeReport epsilon = kernel_epsilon_degree(m, s);
            const DegreeReport subsemi = subsemi_degree(m, s);
            return *kernel.find("difference_mu") == TruthValue::fraction(diff.dmu, d) &&
                   epsilon.overall == TruthValue::fraction(std::min(eps.emu, eps.enu), d) &&
                   *subsemi.find("transition_mu") == TruthValue::fraction(trans.tmu, d) &&
                   *subsemi.find("transition_nu") == TruthValue::fraction(trans.tnu, d);
        }
    }
    return true;
}

// Per-theorem instance evaluation.
void evaluate_instance(const EngineCtx& ctx, const InstanceView& v, unsigned long long index,
                       Workspace& ws, ChunkAccum& acc) {
    const int d = ctx.denom;
    const bool crisp = !ctx.mutate && instance_crisp(ctx, v);

    switch (ctx.theorem) {
        case TheoremId::thm_ext: {
            const bool consistent = build_extensions(ctx, v, ws);
            if (!consistent) {
                ++acc.checks.consistency_violations;
                record_hard(acc, ctx, index, v, "consistency");
            }
            if (!concat_law_holds(ctx, ws)) {
                record_hard(acc, ctx, index, v, "concat");
            }
            if (crisp && !crisp_extensions_agree(ctx, v, ws)) {
                ++acc.checks.crisp_disagreements;
                record_hard(acc, ctx, index, v, "crisp-oracle");
            }
            break;
        }
        case TheoremId::prop_identity: {
            const SubgroupInts sg = subgroup_ints(ctx, v);
            const int s = sg.overall();
            const int i = identity_ints(ctx, v);
            const int nrm = normal_ints(ctx, v);
            auto degrees = [&] {
                return std::vector<std::pair<std::string, std::string>>{
                    {"subgroup", ratio_str(s, d)},
                    {"identity", ratio_str(i, d)},
                    {"normal", ratio_str(nrm, d)}};
            };
            if (s == d && i < d) {
                record_hard(acc, ctx, index, v, "prop-identity", degrees());
            }
            if (i < std::max(0, 2 * s - d)) {
                record_hard(acc, ctx, index, v, "chaining-bound", degrees());
            }
            if (!ctx.mutate && classical_subgroup_ints(ctx, v) != (s == d)) {
                ++acc.checks.classical_disagreements;
                record_hard(acc, ctx, index, v, "classical-oracle", degrees());
            }
            if (!ctx.mutate && ctx.abelian && nrm != d) {
                ++acc.checks.abelian_normal_violations;
                record_hard(acc, ctx, index, v, "abelian-normal", degrees());
            }
            if (crisp) {
                const bool id_ok = classical_identity_ints(ctx, v) == (i == d);
                const bool nrm_ok = classical_normal_ints(ctx, v) == (nrm == d);
                if (!id_ok || !nrm_ok) {
                    ++acc.checks.crisp_disagreements;
                    record_hard(acc, ctx, index, v, "crisp-oracle", degrees());
                }
            }
            break;
        }
        case TheoremId::thm_subsemi_star:
        case TheoremId::thm_kernel_star: {
            const bool is_subsemi = ctx.theorem == TheoremId::thm_subsemi_star;
            const bool consistent = build_extensions(ctx, v, ws);
            if (!consistent) {
                ++acc.checks.consistency_violations;
                record_hard(acc, ctx, index, v, "consistency");
            }
            const SubgroupInts sg = subgroup_ints(ctx, v);
            int base_structural = sg.overall();
            if (!is_subsemi) {
                base_structural = std::min(base_structural, normal_ints(ctx, v));
            }
            int single_lo, star_lo;
            std::vector<std::pair<std::string, std::string>> degrees;
            if (is_subsemi) {
                const TransitionInts single = transition_ints(ctx, v);
                const TransitionInts star = transition_star_ints(ctx, v, ws);
                single_lo = std::min(single.tmu, single.tnu);
                star_lo = std::min(star.tmu, star.tnu);
                degrees = {{"subgroup", ratio_str(sg.overall(), d)},
                           {"transition_mu", ratio_str(single.tmu, d)},
                           {"transition_nu", ratio_str(single.tnu, d)},
                           {"star_transition_mu", ratio_str(star.tmu, d)},
                           {"star_transition_nu", ratio_str(star.tnu, d)}};
                const EpsilonInts eps = epsilon_ints(ctx, v);
                if (std::min(eps.emu, eps.enu) < single_lo) {
                    ++acc.checks.epsilon_subset_violations;
                    record_hard(acc, ctx, index, v, "epsilon-subset", degrees);
                }
                if (crisp) {
                    // boolean reading of the transition conditions
                    bool bool_mu = true, bool_nu = true;
                    const int n = ctx.n;
                    for (int letter = 0; letter < ctx.letters; ++letter) {
                        const int16_t* la = v.av + static_cast<size_t>(letter) * n * n;
                        const int16_t* lb = v.bv + static_cast<size_t>(letter) * n * n;
                        for (int alpha = 0; alpha < n; ++alpha) {
                            for (int beta = 0; beta < n; ++beta) {
                                if (la[alpha * n + beta] == d && v.smu[alpha] == d &&
                                    v.smu[beta] != d) {
                                    bool_mu = false;
                                }
                                if (v.snu[beta] == d && lb[alpha * n + beta] != d &&
                                    v.snu[alpha] != d) {
                                    bool_nu = false;
                                }
                            }
                        }
                    }
                    const bool ok =
                        (bool_mu == (single.tmu == d)) && (bool_nu == (single.tnu == d));
                    if (!ok) {
                        ++acc.checks.crisp_disagreements;
                        record_hard(acc, ctx, index, v, "crisp-oracle", degrees);
                    }
                }
            } else {
                const DifferenceInts single = difference_ints(ctx, v);
                const DifferenceInts star = difference_star_ints(ctx, v, ws);
                single_lo = std::min(single.dmu, single.dnu);
                star_lo = std::min(star.dmu, star.dnu);
                degrees = {{"normal_subgroup", ratio_str(base_structural, d)},
                           {"difference_mu", ratio_str(single.dmu, d)},
                           {"difference_nu", ratio_str(single.dnu, d)},
                           {"star_difference_mu", ratio_str(star.dmu, d)},
                           {"star_difference_nu", ratio_str(star.dnu, d)}};
            }
            const int overall = std::min(base_structural, single_lo);
            if (overall == d && star_lo < d) {
                record_hard(acc, ctx, index, v, "degree1-soundness", degrees);
            } else if (overall < d && star_lo < overall) {
                record_finding(acc, ctx, index, v, "star-ordering", degrees);
            }
            break;
        }
        case TheoremId::thm_kernel_subsemi: {
            const SubgroupInts sg = subgroup_ints(ctx, v);
            const int n0 = std::min(sg.overall(), normal_ints(ctx, v));
            const DifferenceInts diff = difference_ints(ctx, v);
            const int kernel_overall = std::min(n0, std::min(diff.dmu, diff.dnu));
            const EpsilonInts eps = epsilon_ints(ctx, v);
            const int eps_overall = std::min(eps.emu, eps.enu);
            const TransitionInts trans = transition_ints(ctx, v);
            const int trans_lo = std::min(trans.tmu, trans.tnu);
            const int base = std::min(kernel_overall, eps_overall);
            auto degrees = [&] {
                return std::vector<std::pair<std::string, std::string>>{
                    {"kernel", ratio_str(kernel_overall, d)},
                    {"epsilon", ratio_str(eps_overall, d)},
                    {"transition_mu", ratio_str(trans.tmu, d)},
                    {"transition_nu", ratio_str(trans.tnu, d)}};
            };
            if (eps_overall < trans_lo) {
                ++acc.checks.epsilon_subset_violations;
                record_hard(acc, ctx, index, v, "epsilon-subset", degrees());
            }
            if (base == d && trans_lo < d) {
                record_hard(acc, ctx, index, v, "degree1-soundness", degrees());
            } else if (base < d && trans_lo < base) {
                record_finding(acc, ctx, index, v, "implication-ordering", degrees());
            }
            break;
        }
    }

    const unsigned long long stride = ctx.dof == GridDof::machine ? 65536 : 4096;
    if (!ctx.mutate && index % stride == 0) {
        if (!public_path_agrees(ctx, v)) {
            ++acc.checks.engine_mismatches;
            record_hard(acc, ctx, index, v, "engine-mismatch");
        }
    }
}

// ----- instance sources -----

struct GridSource {
    const EngineCtx* ctx;
    unsigned long long total = 0;
    std::vector<unsigned long long> divisors; // per entry, most significant first

    void decode(unsigned long long index, int16_t* av, int16_t* bv, int16_t* smu,
                int16_t* snu) const {
        const int em = ctx->machine_entries();
        const int total_entries = ctx->entries();
        const auto pair_count = static_cast<unsigned long long>(ctx->pairs.size());
        for (int e = 0; e < total_entries; ++e) {
            const auto digit = static_cast<size_t>((index / divisors[e]) % pair_count);
            const auto [mu, nu] = ctx->pairs[digit];
            if (e < em) {
                av[e] = mu;
                bv[e] = nu;
            } else {
                smu[e - em] = mu;
                snu[e - em] = nu;
            }
        }
    }
};

cpp_int grid_count_exact(int pair_count, int entries) {
    cpp_int count = 1;
    for (int i = 0; i < entries; ++i) {
        count *= pair_count;
    }
    return count;
}

struct SampleSource {
    std::vector<int16_t> data; // count * (2*Em + 2*n)
    int stride = 0;
};

unsigned long long bounded_draw(std::mt19937_64& rng, unsigned long long bound_inclusive) {
    const unsigned long long range = bound_inclusive + 1;
    const unsigned long long limit =
        std::numeric_limits<unsigned long long>::max() -
        std::numeric_limits<unsigned long long>::max() % range;
    unsigned long long x = rng();
    while (x >= limit) {
        x = rng();
    }
    return x % range;
}

SampleSource draw_samples(const EngineCtx& ctx, const SamplerSpec& spec) {
    if (spec.count < 1) {
        throw DomainError("sample count must be >= 1");
    }
    const int em = ctx.letters * ctx.n * ctx.n;
    SampleSource src;
    src.stride = 2 * em + 2 * ctx.n;
    src.data.resize(static_cast<size_t>(spec.count) * src.stride);
    std::mt19937_64 rng(spec.seed);
    for (long long i = 0; i < spec.count; ++i) {
        int16_t* base = src.data.data() + static_cast<size_t>(i) * src.stride;
        int16_t* av = base;
        int16_t* bv = base + em;
        int16_t* smu = base + 2 * em;
        int16_t* snu = smu + ctx.n;
        for (int e = 0; e < em; ++e) {
            av[e] = static_cast<int16_t>(bounded_draw(rng, ctx.denom));
            bv[e] = static_cast<int16_t>(bounded_draw(rng, ctx.denom - av[e]));
        }
        for (int x = 0; x < ctx.n; ++x) {
            smu[x] = static_cast<int16_t>(bounded_draw(rng, ctx.denom));
            snu[x] = static_cast<int16_t>(bounded_draw(rng, ctx.denom - smu[x]));
        }
    }
    return src;
}

std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Materializes a pending record: rebuilds the instance documents and derives
// the witness through the public path (which also cross-checks the engine).
CounterexampleRecord materialize(const EngineCtx& ctx, const PendingRecord& pending,
                                 SearchChecks& checks) {
    CounterexampleRecord rec;
    rec.instance_index = pending.index;
    rec.kind = pending.kind;
    rec.degrees = pending.degrees;

    const InstanceView v = pending.instance.view();
    std::optional<Machine> machine;
    std::optional<IFSubset> subset;
    if (v.av) {
        machine = build_public_machine(ctx, v);
        rec.machine_json = machine_to_json(*machine);
    }
    if (v.smu) {
        subset = build_public_subset(ctx, v);
        rec.subset_json = ifs_to_json(*subset);
    }
    rec.digest = digest_hex(rec.machine_json + "\n" + rec.subset_json);

    const TruthValue one = TruthValue::one();
    try {
        if (rec.kind == "concat" && machine) {
            const ConcatCheckResult check = concat_equality_check(*machine, ctx.max_len, ctx.mutate);
            if (!check.witnesses.empty()) {
                rec.witness = check.witnesses.front();
            } else {
                ++checks.engine_mismatches;
            }
        } else if (rec.kind == "consistency" && machine) {
            WordExtender extender(*machine, ctx.mutate);
            for (const Word& w : words_up_to(*machine, ctx.max_len)) {
                const auto pair = extender.extend(w);
                bool done = false;
                for (int r = 0; r < pair->n && !done; ++r) {
                    for (int c = 0; c < pair->n && !done; ++c) {
                        if (pair->a(r, c).ratio() + pair->b(r, c).ratio() > TruthValue::Ratio(1)) {
                            rec.witness.condition = "consistency";
                            rec.witness.binding = {{"word", machine->word_str(w)},
                                                   {"row", std::to_string(r)},
                                                   {"col", std::to_string(c)}};
                            rec.witness.antecedent = pair->a(r, c);
                            rec.witness.consequent = pair->b(r, c);
                            rec.witness.degree = TruthValue::zero();
                            done = true;
                        }
                    }
                }
                if (done) break;
            }
        } else if ((rec.kind == "degree1-soundness" || rec.kind == "star-ordering") && machine &&
                   subset) {
            const bool is_subsemi = ctx.theorem == TheoremId::thm_subsemi_star;
            const DegreeReport base =
                is_subsemi ? subsemi_degree(*machine, *subset) : kernel_degree(*machine, *subset);
            const TruthValue query = rec.kind == "degree1-soundness" ? one : base.overall;
            const DegreeReport derived =
                is_subsemi ? subsemi_star_degree(*machine, *subset, ctx.max_len, query, ctx.mutate)
                           : kernel_star_degree(*machine, *subset, ctx.max_len, query, ctx.mutate);
            for (const Witness& w : derived.witnesses) {
                if (w.degree < query) {
                    rec.witness = w;
                    break;
                }
            }
        } else if ((rec.kind == "degree1-soundness" || rec.kind == "implication-ordering") &&
                   ctx.theorem == TheoremId::thm_kernel_subsemi && machine && subset) {
            const RelationCheck relation = theorem_relation_check(
                *machine, *subset, TheoremRelation::kernel_implies_subsemi, ctx.max_len);
            for (const Witness& w : relation.derived.witnesses) {
                if (w.degree < relation.base_degree) {
                    rec.witness = w;
                    break;
                }
            }
        } else if (rec.kind == "epsilon-subset" && machine && subset) {
            const DegreeReport subsemi = subsemi_degree(*machine, *subset);
            const TruthValue threshold =
                conj(*subsemi.find("transition_mu"), *subsemi.find("transition_nu"));
            const DegreeReport eps = kernel_epsilon_degree(*machine, *subset, threshold);
            if (!eps.witnesses.empty()) {
                rec.witness = eps.witnesses.front();
            }
        } else if ((rec.kind == "prop-identity" || rec.kind == "chaining-bound") && subset) {
            const DegreeReport identity = identity_report(ctx.group, *subset, one);
            if (!identity.witnesses.empty()) {
                rec.witness = identity.witnesses.front();
            }
        }
    } catch (const Error&) {
        ++checks.engine_mismatches;
    }
    return rec;
}

} // namespace

std::string grid_count(const InstanceGrid& grid) {
    if (grid.denominator < 1) {
        throw DomainError("grid denominator must be >= 1");
    }
    if (grid.alphabet_size < 1) {
        throw EmptyCarrier("alphabet size must be >= 1");
    }
    const FiniteGroup g = load_group(grid.group_spec);
    const int n = g.order();
    const int pair_count = (grid.denominator + 1) * (grid.denominator + 2) / 2;
    int entries = 0;
    if (grid.dof != GridDof::subset) {
        entries += grid.alphabet_size * n * n;
    }
    if (grid.dof != GridDof::machine) {
        entries += n;
    }
    return grid_count_exact(pair_count, entries).str();
}

SearchReport search_counterexamples(const SearchParams& params) {
    const auto t0 = std::chrono::steady_clock::now();

    const GridDof dof = params.source.kind == SourceSpec::Kind::grid
                            ? dof_for(params.theorem)
                            : GridDof::joint;
    const bool grid_mode = params.source.kind == SourceSpec::Kind::grid;
    const std::string group_spec =
        grid_mode ? params.source.grid.group_spec : params.source.sample.group_spec;
    const int alphabet_size =
        grid_mode ? params.source.grid.alphabet_size : params.source.sample.alphabet_size;
    const int denom = grid_mode ? params.source.grid.denominator : params.source.sample.denominator;

    EngineCtx ctx = make_ctx(params.theorem, group_spec, alphabet_size, denom, params.max_len,
                             params.mutate, dof,
                             grid_mode ? params.source.grid.structure_filter : std::nullopt);

    SearchReport report;
    report.theorem = to_string(params.theorem);
    report.group_spec = group_spec;
    report.alphabet_size = alphabet_size;
    report.denominator = denom;
    report.mode = grid_mode ? "grid" : "sample";
    report.dof = to_string(dof);
    report.max_len = params.max_len;
    report.cap = params.cap;
    report.mutate = params.mutate;
    report.conventions = standard_conventions();
    report.conventions.push_back("structure:none");

    GridSource grid_source;
    SampleSource sample_source;
    unsigned long long total = 0;

    if (grid_mode) {
        const int pair_count = static_cast<int>(ctx.pairs.size());
        const cpp_int count = grid_count_exact(pair_count, ctx.entries());
        report.grid_count = count.str();
        if (count > cpp_int(params.cap)) {
            throw GridTooLarge(count.str(), params.cap);
        }
        total = count.convert_to<unsigned long long>();
        grid_source.ctx = &ctx;
        grid_source.total = total;
        grid_source.divisors.resize(ctx.entries());
        unsigned long long div = 1;
        for (int e = ctx.entries() - 1; e >= 0; --e) {
            grid_source.divisors[e] = div;
            if (e > 0) {
                div *= static_cast<unsigned long long>(pair_count);
            }
        }
        if (ctx.structure_filter && *ctx.structure_filter == StructureMode::product_subgroup) {
            report.structure = "product-subgroup";
        }
    } else {
        report.seed = params.source.sample.seed;
        report.samples = params.source.sample.count;
        sample_source = draw_samples(ctx, params.source.sample);
        total = static_cast<unsigned long long>(params.source.sample.count);
    }

    // Fixed-size chunks keep the merge independent of the worker count.
    constexpr unsigned long long chunk_size = 8192;
    const auto chunk_count = static_cast<size_t>((total + chunk_size - 1) / chunk_size);
    std::vector<ChunkAccum> results(chunk_count);
    std::atomic<size_t> next_chunk{0};

    const int em = ctx.machine_entries();
    const bool filter_on =
        ctx.structure_filter && *ctx.structure_filter == StructureMode::product_subgroup &&
        ctx.has_machine();

    auto worker = [&] {
        Workspace ws;
        std::vector<int16_t> av(std::max(em, 1)), bv(std::max(em, 1));
        std::vector<int16_t> smu(ctx.n), snu(ctx.n);
        const int entries = ctx.entries();
        const int pair_count = static_cast<int>(ctx.pairs.size());
        std::vector<int> digits(std::max(entries, 1));
        auto write_entry = [&](int e) {
            const auto [mu, nu] = ctx.pairs[static_cast<size_t>(digits[e])];
            if (e < em) {
                av[e] = mu;
                bv[e] = nu;
            } else {
                smu[e - em] = mu;
                snu[e - em] = nu;
            }
        };
        for (;;) {
            const size_t chunk = next_chunk.fetch_add(1);
            if (chunk >= chunk_count) {
                return;
            }
            ChunkAccum& acc = results[chunk];
            const unsigned long long begin = chunk * chunk_size;
            const unsigned long long end = std::min(total, begin + chunk_size);
            if (grid_mode) {
                for (int e = 0; e < entries; ++e) {
                    digits[e] = static_cast<int>((begin / grid_source.divisors[e]) %
                                                 static_cast<unsigned long long>(pair_count));
                    write_entry(e);
                }
            }
            for (unsigned long long index = begin; index < end; ++index) {
                InstanceView view;
                if (grid_mode) {
                    view.av = ctx.has_machine() ? av.data() : nullptr;
                    view.bv = ctx.has_machine() ? bv.data() : nullptr;
                    view.smu = ctx.has_subset() ? smu.data() : nullptr;
                    view.snu = ctx.has_subset() ? snu.data() : nullptr;
                } else {
                    const int16_t* base =
                        sample_source.data.data() + static_cast<size_t>(index) * sample_source.stride;
                    view.av = base;
                    view.bv = base + em;
                    view.smu = base + 2 * em;
                    view.snu = base + 2 * em + ctx.n;
                }
                const bool skip = filter_on && !structure_degree_one(ctx, view);
                if (skip) {
                    ++acc.filtered_out;
                } else {
                    ++acc.examined;
                    evaluate_instance(ctx, view, index, ws, acc);
                }
                if (grid_mode && index + 1 < end) {
                    // lexicographic odometer step
                    int e = entries - 1;
                    while (digits[e] == pair_count - 1) {
                        digits[e] = 0;
                        write_entry(e);
                        --e;
                    }
                    ++digits[e];
                    write_entry(e);
                }
            }
        }
    };

    int workers = params.workers;
    if (workers <= 0) {
        workers = static_cast<int>(std::thread::hardware_concurrency());
        if (workers < 1) {
            workers = 1;
        }
    }
    workers = std::min<int>(workers, std::max<size_t>(chunk_count, 1));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(workers);
        for (int i = 0; i < workers; ++i) {
            threads.emplace_back(worker);
        }
        for (std::thread& t : threads) {
            t.join();
        }
    }
    report.workers_used = workers;

    std::vector<PendingRecord> hard_pending, finding_pending;
    std::map<std::string, unsigned long long> kinds;
    for (const ChunkAccum& acc : results) {
        report.instances_examined += acc.examined;
        report.counterexamples_total += acc.hard;
        report.findings_total += acc.findings;
        for (const auto& [kind, count] : acc.kinds) {
            kinds[kind] += count;
        }
        report.checks.consistency_violations += acc.checks.consistency_violations;
        report.checks.classical_disagreements += acc.checks.classical_disagreements;
        report.checks.crisp_disagreements += acc.checks.crisp_disagreements;
        report.checks.abelian_normal_violations += acc.checks.abelian_normal_violations;
        report.checks.epsilon_subset_violations += acc.checks.epsilon_subset_violations;
        report.checks.engine_mismatches += acc.checks.engine_mismatches;
        for (const PendingRecord& r : acc.hard_records) {
            if (static_cast<int>(hard_pending.size()) < max_records_per_report) {
                hard_pending.push_back(r);
            }
        }
        for (const PendingRecord& r : acc.finding_records) {
            if (static_cast<int>(finding_pending.size()) < max_records_per_report) {
                finding_pending.push_back(r);
            }
        }
    }
    report.kind_counts.assign(kinds.begin(), kinds.end());
    for (const PendingRecord& r : hard_pending) {
        report.counterexamples.push_back(materialize(ctx, r, report.checks));
    }
    for (const PendingRecord& r : finding_pending) {
        report.findings.push_back(materialize(ctx, r, report.checks));
    }

    report.timestamp = iso_timestamp();
    report.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    return report;
}

std::pair<std::optional<Machine>, std::optional<IFSubset>> rebuild_instance(
    const CounterexampleRecord& record) {
    std::optional<Machine> machine;
    std::optional<IFSubset> subset;
    if (!record.machine_json.empty()) {
        machine = machine_from_json(record.machine_json);
    }
    if (!record.subset_json.empty()) {
        subset = ifs_from_json(record.subset_json).first;
    }
    return {std::move(machine), std::move(subset)};
}

namespace {

json record_json(const CounterexampleRecord& rec) {
    json j;
    j["index"] = rec.instance_index;
    j["kind"] = rec.kind;
    j["digest"] = rec.digest;
    if (!rec.machine_json.empty()) {
        j["machine"] = json::parse(rec.machine_json);
    }
    if (!rec.subset_json.empty()) {
        j["subset"] = json::parse(rec.subset_json);
    }
    if (!rec.witness.condition.empty()) {
        json b = json::object();
        for (const auto& [key, value] : rec.witness.binding) {
            b[key] = value;
        }
        j["witness"] = {{"condition", rec.witness.condition},
                        {"binding", std::move(b)},
                        {"antecedent", rec.witness.antecedent.str()},
                        {"consequent", rec.witness.consequent.str()},
                        {"degree", rec.witness.degree.str()}};
    }
    if (!rec.degrees.empty()) {
        json d = json::object();
        for (const auto& [label, value] : rec.degrees) {
            d[label] = value;
        }
        j["degrees"] = std::move(d);
    }
    return j;
}

} // namespace

std::string search_report_to_json(const SearchReport& report) {
    json j;
    j["theorem"] = report.theorem;
    json params;
    params["group"] = report.group_spec;
    params["alphabet_size"] = report.alphabet_size;
    params["denominator"] = report.denominator;
    params["mode"] = report.mode;
    params["dof"] = report.dof;
    params["max_len"] = report.max_len;
    params["cap"] = report.cap;
    params["mutate"] = report.mutate;
    params["structure"] = report.structure;
    if (report.mode == "sample") {
        params["seed"] = report.seed;
        params["samples"] = report.samples;
    } else {
        params["grid_count"] = report.grid_count;
    }
    j["params"] = std::move(params);
    j["instances_examined"] = report.instances_examined;
    j["counterexamples_total"] = report.counterexamples_total;
    j["findings_total"] = report.findings_total;
    json hard = json::array();
    for (const CounterexampleRecord& rec : report.counterexamples) {
        hard.push_back(record_json(rec));
    }
    j["counterexamples"] = std::move(hard);
    json findings = json::array();
    for (const CounterexampleRecord& rec : report.findings) {
        findings.push_back(record_json(rec));
    }
    j["findings"] = std::move(findings);
    json kind_counts = json::object();
    for (const auto& [kind, count] : report.kind_counts) {
        kind_counts[kind] = count;
    }
    j["kind_counts"] = std::move(kind_counts);
    j["checks"] = {{"consistency_violations", report.checks.consistency_violations},
                   {"classical_disagreements", report.checks.classical_disagreements},
                   {"crisp_disagreements", report.checks.crisp_disagreements},
                   {"abelian_normal_violations", report.checks.abelian_normal_violations},
                   {"epsilon_subset_violations", report.checks.epsilon_subset_violations},
                   {"engine_mismatches", report.checks.engine_mismatches}};
    j["verdict"] = report.verdict();
    j["conventions"] = report.conventions;
    j["header"] = {{"timestamp", report.timestamp},
                   {"wall_ms", report.wall_ms},
                   {"workers", report.workers_used}};
    return j.dump(2) + "\n";
}

std::string search_report_to_text(const SearchReport& report) {
    std::ostringstream out;
    out << "theorem: " << report.theorem << "\n";
    out << "group: " << report.group_spec << "  alphabet: " << report.alphabet_size
        << "  denominator: " << report.denominator << "  mode: " << report.mode
        << "  dof: " << report.dof << "  max_len: " << report.max_len << "\n";
    if (report.mode == "sample") {
        out << "samples: " << report.samples << "  seed: " << report.seed << "\n";
    } else {
        out << "grid count: " << report.grid_count << "\n";
    }
    if (report.mutate) {
        out << "mutation mode: on (negative control)\n";
    }
    out << "instances examined: " << report.instances_examined << "\n";
    out << "counterexamples: " << report.counterexamples_total << "\n";
    out << "findings: " << report.findings_total << "\n";
    out << "checks: consistency=" << report.checks.consistency_violations
        << " classical=" << report.checks.classical_disagreements
        << " crisp=" << report.checks.crisp_disagreements
        << " abelian-normal=" << report.checks.abelian_normal_violations
        << " epsilon-subset=" << report.checks.epsilon_subset_violations
        << " engine=" << report.checks.engine_mismatches << "\n";
    for (const CounterexampleRecord& rec : report.counterexamples) {
        out << "  counterexample [" << rec.kind << "] instance " << rec.instance_index << " digest "
            << rec.digest;
        if (!rec.witness.condition.empty()) {
            out << " witness " << rec.witness.condition << " at " << rec.witness.binding_str()
                << ": I(" << rec.witness.antecedent.str() << ", " << rec.witness.consequent.str()
                << ") = " << rec.witness.degree.str();
        }
        out << "\n";
    }
    for (const CounterexampleRecord& rec : report.findings) {
        out << "  finding [" << rec.kind << "] instance " << rec.instance_index << " digest "
            << rec.digest;
        for (const auto& [label, value] : rec.degrees) {
            out << " " << label << "=" << value;
        }
        out << "\n";
    }
    out << "wall: " << report.wall_ms << " ms\n";
    out << "verdict: " << report.verdict() << "\n";
    return out.str();
}

namespace {

std::string xml_escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

} // namespace

std::string search_report_to_junit(const SearchReport& report) {
    const bool failed = report.hard_failure();
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<testsuite name=\"ibifsa.verify\" tests=\"1\" failures=\"" << (failed ? 1 : 0)
        << "\" errors=\"0\" skipped=\"0\" time=\"" << (report.wall_ms / 1000.0) << "\">\n";
    out << "  <testcase classname=\"ibifsa.verify\" name=\"" << xml_escape(report.theorem) << "["
        << xml_escape(report.group_spec) << ",D=" << report.denominator << "," << report.mode
        << "]\" time=\"" << (report.wall_ms / 1000.0) << "\">\n";
    if (failed) {
        out << "    <failure message=\"" << report.counterexamples_total
            << " counterexamples\">verdict=" << report.verdict() << "</failure>\n";
    }
    out << "    <system-out>instances=" << report.instances_examined
        << " counterexamples=" << report.counterexamples_total
        << " findings=" << report.findings_total << "</system-out>\n";
    out << "  </testcase>\n";
    out << "</testsuite>\n";
    return out.str();
}

ImplicationComparison compare_implications(const FiniteGroup& g, const IFSubset& s) {
    if (s.size() != g.order()) {
        throw CarrierMismatch("subset carrier does not match the group");
    }
    ImplicationComparison cmp;
    cmp.luk_subgroup = subgroup_degree(g, s).overall;
    cmp.luk_identity = identity_condition_degree(g, s);
    TruthValue goedel_sub = TruthValue::one();
    TruthValue goedel_id = TruthValue::one();
    const int n = g.order();
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            const int p = g.mul(x, y);
            goedel_sub = conj(goedel_sub, goedel_implies(conj(s.mu(x), s.mu(y)), s.mu(p)));
            goedel_sub = conj(goedel_sub, goedel_implies(s.nu(p), disj(s.nu(x), s.nu(y))));
        }
        goedel_sub = conj(goedel_sub, goedel_implies(s.mu(x), s.mu(g.inverse(x))));
        goedel_sub = conj(goedel_sub, goedel_implies(s.nu(g.inverse(x)), s.nu(x)));
        goedel_id = conj(goedel_id, goedel_implies(s.mu(x), s.mu(g.identity())));
        goedel_id = conj(goedel_id, goedel_implies(s.nu(g.identity()), s.nu(x)));
    }
    cmp.goedel_subgroup = goedel_sub;
    cmp.goedel_identity = goedel_id;
    return cmp;
}

} // namespace ibifsa
