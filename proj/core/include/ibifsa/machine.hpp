#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ibifsa/group.hpp"
#include "ibifsa/ifs.hpp"
#include "ibifsa/report.hpp"
#include "ibifsa/truth_value.hpp"

namespace ibifsa {

/// How the per-letter transition pair is required to relate to the group
/// structure. `product_subgroup` evaluates, per letter, the subgroup
/// conditions of the transition pair seen as a subset of (Omega x Omega);
/// `none` only checks mu + nu <= 1.
enum class StructureMode { none, product_subgroup };

std::string to_string(StructureMode mode);
StructureMode structure_mode_from_string(std::string_view text);

/// A word over the machine's alphabet; the empty word is the unit.
struct Word {
    std::vector<int> symbols;

    bool empty() const { return symbols.empty(); }
    int length() const { return static_cast<int>(symbols.size()); }
    Word concat(const Word& other) const;

    friend bool operator==(const Word&, const Word&) = default;
    friend auto operator<=>(const Word&, const Word&) = default;
};

/// The word extension of the transition pair: membership by max-min
/// composition, nonmembership by min-max composition.
struct TransitionMatrixPair {
    int n = 0;
    std::vector<TruthValue> a_star; // n*n row-major, row = source state
    std::vector<TruthValue> b_star;
    Word word;

    const TruthValue& a(int row, int col) const { return a_star[static_cast<size_t>(row) * n + col]; }
    const TruthValue& b(int row, int col) const { return b_star[static_cast<size_t>(row) * n + col]; }
    TruthValue& a(int row, int col) { return a_star[static_cast<size_t>(row) * n + col]; }
    TruthValue& b(int row, int col) { return b_star[static_cast<size_t>(row) * n + col]; }

    bool same_matrices(const TransitionMatrixPair& other) const {
        return n == other.n && a_star == other.a_star && b_star == other.b_star;
    }

    /// a + b <= 1 entrywise.
    bool consistent() const;
};

/// An implication-based intuitionistic fuzzy semiautomaton over a finite
/// group: states form the group, transitions carry an intuitionistic fuzzy
/// pair per (state, letter, state), and lambda is the working threshold.
class Machine {
public:
    /// Validates shapes, mu + nu <= 1 per transition (ConsistencyViolation
    /// names the site), and lambda in (0,1].
    static Machine create(FiniteGroup group, std::vector<std::string> alphabet,
                          std::vector<std::vector<std::vector<TruthValue>>> mu,
                          std::vector<std::vector<std::vector<TruthValue>>> nu,
                          TruthValue lambda, StructureMode mode = StructureMode::none);

    const FiniteGroup& group() const { return group_; }
    const std::vector<std::string>& alphabet() const { return alphabet_; }
    int alphabet_size() const { return static_cast<int>(alphabet_.size()); }
    const TruthValue& lambda() const { return lambda_; }
    StructureMode structure_mode() const { return mode_; }

    const TruthValue& a(int alpha, int letter, int beta) const {
        return a_[offset(alpha, letter, beta)];
    }
    const TruthValue& b(int alpha, int letter, int beta) const {
        return b_[offset(alpha, letter, beta)];
    }

    int letter_index(std::string_view symbol) const; // throws UnknownSymbol

    /// Whitespace-separated symbols; the empty string is the empty word.
    Word parse_word(std::string_view text) const;
    std::string word_str(const Word& word) const;

    /// Per-letter product-subgroup degrees under `product_subgroup`, empty
    /// condition list (overall 1) under `none`. Conventions name the mode.
    DegreeReport structural_report(std::optional<TruthValue> query_lambda = {}) const;

    /// The per-letter transition pair as a matrix pair (word = that letter).
    TransitionMatrixPair letter_matrices(int letter) const;

private:
    Machine(FiniteGroup group, std::vector<std::string> alphabet, TruthValue lambda,
            StructureMode mode)
        : group_(std::move(group)), alphabet_(std::move(alphabet)), lambda_(lambda), mode_(mode) {}

    size_t offset(int alpha, int letter, int beta) const {
        const int n = group_.order();
        return (static_cast<size_t>(letter) * n + alpha) * n + beta;
    }

    FiniteGroup group_;
    std::vector<std::string> alphabet_;
    std::vector<TruthValue> a_;
    std::vector<TruthValue> b_;
    TruthValue lambda_;
    StructureMode mode_ = StructureMode::none;
};

/// Identity of composition: 1 on the diagonal of a_star, 0 elsewhere; b_star
/// is the entrywise complement.
TransitionMatrixPair empty_word_matrices(const Machine& m);
TransitionMatrixPair identity_matrices(int n);

/// a(r,c) = max_g min(P.a(r,g), Q.a(g,c)); b(r,c) = min_g max(P.b(r,g), Q.b(g,c)).
TransitionMatrixPair compose(const TransitionMatrixPair& p, const TransitionMatrixPair& q);

/// Negative control: the two aggregations swapped. Only reachable through
/// mutation mode; exists so the searchers can be shown to detect violations.
TransitionMatrixPair compose_corrupted(const TransitionMatrixPair& p,
                                       const TransitionMatrixPair& q);

/// Memoized left-fold of compose over a word's letters. Thread-safe: the same
/// word always yields the same matrices, whatever the caller interleaving.
class WordExtender {
public:
    explicit WordExtender(const Machine& m, bool corrupt = false);

    std::shared_ptr<const TransitionMatrixPair> extend(const Word& word) const;

    const Machine& machine() const { return machine_; }
    bool corrupted() const { return corrupt_; }

private:
    const Machine& machine_;
    bool corrupt_;
    mutable std::mutex mutex_;
    mutable std::map<std::vector<int>, std::shared_ptr<const TransitionMatrixPair>> cache_;
};

/// (a_star(start,end), b_star(start,end)) of the word's extension.
std::pair<TruthValue, TruthValue> run_degree(const Machine& m, int start, const Word& word,
                                             int end);

/// All words of length <= max_len over the machine's alphabet, shortlex order.
std::vector<Word> words_up_to(const Machine& m, int max_len);

struct ConcatCheckResult {
    long long pairs_checked = 0;
    std::vector<Witness> witnesses; // empty means the law held everywhere
};

/// Checks, for every split xi, psi with |xi|+|psi| <= max_len, that the
/// extension of xi.psi equals compose(extension(xi), extension(psi)) as exact
/// matrix equalities. The right-hand side always uses the true compose, so
/// mutation mode makes the mismatch visible.
ConcatCheckResult concat_equality_check(const Machine& m, int max_len, bool mutate = false);

} // namespace ibifsa
