#include "ibifsa/machine.hpp"

#include <algorithm>

#include "scan.hpp"

namespace ibifsa {

std::string to_string(StructureMode mode) {
    return mode == StructureMode::product_subgroup ? "product-subgroup" : "none";
}

StructureMode structure_mode_from_string(std::string_view text) {
    if (text == "product-subgroup") {
        return StructureMode::product_subgroup;
    }
    if (text == "none") {
        return StructureMode::none;
    }
    throw ParseError("unknown structure mode '" + std::string(text) + "'");
}

Word Word::concat(const Word& other) const {
    Word out{symbols};
    out.symbols.insert(out.symbols.end(), other.symbols.begin(), other.symbols.end());
    return out;
}

bool TransitionMatrixPair::consistent() const {
    for (size_t i = 0; i < a_star.size(); ++i) {
        if (a_star[i].ratio() + b_star[i].ratio() > TruthValue::Ratio(1)) {
            return false;
        }
    }
    return true;
}

Machine Machine::create(FiniteGroup group, std::vector<std::string> alphabet,
                        std::vector<std::vector<std::vector<TruthValue>>> mu,
                        std::vector<std::vector<std::vector<TruthValue>>> nu,
                        TruthValue lambda, StructureMode mode) {
    if (alphabet.empty()) {
        throw EmptyCarrier("alphabet is empty");
    }
    for (size_t i = 0; i < alphabet.size(); ++i) {
        for (size_t j = i + 1; j < alphabet.size(); ++j) {
            if (alphabet[i] == alphabet[j]) {
                throw ParseError("duplicate alphabet symbol '" + alphabet[i] + "'");
            }
        }
    }
    const int n = group.order();
    const size_t letters = alphabet.size();
    if (mu.size() != letters || nu.size() != letters) {
        throw ShapeMismatch("need one matrix per letter for both mu and nu");
    }
    if (lambda <= TruthValue::zero()) {
        throw LambdaOutOfRange("lambda must lie in (0,1]");
    }

    Machine m(std::move(group), std::move(alphabet), lambda, mode);
    m.a_.resize(letters * n * n);
    m.b_.resize(letters * n * n);

    for (size_t letter = 0; letter < letters; ++letter) {
        const auto& ma = mu[letter];
        const auto& mb = nu[letter];
        if (static_cast<int>(ma.size()) != n || static_cast<int>(mb.size()) != n) {
            throw ShapeMismatch("matrix for letter '" + m.alphabet_[letter] + "' is not " +
                                std::to_string(n) + "x" + std::to_string(n));
        }
        for (int alpha = 0; alpha < n; ++alpha) {
            if (static_cast<int>(ma[alpha].size()) != n || static_cast<int>(mb[alpha].size()) != n) {
                throw ShapeMismatch("matrix row for letter '" + m.alphabet_[letter] +
                                    "' is not of length " + std::to_string(n));
            }
            for (int beta = 0; beta < n; ++beta) {
                const TruthValue& av = ma[alpha][beta];
                const TruthValue& bv = mb[alpha][beta];
                if (av.ratio() + bv.ratio() > TruthValue::Ratio(1)) {
                    throw ConsistencyViolation("(" + std::to_string(alpha) + "," +
                                               m.alphabet_[letter] + "," + std::to_string(beta) +
                                               ")");
                }
                m.a_[m.offset(alpha, static_cast<int>(letter), beta)] = av;
                m.b_[m.offset(alpha, static_cast<int>(letter), beta)] = bv;
            }
        }
    }
    return m;
}

int Machine::letter_index(std::string_view symbol) const {
    for (size_t i = 0; i < alphabet_.size(); ++i) {
        if (alphabet_[i] == symbol) {
            return static_cast<int>(i);
        }
    }
    throw UnknownSymbol(std::string(symbol));
}

Word Machine::parse_word(std::string_view text) const {
    Word word;
    size_t pos = 0;
    while (pos < text.size()) {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
            ++pos;
        }
        size_t end = pos;
        while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) {
            ++end;
        }
        if (end > pos) {
            word.symbols.push_back(letter_index(text.substr(pos, end - pos)));
        }
        pos = end;
    }
    return word;
}

std::string Machine::word_str(const Word& word) const {
    std::string out;
    for (int s : word.symbols) {
        if (!out.empty()) {
            out += ' ';
        }
        out += alphabet_[s];
    }
    return out;
}

DegreeReport Machine::structural_report(std::optional<TruthValue> query_lambda) const {
    DegreeReport report;
    const int n = group_.order();
    if (mode_ == StructureMode::product_subgroup) {
        for (int letter = 0; letter < alphabet_size(); ++letter) {
            const std::string& sym = alphabet_[letter];
            detail::ConditionScan closure_mu(sym + ".closure_mu", query_lambda);
            detail::ConditionScan inverse_mu(sym + ".inverse_mu", query_lambda);
            detail::ConditionScan closure_nu(sym + ".closure_nu", query_lambda);
            detail::ConditionScan inverse_nu(sym + ".inverse_nu", query_lambda);

            for (int alpha = 0; alpha < n; ++alpha) {
                for (int beta = 0; beta < n; ++beta) {
                    for (int alpha2 = 0; alpha2 < n; ++alpha2) {
                        for (int beta2 = 0; beta2 < n; ++beta2) {
                            const int pa = group_.mul(alpha, alpha2);
                            const int pb = group_.mul(beta, beta2);
                            auto bind = [&] {
                                return detail::binding({{"alpha", std::to_string(alpha)},
                                                        {"beta", std::to_string(beta)},
                                                        {"alpha2", std::to_string(alpha2)},
                                                        {"beta2", std::to_string(beta2)},
                                                        {"letter", sym}});
                            };
                            closure_mu.visit(conj(a(alpha, letter, beta), a(alpha2, letter, beta2)),
                                             a(pa, letter, pb), bind);
                            closure_nu.visit(b(pa, letter, pb),
                                             disj(b(alpha, letter, beta), b(alpha2, letter, beta2)),
                                             bind);
                        }
                    }
                }
            }
            for (int alpha = 0; alpha < n; ++alpha) {
                for (int beta = 0; beta < n; ++beta) {
                    const int ia = group_.inverse(alpha);
                    const int ib = group_.inverse(beta);
                    auto bind = [&] {
                        return detail::binding({{"alpha", std::to_string(alpha)},
                                                {"beta", std::to_string(beta)},
                                                {"letter", sym}});
                    };
                    inverse_mu.visit(a(alpha, letter, beta), a(ia, letter, ib), bind);
                    inverse_nu.visit(b(ia, letter, ib), b(alpha, letter, beta), bind);
                }
            }

            closure_mu.emit(report);
            inverse_mu.emit(report);
            closure_nu.emit(report);
            inverse_nu.emit(report);
        }
    }
    report.conventions = standard_conventions();
    report.conventions.push_back("structure:" + to_string(mode_));
    report.finalize();
    return report;
}

TransitionMatrixPair Machine::letter_matrices(int letter) const {
    const int n = group_.order();
    TransitionMatrixPair pair;
    pair.n = n;
    pair.a_star.resize(static_cast<size_t>(n) * n);
    pair.b_star.resize(static_cast<size_t>(n) * n);
    pair.word = Word{{letter}};
    for (int alpha = 0; alpha < n; ++alpha) {
        for (int beta = 0; beta < n; ++beta) {
            pair.a(alpha, beta) = a(alpha, letter, beta);
            pair.b(alpha, beta) = b(alpha, letter, beta);
        }
    }
    return pair;
}

TransitionMatrixPair identity_matrices(int n) {
    TransitionMatrixPair pair;
    pair.n = n;
    pair.a_star.assign(static_cast<size_t>(n) * n, TruthValue::zero());
    pair.b_star.assign(static_cast<size_t>(n) * n, TruthValue::one());
    for (int i = 0; i < n; ++i) {
        pair.a(i, i) = TruthValue::one();
        pair.b(i, i) = TruthValue::zero();
    }
    return pair;
}

TransitionMatrixPair empty_word_matrices(const Machine& m) {
    return identity_matrices(m.group().order());
}

namespace {

enum class ComposeKind { regular, corrupted };

TransitionMatrixPair compose_impl(const TransitionMatrixPair& p, const TransitionMatrixPair& q,
                                  ComposeKind kind) {
    if (p.n != q.n) {
        throw ShapeMismatch("composing matrices of different dimension");
    }
    const int n = p.n;
    TransitionMatrixPair out;
    out.n = n;
    out.a_star.resize(static_cast<size_t>(n) * n);
    out.b_star.resize(static_cast<size_t>(n) * n);
    out.word = p.word.concat(q.word);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            TruthValue acc_a = kind == ComposeKind::regular ? TruthValue::zero() : TruthValue::one();
            TruthValue acc_b = kind == ComposeKind::regular ? TruthValue::one() : TruthValue::zero();
            for (int g = 0; g < n; ++g) {
                if (kind == ComposeKind::regular) {
                    acc_a = disj(acc_a, conj(p.a(r, g), q.a(g, c)));
                    acc_b = conj(acc_b, disj(p.b(r, g), q.b(g, c)));
                } else {
                    acc_a = conj(acc_a, disj(p.a(r, g), q.a(g, c)));
                    acc_b = disj(acc_b, conj(p.b(r, g), q.b(g, c)));
                }
            }
            out.a(r, c) = acc_a;
            out.b(r, c) = acc_b;
        }
    }
    return out;
}

} // namespace

TransitionMatrixPair compose(const TransitionMatrixPair& p, const TransitionMatrixPair& q) {
    return compose_impl(p, q, ComposeKind::regular);
}

TransitionMatrixPair compose_corrupted(const TransitionMatrixPair& p,
                                       const TransitionMatrixPair& q) {
    return compose_impl(p, q, ComposeKind::corrupted);
}

WordExtender::WordExtender(const Machine& m, bool corrupt) : machine_(m), corrupt_(corrupt) {}

std::shared_ptr<const TransitionMatrixPair> WordExtender::extend(const Word& word) const {
    for (int s : word.symbols) {
        if (s < 0 || s >= machine_.alphabet_size()) {
            throw UnknownSymbol("#" + std::to_string(s));
        }
    }
    {
        std::lock_guard<std::mutex> lock(mutex_);
        if (auto it = cache_.find(word.symbols); it != cache_.end()) {
            return it->second;
        }
    }

    std::shared_ptr<const TransitionMatrixPair> result;
    if (word.empty()) {
        result = std::make_shared<TransitionMatrixPair>(empty_word_matrices(machine_));
    } else if (word.length() == 1) {
        result =
            std::make_shared<TransitionMatrixPair>(machine_.letter_matrices(word.symbols.front()));
    } else {
        Word prefix{std::vector<int>(word.symbols.begin(), word.symbols.end() - 1)};
        const auto base = extend(prefix);
        const auto step = machine_.letter_matrices(word.symbols.back());
        result = std::make_shared<TransitionMatrixPair>(
            corrupt_ ? compose_corrupted(*base, step) : compose(*base, step));
    }

    std::lock_guard<std::mutex> lock(mutex_);
    auto [it, inserted] = cache_.emplace(word.symbols, std::move(result));
    return it->second;
}

std::pair<TruthValue, TruthValue> run_degree(const Machine& m, int start, const Word& word,
                                             int end) {
    const int n = m.group().order();
    if (start < 0 || start >= n) {
        throw UnknownState(std::to_string(start));
    }
    if (end < 0 || end >= n) {
        throw UnknownState(std::to_string(end));
    }
    WordExtender extender(m);
    const auto pair = extender.extend(word);
    return {pair->a(start, end), pair->b(start, end)};
}

std::vector<Word> words_up_to(const Machine& m, int max_len) {
    const int letters = m.alphabet_size();
    std::vector<Word> out;
    std::vector<Word> level{Word{}};
    out.push_back(Word{});
    for (int len = 1; len <= max_len; ++len) {
        std::vector<Word> next;
        next.reserve(level.size() * letters);
        for (const Word& w : level) {
            for (int s = 0; s < letters; ++s) {
                Word ext = w;
                ext.symbols.push_back(s);
                next.push_back(ext);
                out.push_back(std::move(ext));
            }
        }
        level = std::move(next);
        if (out.size() > 1'000'000) {
            throw TooLarge("word universe beyond 1e6 entries at max_len " +
                           std::to_string(max_len));
        }
    }
    return out;
}

ConcatCheckResult concat_equality_check(const Machine& m, int max_len, bool mutate) {
    if (max_len < 1) {
        throw DomainError("max_len must be >= 1");
    }
    WordExtender extender(m, mutate);
    const std::vector<Word> words = words_up_to(m, max_len);

    ConcatCheckResult result;
    constexpr int witness_cap = max_witnesses_per_condition;
    for (const Word& xi : words) {
        for (const Word& psi : words) {
            if (xi.length() + psi.length() > max_len) {
                continue;
            }
            ++result.pairs_checked;
            const auto lhs = extender.extend(xi.concat(psi));
            const auto rhs = compose(*extender.extend(xi), *extender.extend(psi));
            if (lhs->same_matrices(rhs)) {
                continue;
            }
            const int n = lhs->n;
            for (int r = 0; r < n && static_cast<int>(result.witnesses.size()) < witness_cap; ++r) {
                for (int c = 0; c < n && static_cast<int>(result.witnesses.size()) < witness_cap;
                     ++c) {
                    const bool a_ok = lhs->a(r, c) == rhs.a(r, c);
                    const bool b_ok = lhs->b(r, c) == rhs.b(r, c);
                    if (a_ok && b_ok) {
                        continue;
                    }
                    Witness w;
                    w.condition = "concat_equality";
                    w.binding = {{"xi", m.word_str(xi)},
                                 {"psi", m.word_str(psi)},
                                 {"row", std::to_string(r)},
                                 {"col", std::to_string(c)},
                                 {"side", a_ok ? "b" : "a"}};
                    w.antecedent = a_ok ? lhs->b(r, c) : lhs->a(r, c);
                    w.consequent = a_ok ? rhs.b(r, c) : rhs.a(r, c);
                    w.degree = TruthValue::zero();
                    result.witnesses.push_back(std::move(w));
                }
            }
        }
    }
    return result;
}

} // namespace ibifsa
