#include "ibifsa/documents.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace ibifsa {

using nlohmann::json;

namespace {

std::string dump_canonical(const json& j) {
    return j.dump(2) + "\n";
}

json parse_json(const std::string& text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string(what) + ": " + e.what());
    }
}

const json& require_field(const json& j, const char* key, const char* what) {
    if (!j.is_object() || !j.contains(key)) {
        throw ParseError(std::string(what) + " document lacks field '" + key + "'");
    }
    return j.at(key);
}

TruthValue value_from_json(const json& j) {
    if (j.is_string()) {
        return TruthValue::parse(j.get<std::string>());
    }
    if (j.is_number_integer()) {
        return TruthValue::fraction(j.get<long long>(), 1);
    }
    throw ParseError("expected a rational string, got " + j.dump());
}

bool looks_like_spec(const std::string& text) {
    return text == "klein4" || text.starts_with("cyclic:") || text.starts_with("dihedral:") ||
           text.starts_with("symmetric:") || text.starts_with("product:");
}

json group_json(const FiniteGroup& g) {
    if (looks_like_spec(g.name())) {
        return json(g.name());
    }
    json j;
    j["name"] = g.name();
    j["order"] = g.order();
    j["table"] = g.table_rows();
    j["names"] = g.element_names();
    return j;
}

FiniteGroup group_from(const json& j) {
    if (j.is_string()) {
        return FiniteGroup::from_spec(j.get<std::string>());
    }
    const auto& table_json = require_field(j, "table", "group");
    std::vector<std::vector<long long>> table;
    for (const auto& row : table_json) {
        table.push_back(row.get<std::vector<long long>>());
    }
    std::vector<std::string> names;
    if (j.contains("names") && !j.at("names").is_null()) {
        names = j.at("names").get<std::vector<std::string>>();
    }
    std::string name = j.value("name", "");
    if (j.contains("order") && j.at("order").get<long long>() != static_cast<long long>(table.size())) {
        throw ParseError("declared order does not match table size");
    }
    return FiniteGroup::from_table(table, std::move(names), std::move(name));
}

json values_json(const std::vector<TruthValue>& values) {
    json out = json::array();
    for (const TruthValue& v : values) {
        out.push_back(v.str());
    }
    return out;
}

std::vector<TruthValue> values_from(const json& j) {
    std::vector<TruthValue> out;
    for (const auto& item : j) {
        out.push_back(value_from_json(item));
    }
    return out;
}

json matrix_json(const Machine& m, int letter, bool b_side) {
    const int n = m.group().order();
    json rows = json::array();
    for (int alpha = 0; alpha < n; ++alpha) {
        json row = json::array();
        for (int beta = 0; beta < n; ++beta) {
            row.push_back(b_side ? m.b(alpha, letter, beta).str() : m.a(alpha, letter, beta).str());
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

json witness_json(const Witness& w) {
    json b = json::object();
    for (const auto& [key, value] : w.binding) {
        b[key] = value;
    }
    return json{{"condition", w.condition},
                {"binding", std::move(b)},
                {"antecedent", w.antecedent.str()},
                {"consequent", w.consequent.str()},
                {"degree", w.degree.str()}};
}

} // namespace

std::string group_to_json(const FiniteGroup& g) {
    json j;
    j["name"] = g.name();
    j["order"] = g.order();
    j["table"] = g.table_rows();
    j["names"] = g.element_names();
    return dump_canonical(j);
}

FiniteGroup group_from_json(const std::string& text) {
    return group_from(parse_json(text, "group"));
}

FiniteGroup load_group(const std::string& path_or_spec) {
    if (looks_like_spec(path_or_spec)) {
        return FiniteGroup::from_spec(path_or_spec);
    }
    return group_from_json(read_file(path_or_spec));
}

std::string hom_to_json(const GroupHomomorphism& f) {
    json j;
    j["source"] = group_json(f.source());
    j["target"] = group_json(f.target());
    j["map"] = f.map();
    return dump_canonical(j);
}

GroupHomomorphism hom_from_json(const std::string& text) {
    const json j = parse_json(text, "homomorphism");
    FiniteGroup source = group_from(require_field(j, "source", "homomorphism"));
    FiniteGroup target = group_from(require_field(j, "target", "homomorphism"));
    std::vector<int> map = require_field(j, "map", "homomorphism").get<std::vector<int>>();
    return GroupHomomorphism(std::move(source), std::move(target), std::move(map));
}

std::string ifs_to_json(const IFSubset& s, const std::string& carrier) {
    json j;
    j["carrier"] = carrier;
    j["mu"] = values_json(s.mu_values());
    j["nu"] = values_json(s.nu_values());
    return dump_canonical(j);
}

std::pair<IFSubset, std::string> ifs_from_json(const std::string& text) {
    const json j = parse_json(text, "subset");
    std::vector<TruthValue> mu = values_from(require_field(j, "mu", "subset"));
    std::vector<TruthValue> nu = values_from(require_field(j, "nu", "subset"));
    std::string carrier = j.value("carrier", "group");
    if (carrier != "group" && carrier != "transitions") {
        throw ParseError("unknown carrier '" + carrier + "'");
    }
    return {IFSubset::create(std::move(mu), std::move(nu)), std::move(carrier)};
}

std::string machine_to_json(const Machine& m) {
    json j;
    j["group"] = group_json(m.group());
    j["alphabet"] = m.alphabet();
    j["lambda"] = m.lambda().str();
    json mu = json::object(), nu = json::object();
    for (int letter = 0; letter < m.alphabet_size(); ++letter) {
        mu[m.alphabet()[letter]] = matrix_json(m, letter, false);
        nu[m.alphabet()[letter]] = matrix_json(m, letter, true);
    }
    j["mu"] = std::move(mu);
    j["nu"] = std::move(nu);
    j["structure"] = to_string(m.structure_mode());
    return dump_canonical(j);
}

Machine machine_from_json(const std::string& text) {
    const json j = parse_json(text, "machine");
    FiniteGroup group = group_from(require_field(j, "group", "machine"));
    const std::vector<std::string> alphabet =
        require_field(j, "alphabet", "machine").get<std::vector<std::string>>();
    const TruthValue lambda = value_from_json(require_field(j, "lambda", "machine"));
    const StructureMode mode = structure_mode_from_string(j.value("structure", "none"));

    const json& mu_obj = require_field(j, "mu", "machine");
    const json& nu_obj = require_field(j, "nu", "machine");
    std::vector<std::vector<std::vector<TruthValue>>> mu, nu;
    for (const std::string& letter : alphabet) {
        if (!mu_obj.contains(letter) || !nu_obj.contains(letter)) {
            throw ParseError("missing transition matrix for letter '" + letter + "'");
        }
        auto read_matrix = [](const json& rows) {
            std::vector<std::vector<TruthValue>> matrix;
            for (const auto& row : rows) {
                matrix.push_back(values_from(row));
            }
            return matrix;
        };
        mu.push_back(read_matrix(mu_obj.at(letter)));
        nu.push_back(read_matrix(nu_obj.at(letter)));
    }
    return Machine::create(std::move(group), alphabet, std::move(mu), std::move(nu), lambda, mode);
}

std::string degree_report_to_json(const DegreeReport& report) {
    json j;
    json conditions = json::object();
    for (const auto& [label, degree] : report.conditions) {
        conditions[label] = degree.str();
    }
    j["conditions"] = std::move(conditions);
    if (!report.auxiliary.empty()) {
        json aux = json::object();
        for (const auto& [label, degree] : report.auxiliary) {
            aux[label] = degree.str();
        }
        j["auxiliary"] = std::move(aux);
    }
    j["overall"] = report.overall.str();
    json witnesses = json::array();
    for (const Witness& w : report.witnesses) {
        witnesses.push_back(witness_json(w));
    }
    j["witnesses"] = std::move(witnesses);
    j["conventions"] = report.conventions;
    return dump_canonical(j);
}

std::string degree_report_to_text(const DegreeReport& report) {
    std::ostringstream out;
    out << "conditions:\n";
    for (const auto& [label, degree] : report.conditions) {
        out << "  " << label << " = " << degree.str() << "\n";
    }
    if (!report.auxiliary.empty()) {
        out << "auxiliary:\n";
        for (const auto& [label, degree] : report.auxiliary) {
            out << "  " << label << " = " << degree.str() << "\n";
        }
    }
    out << "overall = " << report.overall.str() << "\n";
    if (!report.witnesses.empty()) {
        out << "witnesses:\n";
        for (const Witness& w : report.witnesses) {
            out << "  " << w.condition << " at " << w.binding_str() << ": I("
                << w.antecedent.str() << ", " << w.consequent.str() << ") = " << w.degree.str()
                << "\n";
        }
    }
    out << "conventions:";
    for (const std::string& c : report.conventions) {
        out << " " << c;
    }
    out << "\n";
    return out.str();
}

std::string matrix_pair_to_json(const Machine& m, const TransitionMatrixPair& pair) {
    json j;
    j["word"] = m.word_str(pair.word);
    json a = json::array(), b = json::array();
    for (int r = 0; r < pair.n; ++r) {
        json ra = json::array(), rb = json::array();
        for (int c = 0; c < pair.n; ++c) {
            ra.push_back(pair.a(r, c).str());
            rb.push_back(pair.b(r, c).str());
        }
        a.push_back(std::move(ra));
        b.push_back(std::move(rb));
    }
    j["a_star"] = std::move(a);
    j["b_star"] = std::move(b);
    return dump_canonical(j);
}

std::string matrix_pair_to_text(const Machine& m, const TransitionMatrixPair& pair) {
    std::ostringstream out;
    const std::string word = m.word_str(pair.word);
    out << "word: " << (word.empty() ? "(empty)" : word) << "\n";
    auto print = [&](const char* label, bool b_side) {
        out << label << ":\n";
        for (int r = 0; r < pair.n; ++r) {
            out << " ";
            for (int c = 0; c < pair.n; ++c) {
                out << " " << (b_side ? pair.b(r, c).str() : pair.a(r, c).str());
            }
            out << "\n";
        }
    };
    print("a_star", false);
    print("b_star", true);
    return out.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ParseError("cannot write '" + path + "'");
    }
    out << content;
}

std::string digest_hex(const std::string& text) {
    unsigned long long hash = 14695981039346656037ULL;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", hash);
    return std::string(buf);
}

} // namespace ibifsa
