// Acceptance suite: one line per criterion, nonzero exit when any fails.
//
// The verification campaigns run through the command-line tool where the
// criterion is phrased as an invocation, and through the library where a
// criterion reads fields of many reports. Criterion runtimes print alongside
// so expectations are checkable.

#include <array>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ibifsa/documents.hpp"
#include "ibifsa/harness.hpp"
#include "ibifsa/substructures.hpp"

using namespace ibifsa;
using nlohmann::json;

#ifndef IBIFSA_CLI_PATH
#error "IBIFSA_CLI_PATH must point at the built binary"
#endif

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    const std::string command = std::string(IBIFSA_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) {
        return {};
    }
    CliResult result;
    std::array<char, 8192> buffer;
    size_t got;
    while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
        result.out.append(buffer.data(), got);
    }
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    return json::parse(in);
}

struct Criterion {
    Criterion(int number, std::string title) : number(number), title(std::move(title)) {}

    int number;
    std::string title;
    bool pass = true;
    std::vector<std::string> notes;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            notes.push_back(what);
        }
    }
    void note(const std::string& what) { notes.push_back(what); }
};

SearchParams grid_run(TheoremId theorem, const std::string& group, int denominator,
                      int max_len = 4) {
    SearchParams params;
    params.theorem = theorem;
    InstanceGrid grid;
    grid.group_spec = group;
    grid.alphabet_size = 1;
    grid.denominator = denominator;
    params.source = SourceSpec::from_grid(grid);
    params.max_len = max_len;
    return params;
}

SearchParams sample_run(TheoremId theorem, const std::string& group, int denominator,
                        long long count = 1000, unsigned long long seed = 42) {
    SearchParams params;
    params.theorem = theorem;
    SamplerSpec spec;
    spec.group_spec = group;
    spec.alphabet_size = 1;
    spec.denominator = denominator;
    spec.count = count;
    spec.seed = seed;
    params.source = SourceSpec::from_sample(spec);
    params.max_len = 4;
    return params;
}

std::string describe(const SearchReport& r) {
    return r.theorem + " " + r.group_spec + " D=" + std::to_string(r.denominator) + " " + r.mode;
}

} // namespace

int main() {
    std::vector<Criterion> criteria;
    const std::string tmp = "/tmp/ibifsa_acceptance_";

    // ----- shared library campaigns -----
    // Starred theorems over the exhaustible joint grids and the seeded
    // samplers (cyclic(4) and symmetric(3) at D=4 as defaults, klein4 at D=4
    // for non-cyclic joint coverage).
    std::vector<SearchReport> star_reports;
    for (const auto theorem :
         {TheoremId::thm_subsemi_star, TheoremId::thm_kernel_star, TheoremId::thm_kernel_subsemi}) {
        for (int d : {1, 2}) {
            star_reports.push_back(search_counterexamples(grid_run(theorem, "cyclic:2", d)));
        }
        for (const std::string group : {"cyclic:4", "symmetric:3", "klein4"}) {
            star_reports.push_back(search_counterexamples(sample_run(theorem, group, 4)));
        }
    }
    std::vector<SearchReport> identity_reports;
    for (const std::string group : {"cyclic:2", "klein4"}) {
        for (int d : {1, 2}) {
            identity_reports.push_back(
                search_counterexamples(grid_run(TheoremId::prop_identity, group, d)));
        }
    }
    for (const std::string group : {"cyclic:4", "symmetric:3", "klein4"}) {
        identity_reports.push_back(search_counterexamples(sample_run(TheoremId::prop_identity, group, 4)));
    }
    // thm-ext over the default samplers, for extension consistency on larger groups
    std::vector<SearchReport> ext_sample_reports;
    for (const std::string group : {"cyclic:4", "symmetric:3"}) {
        ext_sample_reports.push_back(search_counterexamples(sample_run(TheoremId::thm_ext, group, 4)));
    }

    // ----- criterion 1: concatenation law, exhaustive grids -----
    {
        Criterion c(1, "concatenation law (exact equalities on exhaustive grids)");
        struct Leg {
            std::string group;
            int denominator;
            unsigned long long cap;
        };
        const std::vector<Leg> legs = {
            {"cyclic:2", 1, 10'000'000},
            {"cyclic:2", 2, 10'000'000},
            {"klein4", 1, 50'000'000},
            {"klein4", 2, 50'000'000},
        };
        std::vector<json> leg_reports;
        for (const Leg& leg : legs) {
            const std::string out = tmp + "c1_" + leg.group.substr(0, 3) +
                                    std::to_string(leg.denominator) + ".json";
            std::ostringstream cmd;
            cmd << "verify thm-ext --group " << leg.group << " --denominator " << leg.denominator
                << " --max-len 4 --cap " << leg.cap << " --format json -o " << out;
            const CliResult run = run_cli(cmd.str());
            const std::string name = leg.group + " D=" + std::to_string(leg.denominator);
            if (run.exit_code == 0) {
                const json report = load_json(out);
                leg_reports.push_back(report);
                c.require(report["counterexamples_total"] == 0, name + ": counterexamples");
                c.note(name + ": " + report["params"]["grid_count"].get<std::string>() +
                       " machine instances, 0 counterexamples, " +
                       std::to_string(report["header"]["wall_ms"].get<long long>()) + " ms");
            } else {
                c.pass = false;
                std::string reason = run.out;
                if (!reason.empty() && reason.back() == '\n') {
                    reason.pop_back();
                }
                c.note(name + ": BLOCKED (" + reason + ")");
            }
        }
        // stash the grid reports for criterion 2
        for (const json& report : leg_reports) {
            if (report["checks"]["consistency_violations"] != 0) {
                c.require(false, "consistency violated inside a criterion-1 grid");
            }
        }
        criteria.push_back(std::move(c));
    }

    // ----- criterion 2: consistency preservation of extensions -----
    {
        Criterion c(2, "extension consistency (a*+b* <= 1 entrywise, exactly)");
        unsigned long long covered = 0;
        for (const auto& r : ext_sample_reports) {
            c.require(r.checks.consistency_violations == 0, describe(r));
            covered += r.instances_examined;
        }
        for (const auto& r : star_reports) {
            if (r.theorem == "thm-subsemi-star" || r.theorem == "thm-kernel-star") {
                c.require(r.checks.consistency_violations == 0, describe(r));
                covered += r.instances_examined;
            }
        }
        c.note("criterion-1 grids pass inside criterion 1; " + std::to_string(covered) +
               " further instances here, 0 violations");
        criteria.push_back(std::move(c));
    }

    // ----- criterion 3: degree-1 soundness of the starred theorems -----
    {
        Criterion c(3, "degree-1 soundness of the starred/implied conditions");
        unsigned long long covered = 0;
        for (const auto& r : star_reports) {
            c.require(r.count_of("degree1-soundness") == 0, describe(r));
            covered += r.instances_examined;
        }
        c.note(std::to_string(covered) + " instances across " +
               std::to_string(star_reports.size()) + " campaigns, 0 violations");
        criteria.push_back(std::move(c));
    }

    // ----- criterion 4: identity condition vs subgroup degree -----
    {
        Criterion c(4, "identity condition: degree-1 implication and chaining bound");
        unsigned long long covered = 0;
        for (const auto& r : identity_reports) {
            c.require(r.count_of("prop-identity") == 0, describe(r) + ": degree-1 implication");
            c.require(r.count_of("chaining-bound") == 0, describe(r) + ": chaining bound");
            covered += r.instances_examined;
        }
        c.note(std::to_string(covered) + " subsets across " +
               std::to_string(identity_reports.size()) + " campaigns, 0 violations");
        criteria.push_back(std::move(c));
    }

    // ----- criterion 5: classical-oracle equivalence and crisp reductions -----
    {
        Criterion c(5, "classical-oracle equivalence and crisp semantics");
        for (const auto& r : identity_reports) {
            c.require(r.checks.classical_disagreements == 0, describe(r) + ": classical oracle");
            c.require(r.checks.abelian_normal_violations == 0, describe(r) + ": abelian normality");
            c.require(r.checks.crisp_disagreements == 0, describe(r) + ": crisp oracle");
        }
        for (const auto& r : star_reports) {
            c.require(r.checks.crisp_disagreements == 0, describe(r) + ": crisp oracle");
        }
        // dual-route agreement between the grid engine and the rational path
        for (const auto* batch : {&identity_reports, &star_reports, &ext_sample_reports}) {
            for (const auto& r : *batch) {
                c.require(r.checks.engine_mismatches == 0, describe(r) + ": engine agreement");
            }
        }
        criteria.push_back(std::move(c));
    }

    // ----- criterion 6: epsilon conditions as an instantiation subset -----
    {
        Criterion c(6, "subsemi transition degrees never exceed the epsilon degrees");
        unsigned long long covered = 0;
        for (const auto& r : star_reports) {
            if (r.theorem == "thm-subsemi-star" || r.theorem == "thm-kernel-subsemi") {
                c.require(r.checks.epsilon_subset_violations == 0, describe(r));
                covered += r.instances_examined;
            }
        }
        c.note(std::to_string(covered) + " instances, 0 violations");
        criteria.push_back(std::move(c));
    }

    // ----- criterion 7: negative controls under mutation -----
    {
        Criterion c(7, "mutation mode surfaces counterexamples (negative control)");
        const std::string out1 = tmp + "c7_ext.json";
        const CliResult ext = run_cli(
            "verify thm-ext --group cyclic:2 --denominator 1 --max-len 4 --mutate --format json -o " +
            out1);
        c.require(ext.exit_code == 1, "mutated thm-ext should exit 1");
        if (ext.exit_code == 1) {
            const json report = load_json(out1);
            c.require(report["kind_counts"].value("concat", 0ULL) > 0,
                      "mutated thm-ext should record concat counterexamples");
            c.note("mutated thm-ext: " + std::to_string(report["counterexamples_total"].get<unsigned long long>()) +
                   " counterexamples");
        }
        const std::string out2 = tmp + "c7_star.json";
        const CliResult star = run_cli(
            "verify thm-subsemi-star --group cyclic:2 --denominator 1 --max-len 4 --mutate "
            "--format json -o " + out2);
        c.require(star.exit_code == 1, "mutated thm-subsemi-star should exit 1");
        if (star.exit_code == 1) {
            const json report = load_json(out2);
            c.require(report["kind_counts"].value("degree1-soundness", 0ULL) > 0,
                      "mutated star run should break degree-1 soundness");
            c.note("mutated thm-subsemi-star: " +
                   std::to_string(report["counterexamples_total"].get<unsigned long long>()) +
                   " counterexamples");
        }
        criteria.push_back(std::move(c));
    }

    // ----- criterion 8: determinism across runs and worker counts -----
    {
        Criterion c(8, "byte-identical reports across repeats and worker counts");
        const std::vector<std::pair<std::string, std::string>> invocations = {
            {"verify thm-subsemi-star --group cyclic:2 --denominator 1 --max-len 4", "grid"},
            {"verify thm-kernel-star --group symmetric:3 --denominator 4 --samples 300 --seed 42",
             "sample"},
        };
        for (const auto& [base_cmd, label] : invocations) {
            std::vector<std::string> bodies;
            int i = 0;
            for (const std::string workers : {"--workers 1", "--workers 2", "--workers 1"}) {
                const std::string out = tmp + "c8_" + label + std::to_string(i++) + ".json";
                const CliResult run = run_cli(base_cmd + " " + workers + " --format json -o " + out);
                if (run.exit_code != 0 && run.exit_code != 3) {
                    c.require(false, label + ": unexpected exit " + std::to_string(run.exit_code));
                    continue;
                }
                json j = load_json(out);
                j.erase("header");
                bodies.push_back(j.dump());
            }
            for (size_t k = 1; k < bodies.size(); ++k) {
                c.require(bodies[k] == bodies[0], label + ": body differs between runs");
            }
            c.note(label + ": " + std::to_string(bodies.size()) + " runs byte-identical");
        }
        criteria.push_back(std::move(c));
    }

    // ----- criterion 9: findings ledger at D=2 with replayable witnesses -----
    {
        Criterion c(9, "fractional-lambda findings ledger (exit 3, replayable witnesses)");
        struct Probe {
            std::string args;
            std::string name;
        };
        const std::vector<Probe> probes = {
            {"verify thm-subsemi-star --group cyclic:2 --denominator 2 --max-len 4",
             "thm-subsemi-star cyclic:2 grid"},
            {"verify thm-kernel-star --group cyclic:2 --denominator 2 --max-len 4",
             "thm-kernel-star cyclic:2 grid"},
            {"verify thm-subsemi-star --group klein4 --denominator 2 --samples 1000 --seed 42",
             "thm-subsemi-star klein4 sample"},
            {"verify thm-kernel-star --group klein4 --denominator 2 --samples 1000 --seed 42",
             "thm-kernel-star klein4 sample"},
        };
        int probe_index = 0;
        for (const Probe& probe : probes) {
            const std::string out = tmp + "c9_" + std::to_string(probe_index++) + ".json";
            const CliResult run = run_cli(probe.args + " --format json -o " + out);
            c.require(run.exit_code == 0 || run.exit_code == 3,
                      probe.name + ": exit must distinguish findings (0/3), got " +
                          std::to_string(run.exit_code));
            if (run.exit_code != 0 && run.exit_code != 3) {
                continue;
            }
            const json report = load_json(out);
            const auto findings_total = report["findings_total"].get<unsigned long long>();
            c.require((run.exit_code == 3) == (findings_total > 0),
                      probe.name + ": exit code must match the findings count");
            c.note(probe.name + ": " + std::to_string(findings_total) + " findings, exit " +
                   std::to_string(run.exit_code));
            // replay recorded findings through the public evaluator path
            const bool is_subsemi = probe.args.find("thm-subsemi-star") != std::string::npos;
            int replayed = 0;
            for (const json& finding : report["findings"]) {
                if (replayed >= 3) {
                    break;
                }
                c.require(finding.contains("machine") && finding.contains("subset") &&
                              finding.contains("digest"),
                          probe.name + ": finding lacks replay documents");
                const Machine machine = machine_from_json(finding["machine"].dump());
                const IFSubset subset = ifs_from_json(finding["subset"].dump()).first;
                const RelationCheck relation = theorem_relation_check(
                    machine, subset,
                    is_subsemi ? TheoremRelation::subsemi_star : TheoremRelation::kernel_star, 4);
                c.require(!relation.pass,
                          probe.name + ": replay must reproduce the ordering violation");
                if (finding.contains("witness")) {
                    Witness w;
                    w.condition = finding["witness"]["condition"].get<std::string>();
                    for (const auto& [key, value] : finding["witness"]["binding"].items()) {
                        w.binding.emplace_back(key, value.get<std::string>());
                    }
                    w.antecedent = TruthValue::parse(finding["witness"]["antecedent"].get<std::string>());
                    w.consequent = TruthValue::parse(finding["witness"]["consequent"].get<std::string>());
                    w.degree = TruthValue::parse(finding["witness"]["degree"].get<std::string>());
                    const WitnessEval eval = reevaluate_witness(machine, subset, w);
                    c.require(eval.matches(w), probe.name + ": witness must replay exactly");
                }
                ++replayed;
            }
        }
        criteria.push_back(std::move(c));
    }

    // ----- summary -----
    int failures = 0;
    for (const Criterion& c : criteria) {
        std::cout << (c.pass ? "[PASS]" : "[FAIL]") << " criterion " << c.number << ": " << c.title
                  << "\n";
        for (const std::string& note : c.notes) {
            std::cout << "       - " << note << "\n";
        }
        if (!c.pass) {
            ++failures;
        }
    }
    std::cout << (failures == 0 ? "acceptance: all criteria passed"
                                : "acceptance: " + std::to_string(failures) + " criterion(s) failed")
              << "\n";
    return failures;
}
