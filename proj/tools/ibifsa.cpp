// Command-line interface over the ibifsa core library: document validation,
// degree checks, machine runs, and verification campaigns.
//
// Exit codes: 0 = pass, 1 = hard counterexample or lambda-verdict failure,
// 2 = input/usage error, 3 = findings recorded (degree-ordering violations
// below 1 only).

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ibifsa/documents.hpp"
#include "ibifsa/harness.hpp"
#include "ibifsa/substructures.hpp"

using namespace ibifsa;
using nlohmann::json;

namespace {

constexpr int exit_pass = 0;
constexpr int exit_hard = 1;
constexpr int exit_usage = 2;
constexpr int exit_findings = 3;

struct OutputOptions {
    std::string format = "text";
    std::string out_path;
};

void add_output_flags(CLI::App* cmd, OutputOptions& opts,
                      const std::vector<std::string>& formats = {"text", "json"}) {
    cmd->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember(formats))
        ->capture_default_str();
    cmd->add_option("-o,--output", opts.out_path, "write machine-readable output to a file");
}

void deliver(const OutputOptions& opts, const std::string& machine_readable,
             const std::string& text) {
    if (!opts.out_path.empty()) {
        write_file(opts.out_path, machine_readable);
        std::cout << text;
    } else if (opts.format == "text") {
        std::cout << text;
    } else {
        std::cout << machine_readable;
    }
}

IFSubset load_subset_for_states(const std::string& path, int expected_size) {
    auto [subset, carrier] = ifs_from_json(read_file(path));
    if (carrier != "group") {
        throw CarrierMismatch("expected a subset with carrier \"group\", got \"" + carrier + "\"");
    }
    if (subset.size() != expected_size) {
        throw CarrierMismatch("subset carrier " + std::to_string(subset.size()) +
                              " does not match the expected carrier " +
                              std::to_string(expected_size));
    }
    return subset;
}

std::string report_json_with_verdict(const DegreeReport& report,
                                     const std::optional<TruthValue>& lambda) {
    json j = json::parse(degree_report_to_json(report));
    if (lambda) {
        j["lambda"] = lambda->str();
        j["verdict"] = report.overall >= *lambda ? "PASS" : "FAIL";
    }
    return j.dump(2) + "\n";
}

int finish_check(const DegreeReport& report, const std::optional<TruthValue>& lambda,
                 const OutputOptions& opts) {
    std::string text = degree_report_to_text(report);
    if (lambda) {
        const bool pass = report.overall >= *lambda;
        text += "lambda = " + lambda->str() + "\n";
        text += std::string("verdict: ") + (pass ? "PASS" : "FAIL") + " (" + report.overall.str() +
                (pass ? " >= " : " < ") + lambda->str() + ")\n";
        deliver(opts, report_json_with_verdict(report, lambda), text);
        return pass ? exit_pass : exit_hard;
    }
    deliver(opts, report_json_with_verdict(report, {}), text);
    return exit_pass;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"implication-based intuitionistic fuzzy semiautomata toolkit"};
    app.require_subcommand(1);

    // ---- group ----
    auto* group_cmd = app.add_subcommand("group", "group documents");
    group_cmd->require_subcommand(1);

    std::string group_spec;
    OutputOptions group_make_out;
    auto* group_make = group_cmd->add_subcommand("make", "build a standard group");
    group_make->add_option("spec", group_spec, "family spec, e.g. cyclic:4")->required();
    add_output_flags(group_make, group_make_out, {"text", "json"});

    std::string group_path;
    auto* group_validate = group_cmd->add_subcommand("validate", "validate a group document");
    group_validate->add_option("path", group_path, "group JSON document")->required();

    // ---- machine ----
    auto* machine_cmd = app.add_subcommand("machine", "semiautomaton documents");
    machine_cmd->require_subcommand(1);

    std::string machine_path, structure_override;
    OutputOptions machine_validate_out;
    auto* machine_validate = machine_cmd->add_subcommand("validate", "validate and report");
    machine_validate->add_option("path", machine_path, "machine JSON document")->required();
    machine_validate->add_option("--structure", structure_override,
                                 "override the document's structure mode")
        ->check(CLI::IsMember({"product-subgroup", "none"}));
    add_output_flags(machine_validate, machine_validate_out);

    std::string run_path, run_word;
    int run_from = 0, run_to = 0;
    auto* machine_run = machine_cmd->add_subcommand("run", "read one extension entry");
    machine_run->add_option("path", run_path)->required();
    machine_run->add_option("--from", run_from, "start state index")->required();
    machine_run->add_option("--word", run_word, "whitespace-separated symbols; empty = unit")
        ->required();
    machine_run->add_option("--to", run_to, "end state index")->required();

    std::string extend_path, extend_word;
    bool extend_mutate = false;
    OutputOptions extend_out;
    auto* machine_extend = machine_cmd->add_subcommand("extend", "print a word's matrices");
    machine_extend->add_option("path", extend_path)->required();
    machine_extend->add_option("--word", extend_word)->required();
    machine_extend->add_flag("--mutate", extend_mutate, "corrupted compose (negative control)");
    add_output_flags(machine_extend, extend_out);

    // ---- check ----
    auto* check_cmd = app.add_subcommand("check", "degree checks with a lambda verdict");
    check_cmd->require_subcommand(1);

    struct CheckArgs {
        std::string first, subset_path, lambda;
        int max_len = -1;
        OutputOptions out;
    };
    CheckArgs sub_args, normal_args, subsemi_args, kernel_args;
    auto add_check = [&](const char* name, const char* first_help, CheckArgs& args) {
        auto* cmd = check_cmd->add_subcommand(name, std::string("check ") + name + " degrees");
        cmd->add_option("structure", args.first, first_help)->required();
        cmd->add_option("subset", args.subset_path, "IFS JSON document")->required();
        cmd->add_option("--lambda", args.lambda, "threshold p/q for the verdict");
        add_output_flags(cmd, args.out);
        return cmd;
    };
    add_check("subgroup", "group document or family spec", sub_args);
    add_check("normal", "group document or family spec", normal_args);
    auto* check_subsemi = add_check("subsemi", "machine JSON document", subsemi_args);
    check_subsemi->add_option("--max-len", subsemi_args.max_len,
                              "also report word-quantified degrees up to this length");
    auto* check_kernel = add_check("kernel", "machine JSON document", kernel_args);
    check_kernel->add_option("--max-len", kernel_args.max_len,
                             "also report word-quantified degrees up to this length");

    // ---- verify ----
    std::string verify_theorem, verify_group = "cyclic:2", verify_structure = "none";
    int verify_alphabet = 1, verify_denominator = 1, verify_max_len = 4, verify_workers = 0;
    long long verify_samples = 0;
    unsigned long long verify_seed = 42, verify_cap = 10'000'000;
    bool verify_mutate = false, verify_junit = false;
    OutputOptions verify_out;
    auto* verify_cmd = app.add_subcommand("verify", "run a counterexample search");
    verify_cmd
        ->add_option("theorem", verify_theorem,
                     "thm-ext | thm-subsemi-star | thm-kernel-star | thm-kernel-subsemi | "
                     "prop-identity")
        ->required();
    verify_cmd->add_option("--group", verify_group, "group family spec or document path")
        ->capture_default_str();
    verify_cmd->add_option("--alphabet", verify_alphabet, "alphabet size")->capture_default_str();
    verify_cmd->add_option("--denominator", verify_denominator, "value grid denominator D")
        ->capture_default_str();
    verify_cmd->add_option("--max-len", verify_max_len, "word length bound")->capture_default_str();
    verify_cmd->add_option("--samples", verify_samples,
                           "sample this many instances instead of grid enumeration");
    verify_cmd->add_option("--seed", verify_seed, "sampler seed")->capture_default_str();
    verify_cmd->add_option("--cap", verify_cap, "grid refusal cap (instances)")
        ->capture_default_str();
    verify_cmd->add_option("--workers", verify_workers, "worker threads (0 = hardware)");
    verify_cmd->add_option("--structure", verify_structure, "grid structure filter")
        ->check(CLI::IsMember({"product-subgroup", "none"}));
    verify_cmd->add_flag("--mutate", verify_mutate, "negative control: corrupted compose");
    verify_cmd->add_flag("--junit", verify_junit, "shorthand for --format junit");
    add_output_flags(verify_cmd, verify_out, {"text", "json", "junit"});

    // ---- hom ----
    auto* hom_cmd = app.add_subcommand("hom", "homomorphic image and preimage of subsets");
    hom_cmd->require_subcommand(1);
    struct HomArgs {
        std::string hom_path, subset_path;
        OutputOptions out;
    };
    HomArgs image_args, preimage_args;
    for (auto [name, args] : {std::pair{"image", &image_args}, {"preimage", &preimage_args}}) {
        auto* cmd = hom_cmd->add_subcommand(name, std::string("subset ") + name);
        cmd->add_option("hom", args->hom_path, "homomorphism JSON document")->required();
        cmd->add_option("subset", args->subset_path, "IFS JSON document")->required();
        add_output_flags(cmd, args->out);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return exit_usage;
    }

    try {
        // group make
        if (group_make->parsed()) {
            const FiniteGroup g = FiniteGroup::from_spec(group_spec);
            const std::string doc = group_to_json(g);
            std::string text = "group " + g.name() + ": order " + std::to_string(g.order()) +
                               ", identity " + g.element_name(g.identity()) +
                               (g.is_abelian() ? ", abelian" : ", non-abelian") + "\n";
            if (group_make_out.out_path.empty() && group_make_out.format == "text") {
                std::cout << doc; // the document is the product; text adds nothing
            } else {
                deliver(group_make_out, doc, text);
            }
            return exit_pass;
        }
        if (group_validate->parsed()) {
            const FiniteGroup g = group_from_json(read_file(group_path));
            std::cout << "valid group: order " << g.order() << ", identity "
                      << g.element_name(g.identity())
                      << (g.is_abelian() ? ", abelian" : ", non-abelian") << "\n";
            return exit_pass;
        }

        // machine subcommands
        if (machine_validate->parsed()) {
            Machine m = machine_from_json(read_file(machine_path));
            if (!structure_override.empty() &&
                structure_mode_from_string(structure_override) != m.structure_mode()) {
                // rebuild under the requested mode
                json doc = json::parse(read_file(machine_path));
                doc["structure"] = structure_override;
                m = machine_from_json(doc.dump());
            }
            const DegreeReport report = m.structural_report(m.lambda());
            std::string text = "machine: group " + m.group().name() + ", alphabet " +
                               std::to_string(m.alphabet_size()) + ", lambda " +
                               m.lambda().str() + ", structure " +
                               to_string(m.structure_mode()) + "\n" +
                               degree_report_to_text(report);
            deliver(machine_validate_out, report_json_with_verdict(report, {}), text);
            return exit_pass;
        }
        if (machine_run->parsed()) {
            const Machine m = machine_from_json(read_file(run_path));
            const auto [mu, nu] = run_degree(m, run_from, m.parse_word(run_word), run_to);
            std::cout << "mu=" << mu.str() << " nu=" << nu.str() << "\n";
            return exit_pass;
        }
        if (machine_extend->parsed()) {
            const Machine m = machine_from_json(read_file(extend_path));
            WordExtender extender(m, extend_mutate);
            const auto pair = extender.extend(m.parse_word(extend_word));
            deliver(extend_out, matrix_pair_to_json(m, *pair), matrix_pair_to_text(m, *pair));
            return exit_pass;
        }

        // check subcommands
        auto parse_lambda = [](const std::string& text) -> std::optional<TruthValue> {
            if (text.empty()) {
                return std::nullopt;
            }
            const TruthValue v = TruthValue::parse(text);
            if (v <= TruthValue::zero()) {
                throw LambdaOutOfRange("lambda must lie in (0,1]");
            }
            return v;
        };
        if (check_cmd->parsed()) {
            if (check_cmd->get_subcommands().front()->get_name() == "subgroup" ||
                check_cmd->get_subcommands().front()->get_name() == "normal") {
                const bool is_subgroup =
                    check_cmd->get_subcommands().front()->get_name() == "subgroup";
                CheckArgs& args = is_subgroup ? sub_args : normal_args;
                const FiniteGroup g = load_group(args.first);
                const IFSubset s = load_subset_for_states(args.subset_path, g.order());
                const auto lambda = parse_lambda(args.lambda);
                const DegreeReport report =
                    is_subgroup ? subgroup_report(g, s, lambda) : normal_report(g, s, lambda);
                return finish_check(report, lambda, args.out);
            }
            const bool is_subsemi = check_cmd->get_subcommands().front()->get_name() == "subsemi";
            CheckArgs& args = is_subsemi ? subsemi_args : kernel_args;
            const Machine m = machine_from_json(read_file(args.first));
            const IFSubset s = load_subset_for_states(args.subset_path, m.group().order());
            std::optional<TruthValue> lambda = parse_lambda(args.lambda);
            if (!lambda) {
                lambda = m.lambda();
            }
            DegreeReport report =
                is_subsemi ? subsemi_degree(m, s, lambda) : kernel_degree(m, s, lambda);
            if (args.max_len >= 0) {
                const DegreeReport star =
                    is_subsemi ? subsemi_star_degree(m, s, args.max_len, lambda)
                               : kernel_star_degree(m, s, args.max_len, lambda);
                for (const auto& [label, degree] : star.conditions) {
                    report.add_auxiliary("star." + label, degree);
                }
                const DegreeReport eps = kernel_epsilon_degree(m, s);
                for (const auto& [label, degree] : eps.conditions) {
                    report.add_auxiliary(label, degree);
                }
            }
            return finish_check(report, lambda, args.out);
        }

        // verify
        if (verify_cmd->parsed()) {
            SearchParams params;
            params.theorem = theorem_id_from_string(verify_theorem);
            params.max_len = verify_max_len;
            params.cap = verify_cap;
            params.workers = verify_workers;
            params.mutate = verify_mutate;
            if (verify_samples > 0) {
                SamplerSpec spec;
                spec.group_spec = verify_group;
                spec.alphabet_size = verify_alphabet;
                spec.denominator = verify_denominator;
                spec.count = verify_samples;
                spec.seed = verify_seed;
                params.source = SourceSpec::from_sample(spec);
            } else {
                InstanceGrid grid;
                grid.group_spec = verify_group;
                grid.alphabet_size = verify_alphabet;
                grid.denominator = verify_denominator;
                if (verify_structure == "product-subgroup") {
                    grid.structure_filter = StructureMode::product_subgroup;
                }
                params.source = SourceSpec::from_grid(grid);
            }
            const SearchReport report = search_counterexamples(params);
            if (verify_junit) {
                verify_out.format = "junit";
            }
            const std::string machine_readable = verify_out.format == "junit"
                                                     ? search_report_to_junit(report)
                                                     : search_report_to_json(report);
            deliver(verify_out, machine_readable, search_report_to_text(report));
            if (report.hard_failure()) {
                return exit_hard;
            }
            return report.findings_total > 0 ? exit_findings : exit_pass;
        }

        // hom
        for (auto [cmd, args, image] :
             {std::tuple{hom_cmd->get_subcommand("image"), &image_args, true},
              {hom_cmd->get_subcommand("preimage"), &preimage_args, false}}) {
            if (!cmd->parsed()) {
                continue;
            }
            const GroupHomomorphism f = hom_from_json(read_file(args->hom_path));
            const auto [subset, carrier] = ifs_from_json(read_file(args->subset_path));
            const IFSubset result = image ? hom_image(f, subset) : hom_preimage(f, subset);
            const std::string doc = ifs_to_json(result);
            std::ostringstream text;
            text << (image ? "image" : "preimage") << " over carrier of "
                 << result.size() << ":\n";
            for (int x = 0; x < result.size(); ++x) {
                text << "  " << (image ? f.target() : f.source()).element_name(x) << ": mu="
                     << result.mu(x).str() << " nu=" << result.nu(x).str() << "\n";
            }
            if (args->out.out_path.empty() && args->out.format == "text") {
                std::cout << doc;
            } else {
                deliver(args->out, doc, text.str());
            }
            return exit_pass;
        }
    } catch (const GridTooLarge& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }

    std::cerr << "usage error: no subcommand executed\n";
    return exit_usage;
}
