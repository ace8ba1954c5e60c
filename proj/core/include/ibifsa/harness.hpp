#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ibifsa/machine.hpp"
#include "ibifsa/report.hpp"
#include "ibifsa/substructures.hpp"

namespace ibifsa {

/// The verifiable claims the searcher knows how to exercise.
enum class TheoremId {
    thm_ext,            // concatenation law: exact matrix equalities
    thm_subsemi_star,   // star transition degrees vs. single-letter overall
    thm_kernel_star,    // star difference degrees vs. single-letter overall
    thm_kernel_subsemi, // transition degrees vs. min(kernel, epsilon)
    prop_identity,      // identity condition vs. subgroup degree
};

std::string to_string(TheoremId id);
TheoremId theorem_id_from_string(std::string_view text);

/// Which degrees of freedom a theorem's instances carry. The searcher picks
/// this per theorem: machine-only claims do not re-run per subset, and
/// subset-only claims do not enumerate transition matrices.
enum class GridDof { machine, subset, joint };

std::string to_string(GridDof dof);

/// Exhaustive instance space: every entry (a transition site or a subset
/// element) independently takes all pairs (mu, nu) = (j/D, k/D) with
/// j + k <= D, in lexicographic order.
struct InstanceGrid {
    std::string group_spec = "cyclic:2";
    int alphabet_size = 1;
    int denominator = 1;
    GridDof dof = GridDof::joint;
    /// When set to product_subgroup, instances whose structural degrees are
    /// below 1 are skipped (they still count into the closed-form total).
    std::optional<StructureMode> structure_filter;
};

/// Exact closed-form instance count, as a decimal string (may exceed 64 bits).
std::string grid_count(const InstanceGrid& grid);

/// Seeded uniform sampling: mu = j/D uniform on 0..D, then nu uniform on
/// 0..D-j, in a fixed draw order, so streams replay exactly.
struct SamplerSpec {
    std::string group_spec = "cyclic:4";
    int alphabet_size = 1;
    int denominator = 4;
    long long count = 1000;
    unsigned long long seed = 42;
};

struct SourceSpec {
    enum class Kind { grid, sample };
    Kind kind = Kind::grid;
    InstanceGrid grid;
    SamplerSpec sample;

    static SourceSpec from_grid(InstanceGrid g) {
        return SourceSpec{Kind::grid, std::move(g), {}};
    }
    static SourceSpec from_sample(SamplerSpec s) {
        return SourceSpec{Kind::sample, {}, std::move(s)};
    }
};

/// A violation (hard) or a degree-ordering finding, with everything needed to
/// replay it: the instance documents, the witness, and the degrees involved.
struct CounterexampleRecord {
    unsigned long long instance_index = 0;
    std::string kind;
    std::string digest;
    std::string machine_json; // empty when the instance carries no machine
    std::string subset_json;  // empty when the instance carries no subset
    Witness witness;
    std::vector<std::pair<std::string, std::string>> degrees; // label -> rational
};

struct SearchChecks {
    unsigned long long consistency_violations = 0;
    unsigned long long classical_disagreements = 0;
    unsigned long long crisp_disagreements = 0;
    unsigned long long abelian_normal_violations = 0;
    unsigned long long epsilon_subset_violations = 0;
    unsigned long long engine_mismatches = 0;

    unsigned long long total() const {
        return consistency_violations + classical_disagreements + crisp_disagreements +
               abelian_normal_violations + epsilon_subset_violations + engine_mismatches;
    }
};

struct SearchReport {
    std::string theorem;
    std::string group_spec;
    int alphabet_size = 1;
    int denominator = 1;
    std::string mode; // "grid" | "sample"
    std::string dof;
    int max_len = 4;
    unsigned long long cap = 0;
    bool mutate = false;
    unsigned long long seed = 0;
    long long samples = 0;
    std::string structure = "none";
    std::string grid_count; // closed form, grid mode only

    unsigned long long instances_examined = 0;
    unsigned long long counterexamples_total = 0;
    unsigned long long findings_total = 0;
    std::vector<CounterexampleRecord> counterexamples; // capped, lexicographic-first
    std::vector<CounterexampleRecord> findings;        // capped, lexicographic-first
    std::vector<std::pair<std::string, unsigned long long>> kind_counts; // sorted by kind
    SearchChecks checks;
    std::vector<std::string> conventions;

    unsigned long long count_of(std::string_view kind) const {
        for (const auto& [name, count] : kind_counts) {
            if (name == kind) return count;
        }
        return 0;
    }

    // Header data, excluded from byte-comparisons of reports.
    std::string timestamp;
    long long wall_ms = 0;
    int workers_used = 1;

    bool hard_failure() const { return counterexamples_total > 0 || checks.total() > 0; }
    std::string verdict() const {
        if (hard_failure()) return "fail";
        return findings_total > 0 ? "findings" : "pass";
    }
};

inline constexpr int max_records_per_report = 10;

struct SearchParams {
    TheoremId theorem = TheoremId::thm_ext;
    SourceSpec source;
    int max_len = 4;
    unsigned long long cap = 10'000'000; // grid refusal threshold
    int workers = 0;                     // 0 = hardware concurrency
    bool mutate = false;                 // negative control
};

/// Runs the theorem's check over every instance of the source. Reports are
/// bit-identical across runs and worker counts for fixed parameters. Throws
/// GridTooLarge when an exhaustive grid exceeds the cap.
SearchReport search_counterexamples(const SearchParams& params);

/// Rebuilds the (machine, subset) instance a record refers to.
std::pair<std::optional<Machine>, std::optional<IFSubset>> rebuild_instance(
    const CounterexampleRecord& record);

// Report rendering.
std::string search_report_to_json(const SearchReport& report);
std::string search_report_to_text(const SearchReport& report);
std::string search_report_to_junit(const SearchReport& report);

/// Side-by-side degrees of one instance under the Lukasiewicz and Goedel
/// readings of the implication; comparison data only, nothing else consumes
/// the Goedel column.
struct ImplicationComparison {
    TruthValue luk_subgroup, goedel_subgroup;
    TruthValue luk_identity, goedel_identity;
};
ImplicationComparison compare_implications(const FiniteGroup& g, const IFSubset& s);

} // namespace ibifsa
