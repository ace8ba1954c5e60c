#include <doctest.h>

#include <nlohmann/json.hpp>

#include "fixtures.hpp"
#include "ibifsa/documents.hpp"
#include "ibifsa/harness.hpp"

using namespace ibifsa;
using nlohmann::json;

namespace {

SearchParams grid_params(TheoremId theorem, const std::string& group, int denominator,
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

json report_body(const SearchReport& report) {
    json j = json::parse(search_report_to_json(report));
    j.erase("header");
    return j;
}

} // namespace

TEST_CASE("grid counts match the closed form") {
    InstanceGrid grid;
    grid.group_spec = "cyclic:2";
    grid.alphabet_size = 1;
    grid.denominator = 1;
    grid.dof = GridDof::joint;
    // 3 legal pairs per entry, 4 transition entries + 2 subset entries
    CHECK(grid_count(grid) == "729");

    grid.dof = GridDof::machine;
    CHECK(grid_count(grid) == "81");
    grid.dof = GridDof::subset;
    CHECK(grid_count(grid) == "9");

    InstanceGrid c3;
    c3.group_spec = "cyclic:3";
    c3.alphabet_size = 1;
    c3.denominator = 2;
    c3.dof = GridDof::joint;
    // 6 legal pairs per entry, 9 + 3 entries
    CHECK(grid_count(c3) == "2176782336");

    CHECK_THROWS_AS(grid_count(InstanceGrid{"cyclic:2", 1, 0, GridDof::joint, {}}),
                    DomainError);
}

TEST_CASE("oversized grids are refused with the exact count") {
    auto params = grid_params(TheoremId::thm_subsemi_star, "cyclic:3", 2);
    try {
        search_counterexamples(params);
        FAIL("expected GridTooLarge");
    } catch (const GridTooLarge& e) {
        CHECK(e.count == "2176782336");
        CHECK(e.cap == 10'000'000);
    }
}

TEST_CASE("enumeration length equals the closed-form count") {
    auto params = grid_params(TheoremId::thm_subsemi_star, "cyclic:2", 1, 2);
    const auto report = search_counterexamples(params);
    CHECK(report.instances_examined == 729);
    CHECK(report.grid_count == "729");
    CHECK(report.dof == "joint");
}

TEST_CASE("thm-ext holds exhaustively on small grids") {
    for (int d : {1, 2}) {
        auto params = grid_params(TheoremId::thm_ext, "cyclic:2", d);
        const auto report = search_counterexamples(params);
        CHECK(report.dof == "machine");
        CHECK(report.counterexamples_total == 0);
        CHECK(report.findings_total == 0);
        CHECK(report.checks.consistency_violations == 0);
        CHECK(report.checks.crisp_disagreements == 0);
        CHECK(report.checks.engine_mismatches == 0);
        CHECK(report.verdict() == "pass");
        CHECK(report.instances_examined == (d == 1 ? 81 : 1296));
    }
}

TEST_CASE("mutation mode finds concatenation counterexamples (negative control)") {
    auto params = grid_params(TheoremId::thm_ext, "cyclic:2", 1, 3);
    params.mutate = true;
    const auto report = search_counterexamples(params);
    CHECK(report.counterexamples_total > 0);
    CHECK(report.verdict() == "fail");
    REQUIRE_FALSE(report.counterexamples.empty());
    const auto& rec = report.counterexamples.front();
    CHECK_FALSE(rec.machine_json.empty());
    CHECK_FALSE(rec.digest.empty());
}

TEST_CASE("mutation mode breaks degree-1 star soundness (negative control)") {
    auto params = grid_params(TheoremId::thm_subsemi_star, "cyclic:2", 1, 4);
    params.mutate = true;
    const auto report = search_counterexamples(params);
    CHECK(report.counterexamples_total > 0);
    CHECK(report.count_of("degree1-soundness") > 0);
}

TEST_CASE("prop-identity holds on subset grids") {
    for (const std::string group : {"cyclic:2", "klein4"}) {
        for (int d : {1, 2}) {
            auto params = grid_params(TheoremId::prop_identity, group, d);
            const auto report = search_counterexamples(params);
            CHECK(report.dof == "subset");
            CHECK(report.counterexamples_total == 0);
            CHECK(report.checks.classical_disagreements == 0);
            CHECK(report.checks.crisp_disagreements == 0);
            CHECK(report.checks.abelian_normal_violations == 0);
            CHECK(report.checks.engine_mismatches == 0);
        }
    }
}

TEST_CASE("joint grids pass the starred theorems at degree 1") {
    for (const auto theorem :
         {TheoremId::thm_subsemi_star, TheoremId::thm_kernel_star, TheoremId::thm_kernel_subsemi}) {
        auto params = grid_params(theorem, "cyclic:2", 1);
        const auto report = search_counterexamples(params);
        CAPTURE(report.theorem);
        CHECK(report.counterexamples_total == 0);
        CHECK(report.checks.epsilon_subset_violations == 0);
        CHECK(report.checks.engine_mismatches == 0);
    }
}

TEST_CASE("sampling is reproducible and valid") {
    SamplerSpec spec;
    spec.group_spec = "symmetric:3";
    spec.alphabet_size = 1;
    spec.denominator = 4;
    spec.count = 50;
    spec.seed = 42;

    SearchParams params;
    params.theorem = TheoremId::thm_subsemi_star;
    params.source = SourceSpec::from_sample(spec);
    params.max_len = 3;

    const auto first = search_counterexamples(params);
    const auto second = search_counterexamples(params);
    CHECK(report_body(first) == report_body(second));
    CHECK(first.instances_examined == 50);
    CHECK(first.counterexamples_total == 0); // degree-1 soundness + consistency
    CHECK(first.checks.consistency_violations == 0);
    CHECK(first.checks.engine_mismatches == 0);

    // different seed, different stream
    params.source.sample.seed = 43;
    const auto third = search_counterexamples(params);
    CHECK(report_body(first) != report_body(third));
}

TEST_CASE("reports are byte-identical across worker counts") {
    auto params = grid_params(TheoremId::thm_subsemi_star, "cyclic:2", 1);
    params.workers = 1;
    const auto one = search_counterexamples(params);
    params.workers = 4;
    const auto four = search_counterexamples(params);
    CHECK(report_body(one) == report_body(four));
    CHECK(search_report_to_json(one).find("\"header\"") != std::string::npos);
}

TEST_CASE("recorded counterexamples replay from their documents") {
    auto params = grid_params(TheoremId::thm_ext, "cyclic:2", 1, 3);
    params.mutate = true;
    const auto report = search_counterexamples(params);
    REQUIRE_FALSE(report.counterexamples.empty());
    for (const auto& rec : report.counterexamples) {
        const auto [machine, subset] = rebuild_instance(rec);
        REQUIRE(machine.has_value());
        // the saved instance reproduces the violation under the same mutation
        const auto check = concat_equality_check(*machine, params.max_len, true);
        CHECK_FALSE(check.witnesses.empty());
        if (!rec.witness.condition.empty()) {
            CHECK(rec.witness.condition == check.witnesses.front().condition);
            CHECK(rec.witness.binding == check.witnesses.front().binding);
        }
    }
}

TEST_CASE("structure filter keeps only degree-1 structural machines") {
    SearchParams params = grid_params(TheoremId::thm_ext, "cyclic:2", 1, 2);
    params.source.grid.structure_filter = StructureMode::product_subgroup;
    const auto report = search_counterexamples(params);
    CHECK(report.instances_examined < 81); // some machines are filtered out
    CHECK(report.instances_examined > 0);
    CHECK(report.counterexamples_total == 0);
}

TEST_CASE("goedel comparison column") {
    const auto c2 = FiniteGroup::cyclic(2);
    const auto s = IFSubset::create({fixtures::tv(1, 2), fixtures::tv(9, 10)},
                                    {fixtures::tv(2, 5), fixtures::tv(0)});
    const auto cmp = compare_implications(c2, s);
    CHECK(cmp.luk_subgroup == fixtures::tv(3, 5));
    // Goedel drops harder: I_g(nu(0)=2/5, max(nu(1),nu(1))=0) = 0
    CHECK(cmp.goedel_subgroup == TruthValue::zero());
    CHECK(cmp.luk_identity == fixtures::tv(3, 5));
    CHECK(cmp.goedel_identity == TruthValue::zero());
}

TEST_CASE("junit rendering is well-formed enough for CI") {
    auto params = grid_params(TheoremId::thm_ext, "cyclic:2", 1, 2);
    const auto report = search_counterexamples(params);
    const auto xml = search_report_to_junit(report);
    CHECK(xml.find("<testsuite") != std::string::npos);
    CHECK(xml.find("failures=\"0\"") != std::string::npos);
    CHECK(xml.find("</testsuite>") != std::string::npos);
}
