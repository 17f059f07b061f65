#include <doctest.h>

#include <set>

#include "gsnrev/prose.hpp"
#include "gsnrev/wellformed.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace gsnrev;
using gsnrev::testing::Rng;

TEST_SUITE_BEGIN("wellformed");

namespace {

AssuranceCase two_cycle() {
    AssuranceCase ac("cycle");
    const auto g1 = ac.add_element("G1", ElementKind::Goal, "a", false);
    const auto g2 = ac.add_element("G2", ElementKind::Goal, "b", false);
    ac.add_relationship(Endpoint::resolved(g1), Endpoint::resolved(g2),
                        RelationKind::SupportedBy);
    ac.add_relationship(Endpoint::resolved(g2), Endpoint::resolved(g1),
                        RelationKind::SupportedBy);
    return ac;
}

}  // namespace

TEST_CASE("duplicates: unique labels yield nothing") {
    AssuranceCase ac;
    ac.add_element("G1", ElementKind::Goal, "a", false);
    ac.add_element("G2", ElementKind::Goal, "b", false);
    CHECK(check_duplicates(ac).empty());
}

TEST_CASE("duplicates: three occurrences make one issue with three labels") {
    AssuranceCase ac;
    ac.add_element("G1", ElementKind::Goal, "a", false);
    ac.add_element("G1", ElementKind::Goal, "b", false);
    ac.add_element("G1", ElementKind::Goal, "c", false);
    const auto issues = check_duplicates(ac);
    REQUIRE(issues.size() == 1);
    CHECK(issues[0].labels == std::vector<std::string>{"G1", "G1", "G1"});
    CHECK(issues[0].detail.find("a") != std::string::npos);
    CHECK(issues[0].detail.find("c") != std::string::npos);
}

TEST_CASE("duplicates agree with a histogram oracle on random cases") {
    Rng rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        const AssuranceCase ac = testing::random_case(rng);
        std::set<std::string> expected;
        for (const auto& [label, count] : testing::label_histogram(ac)) {
            if (count >= 2) expected.insert(label);
        }
        std::set<std::string> got;
        for (const StructuralIssue& issue : check_duplicates(ac)) {
            CHECK(issue.labels.size() >= 2);
            got.insert(issue.labels.front());
        }
        CHECK(got == expected);
    }
}

TEST_CASE("cycles: forced 2-cycle is found") {
    const auto issues = check_cycles(two_cycle());
    REQUIRE(issues.size() == 1);
    CHECK(issues[0].labels == std::vector<std::string>{"G1", "G2"});
}

TEST_CASE("cycles: acyclic tree has none; context edges are excluded") {
    AssuranceCase ac;
    const auto g1 = ac.add_element("G1", ElementKind::Goal, "a", false);
    const auto g2 = ac.add_element("G2", ElementKind::Goal, "b", false);
    const auto c1 = ac.add_element("C1", ElementKind::Context, "ctx", false);
    ac.add_relationship(Endpoint::resolved(g1), Endpoint::resolved(g2),
                        RelationKind::SupportedBy);
    // A contextual back-reference is not circular reasoning.
    ac.add_relationship(Endpoint::resolved(g2), Endpoint::resolved(c1),
                        RelationKind::InContextOf);
    ac.add_relationship(Endpoint::resolved(c1), Endpoint::resolved(g1),
                        RelationKind::InContextOf);
    CHECK(check_cycles(ac).empty());
}

TEST_CASE("cycles: self-loop counts") {
    AssuranceCase ac;
    const auto g1 = ac.add_element("G1", ElementKind::Goal, "a", false);
    ac.add_relationship(Endpoint::resolved(g1), Endpoint::resolved(g1),
                        RelationKind::SupportedBy);
    REQUIRE(check_cycles(ac).size() == 1);
}

TEST_CASE("cycles: random DAG plus one back edge has exactly one cycle") {
    Rng rng(55);
    for (int trial = 0; trial < 100; ++trial) {
        AssuranceCase ac;
        const int n = 5;
        std::vector<ElementHandle> handles;
        for (int i = 0; i < n; ++i) {
            handles.push_back(ac.add_element(testing::label_for(ElementKind::Goal, i),
                                             ElementKind::Goal, "t", false));
        }
        // Random forward edges only (i -> j with i < j) keep it acyclic.
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                if (rng.chance(40)) {
                    ac.add_relationship(Endpoint::resolved(handles[i]),
                                        Endpoint::resolved(handles[j]),
                                        RelationKind::SupportedBy);
                }
            }
        }
        CHECK(check_cycles(ac).empty());
        // Edge 0 -> 1 plus back edge 1 -> 0 forces exactly one cycle.
        ac.add_relationship(Endpoint::resolved(handles[0]), Endpoint::resolved(handles[1]),
                            RelationKind::SupportedBy);
        ac.add_relationship(Endpoint::resolved(handles[1]), Endpoint::resolved(handles[0]),
                            RelationKind::SupportedBy);
        CHECK(check_cycles(ac).size() == 1);
    }
}

TEST_CASE("cycles agree with the transitive-closure oracle on small random cases") {
    Rng rng(77);
    testing::CaseOptions options;
    options.max_elements = 8;
    options.supported_only = true;
    options.allow_unresolved = false;
    for (int trial = 0; trial < 300; ++trial) {
        const AssuranceCase ac = testing::random_case(rng, options);
        const testing::SupportClosure closure(ac);
        std::set<std::set<std::string>> expected;
        for (const auto& component : closure.cyclic_components()) {
            std::set<std::string> labels;
            for (std::size_t idx : component) {
                labels.insert(ac.element(ElementHandle{static_cast<std::uint32_t>(idx)}).label);
            }
            expected.insert(std::move(labels));
        }
        std::set<std::set<std::string>> got;
        for (const StructuralIssue& issue : check_cycles(ac)) {
            got.insert(std::set<std::string>(issue.labels.begin(), issue.labels.end()));
        }
        CHECK(got == expected);
    }
}

TEST_CASE("support: undeveloped goal is informational, leaf goal is unsupported") {
    AssuranceCase ac;
    ac.add_element("G3", ElementKind::Goal, "\"Overinfusion\" is mitigated", true);
    const auto g4 = ac.add_element("G4", ElementKind::Goal, "leaf claim", false);
    const auto g5 = ac.add_element("G5", ElementKind::Goal, "supported claim", false);
    const auto sn = ac.add_element("Sn1", ElementKind::Solution, "evidence", false);
    ac.add_relationship(Endpoint::resolved(g5), Endpoint::resolved(sn),
                        RelationKind::SupportedBy);
    (void)g4;
    const auto issues = check_support(ac);
    REQUIRE(issues.size() == 2);
    CHECK(issues[0].kind == IssueKind::UndevelopedElement);
    CHECK(issues[0].labels == std::vector<std::string>{"G3"});
    CHECK(issues[1].kind == IssueKind::UnsupportedGoal);
    CHECK(issues[1].labels == std::vector<std::string>{"G4"});
}

TEST_CASE("references: dangling edge and unreachable island") {
    AssuranceCase ac;
    const auto g1 = ac.add_element("G1", ElementKind::Goal, "root", false);
    const auto sn = ac.add_element("Sn1", ElementKind::Solution, "evidence", false);
    ac.add_element("C7", ElementKind::Context, "island", false);
    ac.add_relationship(Endpoint::resolved(g1), Endpoint::resolved(sn),
                        RelationKind::SupportedBy);
    ac.add_relationship(Endpoint::resolved(g1), Endpoint::unresolved("G9"),
                        RelationKind::SupportedBy);
    const auto issues = check_references(ac);
    REQUIRE(issues.size() == 2);
    CHECK(issues[0].kind == IssueKind::DanglingReference);
    CHECK(issues[0].labels == std::vector<std::string>{"G9"});
    CHECK(issues[1].kind == IssueKind::UnreachableElement);
    CHECK(issues[1].labels == std::vector<std::string>{"C7"});
}

TEST_CASE("references: fully connected tree is clean") {
    const auto [ac, diagnostics] = parse_prose(
        "G1: root\nS1: argument\nSn1: evidence\nC1: ctx\nG1 is supported by S1\n"
        "S1 is supported by Sn1\nG1 is in the context of C1\n");
    CHECK(check_references(ac).empty());
}

TEST_CASE("unreachable agrees with the fixpoint oracle on random cases") {
    Rng rng(123);
    for (int trial = 0; trial < 200; ++trial) {
        const AssuranceCase ac = testing::random_case(rng);
        const auto reachable = testing::reachable_oracle(ac, ac.roots());
        std::set<std::string> expected;
        for (const GsnElement& el : ac.elements()) {
            if (!reachable.count(el.handle.index)) expected.insert(el.label);
        }
        std::multiset<std::string> got;
        for (const StructuralIssue& issue : check_references(ac)) {
            if (issue.kind == IssueKind::UnreachableElement) got.insert(issue.labels.front());
        }
        CHECK(std::set<std::string>(got.begin(), got.end()) == expected);
    }
}

TEST_CASE("naming violations") {
    AssuranceCase ac;
    ac.add_element("X1", ElementKind::Context, "mislabeled context", false);
    ac.add_element("J2", ElementKind::Justification, "fine", false);
    ac.add_element("S4", ElementKind::Solution, "missing the n", false);
    const auto issues = check_naming(ac);
    REQUIRE(issues.size() == 2);
    CHECK(issues[0].labels == std::vector<std::string>{"X1"});
    CHECK(issues[1].labels == std::vector<std::string>{"S4"});
}

TEST_CASE("analyze: minimal well-formed case has no issues") {
    const auto [ac, diagnostics] = parse_prose("G1: root\nSn1: evidence\nG1 is supported by Sn1\n");
    CHECK(analyze(ac).issues.empty());
}

TEST_CASE("analyze: multiple roots are reported") {
    const auto [ac, diagnostics] =
        parse_prose("G1: a\nSn1: e\nG2: b\nSn2: f\nG1 is supported by Sn1\nG2 is supported by "
                    "Sn2\n");
    const StructuralReport report = analyze(ac);
    REQUIRE(report.issues.size() == 1);
    CHECK(report.issues[0].kind == IssueKind::MultipleRoots);
    CHECK(report.issues[0].labels == std::vector<std::string>{"G1", "G2"});
}

TEST_CASE("analyze is pure: repeated runs produce identical bytes") {
    Rng rng(4242);
    const AssuranceCase ac = testing::random_case(rng);
    const std::string first = report_to_json(analyze(ac));
    for (int run = 0; run < 100; ++run) {
        CHECK(report_to_json(analyze(ac)) == first);
    }
}

TEST_CASE("no check mutates the case") {
    Rng rng(888);
    const AssuranceCase ac = testing::random_case(rng);
    const std::string before = serialize_prose(ac);
    (void)check_duplicates(ac);
    (void)check_cycles(ac);
    (void)check_support(ac);
    (void)check_references(ac);
    (void)check_naming(ac);
    (void)analyze(ac);
    CHECK(serialize_prose(ac) == before);
}

TEST_CASE("unknown prefixes parsed as Goals still surface as naming violations") {
    const auto [ac, diagnostics] = parse_prose("X1: mystery\nSn1: e\nX1 is supported by Sn1\n");
    const auto issues = check_naming(ac);
    REQUIRE(issues.size() == 1);
    CHECK(issues[0].labels == std::vector<std::string>{"X1"});
}

TEST_SUITE_END();
