// Deterministic static analyzer for the machine-checkable part of the
// Well-Formedness (Syntax) review: duplicate labels, circular support,
// unsupported or undeveloped claims, dangling references, unreachable
// elements, naming violations, multiple roots.
//
// All checks are pure, read-only, and byte-deterministic; UndevelopedElement
// is informational (the decorator is sanctioned), severity policy beyond that
// is left to callers.

#ifndef GSNREV_WELLFORMED_HPP
#define GSNREV_WELLFORMED_HPP

#include <string>
#include <vector>

#include "gsnrev/case.hpp"

namespace gsnrev {

enum class IssueKind {
    DuplicateLabel,
    Cycle,
    UnsupportedGoal,
    UndevelopedElement,
    DanglingReference,
    NamingViolation,
    UnreachableElement,
    MultipleRoots,
};

struct StructuralIssue {
    IssueKind kind = IssueKind::DuplicateLabel;
    std::vector<std::string> labels;  // non-empty
    std::string detail;

    friend bool operator==(const StructuralIssue&, const StructuralIssue&) = default;
};

struct StructuralReport {
    std::string case_name;
    // Sorted by (kind, first label, detail).
    std::vector<StructuralIssue> issues;
};

// One DuplicateLabel issue per label string occurring on >= 2 elements; the
// detail lists every occurrence with its text.
std::vector<StructuralIssue> check_duplicates(const AssuranceCase& ac);

// One Cycle issue per strongly connected component of size >= 2 (or
// self-loop) in the SupportedBy digraph. InContextOf edges are contextual,
// not inferential, so they are excluded.
std::vector<StructuralIssue> check_cycles(const AssuranceCase& ac);

// UnsupportedGoal for each Goal/Strategy with no outgoing SupportedBy edge
// and undeveloped=false; UndevelopedElement for each undeveloped element.
std::vector<StructuralIssue> check_support(const AssuranceCase& ac);

// DanglingReference per relationship with an unresolved endpoint;
// UnreachableElement per element not reachable from any root via
// SupportedBy or InContextOf edges.
std::vector<StructuralIssue> check_references(const AssuranceCase& ac);

// NamingViolation when a label's prefix disagrees with the declared kind.
std::vector<StructuralIssue> check_naming(const AssuranceCase& ac);

// All checks plus a MultipleRoots issue when more than one root candidate
// exists, deterministically ordered.
StructuralReport analyze(const AssuranceCase& ac);

std::string_view issue_kind_name(IssueKind kind);

std::string report_to_json(const StructuralReport& report);
std::string report_to_text(const StructuralReport& report);

}  // namespace gsnrev

#endif  // GSNREV_WELLFORMED_HPP
