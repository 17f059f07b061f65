#include "gsnrev/wellformed.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include <json.hpp>

namespace gsnrev {

namespace {

using AdjacencyList = std::vector<std::vector<std::uint32_t>>;

AdjacencyList support_graph(const AssuranceCase& ac) {
    AdjacencyList adj(ac.size());
    for (const Relationship& rel : ac.relationships()) {
        if (rel.kind != RelationKind::SupportedBy) continue;
        if (rel.src.is_resolved() && rel.dst.is_resolved()) {
            adj[rel.src.handle().index].push_back(rel.dst.handle().index);
        }
    }
    return adj;
}

// Iterative Tarjan; components come out in a deterministic order which we
// re-normalize to first-member insertion order below.
std::vector<std::vector<std::uint32_t>> strongly_connected_components(const AdjacencyList& adj) {
    const std::uint32_t n = static_cast<std::uint32_t>(adj.size());
    std::vector<int> index(n, -1), lowlink(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::uint32_t> stack;
    std::vector<std::vector<std::uint32_t>> components;
    int next_index = 0;

    struct Frame {
        std::uint32_t node;
        std::size_t edge = 0;
    };
    for (std::uint32_t start = 0; start < n; ++start) {
        if (index[start] != -1) continue;
        std::vector<Frame> frames{{start}};
        index[start] = lowlink[start] = next_index++;
        stack.push_back(start);
        on_stack[start] = true;
        while (!frames.empty()) {
            Frame& frame = frames.back();
            const std::uint32_t v = frame.node;
            if (frame.edge < adj[v].size()) {
                const std::uint32_t w = adj[v][frame.edge++];
                if (index[w] == -1) {
                    index[w] = lowlink[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w});
                } else if (on_stack[w]) {
                    lowlink[v] = std::min(lowlink[v], index[w]);
                }
            } else {
                if (lowlink[v] == index[v]) {
                    std::vector<std::uint32_t> component;
                    for (;;) {
                        const std::uint32_t w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        component.push_back(w);
                        if (w == v) break;
                    }
                    std::sort(component.begin(), component.end());
                    components.push_back(std::move(component));
                }
                frames.pop_back();
                if (!frames.empty()) {
                    lowlink[frames.back().node] =
                        std::min(lowlink[frames.back().node], lowlink[v]);
                }
            }
        }
    }
    std::sort(components.begin(), components.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return components;
}

std::string occurrence(const GsnElement& el) {
    return el.label + ": " + el.text;
}

}  // namespace

std::vector<StructuralIssue> check_duplicates(const AssuranceCase& ac) {
    std::map<std::string, std::vector<std::uint32_t>> histogram;
    for (const GsnElement& el : ac.elements()) {
        histogram[el.label].push_back(el.handle.index);
    }
    // Group order follows first occurrence so the raw check output is stable
    // on its own, before analyze() re-sorts.
    std::vector<const std::pair<const std::string, std::vector<std::uint32_t>>*> groups;
    for (const auto& entry : histogram) {
        if (entry.second.size() >= 2) groups.push_back(&entry);
    }
    std::sort(groups.begin(), groups.end(),
              [](const auto* a, const auto* b) { return a->second.front() < b->second.front(); });

    std::vector<StructuralIssue> issues;
    for (const auto* group : groups) {
        StructuralIssue issue;
        issue.kind = IssueKind::DuplicateLabel;
        std::string detail;
        for (std::uint32_t idx : group->second) {
            issue.labels.push_back(group->first);
            if (!detail.empty()) detail += "; ";
            detail += occurrence(ac.element(ElementHandle{idx}));
        }
        issue.detail = "label used " + std::to_string(group->second.size()) + " times: " + detail;
        issues.push_back(std::move(issue));
    }
    return issues;
}

std::vector<StructuralIssue> check_cycles(const AssuranceCase& ac) {
    const AdjacencyList adj = support_graph(ac);
    std::vector<bool> self_loop(ac.size(), false);
    for (std::uint32_t v = 0; v < adj.size(); ++v) {
        for (std::uint32_t w : adj[v]) {
            if (w == v) self_loop[v] = true;
        }
    }
    std::vector<StructuralIssue> issues;
    for (const auto& component : strongly_connected_components(adj)) {
        if (component.size() < 2 && !self_loop[component.front()]) continue;
        StructuralIssue issue;
        issue.kind = IssueKind::Cycle;
        std::string detail;
        for (std::uint32_t idx : component) {
            issue.labels.push_back(ac.element(ElementHandle{idx}).label);
            if (!detail.empty()) detail += " -> ";
            detail += ac.element(ElementHandle{idx}).label;
        }
        issue.detail = "circular support: " + detail + " -> " + issue.labels.front();
        issues.push_back(std::move(issue));
    }
    return issues;
}

std::vector<StructuralIssue> check_support(const AssuranceCase& ac) {
    std::vector<bool> has_outgoing(ac.size(), false);
    for (const Relationship& rel : ac.relationships()) {
        if (rel.kind == RelationKind::SupportedBy && rel.src.is_resolved()) {
            has_outgoing[rel.src.handle().index] = true;
        }
    }
    std::vector<StructuralIssue> issues;
    for (const GsnElement& el : ac.elements()) {
        if (el.undeveloped) {
            issues.push_back({IssueKind::UndevelopedElement,
                              {el.label},
                              std::string(kind_name(el.kind)) + " '" + el.label +
                                  "' is marked undeveloped: " + el.text});
            continue;
        }
        const bool claim_like = el.kind == ElementKind::Goal || el.kind == ElementKind::Strategy;
        if (claim_like && !has_outgoing[el.handle.index]) {
            issues.push_back({IssueKind::UnsupportedGoal,
                              {el.label},
                              std::string(kind_name(el.kind)) + " '" + el.label +
                                  "' has no supporting argument or evidence: " + el.text});
        }
    }
    return issues;
}

std::vector<StructuralIssue> check_references(const AssuranceCase& ac) {
    std::vector<StructuralIssue> issues;
    for (const Relationship& rel : ac.relationships()) {
        if (rel.src.is_resolved() && rel.dst.is_resolved()) continue;
        StructuralIssue issue;
        issue.kind = IssueKind::DanglingReference;
        std::string detail = std::string(relation_name(rel.kind)) + " edge " +
                             ac.endpoint_label(rel.src) + " -> " + ac.endpoint_label(rel.dst) +
                             ": undeclared";
        if (!rel.src.is_resolved()) issue.labels.push_back(rel.src.unresolved_label());
        if (!rel.dst.is_resolved()) issue.labels.push_back(rel.dst.unresolved_label());
        for (const std::string& label : issue.labels) detail += " " + label;
        issue.detail = detail;
        issues.push_back(std::move(issue));
    }

    // Reachability from the root candidates over both baseline relationship
    // kinds, following edge direction.
    AdjacencyList adj(ac.size());
    for (const Relationship& rel : ac.relationships()) {
        if (rel.kind != RelationKind::SupportedBy && rel.kind != RelationKind::InContextOf) {
            continue;
        }
        if (rel.src.is_resolved() && rel.dst.is_resolved()) {
            adj[rel.src.handle().index].push_back(rel.dst.handle().index);
        }
    }
    std::vector<bool> visited(ac.size(), false);
    std::vector<std::uint32_t> worklist;
    for (ElementHandle root : ac.roots()) {
        if (!visited[root.index]) {
            visited[root.index] = true;
            worklist.push_back(root.index);
        }
    }
    while (!worklist.empty()) {
        const std::uint32_t v = worklist.back();
        worklist.pop_back();
        for (std::uint32_t w : adj[v]) {
            if (!visited[w]) {
                visited[w] = true;
                worklist.push_back(w);
            }
        }
    }
    for (const GsnElement& el : ac.elements()) {
        if (!visited[el.handle.index]) {
            issues.push_back({IssueKind::UnreachableElement,
                              {el.label},
                              std::string(kind_name(el.kind)) + " '" + el.label +
                                  "' is not reachable from any root"});
        }
    }
    return issues;
}

std::vector<StructuralIssue> check_naming(const AssuranceCase& ac) {
    std::vector<StructuralIssue> issues;
    for (const GsnElement& el : ac.elements()) {
        if (kind_from_label(el.label) == el.kind) continue;
        issues.push_back({IssueKind::NamingViolation,
                          {el.label},
                          std::string(kind_name(el.kind)) + " '" + el.label +
                              "' should carry the prefix '" + std::string(kind_prefix(el.kind)) +
                              "'"});
    }
    return issues;
}

StructuralReport analyze(const AssuranceCase& ac) {
    StructuralReport report;
    report.case_name = ac.name();
    auto absorb = [&report](std::vector<StructuralIssue> issues) {
        for (StructuralIssue& issue : issues) report.issues.push_back(std::move(issue));
    };
    absorb(check_duplicates(ac));
    absorb(check_cycles(ac));
    absorb(check_support(ac));
    absorb(check_references(ac));
    absorb(check_naming(ac));

    const std::vector<ElementHandle> roots = ac.roots();
    if (roots.size() > 1) {
        StructuralIssue issue;
        issue.kind = IssueKind::MultipleRoots;
        for (ElementHandle h : roots) issue.labels.push_back(ac.element(h).label);
        issue.detail = std::to_string(roots.size()) + " root candidates";
        report.issues.push_back(std::move(issue));
    }

    std::stable_sort(report.issues.begin(), report.issues.end(),
                     [](const StructuralIssue& a, const StructuralIssue& b) {
                         return std::tie(a.kind, a.labels.front(), a.detail) <
                                std::tie(b.kind, b.labels.front(), b.detail);
                     });
    return report;
}

std::string_view issue_kind_name(IssueKind kind) {
    switch (kind) {
        case IssueKind::DuplicateLabel: return "duplicate-label";
        case IssueKind::Cycle: return "cycle";
        case IssueKind::UnsupportedGoal: return "unsupported-goal";
        case IssueKind::UndevelopedElement: return "undeveloped-element";
        case IssueKind::DanglingReference: return "dangling-reference";
        case IssueKind::NamingViolation: return "naming-violation";
        case IssueKind::UnreachableElement: return "unreachable-element";
        case IssueKind::MultipleRoots: return "multiple-roots";
    }
    return "duplicate-label";
}

std::string report_to_json(const StructuralReport& report) {
    nlohmann::json issues = nlohmann::json::array();
    for (const StructuralIssue& issue : report.issues) {
        issues.push_back({{"kind", std::string(issue_kind_name(issue.kind))},
                          {"labels", issue.labels},
                          {"detail", issue.detail}});
    }
    nlohmann::json doc{{"case_name", report.case_name}, {"issues", issues}};
    return doc.dump(2);
}

std::string report_to_text(const StructuralReport& report) {
    std::string out = "structural report for '" + report.case_name + "': " +
                      std::to_string(report.issues.size()) + " issue(s)\n";
    for (const StructuralIssue& issue : report.issues) {
        out += "  [";
        out += issue_kind_name(issue.kind);
        out += "] ";
        out += issue.detail;
        out += "\n";
    }
    return out;
}

}  // namespace gsnrev
