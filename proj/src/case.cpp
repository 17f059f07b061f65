#include "gsnrev/case.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace gsnrev {

namespace {

bool may_be_undeveloped(ElementKind kind) {
    return kind == ElementKind::Goal || kind == ElementKind::Strategy;
}

}  // namespace

ElementHandle AssuranceCase::add_element(std::string_view label, ElementKind kind,
                                         std::string_view text, bool undeveloped) {
    if (label.empty()) {
        throw std::invalid_argument("element label must be non-empty");
    }
    if (undeveloped && !may_be_undeveloped(kind)) {
        throw std::invalid_argument("undeveloped decorator is only valid on a Goal or Strategy");
    }
    ElementHandle handle{static_cast<std::uint32_t>(elements_.size())};
    elements_.push_back(GsnElement{handle, std::string(label), kind, std::string(text),
                                   undeveloped, std::nullopt});
    return handle;
}

void AssuranceCase::add_relationship(Endpoint src, Endpoint dst, RelationKind kind) {
    relationships_.push_back(Relationship{std::move(src), std::move(dst), kind});
}

void AssuranceCase::set_undeveloped(ElementHandle h, bool undeveloped) {
    GsnElement& el = elements_.at(h.index);
    if (undeveloped && !may_be_undeveloped(el.kind)) {
        throw std::invalid_argument("undeveloped decorator is only valid on a Goal or Strategy");
    }
    el.undeveloped = undeveloped;
}

void AssuranceCase::set_defeater_kind(ElementHandle h, DefeaterKind kind) {
    elements_.at(h.index).defeater = kind;
}

std::optional<ElementHandle> AssuranceCase::find_last(std::string_view label) const {
    for (auto it = elements_.rbegin(); it != elements_.rend(); ++it) {
        if (it->label == label) return it->handle;
    }
    return std::nullopt;
}

std::optional<ElementHandle> AssuranceCase::find_first_developed(std::string_view label) const {
    for (const GsnElement& el : elements_) {
        if (el.label == label && !el.undeveloped) return el.handle;
    }
    return std::nullopt;
}

const std::string& AssuranceCase::endpoint_label(const Endpoint& e) const {
    if (e.is_resolved()) return element(e.handle()).label;
    return e.unresolved_label();
}

std::vector<ElementHandle> AssuranceCase::roots() const {
    std::vector<bool> has_incoming(elements_.size(), false);
    std::vector<bool> has_outgoing(elements_.size(), false);
    for (const Relationship& rel : relationships_) {
        if (rel.kind != RelationKind::SupportedBy) continue;
        if (rel.src.is_resolved()) has_outgoing[rel.src.handle().index] = true;
        if (rel.dst.is_resolved()) has_incoming[rel.dst.handle().index] = true;
    }
    std::vector<ElementHandle> result;
    for (const GsnElement& el : elements_) {
        const bool in = has_incoming[el.handle.index];
        const bool out = has_outgoing[el.handle.index];
        if (!in && out) {
            result.push_back(el.handle);
        } else if (!in && !out && el.kind == ElementKind::Goal) {
            result.push_back(el.handle);  // isolated goal
        }
    }
    return result;
}

std::string_view kind_prefix(ElementKind kind) {
    switch (kind) {
        case ElementKind::Goal: return "G";
        case ElementKind::Strategy: return "S";
        case ElementKind::Solution: return "Sn";
        case ElementKind::Context: return "C";
        case ElementKind::Assumption: return "A";
        case ElementKind::Justification: return "J";
    }
    return "G";
}

std::optional<ElementKind> kind_from_label(std::string_view label) {
    // Longest prefix first so "Sn" beats "S".
    if (label.starts_with("Sn")) return ElementKind::Solution;
    if (label.starts_with("G")) return ElementKind::Goal;
    if (label.starts_with("S")) return ElementKind::Strategy;
    if (label.starts_with("C")) return ElementKind::Context;
    if (label.starts_with("A")) return ElementKind::Assumption;
    if (label.starts_with("J")) return ElementKind::Justification;
    return std::nullopt;
}

std::string_view kind_name(ElementKind kind) {
    switch (kind) {
        case ElementKind::Goal: return "Goal";
        case ElementKind::Strategy: return "Strategy";
        case ElementKind::Solution: return "Solution";
        case ElementKind::Context: return "Context";
        case ElementKind::Assumption: return "Assumption";
        case ElementKind::Justification: return "Justification";
    }
    return "Goal";
}

std::string_view relation_name(RelationKind kind) {
    switch (kind) {
        case RelationKind::SupportedBy: return "SupportedBy";
        case RelationKind::InContextOf: return "InContextOf";
        case RelationKind::Challenges: return "Challenges";
        case RelationKind::Defeated: return "Defeated";
    }
    return "SupportedBy";
}

}  // namespace gsnrev
