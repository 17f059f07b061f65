// Typed in-memory model of a GSN assurance case, including the dialectic
// extension. The model deliberately admits structurally defective cases
// (duplicate labels, dangling references, isolated elements) so that the
// analyzer can flag them instead of the constructor rejecting them.

#ifndef GSNREV_CASE_HPP
#define GSNREV_CASE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace gsnrev {

enum class ElementKind { Goal, Strategy, Solution, Context, Assumption, Justification };

enum class RelationKind { SupportedBy, InContextOf, Challenges, Defeated };

// Classifies the source of a Challenges relationship when annotated.
enum class DefeaterKind { Rebuttal, Undercutting };

// Opaque per-case element identity. Labels are NOT unique; handles are.
struct ElementHandle {
    std::uint32_t index = 0;
    friend bool operator==(ElementHandle, ElementHandle) = default;
    friend auto operator<=>(ElementHandle, ElementHandle) = default;
};

struct GsnElement {
    ElementHandle handle;
    std::string label;
    ElementKind kind = ElementKind::Goal;
    std::string text;
    bool undeveloped = false;
    std::optional<DefeaterKind> defeater;  // annotation only, not expressible in prose
};

// A relationship endpoint is either a resolved element handle or a label that
// never resolved during parsing. Unresolved endpoints are diagnostics, not
// construction errors.
class Endpoint {
public:
    static Endpoint resolved(ElementHandle h) { return Endpoint(h); }
    static Endpoint unresolved(std::string label) { return Endpoint(std::move(label)); }

    bool is_resolved() const { return std::holds_alternative<ElementHandle>(value_); }
    ElementHandle handle() const { return std::get<ElementHandle>(value_); }
    const std::string& unresolved_label() const { return std::get<std::string>(value_); }

    friend bool operator==(const Endpoint&, const Endpoint&) = default;

private:
    explicit Endpoint(ElementHandle h) : value_(h) {}
    explicit Endpoint(std::string label) : value_(std::move(label)) {}
    std::variant<ElementHandle, std::string> value_;
};

struct Relationship {
    Endpoint src;
    Endpoint dst;
    RelationKind kind = RelationKind::SupportedBy;
};

// Labeled argument graph. Element and relationship insertion order is
// preserved; after construction the case is immutable and safe to share
// read-only across threads.
class AssuranceCase {
public:
    AssuranceCase() = default;
    explicit AssuranceCase(std::string name) : name_(std::move(name)) {}

    const std::string& name() const { return name_; }
    void set_name(std::string name) { name_ = std::move(name); }

    // Appends an element. Duplicate labels are accepted silently.
    // Throws std::invalid_argument on an empty label or on undeveloped=true
    // for a kind other than Goal/Strategy.
    ElementHandle add_element(std::string_view label, ElementKind kind, std::string_view text,
                              bool undeveloped = false);

    void add_relationship(Endpoint src, Endpoint dst, RelationKind kind);

    // Marks an existing element undeveloped. Same kind restriction as
    // add_element.
    void set_undeveloped(ElementHandle h, bool undeveloped);

    void set_defeater_kind(ElementHandle h, DefeaterKind kind);

    std::span<const GsnElement> elements() const { return elements_; }
    std::span<const Relationship> relationships() const { return relationships_; }

    const GsnElement& element(ElementHandle h) const { return elements_.at(h.index); }
    std::size_t size() const { return elements_.size(); }

    // Most recently declared element carrying this label, if any.
    std::optional<ElementHandle> find_last(std::string_view label) const;
    // First element with this label that is not yet undeveloped, if any.
    std::optional<ElementHandle> find_first_developed(std::string_view label) const;

    // Label to show for an endpoint: the element's label when resolved, the
    // raw reference otherwise.
    const std::string& endpoint_label(const Endpoint& e) const;

    // Elements with no incoming SupportedBy edge and at least one outgoing
    // SupportedBy edge, plus Goals touching no SupportedBy edge at all.
    // Depends only on the edge set; result order is element insertion order.
    std::vector<ElementHandle> roots() const;

    // (element_count, relationship_count)
    std::pair<std::size_t, std::size_t> counts() const {
        return {elements_.size(), relationships_.size()};
    }

private:
    std::string name_;
    std::vector<GsnElement> elements_;
    std::vector<Relationship> relationships_;
};

// ── Kind/label helpers ──────────────────────────────────────────────────────

// Canonical label prefix for a kind (G, S, Sn, C, A, J).
std::string_view kind_prefix(ElementKind kind);

// Kind inferred from a label prefix, longest prefix wins ("Sn" beats "S").
// Empty optional for labels with no recognized prefix.
std::optional<ElementKind> kind_from_label(std::string_view label);

std::string_view kind_name(ElementKind kind);
std::string_view relation_name(RelationKind kind);

}  // namespace gsnrev

#endif  // GSNREV_CASE_HPP
