// Bidirectional conversion between the structured-prose text format (.gsn)
// and AssuranceCase.
//
// One construct per line:
//   element     := LABEL ":" SP TEXT
//   supported   := LABEL SP "is supported by" SP LABEL ("," SP LABEL)*
//   context     := LABEL SP "is in the context of" SP LABEL ("," SP LABEL)*
//   undeveloped := LABEL SP "is undeveloped"
//   challenge   := LABEL SP "challenges" SP LABEL
//   defeated    := LABEL SP "is defeated by" SP LABEL
//   LABEL       := prefix in {G,S,Sn,C,A,J} followed by [A-Za-z0-9._-]*
//
// Lines starting with '#' and blank lines are ignored. A trailing backslash
// continues a statement onto the next line (the break is kept in the text).
// Element kind is inferred from the label prefix, longest prefix first; an
// unknown prefix parses as a Goal plus a Warning. Relationship endpoints bind
// to the most recent declaration of the referenced label; labels not yet
// declared stay unresolved and are warned about. Parsing never aborts on
// defective content.

#ifndef GSNREV_PROSE_HPP
#define GSNREV_PROSE_HPP

#include <string>
#include <string_view>
#include <vector>

#include "gsnrev/case.hpp"

namespace gsnrev {

enum class Severity { Warning, Error };

struct ParseDiagnostic {
    int line_no = 1;  // 1-based
    Severity severity = Severity::Warning;
    std::string message;
};

struct ParseResult {
    AssuranceCase assurance_case;
    std::vector<ParseDiagnostic> diagnostics;
};

ParseResult parse_prose(std::string_view text, std::string_view case_name = {});

// Emits elements in insertion order (each immediately followed by its
// undeveloped decorator, so the decorator binds to the right instance even
// under duplicate labels), then relationships in insertion order. Output is
// byte-deterministic.
std::string serialize_prose(const AssuranceCase& ac);

bool is_valid_label(std::string_view token);

}  // namespace gsnrev

#endif  // GSNREV_PROSE_HPP
