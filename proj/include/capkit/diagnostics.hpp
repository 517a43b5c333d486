#pragma once

#include <optional>
#include <string>
#include <vector>

namespace capkit {

enum class Severity { warning, error };

/// A located problem found while reading or validating input.
/// `path` is a JSON-pointer style field path (e.g. `/scenario/maps/v/table`).
struct Diagnostic {
    Severity severity = Severity::error;
    std::string path;
    std::string message;
    std::optional<int> line;
    std::optional<int> column;

    std::string to_string() const;
};

using Diagnostics = std::vector<Diagnostic>;

bool has_errors(const Diagnostics& diags);

} // namespace capkit
