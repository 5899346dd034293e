#pragma once

#include <stdexcept>
#include <string>

#include "slk/matrix.hpp"

namespace slk {

// Malformed input (as opposed to a domain violation).
struct ParseFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MatrixDocument {
    IntMatrix gram;
    std::string name;
    std::string source;
};

// Text format: rows separated by ';' or newlines, entries by whitespace,
// e.g. "1 2 2 4; 0 1 0 2; 0 0 1 2; 0 0 0 1".
// JSON alternative: {"gram": [[...]]} with entries as numbers or decimal
// strings, plus optional "name"/"source" metadata.
MatrixDocument parse_matrix_document(const std::string& text);

Element parse_element(const std::string& text);  // whitespace/comma separated

std::string format_matrix_text(const IntMatrix& m);

}  // namespace slk
