#include "slk/io.hpp"

#include <sstream>

#include <json.hpp>

namespace slk {

namespace {

Integer parse_integer(const std::string& tok) {
    try {
        return Integer(tok);
    } catch (const std::invalid_argument&) {
        throw ParseFailure("bad integer: '" + tok + "'");
    }
}

Integer integer_from_json(const nlohmann::json& v) {
    if (v.is_string()) return parse_integer(v.get<std::string>());
    if (v.is_number_integer()) return Integer(std::to_string(v.get<long long>()));
    throw ParseFailure("matrix entries must be integers or decimal strings");
}

MatrixDocument parse_json_document(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseFailure("invalid JSON");
    if (!j.is_object() || !j.contains("gram") || !j["gram"].is_array())
        throw ParseFailure("expected a JSON object with a \"gram\" array");
    MatrixDocument doc;
    const auto& rows = j["gram"];
    int ncols = -1;
    std::vector<Element> parsed;
    for (const auto& row : rows) {
        if (!row.is_array()) throw ParseFailure("\"gram\" must be an array of arrays");
        Element r;
        for (const auto& v : row) r.push_back(integer_from_json(v));
        if (ncols < 0) ncols = int(r.size());
        else if (int(r.size()) != ncols) throw ParseFailure("ragged matrix rows");
        parsed.push_back(std::move(r));
    }
    if (parsed.empty()) throw ParseFailure("empty matrix");
    doc.gram = IntMatrix::from_rows(parsed);
    if (j.contains("name") && j["name"].is_string()) doc.name = j["name"];
    if (j.contains("source") && j["source"].is_string()) doc.source = j["source"];
    return doc;
}

}  // namespace

MatrixDocument parse_matrix_document(const std::string& text) {
    size_t first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw ParseFailure("empty matrix input");
    if (text[first] == '{') return parse_json_document(text);

    std::vector<Element> rows;
    std::string buf = text;
    for (char& ch : buf)
        if (ch == ';') ch = '\n';
    std::istringstream lines(buf);
    std::string line;
    while (std::getline(lines, line)) {
        std::istringstream in(line);
        Element row;
        std::string tok;
        while (in >> tok) row.push_back(parse_integer(tok));
        if (row.empty()) continue;
        if (!rows.empty() && rows.back().size() != row.size())
            throw ParseFailure("ragged matrix rows");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseFailure("empty matrix input");
    return {IntMatrix::from_rows(rows), {}, {}};
}

Element parse_element(const std::string& text) {
    std::string buf = text;
    for (char& ch : buf)
        if (ch == ',') ch = ' ';
    std::istringstream in(buf);
    Element v;
    std::string tok;
    while (in >> tok) v.push_back(parse_integer(tok));
    if (v.empty()) throw ParseFailure("empty vector input");
    return v;
}

std::string format_matrix_text(const IntMatrix& m) {
    std::string s;
    for (int i = 0; i < m.rows(); i++) {
        for (int j = 0; j < m.cols(); j++) {
            if (j) s += ' ';
            s += m.at(i, j).get_str();
        }
        if (i + 1 < m.rows()) s += '\n';
    }
    return s;
}

}  // namespace slk
