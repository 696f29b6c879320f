#include "drybulknet/csv.hpp"

#include <istream>

namespace drybulk::csv {

bool Reader::next(std::vector<std::string>& fields) {
    fields.clear();
    int c = in_.get();
    if (c == std::istream::traits_type::eof()) return false;

    std::string field;
    bool quoted = false;
    for (;;) {
        if (c == std::istream::traits_type::eof()) {
            fields.push_back(std::move(field));
            return true;
        }
        char ch = static_cast<char>(c);
        if (quoted) {
            if (ch == '"') {
                if (in_.peek() == '"') {
                    in_.get();
                    field.push_back('"');
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(ch);
            }
        } else if (ch == '"' && field.empty()) {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else if (ch == '\n') {
            fields.push_back(std::move(field));
            return true;
        } else if (ch == '\r') {
            if (in_.peek() == '\n') in_.get();
            fields.push_back(std::move(field));
            return true;
        } else {
            field.push_back(ch);
        }
        c = in_.get();
    }
}

std::string escape(const std::string& field) {
    bool needs_quotes = field.find_first_of(",\"\r\n") != std::string::npos;
    if (!needs_quotes) return field;
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += "\"\"";
        else out.push_back(ch);
    }
    out.push_back('"');
    return out;
}

std::string join(const std::vector<std::string>& fields) {
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) line.push_back(',');
        line += escape(fields[i]);
    }
    return line;
}

}  // namespace drybulk::csv
