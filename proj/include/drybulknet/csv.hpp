#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace drybulk::csv {

// RFC-4180 style reader: comma separated, double-quote quoting with ""
// escapes, tolerates CRLF and quoted embedded newlines.
class Reader {
public:
    explicit Reader(std::istream& in) : in_(in) {}

    // Reads the next row into `fields`. Returns false at end of input.
    bool next(std::vector<std::string>& fields);

private:
    std::istream& in_;
};

std::string escape(const std::string& field);

// Joins fields into one escaped CSV line (no trailing newline).
std::string join(const std::vector<std::string>& fields);

}  // namespace drybulk::csv
