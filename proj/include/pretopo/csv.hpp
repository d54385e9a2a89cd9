#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace pretopo::csv {

// Minimal comma-separated reader: no quoting, fields are trimmed of
// surrounding blanks and a trailing '\r'. Blank lines are skipped.
class Reader {
public:
    explicit Reader(std::istream& in) : in_(in) {}

    // Next non-blank record; false at end of input. Views stay valid until
    // the following call.
    bool next(std::vector<std::string_view>& fields);
    std::size_t line() const noexcept { return line_; }

private:
    std::istream& in_;
    std::string buffer_;
    std::size_t line_ = 0;
};

void split(std::string_view line, std::vector<std::string_view>& fields);

double parse_double(std::string_view field, std::size_t line, std::string_view what);
long long parse_int(std::string_view field, std::size_t line, std::string_view what);

// Shortest representation that round-trips.
std::string format_double(double v);

} // namespace pretopo::csv
