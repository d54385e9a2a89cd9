#include "pretopo/csv.hpp"

#include "pretopo/errors.hpp"

#include <charconv>
#include <istream>

namespace pretopo::csv {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

} // namespace

void split(std::string_view line, std::vector<std::string_view>& fields)
{
    fields.clear();
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(trim(line.substr(start)));
            return;
        }
        fields.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
}

bool Reader::next(std::vector<std::string_view>& fields)
{
    while (std::getline(in_, buffer_)) {
        ++line_;
        if (trim(buffer_).empty())
            continue;
        split(buffer_, fields);
        return true;
    }
    return false;
}

double parse_double(std::string_view field, std::size_t line, std::string_view what)
{
    double v = 0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    if (!field.empty() && *first == '+')
        ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || field.empty())
        throw ParseError("invalid number '" + std::string(field) + "' in " + std::string(what), line);
    return v;
}

long long parse_int(std::string_view field, std::size_t line, std::string_view what)
{
    long long v = 0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || field.empty())
        throw ParseError("invalid integer '" + std::string(field) + "' in " + std::string(what), line);
    return v;
}

std::string format_double(double v)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

} // namespace pretopo::csv
