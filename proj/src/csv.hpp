#ifndef CBN_SRC_CSV_HPP
#define CBN_SRC_CSV_HPP

#include <string>
#include <string_view>
#include <vector>

namespace cbn::detail {

inline std::string_view strip_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r')
        line.remove_suffix(1);
    return line;
}

// No quoting: labels are opaque and may not contain commas.
inline std::vector<std::string> split_csv(std::string_view line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        auto pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            cells.emplace_back(line.substr(start));
            break;
        }
        cells.emplace_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return cells;
}

inline std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos)
        return {};
    auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

} // namespace cbn::detail

#endif // CBN_SRC_CSV_HPP
