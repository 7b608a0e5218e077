#include "qmetro/csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "qmetro/errors.hpp"

namespace qmetro {

std::string csv_double(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (std::isnan(x)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string csv_bool(bool b) { return b ? "true" : "false"; }

double csv_parse_double(const std::string& cell) {
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (end == cell.c_str())
        throw invalid_argument_error("csv cell is not a number: '" + cell + "'");
    return v;
}

std::string csv_join(const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ',';
        out += cells[i];
    }
    return out;
}

} // namespace qmetro
