#pragma once

#include <string>
#include <vector>

namespace qmetro {

/// CSV cell formatting: 17 significant digits (exact double round-trip),
/// infinities as literal "inf"/"-inf", booleans as "true"/"false".
std::string csv_double(double x);
std::string csv_bool(bool b);

/// Inverse of csv_double (strtod handles "inf").
double csv_parse_double(const std::string& cell);

std::string csv_join(const std::vector<std::string>& cells);

} // namespace qmetro
