#pragma once

#include <string>
#include <string_view>

namespace dsdist {

/// printf "%.17g": enough digits to round-trip any double.
std::string format_double(double v);

/// Quotes a CSV cell when it holds a comma, quote or line break.
std::string csv_field(std::string_view s);

}  // namespace dsdist
