#pragma once

#include <string>
#include <vector>

namespace dtmpade {

/// Locale-independent %g-style rendering with `digits` significant digits.
std::string format_number(double value, int digits);

/// Column-aligned plain-text table.
std::string render_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows);

/// Comma-separated rows with a header line, LF line endings.
std::string render_csv(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows);

}  // namespace dtmpade
