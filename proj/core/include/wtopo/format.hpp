#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace wtopo {

/// Shortest round-trip decimal form; "inf" / "-inf" / "nan" for non-finite values.
std::string format_real(double x);

/// Accepts anything format_real produces plus ordinary decimal/scientific literals.
std::optional<double> parse_real(std::string_view text);

} // namespace wtopo
