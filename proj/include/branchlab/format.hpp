#pragma once

#include <string>

namespace branchlab {

// Shortest decimal text that parses back to the same double. Locale
// independent; the only float formatter used in any output path.
[[nodiscard]] std::string format_double(double value);

// Inverse of format_double for parser use; returns false on bad input.
[[nodiscard]] bool parse_double(const std::string& text, double& out);

}  // namespace branchlab
