#include "branchlab/format.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

namespace branchlab {

std::string format_double(double value) {
  if (value == 0.0) {
    // Canonicalize the sign of zero.
    return "0";
  }
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

bool parse_double(const std::string& text, double& out) {
  const char* first = text.data();
  const char* last = first + text.size();
  const auto result = std::from_chars(first, last, out);
  return result.ec == std::errc() && result.ptr == last && std::isfinite(out);
}

}  // namespace branchlab
