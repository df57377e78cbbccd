#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace gausvol {

// Shortest decimal that round-trips to the same double.
std::string format_double(double value);

// Fixed 17-significant-digit form ("%.17g").
std::string format_double17(double value);

// Strict parse of a full token; throws InvalidArgument naming `what`.
double parse_double(std::string_view text, std::string_view what);
long long parse_int(std::string_view text, std::string_view what);
std::uint64_t parse_uint64(std::string_view text, std::string_view what);

std::string trim(std::string_view text);
std::string to_lower(std::string_view text);

}  // namespace gausvol
