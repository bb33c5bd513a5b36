#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

// Number formatting, parsing and hashing shared by the file formats.
namespace proftune::text {

/// Shortest decimal string that parses back to the same double.
std::string shortest(double v);

/// printf("%.17g") rendering.
std::string digits17(double v);

/// Rounds to `digits` significant decimal digits through a decimal string.
double round_significant(double v, int digits);

/// Strict full-string parse; throws std::invalid_argument on garbage.
double parse_double(std::string_view s);
std::int64_t parse_int(std::string_view s);
std::uint64_t parse_uint(std::string_view s);
std::uint64_t parse_hex64(std::string_view s);

std::string hex64(std::uint64_t v);

std::vector<std::string_view> split(std::string_view s, char sep);
std::string_view trim(std::string_view s);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ULL);

/// splitmix64 finalizer, used to combine hashes into RNG seeds.
std::uint64_t mix64(std::uint64_t x);

}  // namespace proftune::text
