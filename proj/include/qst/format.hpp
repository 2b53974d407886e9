#pragma once

#include <string>
#include <vector>

namespace qst {

// Result formatting: 12 significant digits, for cross-language comparability.
std::string g12(double value);

// Shortest representation that parses back to the identical double. Used for
// config echoes and pattern files so round-trips are bit-exact.
std::string round_trip(double value);

std::string join_g12(const std::vector<double>& values, char sep = ',');
std::string join_round_trip(const std::vector<double>& values, char sep = ',');

// FNV-1a, for config provenance hashes.
std::uint64_t fnv1a64(std::string_view text) noexcept;

}  // namespace qst
