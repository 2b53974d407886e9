#include "qst/format.hpp"

#include <charconv>
#include <cstdint>
#include <cstdio>

namespace qst {

std::string g12(double value) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string round_trip(double value) {
  char buf[48];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  (void)ec;  // 48 chars always suffice for a double
  return std::string(buf, end);
}

namespace {

template <typename Fmt>
std::string join_with(const std::vector<double>& values, char sep, Fmt fmt) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out.push_back(sep);
    out += fmt(values[i]);
  }
  return out;
}

}  // namespace

std::string join_g12(const std::vector<double>& values, char sep) {
  return join_with(values, sep, g12);
}

std::string join_round_trip(const std::vector<double>& values, char sep) {
  return join_with(values, sep, round_trip);
}

std::uint64_t fnv1a64(std::string_view text) noexcept {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  return hash;
}

}  // namespace qst
