#pragma once

namespace qst {

inline constexpr char kVersion[] = "0.1.0";

}  // namespace qst
