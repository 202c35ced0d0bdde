#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace srlnc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;
inline constexpr int kExitDegenerate = 4;

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace srlnc::cli
