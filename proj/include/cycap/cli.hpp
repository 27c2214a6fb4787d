#pragma once

#include <string>
#include <vector>

namespace cycap {

// Exit codes: 0 success, 2 validation, 3 regime violation, 4 theorem-check
// failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitRegime = 3;
inline constexpr int kExitTheorem = 4;

int run_cli(std::vector<std::string> args);  // args without argv[0]
int run_cli(int argc, const char* const* argv);

}  // namespace cycap
