#ifndef MODWAVE_TOOLS_COMMANDS_H_
#define MODWAVE_TOOLS_COMMANDS_H_

#include <ostream>

namespace modwave::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitExternal = 3;

// Entry point of `modwave {validate|eval|compare|generate|cost}`. Normal
// output goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace modwave::cli

#endif  // MODWAVE_TOOLS_COMMANDS_H_
