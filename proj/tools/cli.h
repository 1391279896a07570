// melograph command-line front end.
//
//   melograph inspect FILE
//   melograph graph FILE [--stats] [--export dot|graphml|json] [--out PATH]
//   melograph analyze FILE --which bigrams,bands,vowels,transitions|all --out DIR
//   melograph corpus DIR [--subset K --seed S | --ids A,B] --out DIR
//
// Exit codes: 0 success, 1 analysis error, 2 input/parse error, 64 usage.

#ifndef MELOGRAPH_TOOLS_CLI_H_
#define MELOGRAPH_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace melograph::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitAnalysis = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitUsage = 64;

/// Runs one invocation; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace melograph::cli

#endif  // MELOGRAPH_TOOLS_CLI_H_
