#ifndef REGCERT_CLI_HPP
#define REGCERT_CLI_HPP

#include <string>
#include <vector>

#include <json.hpp>

namespace regcert::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

struct Result {
    int exit_code = kExitPass;
    std::string out;
    std::string err;
};

// Runs one invocation; args exclude the program name. Never writes to the real
// stdout/stderr, so it can be driven from tests.
Result run(const std::vector<std::string>& args);

// "path = value" lines, one per JSON leaf, values printed exactly as in the JSON dump.
std::string flatten(const nlohmann::json& j);

} // namespace regcert::cli

#endif
