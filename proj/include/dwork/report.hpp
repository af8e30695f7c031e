#ifndef DWORK_REPORT_HPP
#define DWORK_REPORT_HPP

#include <string>
#include <vector>

#include "json.hpp"

#include "dwork/config.hpp"

namespace dwork {

inline constexpr const char* kVersion = "1.0.0";

struct CommandResult {
    nlohmann::ordered_json body;  // manifest first, then the command payload
    bool ok = true;
    std::string first_failure;    // name of the first failing certificate
};

const std::vector<std::string>& command_names();
// Runs count, fiber, lunit, formula, sympower or verify on one config.
CommandResult run_command(const std::string& command, const FamilyConfig& cfg);

}  // namespace dwork

#endif
