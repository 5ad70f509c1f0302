#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace corridor {

// Exit codes of the command-line driver.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitNumerical = 2;
inline constexpr int kExitCheckFailed = 3;

int cli_main(int argc, char** argv);
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// One value per line, or the named column of a CSV with a header row.
std::vector<double> read_column(const std::string& path, const std::string& column);

}  // namespace corridor
