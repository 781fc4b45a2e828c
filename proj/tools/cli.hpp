#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace strongrate_cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Command {
  std::string verb;
  nlohmann::json config = nlohmann::json::object();  // resolved, flat
  std::string out;
  std::string format = "both";
  bool help = false;
  std::string help_text;
};

std::vector<int> parse_int_list(const std::string& text);
std::vector<double> parse_real_list(const std::string& text);

// Flags override keys read from --config. Throws UsageError for unknown
// flags, malformed lists and values the library rejects.
Command parse_args(int argc, const char* const* argv);

// Runs the command and returns the process exit status.
int run(const Command& cmd);

// parse_args plus run with usage errors reported on stderr.
int main_entry(int argc, const char* const* argv);

}  // namespace strongrate_cli
