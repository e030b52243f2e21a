#pragma once

#include <CLI11.hpp>

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kpo::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitData = 3;

/// A configuration that parses but cannot be run.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Command {
  CLI::App* app = nullptr;
  std::function<void()> run;
};

/// Adds every subcommand to `app`. The returned callbacks read the option
/// storage captured at registration, so `app` must be parsed first.
std::vector<Command> register_commands(CLI::App& app);

}  // namespace kpo::cli
