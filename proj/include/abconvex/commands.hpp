#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "abconvex/instance_io.hpp"

namespace abconvex {

inline constexpr std::array<std::string_view, 11> kCommands = {
    "transform", "convexify", "subdiff", "check-monotone", "rockafellar", "alpha",
    "gamma",     "member",    "lip-extend", "fitzpatrick", "verify"};

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitInputError = 2;

struct CommandOptions {
  std::string command;
  std::filesystem::path instance;
  std::optional<std::string> function;
  std::optional<std::string> mapping;
  std::optional<std::string> subset;
  std::optional<std::string> site_function;
  bool only_min = false;
  bool only_max = false;
  double epsilon = kDefaultEpsilon;
  std::uint64_t seed = 0;
};

struct CommandResult {
  std::string json;
  int exit_code = kExitSuccess;
};

/// Runs one command against a parsed document. Errors are rendered into the
/// JSON result; the exit code is 1 for domain errors, 2 for input errors.
/// Negative verdicts of predicate commands are results, not errors; only
/// `verify` exits 1 when a check fails.
CommandResult run_command(const CommandOptions& options, const InstanceDocument& doc);

/// Loads options.instance first.
CommandResult run_command(const CommandOptions& options);

}  // namespace abconvex
