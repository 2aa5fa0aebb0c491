#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tmdyn/field.hpp"

namespace tmdyn::cli {

enum ExitCode : int { kOk = 0, kRuntimeError = 1, kInputError = 2 };

/// Bad user input: unreadable file, malformed flag combination.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Representation { Tm, Gshift, NdaPoint, NdaMacro, Field };

Representation parse_representation(const std::string& text);
std::string to_string(Representation r);

struct RunManifest {
  std::string machine_path;
  std::string configuration;
  Representation representation = Representation::Tm;
  std::size_t steps = 10;
  std::optional<std::size_t> grid_n;  // field only
  ArithmeticMode mode = ArithmeticMode::Exact;
  std::optional<std::size_t> pad;     // blanks added on each side; default steps + 1
  std::string out_path;
  std::string snapshot_dir;           // field only, optional

  /// Throws InputError.
  void validate() const;
};

int cmd_compile(const std::string& machine_path, const std::string& out_path, const std::string& rules_path,
                std::ostream& out);
int cmd_run(const RunManifest& manifest, std::ostream& out);
int cmd_verify(const std::string& machine_path, const std::string& artifact_path, std::size_t trials,
               std::uint64_t seed, const std::string& out_path, std::ostream& out);
int cmd_render(const std::string& artifact_path, const std::string& trajectory_path, const std::string& out_path,
               std::ostream& out);

/// Parses argv, dispatches and maps exceptions to exit codes. Diagnostics go
/// to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tmdyn::cli
