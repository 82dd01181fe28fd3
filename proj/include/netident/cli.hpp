#pragma once

#include <cstdint>
#include <string>

namespace netident::cli {

// Exit codes. Analysis outcomes map onto 0/10/20; failure families get
// distinct codes so scripts can react without parsing messages.
inline constexpr int kOk = 0;
inline constexpr int kUnidentifiable = 10;
inline constexpr int kInconclusive = 20;
inline constexpr int kParseError = 2;
inline constexpr int kCycle = 3;
inline constexpr int kClassViolation = 4;
inline constexpr int kInvariant = 5;
inline constexpr int kRefused = 6;
inline constexpr int kOverflow = 7;
inline constexpr int kVerificationFailed = 8;

struct CmdResult {
  int exit_code = kOk;
  std::string out;  // stdout payload
  std::string err;  // diagnostics
};

struct CommonOptions {
  std::uint64_t seed = 42;
  int draws = 10;
  int trials = 1000;
  double tol = 1e-9;
  int horizon = 20;
  std::size_t limit = 64;
  bool json = false;
  double gamma = 0.0;      // 0 = kind-specific default
  std::string node;        // node name for witness kinds that need one
  std::string kind;        // witness kind name
};

CmdResult cmd_validate(const std::string& path);
CmdResult cmd_analyze(const std::string& path, const CommonOptions& options);
CmdResult cmd_patterns(const std::string& path, const CommonOptions& options);
CmdResult cmd_witness(const std::string& path, const CommonOptions& options);
CmdResult cmd_simulate(const std::string& path, const CommonOptions& options);
CmdResult cmd_export(const std::string& path);

}  // namespace netident::cli
