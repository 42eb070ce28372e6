#pragma once

#include <cstdint>
#include <exception>
#include <iosfwd>
#include <optional>
#include <string>

namespace mcpoly::cli {

enum ExitCode : int {
  kOk = 0,
  kParse = 2,
  kValidation = 3,
  kBudget = 4,
  kInternal = 5,
};

int exit_code_for(const std::exception& e);
/// "parse", "validation", "budget" or "internal".
std::string error_kind(int code);

struct SolveConfig {
  std::string instance;
  std::string method = "iterate";
  std::string box;
  std::string x0;
  double eps = 1e-9;
  std::size_t budget = 0;
  std::string trace;
  std::string output;
};

struct AifvSolveConfig {
  std::string probs;
  std::size_t m = 2;
  std::size_t height_cap = 0;
  std::string method = "iterate";
  std::string code_out;
  std::string output;
};

struct CodecConfig {
  std::string code;
  std::optional<std::size_t> count;
  bool strict = false;
};

struct OracleConfig {
  std::string instance;
  std::string x;
  std::optional<std::string> y;
  std::string box;
  std::string y_floor = "0";
};

struct EnvelopeDumpConfig {
  std::string instance;
  std::string from = "0";
  std::string to = "1";
  std::size_t steps = 100;
};

struct GenConfig {
  std::string kind = "families";
  std::uint64_t seed = 1;
  std::size_t m = 2;
  std::size_t states = 3;
  std::size_t n = 4;
  unsigned b = 4;
};

int cmd_solve(const SolveConfig& cfg, std::ostream& out);
int cmd_aifv_solve(const AifvSolveConfig& cfg, std::ostream& out);
int cmd_aifv_encode(const CodecConfig& cfg, std::istream& in, std::ostream& out);
int cmd_aifv_decode(const CodecConfig& cfg, std::istream& in, std::ostream& out);
int cmd_oracle(const OracleConfig& cfg, std::ostream& out);
int cmd_envelope_dump(const EnvelopeDumpConfig& cfg, std::ostream& out);
int cmd_gen(const GenConfig& cfg, std::ostream& out, std::ostream& log);

}  // namespace mcpoly::cli
