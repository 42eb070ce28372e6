#include <CLI11.hpp>
#include <iostream>

#include "commands.hpp"
#include "io.hpp"

using namespace mcpoly::cli;

int main(int argc, char** argv) {
  CLI::App app{"mcpoly: minimum-cost Markov chains and AIFV-m codes"};
  app.require_subcommand(1);
  bool json_errors = false;
  app.add_flag("--json-errors", json_errors, "Write errors to stderr as JSON");

  SolveConfig solve_cfg;
  auto* solve = app.add_subcommand("solve", "Solve a JSON chain instance");
  solve->add_option("instance", solve_cfg.instance, "Instance file")->required();
  solve->add_option("--method", solve_cfg.method, "brute, iterate or ellipsoid")
      ->capture_default_str();
  solve->add_option("--box", solve_cfg.box, "Ellipsoid box \"l1,r1;l2,r2;...\"");
  solve->add_option("--x0", solve_cfg.x0, "Iterate start point \"x1,x2,...\"");
  solve->add_option("--eps", solve_cfg.eps, "Ellipsoid tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  solve->add_option("--budget", solve_cfg.budget,
                    "Oracle-call / chain budget (0 = default)");
  solve->add_option("--trace", solve_cfg.trace, "Write the solver trace here");
  solve->add_option("-o,--output", solve_cfg.output, "Report file (default stdout)");

  auto* aifv = app.add_subcommand("aifv", "AIFV-m codes");
  aifv->require_subcommand(1);

  AifvSolveConfig aifv_cfg;
  auto* aifv_solve = aifv->add_subcommand("solve", "Build a minimum-cost code");
  aifv_solve->add_option("--probs", aifv_cfg.probs,
                         "Source file: one p/q per line, or JSON")
      ->required();
  aifv_solve->add_option("--m", aifv_cfg.m, "Number of code trees")
      ->check(CLI::Range(2, 8))
      ->capture_default_str();
  aifv_solve->add_option("--height-cap", aifv_cfg.height_cap,
                         "Tree height cap (0 = n + m)");
  aifv_solve->add_option("--method", aifv_cfg.method, "brute, iterate or ellipsoid")
      ->capture_default_str();
  aifv_solve->add_option("--code-out", aifv_cfg.code_out, "Write the code file here");
  aifv_solve->add_option("-o,--output", aifv_cfg.output, "Report file (default stdout)");

  CodecConfig codec_cfg;
  std::size_t count = 0;
  auto* encode = aifv->add_subcommand("encode", "Encode symbols from stdin");
  encode->add_option("--code", codec_cfg.code, "Code file")->required();
  encode->add_flag("--strict", codec_cfg.strict,
                   "Reject codes violating the normalization conditions");
  auto* decode = aifv->add_subcommand("decode", "Decode bits from stdin");
  decode->add_option("--code", codec_cfg.code, "Code file")->required();
  auto* count_opt = decode->add_option("--count", count,
                                       "Number of symbols to decode");
  decode->add_flag("--strict", codec_cfg.strict,
                   "Reject codes violating the normalization conditions");

  OracleConfig oracle_cfg;
  std::string oracle_y;
  auto* oracle = app.add_subcommand("oracle", "Envelope and separation at a point");
  oracle->add_option("instance", oracle_cfg.instance, "Instance file")->required();
  oracle->add_option("--x", oracle_cfg.x, "Point \"x1,x2,...\"")->required();
  auto* y_opt = oracle->add_option("--y", oracle_y, "Height to separate");
  oracle->add_option("--box", oracle_cfg.box, "Box \"l1,r1;...\" (default auto)");
  oracle->add_option("--y-floor", oracle_cfg.y_floor, "Lower bound on y")
      ->capture_default_str();

  EnvelopeDumpConfig dump_cfg;
  auto* dump = app.add_subcommand("envelope-dump", "CSV of g_0, g_1, h (m = 2)");
  dump->add_option("instance", dump_cfg.instance, "Instance file")->required();
  dump->add_option("--from", dump_cfg.from, "Range start")->capture_default_str();
  dump->add_option("--to", dump_cfg.to, "Range end")->capture_default_str();
  dump->add_option("--steps", dump_cfg.steps, "Grid intervals")->capture_default_str();

  GenConfig gen_cfg;
  auto* gen = app.add_subcommand("gen", "Seeded random instances");
  gen->add_option("--kind", gen_cfg.kind, "families or source")->capture_default_str();
  gen->add_option("--seed", gen_cfg.seed, "RNG seed")->capture_default_str();
  gen->add_option("--m", gen_cfg.m, "Number of types")
      ->check(CLI::Range(2, 16))
      ->capture_default_str();
  gen->add_option("--states", gen_cfg.states, "Max states per family")
      ->capture_default_str();
  gen->add_option("--n", gen_cfg.n, "Source symbols")->capture_default_str();
  gen->add_option("--b", gen_cfg.b, "Source bits")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kParse;
  }

  try {
    if (solve->parsed()) return cmd_solve(solve_cfg, std::cout);
    if (aifv_solve->parsed()) return cmd_aifv_solve(aifv_cfg, std::cout);
    if (*count_opt) codec_cfg.count = count;
    if (encode->parsed()) return cmd_aifv_encode(codec_cfg, std::cin, std::cout);
    if (decode->parsed()) return cmd_aifv_decode(codec_cfg, std::cin, std::cout);
    if (oracle->parsed()) {
      if (*y_opt) oracle_cfg.y = oracle_y;
      return cmd_oracle(oracle_cfg, std::cout);
    }
    if (dump->parsed()) return cmd_envelope_dump(dump_cfg, std::cout);
    if (gen->parsed()) return cmd_gen(gen_cfg, std::cout, std::cerr);
  } catch (const std::exception& e) {
    const int rc = exit_code_for(e);
    if (json_errors)
      std::cerr << json{{"error", error_kind(rc)}, {"exit_code", rc},
                        {"message", e.what()}}.dump()
                << "\n";
    else
      std::cerr << "mcpoly: " << error_kind(rc) << " error: " << e.what() << "\n";
    return rc;
  }
  return kInternal;
}
