#include "commands.hpp"

#include <cctype>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <sstream>

#include "io.hpp"
#include "mcpoly/errors.hpp"
#include "mcpoly/generate.hpp"

namespace mcpoly::cli {

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e) ||
      dynamic_cast<const DivisionByZero*>(&e))
    return kParse;
  if (dynamic_cast<const ValidationError*>(&e) ||
      dynamic_cast<const UnknownSymbol*>(&e) ||
      dynamic_cast<const MalformedStream*>(&e) ||
      dynamic_cast<const UnsupportedDimension*>(&e))
    return kValidation;
  if (dynamic_cast<const BudgetExceeded*>(&e) ||
      dynamic_cast<const IterationCapExceeded*>(&e))
    return kBudget;
  return kInternal;
}

std::string error_kind(int code) {
  switch (code) {
    case kParse: return "parse";
    case kValidation: return "validation";
    case kBudget: return "budget";
    default: return "internal";
  }
}

namespace {

void emit(const json& j, const std::string& path, std::ostream& out) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty() || path == "-")
    out << text;
  else
    write_file(path, text);
}

StateFamilies load_instance(const std::string& path) {
  return families_from_json(parse_json(read_file(path), path));
}

aifv::Code load_code(const CodecConfig& cfg) {
  aifv::Code code = code_from_json(parse_json(read_file(cfg.code), cfg.code));
  aifv::ValidateOptions vo;
  vo.strict = cfg.strict;
  const auto problems = aifv::validate(code, vo);
  for (const auto& v : problems)
    if (v.severity == aifv::Severity::Error)
      throw ValidationError(v.rule + ": " + v.message);
  return code;
}

bool single_char_names(const aifv::SourceSpec& src) {
  for (const auto& s : src.names)
    if (s.size() != 1) return false;
  return true;
}

}  // namespace

int cmd_solve(const SolveConfig& cfg, std::ostream& out) {
  const StateFamilies fams = load_instance(cfg.instance);
  SolveOptions opts;
  opts.eps = cfg.eps;
  opts.budget = cfg.budget;
  opts.brute.budget = cfg.budget > 0 ? cfg.budget : opts.brute.budget;
  if (!cfg.box.empty()) opts.box = Box::parse(cfg.box, fams.m());
  if (!cfg.x0.empty()) opts.x0 = parse_point(cfg.x0, fams.m());
  opts.record_ellipsoid_trace = !cfg.trace.empty();
  const SolveReport r = solve(fams, parse_method(cfg.method), opts);
  if (!cfg.trace.empty()) write_file(cfg.trace, trace_to_json(r).dump(2) + "\n");
  emit(report_to_json(r), cfg.output, out);
  return kOk;
}

int cmd_aifv_solve(const AifvSolveConfig& cfg, std::ostream& out) {
  const aifv::SourceSpec src = source_from_text(read_file(cfg.probs));
  aifv::EnumerationOptions eo;
  eo.height_cap = cfg.height_cap;
  const StateFamilies fams = aifv::families_from_source(src, cfg.m, eo);

  SolveOptions opts;
  if (cfg.m < 64 && src.n() + 1 >= (std::size_t{1} << cfg.m))
    opts.box = Box::unit(cfg.m);
  const SolveReport r = solve(fams, parse_method(cfg.method), opts);

  aifv::Code code;
  code.m = cfg.m;
  code.source = src;
  for (const auto& s : r.chain.states)
    code.trees.push_back(aifv::tree_from_label(s.label));
  if (aifv::has_errors(aifv::validate(code)))
    throw Error("optimal code failed validation");

  const aifv::HuffmanResult huff = aifv::huffman(src);
  const double entropy = src.entropy();
  json families = json::array();
  for (const auto& f : fams.families()) families.push_back(f.size());
  json result{
      {"solver", r.solver},
      {"m", cfg.m},
      {"height_cap", eo.height_cap == 0 ? aifv::default_height_cap(src.n(), cfg.m)
                                        : eo.height_cap},
      {"family_sizes", std::move(families)},
      {"cost", to_json(r.cost)},
      {"cost_value", r.cost.to_double()},
      {"entropy", entropy},
      {"redundancy", r.cost.to_double() - entropy},
      {"huffman", json{{"cost", to_json(huff.cost)},
                       {"cost_value", huff.cost.to_double()},
                       {"lengths", huff.lengths}}},
      {"code", code_to_json(code)}};
  if (!cfg.code_out.empty())
    write_file(cfg.code_out, code_to_json(code).dump(2) + "\n");
  emit(result, cfg.output, out);
  return kOk;
}

int cmd_aifv_encode(const CodecConfig& cfg, std::istream& in, std::ostream& out) {
  const aifv::Code code = load_code(cfg);
  const bool chars = single_char_names(code.source);
  std::vector<std::size_t> message;
  std::string token;
  while (in >> token) {
    bool known = false;
    for (const auto& name : code.source.names) known = known || name == token;
    if (known) {
      message.push_back(code.source.symbol(token));
    } else if (chars) {
      for (char c : token) message.push_back(code.source.symbol(std::string(1, c)));
    } else {
      message.push_back(code.source.symbol(token));
    }
  }
  out << aifv::encode(code, message) << "\n";
  return kOk;
}

int cmd_aifv_decode(const CodecConfig& cfg, std::istream& in, std::ostream& out) {
  const aifv::Code code = load_code(cfg);
  std::string bits;
  for (char c : std::string(std::istreambuf_iterator<char>(in), {}))
    if (!std::isspace(static_cast<unsigned char>(c))) bits.push_back(c);
  const auto symbols = aifv::decode(code, bits, cfg.count);
  const bool chars = single_char_names(code.source);
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (i > 0 && !chars) out << ' ';
    out << code.source.names[symbols[i]];
  }
  out << "\n";
  return kOk;
}

int cmd_oracle(const OracleConfig& cfg, std::ostream& out) {
  const StateFamilies fams = load_instance(cfg.instance);
  const PointX x = parse_point(cfg.x, fams.m());
  const EnvelopeResult env = envelope(fams, x);
  json types = json::array();
  for (std::size_t k = 0; k < fams.m(); ++k) {
    const auto& t = env.per_type[k];
    types.push_back(json{{"type", k},
                         {"g", to_json(t.value)},
                         {"argmin", t.state},
                         {"label", fams.state(k, t.state).label}});
  }
  json result{{"x", to_json(x)},
              {"h", to_json(env.h)},
              {"h_type", env.h_type},
              {"types", std::move(types)}};
  if (cfg.y) {
    const Box box = cfg.box.empty() ? auto_box(fams) : Box::parse(cfg.box, fams.m());
    const QueryPoint z{x, Rational::parse(*cfg.y)};
    const SeparationResult sep =
        separate(fams, z, box, Rational::parse(cfg.y_floor));
    json sj{{"y", to_json(z.y)},
            {"verdict", sep.verdict == Verdict::Inside ? "inside" : "outside"}};
    if (sep.verdict == Verdict::Outside) {
      sj["normal"] = to_json(sep.plane.normal);
      sj["offset"] = to_json(sep.plane.offset);
      sj["provenance"] = sep.provenance;
    }
    result["separation"] = std::move(sj);
  }
  out << result.dump(2) << "\n";
  return kOk;
}

int cmd_envelope_dump(const EnvelopeDumpConfig& cfg, std::ostream& out) {
  const StateFamilies fams = load_instance(cfg.instance);
  if (fams.m() != 2)
    throw UnsupportedDimension("envelope-dump needs m = 2, got m = " +
                               std::to_string(fams.m()));
  if (cfg.steps == 0) throw ValidationError("steps must be positive");
  const Rational lo = Rational::parse(cfg.from);
  const Rational hi = Rational::parse(cfg.to);
  if (hi < lo) throw ValidationError("range end is below its start");
  const Rational step = (hi - lo) / Rational(static_cast<long>(cfg.steps));
  std::ostringstream ss;
  ss << std::setprecision(12);
  ss << "x,g0,g1,h\n";
  for (std::size_t i = 0; i <= cfg.steps; ++i) {
    const Rational x = lo + step * Rational(static_cast<long>(i));
    const EnvelopeResult env = envelope(fams, PointX{x});
    ss << x.to_double() << ',' << env.per_type[0].value.to_double() << ','
       << env.per_type[1].value.to_double() << ',' << env.h.to_double() << '\n';
  }
  out << ss.str();
  return kOk;
}

int cmd_gen(const GenConfig& cfg, std::ostream& out, std::ostream& log) {
  log << "gen: kind=" << cfg.kind << " seed=" << cfg.seed << "\n";
  gen::Rng rng(cfg.seed);
  json result;
  if (cfg.kind == "families") {
    result = families_to_json(gen::random_families(rng, cfg.m, cfg.states));
  } else if (cfg.kind == "source") {
    result = source_to_json(gen::random_dyadic_source(rng, cfg.n, cfg.b));
  } else {
    throw ParseError("unknown gen kind '" + cfg.kind +
                     "' (expected families or source)");
  }
  result["seed"] = cfg.seed;
  out << result.dump(2) << "\n";
  return kOk;
}

}  // namespace mcpoly::cli
