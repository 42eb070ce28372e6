#include "io.hpp"

#include <fstream>
#include <sstream>

#include "mcpoly/errors.hpp"

namespace mcpoly::cli {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << text;
}

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(what + ": " + e.what());
  }
}

Rational rational_from_json(const json& j, const std::string& where) {
  if (j.is_string()) {
    try {
      return Rational::parse(j.get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw ParseError(where + ": expected a rational string \"p/q\"");
}

json to_json(const Rational& r) { return r.str(); }

json to_json(const Vector& v) {
  json out = json::array();
  for (const auto& r : v) out.push_back(r.str());
  return out;
}

namespace {

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key))
    throw ParseError(where + ": missing field '" + key + "'");
  return obj.at(key);
}

std::size_t size_field(const json& obj, const char* key,
                       const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_number_integer() || v.get<long>() < 0)
    throw ParseError(where + "." + key + ": expected a non-negative integer");
  return v.get<std::size_t>();
}

json doubles(const std::vector<double>& v) {
  json out = json::array();
  for (double d : v) out.push_back(d);
  return out;
}

}  // namespace

StateFamilies families_from_json(const json& j) {
  const std::size_t m = size_field(j, "m", "instance");
  const json& fams = field(j, "families", "instance");
  if (!fams.is_array()) throw ParseError("instance.families: expected an array");
  std::vector<std::vector<State>> out;
  for (std::size_t k = 0; k < fams.size(); ++k) {
    const std::string fw = "families[" + std::to_string(k) + "]";
    if (!fams[k].is_array()) throw ParseError(fw + ": expected an array");
    std::vector<State> fam;
    for (std::size_t i = 0; i < fams[k].size(); ++i) {
      const json& sj = fams[k][i];
      const std::string w = fw + "[" + std::to_string(i) + "]";
      State s;
      if (sj.contains("label")) {
        if (!sj.at("label").is_string())
          throw ParseError(w + ".label: expected a string");
        s.label = sj.at("label").get<std::string>();
      }
      s.cost = rational_from_json(field(sj, "cost", w), w + ".cost");
      const json& tj = field(sj, "transitions", w);
      if (!tj.is_array()) throw ParseError(w + ".transitions: expected an array");
      for (std::size_t t = 0; t < tj.size(); ++t)
        s.transitions.push_back(rational_from_json(
            tj[t], w + ".transitions[" + std::to_string(t) + "]"));
      fam.push_back(std::move(s));
    }
    out.push_back(std::move(fam));
  }
  return StateFamilies(m, std::move(out));
}

json state_to_json(const State& s) {
  return json{{"label", s.label},
              {"cost", to_json(s.cost)},
              {"transitions", to_json(s.transitions)}};
}

json families_to_json(const StateFamilies& fams) {
  json out{{"m", fams.m()}, {"families", json::array()}};
  for (const auto& fam : fams.families()) {
    json fj = json::array();
    for (const auto& s : fam) fj.push_back(state_to_json(s));
    out["families"].push_back(std::move(fj));
  }
  return out;
}

json report_to_json(const SolveReport& r) {
  json out;
  out["solver"] = r.solver;
  out["cost"] = to_json(r.cost);
  out["iterations"] = r.iterations;
  json chain = json::array();
  for (std::size_t k = 0; k < r.chain.states.size(); ++k) {
    json sj = state_to_json(r.chain.states[k]);
    sj["type"] = k;
    if (k < r.chain.indices.size()) sj["index"] = r.chain.indices[k];
    chain.push_back(std::move(sj));
  }
  out["chain"] = std::move(chain);
  out["stationary"] = to_json(stationary_distribution(r.chain));
  if (r.x_final) out["x"] = to_json(*r.x_final);
  if (r.solver == "ellipsoid") {
    out["cost_shift"] = to_json(r.cost_shift);
    out["phi"] = r.phi;
  }
  if (r.box) {
    json b = json::array();
    for (const auto& [lo, hi] : r.box->bounds)
      b.push_back(json::array({lo.str(), hi.str()}));
    out["box"] = std::move(b);
  }
  if (r.ellipsoid) {
    const auto& e = *r.ellipsoid;
    out["ellipsoid"] = json{{"x", doubles(e.x)},
                            {"y", e.y},
                            {"feasible", e.feasible},
                            {"converged", e.converged},
                            {"gap", e.gap},
                            {"oracle_calls", e.oracle_calls}};
  }
  if (r.prune) {
    const auto& p = *r.prune;
    json types = json::array();
    for (auto k : p.restriction.members()) types.push_back(k);
    out["prune"] = json{{"restriction", std::move(types)},
                        {"cost", to_json(p.cost)},
                        {"shrink_steps", p.shrink_steps},
                        {"fallback_types", p.fallback_types}};
  }
  return out;
}

json trace_to_json(const SolveReport& r) {
  json out{{"solver", r.solver}, {"trace", json::array()}};
  for (const auto& t : r.trace)
    out["trace"].push_back(json{{"iteration", t.iteration},
                                {"x", to_json(t.x)},
                                {"g", to_json(t.g)},
                                {"h", to_json(t.h)},
                                {"in_unit_box", t.in_unit_box}});
  if (r.ellipsoid) {
    json steps = json::array();
    for (const auto& s : r.ellipsoid->trace)
      steps.push_back(json{{"iteration", s.iteration},
                           {"center", doubles(s.center)},
                           {"inside", s.inside},
                           {"cut", s.cut},
                           {"upper_bound", s.upper_bound}});
    out["ellipsoid"] = std::move(steps);
  }
  return out;
}

aifv::SourceSpec source_from_text(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (text[first] == '{' || text[first] == '[')) {
    const json j = parse_json(text, "source");
    const json& probs = j.is_array() ? j : field(j, "probabilities", "source");
    if (!probs.is_array())
      throw ParseError("source.probabilities: expected an array");
    std::vector<Rational> p;
    for (std::size_t i = 0; i < probs.size(); ++i)
      p.push_back(rational_from_json(
          probs[i], "source.probabilities[" + std::to_string(i) + "]"));
    std::vector<std::string> names;
    if (j.is_object() && j.contains("names")) {
      if (!j.at("names").is_array())
        throw ParseError("source.names: expected an array");
      for (const auto& nj : j.at("names")) {
        if (!nj.is_string()) throw ParseError("source.names: expected strings");
        names.push_back(nj.get<std::string>());
      }
    }
    return aifv::SourceSpec::make(std::move(p), std::move(names));
  }
  std::vector<Rational> p;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      p.push_back(Rational::parse(line));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return aifv::SourceSpec::make(std::move(p));
}

json source_to_json(const aifv::SourceSpec& src) {
  return json{{"n", src.n()},
              {"b", src.b},
              {"probabilities", to_json(src.probabilities)},
              {"names", src.names}};
}

aifv::Code code_from_json(const json& j) {
  aifv::Code code;
  code.m = size_field(j, "m", "code");
  code.source = source_from_text(field(j, "source", "code").dump());
  const json& trees = field(j, "trees", "code");
  if (!trees.is_array()) throw ParseError("code.trees: expected an array");
  for (std::size_t k = 0; k < trees.size(); ++k) {
    if (!trees[k].is_string())
      throw ParseError("code.trees[" + std::to_string(k) + "]: expected a string");
    code.trees.push_back(aifv::CodeTree::parse(trees[k].get<std::string>(), k));
  }
  return code;
}

json code_to_json(const aifv::Code& code) {
  json trees = json::array();
  for (const auto& t : code.trees) trees.push_back(t.serialize());
  return json{{"m", code.m},
              {"source", source_to_json(code.source)},
              {"trees", std::move(trees)}};
}

PointX parse_point(const std::string& text, std::size_t m) {
  PointX x;
  std::istringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) x.push_back(Rational::parse(part));
  if (x.size() + 1 != m)
    throw ParseError("point '" + text + "' has " + std::to_string(x.size()) +
                     " coordinates, expected " + std::to_string(m - 1));
  return x;
}

}  // namespace mcpoly::cli
