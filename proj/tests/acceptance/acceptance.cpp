// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "mcpoly/aifv.hpp"
#include "mcpoly/errors.hpp"
#include "mcpoly/solvers.hpp"
#include "oracles.hpp"

using namespace mcpoly;
using aifv::Code;
using aifv::SourceSpec;

namespace {

// Pinned tolerances and limits.
constexpr double kEllipsoidEps = 1e-9;
constexpr double kEntropySlack = 1e-12;
constexpr std::size_t kChains = 200;
constexpr std::size_t kSolverInstances = 200;
constexpr std::size_t kPruneInstances = 20;
constexpr std::size_t kSources = 50;
constexpr std::size_t kCubeSamples = 50;
constexpr std::size_t kRoundTrips = 1000;
constexpr std::size_t kTruncations = 100;

struct Outcome {
  bool ok = true;
  std::string detail;
  std::ostringstream why;

  void check(bool cond, const std::string& what) {
    if (!cond && ok) why << what;
    ok = ok && cond;
  }
};

std::vector<std::size_t> symbols(const SourceSpec& s, const std::string& text) {
  std::vector<std::size_t> out;
  for (char c : text) out.push_back(s.symbol(std::string(1, c)));
  return out;
}

Code optimal_code(const SourceSpec& src, std::size_t m, const SolveReport& r) {
  Code code{m, src, {}};
  for (const auto& s : r.chain.states) code.trees.push_back(aifv::tree_from_label(s.label));
  return code;
}

void fixture_code(Outcome& o) {
  const Code code = fixture::abcd_code();
  o.check(!aifv::has_errors(aifv::validate(code)), "fixture code does not validate; ");

  // q compositions as sums of p_i: checked at the dyadic source and at a
  // second, generic source so that coincidences cannot pass.
  const SourceSpec generic = SourceSpec::make(
      {Rational(7, 16), Rational(5, 16), Rational(3, 16), Rational(1, 16)});
  for (const SourceSpec& s : {code.source, generic}) {
    const auto& p = s.probabilities;
    const auto t0 = aifv::tree_stats(code.trees[0], s, 3);
    const auto t1 = aifv::tree_stats(code.trees[1], s, 3);
    const auto t2 = aifv::tree_stats(code.trees[2], s, 3);
    o.check(t0.lengths == std::vector<std::size_t>{1, 1, 3, 4}, "T0 lengths; ");
    o.check(t0.degrees == std::vector<std::size_t>{1, 2, 0, 0}, "T0 degrees; ");
    o.check(t0.q == Vector{p[2] + p[3], p[0], p[1]}, "T0 q; ");
    o.check(t1.lengths == std::vector<std::size_t>{1, 3, 3, 4}, "T1 lengths; ");
    o.check(t1.degrees == std::vector<std::size_t>{2, 0, 0, 0}, "T1 degrees; ");
    o.check(t1.q == Vector{p[1] + p[2] + p[3], 0, p[0]}, "T1 q; ");
    o.check(t2.lengths == std::vector<std::size_t>{0, 4, 5, 5}, "T2 lengths; ");
    o.check(t2.degrees == std::vector<std::size_t>{1, 0, 0, 0}, "T2 degrees; ");
    o.check(t2.q == Vector{p[1] + p[2] + p[3], p[0], 0}, "T2 q; ");
  }
  const auto t0 = aifv::tree_stats(code.trees[0], code.source, 3);
  o.check(t0.q == Vector{Rational(1, 4), Rational(1, 2), Rational(1, 4)}, "T0 q numeric; ");

  o.check(aifv::encode(code, symbols(code.source, "cbab")) == "0001010", "encode; ");
  o.check(aifv::decode(code, "0001010") == symbols(code.source, "cbab"), "decode; ");
  o.detail = "3 trees, encode/decode of cbab";
}

void plane_identity(Outcome& o) {
  oracle::Rng rng(1001);
  std::size_t xs = 0;
  for (std::size_t i = 0; i < kChains; ++i) {
    const std::size_t m = 2 + i % 3;
    const Chain c = oracle::random_chain(rng, m);
    const Rational expected = oracle::chain_cost(c);
    o.check(cost(c) == expected, "cost differs from oracle; ");
    o.check(intersection_point(c).y == expected, "intersection y != cost; ");
    for (int t = 0; t < 10; ++t, ++xs)
      o.check(weighted_plane_identity(c, oracle::random_point(rng, m)) == expected,
              "weighted identity != cost; ");
  }
  o.detail = std::to_string(kChains) + " chains, " + std::to_string(xs) + " points";
}

void solver_agreement(Outcome& o) {
  oracle::Rng rng(1002);
  double worst_gap = 0;
  for (std::size_t i = 0; i < kSolverInstances; ++i) {
    const std::size_t m = 2 + i % 2;
    const StateFamilies fams = oracle::random_families(rng, m, 4);
    const auto bf = brute_force(fams);
    const auto it = solve(fams, Method::Iterate);
    SolveOptions eo;
    eo.eps = kEllipsoidEps;
    const auto el = solve(fams, Method::Ellipsoid, eo);
    o.check(bf.cost == oracle::chain_cost(bf.chain), "brute cost inconsistent; ");
    o.check(it.cost == bf.cost, "iterate disagrees at instance " + std::to_string(i) + "; ");
    o.check(el.cost == bf.cost, "ellipsoid disagrees at instance " + std::to_string(i) + "; ");
    o.check(el.ellipsoid && el.ellipsoid->converged, "ellipsoid did not converge; ");
    if (el.ellipsoid) {
      worst_gap = std::max(worst_gap, el.ellipsoid->gap);
      o.check(std::abs(el.ellipsoid->y - bf.cost.to_double()) <= kEllipsoidEps,
              "float phase outside eps; ");
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "%zu instances, worst float gap %.2e", kSolverInstances,
                worst_gap);
  o.detail = buf;
}

void pruning(Outcome& o) {
  oracle::Rng rng(1003);
  std::size_t built = 0, removed = 0;
  for (int attempt = 0; attempt < 20000 && built < kPruneInstances; ++attempt) {
    const std::size_t m = 2 + attempt % 3;
    const auto inst = oracle::transient_instance(rng, m);
    if (!inst) continue;
    ++built;
    const PruneResult pr = prune(inst->fams, inst->x_hat, inst->y_hat);
    o.check(pr.cost == inst->y_hat, "prune cost != y_hat; ");
    o.check(oracle::chain_cost(pr.chain) == inst->y_hat, "prune chain cost (oracle) != y_hat; ");
    o.check(pr.shrink_steps <= m - 1, "too many shrink steps; ");
    if (!pr.restriction.is_full()) ++removed;
  }
  o.check(built == kPruneInstances, "could not construct enough instances; ");
  o.check(removed > 0, "no instance exercised a shrink; ");
  o.detail = std::to_string(built) + " instances, " + std::to_string(removed) +
             " with a proper restriction";
}

void aifv_redundancy(Outcome& o) {
  oracle::Rng rng(1004);
  std::size_t above_cited = 0;
  double worst = 0;
  for (std::size_t i = 0; i < kSources; ++i) {
    const std::size_t n = 3 + i % 2;
    const unsigned b = 3 + static_cast<unsigned>(i % 4);
    const SourceSpec src = oracle::random_source(rng, n, b);
    const auto fams = aifv::families_from_source(src, 2);
    const auto r = solve(fams, Method::Iterate);
    const auto bf = brute_force(fams);
    o.check(r.cost == bf.cost, "iterate != brute on AIFV families; ");
    o.check(r.cost <= oracle::huffman_cost(src.probabilities), "AIFV cost above Huffman; ");
    const double red = r.cost.to_double() - src.entropy();
    o.check(red >= -kEntropySlack, "negative redundancy; ");
    o.check(!aifv::has_errors(aifv::validate(optimal_code(src, 2, r))), "optimal code invalid; ");
    worst = std::max(worst, red);
    if (red > 0.5) ++above_cited;
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "%zu sources, worst redundancy %.4f; soft 1/m bound: %s",
                kSources, worst,
                above_cited == 0 ? "held" : "FLAGGED (not a failure)");
  o.detail = buf;
}

void unit_cube(Outcome& o) {
  oracle::Rng rng(1005);
  std::size_t instances = 0, checks = 0;
  for (std::size_t n = 3; n <= 5; ++n)
    for (int i = 0; i < 6; ++i, ++instances) {
      const SourceSpec src = oracle::random_source(rng, n, 5);
      const auto fams = aifv::families_from_source(src, 2);
      const auto r = iterate(fams, PointX{Rational(0)});
      o.check(Box::unit(2).contains(*r.x_final), "fixed point outside [0,1]; ");
      const auto rep = aifv::check_pointool(fams, n, kCubeSamples, rng());
      o.check(rep.applicable && rep.checks == kCubeSamples, "facet check not run; ");
      o.check(rep.violations.empty(),
              rep.violations.empty() ? "" : rep.violations.front() + "; ");
      checks += rep.checks;
    }
  o.detail = std::to_string(instances) + " sources, " + std::to_string(checks) + " facet points";
}

void separation(Outcome& o) {
  oracle::Rng rng(1006);
  std::size_t outside = 0, witnesses = 0;
  for (int inst = 0; inst < 40; ++inst) {
    const StateFamilies fams = oracle::random_families(rng, 2, 3);
    const Box box = auto_box(fams);
    const Rational floor = fams.min_cost() - 1;

    // Every distinctly-typed intersection point that lies in the body.
    std::vector<std::pair<PointX, Rational>> body;
    for (std::size_t a = 0; a < fams.family(0).size(); ++a)
      for (std::size_t b = 0; b < fams.family(1).size(); ++b) {
        const Chain c = make_chain(fams, {a, b});
        const auto ip = intersection_point(c);
        if (box.contains(ip.x) && ip.y <= envelope(fams, ip.x).h && ip.y >= floor)
          body.emplace_back(ip.x, ip.y);
      }
    // Interior samples.
    const auto& [lo, hi] = box.bounds[0];
    for (int s = 0; s < 100; ++s) {
      const Rational t(std::uniform_int_distribution<long>(0, 64)(rng), 64);
      const PointX x{lo + (hi - lo) * t};
      const Rational h = envelope(fams, x).h;
      if (h < floor) continue;
      const Rational u(std::uniform_int_distribution<long>(0, 64)(rng), 64);
      body.emplace_back(x, floor + (h - floor) * u);
    }

    for (int q = 0; q < 30; ++q) {
      const PointX x{oracle::random_rational(rng, -6, 6, 8)};
      const Rational y = oracle::random_rational(rng, -8, 14, 8);
      const auto sep = separate(fams, {x, y}, box, floor);
      if (sep.verdict == Verdict::Inside) {
        o.check(box.contains(x) && y >= floor && y <= envelope(fams, x).h,
                "Inside verdict for a point outside; ");
        continue;
      }
      ++outside;
      o.check(sep.plane.evaluate(x, y) > sep.plane.offset, "query not strictly cut; ");
      for (const auto& [wx, wy] : body) {
        ++witnesses;
        o.check(sep.plane.evaluate(wx, wy) <= sep.plane.offset, "plane cuts the body; ");
      }
    }
  }
  o.detail = std::to_string(outside) + " outside queries, " + std::to_string(witnesses) +
             " body-point checks";
}

void codec(Outcome& o) {
  oracle::Rng rng(1007);
  std::size_t codes = 0, trips = 0, rejected = 0, worst = 0;
  for (int c = 0; c < 6; ++c, ++codes) {
    const std::size_t m = 2 + c % 2;
    const SourceSpec src = oracle::random_source(rng, 3 + c % 3, 5);
    const auto fams = aifv::families_from_source(src, m);
    const Code code = optimal_code(src, m, solve(fams, Method::Iterate));
    o.check(!aifv::has_errors(aifv::validate(code)), "generated code invalid; ");
    std::uniform_int_distribution<std::size_t> sym(0, src.n() - 1), len(0, 40);
    std::size_t code_worst = 0;
    for (std::size_t i = 0; i < kRoundTrips; ++i, ++trips) {
      std::vector<std::size_t> msg(len(rng));
      for (auto& s : msg) s = sym(rng);
      aifv::DecodeStats stats;
      o.check(aifv::decode(code, aifv::encode(code, msg), msg.size(), &stats) == msg,
              "round trip failed; ");
      code_worst = std::max(code_worst, stats.max_lookahead);
    }
    o.check(code_worst <= m, "decoding delay above m; ");
    worst = std::max(worst, code_worst);

    std::size_t here = 0;
    for (int i = 0; i < 20000 && here < kTruncations; ++i) {
      std::vector<std::size_t> msg(1 + i % 16);
      for (auto& s : msg) s = sym(rng);
      const std::string bits = aifv::encode(code, msg);
      if (bits.size() < 2) continue;
      const std::string prefix =
          bits.substr(0, std::uniform_int_distribution<std::size_t>(1, bits.size() - 1)(rng));
      if (oracle::parses(code, prefix)) continue;
      ++here;
      bool threw = false;
      try {
        aifv::decode(code, prefix);
      } catch (const MalformedStream&) {
        threw = true;
      }
      o.check(threw, "truncation accepted: " + prefix + "; ");
    }
    o.check(here == kTruncations, "too few non-parseable truncations; ");
    rejected += here;
  }
  o.detail = std::to_string(codes) + " codes, " + std::to_string(trips) + " round trips, " +
             std::to_string(rejected) + " truncations, max delay " + std::to_string(worst);
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<void(Outcome&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "fixture code: stats table, encode/decode", 1, fixture_code},
      {2, "intersection point and weighted plane identity", 30, plane_identity},
      {3, "brute / iterate / ellipsoid agreement", 300, solver_agreement},
      {4, "pruning of transient optima", 10, pruning},
      {5, "AIFV-2 optimality and redundancy", 600, aifv_redundancy},
      {6, "unit-cube optimum and facet inequalities", 300, unit_cube},
      {7, "separation oracle soundness", 30, separation},
      {8, "codec round trips, truncations, delay", 600, codec},
  };
  bool all = true;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit_seconds) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "over time limit %.0fs; ", c.limit_seconds);
      o.check(false, buf);
    }
    all = all && o.ok;
    std::printf("%s [%d] %s: %s (%.2fs)%s%s\n", o.ok ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs, o.ok ? "" : " -- ", o.ok ? "" : o.why.str().c_str());
  }
  std::fflush(stdout);
  return all ? 0 : 1;
}
