#include "mcpoly/polytope.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "mcpoly/errors.hpp"

namespace mcpoly {

Restriction::Restriction(std::size_t m, const std::vector<std::size_t>& allowed)
    : mask_(m, false) {
  for (auto j : allowed) {
    if (j >= m)
      throw ValidationError("restriction index " + std::to_string(j) +
                            " out of range for m = " + std::to_string(m));
    mask_[j] = true;
  }
  if (m == 0 || !mask_[0])
    throw ValidationError("restriction must contain type 0");
}

Restriction Restriction::full(std::size_t m) {
  std::vector<std::size_t> all(m);
  for (std::size_t j = 0; j < m; ++j) all[j] = j;
  return Restriction(m, all);
}

Restriction Restriction::support(const State& s) {
  std::vector<std::size_t> sup;
  for (std::size_t j = 0; j < s.transitions.size(); ++j)
    if (s.transitions[j].sign() > 0) sup.push_back(j);
  return Restriction(s.transitions.size(), sup);
}

bool Restriction::is_full() const {
  for (bool b : mask_)
    if (!b) return false;
  return true;
}

bool Restriction::includes(const Restriction& other) const {
  for (std::size_t j = 0; j < other.mask_.size(); ++j)
    if (other.mask_[j] && !contains(j)) return false;
  return true;
}

bool Restriction::admits(const State& s) const {
  for (std::size_t j = 0; j < s.transitions.size(); ++j)
    if (s.transitions[j].sign() > 0 && !contains(j)) return false;
  return true;
}

std::vector<std::size_t> Restriction::members() const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < mask_.size(); ++j)
    if (mask_[j]) out.push_back(j);
  return out;
}

std::string Restriction::str() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (auto j : members()) {
    os << (first ? "" : ",") << j;
    first = false;
  }
  os << '}';
  return os.str();
}

std::vector<std::size_t> RestrictedFamilies::empty_types() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < members.size(); ++k)
    if (members[k].empty()) out.push_back(k);
  return out;
}

StateFamilies RestrictedFamilies::materialize(const StateFamilies& fams) const {
  std::vector<std::vector<State>> out(members.size());
  for (std::size_t k = 0; k < members.size(); ++k) {
    if (members[k].empty())
      throw EmptyRestrictedFamily(
          k, "family " + std::to_string(k) + " is empty under restriction " +
                 restriction.str());
    for (auto i : members[k]) out[k].push_back(fams.state(k, i));
  }
  return StateFamilies(fams.m(), std::move(out));
}

RestrictedFamilies restrict_family(const StateFamilies& fams,
                                   const Restriction& p) {
  if (p.m() != fams.m()) throw ValidationError("restriction arity mismatch");
  RestrictedFamilies r{p, std::vector<std::vector<std::size_t>>(fams.m())};
  for (std::size_t k = 0; k < fams.m(); ++k) {
    const auto& fam = fams.family(k);
    for (std::size_t i = 0; i < fam.size(); ++i)
      if (p.admits(fam[i])) r.members[k].push_back(i);
  }
  return r;
}

std::vector<std::size_t> EnvelopeResult::argmins() const {
  std::vector<std::size_t> out;
  out.reserve(per_type.size());
  for (const auto& t : per_type) out.push_back(t.state);
  return out;
}

Chain EnvelopeResult::chain(const StateFamilies& fams) const {
  return make_chain(fams, argmins());
}

std::optional<TypeMin> type_envelope(const StateFamilies& fams, std::size_t k,
                                     const PointX& x, const Restriction& p) {
  if (x.size() + 1 != fams.m())
    throw ValidationError("envelope: point has dimension " +
                          std::to_string(x.size()) + ", expected " +
                          std::to_string(fams.m() - 1));
  std::optional<TypeMin> best;
  const auto& fam = fams.family(k);
  for (std::size_t i = 0; i < fam.size(); ++i) {
    if (!p.admits(fam[i])) continue;
    Rational v = plane_value(k, x, fam[i]);
    // Strict comparison keeps the lowest index among ties.
    if (!best || v < best->value) best = TypeMin{std::move(v), i};
  }
  return best;
}

EnvelopeResult envelope(const StateFamilies& fams, const PointX& x,
                        const Restriction& p) {
  EnvelopeResult r;
  r.per_type.reserve(fams.m());
  for (std::size_t k = 0; k < fams.m(); ++k) {
    auto t = type_envelope(fams, k, x, p);
    if (!t)
      throw EmptyRestrictedFamily(
          k, "family " + std::to_string(k) + " is empty under restriction " +
                 p.str());
    if (k == 0 || t->value < r.h) {
      r.h = t->value;
      r.h_type = k;
    }
    r.per_type.push_back(std::move(*t));
  }
  return r;
}

EnvelopeResult envelope(const StateFamilies& fams, const PointX& x) {
  return envelope(fams, x, Restriction::full(fams.m()));
}

FloatFamilies::FloatFamilies(const StateFamilies& fams)
    : m_(fams.m()), costs_(fams.m()), q_(fams.m()) {
  for (std::size_t k = 0; k < m_; ++k) {
    for (const auto& s : fams.family(k)) {
      costs_[k].push_back(s.cost.to_double());
      q_[k].push_back(to_double(s.transitions));
    }
  }
}

std::span<const double> FloatFamilies::transitions(std::size_t k,
                                                   std::size_t i) const {
  return q_[k][i];
}

double FloatFamilies::plane_value(std::size_t k, std::size_t i,
                                  std::span<const double> x) const {
  const auto& q = q_[k][i];
  double v = costs_[k][i];
  for (std::size_t j = 1; j < m_; ++j) v += q[j] * x[j - 1];
  if (k > 0) v -= x[k - 1];
  return v;
}

FloatEnvelope FloatFamilies::envelope(std::span<const double> x) const {
  FloatEnvelope e;
  e.g.assign(m_, std::numeric_limits<double>::infinity());
  e.argmin.assign(m_, 0);
  for (std::size_t k = 0; k < m_; ++k) {
    for (std::size_t i = 0; i < costs_[k].size(); ++i) {
      const double v = plane_value(k, i, x);
      if (v < e.g[k]) {
        e.g[k] = v;
        e.argmin[k] = i;
      }
    }
    if (k == 0 || e.g[k] < e.h) {
      e.h = e.g[k];
      e.h_type = k;
    }
  }
  return e;
}

Box Box::unit(std::size_t m) { return cube(m, 0, 1); }

Box Box::cube(std::size_t m, const Rational& lo, const Rational& hi) {
  Box b;
  b.bounds.assign(m - 1, {lo, hi});
  b.validate();
  return b;
}

Box Box::parse(const std::string& text, std::size_t m) {
  Box b;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ';')) {
    const auto comma = item.find(',');
    if (comma == std::string::npos)
      throw ParseError("box interval '" + item + "' lacks a comma");
    b.bounds.emplace_back(Rational::parse(item.substr(0, comma)),
                          Rational::parse(item.substr(comma + 1)));
  }
  if (b.bounds.size() + 1 != m)
    throw ParseError("box has " + std::to_string(b.bounds.size()) +
                     " intervals, expected " + std::to_string(m - 1));
  b.validate();
  return b;
}

bool Box::contains(const PointX& x) const {
  for (std::size_t i = 0; i < bounds.size(); ++i)
    if (x[i] < bounds[i].first || x[i] > bounds[i].second) return false;
  return true;
}

void Box::validate() const {
  for (std::size_t i = 0; i < bounds.size(); ++i)
    if (bounds[i].first > bounds[i].second)
      throw ValidationError("box interval " + std::to_string(i + 1) +
                            " has lo > hi");
}

Rational Halfspace::evaluate(const PointX& x, const Rational& y) const {
  mpq_class v = normal.back().raw() * y.raw();
  for (std::size_t i = 0; i < x.size(); ++i) v += normal[i].raw() * x[i].raw();
  return Rational(v);
}

Halfspace plane_halfspace(std::size_t k, const State& s) {
  const std::size_t m = s.transitions.size();
  Halfspace h;
  h.normal.resize(m);
  for (std::size_t j = 1; j < m; ++j)
    h.normal[j - 1] = -s.transitions[j] + Rational(j == k ? 1 : 0);
  h.normal[m - 1] = 1;
  h.offset = s.cost;
  return h;
}

SeparationResult separate(const StateFamilies& fams, const QueryPoint& z,
                          const Box& box, const Rational& y_floor) {
  const std::size_t m = fams.m();
  if (z.x.size() + 1 != m) throw ValidationError("separate: bad point dimension");
  if (box.dim() + 1 != m) throw ValidationError("separate: bad box dimension");
  SeparationResult r;
  if (z.y < y_floor) {
    r.verdict = Verdict::Outside;
    r.plane.normal.assign(m, Rational(0));
    r.plane.normal[m - 1] = -1;
    r.plane.offset = -y_floor;
    r.provenance = "floor y >= " + y_floor.str();
    return r;
  }
  for (std::size_t i = 0; i < box.dim(); ++i) {
    const auto& [lo, hi] = box.bounds[i];
    if (z.x[i] < lo || z.x[i] > hi) {
      const bool below = z.x[i] < lo;
      r.verdict = Verdict::Outside;
      r.plane.normal.assign(m, Rational(0));
      r.plane.normal[i] = below ? -1 : 1;
      r.plane.offset = below ? -lo : hi;
      r.provenance = "box facet x_" + std::to_string(i + 1) +
                     (below ? " >= " + lo.str() : " <= " + hi.str());
      return r;
    }
  }
  EnvelopeResult env = envelope(fams, z.x);
  if (z.y <= env.h) {
    r.verdict = Verdict::Inside;
  } else {
    const std::size_t k = env.h_type;
    const State& s = fams.state(k, env.per_type[k].state);
    r.verdict = Verdict::Outside;
    r.plane = plane_halfspace(k, s);
    r.provenance = "plane of type " + std::to_string(k) + " state #" +
                   std::to_string(env.per_type[k].state) +
                   (s.label.empty() ? "" : " '" + s.label + "'");
  }
  r.env = std::move(env);
  return r;
}

FloatSeparation separate_float(
    const FloatFamilies& fams, std::span<const double> x, double y,
    const std::vector<std::pair<double, double>>& box, double y_floor) {
  const std::size_t m = fams.m();
  FloatSeparation r;
  if (y < y_floor) {
    r.verdict = Verdict::Outside;
    r.normal.assign(m, 0.0);
    r.normal[m - 1] = -1.0;
    r.offset = -y_floor;
    r.step = 0;
    return r;
  }
  for (std::size_t i = 0; i + 1 < m; ++i) {
    if (x[i] < box[i].first || x[i] > box[i].second) {
      const bool below = x[i] < box[i].first;
      r.verdict = Verdict::Outside;
      r.normal.assign(m, 0.0);
      r.normal[i] = below ? -1.0 : 1.0;
      r.offset = below ? -box[i].first : box[i].second;
      r.step = 1;
      return r;
    }
  }
  const FloatEnvelope e = fams.envelope(x);
  r.step = 2;
  r.h = e.h;
  if (y <= e.h) return r;
  const std::size_t k = e.h_type;
  const auto q = fams.transitions(k, e.argmin[k]);
  r.verdict = Verdict::Outside;
  r.normal.assign(m, 0.0);
  for (std::size_t j = 1; j < m; ++j)
    r.normal[j - 1] = -q[j] + (j == k ? 1.0 : 0.0);
  r.normal[m - 1] = 1.0;
  // offset = cost of the state = plane value at x plus the x terms removed.
  double off = e.h;
  for (std::size_t j = 0; j + 1 < m; ++j) off += r.normal[j] * x[j];
  r.offset = off;
  return r;
}

std::size_t inequality_size(const Halfspace& h) {
  std::size_t total = bit_size(h.offset);
  for (const auto& a : h.normal) total += bit_size(a);
  return total;
}

std::size_t phi_bound(const StateFamilies& fams) {
  std::size_t best = 0;
  for (std::size_t k = 0; k < fams.m(); ++k)
    for (const auto& s : fams.family(k))
      best = std::max(best, inequality_size(plane_halfspace(k, s)));
  return best;
}

}  // namespace mcpoly
