#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mcpoly/chain.hpp"

namespace mcpoly {

/// A subset P of the type indices that always contains 0.
class Restriction {
 public:
  /// Throws ValidationError when 0 is missing or an index is >= m.
  Restriction(std::size_t m, const std::vector<std::size_t>& allowed);

  static Restriction full(std::size_t m);
  /// P(S) = { j : q_j(S) > 0 }.
  static Restriction support(const State& s);

  std::size_t m() const { return mask_.size(); }
  bool contains(std::size_t j) const { return j < mask_.size() && mask_[j]; }
  bool is_full() const;
  bool includes(const Restriction& other) const;
  /// True when P(s) is a subset of this restriction.
  bool admits(const State& s) const;
  std::vector<std::size_t> members() const;
  std::string str() const;

  friend bool operator==(const Restriction&, const Restriction&) = default;

 private:
  std::vector<bool> mask_;
};

/// Members of each family admitted by a restriction, as indices into the
/// unrestricted families. Families may come out empty.
struct RestrictedFamilies {
  Restriction restriction;
  std::vector<std::vector<std::size_t>> members;

  bool empty(std::size_t k) const { return members[k].empty(); }
  std::vector<std::size_t> empty_types() const;
  /// Materializes the restricted families. Throws EmptyRestrictedFamily for
  /// the first empty type.
  StateFamilies materialize(const StateFamilies& fams) const;
};

RestrictedFamilies restrict_family(const StateFamilies& fams,
                                   const Restriction& p);

/// Minimum of the type-k planes at a point, with the index (into the
/// unrestricted family) of the lowest-index state attaining it.
struct TypeMin {
  Rational value;
  std::size_t state = 0;
};

struct EnvelopeResult {
  std::vector<TypeMin> per_type;
  Rational h;
  /// Lowest type index attaining h.
  std::size_t h_type = 0;

  std::vector<std::size_t> argmins() const;
  Chain chain(const StateFamilies& fams) const;
};

/// g_{k|P}(x) and its argmin; nullopt when the restricted family is empty.
std::optional<TypeMin> type_envelope(const StateFamilies& fams, std::size_t k,
                                     const PointX& x, const Restriction& p);

/// All g_{k|P}(x) and h. Throws EmptyRestrictedFamily.
EnvelopeResult envelope(const StateFamilies& fams, const PointX& x,
                        const Restriction& p);
EnvelopeResult envelope(const StateFamilies& fams, const PointX& x);

/// Double-precision mirror of envelope() over the full families.
struct FloatEnvelope {
  std::vector<double> g;
  std::vector<std::size_t> argmin;
  double h = 0.0;
  std::size_t h_type = 0;
};

/// Float copy of the families' coefficients for the ellipsoid solver.
class FloatFamilies {
 public:
  explicit FloatFamilies(const StateFamilies& fams);
  std::size_t m() const { return m_; }
  double plane_value(std::size_t k, std::size_t i, std::span<const double> x) const;
  FloatEnvelope envelope(std::span<const double> x) const;
  /// Transition vector of state i of family k.
  std::span<const double> transitions(std::size_t k, std::size_t i) const;

 private:
  std::size_t m_;
  std::vector<std::vector<double>> costs_;
  std::vector<std::vector<std::vector<double>>> q_;
};

/// Closed box [lo_k, hi_k] for the coordinates x_1..x_{m-1}.
struct Box {
  std::vector<std::pair<Rational, Rational>> bounds;

  static Box unit(std::size_t m);
  static Box cube(std::size_t m, const Rational& lo, const Rational& hi);
  /// Parses "l1,r1;l2,r2;..." into m-1 intervals.
  static Box parse(const std::string& text, std::size_t m);
  std::size_t dim() const { return bounds.size(); }
  bool contains(const PointX& x) const;
  void validate() const;
};

/// Query point z = (x, y) in R^m.
struct QueryPoint {
  PointX x;
  Rational y;
};

/// Hyperplane normal . z <= offset, with normal = (a_1..a_{m-1}, a_y).
struct Halfspace {
  Vector normal;
  Rational offset;

  Rational evaluate(const PointX& x, const Rational& y) const;
};

enum class Verdict { Inside, Outside };

struct SeparationResult {
  Verdict verdict = Verdict::Inside;
  /// Valid when Outside: every point w of the target body satisfies
  /// normal . w <= offset while normal . z > offset.
  Halfspace plane;
  std::string provenance;
  /// Envelope at the query x when step 3 was reached.
  std::optional<EnvelopeResult> env;
};

/// Separation oracle for { (x, y) : x in box, y_floor <= y <= h(x) }.
SeparationResult separate(const StateFamilies& fams, const QueryPoint& z,
                          const Box& box, const Rational& y_floor);

struct FloatSeparation {
  Verdict verdict = Verdict::Inside;
  std::vector<double> normal;
  double offset = 0.0;
  /// 0 = floor, 1 = box, 2 = envelope plane.
  int step = 0;
  double h = 0.0;
};

/// Same three steps as separate(), in double precision.
FloatSeparation separate_float(
    const FloatFamilies& fams, std::span<const double> x, double y,
    const std::vector<std::pair<double, double>>& box, double y_floor);

/// Inequality row of the plane of state s of type k: the normal and offset
/// of y + x_k - sum_j q_j x_j <= cost.
Halfspace plane_halfspace(std::size_t k, const State& s);

/// Size in bits of a linear inequality: sum of bit_size over its
/// coefficients and right-hand side.
std::size_t inequality_size(const Halfspace& h);

/// Largest inequality size over all planes of all families.
std::size_t phi_bound(const StateFamilies& fams);

}  // namespace mcpoly
