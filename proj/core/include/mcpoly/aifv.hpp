#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mcpoly/chain.hpp"
#include "mcpoly/polytope.hpp"

namespace mcpoly::aifv {

/// Memoryless source with dyadic probabilities p_i = P_i 2^{-b}.
struct SourceSpec {
  std::vector<Rational> probabilities;
  /// Smallest b such that every p_i is a multiple of 2^{-b}.
  unsigned b = 0;
  /// Display names; defaults to a, b, c, ... (s0, s1, ... beyond 26).
  std::vector<std::string> names;

  /// Validates sum = 1, p_i > 0 and dyadic p_i; computes b.
  static SourceSpec make(std::vector<Rational> probabilities,
                         std::vector<std::string> names = {});
  std::size_t n() const { return probabilities.size(); }
  /// -sum p_i log2 p_i.
  double entropy() const;
  /// Index of a symbol name; throws UnknownSymbol.
  std::size_t symbol(std::string_view name) const;
};

enum class NodeKind : std::uint8_t { Complete, Slave0, Slave1, Master };

struct Node {
  NodeKind kind = NodeKind::Master;
  unsigned degree = 0;
  /// Source symbol of a master node, -1 when unassigned.
  int symbol = -1;
  /// Children by edge label, -1 when absent.
  int child[2] = {-1, -1};
};

/// A type-k AIFV-m code tree. Node 0 is the root.
///
/// Canonical text form (preorder):
///   C(<0-child>,<1-child>)   complete node
///   S0(<child>)              slave-0 node
///   S1(<child>)              slave-1 node
///   M<d>[#<symbol>][(<child>)]  master node of degree d
class CodeTree {
 public:
  CodeTree() = default;
  CodeTree(std::size_t type, std::vector<Node> nodes);

  /// Throws ParseError on malformed text. Structure is not validated.
  static CodeTree parse(std::string_view text, std::size_t type);
  std::string serialize() const;

  std::size_t type() const { return type_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& node(int i) const { return nodes_.at(static_cast<std::size_t>(i)); }
  std::vector<Node>& mutable_nodes() { return nodes_; }

  /// Node reached by following `path` ('0'/'1' characters); -1 if absent.
  int find(std::string_view path) const;
  /// Depth of the deepest node.
  std::size_t height() const;
  std::size_t master_count() const;
  bool labeled() const;

  friend bool operator==(const CodeTree& a, const CodeTree& b) {
    return a.type_ == b.type_ && a.serialize() == b.serialize();
  }

 private:
  std::size_t type_ = 0;
  std::vector<Node> nodes_;
};

/// (T_0, ..., T_{m-1}) over one source.
struct Code {
  std::size_t m = 0;
  SourceSpec source;
  std::vector<CodeTree> trees;
};

// ---- validation ------------------------------------------------------------

enum class Severity { Error, Warning };

struct Violation {
  Severity severity = Severity::Error;
  /// "node-arity", "degree-range", "master-chain", "symbols", "type-spine",
  /// "norm-a" .. "norm-e", "height".
  std::string rule;
  std::string message;
};

struct ValidateOptions {
  /// Check that every symbol 0..n-1 labels exactly one master node.
  bool check_symbols = true;
  /// Report the normalization conditions and the height bound as errors.
  bool strict = false;
};

/// Structural rules are errors; normalization conditions (root not
/// slave-1, T_0 root not slave-0, no slave-1 under slave-1, slave-0 only
/// below master/slave-0, the only slave-1 is 0^k) and the height bound
/// max((n-1)(m+1)+1, k+1) are warnings unless strict.
std::vector<Violation> validate(const CodeTree& t, std::size_t m, std::size_t n,
                                const ValidateOptions& opts = {});
bool has_errors(const std::vector<Violation>& v);

/// Validates every tree and the tree/type correspondence.
std::vector<Violation> validate(const Code& code, const ValidateOptions& opts = {});

// ---- statistics and states ------------------------------------------------

struct TreeStats {
  std::vector<std::size_t> lengths;
  std::vector<std::size_t> degrees;
  Rational average_length;
  Vector q;
};

/// Exact per-symbol lengths and degrees, average length and q vector.
TreeStats tree_stats(const CodeTree& t, const SourceSpec& src, std::size_t m);

/// Markov state of a tree, labeled with "T<k>:" + its canonical text.
State to_state(const CodeTree& t, const SourceSpec& src, std::size_t m);

/// Tree recovered from a state label produced by to_state().
CodeTree tree_from_label(const std::string& label);

// ---- codec -----------------------------------------------------------------

struct DecodeStats {
  /// Largest number of bits examined past the end of a codeword.
  std::size_t max_lookahead = 0;
};

/// Concatenated codewords as '0'/'1' characters. Throws UnknownSymbol.
std::string encode(const Code& code, const std::vector<std::size_t>& message);

/// Longest-master-prefix decoding. Without `count`, decoding stops when the
/// bits run out (a trailing empty codeword is not emitted); with `count`
/// exactly that many symbols are produced and the bits must be consumed.
/// Throws MalformedStream.
std::vector<std::size_t> decode(const Code& code, std::string_view bits,
                                std::optional<std::size_t> count = std::nullopt,
                                DecodeStats* stats = nullptr);

// ---- enumeration -----------------------------------------------------------

/// Multiset of master slots (depth, degree), sorted.
using Signature = std::vector<std::pair<std::uint16_t, std::uint16_t>>;

struct ShapeClass {
  Signature slots;
  /// Unlabeled canonical text of one tree with this signature.
  std::string representative;
};

struct EnumerationOptions {
  std::size_t height_cap = 0;  ///< 0 = default_height_cap(n, m)
  std::size_t budget = 2'000'000;
};

std::size_t default_height_cap(std::size_t n, std::size_t m);
/// (n-1)(m+1)+1: no normalized tree is taller.
std::size_t height_bound(std::size_t n, std::size_t m);

/// Every distinct unlabeled normalized type-k tree with n master nodes and
/// height <= cap, in a deterministic order. Throws BudgetExceeded.
void enumerate_shapes(std::size_t k, std::size_t m, std::size_t n,
                      const EnumerationOptions& opts,
                      const std::function<void(const CodeTree&)>& visit);

/// One representative shape per distinct slot signature.
std::vector<ShapeClass> shape_classes(std::size_t k, std::size_t m,
                                      std::size_t n,
                                      const EnumerationOptions& opts);

/// Places symbols on the master nodes of `shape` minimizing
/// sum_i p_i (depth_i + x_{degree_i}) (x_0 = 0).
CodeTree assign_symbols(const CodeTree& shape, const SourceSpec& src,
                        const PointX& x);

/// All normalized shapes, each labeled by assign_symbols at x = 0.
std::vector<CodeTree> enumerate_trees(std::size_t k, std::size_t m,
                                      const SourceSpec& src,
                                      const EnumerationOptions& opts = {});

struct BestTree {
  CodeTree tree;
  Rational value;
};

/// Type-k tree minimizing plane_value(k, x, to_state(T)) among trees whose
/// master degrees all lie in p. Throws EmptyRestrictedFamily.
BestTree best_tree(std::size_t k, std::size_t m, const SourceSpec& src,
                   const PointX& x, const Restriction& p,
                   const EnumerationOptions& opts = {});

/// Type-k family: for every shape class, every merge of the per-degree slot
/// lists (sorted by depth) against the probabilities sorted descending;
/// identical states are kept once. Contains an argmin of every envelope.
std::vector<State> family_states(std::size_t k, std::size_t m,
                                 const SourceSpec& src,
                                 const EnumerationOptions& opts = {});

StateFamilies families_from_source(const SourceSpec& src, std::size_t m,
                                   const EnumerationOptions& opts = {});

// ---- baselines and checks ---------------------------------------------------

struct HuffmanResult {
  std::vector<std::size_t> lengths;
  Rational cost;
};

HuffmanResult huffman(const SourceSpec& src);

struct PointoolReport {
  bool applicable = false;  ///< n >= 2^m - 1
  std::size_t checks = 0;
  std::vector<std::string> violations;
};

/// Samples points on the facets x_k = 0 and x_k = 1 of [0,1]^{m-1} and
/// checks g_0 <= g_k on x_k = 0 and g_k <= g_0 on x_k = 1, exactly.
PointoolReport check_pointool(const StateFamilies& fams, std::size_t n,
                              std::size_t samples, std::uint64_t seed);

}  // namespace mcpoly::aifv
