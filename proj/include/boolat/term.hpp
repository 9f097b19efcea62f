#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "boolat/element.hpp"

namespace boolat {

/// A constant-free lattice term over variables x1..xk: a binary meet/join
/// tree, stored in postorder with the root last. Immutable after
/// construction; build through the factories.
///
/// Wire syntax is an s-expression with operators `&` (meet) and `|` (join):
/// "(& x1 (| x2 x3))". Tokens are ASCII; printing emits the canonical form
/// with single spaces.
class Term {
 public:
  static Term var(int index);  // index >= 1
  static Term meet(const Term& lhs, const Term& rhs);
  static Term join(const Term& lhs, const Term& rhs);

  int node_count() const noexcept { return static_cast<int>(nodes_.size()); }

  /// Largest variable index appearing in the term (>= 1).
  int max_var() const noexcept { return max_var_; }

  /// Structural evaluation: assignment[i-1] is the value of xi. All values
  /// must share one width; the result has that width.
  LatticeElement eval(std::span<const LatticeElement> assignment) const;

  /// Same evaluation over single-word bit masks (width <= 64). The caller
  /// owns the masking convention; used by the exhaustive equation solver.
  std::uint64_t eval_word(std::span<const std::uint64_t> assignment) const;

  std::string to_string() const;
  static Term parse(std::string_view text);

  bool operator==(const Term&) const = default;

 private:
  enum class Op : std::uint8_t { var, meet, join };
  struct Node {
    Op op;
    std::int32_t var;  // meaningful when op == Op::var
    bool operator==(const Node&) const = default;
  };

  Term() = default;
  static Term combine(Op op, const Term& lhs, const Term& rhs);

  std::vector<Node> nodes_;
  int max_var_ = 0;
};

/// b-tuple of k-ary terms; `arity` is the declared k, an upper bound for
/// every component's max_var.
struct TermVector {
  int arity = 0;
  std::vector<Term> terms;

  int dimension() const noexcept { return static_cast<int>(terms.size()); }
};

std::vector<LatticeElement> eval_vector(const TermVector& p,
                                        std::span<const LatticeElement> assignment);

/// Wire block: header "termvec k=<k> b=<b>", then one term per line.
std::string write_termvec(const TermVector& p);
TermVector parse_termvec(std::string_view text);

struct TermSizeParams {
  int min_nodes = 9;
  int max_nodes = 17;
  double join_bias = 0.5;  // probability that an internal node is a join
};

/// b seeded random k-ary terms. Node budgets are drawn uniformly in
/// [min_nodes, max_nodes] and rounded down to the nearest odd value (binary
/// trees have odd node counts); operators are drawn with join_bias, leaves
/// uniformly over x1..xk. Component i depends only on (seed, i).
///
/// When `master` is nonempty it must have k components; any term whose
/// value at `master` equals one of those components is redrawn, up to 1000
/// attempts per component, after which generation_error is raised.
TermVector random_term_vector(int b, int k, const TermSizeParams& size,
                              std::uint64_t seed,
                              std::span<const LatticeElement> master = {});

}  // namespace boolat
