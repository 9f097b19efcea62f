#include "boolat/term.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "boolat/rng.hpp"

namespace boolat {

namespace {
constexpr int kMaxVarIndex = 1'000'000;
constexpr int kMaxRandomNodes = 1'000'000;
constexpr int kRetryBudget = 1000;
constexpr std::uint64_t kTermStreamSalt = 0x7465726d'73616c74ULL;  // "termsalt"
}  // namespace

Term Term::var(int index) {
  if (index < 1) throw domain_error("variable index must be >= 1");
  if (index > kMaxVarIndex) throw domain_error("variable index too large");
  Term t;
  t.nodes_.push_back({Op::var, index});
  t.max_var_ = index;
  return t;
}

Term Term::combine(Op op, const Term& lhs, const Term& rhs) {
  Term t;
  t.nodes_.reserve(lhs.nodes_.size() + rhs.nodes_.size() + 1);
  t.nodes_.insert(t.nodes_.end(), lhs.nodes_.begin(), lhs.nodes_.end());
  t.nodes_.insert(t.nodes_.end(), rhs.nodes_.begin(), rhs.nodes_.end());
  t.nodes_.push_back({op, 0});
  t.max_var_ = std::max(lhs.max_var_, rhs.max_var_);
  return t;
}

Term Term::meet(const Term& lhs, const Term& rhs) { return combine(Op::meet, lhs, rhs); }
Term Term::join(const Term& lhs, const Term& rhs) { return combine(Op::join, lhs, rhs); }

LatticeElement Term::eval(std::span<const LatticeElement> assignment) const {
  if (max_var_ > static_cast<int>(assignment.size())) {
    throw domain_error("term uses x" + std::to_string(max_var_) +
                       " but the assignment has only " +
                       std::to_string(assignment.size()) + " components");
  }
  std::vector<LatticeElement> stack;
  for (const Node& node : nodes_) {
    if (node.op == Op::var) {
      stack.push_back(assignment[static_cast<std::size_t>(node.var - 1)]);
      continue;
    }
    LatticeElement rhs = std::move(stack.back());
    stack.pop_back();
    LatticeElement lhs = std::move(stack.back());
    stack.pop_back();
    stack.push_back(node.op == Op::meet ? boolat::meet(lhs, rhs) : boolat::join(lhs, rhs));
  }
  return stack.back();
}

std::uint64_t Term::eval_word(std::span<const std::uint64_t> assignment) const {
  if (max_var_ > static_cast<int>(assignment.size())) {
    throw domain_error("term uses x" + std::to_string(max_var_) +
                       " but the assignment has only " +
                       std::to_string(assignment.size()) + " components");
  }
  std::vector<std::uint64_t> stack;
  stack.reserve(16);
  for (const Node& node : nodes_) {
    if (node.op == Op::var) {
      stack.push_back(assignment[static_cast<std::size_t>(node.var - 1)]);
      continue;
    }
    std::uint64_t rhs = stack.back();
    stack.pop_back();
    std::uint64_t& lhs = stack.back();
    lhs = node.op == Op::meet ? (lhs & rhs) : (lhs | rhs);
  }
  return stack.back();
}

std::string Term::to_string() const {
  std::vector<std::string> stack;
  for (const Node& node : nodes_) {
    if (node.op == Op::var) {
      stack.push_back("x" + std::to_string(node.var));
      continue;
    }
    std::string rhs = std::move(stack.back());
    stack.pop_back();
    std::string lhs = std::move(stack.back());
    stack.pop_back();
    std::string s;
    s.reserve(lhs.size() + rhs.size() + 5);
    s += node.op == Op::meet ? "(& " : "(| ";
    s += lhs;
    s += ' ';
    s += rhs;
    s += ')';
    stack.push_back(std::move(s));
  }
  return stack.back();
}

Term Term::parse(std::string_view text) {
  struct Frame {
    Op op;
    int children = 0;
  };
  std::vector<Frame> frames;
  std::vector<Node> nodes;
  int max_var = 0;
  bool have_root = false;
  std::size_t i = 0;
  const std::size_t len = text.size();

  auto skip_ws = [&] {
    while (i < len && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  // Called after each completed subterm; closes any parent whose second
  // child just finished.
  auto completed = [&] {
    for (;;) {
      if (frames.empty()) {
        have_root = true;
        return;
      }
      Frame& f = frames.back();
      if (++f.children < 2) return;
      skip_ws();
      if (i >= len || text[i] != ')') throw parse_error("expected ')'", i);
      ++i;
      nodes.push_back({f.op, 0});
      frames.pop_back();
    }
  };

  for (;;) {
    skip_ws();
    if (i >= len) break;
    if (have_root) throw parse_error("unexpected trailing input", i);
    const char c = text[i];
    if (c == '(') {
      ++i;
      skip_ws();
      if (i >= len || (text[i] != '&' && text[i] != '|')) {
        throw parse_error("expected '&' or '|' after '('", i);
      }
      frames.push_back({text[i] == '&' ? Op::meet : Op::join, 0});
      ++i;
    } else if (c == 'x') {
      const std::size_t tok = i++;
      int v = 0;
      auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + len, v);
      if (ec != std::errc{} || ptr == text.data() + i) {
        throw parse_error("expected a variable index after 'x'", i);
      }
      i = static_cast<std::size_t>(ptr - text.data());
      if (v < 1) throw parse_error("variable index must be >= 1", tok);
      if (v > kMaxVarIndex) throw parse_error("variable index too large", tok);
      if (i < len && text[i] != ')' && text[i] != '(' &&
          !std::isspace(static_cast<unsigned char>(text[i]))) {
        throw parse_error("unexpected character after variable", i);
      }
      nodes.push_back({Op::var, v});
      max_var = std::max(max_var, v);
      completed();
    } else {
      throw parse_error(std::string("unexpected character '") + c + "'", i);
    }
  }
  if (!frames.empty()) throw parse_error("unexpected end of input", len);
  if (!have_root) throw parse_error("empty term", 0);

  Term t;
  t.nodes_ = std::move(nodes);
  t.max_var_ = max_var;
  return t;
}

std::vector<LatticeElement> eval_vector(const TermVector& p,
                                        std::span<const LatticeElement> assignment) {
  std::vector<LatticeElement> out;
  out.reserve(p.terms.size());
  for (const Term& t : p.terms) out.push_back(t.eval(assignment));
  return out;
}

std::string write_termvec(const TermVector& p) {
  std::string out = "termvec k=" + std::to_string(p.arity) +
                    " b=" + std::to_string(p.dimension()) + "\n";
  for (const Term& t : p.terms) {
    out += t.to_string();
    out += '\n';
  }
  return out;
}

namespace {

// Parses "<key>=<uint>" at text[i...], advancing i.
int parse_keyed_int(std::string_view text, std::size_t& i, std::string_view key) {
  if (text.substr(i, key.size()) != key) {
    throw parse_error("expected '" + std::string(key) + "'", i);
  }
  i += key.size();
  int v = 0;
  auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), v);
  if (ec != std::errc{} || ptr == text.data() + i) {
    throw parse_error("expected an integer after '" + std::string(key) + "'", i);
  }
  i = static_cast<std::size_t>(ptr - text.data());
  return v;
}

}  // namespace

TermVector parse_termvec(std::string_view text) {
  std::size_t i = 0;
  if (text.substr(0, 8) != "termvec ") throw parse_error("expected 'termvec' header", 0);
  i = 8;
  const int k = parse_keyed_int(text, i, "k=");
  if (i >= text.size() || text[i] != ' ') throw parse_error("expected ' b='", i);
  ++i;
  const int b = parse_keyed_int(text, i, "b=");
  if (k < 1 || b < 1) throw parse_error("termvec header requires k >= 1 and b >= 1", 0);
  if (i >= text.size() || text[i] != '\n') throw parse_error("expected newline after header", i);
  ++i;

  TermVector p;
  p.arity = k;
  p.terms.reserve(static_cast<std::size_t>(b));
  for (int line = 0; line < b; ++line) {
    std::size_t eol = text.find('\n', i);
    if (eol == std::string_view::npos) eol = text.size();
    if (i >= text.size()) throw parse_error("termvec block ends before term " + std::to_string(line + 1), i);
    Term t = [&] {
      try {
        return Term::parse(text.substr(i, eol - i));
      } catch (const parse_error& e) {
        throw parse_error("term " + std::to_string(line + 1) + ": " + e.what(),
                          i + e.position());
      }
    }();
    if (t.max_var() > k) {
      throw parse_error("term " + std::to_string(line + 1) + " uses x" +
                            std::to_string(t.max_var()) + " beyond declared arity k=" +
                            std::to_string(k),
                        i);
    }
    p.terms.push_back(std::move(t));
    i = eol < text.size() ? eol + 1 : eol;
  }
  while (i < text.size()) {
    if (!std::isspace(static_cast<unsigned char>(text[i]))) {
      throw parse_error("unexpected content after termvec block", i);
    }
    ++i;
  }
  return p;
}

namespace {

Term random_term(SplitMix64& rng, int k, double join_bias, int target_nodes) {
  if (target_nodes <= 1) return Term::var(1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(k))));
  const bool is_join = rng.next_double() < join_bias;
  const int rest = target_nodes - 1;  // even, >= 2; split into two odd parts
  const int left = 1 + 2 * static_cast<int>(rng.below(static_cast<std::uint64_t>(rest / 2)));
  Term lhs = random_term(rng, k, join_bias, left);
  Term rhs = random_term(rng, k, join_bias, rest - left);
  return is_join ? Term::join(lhs, rhs) : Term::meet(lhs, rhs);
}

}  // namespace

TermVector random_term_vector(int b, int k, const TermSizeParams& size, std::uint64_t seed,
                              std::span<const LatticeElement> master) {
  if (b < 1 || k < 1) throw domain_error("random_term_vector: b and k must be >= 1");
  if (size.min_nodes < 1 || size.max_nodes < size.min_nodes) {
    throw domain_error("random_term_vector: need 1 <= min_nodes <= max_nodes");
  }
  if (size.max_nodes > kMaxRandomNodes) {
    throw domain_error("random_term_vector: max_nodes too large");
  }
  if (size.join_bias < 0.0 || size.join_bias > 1.0) {
    throw domain_error("random_term_vector: join_bias must be in [0, 1]");
  }
  if (!master.empty() && static_cast<int>(master.size()) != k) {
    throw dimension_error("random_term_vector: master key dimension " +
                          std::to_string(master.size()) + " != arity " + std::to_string(k));
  }

  TermVector p;
  p.arity = k;
  p.terms.reserve(static_cast<std::size_t>(b));
  const std::uint64_t span_nodes =
      static_cast<std::uint64_t>(size.max_nodes - size.min_nodes) + 1;
  for (int comp = 0; comp < b; ++comp) {
    SplitMix64 rng(counter_word(seed, static_cast<std::uint64_t>(comp), kTermStreamSalt, 0));
    bool accepted = false;
    for (int attempt = 0; attempt < kRetryBudget && !accepted; ++attempt) {
      int target = size.min_nodes + static_cast<int>(rng.below(span_nodes));
      if (target % 2 == 0) target = std::max(1, target - 1);
      Term t = random_term(rng, k, size.join_bias, target);
      if (!master.empty()) {
        const LatticeElement value = t.eval(master);
        if (std::find(master.begin(), master.end(), value) != master.end()) continue;
      }
      p.terms.push_back(std::move(t));
      accepted = true;
    }
    if (!accepted) {
      throw generation_error(
          "random_term_vector: retry budget exhausted for component " +
          std::to_string(comp + 1) +
          " (the master key admits no admissible terms under the size budget)");
    }
  }
  return p;
}

}  // namespace boolat
