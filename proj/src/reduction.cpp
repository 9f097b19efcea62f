#include "boolat/reduction.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

namespace boolat {

namespace {

int var_r(int v) { return 3 * v - 2; }
int var_w(int v) { return 3 * v - 1; }
int var_g(int v) { return 3 * v; }

constexpr std::uint8_t kColorR = 1;
constexpr std::uint8_t kColorW = 2;
constexpr std::uint8_t kColorG = 4;

}  // namespace

Graph Graph::make(int t, std::vector<std::pair<int, int>> edges) {
  if (t < 1) throw domain_error("graph needs at least one vertex");
  for (auto& [i, j] : edges) {
    if (i == j) throw domain_error("self-loop at vertex " + std::to_string(i));
    if (i > j) std::swap(i, j);
    if (i < 1 || j > t) {
      throw domain_error("edge {" + std::to_string(i) + "," + std::to_string(j) +
                         "} outside vertices 1.." + std::to_string(t));
    }
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw domain_error("duplicate edge");
  }
  return Graph{t, std::move(edges)};
}

Graph Graph::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string tag;
  int t = 0;
  if (!(in >> tag >> t) || tag != "t") {
    throw parse_error("expected graph header 't <count>'", 0);
  }
  std::vector<std::pair<int, int>> edges;
  int i = 0;
  int j = 0;
  while (in >> tag) {
    if (tag != "e" || !(in >> i >> j)) {
      throw parse_error("expected edge line 'e <i> <j>'", 0);
    }
    edges.emplace_back(i, j);
  }
  return make(t, std::move(edges));
}

std::string Graph::to_text() const {
  std::string out = "t " + std::to_string(t) + "\n";
  for (const auto& [i, j] : edges) {
    out += "e " + std::to_string(i) + " " + std::to_string(j) + "\n";
  }
  return out;
}

std::string EquationSystem::to_text() const {
  std::string out = "eqsys n=" + std::to_string(n) + " k=" + std::to_string(k) +
                    " b=" + std::to_string(dimension()) + "\n";
  for (int i = 0; i < dimension(); ++i) {
    out += lhs.terms[static_cast<std::size_t>(i)].to_string();
    out += '\t';
    out += rhs[static_cast<std::size_t>(i)].to_hex();
    out += '\n';
  }
  return out;
}

EquationSystem EquationSystem::parse(std::string_view text) {
  std::size_t i = 0;
  auto keyed_int = [&](std::string_view key) {
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
  };
  if (text.substr(0, 6) != "eqsys ") throw parse_error("expected 'eqsys' header", 0);
  i = 6;
  const int n = keyed_int("n=");
  if (i >= text.size() || text[i] != ' ') throw parse_error("expected ' k='", i);
  ++i;
  const int k = keyed_int("k=");
  if (i >= text.size() || text[i] != ' ') throw parse_error("expected ' b='", i);
  ++i;
  const int b = keyed_int("b=");
  if (n < 1 || k < 1 || b < 1) {
    throw parse_error("eqsys header requires n, k, b >= 1", 0);
  }
  if (i >= text.size() || text[i] != '\n') throw parse_error("expected newline after header", i);
  ++i;

  EquationSystem sys;
  sys.n = n;
  sys.k = k;
  sys.lhs.arity = k;
  for (int line = 0; line < b; ++line) {
    if (i >= text.size()) {
      throw parse_error("eqsys block ends before equation " + std::to_string(line + 1), i);
    }
    std::size_t eol = text.find('\n', i);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view row = text.substr(i, eol - i);
    const std::size_t tab = row.find('\t');
    if (tab == std::string_view::npos) {
      throw parse_error("equation " + std::to_string(line + 1) + " is missing the tab separator", i);
    }
    Term term = [&] {
      try {
        return Term::parse(row.substr(0, tab));
      } catch (const parse_error& e) {
        throw parse_error("equation " + std::to_string(line + 1) + ": " + e.what(),
                          i + e.position());
      }
    }();
    if (term.max_var() > k) {
      throw parse_error("equation " + std::to_string(line + 1) + " uses x" +
                            std::to_string(term.max_var()) + " beyond declared k=" +
                            std::to_string(k),
                        i);
    }
    sys.lhs.terms.push_back(std::move(term));
    sys.rhs.push_back(LatticeElement::from_hex(n, row.substr(tab + 1)));
    i = eol < text.size() ? eol + 1 : eol;
  }
  while (i < text.size()) {
    if (!std::isspace(static_cast<unsigned char>(text[i]))) {
      throw parse_error("unexpected content after eqsys block", i);
    }
    ++i;
  }
  return sys;
}

std::string Coloring::to_string() const {
  std::string out;
  for (std::size_t v = 0; v < sets.size(); ++v) {
    if (v) out += ',';
    const std::uint8_t s = sets[v];
    if (s & kColorR) out += 'r';
    if (s & kColorW) out += 'w';
    if (s & kColorG) out += 'g';
    if (!(s & (kColorR | kColorW | kColorG))) out += '-';
  }
  return out;
}

bool is_valid_coloring(const Coloring& c, const Graph& g) {
  if (static_cast<int>(c.sets.size()) != g.t) return false;
  for (std::uint8_t s : c.sets) {
    if (s == 0 || s > 7) return false;
  }
  for (const auto& [i, j] : g.edges) {
    if (c.sets[static_cast<std::size_t>(i - 1)] & c.sets[static_cast<std::size_t>(j - 1)]) {
      return false;
    }
  }
  return true;
}

EquationSystem encode_3coloring(const Graph& g, int n) {
  if (n < 1) throw domain_error("encode_3coloring: width must be >= 1");
  auto vertex_has_color = [](int v) {
    return Term::join(Term::join(Term::var(var_r(v)), Term::var(var_w(v))),
                      Term::var(var_g(v)));
  };
  auto edge_conflict = [](int i, int j) {
    return Term::join(
        Term::join(Term::meet(Term::var(var_r(i)), Term::var(var_r(j))),
                   Term::meet(Term::var(var_w(i)), Term::var(var_w(j)))),
        Term::meet(Term::var(var_g(i)), Term::var(var_g(j))));
  };

  Term all_colored = vertex_has_color(1);
  for (int v = 2; v <= g.t; ++v) all_colored = Term::meet(all_colored, vertex_has_color(v));

  Term any_conflict = [&] {
    if (g.edges.empty()) {
      // Padding keeps b >= 2 on edgeless graphs; satisfied by every
      // single-color assignment and excludes no colorable instance.
      return Term::meet(Term::meet(Term::var(var_r(1)), Term::var(var_w(1))),
                        Term::var(var_g(1)));
    }
    Term acc = edge_conflict(g.edges[0].first, g.edges[0].second);
    for (std::size_t e = 1; e < g.edges.size(); ++e) {
      acc = Term::join(acc, edge_conflict(g.edges[e].first, g.edges[e].second));
    }
    return acc;
  }();

  EquationSystem sys;
  sys.n = n;
  sys.k = 3 * g.t;
  sys.lhs.arity = sys.k;
  const int b = std::max(g.t, 2);
  sys.lhs.terms.push_back(std::move(all_colored));
  sys.rhs.push_back(LatticeElement::top(n));
  for (int m = 2; m <= b; ++m) {
    sys.lhs.terms.push_back(any_conflict);
    sys.rhs.push_back(LatticeElement::bottom(n));
  }
  return sys;
}

std::optional<std::vector<LatticeElement>> solve_system(const EquationSystem& sys) {
  if (sys.n < 1 || sys.k < 1) throw domain_error("solve_system: n and k must be >= 1");
  if (sys.dimension() < 1) throw domain_error("solve_system: empty system");
  if (sys.lhs.dimension() != sys.dimension()) {
    throw dimension_error("solve_system: lhs/rhs dimension mismatch");
  }
  const long long bits = static_cast<long long>(sys.n) * sys.k;
  if (bits > 24) {
    throw capacity_error("solve_system: n*k = " + std::to_string(bits) +
                         " exceeds the 24-bit enumeration guard");
  }
  for (const auto& r : sys.rhs) {
    if (r.width() != sys.n) throw dimension_error("solve_system: rhs width mismatch");
  }
  for (const auto& t : sys.lhs.terms) {
    if (t.max_var() > sys.k) throw domain_error("solve_system: term exceeds arity k");
  }

  const int n = sys.n;
  const int k = sys.k;
  const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
  std::vector<std::uint64_t> rhs_masks;
  rhs_masks.reserve(sys.rhs.size());
  for (const auto& r : sys.rhs) rhs_masks.push_back(r.words()[0]);

  std::vector<std::uint64_t> assignment(static_cast<std::size_t>(k));
  const std::uint64_t total = std::uint64_t{1} << bits;
  for (std::uint64_t counter = 0; counter < total; ++counter) {
    // Counter bit (bits-1-f) holds flattened assignment bit f, so ascending
    // counters enumerate assignments in lexicographic bit order.
    for (int c = 0; c < k; ++c) {
      std::uint64_t value = 0;
      for (int a = 0; a < n; ++a) {
        const int f = c * n + a;
        value |= ((counter >> (bits - 1 - f)) & 1) << a;
      }
      assignment[static_cast<std::size_t>(c)] = value & mask;
    }
    bool ok = true;
    for (int e = 0; e < sys.dimension() && ok; ++e) {
      ok = sys.lhs.terms[static_cast<std::size_t>(e)].eval_word(assignment) ==
           rhs_masks[static_cast<std::size_t>(e)];
    }
    if (ok) {
      std::vector<LatticeElement> out;
      out.reserve(static_cast<std::size_t>(k));
      for (std::uint64_t v : assignment) out.push_back(LatticeElement::from_words(n, {v}));
      return out;
    }
  }
  return std::nullopt;
}

namespace {

bool satisfies(const EquationSystem& sys, std::span<const LatticeElement> solution) {
  if (static_cast<int>(solution.size()) != sys.k) return false;
  for (int e = 0; e < sys.dimension(); ++e) {
    if (sys.lhs.terms[static_cast<std::size_t>(e)].eval(solution) !=
        sys.rhs[static_cast<std::size_t>(e)]) {
      return false;
    }
  }
  return true;
}

}  // namespace

Coloring decode_coloring(const EquationSystem& sys,
                         std::span<const LatticeElement> solution, const Graph& g) {
  if (sys.k != 3 * g.t) {
    throw dimension_error("decode_coloring: system arity does not match the graph");
  }
  if (!satisfies(sys, solution)) {
    throw domain_error("decode_coloring: the assignment does not satisfy the system");
  }
  const LatticeElement e = LatticeElement::atom(sys.n, 1);
  Coloring c;
  c.sets.resize(static_cast<std::size_t>(g.t), 0);
  for (int v = 1; v <= g.t; ++v) {
    std::uint8_t s = 0;
    if (leq(e, solution[static_cast<std::size_t>(var_r(v) - 1)])) s |= kColorR;
    if (leq(e, solution[static_cast<std::size_t>(var_w(v) - 1)])) s |= kColorW;
    if (leq(e, solution[static_cast<std::size_t>(var_g(v) - 1)])) s |= kColorG;
    c.sets[static_cast<std::size_t>(v - 1)] = s;
  }
  return c;
}

std::vector<LatticeElement> coloring_to_solution(const Coloring& c, const Graph& g, int n) {
  if (n < 1) throw domain_error("coloring_to_solution: width must be >= 1");
  if (!is_valid_coloring(c, g)) {
    throw domain_error("coloring_to_solution: not a valid coloring of the graph");
  }
  std::vector<std::uint8_t> sets = c.sets;
  if (g.edges.empty()) {
    // Narrow to the first color so the padding equation r1 & w1 & g1 = 0
    // holds; colors stay legal because subsets of disjoint sets are disjoint.
    for (auto& s : sets) s &= static_cast<std::uint8_t>(-s);  // lowest set bit
  }
  const LatticeElement one = LatticeElement::top(n);
  const LatticeElement zero = LatticeElement::bottom(n);
  std::vector<LatticeElement> out;
  out.reserve(static_cast<std::size_t>(3 * g.t));
  for (int v = 1; v <= g.t; ++v) {
    const std::uint8_t s = sets[static_cast<std::size_t>(v - 1)];
    out.push_back(s & kColorR ? one : zero);
    out.push_back(s & kColorW ? one : zero);
    out.push_back(s & kColorG ? one : zero);
  }
  return out;
}

std::optional<Coloring> is_3colorable_oracle(const Graph& g) {
  if (g.t > 12) {
    throw capacity_error("is_3colorable_oracle: t = " + std::to_string(g.t) +
                         " exceeds the 3^t guard (t <= 12)");
  }
  std::vector<std::uint8_t> color(static_cast<std::size_t>(g.t), 0);  // 0, 1, 2
  for (;;) {
    bool ok = true;
    for (const auto& [i, j] : g.edges) {
      if (color[static_cast<std::size_t>(i - 1)] == color[static_cast<std::size_t>(j - 1)]) {
        ok = false;
        break;
      }
    }
    if (ok) {
      Coloring c;
      c.sets.reserve(color.size());
      for (std::uint8_t v : color) c.sets.push_back(static_cast<std::uint8_t>(1u << v));
      return c;
    }
    int pos = 0;
    while (pos < g.t && color[static_cast<std::size_t>(pos)] == 2) {
      color[static_cast<std::size_t>(pos)] = 0;
      ++pos;
    }
    if (pos == g.t) return std::nullopt;
    ++color[static_cast<std::size_t>(pos)];
  }
}

}  // namespace boolat
