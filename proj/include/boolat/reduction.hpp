#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "boolat/element.hpp"
#include "boolat/term.hpp"

namespace boolat {

/// Finite simple graph on vertices 1..t. Edges are stored as ordered pairs
/// (i, j) with i < j, sorted, without duplicates.
///
/// Text format: a line "t <count>", then one "e <i> <j>" line per edge.
struct Graph {
  int t = 0;
  std::vector<std::pair<int, int>> edges;

  static Graph make(int t, std::vector<std::pair<int, int>> edges);
  static Graph parse(std::string_view text);
  std::string to_text() const;
};

/// b equations p_i(x) = u_i over B_n with constant-free left sides.
///
/// Text format: header "eqsys n=<n> k=<k> b=<b>", then per equation the term
/// s-expression, a tab, and the right-hand side as a hex element.
struct EquationSystem {
  int n = 0;
  int k = 0;
  TermVector lhs;
  std::vector<LatticeElement> rhs;

  int dimension() const noexcept { return static_cast<int>(rhs.size()); }
  std::string to_text() const;
  static EquationSystem parse(std::string_view text);
};

/// Color sets per vertex: bit 0 = r, bit 1 = w, bit 2 = g. A valid coloring
/// has every set nonempty and endpoint sets disjoint along each edge.
struct Coloring {
  std::vector<std::uint8_t> sets;  // sets[v-1] for vertex v

  std::string to_string() const;  // per-vertex subsets like "r,w,rg"
};

bool is_valid_coloring(const Coloring& c, const Graph& g);

/// The 3-colorability encoding: k = 3t variables ordered
/// (r_1, w_1, g_1, ..., r_t, w_t, g_t) and b = max(t, 2) equations.
/// Equation 1 requires every vertex to see a color (meet of all
/// r_v | w_v | g_v, = top); equations 2..b all repeat the edge-conflict term
/// (join over edges of (r_i & r_j) | (w_i & w_j) | (g_i & g_j), = bottom).
/// Edgeless graphs get the padding term r_1 & w_1 & g_1 = bottom instead,
/// which every single-color assignment satisfies.
EquationSystem encode_3coloring(const Graph& g, int n);

/// Exhaustive search over B_n^k in lexicographic bit order (component-major,
/// atom 1 first, earlier bits more significant). Returns the least solution,
/// or nullopt when provably unsolvable. Answers both the construction and
/// the decision problem; guarded to n*k <= 24.
std::optional<std::vector<LatticeElement>> solve_system(const EquationSystem& sys);

/// Reads a coloring off a solution through the join-prime atom e = atom 1:
/// color r is in C_v exactly when e <= r_v, and so on. The solution must
/// satisfy the system.
Coloring decode_coloring(const EquationSystem& sys,
                         std::span<const LatticeElement> solution, const Graph& g);

/// The forward map: a valid coloring becomes the 0/1 assignment with
/// r_v = top iff r is in C_v. For edgeless graphs each color set is first
/// narrowed to its first color in (r, w, g) order so the padding equation
/// holds for every valid coloring.
std::vector<LatticeElement> coloring_to_solution(const Coloring& c, const Graph& g, int n);

/// Ground-truth 3-colorability by exhaustive single-color assignment over
/// 3^t; returns a witness coloring when one exists. Guarded to t <= 12.
std::optional<Coloring> is_3colorable_oracle(const Graph& g);

}  // namespace boolat
