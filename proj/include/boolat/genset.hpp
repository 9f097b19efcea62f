#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "boolat/element.hpp"

namespace boolat {

/// Ordered tuple of B_n elements. Duplicate components are allowed; the set
/// of components is what generates (or fails to).
struct GeneratingVector {
  int n = 0;
  std::vector<LatticeElement> components;

  int dimension() const noexcept { return static_cast<int>(components.size()); }
};

/// Atom-meet criterion: true iff for every atom a of B_n the meet of the
/// components lying above a equals a (the empty meet counts as top, which
/// fails for n >= 2). For n >= 2 this is equivalent to the component set
/// generating B_n as a sublattice under binary meet and join.
///
/// Requires n >= 2 and a nonempty g of width-n elements.
bool is_generating(std::span<const LatticeElement> g, int n);

/// The sublattice generated by g: iterate pairwise meets and joins to a
/// fixed point. Independent of is_generating by construction; the two are
/// cross-checked in the test suite. Result sorted in canonical element
/// order. Guarded to n <= 16 since the closure may hold 2^n elements.
std::vector<LatticeElement> closure_oracle(std::span<const LatticeElement> g, int n);

/// First `count` subsets of {1..k} of size floor(k/2), in lexicographic
/// order, as bit masks (member j of {1..k} = bit j-1). Distinct equal-size
/// subsets, hence pairwise incomparable. Requires count <= sp(k), k <= 64.
std::vector<std::uint64_t> sperner_antichain_prefix(int k, std::uint64_t count);

/// A minimum generating vector of B_n, dimension lasp(n). The antichain rows
/// H_1..H_n are the lexicographic prefix above, identified with atoms 1..n;
/// component j collects the atoms whose row contains j. Requires n >= 2.
GeneratingVector construct_genset(int n);

/// Least k such that some k-subset of B_n passes is_generating, found by
/// exhaustive search over element combinations in lexicographic order with
/// early exit. Desk-scale verification oracle; 2 <= n <= 8.
int min_genset_size_bruteforce(int n);

struct SampleReport {
  int n = 0;
  int k = 0;
  std::uint64_t trials = 0;
  std::uint64_t generating_count = 0;
  std::uint64_t seed = 0;
  double elapsed_seconds = 0.0;

  /// "n=<n> k=<k> tested=<T> generating=<G> seed=<S> seconds=<t>"
  std::string to_line() const;
};

/// The deterministic per-trial draw used by the sampler: component c's word
/// w is counter_word(seed, trial, c, w), masked to n bits. Every bit is an
/// independent fair coin, so the vector is uniform over B_n^k.
std::vector<LatticeElement> sample_vector(int n, int k, std::uint64_t seed,
                                          std::uint64_t trial);

/// Draws `trials` vectors uniformly from B_n^k and counts those passing
/// is_generating. The count depends only on (n, k, trials, seed); `workers`
/// only partitions the trial range across threads.
SampleReport sample_generating_vectors(int n, int k, std::uint64_t trials,
                                       std::uint64_t seed, int workers = 1);

}  // namespace boolat
