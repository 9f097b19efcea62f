#include "boolat/genset.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <numeric>
#include <thread>

#include "boolat/rng.hpp"
#include "boolat/sperner.hpp"

namespace boolat {

namespace {

// Shared core of the atom-meet criterion over k packed rows of `words`
// 64-bit words each. `top` holds the all-ones pattern of width n and `acc`
// is reusable scratch, both `words` long.
bool generates_rows(const std::uint64_t* rows, int k, int n, int words,
                    const std::uint64_t* top, std::uint64_t* acc) {
  for (int a = 0; a < n; ++a) {
    const int aw = a >> 6;
    const std::uint64_t abit = std::uint64_t{1} << (a & 63);
    std::memcpy(acc, top, sizeof(std::uint64_t) * static_cast<std::size_t>(words));
    const std::uint64_t* row = rows;
    for (int c = 0; c < k; ++c, row += words) {
      if (row[aw] & abit) {
        for (int j = 0; j < words; ++j) acc[j] &= row[j];
      }
    }
    // The filter meet contains atom a whenever the filter is nonempty, and
    // equals top otherwise; popcount 1 is exactly "meet == atom a".
    int pc = 0;
    for (int j = 0; j < words; ++j) pc += std::popcount(acc[j]);
    if (pc != 1) return false;
  }
  return true;
}

std::vector<std::uint64_t> top_words(int n) {
  std::vector<std::uint64_t> t(static_cast<std::size_t>(words_for_width(n)),
                               ~std::uint64_t{0});
  if (n % 64 != 0) t.back() = (std::uint64_t{1} << (n % 64)) - 1;
  return t;
}

void check_genset_inputs(std::span<const LatticeElement> g, int n) {
  if (n < 2) {
    throw domain_error(
        "generation is only defined for width n >= 2 (B_1 has no generating "
        "set under binary meet/join)");
  }
  if (g.empty()) throw domain_error("is_generating: the candidate set is empty");
  for (const auto& e : g) {
    if (e.width() != n) {
      throw dimension_error("element width " + std::to_string(e.width()) +
                            " does not match lattice width " + std::to_string(n));
    }
  }
}

}  // namespace

bool is_generating(std::span<const LatticeElement> g, int n) {
  check_genset_inputs(g, n);
  const int words = words_for_width(n);
  const int k = static_cast<int>(g.size());
  std::vector<std::uint64_t> rows(static_cast<std::size_t>(k) * words);
  for (int c = 0; c < k; ++c) {
    std::copy(g[c].words().begin(), g[c].words().end(), rows.begin() + c * words);
  }
  const auto top = top_words(n);
  std::vector<std::uint64_t> acc(static_cast<std::size_t>(words));
  return generates_rows(rows.data(), k, n, words, top.data(), acc.data());
}

std::vector<LatticeElement> closure_oracle(std::span<const LatticeElement> g, int n) {
  if (n < 1) throw domain_error("closure_oracle: width must be >= 1");
  if (n > 16) {
    throw capacity_error("closure_oracle: width " + std::to_string(n) +
                         " exceeds the 16-atom guard (closure may hold 2^n elements)");
  }
  for (const auto& e : g) {
    if (e.width() != n) throw dimension_error("closure_oracle: width mismatch");
  }
  std::vector<bool> seen(std::size_t{1} << n, false);
  std::vector<std::uint32_t> work;
  for (const auto& e : g) {
    auto m = static_cast<std::uint32_t>(e.words()[0]);
    if (!seen[m]) {
      seen[m] = true;
      work.push_back(m);
    }
  }
  // Pair every element with all elements on or before it, including itself;
  // newly appended values get paired in later iterations.
  for (std::size_t i = 0; i < work.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      for (std::uint32_t v : {static_cast<std::uint32_t>(work[i] & work[j]),
                              static_cast<std::uint32_t>(work[i] | work[j])}) {
        if (!seen[v]) {
          seen[v] = true;
          work.push_back(v);
        }
      }
    }
  }
  std::sort(work.begin(), work.end());
  std::vector<LatticeElement> out;
  out.reserve(work.size());
  for (std::uint32_t m : work) {
    out.push_back(LatticeElement::from_words(n, {static_cast<std::uint64_t>(m)}));
  }
  return out;
}

std::vector<std::uint64_t> sperner_antichain_prefix(int k, std::uint64_t count) {
  if (k < 1 || k > 64) throw domain_error("sperner_antichain_prefix: k must be in 1..64");
  if (BigInt(count) > sp(static_cast<unsigned>(k))) {
    throw domain_error("sperner_antichain_prefix: count exceeds sp(k)");
  }
  const int m = k / 2;
  std::vector<std::uint64_t> out;
  out.reserve(static_cast<std::size_t>(count));
  if (count == 0) return out;
  std::vector<int> c(static_cast<std::size_t>(m));
  std::iota(c.begin(), c.end(), 0);  // 0-based member positions
  for (;;) {
    std::uint64_t mask = 0;
    for (int pos : c) mask |= std::uint64_t{1} << pos;
    out.push_back(mask);
    if (out.size() == count) break;
    int i = m - 1;
    while (i >= 0 && c[i] == k - m + i) --i;
    ++c[i];  // i >= 0 guaranteed: count <= sp(k) leaves a successor
    for (int j = i + 1; j < m; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

GeneratingVector construct_genset(int n) {
  if (n < 2) {
    throw domain_error("construct_genset: requires width n >= 2");
  }
  const int k = static_cast<int>(lasp(BigInt(n)));
  const auto rows = sperner_antichain_prefix(k, static_cast<std::uint64_t>(n));
  const int words = words_for_width(n);
  GeneratingVector g;
  g.n = n;
  g.components.reserve(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    std::vector<std::uint64_t> w(static_cast<std::size_t>(words), 0);
    for (int i = 0; i < n; ++i) {
      if (rows[static_cast<std::size_t>(i)] >> j & 1) {
        w[i / 64] |= std::uint64_t{1} << (i % 64);
      }
    }
    g.components.push_back(LatticeElement::from_words(n, std::move(w)));
  }
  return g;
}

int min_genset_size_bruteforce(int n) {
  if (n < 2 || n > 8) {
    throw capacity_error("min_genset_size_bruteforce: n must be in 2..8 (search is C(2^n, k))");
  }
  const std::uint32_t total = std::uint32_t{1} << n;
  const auto top = top_words(n);
  std::uint64_t acc = 0;
  for (int k = 1; k <= n; ++k) {  // the atoms generate, so k = n always succeeds
    std::vector<std::uint32_t> c(static_cast<std::size_t>(k));
    std::iota(c.begin(), c.end(), 0);
    std::vector<std::uint64_t> cand(static_cast<std::size_t>(k));
    for (;;) {
      for (int i = 0; i < k; ++i) cand[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(i)];
      if (generates_rows(cand.data(), k, n, 1, top.data(), &acc)) return k;
      int i = k - 1;
      while (i >= 0 && c[static_cast<std::size_t>(i)] == total - static_cast<std::uint32_t>(k - i)) --i;
      if (i < 0) break;
      ++c[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < k; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  throw std::logic_error("min_genset_size_bruteforce: unreachable");
}

std::string SampleReport::to_line() const {
  char buf[192];
  std::snprintf(buf, sizeof(buf),
                "n=%d k=%d tested=%llu generating=%llu seed=%llu seconds=%.3f", n, k,
                static_cast<unsigned long long>(trials),
                static_cast<unsigned long long>(generating_count),
                static_cast<unsigned long long>(seed), elapsed_seconds);
  return buf;
}

std::vector<LatticeElement> sample_vector(int n, int k, std::uint64_t seed,
                                          std::uint64_t trial) {
  if (n < 1 || k < 1) throw domain_error("sample_vector: n and k must be >= 1");
  const int words = words_for_width(n);
  const std::uint64_t tail =
      n % 64 == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << (n % 64)) - 1;
  std::vector<LatticeElement> out;
  out.reserve(static_cast<std::size_t>(k));
  for (int c = 0; c < k; ++c) {
    std::vector<std::uint64_t> w(static_cast<std::size_t>(words));
    for (int j = 0; j < words; ++j) {
      w[static_cast<std::size_t>(j)] = counter_word(seed, trial, static_cast<std::uint64_t>(c),
                                                    static_cast<std::uint64_t>(j));
    }
    w.back() &= tail;
    out.push_back(LatticeElement::from_words(n, std::move(w)));
  }
  return out;
}

SampleReport sample_generating_vectors(int n, int k, std::uint64_t trials,
                                       std::uint64_t seed, int workers) {
  if (n < 2) throw domain_error("sample_generating_vectors: requires n >= 2");
  if (k < 1) throw domain_error("sample_generating_vectors: requires k >= 1");
  if (trials < 1) throw domain_error("sample_generating_vectors: requires trials >= 1");
  if (workers < 1) throw domain_error("sample_generating_vectors: requires workers >= 1");

  const auto t0 = std::chrono::steady_clock::now();
  const int words = words_for_width(n);
  const std::uint64_t tail =
      n % 64 == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << (n % 64)) - 1;
  const auto top = top_words(n);

  const std::uint64_t nthreads = std::min<std::uint64_t>(static_cast<std::uint64_t>(workers), trials);
  std::vector<std::uint64_t> counts(nthreads, 0);
  auto run = [&](std::uint64_t w) {
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(k) * words);
    std::vector<std::uint64_t> acc(static_cast<std::size_t>(words));
    std::uint64_t local = 0;
    // Derivation depends only on (seed, trial, component, word), so the
    // strided partition cannot change the total.
    for (std::uint64_t t = w; t < trials; t += nthreads) {
      for (int c = 0; c < k; ++c) {
        std::uint64_t* row = rows.data() + static_cast<std::size_t>(c) * words;
        for (int j = 0; j < words; ++j) {
          row[j] = counter_word(seed, t, static_cast<std::uint64_t>(c),
                                static_cast<std::uint64_t>(j));
        }
        row[words - 1] &= tail;
      }
      if (generates_rows(rows.data(), k, n, words, top.data(), acc.data())) ++local;
    }
    counts[w] = local;
  };

  if (nthreads == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (std::uint64_t w = 0; w < nthreads; ++w) pool.emplace_back(run, w);
    for (auto& th : pool) th.join();
  }

  SampleReport report;
  report.n = n;
  report.k = k;
  report.trials = trials;
  report.generating_count = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  report.seed = seed;
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

}  // namespace boolat
