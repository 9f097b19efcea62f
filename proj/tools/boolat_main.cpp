// boolat: Boolean lattice generating sets, session-key exchange, and the
// 3-coloring equation reduction, exposed as seeded deterministic subcommands.
// Machine-readable output goes to stdout; prose and warnings go to stderr.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "boolat/element.hpp"
#include "boolat/genset.hpp"
#include "boolat/protocol.hpp"
#include "boolat/reduction.hpp"
#include "boolat/rng.hpp"
#include "boolat/sperner.hpp"
#include "boolat/term.hpp"

namespace {

std::vector<boolat::LatticeElement> parse_elems(int n, const std::string& csv) {
  std::vector<boolat::LatticeElement> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    out.push_back(boolat::LatticeElement::from_hex(n, tok));
  }
  if (out.empty()) throw boolat::domain_error("--elems: expected at least one hex element");
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw boolat::domain_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

boolat::BigInt parse_bigint(const std::string& text) {
  if (text.empty()) throw boolat::domain_error("expected a decimal integer");
  for (char c : text) {
    if (c < '0' || c > '9') {
      throw boolat::domain_error("expected a decimal integer, got '" + text + "'");
    }
  }
  return boolat::BigInt(text);
}

const char* status_name(boolat::Bank::ReceiveOutcome::Status s) {
  using Status = boolat::Bank::ReceiveOutcome::Status;
  switch (s) {
    case Status::accepted: return "accepted";
    case Status::unknown_session: return "unknown_session";
    case Status::session_closed: return "session_closed";
    case Status::term_mismatch: return "term_mismatch";
    case Status::oversized_ciphertext: return "oversized_ciphertext";
    case Status::invalid_plaintext: return "invalid_plaintext";
  }
  return "unknown";
}

void warn_if_small(int n, int b) {
  if (static_cast<long long>(n) * b < 5000) {
    std::cerr << "warning: n*b = " << static_cast<long long>(n) * b
              << " key bits is small; guessing attacks on the ciphertext succeed "
                 "with non-negligible probability\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boolean lattice generating sets, session-key exchange, 3-coloring reduction"};
  app.require_subcommand(1);

  // ---- sp / lasp ----
  auto* sp_cmd = app.add_subcommand("sp", "C(k, floor(k/2)), the largest antichain size of B_k");
  unsigned sp_k = 0;
  sp_cmd->add_option("--k", sp_k, "k >= 1")->required();
  sp_cmd->callback([&] { std::cout << boolat::sp(sp_k) << "\n"; });

  auto* lasp_cmd = app.add_subcommand("lasp", "least k with n <= sp(k); minimum generating-set size of B_n");
  std::string lasp_n;
  lasp_cmd->add_option("--n", lasp_n, "n >= 1 (decimal, arbitrary size)")->required();
  lasp_cmd->callback([&] { std::cout << boolat::lasp(parse_bigint(lasp_n)) << "\n"; });

  // ---- genset ----
  auto* genset_cmd = app.add_subcommand("genset", "generating sets of B_n");
  genset_cmd->require_subcommand(1);
  struct {
    int n = 0;
    int k = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    int workers = 1;
    std::string elems;
  } gs;

  auto* gs_check = genset_cmd->add_subcommand("check", "test a set with the atom-meet criterion");
  gs_check->add_option("--n", gs.n, "lattice width")->required();
  gs_check->add_option("--elems", gs.elems, "comma-separated hex elements")->required();
  gs_check->callback([&] {
    const auto g = parse_elems(gs.n, gs.elems);
    std::cout << "generating=" << (boolat::is_generating(g, gs.n) ? "true" : "false") << "\n";
  });

  auto* gs_construct = genset_cmd->add_subcommand("construct", "minimum generating vector of B_n");
  gs_construct->add_option("--n", gs.n, "lattice width, n >= 2")->required();
  gs_construct->callback([&] {
    const auto g = boolat::construct_genset(gs.n);
    std::cout << "genvec n=" << g.n << " k=" << g.dimension() << "\n";
    for (const auto& e : g.components) std::cout << e.to_hex() << "\n";
  });

  auto* gs_minsearch = genset_cmd->add_subcommand("minsearch", "exhaustive minimum generating-set size, 2 <= n <= 8");
  gs_minsearch->add_option("--n", gs.n, "lattice width")->required();
  gs_minsearch->callback([&] {
    std::cout << "n=" << gs.n << " min=" << boolat::min_genset_size_bruteforce(gs.n) << "\n";
  });

  auto* gs_sample = genset_cmd->add_subcommand("sample", "count generating vectors among uniform draws from B_n^k");
  gs_sample->add_option("--n", gs.n, "lattice width")->required();
  gs_sample->add_option("--k", gs.k, "vector dimension")->required();
  gs_sample->add_option("--trials", gs.trials, "number of draws")->required();
  gs_sample->add_option("--seed", gs.seed, "RNG seed")->required();
  gs_sample->add_option("--workers", gs.workers, "worker threads (does not affect counts)");
  gs_sample->callback([&] {
    const auto report =
        boolat::sample_generating_vectors(gs.n, gs.k, gs.trials, gs.seed, gs.workers);
    std::cout << report.to_line() << "\n";
  });

  // ---- term ----
  auto* term_cmd = app.add_subcommand("term", "constant-free lattice terms");
  term_cmd->require_subcommand(1);
  struct {
    int n = 0;
    int b = 0;
    int k = 0;
    std::uint64_t seed = 0;
    int min_nodes = 9;
    int max_nodes = 17;
    double join_bias = 0.5;
    std::string term;
    std::string elems;
    std::string master;
  } tm;

  auto* term_eval = term_cmd->add_subcommand("eval", "evaluate a term over B_n");
  term_eval->add_option("--n", tm.n, "lattice width")->required();
  term_eval->add_option("--term", tm.term, "s-expression, e.g. \"(& x1 (| x2 x3))\"")->required();
  term_eval->add_option("--elems", tm.elems, "assignment, comma-separated hex")->required();
  term_eval->callback([&] {
    const auto t = boolat::Term::parse(tm.term);
    const auto env = parse_elems(tm.n, tm.elems);
    std::cout << t.eval(env).to_hex() << "\n";
  });

  auto* term_random = term_cmd->add_subcommand("random", "seeded random term vector");
  term_random->add_option("--b", tm.b, "number of terms")->required();
  term_random->add_option("--k", tm.k, "variable count")->required();
  term_random->add_option("--seed", tm.seed, "RNG seed")->required();
  term_random->add_option("--min-nodes", tm.min_nodes, "minimum nodes per term");
  term_random->add_option("--max-nodes", tm.max_nodes, "maximum nodes per term");
  term_random->add_option("--join-bias", tm.join_bias, "probability of a join node");
  term_random->add_option("--n", tm.n, "lattice width for --master");
  term_random->add_option("--master", tm.master,
                          "comma-separated hex master key; rejects terms whose value at it "
                          "is one of its components");
  term_random->callback([&] {
    std::vector<boolat::LatticeElement> master;
    if (!tm.master.empty()) {
      if (tm.n < 1) throw boolat::domain_error("--master requires --n");
      master = parse_elems(tm.n, tm.master);
    }
    const auto p = boolat::random_term_vector(
        tm.b, tm.k, {tm.min_nodes, tm.max_nodes, tm.join_bias}, tm.seed, master);
    std::cout << boolat::write_termvec(p);
  });

  // ---- protocol ----
  auto* proto_cmd = app.add_subcommand("protocol", "session-key exchange simulation");
  proto_cmd->require_subcommand(1);
  struct {
    int n = 1000;
    int k = 50;
    int b = 100;
    std::uint64_t seed = 0;
    std::uint64_t trials = 1000;
    std::string message = "transfer 500 euros to the revenue account of the city";
    bool wrong_key = false;
  } pr;

  auto* proto_demo = proto_cmd->add_subcommand("demo", "one full exchange over the byte framing");
  proto_demo->add_option("--n", pr.n, "lattice width");
  proto_demo->add_option("--k", pr.k, "master key dimension");
  proto_demo->add_option("--b", pr.b, "terms per session");
  proto_demo->add_option("--seed", pr.seed, "RNG seed")->required();
  proto_demo->add_option("--message", pr.message, "plaintext to send");
  proto_demo->callback([&] {
    warn_if_small(pr.n, pr.b);
    const auto msg = std::span<const std::uint8_t>(
        reinterpret_cast<const std::uint8_t*>(pr.message.data()), pr.message.size());
    const auto result = boolat::run_demo({pr.n, pr.k, pr.b, {}}, pr.seed, msg);
    std::cout << "n=" << pr.n << " k=" << pr.k << " b=" << pr.b << " seed=" << pr.seed << "\n"
              << "session=" << result.session_id << " request_bytes=" << result.request_frame_bytes
              << " reply_bytes=" << result.reply_frame_bytes
              << " bundle_bytes=" << result.bundle_frame_bytes << "\n"
              << "status=" << status_name(result.status)
              << " roundtrip=" << (result.roundtrip ? "true" : "false")
              << " captured_sessions=" << result.sessions_captured << "\n";
  });

  auto* proto_tamper = proto_cmd->add_subcommand("tamper-test", "single-bit tamperings of the term block");
  proto_tamper->add_option("--n", pr.n, "lattice width");
  proto_tamper->add_option("--k", pr.k, "master key dimension");
  proto_tamper->add_option("--b", pr.b, "terms per session");
  proto_tamper->add_option("--trials", pr.trials, "tamper trials");
  proto_tamper->add_option("--seed", pr.seed, "RNG seed")->required();
  proto_tamper->add_option("--message", pr.message, "plaintext under test");
  proto_tamper->callback([&] {
    warn_if_small(pr.n, pr.b);
    const auto msg = std::span<const std::uint8_t>(
        reinterpret_cast<const std::uint8_t*>(pr.message.data()), pr.message.size());
    const auto report = boolat::run_tamper_suite({pr.n, pr.k, pr.b, {}}, pr.seed, pr.trials, msg);
    std::cout << report.to_line() << "\n";
  });

  auto* proto_auth = proto_cmd->add_subcommand("authenticate", "authentication-only flow: send p(h) in clear");
  proto_auth->add_option("--n", pr.n, "lattice width");
  proto_auth->add_option("--k", pr.k, "master key dimension");
  proto_auth->add_option("--b", pr.b, "terms per challenge");
  proto_auth->add_option("--seed", pr.seed, "RNG seed")->required();
  proto_auth->add_flag("--wrong-key", pr.wrong_key, "answer with a different master key");
  proto_auth->callback([&] {
    using boolat::counter_word;
    const auto master = boolat::random_master_key(pr.n, pr.k, counter_word(pr.seed, 1, 0, 0));
    boolat::Bank bank(master, {pr.n, pr.k, pr.b, {}}, counter_word(pr.seed, 2, 0, 0));
    const auto reply = bank.issue_terms();
    auto prover_key = master;
    if (pr.wrong_key) {
      prover_key = boolat::random_master_key(pr.n, pr.k, counter_word(pr.seed, 5, 0, 0));
    }
    boolat::Kati prover(prover_key, counter_word(pr.seed, 3, 0, 0));
    const auto u = prover.authenticate(reply);
    const bool ok = bank.verify_authentication(reply.session_id, u);
    std::cout << "session=" << reply.session_id << " accepted=" << (ok ? "true" : "false")
              << "\n";
  });

  // ---- reduce ----
  auto* reduce_cmd = app.add_subcommand("reduce", "3-coloring to lattice equations");
  reduce_cmd->require_subcommand(1);
  struct {
    std::string graph_file;
    std::string system_file;
    int n = 1;
  } rd;

  auto* rd_encode = reduce_cmd->add_subcommand("encode", "emit the equation system for a graph");
  rd_encode->add_option("--graph", rd.graph_file, "graph file: 't <count>' then 'e i j' lines")->required();
  rd_encode->add_option("--n", rd.n, "lattice width");
  rd_encode->callback([&] {
    const auto g = boolat::Graph::parse(read_file(rd.graph_file));
    std::cout << boolat::encode_3coloring(g, rd.n).to_text();
  });

  auto* rd_solve = reduce_cmd->add_subcommand("solve", "exhaustively solve an equation system");
  rd_solve->add_option("--system", rd.system_file, "eqsys file")->required();
  rd_solve->callback([&] {
    const auto sys = boolat::EquationSystem::parse(read_file(rd.system_file));
    const auto solution = boolat::solve_system(sys);
    if (!solution) {
      std::cout << "solvable=false\n";
      return;
    }
    std::cout << "solvable=true solution=";
    for (std::size_t i = 0; i < solution->size(); ++i) {
      if (i) std::cout << ',';
      std::cout << (*solution)[i].to_hex();
    }
    std::cout << "\n";
  });

  auto* rd_roundtrip = reduce_cmd->add_subcommand("roundtrip", "encode, solve, decode, and verify");
  rd_roundtrip->add_option("--graph", rd.graph_file, "graph file")->required();
  rd_roundtrip->add_option("--n", rd.n, "lattice width");
  rd_roundtrip->callback([&] {
    const auto g = boolat::Graph::parse(read_file(rd.graph_file));
    const auto sys = boolat::encode_3coloring(g, rd.n);
    const auto solution = boolat::solve_system(sys);
    if (!solution) {
      std::cout << "solvable=false";
      if (g.t <= 12) {
        const bool colorable = boolat::is_3colorable_oracle(g).has_value();
        std::cout << " oracle_agrees=" << (colorable ? "false" : "true");
      }
      std::cout << "\n";
      return;
    }
    const auto coloring = boolat::decode_coloring(sys, *solution, g);
    const auto back = boolat::coloring_to_solution(coloring, g, rd.n);
    bool verified = true;
    for (int e = 0; e < sys.dimension() && verified; ++e) {
      verified = sys.lhs.terms[static_cast<std::size_t>(e)].eval(back) ==
                 sys.rhs[static_cast<std::size_t>(e)];
    }
    std::cout << "solvable=true coloring=" << coloring.to_string()
              << " verified=" << (verified ? "true" : "false") << "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const boolat::capacity_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
