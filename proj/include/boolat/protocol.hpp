#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "boolat/element.hpp"
#include "boolat/genset.hpp"
#include "boolat/rng.hpp"
#include "boolat/term.hpp"

namespace boolat {

using Bytes = std::vector<std::uint8_t>;

/// Model parameters shared by both parties. Defaults are the working point
/// n=1000, k=50, b=100; the key stream then holds n*b = 100000 bits.
struct ProtocolParams {
  int n = 1000;
  int k = 50;
  int b = 100;
  TermSizeParams term_size{};
};

/// The long-lived secret: a generating vector of B_n. Validated on
/// construction so a non-generating tuple cannot be used as a key.
class MasterKey {
 public:
  explicit MasterKey(GeneratingVector h);

  const GeneratingVector& vec() const noexcept { return h_; }
  int n() const noexcept { return h_.n; }
  int k() const noexcept { return h_.dimension(); }

 private:
  GeneratingVector h_;
};

/// Draws seeded uniform vectors from B_n^k until one generates; fails after
/// a fixed budget (in particular whenever k < lasp(n)).
MasterKey random_master_key(int n, int k, std::uint64_t seed);

/// Session key u = p(h): the component values plus their packed bit form.
/// Packing is component-major, atom 1 first; bit f of the stream lives in
/// byte f/8 at bit position f%8. This order is the wire contract.
struct SessionKey {
  std::vector<LatticeElement> components;
  Bytes key_bytes;  // ceil(n*b/8) bytes, trailing padding bits zero

  std::uint64_t key_bits() const noexcept;
};

SessionKey derive_session_key(const TermVector& p, const MasterKey& h);

Bytes flatten_bits(std::span<const LatticeElement> components);
std::vector<LatticeElement> unflatten_bits(std::span<const std::uint8_t> bytes, int n, int b);

/// Remark-style chaff padding. Eligible bytes are 0..127; pad interleaves
/// exactly |y| false bytes (128 + a byte sampled from y, so the two byte
/// populations follow similar distributions) at seeded positions. strip
/// removes every byte >= 128; strip(pad(y, s)) == y for all seeds.
Bytes pad(std::span<const std::uint8_t> eligible, std::uint64_t seed);
Bytes strip(std::span<const std::uint8_t> padded);

/// Symmetric cipher interface keyed by the session-key bit stream. Only the
/// leading `key_bits` of `key_bytes` are usable key material.
class Cipher {
 public:
  virtual ~Cipher() = default;
  virtual Bytes encrypt(std::span<const std::uint8_t> key_bytes, std::uint64_t key_bits,
                        std::span<const std::uint8_t> plaintext) const = 0;
  virtual Bytes decrypt(std::span<const std::uint8_t> key_bytes, std::uint64_t key_bits,
                        std::span<const std::uint8_t> ciphertext) const = 0;
};

/// One-time-pad XOR over the key stream's initial segment. Throws
/// capacity_error when the input carries more bits than the key.
class VernamCipher final : public Cipher {
 public:
  Bytes encrypt(std::span<const std::uint8_t> key_bytes, std::uint64_t key_bits,
                std::span<const std::uint8_t> plaintext) const override;
  Bytes decrypt(std::span<const std::uint8_t> key_bytes, std::uint64_t key_bits,
                std::span<const std::uint8_t> ciphertext) const override;
};

const Cipher& vernam_cipher();

// --- wire framing ---------------------------------------------------------
//
// Frame layout, byte exact:
//   4-byte big-endian total length (bytes after this field)
//   1-byte kind: 0 = TermRequest, 1 = TermReply, 2 = CipherBundle
//   8-byte big-endian session id
//   payload:
//     TermRequest: empty
//     TermReply:   the termvec text block, UTF-8
//     CipherBundle: 4-byte big-endian block length, the termvec block,
//                   then raw ciphertext bytes

struct TermRequest {
  std::uint64_t session_id = 0;
};

struct TermReply {
  std::uint64_t session_id = 0;
  std::string term_block;  // serialized termvec; kept verbatim for bit-exact checks
};

struct CipherBundle {
  std::uint64_t session_id = 0;
  std::string term_block;
  Bytes ciphertext;
};

using ProtocolMessage = std::variant<TermRequest, TermReply, CipherBundle>;

Bytes encode_message(const ProtocolMessage& msg);
ProtocolMessage decode_message(std::span<const std::uint8_t> frame);

/// Bank-side check that a decrypted, stripped plaintext is meaningful.
/// Default: nonempty printable ASCII (32..126 plus tab and newline).
using ValidityPredicate = std::function<bool(std::span<const std::uint8_t>)>;
bool printable_ascii_validity(std::span<const std::uint8_t> plaintext);

/// The Bank: issues the per-session term vector (and nothing else may), and
/// accepts at most one bundle per session. A bundle whose term block is not
/// bit-identical to the issued one is rejected before any decryption.
class Bank {
 public:
  Bank(MasterKey h, ProtocolParams params, std::uint64_t seed,
       ValidityPredicate validity = printable_ascii_validity,
       const Cipher& cipher = vernam_cipher());

  TermReply issue_terms();

  struct ReceiveOutcome {
    enum class Status {
      accepted,
      unknown_session,
      session_closed,
      term_mismatch,
      oversized_ciphertext,
      invalid_plaintext,
    };
    Status status;
    Bytes plaintext;  // filled only when accepted
  };
  ReceiveOutcome receive(const CipherBundle& bundle);

  /// Authentication-only flow: compares a claimed u against p(h) for the
  /// session's own term vector. Consumes the session either way.
  bool verify_authentication(std::uint64_t session_id, std::span<const LatticeElement> u);

  const ProtocolParams& params() const noexcept { return params_; }

 private:
  struct Session {
    std::string term_block;
    TermVector terms;
    bool open = true;
  };

  MasterKey h_;
  ProtocolParams params_;
  std::uint64_t seed_;
  std::uint64_t session_counter_ = 0;
  ValidityPredicate validity_;
  const Cipher* cipher_;
  std::map<std::uint64_t, Session> sessions_;
};

/// Kati's side: turns a message into a padded, encrypted bundle under the
/// session key derived from the issued term vector.
class Kati {
 public:
  Kati(MasterKey h, std::uint64_t seed, const Cipher& cipher = vernam_cipher());

  /// Throws capacity_error when the message exceeds floor(n*b/16) bytes
  /// (padding doubles the length and the padded form may not outgrow the
  /// key stream).
  CipherBundle send(const TermReply& reply, std::span<const std::uint8_t> message);

  /// Authentication-only flow: the session key itself, to be sent in clear.
  std::vector<LatticeElement> authenticate(const TermReply& reply) const;

 private:
  MasterKey h_;
  SplitMix64 pad_rng_;
  const Cipher* cipher_;
};

// --- adversary harness -----------------------------------------------------

struct CapturedSession {
  std::uint64_t session_id = 0;
  std::string term_block;
  Bytes ciphertext;
  std::optional<Bytes> known_padded_plaintext;
};

/// Passive wire tap: decodes observed frames and groups them per session.
/// reveal_padded_plaintext models the known-plaintext scenario where the
/// adversary guesses (or knows) the padded clear text of a session.
class ChannelTap {
 public:
  void observe(std::span<const std::uint8_t> frame);
  void reveal_padded_plaintext(std::uint64_t session_id, Bytes padded_plaintext);

  std::span<const CapturedSession> sessions() const noexcept { return sessions_; }
  std::size_t frames_seen() const noexcept { return frames_; }

 private:
  CapturedSession& session_for(std::uint64_t session_id);

  std::vector<CapturedSession> sessions_;
  std::map<std::uint64_t, std::size_t> index_;
  std::size_t frames_ = 0;
};

/// Vernam key recovery from a known-plaintext capture: key bits are
/// ciphertext XOR padded plaintext. Complete only when the capture covers
/// all n*b key bits; returns nullopt otherwise.
std::optional<SessionKey> recover_session_key_vernam(const CapturedSession& captured,
                                                     int n, int b);

// --- in-process drivers (CLI demo and tamper suite) ------------------------

struct DemoResult {
  std::uint64_t session_id = 0;
  std::size_t request_frame_bytes = 0;
  std::size_t reply_frame_bytes = 0;
  std::size_t bundle_frame_bytes = 0;
  Bank::ReceiveOutcome::Status status = Bank::ReceiveOutcome::Status::accepted;
  bool roundtrip = false;  // received plaintext equals the sent message
  std::size_t sessions_captured = 0;
};

/// Runs one full exchange (request, reply, bundle, receive) through the
/// byte framing with a passive tap attached.
DemoResult run_demo(const ProtocolParams& params, std::uint64_t seed,
                    std::span<const std::uint8_t> message);

struct TamperReport {
  std::uint64_t trials = 0;
  std::uint64_t bank_rejected = 0;       // bundle refused by the bit-exact term check
  std::uint64_t malformed = 0;           // tampered block no longer parses/derives
  std::uint64_t key_unchanged = 0;       // tampered block still yields the same u
  std::uint64_t key_changed = 0;         // u' != u
  std::uint64_t plaintext_differs = 0;   // decrypting with u' changed the bytes
  std::uint64_t validity_rejected = 0;   // the default predicate flagged the result

  std::string to_line() const;
};

/// For each trial: a fresh session, a single bit flipped at a seeded
/// position of the serialized term block, the tampered bundle offered to
/// the Bank, and the XOR consequences measured offline. Whenever u' != u
/// the decrypted bytes provably differ (counted in plaintext_differs; the
/// acceptance suite asserts it equals key_changed). Validity detection is
/// reported, not asserted.
TamperReport run_tamper_suite(const ProtocolParams& params, std::uint64_t seed,
                              std::uint64_t trials,
                              std::span<const std::uint8_t> message);

}  // namespace boolat
