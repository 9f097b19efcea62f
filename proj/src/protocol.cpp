#include "boolat/protocol.hpp"

#include <algorithm>
#include <cstdio>
#include <cstring>

namespace boolat {

namespace {

constexpr std::uint64_t kMasterKeySalt = 0x6d61737465726b65ULL;   // "masterke"
constexpr std::uint64_t kSessionIdSalt = 0x73657373696f6e73ULL;   // "sessions"
constexpr std::uint64_t kTermSeedSalt = 0x7465726d7365656dULL;    // "termseed"
constexpr std::uint64_t kPadSalt = 0x70616464696e6773ULL;         // "paddings"
constexpr int kMasterKeyBudget = 10'000;

void put_u32be(Bytes& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

void put_u64be(Bytes& out, std::uint64_t v) {
  for (int s = 56; s >= 0; s -= 8) out.push_back(static_cast<std::uint8_t>(v >> s));
}

std::uint32_t get_u32be(std::span<const std::uint8_t> in, std::size_t at) {
  return (std::uint32_t{in[at]} << 24) | (std::uint32_t{in[at + 1]} << 16) |
         (std::uint32_t{in[at + 2]} << 8) | std::uint32_t{in[at + 3]};
}

std::uint64_t get_u64be(std::span<const std::uint8_t> in, std::size_t at) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v = (v << 8) | in[at + static_cast<std::size_t>(i)];
  return v;
}

}  // namespace

MasterKey::MasterKey(GeneratingVector h) : h_(std::move(h)) {
  // also enforces n >= 2, nonempty components and uniform widths
  if (!is_generating(h_.components, h_.n)) {
    throw domain_error("master key must be a generating vector of B_n");
  }
}

MasterKey random_master_key(int n, int k, std::uint64_t seed) {
  if (n < 2) throw domain_error("random_master_key: requires n >= 2");
  for (std::uint64_t trial = 0; trial < kMasterKeyBudget; ++trial) {
    auto components = sample_vector(n, k, counter_word(seed, kMasterKeySalt, 0, 0), trial);
    if (is_generating(components, n)) {
      return MasterKey(GeneratingVector{n, std::move(components)});
    }
  }
  throw generation_error("random_master_key: no generating vector found for n=" +
                         std::to_string(n) + ", k=" + std::to_string(k) +
                         " (is k >= lasp(n)?)");
}

std::uint64_t SessionKey::key_bits() const noexcept {
  if (components.empty()) return 0;
  return static_cast<std::uint64_t>(components.size()) *
         static_cast<std::uint64_t>(components.front().width());
}

Bytes flatten_bits(std::span<const LatticeElement> components) {
  if (components.empty()) return {};
  const int n = components.front().width();
  const std::uint64_t total_bits = static_cast<std::uint64_t>(components.size()) *
                                   static_cast<std::uint64_t>(n);
  Bytes out((total_bits + 7) / 8, 0);
  std::uint64_t f = 0;
  for (const auto& e : components) {
    if (e.width() != n) throw dimension_error("flatten_bits: mixed widths");
    for (int a = 0; a < n; ++a, ++f) {
      if ((e.words()[static_cast<std::size_t>(a / 64)] >> (a % 64)) & 1) {
        out[f / 8] |= static_cast<std::uint8_t>(1u << (f % 8));
      }
    }
  }
  return out;
}

std::vector<LatticeElement> unflatten_bits(std::span<const std::uint8_t> bytes, int n,
                                           int b) {
  if (n < 1 || b < 1) throw domain_error("unflatten_bits: n and b must be >= 1");
  const std::uint64_t total_bits = static_cast<std::uint64_t>(n) * b;
  if (bytes.size() * 8 < total_bits) {
    throw dimension_error("unflatten_bits: " + std::to_string(bytes.size()) +
                          " bytes cannot hold " + std::to_string(total_bits) + " bits");
  }
  std::vector<LatticeElement> out;
  out.reserve(static_cast<std::size_t>(b));
  std::uint64_t f = 0;
  for (int c = 0; c < b; ++c) {
    std::vector<std::uint64_t> w(static_cast<std::size_t>(words_for_width(n)), 0);
    for (int a = 0; a < n; ++a, ++f) {
      if ((bytes[f / 8] >> (f % 8)) & 1) {
        w[static_cast<std::size_t>(a / 64)] |= std::uint64_t{1} << (a % 64);
      }
    }
    out.push_back(LatticeElement::from_words(n, std::move(w)));
  }
  return out;
}

SessionKey derive_session_key(const TermVector& p, const MasterKey& h) {
  if (p.arity != h.k()) {
    throw dimension_error("term vector arity " + std::to_string(p.arity) +
                          " does not match master key dimension " + std::to_string(h.k()));
  }
  SessionKey key;
  key.components = eval_vector(p, h.vec().components);
  key.key_bytes = flatten_bits(key.components);
  return key;
}

Bytes pad(std::span<const std::uint8_t> eligible, std::uint64_t seed) {
  for (std::uint8_t c : eligible) {
    if (c > 127) {
      throw domain_error("pad: byte " + std::to_string(c) +
                         " is not an eligible character (0..127)");
    }
  }
  if (eligible.empty()) return {};
  const std::size_t m = eligible.size();
  // Slot pattern: 2m slots, m of them carrying plaintext, shuffled.
  std::vector<std::uint8_t> plain_slot(2 * m, 0);
  std::fill(plain_slot.begin(), plain_slot.begin() + static_cast<std::ptrdiff_t>(m), 1);
  SplitMix64 rng(counter_word(seed, kPadSalt, m, 0));
  for (std::size_t i = plain_slot.size(); i-- > 1;) {
    std::swap(plain_slot[i], plain_slot[rng.below(i + 1)]);
  }
  Bytes out;
  out.reserve(2 * m);
  std::size_t next = 0;
  for (std::uint8_t keep : plain_slot) {
    if (keep) {
      out.push_back(eligible[next++]);
    } else {
      out.push_back(static_cast<std::uint8_t>(128 + eligible[rng.below(m)]));
    }
  }
  return out;
}

Bytes strip(std::span<const std::uint8_t> padded) {
  Bytes out;
  out.reserve(padded.size());
  for (std::uint8_t c : padded) {
    if (c < 128) out.push_back(c);
  }
  return out;
}

namespace {

Bytes xor_with_key(std::span<const std::uint8_t> key_bytes, std::uint64_t key_bits,
                   std::span<const std::uint8_t> data) {
  if (static_cast<std::uint64_t>(data.size()) * 8 > key_bits) {
    throw capacity_error("vernam: input of " + std::to_string(data.size() * 8) +
                         " bits exceeds the " + std::to_string(key_bits) + "-bit key");
  }
  if (key_bytes.size() < data.size()) {
    throw dimension_error("vernam: key byte buffer shorter than claimed bit length");
  }
  Bytes out(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(data[i] ^ key_bytes[i]);
  }
  return out;
}

}  // namespace

Bytes VernamCipher::encrypt(std::span<const std::uint8_t> key_bytes, std::uint64_t key_bits,
                            std::span<const std::uint8_t> plaintext) const {
  return xor_with_key(key_bytes, key_bits, plaintext);
}

Bytes VernamCipher::decrypt(std::span<const std::uint8_t> key_bytes, std::uint64_t key_bits,
                            std::span<const std::uint8_t> ciphertext) const {
  return xor_with_key(key_bytes, key_bits, ciphertext);
}

const Cipher& vernam_cipher() {
  static const VernamCipher instance;
  return instance;
}

Bytes encode_message(const ProtocolMessage& msg) {
  Bytes payload;
  std::uint8_t kind = 0;
  std::uint64_t sid = 0;
  if (const auto* req = std::get_if<TermRequest>(&msg)) {
    kind = 0;
    sid = req->session_id;
  } else if (const auto* reply = std::get_if<TermReply>(&msg)) {
    kind = 1;
    sid = reply->session_id;
    payload.assign(reply->term_block.begin(), reply->term_block.end());
  } else {
    const auto& bundle = std::get<CipherBundle>(msg);
    kind = 2;
    sid = bundle.session_id;
    put_u32be(payload, static_cast<std::uint32_t>(bundle.term_block.size()));
    payload.insert(payload.end(), bundle.term_block.begin(), bundle.term_block.end());
    payload.insert(payload.end(), bundle.ciphertext.begin(), bundle.ciphertext.end());
  }
  Bytes frame;
  frame.reserve(4 + 9 + payload.size());
  put_u32be(frame, static_cast<std::uint32_t>(9 + payload.size()));
  frame.push_back(kind);
  put_u64be(frame, sid);
  frame.insert(frame.end(), payload.begin(), payload.end());
  return frame;
}

ProtocolMessage decode_message(std::span<const std::uint8_t> frame) {
  if (frame.size() < 4) throw parse_error("frame shorter than the length field", 0);
  const std::uint32_t total = get_u32be(frame, 0);
  if (frame.size() != static_cast<std::size_t>(total) + 4) {
    throw parse_error("frame length field does not match frame size", 0);
  }
  if (total < 9) throw parse_error("frame too short for kind and session id", 4);
  const std::uint8_t kind = frame[4];
  const std::uint64_t sid = get_u64be(frame, 5);
  const auto payload = frame.subspan(13);
  switch (kind) {
    case 0:
      if (!payload.empty()) throw parse_error("term request carries a payload", 13);
      return TermRequest{sid};
    case 1:
      return TermReply{sid, std::string(payload.begin(), payload.end())};
    case 2: {
      if (payload.size() < 4) throw parse_error("cipher bundle missing block length", 13);
      const std::uint32_t block_len = get_u32be(payload, 0);
      if (payload.size() < 4 + static_cast<std::size_t>(block_len)) {
        throw parse_error("cipher bundle block length exceeds payload", 13);
      }
      CipherBundle bundle;
      bundle.session_id = sid;
      bundle.term_block.assign(payload.begin() + 4,
                               payload.begin() + 4 + static_cast<std::ptrdiff_t>(block_len));
      bundle.ciphertext.assign(payload.begin() + 4 + static_cast<std::ptrdiff_t>(block_len),
                               payload.end());
      return bundle;
    }
    default:
      throw parse_error("unknown message kind " + std::to_string(kind), 4);
  }
}

bool printable_ascii_validity(std::span<const std::uint8_t> plaintext) {
  if (plaintext.empty()) return false;
  for (std::uint8_t c : plaintext) {
    if (!((c >= 32 && c <= 126) || c == '\t' || c == '\n')) return false;
  }
  return true;
}

Bank::Bank(MasterKey h, ProtocolParams params, std::uint64_t seed,
           ValidityPredicate validity, const Cipher& cipher)
    : h_(std::move(h)),
      params_(params),
      seed_(seed),
      validity_(std::move(validity)),
      cipher_(&cipher) {
  if (params_.n != h_.n() || params_.k != h_.k()) {
    throw dimension_error("protocol parameters do not match the master key");
  }
  if (params_.b < 1) throw domain_error("protocol requires b >= 1");
}

TermReply Bank::issue_terms() {
  ++session_counter_;
  std::uint64_t sid = counter_word(seed_, kSessionIdSalt, session_counter_, 0);
  while (sid == 0 || sessions_.contains(sid)) ++sid;
  TermVector p = random_term_vector(params_.b, params_.k, params_.term_size,
                                    counter_word(seed_, kTermSeedSalt, session_counter_, 0),
                                    h_.vec().components);
  std::string block = write_termvec(p);
  sessions_.emplace(sid, Session{block, std::move(p), true});
  return TermReply{sid, std::move(block)};
}

Bank::ReceiveOutcome Bank::receive(const CipherBundle& bundle) {
  auto it = sessions_.find(bundle.session_id);
  if (it == sessions_.end()) {
    return {ReceiveOutcome::Status::unknown_session, {}};
  }
  Session& session = it->second;
  if (!session.open) return {ReceiveOutcome::Status::session_closed, {}};
  session.open = false;  // single use, whatever happens next
  if (bundle.term_block != session.term_block) {
    return {ReceiveOutcome::Status::term_mismatch, {}};
  }
  const SessionKey key = derive_session_key(session.terms, h_);
  if (static_cast<std::uint64_t>(bundle.ciphertext.size()) * 8 > key.key_bits()) {
    return {ReceiveOutcome::Status::oversized_ciphertext, {}};
  }
  const Bytes padded = cipher_->decrypt(key.key_bytes, key.key_bits(), bundle.ciphertext);
  Bytes plaintext = strip(padded);
  if (!validity_(plaintext)) return {ReceiveOutcome::Status::invalid_plaintext, {}};
  return {ReceiveOutcome::Status::accepted, std::move(plaintext)};
}

bool Bank::verify_authentication(std::uint64_t session_id,
                                 std::span<const LatticeElement> u) {
  auto it = sessions_.find(session_id);
  if (it == sessions_.end() || !it->second.open) return false;
  it->second.open = false;
  const auto expected = eval_vector(it->second.terms, h_.vec().components);
  return std::equal(expected.begin(), expected.end(), u.begin(), u.end());
}

Kati::Kati(MasterKey h, std::uint64_t seed, const Cipher& cipher)
    : h_(std::move(h)), pad_rng_(counter_word(seed, kPadSalt, 1, 0)), cipher_(&cipher) {}

CipherBundle Kati::send(const TermReply& reply, std::span<const std::uint8_t> message) {
  const TermVector p = parse_termvec(reply.term_block);
  const SessionKey key = derive_session_key(p, h_);
  const std::uint64_t capacity = key.key_bits() / 16;  // padding doubles the length
  if (static_cast<std::uint64_t>(message.size()) > capacity) {
    throw capacity_error("message of " + std::to_string(message.size()) +
                         " bytes exceeds the session capacity of " +
                         std::to_string(capacity) + " bytes");
  }
  const Bytes padded = pad(message, pad_rng_.next());
  CipherBundle bundle;
  bundle.session_id = reply.session_id;
  bundle.term_block = reply.term_block;
  bundle.ciphertext = cipher_->encrypt(key.key_bytes, key.key_bits(), padded);
  return bundle;
}

std::vector<LatticeElement> Kati::authenticate(const TermReply& reply) const {
  const TermVector p = parse_termvec(reply.term_block);
  return derive_session_key(p, h_).components;
}

CapturedSession& ChannelTap::session_for(std::uint64_t session_id) {
  auto [it, inserted] = index_.try_emplace(session_id, sessions_.size());
  if (inserted) {
    sessions_.emplace_back();
    sessions_.back().session_id = session_id;
  }
  return sessions_[it->second];
}

void ChannelTap::observe(std::span<const std::uint8_t> frame) {
  ++frames_;
  ProtocolMessage msg = [&]() -> ProtocolMessage {
    try {
      return decode_message(frame);
    } catch (const parse_error&) {
      return TermRequest{0};  // undecodable noise; only the frame count moves
    }
  }();
  if (const auto* reply = std::get_if<TermReply>(&msg)) {
    session_for(reply->session_id).term_block = reply->term_block;
  } else if (const auto* bundle = std::get_if<CipherBundle>(&msg)) {
    CapturedSession& s = session_for(bundle->session_id);
    if (s.term_block.empty()) s.term_block = bundle->term_block;
    s.ciphertext = bundle->ciphertext;
  }
}

void ChannelTap::reveal_padded_plaintext(std::uint64_t session_id, Bytes padded_plaintext) {
  session_for(session_id).known_padded_plaintext = std::move(padded_plaintext);
}

std::optional<SessionKey> recover_session_key_vernam(const CapturedSession& captured,
                                                     int n, int b) {
  if (!captured.known_padded_plaintext) return std::nullopt;
  const Bytes& x = *captured.known_padded_plaintext;
  if (x.size() != captured.ciphertext.size()) return std::nullopt;
  const std::uint64_t total_bits = static_cast<std::uint64_t>(n) * b;
  if (static_cast<std::uint64_t>(x.size()) * 8 < total_bits) return std::nullopt;
  SessionKey key;
  key.key_bytes.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    key.key_bytes[i] = static_cast<std::uint8_t>(x[i] ^ captured.ciphertext[i]);
  }
  key.components = unflatten_bits(key.key_bytes, n, b);
  return key;
}

DemoResult run_demo(const ProtocolParams& params, std::uint64_t seed,
                    std::span<const std::uint8_t> message) {
  MasterKey master = random_master_key(params.n, params.k, counter_word(seed, 1, 0, 0));
  Bank bank(master, params, counter_word(seed, 2, 0, 0));
  Kati kati(master, counter_word(seed, 3, 0, 0));
  ChannelTap tap;
  DemoResult result;

  const Bytes request_frame = encode_message(TermRequest{0});
  tap.observe(request_frame);
  result.request_frame_bytes = request_frame.size();
  decode_message(request_frame);  // the Bank reads the request off the wire

  const TermReply reply = bank.issue_terms();
  const Bytes reply_frame = encode_message(reply);
  tap.observe(reply_frame);
  result.reply_frame_bytes = reply_frame.size();
  const auto reply_seen = std::get<TermReply>(decode_message(reply_frame));

  const CipherBundle bundle = kati.send(reply_seen, message);
  const Bytes bundle_frame = encode_message(bundle);
  tap.observe(bundle_frame);
  result.bundle_frame_bytes = bundle_frame.size();
  const auto bundle_seen = std::get<CipherBundle>(decode_message(bundle_frame));

  const auto outcome = bank.receive(bundle_seen);
  result.session_id = reply.session_id;
  result.status = outcome.status;
  result.roundtrip = outcome.status == Bank::ReceiveOutcome::Status::accepted &&
                     std::equal(outcome.plaintext.begin(), outcome.plaintext.end(),
                                message.begin(), message.end());
  result.sessions_captured = tap.sessions().size();
  return result;
}

std::string TamperReport::to_line() const {
  const double rate =
      key_changed == 0 ? 0.0 : static_cast<double>(validity_rejected) /
                                   static_cast<double>(key_changed);
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "trials=%llu bank_rejected=%llu malformed=%llu key_unchanged=%llu "
                "key_changed=%llu plaintext_differs=%llu validity_rejected=%llu "
                "validity_rate=%.4f",
                static_cast<unsigned long long>(trials),
                static_cast<unsigned long long>(bank_rejected),
                static_cast<unsigned long long>(malformed),
                static_cast<unsigned long long>(key_unchanged),
                static_cast<unsigned long long>(key_changed),
                static_cast<unsigned long long>(plaintext_differs),
                static_cast<unsigned long long>(validity_rejected), rate);
  return buf;
}

TamperReport run_tamper_suite(const ProtocolParams& params, std::uint64_t seed,
                              std::uint64_t trials,
                              std::span<const std::uint8_t> message) {
  MasterKey master = random_master_key(params.n, params.k, counter_word(seed, 1, 0, 0));
  Bank bank(master, params, counter_word(seed, 2, 0, 0));
  SplitMix64 rng(counter_word(seed, 4, 0, 0));
  const VernamCipher vernam;

  TamperReport report;
  report.trials = trials;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    const TermReply reply = bank.issue_terms();
    const TermVector p = parse_termvec(reply.term_block);
    const SessionKey key = derive_session_key(p, master);
    const Bytes padded = pad(message, rng.next());
    const Bytes ciphertext = vernam.encrypt(key.key_bytes, key.key_bits(), padded);

    std::string tampered = reply.term_block;
    const std::uint64_t bit = rng.below(tampered.size() * 8);
    tampered[bit / 8] = static_cast<char>(tampered[bit / 8] ^ (1u << (bit % 8)));

    const auto outcome = bank.receive(CipherBundle{reply.session_id, tampered, ciphertext});
    if (outcome.status == Bank::ReceiveOutcome::Status::term_mismatch) {
      ++report.bank_rejected;
    }

    // Offline view: what the corrupted block would have done to the key.
    try {
      const TermVector tampered_terms = parse_termvec(tampered);
      const SessionKey tampered_key = derive_session_key(tampered_terms, master);
      if (tampered_key.key_bytes == key.key_bytes) {
        ++report.key_unchanged;
        continue;
      }
      ++report.key_changed;
      const Bytes decrypted =
          vernam.decrypt(tampered_key.key_bytes, tampered_key.key_bits(), ciphertext);
      if (decrypted != padded) ++report.plaintext_differs;
      if (!printable_ascii_validity(strip(decrypted))) ++report.validity_rejected;
    } catch (const domain_error&) {
      ++report.malformed;
    }
  }
  return report;
}

}  // namespace boolat
