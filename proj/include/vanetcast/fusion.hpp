#pragma once

#include "vanetcast/random.hpp"

namespace vanetcast {

// A message is one of two values: +1 (true warning) or -1 (tampered).
enum class Message : int { plus = +1, minus = -1 };

inline int sign_of(Message m) { return static_cast<int>(m); }

inline Message negated(Message m) {
    return m == Message::plus ? Message::minus : Message::plus;
}

// Received copies, kept as counts so fusion is structurally independent of
// arrival order.
struct Inbox {
    int plus = 0;
    int minus = 0;

    void add(Message m) { (m == Message::plus ? plus : minus)++; }
    bool empty() const { return plus == 0 && minus == 0; }
    int total() const { return plus + minus; }
    bool tied() const { return plus == minus; }
};

// Majority vote over the inbox. Ties -- including an empty inbox, which is a
// 0-0 tie -- are resolved by one fair coin draw from the caller's engine.
inline Message majority_vote(const Inbox& inbox, Engine& rng) {
    if (inbox.plus > inbox.minus) return Message::plus;
    if (inbox.minus > inbox.plus) return Message::minus;
    return fair_coin(rng) ? Message::plus : Message::minus;
}

// A malicious vehicle broadcasts the opposite of its fused message.
inline Message apply_malice(Message fused, bool is_malicious) {
    return is_malicious ? negated(fused) : fused;
}

// What a relay actually puts on the air: majority opinion negated when the
// relay is malicious, except that a tie is resolved by one fair coin whose
// outcome is broadcast as-is by normal and malicious relays alike (the tie
// branch carries weight 1/2 independent of the malice probability).
inline Message fuse_and_broadcast(const Inbox& inbox, bool is_malicious, Engine& rng) {
    if (inbox.tied()) return fair_coin(rng) ? Message::plus : Message::minus;
    return apply_malice(majority_vote(inbox, rng), is_malicious);
}

}  // namespace vanetcast
