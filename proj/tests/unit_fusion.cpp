#include <catch2/catch_amalgamated.hpp>

#include "vanetcast/fusion.hpp"

using namespace vanetcast;

TEST_CASE("majority vote follows strict majorities", "[fusion]") {
    Engine rng = make_engine(1, 0);
    Inbox in;
    in.add(Message::plus);
    in.add(Message::plus);
    in.add(Message::minus);
    CHECK(majority_vote(in, rng) == Message::plus);
    in.add(Message::minus);
    in.add(Message::minus);
    CHECK(majority_vote(in, rng) == Message::minus);
}

TEST_CASE("ties and the empty inbox use a fair coin", "[fusion]") {
    Engine rng = make_engine(2024, 1);
    Inbox tie;
    tie.add(Message::plus);
    tie.add(Message::minus);
    Inbox empty;
    int plus_tie = 0, plus_empty = 0;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) {
        if (majority_vote(tie, rng) == Message::plus) ++plus_tie;
        if (majority_vote(empty, rng) == Message::plus) ++plus_empty;
    }
    CHECK(static_cast<double>(plus_tie) / draws == Catch::Approx(0.5).margin(0.01));
    CHECK(static_cast<double>(plus_empty) / draws == Catch::Approx(0.5).margin(0.01));
}

TEST_CASE("apply_malice negates and is an involution", "[fusion]") {
    CHECK(apply_malice(Message::plus, true) == Message::minus);
    CHECK(apply_malice(Message::minus, true) == Message::plus);
    CHECK(apply_malice(Message::plus, false) == Message::plus);
    CHECK(apply_malice(Message::minus, false) == Message::minus);
    for (const Message m : {Message::plus, Message::minus})
        CHECK(apply_malice(apply_malice(m, true), true) == m);
}

TEST_CASE("inbox counts make fusion order-independent", "[fusion]") {
    Inbox a, b;
    a.add(Message::plus);
    a.add(Message::minus);
    a.add(Message::plus);
    b.add(Message::minus);
    b.add(Message::plus);
    b.add(Message::plus);
    CHECK(a.plus == b.plus);
    CHECK(a.minus == b.minus);
}

TEST_CASE("on a tie the coin outcome is broadcast as-is even when malicious", "[fusion]") {
    Inbox tie;
    tie.add(Message::plus);
    tie.add(Message::minus);
    for (std::uint64_t s = 0; s < 32; ++s) {
        Engine rng_normal = make_engine(s, 0);
        Engine rng_malicious = make_engine(s, 0);
        CHECK(fuse_and_broadcast(tie, false, rng_normal) ==
              fuse_and_broadcast(tie, true, rng_malicious));
    }
    // strict majorities still get negated
    Inbox maj;
    maj.add(Message::plus);
    maj.add(Message::plus);
    Engine rng = make_engine(0, 0);
    CHECK(fuse_and_broadcast(maj, true, rng) == Message::minus);
    CHECK(fuse_and_broadcast(maj, false, rng) == Message::plus);
}
