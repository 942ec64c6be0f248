#include "doctest.h"

#include <algorithm>

#include "dtnlab/error.hpp"
#include "dtnlab/message.hpp"
#include "dtnlab/rng.hpp"
#include "dtnlab/traffic.hpp"

using namespace dtnlab;

TEST_SUITE_BEGIN("messaging");

namespace {

Message make_msg(MessageSeq seq, std::uint64_t size, double created = 0.0, double ttl = 300.0) {
    Message m;
    m.seq = seq;
    m.src = 0;
    m.dst = 1;
    m.size = size;
    m.created_at = created;
    m.ttl = ttl;
    m.path = {0};
    return m;
}

std::vector<MessageSeq> fifo_order(const Buffer& buf) {
    std::vector<MessageSeq> order;
    for (const auto& m : buf.entries()) order.push_back(m.seq);
    return order;
}

} // namespace

TEST_CASE("traffic: fixed interval yields one message per tick through the stop time") {
    TrafficConfig cfg;
    cfg.interval_min = cfg.interval_max = 30.0;
    cfg.size_min = cfg.size_max = 1000;
    cfg.src_hosts = {0, 3};
    cfg.dst_hosts = {0, 3};
    cfg.start = 0.0;
    cfg.stop = 300.0;
    TrafficGenerator gen(cfg, 300.0, Rng::from_stream(1, "traffic"));
    const auto msgs = gen.poll(300.0);
    REQUIRE(msgs.size() == 10);
    for (std::size_t i = 0; i < msgs.size(); ++i) {
        CHECK(msgs[i].created_at == doctest::Approx(30.0 * (i + 1)));
        CHECK(msgs[i].seq == i + 1);
        CHECK(msgs[i].src != msgs[i].dst);
        CHECK(msgs[i].path == std::vector<HostId>{msgs[i].src});
    }
    CHECK(gen.poll(10000.0).empty()); // stop reached
}

TEST_CASE("traffic: count over an hour stays within the extreme-interval bounds") {
    TrafficConfig cfg;
    cfg.interval_min = 25.0;
    cfg.interval_max = 35.0;
    cfg.size_min = 500;
    cfg.size_max = 1000;
    cfg.src_hosts = {0, 9};
    cfg.dst_hosts = {0, 9};
    cfg.stop = 3600.0;
    double total = 0.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        TrafficGenerator gen(cfg, 300.0, Rng::from_stream(seed, "traffic"));
        const auto n = gen.poll(3600.0).size();
        CHECK(n >= 100); // 3600/36 rounded down is the slow extreme
        CHECK(n <= 144);
        total += static_cast<double>(n);
    }
    CHECK(total / 20.0 == doctest::Approx(120.0).epsilon(0.05));
}

TEST_CASE("traffic: single identical src and dst host is an error") {
    TrafficConfig cfg;
    cfg.src_hosts = {1, 1};
    cfg.dst_hosts = {1, 1};
    CHECK_THROWS_AS(TrafficGenerator(cfg, 300.0, Rng(0)), ConfigError);
}

TEST_CASE("buffer_insert: fits without eviction") {
    Buffer buf(10);
    buf.push(make_msg(1, 5));
    buf.push(make_msg(2, 3));
    const auto r = buffer_insert(buf, make_msg(3, 2), fifo_order(buf));
    CHECK(r.accepted);
    CHECK(r.evicted.empty());
    CHECK(buf.used() == 10);
}

TEST_CASE("buffer_insert: evicts in the supplied order until it fits") {
    Buffer buf(10);
    buf.push(make_msg(1, 5));
    buf.push(make_msg(2, 3));
    const auto r = buffer_insert(buf, make_msg(3, 4), fifo_order(buf));
    CHECK(r.accepted);
    REQUIRE(r.evicted.size() == 1);
    CHECK(r.evicted[0].seq == 1);
    CHECK(buf.used() == 7);
    CHECK(buf.has(2));
    CHECK(buf.has(3));
}

TEST_CASE("buffer_insert: oversize message is rejected outright") {
    Buffer buf(10);
    const auto r = buffer_insert(buf, make_msg(1, 12), {});
    CHECK_FALSE(r.accepted);
    CHECK(r.too_big);
    CHECK(buf.empty());
}

TEST_CASE("buffer_insert: protected entries are not evicted") {
    Buffer buf(10);
    buf.push(make_msg(1, 6));
    buf.push(make_msg(2, 4));
    const auto r = buffer_insert(buf, make_msg(3, 8), fifo_order(buf), {1});
    // only msg 2 may go; 10 - 4 + 8 > 10, so the insert is refused untouched
    CHECK_FALSE(r.accepted);
    CHECK(r.evicted.empty());
    CHECK(buf.used() == 10);
}

TEST_CASE("buffer_insert: duplicate id raises") {
    Buffer buf(10);
    buf.push(make_msg(1, 5));
    CHECK_THROWS_AS(buffer_insert(buf, make_msg(1, 2), {}), Error);
}

TEST_CASE("expire_ttl: strict inequality at the boundary") {
    Buffer buf(100);
    buf.push(make_msg(1, 10, 0.0, 300.0));
    CHECK(expire_ttl(buf, 300.0).empty());
    const auto removed = expire_ttl(buf, 301.0);
    REQUIRE(removed.size() == 1);
    CHECK(removed[0].seq == 1);
    CHECK(buf.empty());
    CHECK(expire_ttl(buf, 400.0).empty());
}

TEST_CASE("buffer: used equals the sum of entry sizes under random operations") {
    Rng rng(777);
    Buffer buf(50'000);
    MessageSeq next = 1;
    std::vector<MessageSeq> live;
    for (int step = 0; step < 2000; ++step) {
        const bool insert = live.empty() || rng.uniform01() < 0.6;
        if (insert) {
            const auto size = static_cast<std::uint64_t>(rng.uniform_int(1, 2000));
            const auto r = buffer_insert(buf, make_msg(next, size), fifo_order(buf));
            if (r.accepted) live.push_back(next);
            for (const auto& gone : r.evicted) {
                live.erase(std::find(live.begin(), live.end(), gone.seq));
            }
            ++next;
        } else {
            const auto pick = static_cast<std::size_t>(rng.uniform_index(live.size()));
            buf.remove(live[pick]);
            live.erase(live.begin() + static_cast<std::ptrdiff_t>(pick));
        }
        std::uint64_t expect = 0;
        for (const auto& m : buf.entries()) expect += m.size;
        REQUIRE(buf.used() == expect);
        REQUIRE(buf.used() <= buf.capacity());
    }
}

TEST_SUITE_END();
