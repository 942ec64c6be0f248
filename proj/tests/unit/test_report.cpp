#include "doctest.h"

#include "dtnlab/error.hpp"
#include "dtnlab/report.hpp"

using namespace dtnlab;

TEST_SUITE_BEGIN("analytics-report");

namespace {

EventRecord ev(double time, EventKind kind, MessageSeq msg, HostId from = 0, HostId to = 1,
               int hops = -1) {
    EventRecord r;
    r.time = time;
    r.kind = kind;
    r.msg = msg;
    r.from = from;
    r.to = to;
    r.hop_count = hops;
    return r;
}

} // namespace

TEST_CASE("compute_report: counters and the four metrics on a crafted log") {
    EventLog log;
    for (MessageSeq m = 1; m <= 4; ++m) log.append(ev(0.0, EventKind::created, m));
    for (int i = 0; i < 6; ++i) log.append(ev(5.0, EventKind::relayed, 1, 0, 2, 1));
    log.append(ev(10.0, EventKind::delivered, 1, 0, 1, 1));
    log.append(ev(30.0, EventKind::delivered, 2, 2, 1, 3));

    const auto rep = compute_report(log);
    CHECK(rep.created == 4);
    CHECK(rep.relayed == 6);
    CHECK(rep.delivered == 2);
    CHECK(rep.delivery_prob == doctest::Approx(0.5));
    CHECK(rep.latency_avg.value() == doctest::Approx(20.0));
    CHECK(rep.latency_med.value() == doctest::Approx(20.0));
    CHECK(rep.hopcount_avg.value() == doctest::Approx(2.0));
    CHECK(rep.overhead_ratio.value() == doctest::Approx(3.0));
}

TEST_CASE("compute_report: nothing delivered leaves the ratios undefined") {
    EventLog log;
    log.append(ev(0.0, EventKind::created, 1));
    log.append(ev(1.0, EventKind::started, 1));
    log.append(ev(2.0, EventKind::aborted, 1));
    const auto rep = compute_report(log);
    CHECK(rep.delivery_prob == 0.0);
    CHECK_FALSE(rep.overhead_ratio.has_value());
    CHECK_FALSE(rep.latency_avg.has_value());
    CHECK_FALSE(rep.latency_med.has_value());
    CHECK_FALSE(rep.hopcount_avg.has_value());
}

TEST_CASE("compute_report: every message delivered directly") {
    EventLog log;
    for (MessageSeq m = 1; m <= 3; ++m) {
        log.append(ev(static_cast<double>(m), EventKind::created, m));
        log.append(ev(m + 1.0, EventKind::started, m));
        log.append(ev(m + 2.0, EventKind::relayed, m, 0, 1, 1));
        log.append(ev(m + 2.0, EventKind::delivered, m, 0, 1, 1));
    }
    const auto rep = compute_report(log);
    CHECK(rep.delivery_prob == doctest::Approx(1.0));
    CHECK(rep.hopcount_avg.value() == doctest::Approx(1.0));
    CHECK(rep.overhead_ratio.value() == doctest::Approx(1.0));
}

TEST_CASE("compute_report: empty scenario is an error") {
    EventLog log;
    CHECK_THROWS_AS(compute_report(log), Error);
    log.append(ev(0.0, EventKind::contact_up, 0));
    CHECK_THROWS_AS(compute_report(log), Error);
}

TEST_CASE("compute_report: pure function of the log") {
    EventLog log;
    log.append(ev(0.0, EventKind::created, 1));
    log.append(ev(4.5, EventKind::relayed, 1, 0, 1, 1));
    log.append(ev(4.5, EventKind::delivered, 1, 0, 1, 1));
    const auto a = compute_report(log);
    const auto b = compute_report(log);
    CHECK(a.delivery_prob == b.delivery_prob);
    CHECK(a.latency_avg.value() == b.latency_avg.value());
    CHECK(a.relayed == b.relayed);
}

TEST_SUITE_END();
