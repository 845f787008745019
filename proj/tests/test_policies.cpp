#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "packlab/policies.hpp"

#include <random>

using namespace packlab;

namespace {

std::mt19937_64 rng(555);

long long rnd(long long lo, long long hi) {
  return lo + (long long)(rng() % (unsigned long long)(hi - lo + 1));
}

}  // namespace

TEST_CASE("policy ids parse and print") {
  CHECK(PolicySpec::parse("two-phase").kind == PolicySpec::Kind::TwoPhase);
  CHECK(PolicySpec::parse("always-s").kind == PolicySpec::Kind::AlwaysS);
  CHECK(PolicySpec::parse("always-l").kind == PolicySpec::Kind::AlwaysL);
  PolicySpec r = PolicySpec::parse("ratio:2/1");
  CHECK(r.kind == PolicySpec::Kind::RatioLtoS);
  CHECK(r.ratio_num == 2);
  CHECK(r.ratio_den == 1);
  CHECK(r.id() == "ratio:2/1");
  CHECK_THROWS_AS(PolicySpec::parse("ratio:1/0"), std::invalid_argument);
  CHECK_THROWS_AS(PolicySpec::parse("greedy"), std::invalid_argument);
}

TEST_CASE("phase1_done thresholds") {
  Params p(10);
  {
    TwoPhaseState st(p, 4, 2);  // LowL, threshold floor(2/2) = 1
    CHECK(!phase1_done(st));
    st.count_l = 1;
    CHECK(phase1_done(st));
  }
  {
    TwoPhaseState st(p, 8, 5);  // MidL, threshold floor((24-10)/4) = 3
    st.count_s = 2;
    CHECK(!phase1_done(st));
    st.count_s = 3;
    CHECK(phase1_done(st));
  }
  {
    TwoPhaseState st(p, 6, 6);  // HighL, threshold floor(6/3) = 2
    st.count_s = 2;
    CHECK(phase1_done(st));
    st.count_s = 1;
    CHECK(!phase1_done(st));
  }
}

TEST_CASE("use_ls per range") {
  Params p(10);
  {
    TwoPhaseState st(p, 40, 10);
    CHECK(use_ls(st));  // fresh counters
    st.l_bins = 1;
    CHECK(!use_ls(st));
  }
  {
    TwoPhaseState st(p, 2, 3);  // HighL
    CHECK(use_ls(st));
    st.s_bins = 1;
    st.l_bins = 2;
    CHECK(use_ls(st));
    st.l_bins = 3;
    CHECK(!use_ls(st));
  }
  {
    TwoPhaseState st(p, 16, 12);  // MidL, late threshold floor(40/16) = 2
    st.s_bins = 1;
    st.l_bins = 1;
    CHECK(use_ls(st));  // 40*1 <= 72*1
    st.l_bins = 2;
    CHECK(!use_ls(st));  // 80 > 72
    st.s_bins = 2;       // late mode from here on
    st.late_l_bins = 1;
    st.late_s_bins = 0;
    CHECK(!use_ls(st));
    st.late_s_bins = 1;
    CHECK(use_ls(st));
  }
}

TEST_CASE("two_phase_next forced branches") {
  Params p(10);
  TwoPhaseState st(p, 5, 3);
  CHECK(two_phase_next(st, 19) == Fill{0, 1});
  CHECK(two_phase_next(st, 29) == Fill{1, 1});
  CHECK(two_phase_next(st, 12) == Fill{1, 0});
  CHECK(st.count_s == 2);
  CHECK(st.count_l == 2);
  CHECK(st.s_bins + st.l_bins + st.late_s_bins + st.late_l_bins == 0);
}

TEST_CASE("two_phase_next first choice bin uses a large item") {
  Params p(10);
  TwoPhaseState st(p, 4, 2);
  CHECK(two_phase_next(st, 20) == Fill{0, 1});
  CHECK(st.l_bins == 1);
  CHECK(st.count_l == 1);
  CHECK(st.inv == Inventory{4, 1});
}

TEST_CASE("two_phase_next low-range second phase packs small items greedily") {
  Params p(10);
  TwoPhaseState st(p, 8, 2);
  st.count_l = 1;  // phase 1 over: threshold floor(2/2) = 1
  st.inv = {5, 1};
  CHECK(two_phase_next(st, 37) == Fill{3, 0});
  CHECK(st.count_s == 3);
}

TEST_CASE("two_phase_next guards near exhaustion") {
  Params p(10);
  {
    TwoPhaseState st(p, 9, 3);
    st.inv = {1, 2};
    CHECK(two_phase_next(st, 20) == Fill{0, 1});  // keep the lone small item
    st.inv = {1, 2};
    CHECK(two_phase_next(st, 30) == Fill{1, 1});
  }
  {
    TwoPhaseState st(p, 9, 3);
    st.inv = {2, 2};
    CHECK(two_phase_next(st, 30) == Fill{1, 1});  // two small left, large bin
  }
  {
    TwoPhaseState st(p, 9, 3);
    st.inv = {0, 2};
    CHECK(two_phase_next(st, 20) == Fill{0, 1});  // one type left
    st.inv = {4, 0};
    CHECK(two_phase_next(st, 37) == Fill{3, 0});
    st.inv = {0, 0};
    CHECK_THROWS_AS(two_phase_next(st, 20), std::logic_error);
  }
}

TEST_CASE("baseline choice bins") {
  Params p(10);
  {
    BaselineState st(PolicySpec::parse("always-s"), p, 4, 2);
    CHECK(baseline_next(st, 20) == Fill{2, 0});
  }
  {
    BaselineState st(PolicySpec::parse("always-l"), p, 4, 2);
    CHECK(baseline_next(st, 20) == Fill{0, 1});
    CHECK(baseline_next(st, 30) == Fill{1, 1});  // topped up small item
  }
  {
    BaselineState st(PolicySpec::parse("ratio:2/1"), p, 20, 30);
    std::vector<Fill> fills;
    for (int i = 0; i < 5; ++i) fills.push_back(baseline_next(st, 20));
    CHECK(fills == std::vector<Fill>{{0, 1}, {2, 0}, {0, 1}, {0, 1}, {2, 0}});
  }
  {
    // with one small item left the small-first branch tops up with a large
    BaselineState st(PolicySpec::parse("always-s"), p, 1, 2);
    CHECK(baseline_next(st, 30) == Fill{1, 1});
  }
}

TEST_CASE("baseline fills are always thrifty") {
  const char* ids[] = {"always-s", "always-l", "ratio:1/1", "ratio:2/1", "ratio:0/1"};
  for (int t = 0; t < 2000; ++t) {
    Params p(rnd(2, 12));
    long long s = rnd(0, 8), l = rnd(0, 8);
    if (s + l == 0) s = 1;
    BaselineState st(PolicySpec::parse(ids[rnd(0, 4)]), p, s, l);
    Trace tr{p, s, l, {}};
    while (!st.inv.empty()) {
      long long bin = rnd(1, p.M);
      bool fits = (st.inv.s_rem > 0 && bin >= p.S) || (st.inv.l_rem > 0 && bin >= p.L);
      tr.entries.push_back({bin, fits ? baseline_next(st, bin) : Fill{}});
    }
    CHECK(is_thrifty_trace(tr));
    CHECK(is_complete_trace(tr));
  }
}

TEST_CASE("two-phase counter relations hold along random runs") {
  for (int t = 0; t < 3000; ++t) {
    Params p(rnd(2, 12));
    long long s = rnd(0, 9), l = rnd(0, 9);
    if (s + l == 0) l = 1;
    TwoPhaseState st(p, s, l);
    while (!st.inv.empty()) {
      long long bin = rnd(1, p.M);
      bool fits = (st.inv.s_rem > 0 && bin >= p.S) || (st.inv.l_rem > 0 && bin >= p.L);
      if (!fits) continue;
      two_phase_next(st, bin);
      auto bad = check_counter_invariants(st);
      if (bad) FAIL(*bad);
    }
  }
}

TEST_CASE("flipped choice rule trips the counter checker") {
  // Drive the counters with the opposite of every choice; the relation
  // checker must notice within a few bins in every range.
  for (long long s : {40LL, 16LL, 6LL}) {
    long long l = s == 40 ? 10 : s == 16 ? 12 : 9;  // LowL, MidL, HighL
    Params p(10);
    TwoPhaseState st(p, s, l);
    bool caught = false;
    for (int i = 0; i < 8 && !caught; ++i) {
      const bool flipped = !use_ls(st);
      if (flipped) {
        st.count_l += 1;
        st.inv.l_rem -= 1;
        if (st.range == Range::MidL && st.s_bins >= st.late_threshold())
          st.late_l_bins += 1;
        else
          st.l_bins += 1;
      } else {
        st.count_s += 2;
        st.inv.s_rem -= 2;
        if (st.range == Range::MidL && st.s_bins >= st.late_threshold())
          st.late_s_bins += 1;
        else
          st.s_bins += 1;
      }
      caught = check_counter_invariants(st).has_value();
    }
    CHECK(caught);
  }
}

TEST_CASE("online policy wrapper dispatches and copies") {
  Params p(10);
  OnlinePolicy a(PolicySpec::parse("two-phase"), p, 4, 2);
  REQUIRE(a.two_phase() != nullptr);
  OnlinePolicy b = a;  // forked copy advances independently
  CHECK(a.next(20) == Fill{0, 1});
  CHECK(b.inventory() == Inventory{4, 2});
  CHECK(a.inventory() == Inventory{4, 1});
  OnlinePolicy c(PolicySpec::parse("always-s"), p, 4, 2);
  CHECK(c.two_phase() == nullptr);
  CHECK(c.next(20) == Fill{2, 0});
}
