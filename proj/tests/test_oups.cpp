#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "noma/common.hpp"
#include "noma/oups.hpp"

using namespace noma;

namespace {

ScenarioConfig small_scenario(std::int64_t slots) {
  ScenarioConfig c = ScenarioConfig::qos_scenario();
  c.slots = slots;
  c.fading.rng_seed = 17;
  return c;
}

}  // namespace

TEST_CASE("effective weights add the multipliers") {
  std::vector<UserProfile> users{{0, 0.3, 0, 10, 1}, {1, 0.7, 0, 10, 1}};
  DualState d = DualState::initial(2);
  CHECK(effective_weights(users, d).values == std::vector<double>{0.3, 0.7});

  users[0].weight = users[1].weight = 0.0;
  d.lambda = {1.0, 2.0};
  CHECK(effective_weights(users, d).values == std::vector<double>{1.0, 2.0});

  users[0].weight = 0.25;
  users[1].weight = 1.5;
  d.lambda = {0.125, 3.0};
  CHECK(effective_weights(users, d).values == std::vector<double>{0.25 + 0.125, 1.5 + 3.0});
}

TEST_CASE("dual update examples") {
  DualState d = DualState::initial(2);
  d = dual_update(d, std::vector<double>{3.0, 0.0}, std::vector<double>{2.0, 0.0}, 1.0);
  CHECK(d.lambda == std::vector<double>{0.0, 0.0});
  CHECK(d.t == 1);

  d.lambda = {1.0, 0.0};
  d = dual_update(d, std::vector<double>{0.0, 5.0}, std::vector<double>{2.0, 0.0}, 0.5);
  CHECK(d.lambda[0] == 2.0);
  CHECK(d.t == 2);
  CHECK(d.cum_rate == std::vector<double>{3.0, 5.0});
  CHECK(d.avg_rate == std::vector<double>{1.5, 2.5});

  CHECK_THROWS(dual_update(d, std::vector<double>{0.0, 0.0}, std::vector<double>{0.0, 0.0}, -1.0));
}

TEST_CASE("harmonic step schedule is zeta0 / t") {
  StepSchedule s;
  for (std::int64_t t = 1; t <= 1000; ++t) CHECK(s.at(t) == 1.0 / static_cast<double>(t));
  s.zeta0 = 0.5;
  CHECK(s.at(4) == 0.125);
  s.kind = StepKind::constant;
  CHECK(s.at(99) == 0.5);
  s.kind = StepKind::custom;
  CHECK_THROWS(s.at(1));
  s.custom = [](std::int64_t t) { return 1.0 / static_cast<double>(t * t); };
  CHECK(s.at(3) == 1.0 / 9.0);
}

TEST_CASE("checkpoint slots") {
  CHECK(checkpoint_slots(1) == std::vector<std::int64_t>{1});
  CHECK(checkpoint_slots(10000) == std::vector<std::int64_t>{1, 10, 100, 1000, 10000});
  CHECK(checkpoint_slots(250) == std::vector<std::int64_t>{1, 10, 100, 250});
}

TEST_CASE("first slot uses the static weights") {
  const auto config = small_scenario(1);
  SlotLog first;
  RunOptions options;
  options.sink = [&](const SlotLog& s) { first = s; };
  run(config, make_allocator(AllocatorKind::uspa), options);

  ChannelProcess process(config.users, config.fading, 0);
  const auto channel = process.next();
  EffectiveWeights w;
  for (const auto& u : config.users) w.values.push_back(u.weight);
  const auto direct = uspa_allocate(channel, w, config.p_max);
  CHECK(first.powers == direct.powers);
  CHECK(first.selected == direct.selected_ids());
  CHECK(first.lambda == std::vector<double>(5, 0.0));
}

TEST_CASE("a lone user without a requirement always gets full power") {
  ScenarioConfig config = small_scenario(500);
  config.users = {{0, 1.0, 0.0, 200.0, dbm_to_watts(-104.0)}};
  RunOptions options;
  options.sink = [&](const SlotLog& s) {
    CHECK(s.lambda[0] == 0.0);
    CHECK(s.powers[0] == config.p_max);
  };
  const auto summary = run(config, make_allocator(AllocatorKind::uspa), options);
  CHECK(summary.lambda[0] == 0.0);
}

TEST_CASE("multiplier trace matches a scripted replay") {
  const auto config = small_scenario(1000);
  std::vector<SlotLog> logs;
  RunOptions options;
  options.sink = [&](const SlotLog& s) { logs.push_back(s); };
  const auto summary = run(config, make_allocator(AllocatorKind::uspa), options);
  REQUIRE(logs.size() == 1000);

  std::vector<double> lambda(5, 0.0);
  std::vector<double> sum(5, 0.0);
  for (std::size_t k = 0; k < logs.size(); ++k) {
    CHECK(logs[k].lambda == lambda);
    const double zeta = 1.0 / static_cast<double>(k + 1);
    for (std::size_t i = 0; i < 5; ++i) {
      const double next = lambda[i] - zeta * (logs[k].rates[i] - config.users[i].min_avg_rate);
      lambda[i] = next > 0.0 ? next : 0.0;
      sum[i] += logs[k].rates[i];
    }
  }
  CHECK(summary.lambda == lambda);
  for (std::size_t i = 0; i < 5; ++i) CHECK(summary.avg_rate[i] == doctest::Approx(sum[i] / 1000.0).epsilon(1e-13));
}

TEST_CASE("multipliers stay nonnegative and only rise on a shortfall") {
  const auto config = small_scenario(3000);
  std::vector<SlotLog> logs;
  RunOptions options;
  options.sink = [&](const SlotLog& s) { logs.push_back(s); };
  const auto summary = run(config, make_allocator(AllocatorKind::uspa), options);
  for (std::size_t k = 0; k + 1 < logs.size(); ++k) {
    for (std::size_t i = 0; i < 5; ++i) {
      CHECK(logs[k + 1].lambda[i] >= 0.0);
      if (logs[k + 1].lambda[i] > logs[k].lambda[i]) CHECK(logs[k].rates[i] < config.users[i].min_avg_rate);
    }
  }
  for (double l : summary.lambda) CHECK(l >= 0.0);
}

TEST_CASE("a user that never falls short never gets a multiplier") {
  // User 0 is close with a tiny requirement that every slot exceeds.
  ScenarioConfig config = small_scenario(2000);
  config.users[0].min_avg_rate = 0.0;
  std::vector<SlotLog> logs;
  RunOptions options;
  options.sink = [&](const SlotLog& s) { logs.push_back(s); };
  run(config, make_allocator(AllocatorKind::uspa), options);
  for (const auto& s : logs) CHECK(s.lambda[0] == 0.0);
}

TEST_CASE("runs are deterministic") {
  const auto config = small_scenario(400);
  auto collect = [&](AllocatorKind kind) {
    std::vector<SlotLog> logs;
    RunOptions options;
    options.measure_time = false;
    options.sink = [&](const SlotLog& s) { logs.push_back(s); };
    const auto summary = run(config, make_allocator(kind, {11, 2}), options);
    return std::make_pair(logs, summary.avg_rate);
  };
  for (auto kind : {AllocatorKind::uspa, AllocatorKind::oma, AllocatorKind::oracle}) {
    const auto a = collect(kind);
    const auto b = collect(kind);
    REQUIRE(a.first.size() == b.first.size());
    for (std::size_t k = 0; k < a.first.size(); ++k) {
      CHECK(a.first[k].powers == b.first[k].powers);
      CHECK(a.first[k].rates == b.first[k].rates);
      CHECK(a.first[k].lambda == b.first[k].lambda);
    }
    CHECK(a.second == b.second);
  }
}

TEST_CASE("summary fields") {
  const auto config = small_scenario(100);
  const auto summary = run(config, make_allocator(AllocatorKind::oma));
  CHECK(summary.slots == 100);
  REQUIRE(summary.checkpoints.size() == 3);
  CHECK(summary.checkpoints.back().t == 100);
  CHECK(summary.checkpoints.back().avg_rate == summary.avg_rate);
  CHECK(summary.checkpoints.back().avg_wsr == doctest::Approx(summary.avg_wsr));
  for (std::size_t i = 0; i < 5; ++i)
    CHECK(summary.qos_slack[i] == summary.avg_rate[i] - config.users[i].min_avg_rate);
  CHECK(summary.median_call_ns > 0.0);
}

TEST_CASE("allocator errors propagate") {
  const auto config = small_scenario(5);
  const SlotAllocator bad = [](const ChannelState& ch, const EffectiveWeights&, double p_max) {
    Allocation a = Allocation::none(ch.size());
    a.powers[0] = 2.0 * p_max;
    a.selected[0] = true;
    return a;
  };
  CHECK_THROWS_AS(run(config, bad), InvalidAllocation);
}
