//------------------------------------------------------------------------------
//
//   Copyright 2026 The revchain Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "test_support.hpp"

#include "revchain/error.hpp"
#include "revchain/ledger/bench.hpp"
#include "revchain/ledger/chain_file.hpp"
#include "revchain/ledger/mining.hpp"
#include "revchain/ledger/validate.hpp"
#include "revchain/node/fork.hpp"
#include "revchain/node/sim_network.hpp"
#include "revchain/selection/selection.hpp"
#include "revchain/workflow/workflow.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

using namespace revchain;
namespace rt = revchain::testing;
using nlohmann::json;

namespace {

struct Outcome
{
  bool        pass = true;
  std::string detail;
};

std::string fmt(char const *f, auto... args)
{
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// 1 ------------------------------------------------------------------------

Outcome mining_law()
{
  Outcome     out;
  int const   trials = 300;
  std::string summary;
  for (int p = 1; p <= 3; ++p)
  {
    double total = 0;
    for (int i = 0; i < trials; ++i)
    {
      auto const payload = ledger::to_bytes(fmt("law p=%d trial=%d", p, i));
      total += static_cast<double>(
          ledger::mine_block(ledger::genesis_block(), payload, ledger::Difficulty{p}, 1).tries);
    }
    double const mean     = total / trials;
    double const expected = std::pow(16.0, p);
    bool const   ok       = mean >= 0.8 * expected && mean <= 1.2 * expected;
    out.pass              = out.pass && ok;
    summary += fmt("%sp%d mean %.1f vs %.0f", p > 1 ? ", " : "", p, mean, expected);
  }
  out.detail = summary + fmt(" (%d trials each)", trials);
  return out;
}

// 2 ------------------------------------------------------------------------

Outcome growth_ratio()
{
  ledger::BenchOptions options;
  options.prefix_min     = 2;
  options.prefix_max     = 3;
  options.trials         = 200;
  options.budget_seconds = 600;
  auto const   stats     = ledger::bench_mine(options);
  double const ratio     = stats[1].median_time_ms / stats[0].median_time_ms;
  return {ratio >= 8 && ratio <= 32,
          fmt("median p3 %.3f ms / p2 %.3f ms = %.2f (need [8, 32], %llu trials)", stats[1].median_time_ms,
              stats[0].median_time_ms, ratio, static_cast<unsigned long long>(options.trials))};
}

// 3 ------------------------------------------------------------------------

Outcome tamper_evidence()
{
  ledger::Chain chain{ledger::Difficulty{2}, rt::salt_from_seed(3)};
  for (int i = 1; i <= 4; ++i)
  {
    chain.append(ledger::mine_block(chain.tip(), ledger::to_bytes(fmt("block %d of five", i)),
                                    chain.difficulty(), 1000 * i)
                     .block);
  }
  auto const original = chain.blocks();  // genesis plus four: five blocks

  std::size_t tried  = 0;
  std::size_t missed = 0;
  auto const  check  = [&](std::size_t at, std::function<void(ledger::Block &)> const &mutate) {
    auto blocks = original;
    mutate(blocks[at]);
    ++tried;
    if (blocks[at] == original[at])
    {
      ++missed;  // a mutation that changed nothing is a harness bug
      return;
    }
    auto const c = ledger::Chain::from_blocks(chain.difficulty(), chain.salt(), blocks);
    if (ledger::validate_chain(c).valid || ledger::validate_chain_serial(c).valid)
    {
      ++missed;
    }
  };

  std::string const hex = "0123456789abcdef";
  for (std::size_t b = 0; b < original.size(); ++b)
  {
    for (std::size_t i = 0; i < original[b].payload.size(); ++i)
    {
      for (int bit = 0; bit < 8; ++bit)
      {
        check(b, [&](ledger::Block &blk) { blk.payload[i] ^= static_cast<std::uint8_t>(1u << bit); });
      }
    }
    for (std::int64_t delta : {1LL, -1LL, 7LL, 1LL << 20})
    {
      check(b, [&](ledger::Block &blk) { blk.nonce += static_cast<std::uint64_t>(delta); });
      check(b, [&](ledger::Block &blk) { blk.timestamp += delta; });
    }
    auto const prev = original[b].prev_hash.str();
    for (std::size_t pos = 0; pos < prev.size(); ++pos)
    {
      for (char c : hex)
      {
        if (c == prev[pos])
        {
          continue;
        }
        auto changed = prev;
        changed[pos] = c;
        check(b, [&](ledger::Block &blk) { blk.prev_hash = ledger::Hash256::parse(changed); });
      }
    }
  }
  return {missed == 0, fmt("%zu mutations over %zu blocks, %zu undetected", tried, original.size(), missed)};
}

// 4 ------------------------------------------------------------------------

ledger::Bytes submitted_payload(int n)
{
  workflow::WorkflowEvent ev;
  ev.type       = workflow::EventType::Submitted;
  ev.article_id = fmt("convergence-article-%02d", n);
  ev.actor      = registry::code_name(rt::salt_from_seed(4), fmt("author-%d", n)).str();
  ev.at         = 1000 + n;
  return ev.to_payload();
}

Outcome convergence()
{
  int const    seeds  = 50;
  int const    events = 50;
  int          failed = 0;
  std::size_t  forks  = 0;
  ledger::Chain const genesis_only{ledger::Difficulty{1}, rt::salt_from_seed(4)};
  std::set<std::string, std::less<>> const ids{"n0", "n1", "n2", "n3", "n4"};

  for (int seed = 0; seed < seeds; ++seed)
  {
    node::SimNetwork net{static_cast<std::uint64_t>(seed)};
    for (auto const &id : ids)
    {
      net.add_node(node::NodeCore{id, ids, genesis_only});
    }
    std::mt19937_64 rng{static_cast<std::uint64_t>(seed) * 7919 + 1};
    for (int e = 0; e < events; ++e)
    {
      net.originate(fmt("n%d", e % 5), submitted_payload(e), 1000 + e);
      net.run(std::uniform_int_distribution<std::size_t>{0, 4}(rng));
    }
    net.run();

    auto const  reference = ledger::serialize_chain(net.node("n0").chain());
    bool        ok        = ledger::validate_chain(net.node("n0").chain()).valid;
    for (auto const &id : ids)
    {
      ok = ok && ledger::serialize_chain(net.node(id).chain()) == reference;
      forks += net.node(id).adoptions();
    }
    std::multiset<ledger::Bytes> payloads;
    for (auto const &b : net.node("n0").chain().blocks())
    {
      if (b.index > 0)
      {
        payloads.insert(b.payload);
      }
    }
    for (int e = 0; e < events; ++e)
    {
      ok = ok && payloads.count(submitted_payload(e)) == 1;
    }
    ok = ok && payloads.size() == static_cast<std::size_t>(events);
    failed += !ok;
  }

  // Scripted equal-length forks: both sides settle on the same chain, which
  // is the one with the smaller tip hash.
  int const fork_cases  = 50;
  int       fork_failed = 0;
  for (int k = 0; k < fork_cases; ++k)
  {
    auto a = genesis_only;
    auto b = genesis_only;
    for (int i = 0; i < 3; ++i)
    {
      a.append(ledger::mine_block(a.tip(), ledger::to_bytes(fmt("fork %d a %d", k, i)), a.difficulty(), 10).block);
      b.append(ledger::mine_block(b.tip(), ledger::to_bytes(fmt("fork %d b %d", k, i)), b.difficulty(), 10).block);
    }
    bool ok = node::resolve_fork(a, b).chosen == node::resolve_fork(b, a).chosen;

    node::SimNetwork net{static_cast<std::uint64_t>(k)};
    std::set<std::string, std::less<>> const pair{"a", "b"};
    net.add_node(node::NodeCore{"a", pair, a});
    net.add_node(node::NodeCore{"b", pair, b});
    net.broadcast_block(k % 2 ? "a" : "b", (k % 2 ? a : b).tip());
    net.run();
    auto const &winner = a.tip().hash < b.tip().hash ? a : b;
    ok = ok && net.node("a").chain() == net.node("b").chain();
    ok = ok && net.node("a").chain().tip().hash == winner.tip().hash;
    fork_failed += !ok;
  }

  return {failed == 0 && fork_failed == 0,
          fmt("%d/%d seeds diverged (5 nodes, %d events, %zu adoptions); %d/%d scripted forks split", failed,
              seeds, events, forks, fork_failed, fork_cases)};
}

// 5 ------------------------------------------------------------------------

Outcome selection_oracle()
{
  std::mt19937_64 rng{5150};
  int             registries = 0;
  int             calls      = 0;
  int             mismatches = 0;
  int             shortfalls = 0;
  int             bad_y      = 0;
  int             successes  = 0;
  // Small random registries often lack three eligible reviewers; keep going
  // until the successful path is well covered too.
  while (registries < 1000 || successes < 1000)
  {
    auto const corpus  = rt::random_corpus(rng, 12, 5);
    auto const history = rt::random_history(rng, corpus);
    auto const reg     = rt::registry_from(corpus);
    auto const hist    = selection::ReviewerHistory::from_json(history);
    ++registries;
    for (auto const &[aid, article] : reg.articles())
    {
      int const y = rng() % 10 == 0 ? (rng() % 2 ? 2 : 7) : std::uniform_int_distribution<int>{3, 6}(rng);
      ++calls;
      auto const candidates = selection::filter_reviewers(aid, reg, hist);
      if (y < 3 || y > 6)
      {
        try
        {
          selection::select_reviewers(article, y, candidates, reg);
          ++mismatches;
        }
        catch (Error const &e)
        {
          mismatches += e.kind() != ErrorKind::Parameter;
          ++bad_y;
        }
        continue;
      }
      auto const oracle = rt::oracle_select(corpus, history, aid, y);
      std::vector<std::string> listed;
      for (auto const &c : candidates)
      {
        listed.push_back(c.person_id);
      }
      std::vector<std::string> expected_list;
      for (auto const &c : oracle.filtered)
      {
        expected_list.push_back(c.person_id);
      }
      bool ok = listed == expected_list;
      try
      {
        auto const sr = selection::select_reviewers(article, y, candidates, reg);
        ok            = ok && oracle.ok && sr.person_ids == oracle.selected;
        ++successes;
      }
      catch (InsufficientReviewersError const &e)
      {
        ++shortfalls;
        ok = ok && !oracle.ok && e.found() == oracle.eligible && e.wanted() == y;
      }
      mismatches += !ok;
    }
  }
  return {mismatches == 0 && shortfalls > 0 && bad_y > 0,
          fmt("%d registries, %d selections, %d mismatches (%d selected, %d insufficient-reviewer, %d bad y)",
              registries, calls, mismatches, successes, shortfalls, bad_y)};
}

// 6, 7, 8 --------------------------------------------------------------------

struct ScenarioRun
{
  rt::ScenarioStats  stats;
  bool               replay_matches = false;
  std::size_t        leaks          = 0;
  std::size_t        scanned_bytes  = 0;
};

ScenarioRun run_scenario(std::uint64_t seed, bool with_outbox)
{
  rt::TempDir                dir;
  ledger::Chain              chain{ledger::Difficulty{1}, rt::salt_from_seed(seed)};
  rt::ScenarioWorld          world{chain};
  world.registry = rt::registry_from(rt::scenario_corpus(14, 4));
  workflow::WorkflowOptions options;
  if (with_outbox)
  {
    options.outbox = workflow::Outbox{dir.path() / "outbox"};
  }
  workflow::Workflow wf{world.registry, world.history, world.chain, options};
  std::mt19937_64    rng{seed};

  ScenarioRun run;
  run.stats          = rt::run_random_scenario(rng, world, wf, 120);
  run.replay_matches = workflow::replay_chain(world.chain) == wf.cases();

  if (with_outbox)
  {
    std::string haystack;
    for (auto const &b : world.chain.blocks())
    {
      haystack.append(b.payload.begin(), b.payload.end());
      haystack += '\n';
    }
    haystack += ledger::serialize_chain(world.chain);
    if (std::filesystem::exists(dir.path() / "outbox"))
    {
      for (auto const &e : std::filesystem::directory_iterator{dir.path() / "outbox"})
      {
        std::ifstream in{e.path(), std::ios::binary};
        haystack.append(std::istreambuf_iterator<char>{in}, std::istreambuf_iterator<char>{});
      }
    }
    run.scanned_bytes = haystack.size();
    for (auto const &[id, p] : world.registry.persons())
    {
      run.leaks += haystack.find(id) != std::string::npos;
      run.leaks += haystack.find(p.display_name) != std::string::npos;
    }
  }
  return run;
}

Outcome workflow_constants()
{
  bool constants = workflow::kInitialInvitations == 6 && workflow::kMinAcceptances == 3 &&
                   workflow::kResponseWindowMs == 604'800'000 && workflow::kReportWindowMs == 2'419'200'000;
  int         scenarios  = 0;
  int         commands   = 0;
  int         rejected   = 0;
  std::size_t violations = 0;
  std::string first;
  for (std::uint64_t seed = 1; seed <= 60; ++seed)
  {
    auto const run = run_scenario(seed, false);
    ++scenarios;
    commands += run.stats.commands;
    rejected += run.stats.rejected_commands;
    violations += run.stats.violations.size();
    if (first.empty() && !run.stats.violations.empty())
    {
      first = run.stats.violations.front();
    }
  }
  return {constants && violations == 0 && commands > 0,
          fmt("%d scenarios, %d commands (%d refused by the engine), %zu violations%s%s", scenarios, commands,
              rejected, violations, first.empty() ? "" : "; first: ", first.c_str())};
}

Outcome anonymity()
{
  std::size_t leaks = 0;
  std::size_t bytes = 0;
  for (std::uint64_t seed = 100; seed < 110; ++seed)
  {
    auto const run = run_scenario(seed, true);
    leaks += run.leaks;
    bytes += run.scanned_bytes;
  }
  return {leaks == 0 && bytes > 0, fmt("%zu bytes of payloads and outbox scanned, %zu identity hits", bytes, leaks)};
}

Outcome event_sourcing()
{
  int matched   = 0;
  int scenarios = 0;
  int terminal  = 0;
  for (std::uint64_t seed = 1000; seed < 1120; ++seed)
  {
    auto const run = run_scenario(seed, false);
    ++scenarios;
    matched += run.replay_matches;
    terminal += run.stats.terminal_cases;
  }
  return {matched == scenarios,
          fmt("%d/%d scenarios replayed to identical case maps (%d terminal cases)", matched, scenarios, terminal)};
}

// 9 ------------------------------------------------------------------------

Outcome persistence()
{
  rt::TempDir     dir;
  std::mt19937_64 rng{909};
  int             mismatches = 0;
  for (int i = 0; i < 1000; ++i)
  {
    int const  difficulty = static_cast<int>(rng() % 2);
    int const  blocks     = static_cast<int>(rng() % 9);
    auto const chain      = rt::random_chain(rng, difficulty, blocks);
    auto const path       = dir.path() / "chain.jsonl";
    ledger::save_chain(chain, path);
    auto const loaded = ledger::load_chain(path);
    mismatches += !(loaded == chain) || ledger::serialize_chain(loaded) != ledger::serialize_chain(chain);
  }

  auto const  small = rt::random_chain(rng, 1, 2);
  auto const  text  = ledger::serialize_chain(small);
  std::size_t corruptions = 0;
  std::size_t accepted    = 0;
  for (std::size_t pos = 0; pos < text.size(); ++pos)
  {
    for (int v = 0; v < 256; ++v)
    {
      if (static_cast<unsigned char>(text[pos]) == v)
      {
        continue;
      }
      auto bad = text;
      bad[pos] = static_cast<char>(v);
      ++corruptions;
      try
      {
        auto const c = ledger::load_chain_text(bad);
        accepted += ledger::validate_chain(c).valid;
      }
      catch (Error const &)
      {
      }
    }
  }
  return {mismatches == 0 && accepted == 0,
          fmt("1000 round trips, %d mismatches; %zu single-byte corruptions of a %zu-byte file, %zu accepted",
              mismatches, corruptions, text.size(), accepted)};
}

}  // namespace

int main()
{
  std::vector<std::pair<char const *, std::function<Outcome()>>> const criteria = {
      {"geometric mining law", mining_law},
      {"exponential growth ratio", growth_ratio},
      {"tamper evidence", tamper_evidence},
      {"replication convergence", convergence},
      {"selection oracle equivalence", selection_oracle},
      {"workflow constants", workflow_constants},
      {"anonymity on chain and outbox", anonymity},
      {"event-sourcing round trip", event_sourcing},
      {"persistence", persistence},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i)
  {
    auto const start = std::chrono::steady_clock::now();
    Outcome    out;
    try
    {
      out = criteria[i].second();
    }
    catch (std::exception const &e)
    {
      out = {false, std::string{"threw: "} + e.what()};
    }
    auto const secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %zu %s: %s (%s; %.1fs)\n", i + 1, criteria[i].first, out.pass ? "PASS" : "FAIL",
                out.detail.c_str(), secs);
    std::fflush(stdout);
    failures += !out.pass;
  }
  return failures == 0 ? 0 : 1;
}
