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

// revchain: command-line front end for the review ledger.
//
// Exit codes: 0 success, 1 domain error, 2 usage or configuration error.

#include "state_dir.hpp"

#include "revchain/error.hpp"
#include "revchain/ledger/bench.hpp"
#include "revchain/ledger/chain_file.hpp"
#include "revchain/ledger/validate.hpp"
#include "revchain/node/config.hpp"
#include "revchain/node/tcp_node.hpp"
#include "revchain/workflow/workflow.hpp"

#include <CLI11.hpp>

#include <sys/resource.h>

#include <atomic>
#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace fs = std::filesystem;
using namespace revchain;

namespace {

constexpr int kExitOk     = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage  = 2;

struct Globals
{
  std::string state_dir  = "revchain-state";
  bool        wall_clock = false;
};

std::int64_t now_ms(Globals const &g, cli::State const &state)
{
  return g.wall_clock ? cli::wall_clock_ms() : state.clock_ms;
}

workflow::WorkflowOptions workflow_options(cli::State const &state)
{
  workflow::WorkflowOptions options;
  options.outbox.emplace(state.outbox_dir());
  return options;
}

void print_case(workflow::ReviewCase const &c)
{
  std::cout << c.article_id << ": " << registry::to_string(c.state) << " (round " << c.round
            << ", " << c.accepted_count() << " accepted, " << c.pending_count() << " pending, "
            << c.reports_in_round() << " reports)\n";
  for (auto const &inv : c.invitations)
  {
    std::cout << "  " << inv.invitation_id << "  " << workflow::to_string(inv.state)
              << "  reviewer " << inv.reviewer_pseudonym.str().substr(0, 12)
              << "  respond_by " << inv.respond_by;
    if (inv.report_due)
    {
      std::cout << "  report_due " << *inv.report_due;
    }
    std::cout << "\n";
  }
}

std::int64_t peak_rss_bytes()
{
  rusage usage{};
  if (::getrusage(RUSAGE_SELF, &usage) != 0)
  {
    return -1;
  }
  return static_cast<std::int64_t>(usage.ru_maxrss) * 1024;  // Linux reports KiB
}

volatile std::sig_atomic_t g_interrupted = 0;

extern "C" void on_signal(int)
{
  g_interrupted = 1;
}

int run_node(Globals const &g, std::string const &config_path, int sync_interval_ms)
{
  node::PeerConfig config;
  try
  {
    config = node::PeerConfig::load(config_path);
  }
  catch (Error const &e)
  {
    std::cerr << "revchain: " << e.what() << "\n";
    return kExitUsage;
  }

  fs::path const dir = g.state_dir;
  if (!fs::exists(dir / cli::kChainFile))
  {
    cli::init_state(dir, ledger::Difficulty{cli::kDefaultDifficulty});
  }
  cli::DirLock const lock{dir};
  auto const         chain_path = dir / cli::kChainFile;

  node::TcpNode tcp{config, ledger::load_chain(chain_path)};
  try
  {
    tcp.start();
  }
  catch (Error const &e)
  {
    std::cerr << "revchain: " << e.what() << "\n";
    return kExitUsage;
  }

  struct sigaction sa{};
  sa.sa_handler = on_signal;
  sigemptyset(&sa.sa_mask);
  ::sigaction(SIGINT, &sa, nullptr);
  ::sigaction(SIGTERM, &sa, nullptr);

  std::cout << "node " << config.node_id << " listening on " << config.listen_address.host << ":"
            << tcp.port() << std::endl;

  auto saved = tcp.chain();
  auto sync_round = [&] {
    for (auto const &[peer, outcome] : tcp.sync_all())
    {
      char const *word = outcome == node::SyncOutcome::Adopted ? "adopted"
                         : outcome == node::SyncOutcome::Kept  ? "kept"
                                                               : "unreachable";
      std::cout << "sync " << peer.str() << ": " << word << std::endl;
    }
    auto current = tcp.chain();
    if (!(current == saved))
    {
      ledger::save_chain(current, chain_path);
      saved = std::move(current);
      std::cout << "chain saved: " << saved.size() << " blocks, tip " << saved.tip().hash.str()
                << std::endl;
    }
  };

  sync_round();
  std::cout << "startup sync complete" << std::endl;

  auto next_sync = std::chrono::steady_clock::now() + std::chrono::milliseconds{sync_interval_ms};
  while (!g_interrupted)
  {
    std::this_thread::sleep_for(std::chrono::milliseconds{50});
    if (std::chrono::steady_clock::now() >= next_sync)
    {
      sync_round();
      next_sync = std::chrono::steady_clock::now() + std::chrono::milliseconds{sync_interval_ms};
    }
  }

  tcp.stop();
  auto const final_chain = tcp.chain();
  ledger::save_chain(final_chain, chain_path);
  std::cout << "shutdown: saved " << final_chain.size() << " blocks" << std::endl;
  return kExitOk;
}

int exit_code_for(Error const &e)
{
  switch (e.kind())
  {
  case ErrorKind::Config:
  case ErrorKind::Parameter:
    return kExitUsage;
  default:
    return kExitDomain;
  }
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"revchain: peer-review workflow on a proof-of-work ledger"};
  app.require_subcommand(1);

  Globals g;
  app.add_option("--state-dir", g.state_dir, "State directory")->capture_default_str();
  app.add_flag("--wall-clock", g.wall_clock, "Use real time instead of the simulated clock");

  // init
  int  init_difficulty = cli::kDefaultDifficulty;
  auto init            = app.add_subcommand("init", "Create an empty state directory");
  init->add_option("--difficulty", init_difficulty, "Leading zero hex digits per block hash")
      ->check(CLI::Range(0, ledger::Difficulty::kMax))
      ->capture_default_str();

  // ingest
  std::string corpus_path;
  auto        ingest = app.add_subcommand("ingest", "Load persons and articles from a corpus file");
  ingest->add_option("corpus", corpus_path, "Corpus JSON")->required();

  // submit
  std::string article_id;
  auto        submit = app.add_subcommand("submit", "Submit an article for review");
  submit->add_option("article_id", article_id)->required();

  // screen
  std::string decision_text;
  int         reviewers = workflow::kInitialInvitations;
  auto        screen    = app.add_subcommand("screen", "Editor screening: proceed or desk_reject");
  screen->add_option("article_id", article_id)->required();
  screen->add_option("decision", decision_text)
      ->required()
      ->check(CLI::IsMember({"proceed", "desk_reject"}));
  screen->add_option("--reviewers", reviewers, "Invitations to send")
      ->check(CLI::Range(3, 6))
      ->capture_default_str();

  // respond
  std::string invitation_id;
  std::string answer_text;
  auto        respond = app.add_subcommand("respond", "Answer a review invitation");
  respond->add_option("invitation_id", invitation_id)->required();
  respond->add_option("answer", answer_text)->required()->check(CLI::IsMember({"accept", "decline"}));

  // report
  std::string recommendation_text;
  auto        report = app.add_subcommand("report", "Submit a review report");
  report->add_option("invitation_id", invitation_id)->required();
  report->add_option("recommendation", recommendation_text)
      ->required()
      ->check(CLI::IsMember({"accept", "minor_revise", "major_revise", "reject"}));

  // decide
  std::string verdict_text;
  auto        decide = app.add_subcommand("decide", "Editor decision: accept, revise or reject");
  decide->add_option("article_id", article_id)->required();
  decide->add_option("verdict", verdict_text)
      ->required()
      ->check(CLI::IsMember({"accept", "revise", "reject"}));

  // tick
  std::int64_t advance_ms = 0;
  auto         tick       = app.add_subcommand("tick", "Advance the simulated clock and expire deadlines");
  tick->add_option("advance_ms", advance_ms, "Milliseconds to advance")->check(CLI::NonNegativeNumber);

  // status
  auto status = app.add_subcommand("status", "Show review cases");
  status->add_option("article_id", article_id);

  // validate
  auto validate = app.add_subcommand("validate", "Check the chain file");

  // bench
  int         prefix_min = 0;
  int         prefix_max = 3;
  int         trials     = 10;
  double      budget     = 120.0;
  bool        allow_long = false;
  std::string csv_path;
  auto        bench = app.add_subcommand("bench", "Mining benchmark, CSV output");
  bench->add_option("--prefix-min", prefix_min)->check(CLI::Range(0, ledger::Difficulty::kMax))->capture_default_str();
  bench->add_option("--prefix-max", prefix_max)->check(CLI::Range(0, ledger::Difficulty::kMax))->capture_default_str();
  bench->add_option("--trials", trials)->check(CLI::PositiveNumber)->capture_default_str();
  bench->add_option("--budget-seconds", budget, "Refuse runs projected to take longer")->capture_default_str();
  bench->add_flag("--allow-long", allow_long, "Permit prefixes of 5 and above");
  bench->add_option("--out", csv_path, "CSV destination (stdout when omitted)");

  // node
  std::string config_path;
  int         sync_interval_ms = 5000;
  auto        node_cmd         = app.add_subcommand("node", "Run a peer node until interrupted");
  node_cmd->add_option("--config", config_path, "Node config JSON")->required();
  node_cmd->add_option("--sync-interval-ms", sync_interval_ms)->check(CLI::PositiveNumber)->capture_default_str();

  try
  {
    app.parse(argc, argv);
  }
  catch (CLI::ParseError const &e)
  {
    int const code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try
  {
    fs::path const dir = g.state_dir;

    if (*init)
    {
      cli::init_state(dir, ledger::Difficulty{init_difficulty});
      std::cout << "initialised " << dir.string() << " (difficulty " << init_difficulty << ")\n";
      return kExitOk;
    }

    if (*bench)
    {
      if (prefix_min > prefix_max)
      {
        std::cerr << "revchain: --prefix-min must not exceed --prefix-max\n";
        return kExitUsage;
      }
      if (prefix_max >= 5)
      {
        if (!allow_long)
        {
          std::cerr << "revchain: prefix " << prefix_max
                    << " can take minutes per block; pass --allow-long to run it\n";
          return kExitUsage;
        }
        std::cerr << "warning: prefix " << prefix_max
                  << " can take minutes per block and grows 16x per step\n";
      }
      ledger::BenchOptions options;
      options.prefix_min     = prefix_min;
      options.prefix_max     = prefix_max;
      options.trials         = static_cast<std::uint64_t>(trials);
      options.budget_seconds = budget;

      std::ofstream file;
      if (!csv_path.empty())
      {
        file.open(csv_path, std::ios::trunc);
        if (!file)
        {
          throw Error{ErrorKind::Io, "cannot write " + csv_path};
        }
      }
      std::ostream &out = csv_path.empty() ? std::cout : file;
      out << "prefix,trials,mean_time_ms,mean_tries,peak_rss_bytes\n";
      ledger::bench_mine(options, [&](ledger::MiningStats const &s) {
        char line[160];
        std::snprintf(line, sizeof line, "%d,%llu,%.3f,%.3f,%lld\n", s.prefix.prefix(),
                      static_cast<unsigned long long>(s.trials), s.mean_time_ms, s.mean_tries,
                      static_cast<long long>(peak_rss_bytes()));
        out << line << std::flush;
      });
      return kExitOk;
    }

    if (*node_cmd)
    {
      return run_node(g, config_path, sync_interval_ms);
    }

    if (*validate)
    {
      cli::DirLock const lock{dir};
      auto const         chain = ledger::parse_chain([&] {
        std::ifstream     in{dir / cli::kChainFile, std::ios::binary};
        std::stringstream buffer;
        buffer << in.rdbuf();
        return buffer.str();
      }());
      auto const report = ledger::validate_chain(chain);
      if (!report.valid)
      {
        std::cout << report.describe() << "\n";
        return kExitDomain;
      }
      std::cout << "valid: " << chain.size() << " blocks, difficulty " << chain.difficulty().prefix()
                << ", tip " << chain.tip().hash.str() << "\n";
      return kExitOk;
    }

    cli::State state{dir};

    if (*ingest)
    {
      auto const result = state.registry.ingest_file(corpus_path);
      for (auto const &r : result.rejects)
      {
        std::cerr << "rejected " << r.record << ": " << r.reason << "\n";
      }
      state.save();
      std::cout << "ingested " << result.persons_added << " persons, " << result.articles_added
                << " articles, " << result.rejects.size() << " rejected\n";
      return kExitOk;
    }

    workflow::Workflow wf{state.registry, state.history, state.chain, workflow_options(state)};

    if (*status)
    {
      if (!article_id.empty())
      {
        print_case(wf.case_for(article_id));
      }
      else
      {
        for (auto const &[id, c] : wf.cases())
        {
          print_case(c);
        }
      }
      std::cout << "clock " << now_ms(g, state) << " ms, chain " << state.chain.size()
                << " blocks\n";
      return kExitOk;
    }

    if (*submit)
    {
      print_case(wf.submit_manuscript(article_id, now_ms(g, state)));
    }
    else if (*screen)
    {
      auto const d = *workflow::parse_screen_decision(decision_text);
      print_case(wf.screen(article_id, d, now_ms(g, state), reviewers));
    }
    else if (*respond)
    {
      print_case(wf.respond(invitation_id, *workflow::parse_answer(answer_text), now_ms(g, state)));
    }
    else if (*report)
    {
      print_case(wf.submit_report(invitation_id, *workflow::parse_recommendation(recommendation_text),
                                  now_ms(g, state)));
    }
    else if (*decide)
    {
      print_case(wf.decide(article_id, *workflow::parse_verdict(verdict_text), now_ms(g, state)));
    }
    else if (*tick)
    {
      if (!g.wall_clock)
      {
        state.clock_ms += advance_ms;
      }
      auto const transitions = wf.tick(now_ms(g, state));
      std::size_t expired = 0, replaced = 0;
      for (auto const &t : transitions)
      {
        (t.kind == workflow::Transition::Kind::ReplacementSent ? replaced : expired) += 1;
      }
      std::cout << expired << (expired == 1 ? " invitation" : " invitations") << " expired\n";
      if (replaced > 0)
      {
        std::cout << replaced << " replacement" << (replaced == 1 ? "" : "s") << " sent\n";
      }
      std::cout << "clock " << now_ms(g, state) << " ms\n";
    }
    state.save();
    return kExitOk;
  }
  catch (Error const &e)
  {
    std::cerr << "revchain: " << e.what() << "\n";
    return exit_code_for(e);
  }
  catch (std::exception const &e)
  {
    std::cerr << "revchain: " << e.what() << "\n";
    return kExitDomain;
  }
}
