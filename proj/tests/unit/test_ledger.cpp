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

#include "test_support.hpp"

#include "revchain/error.hpp"
#include "revchain/ledger/bench.hpp"
#include "revchain/ledger/block.hpp"
#include "revchain/ledger/chain.hpp"
#include "revchain/ledger/chain_file.hpp"
#include "revchain/ledger/crypto.hpp"
#include "revchain/ledger/mining.hpp"
#include "revchain/ledger/validate.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace revchain;
using namespace revchain::ledger;
namespace rt = revchain::testing;

namespace {

Chain five_block_chain(int difficulty = 1)
{
  Chain chain{Difficulty{difficulty}, rt::counting_salt()};
  for (int i = 1; i <= 5; ++i)
  {
    chain.append(mine_block(chain.tip(), to_bytes("event " + std::to_string(i)), chain.difficulty(),
                            1000 * i)
                     .block);
  }
  return chain;
}

std::string slurp(std::filesystem::path const &p)
{
  std::ifstream     in{p, std::ios::binary};
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("sha256 of the empty input matches the reference constant")
{
  CHECK(to_hex(sha256(std::string_view{})) == rt::kSha256Empty);
  CHECK(Hash256::of({}).str() == rt::kSha256Empty);
}

TEST_CASE("genesis block hash matches an independently computed digest")
{
  auto const &g = genesis_block();
  CHECK(g.index == 0);
  CHECK(g.timestamp == 0);
  CHECK(g.prev_hash.str() == std::string(64, '0'));
  CHECK(g.payload.empty());
  CHECK(g.nonce == 0);
  CHECK(g.payload_digest.str() == rt::kSha256Empty);
  CHECK(g.hash.str() == rt::kGenesisHash);
  CHECK(hash_preimage(0, 0, Hash256{}, g.payload_digest, 0) ==
        "0|0|" + std::string(64, '0') + "|" + rt::kSha256Empty + "|0");
}

TEST_CASE("compute_hash is deterministic and matches a frozen sample")
{
  std::string ab;
  for (int i = 0; i < 32; ++i)
  {
    ab += "ab";
  }
  auto const h1 = compute_hash(7, 1700000000000, Hash256::parse(ab), Hash256::parse(rt::kSha256Empty), 42);
  auto const h2 = compute_hash(7, 1700000000000, std::string_view{ab}, rt::kSha256Empty, 42);
  CHECK(h1 == h2);
  CHECK(h1.str() == rt::kSampleBlockHash);
}

TEST_CASE("Hash256 rejects malformed hex")
{
  CHECK_THROWS_AS(Hash256::parse("abc"), Error);
  CHECK_THROWS_AS(Hash256::parse(std::string(64, 'A')), Error);
  CHECK_THROWS_AS(Hash256::parse(std::string(63, '0') + "g"), Error);
  CHECK_THROWS_AS(compute_hash(1, 1, std::string_view{"zz"}, rt::kSha256Empty, 0), Error);
  try
  {
    Hash256::parse("xyz");
  }
  catch (Error const &e)
  {
    CHECK(e.kind() == ErrorKind::Input);
  }
}

TEST_CASE("Difficulty is capped at 16")
{
  CHECK_NOTHROW(Difficulty{0});
  CHECK_NOTHROW(Difficulty{16});
  CHECK_THROWS_AS(Difficulty{17}, Error);
  CHECK_THROWS_AS(Difficulty{-1}, Error);
  CHECK(Difficulty{2}.satisfied_by(Hash256::parse("00" + std::string(62, 'f'))));
  CHECK_FALSE(Difficulty{3}.satisfied_by(Hash256::parse("00" + std::string(62, 'f'))));
}

TEST_CASE("base64 is strict and canonical")
{
  Bytes const data{0, 1, 2, 250, 251};
  auto const  text = base64_encode(data);
  CHECK(base64_decode(text) == data);
  CHECK(base64_encode({}) == "");
  CHECK(base64_decode("").empty());
  CHECK(base64_decode("YQ==") == to_bytes("a"));
  CHECK_THROWS_AS(base64_decode("YR=="), Error);  // non-zero padding bits
  CHECK_THROWS_AS(base64_decode("YQ"), Error);    // missing padding
  CHECK_THROWS_AS(base64_decode("Y Q=="), Error);
}

TEST_CASE("mining: prefix 0 accepts nonce 0 on the first try")
{
  auto const m = mine_block(genesis_block(), to_bytes("x"), Difficulty{0}, 5);
  CHECK(m.tries == 1);
  CHECK(m.block.nonce == 0);
  CHECK(m.block.index == 1);
  CHECK(m.block.prev_hash == genesis_block().hash);
  CHECK(m.block.timestamp == 5);
}

TEST_CASE("mining: result meets difficulty and is reproducible")
{
  auto const a = mine_block(genesis_block(), to_bytes("payload"), Difficulty{2}, 10);
  auto const b = mine_block(genesis_block(), to_bytes("payload"), Difficulty{2}, 10);
  CHECK(a.block == b.block);
  CHECK(a.tries == b.tries);
  CHECK(a.block.nonce + 1 == a.tries);
  CHECK(a.block.hash.str().substr(0, 2) == "00");
  CHECK(compute_hash(a.block) == a.block.hash);
}

TEST_CASE("mining: clock before the tip and exhausted limits are errors")
{
  auto const tip = mine_block(genesis_block(), {}, Difficulty{0}, 100).block;
  CHECK_THROWS_AS(mine_block(tip, {}, Difficulty{0}, 99), Error);
  try
  {
    mine_block(genesis_block(), to_bytes("p"), Difficulty{16}, 1, MiningLimits{1000});
    FAIL("mining should have given up");
  }
  catch (Error const &e)
  {
    CHECK(e.kind() == ErrorKind::Mining);
  }
}

TEST_CASE("mining: prefix 2 mean tries within 20% of 256")
{
  double total = 0;
  int const trials = 300;
  for (int i = 0; i < trials; ++i)
  {
    total += static_cast<double>(
        mine_block(genesis_block(), to_bytes("p2-" + std::to_string(i)), Difficulty{2}, 1).tries);
  }
  double const mean = total / trials;
  CHECK(mean > 256 * 0.8);
  CHECK(mean < 256 * 1.2);
}

TEST_CASE("append: accepted blocks and each rejection reason")
{
  Chain chain{Difficulty{2}, rt::counting_salt()};
  auto const b1 = mine_block(chain.tip(), to_bytes("one"), chain.difficulty(), 10).block;
  chain.append(b1);
  CHECK(chain.size() == 2);

  auto const reason_of = [&](Block const &b) -> std::string {
    try
    {
      chain.append(b);
    }
    catch (BlockRejected const &e)
    {
      return std::string{to_string(e.reason())};
    }
    return "accepted";
  };

  auto good = mine_block(chain.tip(), to_bytes("two"), chain.difficulty(), 20).block;

  auto mismatched      = good;
  mismatched.prev_hash = genesis_block().hash;
  CHECK(reason_of(mismatched) == "linkage break");

  CHECK(reason_of(b1) == "duplicate index");

  auto gap  = good;
  gap.index = 5;
  CHECK(reason_of(gap) == "index gap");

  auto early      = mine_block(chain.tip(), to_bytes("two"), chain.difficulty(), 20).block;
  early.timestamp = 5;
  CHECK(reason_of(early) == "timestamp regression");

  auto tampered    = good;
  tampered.payload = to_bytes("tw0");
  CHECK(reason_of(tampered) == "hash mismatch");

  // Meets difficulty 1 but not 2.
  Block weak;
  for (int i = 0;; ++i)
  {
    weak = mine_block(chain.tip(), to_bytes("weak" + std::to_string(i)), Difficulty{1}, 20).block;
    if (!Difficulty{2}.satisfied_by(weak.hash))
    {
      break;
    }
  }
  CHECK(reason_of(weak) == "insufficient difficulty");

  CHECK(reason_of(good) == "accepted");
  CHECK(chain.size() == 3);
}

TEST_CASE("validate: genesis-only chain is valid, empty sequence is structural")
{
  Chain const chain{Difficulty{3}, rt::counting_salt()};
  CHECK(validate_chain(chain).valid);
  auto const empty = Chain::from_blocks(Difficulty{0}, rt::counting_salt(), {});
  try
  {
    validate_chain(empty);
    FAIL("expected structural error");
  }
  catch (Error const &e)
  {
    CHECK(e.kind() == ErrorKind::Structural);
  }
  CHECK_THROWS_AS(validate_chain_serial(empty), Error);
}

TEST_CASE("validate: payload flip at block 3 is a hash mismatch at index 3")
{
  auto const chain  = five_block_chain();
  auto       blocks = chain.blocks();
  blocks[3].payload[0] ^= 0x01;
  auto const bad    = Chain::from_blocks(chain.difficulty(), chain.salt(), blocks);
  auto const report = validate_chain(bad);
  CHECK_FALSE(report.valid);
  CHECK(report.bad_index == 3);
  CHECK(report.reason == ChainFault::HashMismatch);
  CHECK(report.describe() == "invalid at index 3: hash mismatch");
}

TEST_CASE("validate: re-mined block 3 breaks linkage at index 4")
{
  auto const chain  = five_block_chain();
  auto       blocks = chain.blocks();
  blocks[3] = mine_block(blocks[2], to_bytes("rewritten"), chain.difficulty(), blocks[3].timestamp).block;
  auto const report = validate_chain(Chain::from_blocks(chain.difficulty(), chain.salt(), blocks));
  CHECK_FALSE(report.valid);
  CHECK(report.bad_index == 4);
  CHECK(report.reason == ChainFault::LinkageBreak);
}

TEST_CASE("validate: parallel kernel agrees with the serial reference")
{
  std::mt19937_64 rng{11};
  for (int round = 0; round < 60; ++round)
  {
    auto chain  = rt::random_chain(rng, 1, 12);
    auto blocks = chain.blocks();
    if (round % 3 != 0)
    {
      auto &b = blocks[std::uniform_int_distribution<std::size_t>{0, blocks.size() - 1}(rng)];
      switch (round % 4)
      {
      case 0:
        b.nonce += 1;
        break;
      case 1:
        b.timestamp -= 1;
        break;
      case 2:
        b.payload.push_back(1);
        break;
      default:
        b.index += 1;
        break;
      }
    }
    auto const c = Chain::from_blocks(chain.difficulty(), chain.salt(), blocks);
    auto const p = validate_chain(c);
    auto const s = validate_chain_serial(c);
    CHECK(p.valid == s.valid);
    CHECK(p.bad_index == s.bad_index);
    CHECK(p.reason == s.reason);
  }
}

TEST_CASE("chain file: save then load is the identity")
{
  rt::TempDir     dir;
  std::mt19937_64 rng{5};
  auto const      chain = rt::random_chain(rng, 1, 10);
  auto const      path  = dir.path() / "chain.jsonl";
  save_chain(chain, path);
  CHECK(load_chain(path) == chain);
  CHECK(serialize_chain(load_chain(path)) == slurp(path));
}

TEST_CASE("chain file: one JSON object per line in the fixed field order")
{
  auto const text  = serialize_chain(five_block_chain());
  auto const first = text.substr(0, text.find('\n'));
  CHECK(first.rfind("{\"difficulty\":1,\"chain_salt\":\"", 0) == 0);
  auto const second = text.substr(first.size() + 1, text.find('\n', first.size() + 1) - first.size() - 1);
  CHECK(second.rfind("{\"index\":0,\"timestamp\":0,\"prev_hash\":\"", 0) == 0);
  auto const pos = [&](char const *k) { return second.find(k); };
  CHECK(pos("\"payload_digest\"") < pos("\"payload\":"));
  CHECK(pos("\"payload\":") < pos("\"nonce\""));
  CHECK(pos("\"nonce\"") < pos("\"hash\""));
  CHECK(std::count(text.begin(), text.end(), '\n') == 7);
}

TEST_CASE("chain file: truncated last line is a load error on that line")
{
  auto text = serialize_chain(five_block_chain());
  text.resize(text.size() - 20);
  try
  {
    load_chain_text(text);
    FAIL("expected load error");
  }
  catch (LoadError const &e)
  {
    CHECK(e.line() == 7);
    CHECK(e.kind() == ErrorKind::Load);
  }
}

TEST_CASE("chain file: edited hash digit is an integrity error at that block")
{
  auto const chain = five_block_chain();
  auto       text  = serialize_chain(chain);
  auto const h     = chain.blocks()[2].hash.str();
  auto const at    = text.find("\"hash\":\"" + h);
  REQUIRE(at != std::string::npos);
  auto &digit = text[at + 8 + 10];
  digit       = digit == 'a' ? 'b' : 'a';
  try
  {
    load_chain_text(text);
    FAIL("expected integrity error");
  }
  catch (IntegrityError const &e)
  {
    CHECK(e.index() == 2);
  }
}

TEST_CASE("chain file: header edits are caught")
{
  auto const chain = five_block_chain(1);
  auto       text  = serialize_chain(chain);
  auto       bumped = text;
  bumped.replace(bumped.find("\"difficulty\":1"), 14, "\"difficulty\":0");
  CHECK_THROWS_AS(load_chain_text(bumped), LoadError);
  auto no_newline = text.substr(0, text.size() - 1);
  CHECK_THROWS_AS(load_chain_text(no_newline), LoadError);
  CHECK_THROWS_AS(load_chain_text(""), LoadError);
}

TEST_CASE("chain file: save refuses an invalid chain and leaves the old file")
{
  rt::TempDir dir;
  auto const  path  = dir.path() / "chain.jsonl";
  auto const  chain = five_block_chain();
  save_chain(chain, path);
  auto blocks = chain.blocks();
  blocks[4].nonce += 1;
  CHECK_THROWS_AS(save_chain(Chain::from_blocks(chain.difficulty(), chain.salt(), blocks), path),
                  IntegrityError);
  CHECK(load_chain(path) == chain);
}

TEST_CASE("bench: prefix 0 gives mean tries of exactly 1")
{
  BenchOptions options;
  options.prefix_min = 0;
  options.prefix_max = 0;
  options.trials     = 10;
  auto const stats   = bench_mine(options);
  REQUIRE(stats.size() == 1);
  CHECK(stats[0].mean_tries == 1.0);
  CHECK(stats[0].trials == 10);
}

TEST_CASE("bench: budget and range checks")
{
  BenchOptions options;
  options.prefix_min     = 8;
  options.prefix_max     = 8;
  options.trials         = 100;
  options.budget_seconds = 1;
  CHECK_THROWS_AS(bench_mine(options), BudgetExceededError);
  options.prefix_min = 3;
  options.prefix_max = 2;
  CHECK_THROWS_AS(bench_mine(options), Error);
}
