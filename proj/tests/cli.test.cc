// Copyright 2026 The qtflab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gtest/gtest.h"

#include "qtflab/cli.hpp"
#include "qtflab/errors.hpp"

using namespace qtflab;
using namespace qtflab::cli;

namespace {

RunConfig config(std::string sub, std::uint64_t seed = 1) {
    RunConfig c;
    c.subcommand = std::move(sub);
    c.seed = seed;
    return c;
}

std::filesystem::path temp_path(const std::string &name) {
    return std::filesystem::temp_directory_path() / ("qtflab_cli_test_" + name);
}

struct CapGuard {
    std::size_t saved = max_state_dim();
    ~CapGuard() { set_max_state_dim(saved); }
};

}  // namespace

TEST(Cli, subcommand_list) {
    std::vector<std::string> expect = {"cpa-advantage", "kex-sim",         "pgm-grid",      "pke-demo",
                                       "prs-distinguish", "spectrum-check", "trapdoor-demo", "twirl-check"};
    ASSERT_EQ(subcommands(), expect);
}

TEST(Cli, seed_is_required) {
    RunConfig c = config("pgm-grid");
    c.seed.reset();
    ASSERT_EQ(run_subcommand(c).exit_code, kInvalidConfig);
}

TEST(Cli, unknown_subcommand_and_family) {
    ASSERT_EQ(run_subcommand(config("frobnicate")).exit_code, kInvalidConfig);
    RunConfig c = config("trapdoor-demo");
    c.family = "aes";
    ASSERT_EQ(run_subcommand(c).exit_code, kInvalidConfig);
}

TEST(Cli, resource_cap_exit_code) {
    CapGuard guard;
    RunConfig c = config("trapdoor-demo");
    c.n = {12};
    c.max_dim = 1024;
    ASSERT_EQ(run_subcommand(c).exit_code, kResourceCap);
}

TEST(Cli, pgm_grid_csv_header) {
    RunConfig c = config("pgm-grid", 7);
    c.format = Format::kCsv;
    Outcome o = run_subcommand(c);
    ASSERT_EQ(o.exit_code, kOk) << o.summary;
    ASSERT_NE(o.report.find(std::string("\n") + kGridCsvHeader + "\n"), std::string::npos);
    ASSERT_NE(o.report.find("# seed=7\n"), std::string::npos);
}

TEST(Cli, pgm_grid_json_has_rows) {
    RunConfig c = config("pgm-grid");
    c.n = {1, 2};
    c.m = {0, 1};
    Outcome o = run_subcommand(c);
    ASSERT_EQ(o.exit_code, kOk);
    auto j = nlohmann::json::parse(o.report);
    ASSERT_EQ(j["status"], "pass");
    ASSERT_EQ(j["result"]["rows"].size(), 4u);
}

TEST(Cli, reports_are_deterministic) {
    for (const auto &sub : subcommands()) {
        if (sub == "pke-demo") {
            continue;
        }
        RunConfig c = config(sub, 99);
        c.trials = 50;
        if (sub == "twirl-check") {
            c.trials = 20;
        }
        Outcome a = run_subcommand(c);
        Outcome b = run_subcommand(c);
        ASSERT_EQ(a.exit_code, kOk) << sub << ": " << a.summary;
        ASSERT_EQ(a.report, b.report) << sub;
    }
}

TEST(Cli, pke_demo_round_trip) {
    auto in = temp_path("msg.bin");
    auto ct = temp_path("msg.qpke");
    auto dec = temp_path("msg.dec");
    {
        std::ofstream f(in, std::ios::binary);
        f << "attack at dawn";
    }
    RunConfig c = config("pke-demo", 5);
    c.n = {3};
    c.input = in.string();
    c.ciphertext = ct.string();
    c.decrypted = dec.string();
    Outcome o = run_subcommand(c);
    ASSERT_EQ(o.exit_code, kOk) << o.summary;
    std::ifstream f(dec, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    ASSERT_EQ(ss.str(), "attack at dawn");
    std::filesystem::remove(in);
    std::filesystem::remove(ct);
    std::filesystem::remove(dec);
}

TEST(Cli, pke_demo_missing_input) {
    RunConfig c = config("pke-demo");
    ASSERT_EQ(run_subcommand(c).exit_code, kInvalidConfig);
    c.input = temp_path("does_not_exist").string();
    ASSERT_EQ(run_subcommand(c).exit_code, kInvalidConfig);
}

TEST(Cli, kex_sim_writes_transcript) {
    auto path = temp_path("transcript.jsonl");
    RunConfig c = config("kex-sim", 3);
    c.n = {2};
    c.trials = 20;
    c.transcript = path.string();
    ASSERT_EQ(run_subcommand(c).exit_code, kOk);
    ASSERT_TRUE(std::filesystem::exists(path));
    ASSERT_GT(std::filesystem::file_size(path), 0u);
    std::filesystem::remove(path);
}

TEST(Cli, adversary_must_match_subcommand) {
    RunConfig c = config("cpa-advantage");
    c.adversary = "swap";
    ASSERT_EQ(run_subcommand(c).exit_code, kInvalidConfig);
    RunConfig k = config("kex-sim");
    k.channel = "unauthenticated";
    k.adversary = "exhaustive";
    ASSERT_EQ(run_subcommand(k).exit_code, kInvalidConfig);
}

TEST(Cli, emit_routes_streams) {
    RunConfig c = config("spectrum-check");
    Outcome o = run_subcommand(c);
    std::ostringstream out;
    std::ostringstream err;
    ASSERT_EQ(emit(c, o, out, err), kOk);
    ASSERT_EQ(out.str(), o.report);
    ASSERT_EQ(err.str(), o.summary + "\n");

    auto path = temp_path("report.json");
    c.out = path.string();
    std::ostringstream out2;
    std::ostringstream err2;
    ASSERT_EQ(emit(c, o, out2, err2), kOk);
    ASSERT_EQ(out2.str(), o.summary + "\n");
    std::filesystem::remove(path);

    c.out = "/nonexistent-dir/x/report.json";
    std::ostringstream out3;
    std::ostringstream err3;
    ASSERT_EQ(emit(c, o, out3, err3), kInvalidConfig);
    ASSERT_NE(err3.str().find("/nonexistent-dir/x/report.json"), std::string::npos);
}
