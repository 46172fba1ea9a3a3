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

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "qtflab/cli.hpp"

namespace {

const std::map<std::string, std::string> kDescriptions = {
    {"trapdoor-demo", "Exhaustive trapdoor inversion check over all inputs"},
    {"twirl-check", "Compare both sides of the Pauli-Z twirl on random operators"},
    {"pgm-grid", "Pretty-good-measurement success table over (n, m)"},
    {"spectrum-check", "Dense vs predicted spectrum of the dephased symmetric projector"},
    {"prs-distinguish", "Pseudorandom-vs-Haar distinguishing game"},
    {"pke-demo", "Hybrid-encrypt a file, write the ciphertext, decrypt it back"},
    {"cpa-advantage", "CPA game for the public-key scheme"},
    {"kex-sim", "Key-exchange simulation: honest runs plus an adversary"},
};

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"qtflab: quantum trapdoor function laboratory"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("qtflab ") + QTFLAB_VERSION);

    qtflab::cli::RunConfig cfg;
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    std::string adversary;
    std::string format = "json";
    std::size_t max_dim = 0;

    for (const auto &name : qtflab::cli::subcommands()) {
        CLI::App *sub = app.add_subcommand(name, kDescriptions.at(name));
        sub->add_option("--seed", seed, "Root seed (required)")->required();
        sub->add_option("--n", cfg.n, "Security parameter(s)");
        sub->add_option("--m", cfg.m, "Copy count(s)");
        sub->add_option("--d", cfg.d, "Local dimension(s) for spectrum-check");
        sub->add_option("--family", cfg.family, "table | cryptographic | random_function");
        sub->add_option("--t,--copies", cfg.t, "Public-key copies given to the adversary");
        sub->add_option("--trials", trials, "Number of trials");
        sub->add_option("--adversary", adversary, "Adversary name");
        sub->add_option("--mode", cfg.mode, "CPA mode: bit | bitwise | hybrid");
        sub->add_option("--channel", cfg.channel, "authenticated_copy | unauthenticated");
        sub->add_option("--input", cfg.input, "pke-demo input file");
        sub->add_option("--ciphertext", cfg.ciphertext, "pke-demo ciphertext path");
        sub->add_option("--decrypted", cfg.decrypted, "pke-demo decrypted output path");
        sub->add_option("--transcript", cfg.transcript, "kex-sim: write one honest transcript (JSON lines)");
        sub->add_option("--out", cfg.out, "Report path (default: stdout)");
        sub->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--max-dim", max_dim, "Dense state-vector cap (amplitudes)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : qtflab::cli::kInvalidConfig;
    }

    for (CLI::App *sub : app.get_subcommands()) {
        cfg.subcommand = sub->get_name();
        cfg.seed = seed;
        if (sub->count("--trials") > 0) {
            cfg.trials = trials;
        }
        if (sub->count("--adversary") > 0) {
            cfg.adversary = adversary;
        }
        if (sub->count("--max-dim") > 0) {
            cfg.max_dim = max_dim;
        }
    }
    cfg.format = format == "csv" ? qtflab::cli::Format::kCsv : qtflab::cli::Format::kJson;

    qtflab::cli::Outcome outcome = qtflab::cli::run_subcommand(cfg);
    return qtflab::cli::emit(cfg, outcome, std::cout, std::cerr);
}
