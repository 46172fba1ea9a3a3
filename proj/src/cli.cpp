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

#include "qtflab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <ostream>

#include <fmt/format.h>

#include "qtflab/attacks.hpp"
#include "qtflab/discrimination.hpp"
#include "qtflab/errors.hpp"
#include "qtflab/kex.hpp"
#include "qtflab/pke.hpp"
#include "qtflab/prs.hpp"
#include "qtflab/qtf.hpp"

namespace qtflab::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr double kDefectBound = 1e-9;
constexpr double kAgreeTolerance = 1e-9;

/// What a subcommand hands back before rendering.
struct Result {
    bool ok = true;
    Json json = Json::object();
    std::vector<std::string> csv_header;
    std::vector<std::vector<std::string>> csv_rows;
    std::string summary;
};

std::string num(double v) { return fmt::format("{:.17g}", v); }

std::string join(const std::vector<int> &v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out += (i ? " " : "") + std::to_string(v[i]);
    }
    return out;
}

Family family_of(const RunConfig &cfg) {
    auto f = parse_family(cfg.family);
    if (!f) {
        throw ArgumentError(fmt::format("unknown family '{}' (table, cryptographic, random_function)", cfg.family));
    }
    return *f;
}

int scalar(const std::vector<int> &v, int fallback, const char *name) {
    if (v.size() > 1) {
        throw ArgumentError(fmt::format("--{} takes a single value for this subcommand", name));
    }
    return v.empty() ? fallback : v.front();
}

int require_n(const RunConfig &cfg, int fallback) {
    const int n = scalar(cfg.n, fallback, "n");
    if (n < 1) {
        throw ArgumentError(fmt::format("--n must be positive, got {}", n));
    }
    return n;
}

std::size_t trials_of(const RunConfig &cfg, std::size_t fallback) {
    const std::size_t t = cfg.trials.value_or(fallback);
    if (t == 0) {
        throw ArgumentError("--trials must be positive");
    }
    return t;
}

std::string adversary_of(const RunConfig &cfg, const char *fallback, std::initializer_list<const char *> allowed) {
    std::string a = cfg.adversary.value_or(fallback);
    for (const char *ok : allowed) {
        if (a == ok) {
            return a;
        }
    }
    std::string list;
    for (const char *ok : allowed) {
        list += (list.empty() ? "" : ", ") + std::string(ok);
    }
    throw ArgumentError(fmt::format("adversary '{}' not available here ({})", a, list));
}

void experiment_csv(Result &r, const ExperimentReport &rep) {
    r.csv_header = {"field", "value"};
    auto add = [&](std::string k, std::string v) { r.csv_rows.push_back({std::move(k), std::move(v)}); };
    add("experiment", rep.experiment);
    add("seed", std::to_string(rep.seed));
    add("trials", std::to_string(rep.trials));
    for (const auto &[k, v] : rep.config) {
        add("config." + k, v);
    }
    for (const auto &a : rep.arms) {
        add("arm." + a.name + ".trials", std::to_string(a.trials));
        add("arm." + a.name + ".successes", std::to_string(a.hits));
    }
    add("metric", rep.metric);
    add("value", num(rep.value));
    add("ci_low", num(rep.ci.low));
    add("ci_high", num(rep.ci.high));
    add("std_error", num(rep.std_error));
    for (const auto &[k, v] : rep.extras) {
        add("extra." + k, num(v));
    }
}

Result experiment_result(const ExperimentReport &rep, std::string summary) {
    Result r;
    r.json = rep.to_json();
    experiment_csv(r, rep);
    r.summary = std::move(summary);
    return r;
}

// ---------------------------------------------------------------------------

Result trapdoor_demo(const RunConfig &cfg, Rng &rng) {
    const int n = require_n(cfg, 4);
    const Family family = family_of(cfg);
    const std::size_t keys = trials_of(cfg, 1);
    const std::size_t dim = std::size_t{1} << n;
    checked_pow(2, static_cast<std::size_t>(n), max_state_dim(), "trapdoor-demo");
    std::size_t inverted = 0;
    std::size_t total = 0;
    double max_defect = 0.0;
    Result r;
    r.csv_header = {"key", "x", "inverted", "amplitude_defect"};
    for (std::size_t k = 0; k < keys; ++k) {
        Rng key_rng = rng.split(k);
        qtf::Trapdoor tr = qtf::gen_tr(n, family, key_rng);
        qtf::EvalKey ek = qtf::gen_ev(tr);
        for (std::size_t xv = 0; xv < dim; ++xv) {
            Bits x(n, xv);
            StateVector phi = qtf::eval(ek, x);
            StateVector pre = qtf::invert_premeasurement(tr, phi);
            double defect = 0.0;
            for (std::size_t y = 0; y < dim; ++y) {
                const double target = y == xv ? 1.0 : 0.0;
                defect = std::max(defect, std::abs(std::abs(pre.amplitude(y)) - target));
            }
            const bool hit = qtf::invert(tr, phi, key_rng) == x;
            ++total;
            inverted += hit ? 1 : 0;
            max_defect = std::max(max_defect, defect);
            r.csv_rows.push_back({std::to_string(k), x.str(), hit ? "true" : "false", num(defect)});
        }
    }
    r.ok = inverted == total && max_defect < kDefectBound;
    r.json["n"] = n;
    r.json["family"] = cfg.family;
    r.json["keys"] = keys;
    r.json["inverted"] = inverted;
    r.json["total"] = total;
    r.json["max_amplitude_defect"] = max_defect;
    r.summary = max_defect < kDefectBound
                    ? fmt::format("{}/{} inverted, max amplitude defect < 1e-9", inverted, total)
                    : fmt::format("{}/{} inverted, max amplitude defect {:.3e}", inverted, total, max_defect);
    return r;
}

Result twirl_check(const RunConfig &cfg, Rng &rng) {
    const std::size_t trials = trials_of(cfg, 500);
    Result r;
    r.csv_header = {"case", "total_qubits", "twirled_qubits", "gap"};
    double max_gap = 0.0;
    std::size_t failures = 0;
    Json cases = Json::array();
    for (std::size_t i = 0; i < trials; ++i) {
        Rng case_rng = rng.split(i);
        const int total = 1 + static_cast<int>(case_rng.below(6));
        const int twirled = 1 + static_cast<int>(case_rng.below(static_cast<std::uint64_t>(std::min(3, total))));
        const auto dim = static_cast<Eigen::Index>(std::size_t{1} << total);
        CMatrix a(dim, dim);
        for (Eigen::Index c = 0; c < dim; ++c) {
            for (Eigen::Index row = 0; row < dim; ++row) {
                a(row, c) = Complex(case_rng.normal(), case_rng.normal());
            }
        }
        const double gap = disc::z_twirl_sides(Operator(std::move(a)), twirled).gap;
        max_gap = std::max(max_gap, gap);
        failures += gap > tol::kTwirlGap ? 1 : 0;
        r.csv_rows.push_back({std::to_string(i), std::to_string(total), std::to_string(twirled), num(gap)});
        cases.push_back({{"total_qubits", total}, {"twirled_qubits", twirled}, {"gap", gap}});
    }
    r.ok = failures == 0;
    r.json["cases"] = trials;
    r.json["failures"] = failures;
    r.json["max_gap"] = max_gap;
    r.json["tolerance"] = tol::kTwirlGap;
    r.json["per_case"] = std::move(cases);
    r.summary = fmt::format("{}/{} twirl cases within 1e-10, max gap {:.3e}", trials - failures, trials, max_gap);
    return r;
}

Result pgm_grid(const RunConfig &cfg, Rng &) {
    const std::vector<int> ns = cfg.n.empty() ? std::vector<int>{1, 2, 3} : cfg.n;
    const std::vector<int> ms = cfg.m.empty() ? std::vector<int>{0, 1, 2} : cfg.m;
    Result r;
    r.csv_header = {"n", "m", "d", "dim", "pgm_success_dense", "pgm_success_structured", "bound_value", "spectrum_ok"};
    Json rows = Json::array();
    std::size_t failures = 0;
    for (int n : ns) {
        for (int m : ms) {
            disc::GridRow row = disc::pgm_grid_row(n, m);
            bool ok = row.spectrum_ok.value_or(true);
            if (row.pgm_success_dense) {
                ok = ok && std::abs(*row.pgm_success_dense - row.pgm_success_structured) <= kAgreeTolerance;
            }
            if (m == 0) {
                ok = ok && std::abs(row.pgm_success_structured - std::ldexp(1.0, -n)) <= kAgreeTolerance;
            }
            // The bound vanishes at m = 0 while the success probability is 2^-n,
            // so the guard only covers m >= 1.
            const bool guarded = m >= 1;
            const bool within = row.pgm_success_structured <= row.bound_value;
            ok = ok && (!guarded || within);
            failures += ok ? 0 : 1;
            r.csv_rows.push_back({std::to_string(n), std::to_string(m), std::to_string(row.d), std::to_string(row.dim),
                                  row.pgm_success_dense ? num(*row.pgm_success_dense) : "NA",
                                  num(row.pgm_success_structured), num(row.bound_value),
                                  row.spectrum_ok ? (*row.spectrum_ok ? "true" : "false") : "NA"});
            Json jr;
            jr["n"] = n;
            jr["m"] = m;
            jr["d"] = row.d;
            jr["dim"] = row.dim;
            jr["pgm_success_dense"] = row.pgm_success_dense ? Json(*row.pgm_success_dense) : Json(nullptr);
            jr["pgm_success_structured"] = row.pgm_success_structured;
            jr["bound_value"] = row.bound_value;
            jr["spectrum_ok"] = row.spectrum_ok ? Json(*row.spectrum_ok) : Json(nullptr);
            jr["asymptotic_regime"] = row.asymptotic_regime;
            jr["bound_guard_applies"] = guarded;
            jr["ok"] = ok;
            rows.push_back(std::move(jr));
        }
    }
    r.ok = failures == 0;
    r.json["rows"] = std::move(rows);
    r.json["failures"] = failures;
    r.summary = fmt::format("{} grid rows, {} failing checks", ns.size() * ms.size(), failures);
    return r;
}

Result spectrum_check(const RunConfig &cfg, Rng &) {
    const std::vector<int> ds = cfg.d.empty() ? std::vector<int>{2, 3, 4} : cfg.d;
    const std::vector<int> ms = cfg.m.empty() ? std::vector<int>{1, 2} : cfg.m;
    Result r;
    r.csv_header = {"d", "m", "dim", "max_deviation", "multiplicities_ok", "ok"};
    Json rows = Json::array();
    std::size_t failures = 0;
    for (int d : ds) {
        for (int m : ms) {
            disc::SigmaTilde st = disc::sigma_tilde(d, m);
            disc::SpectrumCheck sc = disc::check_spectrum(st);
            failures += sc.ok ? 0 : 1;
            r.csv_rows.push_back({std::to_string(d), std::to_string(m), std::to_string(st.op.dim()),
                                  num(sc.max_deviation), sc.multiplicities_ok ? "true" : "false",
                                  sc.ok ? "true" : "false"});
            Json levels = Json::array();
            for (const auto &l : st.predicted) {
                levels.push_back({{"value", l.value}, {"multiplicity", l.multiplicity}});
            }
            rows.push_back({{"d", d},
                            {"m", m},
                            {"dim", st.op.dim()},
                            {"max_deviation", sc.max_deviation},
                            {"multiplicities_ok", sc.multiplicities_ok},
                            {"ok", sc.ok},
                            {"predicted", std::move(levels)}});
        }
    }
    r.ok = failures == 0;
    r.json["rows"] = std::move(rows);
    r.json["failures"] = failures;
    r.summary = fmt::format("{}/{} spectra match the prediction", ds.size() * ms.size() - failures,
                            ds.size() * ms.size());
    return r;
}

Result prs_distinguish(const RunConfig &cfg, Rng &rng) {
    const int n = require_n(cfg, 3);
    const int m = scalar(cfg.m, 1, "m");
    const std::string adv = adversary_of(cfg, "random", {"random", "swap", "exhaustive"});
    prs::Distinguisher d = adv == "random" ? attacks::random_distinguisher()
                           : adv == "swap" ? attacks::swap_test_distinguisher(n)
                                           : attacks::key_exhausting_distinguisher(n, m);
    ExperimentReport rep = prs::distinguish_game(d, m, trials_of(cfg, 400), n, family_of(cfg), rng);
    rep.config.emplace_back("adversary", adv);
    return experiment_result(rep, fmt::format("prs-distinguish advantage {:.4f} [{:.4f}, {:.4f}] over {} trials",
                                              rep.value, rep.ci.low, rep.ci.high, rep.trials));
}

std::vector<std::uint8_t> read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::ios_base::failure(fmt::format("cannot open '{}' for reading", path));
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string &path, const std::vector<std::uint8_t> &bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char *>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw std::ios_base::failure(fmt::format("cannot write '{}'", path));
    }
}

Result pke_demo(const RunConfig &cfg, Rng &rng) {
    if (cfg.input.empty()) {
        throw ArgumentError("pke-demo needs --input");
    }
    const int n = require_n(cfg, 3);
    const std::string ct_path = cfg.ciphertext.empty() ? cfg.input + ".qpke" : cfg.ciphertext;
    const std::string dec_path = cfg.decrypted.empty() ? cfg.input + ".dec" : cfg.decrypted;
    const std::vector<std::uint8_t> msg = read_file(cfg.input);

    pke::SecretKey sk = pke::gen_sk(n, family_of(cfg), rng);
    std::vector<pke::PublicKey> pks(static_cast<std::size_t>(n), pke::gen_pk(sk));
    pke::HybridCiphertext hc = pke::enc_hybrid(pks, msg, rng);
    const std::vector<std::uint8_t> wire = pke::serialize(hc);
    write_file(ct_path, wire);

    const std::vector<std::uint8_t> reread = read_file(ct_path);
    pke::HybridCiphertext parsed = pke::deserialize(reread);
    const bool serialization_ok = pke::serialize(parsed) == reread;
    const std::vector<std::uint8_t> plain = pke::dec_hybrid(sk, parsed, rng);
    write_file(dec_path, plain);
    const bool round_trip_ok = read_file(dec_path) == msg;

    Result r;
    r.ok = serialization_ok && round_trip_ok;
    r.json["n"] = n;
    r.json["input_bytes"] = msg.size();
    r.json["ciphertext_bytes"] = wire.size();
    r.json["ciphertext_path"] = ct_path;
    r.json["decrypted_path"] = dec_path;
    r.json["serialization_round_trip"] = serialization_ok;
    r.json["decryption_round_trip"] = round_trip_ok;
    r.csv_header = {"field", "value"};
    for (const auto &[k, v] : r.json.items()) {
        r.csv_rows.push_back({k, v.is_string() ? v.get<std::string>() : v.dump()});
    }
    r.summary = fmt::format("{} bytes -> {} byte ciphertext -> {}", msg.size(), wire.size(),
                            round_trip_ok ? "decrypted byte-identical" : "DECRYPTION MISMATCH");
    return r;
}

Result cpa_advantage(const RunConfig &cfg, Rng &rng) {
    const int n = require_n(cfg, 3);
    const std::string adv = adversary_of(cfg, "random", {"random", "sk", "exhaustive"});
    auto mode = pke::parse_cpa_mode(cfg.mode);
    if (!mode) {
        throw ArgumentError(fmt::format("unknown mode '{}' (bit, bitwise, hybrid)", cfg.mode));
    }
    if (adv == "exhaustive" && *mode != pke::CpaMode::kBit) {
        throw ArgumentError("the exhaustive CPA attacker plays --mode bit");
    }
    if (cfg.t < 0) {
        throw ArgumentError("--t must be non-negative");
    }
    pke::CpaAttacker a = adv == "random" ? attacks::random_cpa_attacker()
                         : adv == "sk"   ? attacks::sk_cpa_attacker()
                                         : attacks::key_exhausting_cpa_attacker();
    ExperimentReport rep =
        pke::cpa_game(a, cfg.t, trials_of(cfg, 400), n, family_of(cfg), rng, *mode, adv == "sk");
    rep.config.emplace_back("adversary", adv);
    return experiment_result(rep, fmt::format("cpa advantage {:.4f} [{:.4f}, {:.4f}], success rate {:.4f}",
                                              rep.value, rep.ci.low, rep.ci.high, rep.extra("success_rate")));
}

Result kex_sim(const RunConfig &cfg, Rng &rng) {
    const int n = require_n(cfg, 3);
    auto mode = kex::parse_channel_mode(cfg.channel);
    if (!mode) {
        throw ArgumentError(fmt::format("unknown channel '{}' (authenticated_copy, unauthenticated)", cfg.channel));
    }
    const bool copy_mode = *mode == kex::ChannelMode::kAuthenticatedCopy;
    kex::ChannelModel model{*mode, copy_mode ? cfg.t : 0};
    model.validate();
    const Family family = family_of(cfg);
    const std::size_t trials = trials_of(cfg, 400);

    Rng honest_rng = rng.split(0);
    std::size_t agree = 0;
    for (std::size_t i = 0; i < trials; ++i) {
        Rng run_rng = honest_rng.split(i);
        kex::HonestRun run = kex::run_honest(n, family, model, run_rng);
        agree += run.alice_key == run.bob_key ? 1 : 0;
        if (i == 0 && !cfg.transcript.empty()) {
            std::ofstream out(cfg.transcript, std::ios::binary | std::ios::trunc);
            out << run.transcript.to_jsonl();
            if (!out) {
                throw std::ios_base::failure(fmt::format("cannot write '{}'", cfg.transcript));
            }
        }
    }

    Rng adv_rng = rng.split(1);
    ExperimentReport rep;
    std::string adv;
    if (copy_mode) {
        adv = adversary_of(cfg, "random", {"random", "exhaustive"});
        kex::Eavesdropper e =
            adv == "random" ? attacks::random_eavesdropper() : attacks::key_exhausting_eavesdropper();
        rep = kex::run_adversarial(e, n, family, model, trials, adv_rng);
    } else {
        adv = adversary_of(cfg, "mitm", {"mitm"});
        rep = kex::run_adversarial({}, n, family, model, trials, adv_rng);
    }
    rep.config.emplace_back("adversary", adv);

    Result r = experiment_result(rep, "");
    r.ok = agree == trials;
    Json j;
    j["honest"] = {{"runs", trials}, {"agreements", agree}};
    j["adversarial"] = std::move(r.json);
    r.json = std::move(j);
    r.csv_rows.insert(r.csv_rows.begin(), {{"honest.runs", std::to_string(trials)},
                                           {"honest.agreements", std::to_string(agree)}});
    r.summary = copy_mode ? fmt::format("honest agreement {}/{}, eavesdropper recovery {:.4f} (chance {:.4f})",
                                        agree, trials, rep.value, rep.extra("chance_rate"))
                          : fmt::format("honest agreement {}/{}; mitm: eve=alice {:.4f}, eve=bob {:.4f}, "
                                        "alice=bob {:.4f}",
                                        agree, trials, rep.extra("eve_alice_rate"), rep.extra("eve_bob_rate"),
                                        rep.value);
    return r;
}

using Handler = std::function<Result(const RunConfig &, Rng &)>;

const std::map<std::string, Handler> &handlers() {
    static const std::map<std::string, Handler> h = {
        {"trapdoor-demo", trapdoor_demo}, {"twirl-check", twirl_check},       {"pgm-grid", pgm_grid},
        {"spectrum-check", spectrum_check}, {"prs-distinguish", prs_distinguish}, {"pke-demo", pke_demo},
        {"cpa-advantage", cpa_advantage},   {"kex-sim", kex_sim},
    };
    return h;
}

std::string csv_escape(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        out += c == '"' ? "\"\"" : std::string(1, c);
    }
    return out + "\"";
}

std::string render(const RunConfig &cfg, const Result &res) {
    const auto echo = cfg.echo();
    if (cfg.format == Format::kJson) {
        Json j;
        j["tool"] = "qtflab";
        j["tool_version"] = QTFLAB_VERSION;
        j["subcommand"] = cfg.subcommand;
        j["seed"] = *cfg.seed;
        Json c = Json::object();
        for (const auto &[k, v] : echo) {
            c[k] = v;
        }
        j["config"] = std::move(c);
        j["status"] = res.ok ? "pass" : "fail";
        j["result"] = res.json;
        return j.dump(2) + "\n";
    }
    std::string out = fmt::format("# tool=qtflab\n# tool_version={}\n# subcommand={}\n# seed={}\n", QTFLAB_VERSION,
                                  cfg.subcommand, *cfg.seed);
    for (const auto &[k, v] : echo) {
        out += fmt::format("# config.{}={}\n", k, v);
    }
    out += fmt::format("# status={}\n", res.ok ? "pass" : "fail");
    auto line = [](const std::vector<std::string> &cells) {
        std::string l;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            l += (i ? "," : "") + csv_escape(cells[i]);
        }
        return l + "\n";
    };
    out += line(res.csv_header);
    for (const auto &row : res.csv_rows) {
        out += line(row);
    }
    return out;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> RunConfig::echo() const {
    return {{"subcommand", subcommand},
            {"seed", seed ? std::to_string(*seed) : ""},
            {"n", join(n)},
            {"m", join(m)},
            {"d", join(d)},
            {"family", family},
            {"t", std::to_string(t)},
            {"trials", trials ? std::to_string(*trials) : "default"},
            {"adversary", adversary.value_or("default")},
            {"mode", mode},
            {"channel", channel},
            {"input", input},
            {"ciphertext", ciphertext},
            {"decrypted", decrypted},
            {"transcript", transcript},
            {"format", format == Format::kJson ? "json" : "csv"},
            {"max_dim", std::to_string(max_state_dim())}};
}

const std::vector<std::string> &subcommands() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto &[k, h] : handlers()) {
            v.push_back(k);
        }
        return v;
    }();
    return names;
}

Outcome run_subcommand(const RunConfig &cfg) {
    Outcome out;
    try {
        if (!cfg.seed) {
            throw ArgumentError("--seed is required");
        }
        auto it = handlers().find(cfg.subcommand);
        if (it == handlers().end()) {
            throw ArgumentError(fmt::format("unknown subcommand '{}'", cfg.subcommand));
        }
        if (!load_caps_from_env()) {
            throw ArgumentError("QTFLAB_MAX_DIM must be a positive integer");
        }
        if (cfg.max_dim) {
            if (*cfg.max_dim == 0) {
                throw ArgumentError("--max-dim must be positive");
            }
            set_max_state_dim(*cfg.max_dim);
        }
        Rng rng(*cfg.seed);
        Result res = it->second(cfg, rng);
        out.report = render(cfg, res);
        out.summary = res.summary;
        out.exit_code = res.ok ? kOk : kAssertionFailed;
    } catch (const ResourceError &e) {
        out.exit_code = kResourceCap;
        out.summary = fmt::format("resource cap: {}", e.what());
    } catch (const std::invalid_argument &e) {
        out.exit_code = kInvalidConfig;
        out.summary = fmt::format("invalid configuration: {}", e.what());
    } catch (const std::ios_base::failure &e) {
        out.exit_code = kInvalidConfig;
        out.summary = fmt::format("I/O error: {}", e.what());
    } catch (const std::exception &e) {
        out.exit_code = kAssertionFailed;
        out.summary = fmt::format("error: {}", e.what());
    }
    return out;
}

int emit(const RunConfig &cfg, const Outcome &outcome, std::ostream &stdout_sink, std::ostream &stderr_sink) {
    if (outcome.report.empty()) {
        stderr_sink << outcome.summary << '\n';
        return outcome.exit_code;
    }
    if (cfg.out.empty()) {
        stdout_sink << outcome.report;
        stderr_sink << outcome.summary << '\n';
        return outcome.exit_code;
    }
    std::ofstream f(cfg.out, std::ios::binary | std::ios::trunc);
    f << outcome.report;
    f.close();
    if (!f) {
        stderr_sink << fmt::format("I/O error: cannot write report to '{}'\n", cfg.out);
        return kInvalidConfig;
    }
    stdout_sink << outcome.summary << '\n';
    return outcome.exit_code;
}

}  // namespace qtflab::cli
