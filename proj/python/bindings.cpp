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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qtflab/cli.hpp"
#include "qtflab/discrimination.hpp"
#include "qtflab/kex.hpp"
#include "qtflab/pke.hpp"
#include "qtflab/prs.hpp"
#include "qtflab/qtf.hpp"

namespace py = pybind11;
using namespace qtflab;

namespace {

Family family_arg(const std::string &name) {
    auto f = parse_family(name);
    if (!f) {
        throw ArgumentError("unknown family '" + name + "'");
    }
    return *f;
}

py::bytes to_bytes(const std::vector<std::uint8_t> &v) {
    return py::bytes(reinterpret_cast<const char *>(v.data()), v.size());
}

std::vector<std::uint8_t> from_bytes(const py::bytes &b) {
    std::string s = b;
    return {s.begin(), s.end()};
}

}  // namespace

PYBIND11_MODULE(_qtflab, m) {
    m.doc() = "qtflab core bindings";
    m.attr("__version__") = QTFLAB_VERSION;

    py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
    py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);
    py::register_exception<ResourceError>(m, "ResourceError", PyExc_MemoryError);
    py::register_exception<InvariantError>(m, "InvariantError", PyExc_RuntimeError);

    m.def(
        "prs_state",
        [](int n, const std::string &family, std::uint64_t seed) {
            Rng rng(seed);
            return CVector(prs::gen_state(prs::gen_key(n, family_arg(family), rng)).amplitudes());
        },
        py::arg("n"), py::arg("family") = "table", py::arg("seed") = 0);

    m.def(
        "prs_state_from_table",
        [](const std::vector<int> &table) {
            int n = 0;
            while ((std::size_t{1} << n) < table.size()) {
                ++n;
            }
            return CVector(prs::gen_state(prs::PrsKey{PrfKey::from_table(n, table)}).amplitudes());
        },
        py::arg("table"));

    m.def(
        "trapdoor_round_trip",
        [](int n, std::uint64_t x, const std::string &family, std::uint64_t seed) {
            Rng rng(seed);
            qtf::Trapdoor tr = qtf::gen_tr(n, family_arg(family), rng);
            return qtf::invert(tr, qtf::eval(qtf::gen_ev(tr), Bits(n, x)), rng).value();
        },
        py::arg("n"), py::arg("x"), py::arg("family") = "table", py::arg("seed") = 0);

    m.def("pgm_success_dense", &disc::pgm_success_dense, py::arg("n"), py::arg("m"));
    m.def("pgm_success_structured", &disc::pgm_success_structured, py::arg("n"), py::arg("m"));
    m.def("key_pgm_bound", &disc::key_pgm_bound, py::arg("n"), py::arg("m"), py::arg("constant") = 4.0);
    m.def("sym_projector", [](int d, int mm) { return CMatrix(disc::sym_projector(d, mm).matrix()); },
          py::arg("d"), py::arg("m"));
    m.def(
        "z_twirl_gap",
        [](const CMatrix &op, int qubits) { return disc::z_twirl_sides(Operator(op), qubits).gap; },
        py::arg("op"), py::arg("qubits"));
    m.def(
        "spectrum_ok",
        [](int d, int mm) {
            disc::SpectrumCheck c = disc::check_spectrum(disc::sigma_tilde(d, mm));
            return c.ok;
        },
        py::arg("d"), py::arg("m"));

    m.def(
        "hybrid_round_trip",
        [](const py::bytes &msg, int n, const std::string &family, std::uint64_t seed) {
            Rng rng(seed);
            pke::SecretKey sk = pke::gen_sk(n, family_arg(family), rng);
            std::vector<pke::PublicKey> pks;
            for (int i = 0; i < n; ++i) {
                pks.push_back(pke::gen_pk(sk));
            }
            auto wire = pke::serialize(pke::enc_hybrid(pks, from_bytes(msg), rng));
            auto back = pke::dec_hybrid(sk, pke::deserialize(wire), rng);
            return py::make_tuple(to_bytes(wire), to_bytes(back));
        },
        py::arg("msg"), py::arg("n") = 3, py::arg("family") = "table", py::arg("seed") = 0);

    m.def(
        "kex_honest",
        [](int n, const std::string &family, std::uint64_t seed) {
            Rng rng(seed);
            kex::HonestRun run = kex::run_honest(n, family_arg(family), kex::ChannelModel{}, rng);
            return py::make_tuple(run.alice_key.str(), run.bob_key.str(), run.transcript.to_jsonl());
        },
        py::arg("n"), py::arg("family") = "table", py::arg("seed") = 0);

    py::class_<cli::RunConfig>(m, "RunConfig")
        .def(py::init<>())
        .def_readwrite("subcommand", &cli::RunConfig::subcommand)
        .def_readwrite("seed", &cli::RunConfig::seed)
        .def_readwrite("n", &cli::RunConfig::n)
        .def_readwrite("m", &cli::RunConfig::m)
        .def_readwrite("d", &cli::RunConfig::d)
        .def_readwrite("family", &cli::RunConfig::family)
        .def_readwrite("t", &cli::RunConfig::t)
        .def_readwrite("trials", &cli::RunConfig::trials)
        .def_readwrite("adversary", &cli::RunConfig::adversary)
        .def_readwrite("mode", &cli::RunConfig::mode)
        .def_readwrite("channel", &cli::RunConfig::channel)
        .def_readwrite("input", &cli::RunConfig::input)
        .def_readwrite("ciphertext", &cli::RunConfig::ciphertext)
        .def_readwrite("decrypted", &cli::RunConfig::decrypted)
        .def_readwrite("transcript", &cli::RunConfig::transcript)
        .def_property(
            "format", [](const cli::RunConfig &c) { return c.format == cli::Format::kJson ? "json" : "csv"; },
            [](cli::RunConfig &c, const std::string &f) {
                if (f != "json" && f != "csv") {
                    throw ArgumentError("format must be json or csv");
                }
                c.format = f == "json" ? cli::Format::kJson : cli::Format::kCsv;
            });

    m.def("subcommands", &cli::subcommands);
    m.def(
        "run",
        [](const cli::RunConfig &cfg) {
            cli::Outcome o;
            {
                py::gil_scoped_release release;
                o = cli::run_subcommand(cfg);
            }
            return py::make_tuple(o.exit_code, o.report, o.summary);
        },
        py::arg("config"));
}
