# Copyright 2026 The qtflab Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Python front end for the qtflab simulator."""

from qtflab._qtflab import (
    ArgumentError,
    DimensionError,
    InvariantError,
    ResourceError,
    RunConfig,
    __version__,
    hybrid_round_trip,
    kex_honest,
    key_pgm_bound,
    pgm_success_dense,
    pgm_success_structured,
    prs_state,
    prs_state_from_table,
    spectrum_ok,
    subcommands,
    sym_projector,
    trapdoor_round_trip,
    z_twirl_gap,
)
from qtflab._qtflab import run as _run


def run(subcommand, seed, **options):
    """Runs a CLI subcommand in-process; returns (exit_code, report, summary)."""
    cfg = RunConfig()
    cfg.subcommand = subcommand
    cfg.seed = seed
    for key, value in options.items():
        if key in ("n", "m", "d") and isinstance(value, int):
            value = [value]
        setattr(cfg, key, value)
    return _run(cfg)


__all__ = [
    "ArgumentError",
    "DimensionError",
    "InvariantError",
    "ResourceError",
    "RunConfig",
    "__version__",
    "hybrid_round_trip",
    "kex_honest",
    "key_pgm_bound",
    "pgm_success_dense",
    "pgm_success_structured",
    "prs_state",
    "prs_state_from_table",
    "run",
    "spectrum_ok",
    "subcommands",
    "sym_projector",
    "trapdoor_round_trip",
    "z_twirl_gap",
]
