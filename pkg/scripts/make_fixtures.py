#!/usr/bin/env python3
"""Regenerate the JSON fixture files shipped under src/entcap/data/.

Also refreshes the stored max-rank witness assignment for the d5=2
diamond (first random assignment reaching rank 6).
"""

from __future__ import annotations

import json
import pathlib

from entcap.fixtures import FIXTURE_NAMES, R1_WITNESS_NAME, diamond_network, path_network
from entcap.netmodel import dump_network, scale
from entcap.tnrank import PrimeField, contract, random_assignment, rank_mod_p
from entcap.transforms import SplitSpec, split_cycle_edge

DATA = pathlib.Path(__file__).resolve().parent.parent / "src" / "entcap" / "data"


def build_all():
    base2 = diamond_network(2, 3, 3, 2, 2)
    nets = {
        "fig2_counterexample": diamond_network(5, 3, 3, 5, 2),
        "n_d5_2": base2,
        "n_d5_3": diamond_network(2, 3, 3, 2, 3),
        "n_d5_4": diamond_network(2, 3, 3, 2, 4),
        "n4_split_2x2": split_cycle_edge(
            diamond_network(2, 3, 3, 2, 4), SplitSpec("d5", 2, 2)
        ),
        "n2_up": split_cycle_edge(base2, SplitSpec("d5", 2, 1)),
        "path_2_3": path_network(2, 3),
        "path_3_3": path_network(3, 3),
        "fig1_scaled_k2": scale(base2, 2),
        "fig1_scaled_k3": scale(base2, 3),
    }
    assert set(nets) == set(FIXTURE_NAMES)
    return nets


def make_witness(net, target_rank: int):
    field = PrimeField()
    for seed in range(64):
        ta = random_assignment(net, field, seed)
        if rank_mod_p(contract(net, ta)) == target_rank:
            return {
                "network": "n_d5_2",
                "prime": field.p,
                "seed": seed,
                "rank": target_rank,
                "tensors": {v: t.tolist() for v, t in sorted(ta.tensors.items())},
            }
    raise RuntimeError("no witness found in 64 seeds")


def main():
    DATA.mkdir(parents=True, exist_ok=True)
    nets = build_all()
    for name, net in nets.items():
        (DATA / f"{name}.json").write_text(dump_network(net))
        print(f"wrote {name}.json")
    witness = make_witness(nets["n_d5_2"], target_rank=6)
    (DATA / f"{R1_WITNESS_NAME}.json").write_text(
        json.dumps(witness, indent=2) + "\n"
    )
    print(f"wrote {R1_WITNESS_NAME}.json (seed {witness['seed']})")


if __name__ == "__main__":
    main()
