"""Command line front end.

Subcommands: verify-genus1, track, roots, group, counts. Every report is a JSON
object carrying ``"schema_version": 1`` (see docs/schema.md).

Exit codes: 0 success (S24 certified), 1 input error, 2 inconclusive,
3 numeric failure.
"""

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field

import numpy as np

from . import numerology
from .errors import BaseInvalid, BaseMismatch, K3MonoError, PathTooClose
from .permgroup import FACT_24, Permutation, block_systems, certify_s24, generate
from .tracker import TrackerConfig, default_threads, track_loop, track_many
from .weierstrass import (
    ParameterLoop,
    WeierstrassPair,
    build_construction,
    change_chart,
    connect,
    construction_from_json,
    construction_to_json,
    default_construction_i,
    default_construction_ii,
    random_scalar_loop,
    swap_loop,
    validate,
)

log = logging.getLogger("k3mono")

SCHEMA_VERSION = 1
EXIT_OK, EXIT_INPUT, EXIT_INCONCLUSIVE, EXIT_NUMERIC = 0, 1, 2, 3
FAMILIES = ("construction-i-swaps", "construction-ii-swaps", "random-scalar")
BATCH = 8


@dataclass
class RunConfig:
    seed: int = 0
    loop_budget: int = 400
    tracker: TrackerConfig = field(default_factory=TrackerConfig)
    construction: dict | None = None
    base: str = "construction-i"
    only: str | None = None
    threads: int = 1
    output_path: str | None = None

    def __post_init__(self):
        if self.loop_budget < 0:
            raise ValueError("loop_budget must be >= 0")
        if self.only is not None and self.only not in FAMILIES:
            raise ValueError(f"--only must be one of {', '.join(FAMILIES)}")
        if self.base not in ("construction-i", "random"):
            raise ValueError("base must be 'construction-i' or 'random'")

    @classmethod
    def from_json(cls, obj):
        obj = dict(obj)
        if "tracker" in obj:
            obj["tracker"] = TrackerConfig.from_json(obj["tracker"])
        return cls(**obj)


def _random_base(rng):
    for _ in range(100):
        v = rng.normal(size=22) + 1j * rng.normal(size=22)
        pair = WeierstrassPair.from_vector(v)
        rep = validate(pair)
        if rep.valid and rep.far_root:
            pair = change_chart(pair, rng)
            rep = validate(pair)
        if rep.valid and not rep.far_root:
            return pair
    raise BaseInvalid("no valid random base found")


def _loop_stream(cfg, base, con_i, rngs):
    """Yield ``(family, index, make_loop)``; ``make_loop(attempt)`` builds the loop."""
    families = [cfg.only] if cfg.only else list(FAMILIES)
    if "construction-i-swaps" in families and con_i is not None:
        for i in range(con_i.size - 1):
            yield "construction-i-swaps", i, (lambda attempt, i=i: swap_loop(con_i, i, i + 1))
    if "construction-ii-swaps" in families:
        con_ii = default_construction_ii(rngs["construction_ii"])
        base_ii = build_construction(con_ii)
        via_rng = rngs["connection"]
        vias = {}

        def via(attempt):
            # a detour point for the connecting path; the straight segment is tried first
            if attempt == 0:
                return None
            if attempt not in vias:
                mid = 0.5 * (base.vector() + base_ii.vector())
                noise = via_rng.normal(size=22) + 1j * via_rng.normal(size=22)
                noise[[8, 21]] = 0.0
                vias[attempt] = WeierstrassPair.from_vector(mid + 0.3 * np.linalg.norm(mid) * noise / np.linalg.norm(noise))
            return vias[attempt]

        for i in range(con_ii.size - 1):
            yield "construction-ii-swaps", i, (
                lambda attempt, i=i: connect(base, swap_loop(con_ii, i, i + 1), via=via(attempt))
            )
    if "random-scalar" in families:
        k = 0
        loop_rng = rngs["random"]
        while True:
            loop = random_scalar_loop(base, loop_rng)
            yield "random-scalar", k, (lambda attempt, loop=loop: loop)
            k += 1


def verify_genus1(cfg):
    """Run the genus-1 certification; returns ``(report, exit_code)``."""
    seeds = np.random.SeedSequence(cfg.seed).spawn(4)
    rngs = dict(zip(("base", "construction_ii", "connection", "random"), (np.random.default_rng(s) for s in seeds)))
    con_i = None
    if cfg.construction is not None:
        con_i = construction_from_json(cfg.construction)
        base = build_construction(con_i)
        if con_i.kind != "I":
            raise ValueError("the base construction must be of kind I")
    elif cfg.base == "random":
        base = _random_base(rngs["base"])
    else:
        con_i = default_construction_i(rngs["base"])
        base = build_construction(con_i)

    gens, records = [], []
    G = generate([], 24)
    stream = _loop_stream(cfg, base, con_i, rngs)
    attempted = failed = 0
    done = False
    while not done and attempted < cfg.loop_budget:
        batch = []
        for family, idx, make in stream:
            batch.append((family, idx, make))
            if len(batch) == BATCH or attempted + len(batch) >= cfg.loop_budget:
                break
        if not batch:
            break
        results = track_many([make(0) for _, _, make in batch], cfg.tracker, cfg.threads)
        for (family, idx, make), res in zip(batch, results):
            attempted += 1
            retries = 0
            while isinstance(res, PathTooClose) and family == "construction-ii-swaps" and retries < 3:
                retries += 1
                try:
                    res = track_loop(make(retries), cfg.tracker)
                except K3MonoError as exc:
                    res = exc
            rec = {"index": attempted - 1, "family": family, "family_index": idx}
            if isinstance(res, Exception):
                failed += 1
                rec.update(status="failed", error=f"{type(res).__name__}: {res}")
                records.append(rec)
                continue
            new = not G.contains(res.perm)
            if new:
                gens.append(res.perm)
                G = generate(gens, 24)
            rec.update(status="ok", new_generator=new, **res.to_json())
            records.append(rec)
            log.info("loop %d (%s %d): %s order %d", attempted - 1, family, idx, res.perm.cycle_type(), G.order())
            if G.order() == FACT_24:
                done = True
                break

    cert = certify_s24(G)
    group = cert.to_json()
    # G-invariant partitions; for an intransitive group these still detect e.g. pairs
    group["block_systems"] = [{"num_blocks": bs.num_blocks, "block_size": bs.block_size} for bs in block_systems(G)]
    group["orbit_sizes"] = [len(o) for o in G.orbits()]
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "verify-genus1",
        "seed": cfg.seed,
        "loop_budget": cfg.loop_budget,
        "only": cfg.only,
        "tracker": cfg.tracker.to_json(),
        "base": base.to_json(),
        "base_construction": construction_to_json(con_i) if con_i is not None else None,
        "loops_used": sum(1 for r in records if r["status"] == "ok"),
        "loops_attempted": attempted,
        "loops_failed": failed,
        "loops": records,
        "permutations": [r["perm"] for r in records if r["status"] == "ok"],
        "generators": [list(g.images) for g in gens],
        "group": group,
        "conclusion": cert.conclusion,
    }
    if cert.conclusion == "S24":
        code = EXIT_OK
    elif attempted and failed == attempted:
        code = EXIT_NUMERIC
    else:
        code = EXIT_INCONCLUSIVE
    report["exit_code"] = code
    return report, code


# ---------------------------------------------------------------------------
# file based commands


def _load_json(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def roots_report(pair):
    rep = validate(pair)
    out = {"schema_version": SCHEMA_VERSION, "command": "roots", "validation": rep.to_json()}
    if rep.fiber is not None:
        out["roots"] = [[float(z.real), float(z.imag)] for z in rep.fiber.roots]
        out["separation"] = rep.fiber.separation
        out["residual"] = rep.fiber.residual
    return out, (EXIT_OK if rep.valid else EXIT_INPUT)


def track_report(pair, loop, tracker_cfg):
    if pair is not None and not loop.base.allclose(pair, 1e-12):
        raise BaseMismatch("loop does not start at the given pair")
    tp = track_loop(loop, tracker_cfg)
    return {"schema_version": SCHEMA_VERSION, "command": "track", **tp.to_json()}


def parse_perm_file(obj):
    if isinstance(obj, dict):
        for key in ("perms", "permutations", "generators"):
            if key in obj:
                obj = obj[key]
                break
        else:
            raise ValueError("permutation file needs a 'perms' list")
    if not isinstance(obj, list):
        raise ValueError("permutation file must hold a list of image lists")
    perms = [Permutation(p) for p in obj]
    if perms and len({p.degree for p in perms}) != 1:
        raise ValueError("permutations of mixed degree")
    return perms


def group_report(perms, degree=24):
    G = generate(perms, perms[0].degree if perms else degree)
    cert = certify_s24(G)
    return {"schema_version": SCHEMA_VERSION, "command": "group", **cert.to_json()}


def counts_report():
    return {"schema_version": SCHEMA_VERSION, "command": "counts", **numerology.counts_table(), "anchors": numerology.ANCHORS}


def _emit(report, out):
    text = json.dumps(report, indent=2, sort_keys=False) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _tracker_from(args, config):
    if config and "tracker" in config:
        return TrackerConfig.from_json(config["tracker"])
    return TrackerConfig()


def build_parser():
    parser = argparse.ArgumentParser(prog="k3mono", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-genus1", help="certify that the 24-root monodromy group is S24")
    p.add_argument("--seed", type=int)
    p.add_argument("--budget", type=int, help="maximum number of loops to track")
    p.add_argument("--threads", type=int, help="worker processes (default: machine parallelism)")
    p.add_argument("--config", help="JSON file mirroring RunConfig")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--only", choices=FAMILIES, help="restrict to one loop family")
    p.add_argument("--base", choices=("construction-i", "random"))

    p = sub.add_parser("track", help="track one loop and print its permutation")
    p.add_argument("pair_file")
    p.add_argument("loop_file")
    p.add_argument("--config", help="JSON file with a 'tracker' section")
    p.add_argument("--out")

    p = sub.add_parser("roots", help="labeled discriminant roots of a pair")
    p.add_argument("pair_file")
    p.add_argument("--out")

    p = sub.add_parser("group", help="group report for a list of permutations")
    p.add_argument("perm_file")
    p.add_argument("--out")

    p = sub.add_parser("counts", help="exact enumerative counts")
    p.add_argument("--out")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        if args.command == "counts":
            _emit(counts_report(), args.out)
            return EXIT_OK

        if args.command == "roots":
            try:
                pair = WeierstrassPair.from_json(_load_json(args.pair_file))
            except (OSError, ValueError, KeyError, TypeError) as exc:
                print(f"error: {exc}", file=sys.stderr)
                return EXIT_INPUT
            report, code = roots_report(pair)
            _emit(report, args.out)
            return code

        if args.command == "group":
            try:
                perms = parse_perm_file(_load_json(args.perm_file))
            except (OSError, ValueError, KeyError, TypeError) as exc:
                print(f"error: {exc}", file=sys.stderr)
                return EXIT_INPUT
            _emit(group_report(perms), args.out)
            return EXIT_OK

        if args.command == "track":
            try:
                config = _load_json(args.config) if args.config else None
                pair = WeierstrassPair.from_json(_load_json(args.pair_file))
                loop = ParameterLoop.from_json(_load_json(args.loop_file))
                tracker_cfg = _tracker_from(args, config)
            except (OSError, ValueError, KeyError, TypeError) as exc:
                print(f"error: {exc}", file=sys.stderr)
                return EXIT_INPUT
            try:
                report = track_report(pair, loop, tracker_cfg)
            except (BaseInvalid, BaseMismatch) as exc:
                print(f"error: {exc}", file=sys.stderr)
                return EXIT_INPUT
            except PathTooClose as exc:
                print(f"numeric failure: {exc}", file=sys.stderr)
                return EXIT_NUMERIC
            _emit(report, args.out)
            return EXIT_OK

        if args.command == "verify-genus1":
            try:
                config = _load_json(args.config) if args.config else {}
                cfg = RunConfig.from_json(config)
                if args.seed is not None:
                    cfg.seed = args.seed
                if args.budget is not None:
                    cfg.loop_budget = args.budget
                if args.only is not None:
                    cfg.only = args.only
                if args.base is not None:
                    cfg.base = args.base
                cfg.threads = args.threads if args.threads is not None else config.get("threads", default_threads())
                out = args.out or cfg.output_path
                cfg.__post_init__()
            except (OSError, ValueError, KeyError, TypeError) as exc:
                print(f"error: {exc}", file=sys.stderr)
                return EXIT_INPUT
            try:
                report, code = verify_genus1(cfg)
            except (BaseInvalid, ValueError) as exc:
                print(f"error: {exc}", file=sys.stderr)
                return EXIT_INPUT
            except K3MonoError as exc:
                print(f"numeric failure: {exc}", file=sys.stderr)
                return EXIT_NUMERIC
            _emit(report, out)
            return code
    except KeyboardInterrupt:
        return 130
    parser.error(f"unknown command {args.command}")


if __name__ == "__main__":
    sys.exit(main())
