"""
Command line interface:

    scrollrank bounds   --m 3 --n 2 --d 3
    scrollrank table    --kind bound --d 3 --m 2..8 --n 1..8
    scrollrank probe    --profile 4 --m 3 --r 5
    scrollrank member   point.json [--show-matrix]
    scrollrank synth    --m 2 --n 1 --d 3 --r 1 [--point point.json]
    scrollrank recover  --point point.json --model model.json
    scrollrank audit-ah --m-max 5 --d-max 5

JSON or CSV goes to stdout, logs and errors to stderr. Exit codes:
0 success, 1 computation error, 2 input error.
"""

import argparse
import concurrent.futures
import sys
from functools import partial

import pandas as pd
from loguru import logger
from rich.console import Console
from rich.progress import track

from scrollrank import set_logging, settings
from scrollrank._io import dumps, load_json, save_json
from scrollrank._utils import as_profile, parse_range
from scrollrank.bounds import bounds_report, dis_bound, identifiability_bound
from scrollrank.catalecticant import (
    scroll_membership,
    stacked_catalecticant,
    stacked_catalecticant_matrix,
)
from scrollrank.decouple import (
    DecoupledModel,
    dense_to_dict,
    embed,
    point_from_dict,
    recover_coefficients,
    synth,
)
from scrollrank.terracini import (
    BACKENDS,
    RankBackend,
    audit_ah,
    max_nondefective_rank,
    rank_of,
    secant_dim_probe,
)

TABLE_KINDS = ("bound", "terracini", "dis", "dims")

EXIT_OK = 0
EXIT_COMPUTATION = 1
EXIT_INPUT = 2

_stderr = Console(stderr=True)


# --------------------------------------------------------------------------- #
#                                  output                                     #
# --------------------------------------------------------------------------- #


def _emit(data, fmt):
    """
    Writes a JSON document, or a one-row CSV of its flattened keys
    """
    if fmt == "csv":
        frame = pd.json_normalize(data)
        sys.stdout.write(frame.to_csv(index=False, lineterminator="\n"))
    else:
        sys.stdout.write(dumps(data) + "\n")


def _backend(args):
    return RankBackend.from_name(args.backend, prime=args.prime)


# --------------------------------------------------------------------------- #
#                                 commands                                    #
# --------------------------------------------------------------------------- #


def cmd_bounds(args):
    report = bounds_report(args.m, args.n, args.d)
    _emit(report.to_dict(), args.format)
    return EXIT_OK


def _table_cell(kind, d, r, cap, trials, backend, seed, bound, cell):
    """
    Value of one (m, n) cell of a table, as it is printed
    """
    index, m, n = cell
    profile = tuple(range(1, d + 1))
    if kind == "bound":
        # outside the hypotheses of the bound
        if d < 3:
            return ""
        value = identifiability_bound(profile, m, n)
    elif kind == "dis":
        value = dis_bound(m, n)
    elif kind == "terracini":
        value = max_nondefective_rank(
            profile,
            m,
            n,
            backend,
            cap=cap,
            trials=trials,
            seed=seed ^ index,
            bound=bound,
        )
    else:
        return str(
            secant_dim_probe(
                profile,
                m,
                n,
                r,
                trials,
                seed ^ index,
                backend,
                bound=bound,
            ).measured_dim
        )
    return f"{value}*" if value == m * n else str(value)


def build_table(
    kind,
    d,
    m_range,
    n_range,
    r=None,
    cap=None,
    trials=None,
    seed=None,
    backend=None,
    bound=None,
):
    """
    Table of per-(m, n) values as a DataFrame with m as index and n as
    columns. Cells equal to m * n carry a `*`, cells outside the
    hypotheses of a bound are empty.
    """
    if kind not in TABLE_KINDS:
        raise ValueError(f"Unknown table kind {kind!r}, use one of {TABLE_KINDS}")
    if kind == "dims" and r is None:
        raise ValueError("Tables of kind 'dims' need a secant order --r")
    if not len(m_range) or not len(n_range):
        raise ValueError("Table ranges must be nonempty")
    trials = settings.DEFAULT_TRIALS if trials is None else trials
    seed = settings.DEFAULT_SEED if seed is None else seed
    backend = backend or RankBackend.from_name()
    if d < 1:
        raise ValueError(f"Need d >= 1, got d = {d}")
    if min(m_range) < 1 or min(n_range) < 1:
        raise ValueError("Table ranges must only hold m, n >= 1")
    if trials < 1:
        raise ValueError(f"Need at least one trial, got {trials}")
    if cap is not None and cap < 1:
        raise ValueError(f"Cap must be >= 1, got {cap}")
    if r is not None and r < 1:
        raise ValueError(f"Secant order must be >= 1, got {r}")
    if bound is not None and bound < 1:
        raise ValueError(f"Sampling bound must be >= 1, got {bound}")
    logger.debug(
        f"Building {kind} table: d={d}, m={list(m_range)}, n={list(n_range)}, seed={seed}"
    )

    cells = [
        (index, m, n)
        for index, (m, n) in enumerate(
            (m, n) for m in m_range for n in n_range
        )
    ]
    compute = partial(
        _table_cell, kind, d, r, cap, trials, backend, seed, bound
    )

    workers = min(settings.THREADS, len(cells))
    if kind in ("bound", "dis") or workers <= 1:
        values = [compute(cell) for cell in cells]
    else:
        values = []
        with concurrent.futures.ProcessPoolExecutor(
            max_workers=workers
        ) as executor:
            for value in track(
                executor.map(compute, cells, chunksize=1),
                total=len(cells),
                description=f"Computing {kind} table",
                console=_stderr,
                transient=True,
            ):
                values.append(value)

    table = pd.DataFrame(
        [values[i : i + len(n_range)] for i in range(0, len(values), len(n_range))],
        index=pd.Index(list(m_range), name="m"),
        columns=list(n_range),
    )
    return table


def cmd_table(args):
    table = build_table(
        args.kind,
        args.d,
        parse_range(args.m),
        parse_range(args.n),
        r=args.r,
        cap=args.cap,
        trials=args.trials,
        seed=args.seed,
        backend=_backend(args),
        bound=args.bound,
    )
    if args.format == "json":
        _emit(
            {
                "kind": args.kind,
                "d": args.d,
                "rows": {
                    str(m): {str(n): table.loc[m, n] for n in table.columns}
                    for m in table.index
                },
            },
            "json",
        )
    else:
        sys.stdout.write(table.to_csv(lineterminator="\n"))
    return EXIT_OK


def cmd_probe(args):
    probe = secant_dim_probe(
        as_profile(args.profile),
        args.m,
        args.n,
        args.r,
        trials=args.trials,
        seed=args.seed,
        backend=_backend(args),
        homogenized=args.homogenized,
        audit=args.audit,
        bound=args.bound,
    )
    _emit(probe.to_dict(), args.format)
    return EXIT_OK


def cmd_member(args):
    point = point_from_dict(load_json(args.file))
    if args.show_matrix:
        sys.stdout.write(stacked_catalecticant_matrix(point).to_csv() + "\n")
        return EXIT_OK
    member = scroll_membership(point)
    rank = rank_of(stacked_catalecticant(point), RankBackend("exact-rational"))
    _emit({"member": member, "rank": rank}, args.format)
    return EXIT_OK


def cmd_synth(args):
    model = synth(args.m, args.n, args.d, args.r, seed=args.seed, bound=args.bound)
    if args.point is not None:
        save_json(dense_to_dict(embed(model)), args.point)
    _emit(model.to_dict(), args.format)
    return EXIT_OK


def cmd_recover(args):
    point = point_from_dict(load_json(args.point))
    model = DecoupledModel.from_dict(load_json(args.model))
    report = recover_coefficients(point, model.directions)
    _emit(report.to_dict(), args.format)
    return EXIT_OK


def cmd_audit_ah(args):
    audit = audit_ah(
        range(2, args.m_max + 1),
        range(3, args.d_max + 1),
        backend=_backend(args),
        trials=args.trials,
        seed=args.seed,
        bound=args.bound,
    )
    _emit(audit.to_dict(), args.format)
    return EXIT_OK


# --------------------------------------------------------------------------- #
#                                  parser                                     #
# --------------------------------------------------------------------------- #


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=settings.DEFAULT_SEED)
    common.add_argument("--trials", type=int, default=settings.DEFAULT_TRIALS)
    common.add_argument(
        "--backend", choices=BACKENDS, default=settings.DEFAULT_BACKEND
    )
    common.add_argument("--prime", type=int, default=settings.DEFAULT_PRIME)
    common.add_argument("--bound", type=int, default=settings.DEFAULT_BOUND)
    common.add_argument("--format", choices=("json", "csv"), default=None)
    common.add_argument(
        "--debug", action="store_true", help="print debug logs to stderr"
    )

    parser = argparse.ArgumentParser(
        prog="scrollrank",
        description="Ranks, identifiability and secant dimensions of Veronese scrolls",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", parents=[common], help="closed-form bounds")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("table", parents=[common], help="tables over m and n")
    p.add_argument("--kind", choices=TABLE_KINDS, default="bound")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--m", required=True, help="inclusive range, e.g. 2..8")
    p.add_argument("--n", required=True, help="inclusive range, e.g. 1..8")
    p.add_argument("--r", type=int, default=None, help="secant order for dims")
    p.add_argument(
        "--cap", type=int, default=None, help="rank cap for terracini, default m*n"
    )
    p.set_defaults(func=cmd_table, table=True)

    p = sub.add_parser("probe", parents=[common], help="secant dimension probe")
    p.add_argument("--profile", required=True, help="degrees, e.g. 1,2,3")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--homogenized", action="store_true")
    p.add_argument("--audit", action="store_true")
    p.set_defaults(func=cmd_probe)

    p = sub.add_parser("member", parents=[common], help="scroll membership")
    p.add_argument("file", help="point JSON")
    p.add_argument(
        "--show-matrix",
        action="store_true",
        help="print the stacked catalecticant as CSV instead of the verdict",
    )
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("synth", parents=[common], help="random decoupled model")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--point", default=None, help="also save the embedded point")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("recover", parents=[common], help="coefficient recovery")
    p.add_argument("--point", required=True, help="point JSON")
    p.add_argument("--model", required=True, help="model JSON with the directions")
    p.set_defaults(func=cmd_recover)

    p = sub.add_parser(
        "audit-ah", parents=[common], help="audit the AH exception list"
    )
    p.add_argument("--m-max", type=int, default=5)
    p.add_argument("--d-max", type=int, default=5)
    p.set_defaults(func=cmd_audit_ah)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = "csv" if getattr(args, "table", False) else "json"

    if args.debug:
        settings.DEBUG = True
        set_logging(level="DEBUG")

    try:
        return args.func(args)
    except (ArithmeticError, RuntimeError) as err:
        _stderr.print(f"[red]error:[/red] {err}")
        return EXIT_COMPUTATION
    except (ValueError, TypeError, KeyError, FileNotFoundError) as err:
        _stderr.print(f"[red]input error:[/red] {err}")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
