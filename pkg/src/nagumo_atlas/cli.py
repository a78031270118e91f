"""Command-line front end: counting tables, orbit listings, equilibrium
solves, region boundary scans, and self-verification.

Subcommands
    count   counting-formula table as CSV (``--table1`` for the four
            headline columns)
    orbits  one orbit class per line for a chosen length, alphabet, group
    solve   one equilibrium by continuation, text or ``--json``
    region  d_max boundary scan over a threshold grid as CSV
    verify  formula-vs-enumeration and divisor-sum identity checks

Exit codes: 0 success, 1 verification or solve failure, 2 usage error.
Output is deterministic for fixed flags: stable sort orders, '.' decimal
separator, LF line endings.
"""

from __future__ import annotations

import argparse
import csv
import json
import random
import re
import sys
from typing import Optional, Sequence

from . import counting, numtheory, regions
from .counting import COUNT_FIELDS, count_table
from .gde import ContinuationConfig, DEFAULT_CONFIG, Params, SolveError, solve_type
from .words import A2, A3, GroupKind, Word, enumerate_orbits

_FIELD_LABELS = {
    "necklaces": "N",
    "bracelets": "B",
    "permuted_necklaces": "Npi",
    "permuted_bracelets": "Bpi",
    "lyndon_necklaces": "NL",
    "lyndon_bracelets": "BL",
    "permuted_lyndon_necklaces": "NLpi",
    "permuted_lyndon_bracelets": "BLpi",
    "total_regions": "total",
}
_COUNT_COLUMNS = tuple(f for f in COUNT_FIELDS if f != "total_regions")

_GROUP_TOKEN = re.compile(r"^(c|d)(\d+)?(pi)?$")

_N_MAX_LIMIT = 64


def _parse_group(token: str, n: int, error) -> GroupKind:
    """Turn a token like c3, d6pi, cpi into a GroupKind; the embedded
    length, when present, must match the word length."""
    m = _GROUP_TOKEN.match(token.lower())
    if m is None:
        error(f"bad group token {token!r}; expected forms like c3, d3, c3pi, d3pi")
    letter, digits, pi = m.groups()
    if digits is not None and int(digits) != n:
        error(f"group token {token!r} names length {digits}, but -n is {n}")
    if letter == "c":
        return GroupKind.CYCLIC_PI if pi else GroupKind.CYCLIC
    return GroupKind.DIHEDRAL_PI if pi else GroupKind.DIHEDRAL


def _open_out(path: Optional[str]):
    if path is None:
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline=""), True


def _write_csv(rows: list[list], header: list[str], path: Optional[str]) -> None:
    stream, owned = _open_out(path)
    try:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    finally:
        if owned:
            stream.close()


def _cmd_count(args, error) -> int:
    if not (1 <= args.n_max <= _N_MAX_LIMIT):
        error(f"--n-max must lie in 1..{_N_MAX_LIMIT}, got {args.n_max}")
    if args.table1 and args.alphabet is not None:
        error("--table1 already fixes the columns; drop --alphabet")
    tables = [count_table(n) for n in range(1, args.n_max + 1)]
    if args.table1:
        header = ["n", "total_a3", "BLpi_a3", "total_a2", "BLpi_a2"]
        rows = [
            [
                t.n,
                t.a3.total_regions,
                t.a3.permuted_lyndon_bracelets,
                t.a2.total_regions,
                t.a2.permuted_lyndon_bracelets,
            ]
            for t in tables
            if t.n >= 2
        ]
    else:
        blocks = [A2, A3] if args.alphabet is None else [args.alphabet]
        header = ["n"]
        for alphabet in blocks:
            header += [f"{_FIELD_LABELS[f]}_{alphabet}" for f in _COUNT_COLUMNS]
        header += [f"total_{alphabet}" for alphabet in blocks]
        rows = []
        for t in tables:
            per = {A2: t.a2, A3: t.a3}
            row: list = [t.n]
            for alphabet in blocks:
                counts = per[alphabet]
                row += [getattr(counts, f) for f in _COUNT_COLUMNS]
            for alphabet in blocks:
                total = per[alphabet].total_regions
                row.append("" if total is None else total)
            rows.append(row)
    _write_csv(rows, header, args.out)
    return 0


def _cmd_orbits(args, error) -> int:
    group = _parse_group(args.group, args.n, error)
    try:
        classes = enumerate_orbits(
            args.n, args.alphabet, group, lyndon_only=args.lyndon
        )
    except ValueError as exc:
        error(str(exc))
    for c in classes:
        line = f"{c.representative} {c.size}"
        if args.full:
            members = sorted(c.members, key=lambda w: w.letters)
            line += " " + ",".join(str(w) for w in members)
        print(line)
    return 0


def _cmd_solve(args, error) -> int:
    try:
        word = Word.parse(args.word)
    except ValueError as exc:
        error(str(exc))
    try:
        p = Params(args.a, args.d)
    except ValueError as exc:
        error(str(exc))
    cfg = DEFAULT_CONFIG
    if args.tol is not None:
        if args.tol <= 0:
            error(f"--tol must be positive, got {args.tol}")
        cfg = ContinuationConfig(newton_tol=args.tol)
    try:
        eq = solve_type(word, p, cfg)
    except SolveError as exc:
        print(f"solve failed: {exc}", file=sys.stderr)
        return 1
    payload = {
        "word": str(word),
        "a": p.a,
        "d": p.d,
        "u": [float(x) for x in eq.u],
        "stable": eq.stable,
        "det_sign": eq.det_sign,
        "residual_norm": eq.residual_norm,
    }
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        for key, value in payload.items():
            if key == "u":
                value = " ".join(str(x) for x in value)
            print(f"{key}: {value}")
    return 0


def _cmd_region(args, error) -> int:
    try:
        word = Word.parse(args.word)
        compare = Word.parse(args.compare) if args.compare else None
    except ValueError as exc:
        error(str(exc))
    if args.a_count < 1:
        error(f"--a-count must be at least 1, got {args.a_count}")
    if args.a_count == 1:
        grid = [args.a_min]
    else:
        width = (args.a_max - args.a_min) / (args.a_count - 1)
        grid = [args.a_min + i * width for i in range(args.a_count)]
    try:
        base = regions.scan_region(word, grid, d_cap=args.d_cap)
        other = (
            regions.scan_region(compare, grid, d_cap=args.d_cap)
            if compare is not None
            else None
        )
    except ValueError as exc:
        error(str(exc))
    header = ["word", "a", "d_max", "terminal"]
    if other is not None:
        header += ["word_b", "d_max_b", "terminal_b", "abs_dev"]
    rows = []
    for i, s in enumerate(base.samples):
        row: list = [str(word), str(s.a), str(s.d_max), s.terminal.value]
        if other is not None:
            o = other.samples[i]
            row += [
                str(compare),
                str(o.d_max),
                o.terminal.value,
                str(abs(s.d_max - o.d_max)),
            ]
        rows.append(row)
    _write_csv(rows, header, args.out)
    return 0


_FORMULA_BY_GROUP = {
    (GroupKind.CYCLIC, False): lambda alphabet, k, n: counting.necklaces(k, n),
    (GroupKind.CYCLIC, True): lambda alphabet, k, n: counting.lyndon_necklaces(k, n),
    (GroupKind.DIHEDRAL, False): lambda alphabet, k, n: counting.bracelets(k, n),
    (GroupKind.DIHEDRAL, True): lambda alphabet, k, n: counting.lyndon_bracelets(k, n),
    (GroupKind.CYCLIC_PI, False): lambda alphabet, k, n: counting.permuted_necklaces(
        alphabet, n
    ),
    (GroupKind.CYCLIC_PI, True): lambda alphabet, k, n: counting.permuted_lyndon_necklaces(
        alphabet, n
    ),
    (GroupKind.DIHEDRAL_PI, False): lambda alphabet, k, n: counting.permuted_bracelets(
        alphabet, n
    ),
    (
        GroupKind.DIHEDRAL_PI,
        True,
    ): lambda alphabet, k, n: counting.permuted_lyndon_bracelets(alphabet, n),
}

_DIVISOR_SUM_PAIRS = (
    ("necklaces", "lyndon_necklaces"),
    ("bracelets", "lyndon_bracelets"),
    ("permuted_necklaces", "permuted_lyndon_necklaces"),
    ("permuted_bracelets", "permuted_lyndon_bracelets"),
)


def _identities_ok(n: int) -> bool:
    s_all, s_even, s_odd = numtheory.convolution_identity_check(n)
    mu = numtheory.mobius(n)
    if s_all != mu:
        return False
    if n % 2 == 0 and (s_even != -mu or s_odd != 2 * mu):
        return False
    divs = numtheory.divisors(n)
    if sum(numtheory.euler_phi(d) for d in divs) != n:
        return False
    return sum(numtheory.mobius(d) for d in divs) == (1 if n == 1 else 0)


def _cmd_verify(args, error) -> int:
    if args.n_max < 1:
        error(f"--n-max must be positive, got {args.n_max}")
    failures = 0

    def report(label: str, ok: bool) -> None:
        nonlocal failures
        print(f"{'ok' if ok else 'MISMATCH'}: {label}")
        if not ok:
            failures += 1

    systematic = list(range(1, args.n_max + 1))
    rng = random.Random(args.seed)
    sampled = sorted(rng.randrange(args.n_max + 1, 10**6) for _ in range(25))
    bad = [n for n in systematic + sampled if not _identities_ok(n)]
    report(
        f"divisor-sum identities, n <= {args.n_max} plus 25 sampled "
        f"(seed {args.seed})",
        not bad,
    )
    if bad:
        print(f"  first failing n: {bad[0]}", file=sys.stderr)

    if not args.identities_only:
        for alphabet, k, n_hi in ((A2, 2, args.n_max_a2), (A3, 3, args.n_max_a3)):
            for group in GroupKind:
                for lyndon in (False, True):
                    mismatch = []
                    for n in range(1, n_hi + 1):
                        want = _FORMULA_BY_GROUP[(group, lyndon)](alphabet, k, n)
                        got = len(enumerate_orbits(n, alphabet, group, lyndon))
                        if want != got:
                            mismatch.append((n, want, got))
                    label = (
                        f"formula vs enumeration, {alphabet} {group.value}"
                        f"{' lyndon' if lyndon else ''} n <= {n_hi}"
                    )
                    report(label, not mismatch)
                    for n, want, got in mismatch:
                        print(f"  n={n}: formula {want}, enumerated {got}",
                              file=sys.stderr)
        for alphabet, k in ((A2, 2), (A3, 3)):
            bad_pairs = []
            for full_name, lyndon_name in _DIVISOR_SUM_PAIRS:
                permuted = full_name.startswith("permuted")
                full = getattr(counting, full_name)
                lyn = getattr(counting, lyndon_name)
                arg = alphabet if permuted else k
                for n in range(1, _N_MAX_LIMIT + 1):
                    total = sum(lyn(arg, d) for d in numtheory.divisors(n))
                    if total != full(arg, n):
                        bad_pairs.append((full_name, n))
            report(
                f"aperiodic-root divisor sums, {alphabet} n <= {_N_MAX_LIMIT}",
                not bad_pairs,
            )
            for name, n in bad_pairs:
                print(f"  {name} at n={n}", file=sys.stderr)

    print(f"verify: {'all checks passed' if failures == 0 else f'{failures} check(s) failed'}")
    return 0 if failures == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nagumo-atlas",
        description="Pattern counts, orbit listings, and existence regions "
        "for periodic states of the bistable cycle network.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_count = sub.add_parser("count", help="counting-formula table as CSV")
    p_count.add_argument("--n-max", type=int, required=True,
                         help=f"largest word length, 1..{_N_MAX_LIMIT}")
    p_count.add_argument("--alphabet", choices=[A2, A3], default=None,
                         help="restrict columns to one alphabet")
    p_count.add_argument("--table1", action="store_true",
                         help="only the four headline columns: totals and "
                         "aperiodic two-sided class counts per alphabet")
    p_count.add_argument("--out", default=None, help="write CSV here instead of stdout")

    p_orbits = sub.add_parser("orbits", help="orbit classes, one per line")
    p_orbits.add_argument("-n", type=int, required=True, help="word length")
    p_orbits.add_argument("--alphabet", choices=[A2, A3], default=A3)
    p_orbits.add_argument("--group", default="dpi",
                          help="symmetry group token: c, d, cpi, dpi, "
                          "optionally with the length, e.g. c3 or d6pi")
    p_orbits.add_argument("--lyndon", action="store_true",
                          help="aperiodic classes only")
    p_orbits.add_argument("--full", action="store_true",
                          help="append the class members to each line")

    p_solve = sub.add_parser("solve", help="one equilibrium by continuation")
    p_solve.add_argument("--word", required=True, help="pattern, e.g. 0a1")
    p_solve.add_argument("--a", type=float, required=True, help="threshold in (0,1)")
    p_solve.add_argument("--d", type=float, required=True, help="coupling, >= 0")
    p_solve.add_argument("--tol", type=float, default=None,
                         help="Newton residual tolerance")
    p_solve.add_argument("--json", action="store_true", help="JSON output")

    p_region = sub.add_parser("region", help="d_max boundary scan as CSV")
    p_region.add_argument("--word", required=True)
    p_region.add_argument("--a-min", type=float, required=True)
    p_region.add_argument("--a-max", type=float, required=True)
    p_region.add_argument("--a-count", type=int, required=True,
                          help="number of grid points")
    p_region.add_argument("--d-cap", type=float, default=regions.DEFAULT_D_CAP,
                          help="stop the march at this coupling")
    p_region.add_argument("--compare", default=None,
                          help="second word; adds its heights and |deviation|")
    p_region.add_argument("--out", default=None,
                          help="write CSV here instead of stdout")

    p_verify = sub.add_parser("verify", help="cross-check formulas and identities")
    p_verify.add_argument("--n-max-a2", type=int, default=12,
                          help="enumeration bound for the two-letter alphabet")
    p_verify.add_argument("--n-max-a3", type=int, default=8,
                          help="enumeration bound for the three-letter alphabet")
    p_verify.add_argument("--n-max", type=int, default=256,
                          help="systematic bound for divisor-sum identities")
    p_verify.add_argument("--identities-only", action="store_true",
                          help="skip the enumeration cross-checks")
    p_verify.add_argument("--seed", type=int, default=1729,
                          help="seed for the sampled identity checks")

    return parser


_HANDLERS = {
    "count": _cmd_count,
    "orbits": _cmd_orbits,
    "solve": _cmd_solve,
    "region": _cmd_region,
    "verify": _cmd_verify,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return _HANDLERS[args.command](args, parser.error)


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
