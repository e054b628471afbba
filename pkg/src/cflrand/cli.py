"""Command-line front door.

Exit codes: 0 success, 1 usage or input error, 2 a verification-style check
failed (a report is still written).  All inputs come from flags and files;
there is no network access.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import census, languages, prg, probe, randomness
from .automata import load_automaton, automaton_to_dict, Dfa
from .reports import ratio_fields, render_csv, render_json
from .util import BudgetError, UndefinedRatioError, parse_length_range


def _write(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _oracle_arg(name: str, boundary_even: bool = True):
    if name == "empty":
        return languages.empty_language()
    if name == "sigma-star":
        return languages.universal_language()
    return languages.oracle(name, boundary_even=boundary_even)


def _add_common(p):
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--workers", type=int, default=os.cpu_count() or 1,
                   help="parallel census workers (results are worker-count invariant)")


def cmd_density(args) -> int:
    lengths = parse_length_range(args.n)
    if args.method == "dfa":
        if not args.dfa:
            raise SystemExit("--method dfa needs --dfa FILE")
        machine = load_automaton(args.dfa)
        if not isinstance(machine, Dfa):
            raise SystemExit("--method dfa needs a dfa file")
        report = census.dfa_census(machine, lengths, label=args.dfa)
    else:
        lang = _oracle_arg(args.language, not args.boundary_odd)
        report = census.census_report(
            lang, lengths, method=args.method, workers=args.workers
        )
    doc = {
        "language": report.language,
        "alphabetSize": report.alphabet_size,
        "method": report.method,
        "rows": [
            {"n": row.n, "count": row.count, "ratio": ratio_fields(row.ratio)}
            for row in report.rows
        ],
    }
    csv_rows = [
        [row.n, row.count, row.ratio.numerator, row.ratio.denominator]
        for row in report.rows
    ]
    text = (
        render_json(doc)
        if args.format == "json"
        else render_csv(["n", "count", "ratio_num", "ratio_den"], csv_rows)
    )
    _write(args, text)
    return 0


def _gap_rows(args, fn):
    boundary_even = not args.boundary_odd
    left = _oracle_arg(args.language, boundary_even)
    right = _oracle_arg(args.other, boundary_even)
    rows = []
    for n in parse_length_range(args.n):
        rows.append((n, fn(left, right, n)))
    return left, right, rows


def cmd_agree(args) -> int:
    left, right, rows = _gap_rows(args, census.agreement)
    doc = {
        "statistic": "agreement-gap",
        "language": left.name,
        "other": right.name,
        "rows": [{"n": n, "value": ratio_fields(v)} for n, v in rows],
    }
    csv_rows = [[n, v.numerator, v.denominator] for n, v in rows]
    _write(args, render_json(doc) if args.format == "json"
           else render_csv(["n", "ratio_num", "ratio_den"], csv_rows))
    return 0


def cmd_balance(args) -> int:
    fn = {
        "conditional": census.conditional_balance,
        "signed": census.signed_balance,
        "gap": census.almost_equal_gap,
    }[args.kind]
    left, right, rows = _gap_rows(args, fn)
    doc = {
        "statistic": args.kind,
        "language": left.name,
        "other": right.name,
        "rows": [{"n": n, "value": ratio_fields(v)} for n, v in rows],
    }
    csv_rows = [[n, v.numerator, v.denominator] for n, v in rows]
    _write(args, render_json(doc) if args.format == "json"
           else render_csv(["n", "ratio_num", "ratio_den"], csv_rows))
    return 0


def cmd_probe(args) -> int:
    lang = _oracle_arg(args.language)
    report = probe.immunity_probe(lang, args.max_states, args.horizon, args.cap)
    doc = {
        "language": lang.name,
        "maxStates": args.max_states,
        "horizon": report.horizon,
        "checked": report.machines_checked,
        "survivors": [automaton_to_dict(s.dfa) for s in report.survivors],
        "note": "survivors witness non-immunity at this horizon; an empty "
        "list is evidence, not proof, of immunity",
    }
    _write(args, render_json(doc))
    return 0


def cmd_pump(args) -> int:
    machine = load_automaton(args.dfa)
    if not isinstance(machine, Dfa):
        raise SystemExit("pumping needs a dfa file")
    dec = probe.pump_decompose(machine, args.word)
    doc = {"word": args.word, "x": dec.x, "y": dec.y, "z": dec.z}
    if args.language:
        lang = _oracle_arg(args.language)
        hit = probe.pump_refute(machine, lang, args.word, args.i_max)
        doc["language"] = lang.name
        doc["refutation"] = (
            None if hit is None else {"i": hit[0], "word": hit[1]}
        )
    _write(args, render_json(doc))
    return 0


def cmd_nerode(args) -> int:
    lang = _oracle_arg(args.language)
    classes = census.nerode_lower_bound(lang, args.n, args.t)
    _write(args, render_json({
        "language": lang.name, "n": args.n, "t": args.t, "classes": classes,
    }))
    return 0


def cmd_swap(args) -> int:
    model = languages.advised_model(args.model)
    splits = range(args.n + 1) if args.split is None else [args.split]
    all_ok = True
    entries = []
    for split in splits:
        part = randomness.swap_partition(model, args.n, split)
        ok = randomness.swap_verify(part)
        all_ok &= ok
        entries.append({
            "split": split,
            "verified": ok,
            "blocks": [sorted(b) for b in part.blocks],
        })
    _write(args, render_json({
        "model": args.model, "n": args.n, "verified": all_ok, "partitions": entries,
    }))
    return 0 if all_ok else 2


def cmd_disc(args) -> int:
    report = randomness.discrepancy_bound_check(args.half_len, args.trials, args.seed)
    doc = {
        "halfLen": report.half_len,
        "trials": report.trials,
        "seed": report.seed,
        "maxDisc": ratio_fields(report.max_disc),
        "maxRatioSquared": ratio_fields(report.max_ratio_sq),
        "boundRespected": report.bound_respected,
    }
    _write(args, render_json(doc))
    return 0 if report.bound_respected else 2


def cmd_recur(args) -> int:
    checks = args.check.split(",") if args.check else []
    table = randomness.window_table(args.m, args.imax)
    doc = {
        "m": args.m,
        "iMax": args.imax,
        "rows": [
            {"i": i, "values": list(table.rows[i]), "sum": table.sum_at(i)}
            for i in sorted(table.rows)
        ],
        "checks": {},
    }
    ok = True
    for check in checks:
        if check == "brute":
            good = all(
                table.rows[i] == randomness.brute_window_row(args.m, i)
                for i in sorted(table.rows)
            )
        elif check == "delta":
            m0 = args.m // 2
            odd_is = [i for i in range(m0 + 1, (args.imax - 1) // 2 + 1)
                      if 2 * i + 1 in table.rows]
            good = randomness.delta_inequality_check(table, odd_is, range(m0))
        elif check == "growth":
            try:
                doc["checks"]["growthEstimate"] = randomness.growth_estimate(table)
                good = True
            except ValueError:
                good = False
        else:
            raise SystemExit(f"unknown check {check!r}")
        doc["checks"][check] = good
        ok &= good
    _write(args, render_json(doc))
    return 0 if ok else 2


def cmd_prg(args) -> int:
    if args.prg_cmd == "gen":
        _write(args, prg.generate(args.seed) + "\n")
        return 0
    if args.prg_cmd == "verify":
        ok = True
        rows = []
        for n in range(1, args.n_max + 1):
            size = prg.range_set(n, count_only=True)
            hist = prg.preimage_histogram(n)
            same = prg.range_matches_ip_star(n)
            expected = prg.expected_range_size(n)
            t = prg.tau(n)
            good = same and size == expected
            ok &= good
            rows.append({
                "n": n,
                "rangeSize": size,
                "tau": ratio_fields(t),
                "preimageHistogram": {str(k): v for k, v in sorted(hist.items())},
                "rangeEqualsIP": same,
            })
        _write(args, render_json({"nMax": args.n_max, "rows": rows, "ok": ok}))
        return 0 if ok else 2
    if args.prg_cmd == "fool":
        lengths = parse_length_range(args.n)
        sweep = prg.fooling_sweep(args.max_states, lengths)
        doc = {
            "maxStates": args.max_states,
            "lengths": list(sweep.lengths),
            "perLengthMax": {
                str(n): ratio_fields(v) for n, v in sweep.per_length_max.items()
            },
            "rows": [
                {
                    "machine": r.machine_index,
                    "n": r.n,
                    "probOnRange": ratio_fields(r.prob_on_range),
                    "probOnUniform": ratio_fields(r.prob_on_uniform),
                    "ell": ratio_fields(r.ell),
                }
                for r in sweep.rows
            ],
        }
        _write(args, render_json(doc))
        return 0
    raise SystemExit("unknown prg subcommand")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="cflrand",
        description="Exact censuses, immunity probes, and generator checks "
        "for the packaged language zoo.",
    )
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("density", help="exact word counts |L ∩ Σ^n| per length")
    p.add_argument("--language", default=None)
    p.add_argument("--dfa", default=None, help="automaton file for --method dfa")
    p.add_argument("--n", required=True, help="length or inclusive range A..B")
    p.add_argument("--method", choices=("enum", "dfa", "closed"), default="enum")
    p.add_argument("--boundary-odd", action="store_true",
                   help="assign the seam length n=2 to the odd window family")
    _add_common(p)
    p.set_defaults(fn=cmd_density)

    p = sub.add_parser("agree", help="distance of the symmetric-difference "
                       "density from one half")
    p.add_argument("--language", required=True)
    p.add_argument("--other", required=True)
    p.add_argument("--n", required=True)
    p.add_argument("--boundary-odd", action="store_true",
                   help="assign the seam length n=2 to the odd window family")
    _add_common(p)
    p.set_defaults(fn=cmd_agree)

    p = sub.add_parser("balance", help="conditional / signed balance and "
                       "almost-equal gap statistics")
    p.add_argument("--language", required=True)
    p.add_argument("--other", required=True)
    p.add_argument("--n", required=True)
    p.add_argument("--kind", choices=("conditional", "signed", "gap"),
                   default="conditional")
    p.add_argument("--boundary-odd", action="store_true",
                   help="assign the seam length n=2 to the odd window family")
    _add_common(p)
    p.set_defaults(fn=cmd_balance)

    p = sub.add_parser("probe", help="hunt for infinite regular subsets "
                       "below a horizon (immunity evidence)")
    p.add_argument("--language", required=True)
    p.add_argument("--max-states", type=int, default=3)
    p.add_argument("--horizon", type=int, default=16)
    p.add_argument("--cap", type=int, default=10**6)
    _add_common(p)
    p.set_defaults(fn=cmd_probe)

    p = sub.add_parser("pump", help="pumping decomposition and refutation "
                       "for a machine's word")
    p.add_argument("--dfa", required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--language", default=None)
    p.add_argument("--i-max", type=int, default=8)
    _add_common(p)
    p.set_defaults(fn=cmd_pump)

    p = sub.add_parser("nerode", help="count length-n words distinguishable "
                       "by extensions up to length t")
    p.add_argument("--language", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    _add_common(p)
    p.set_defaults(fn=cmd_nerode)

    p = sub.add_parser("swap", help="state-split partition of an advised "
                       "model and its suffix-swap closure check")
    p.add_argument("--model", required=True, help="l-keq:K or l-even")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--split", type=int, default=None,
                   help="one split point (default: all of them)")
    _add_common(p)
    p.set_defaults(fn=cmd_swap)

    p = sub.add_parser("disc", help="inner-product rectangle discrepancy "
                       "against the root-size bound")
    p.add_argument("--half-len", type=int, required=True)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    _add_common(p)
    p.set_defaults(fn=cmd_disc)

    p = sub.add_parser("recur", help="centered prefix-window table with "
                       "brute-force, band, and growth checks")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--imax", type=int, required=True)
    p.add_argument("--check", default="", help="comma list: brute,delta,growth")
    _add_common(p)
    p.set_defaults(fn=cmd_recur)

    p = sub.add_parser("prg", help="run, verify, or stress the stretch-by-one "
                       "generator")
    psub = p.add_subparsers(dest="prg_cmd", required=True)
    g = psub.add_parser("gen", help="generate from a seed")
    g.add_argument("seed")
    _add_common(g)
    g.set_defaults(fn=cmd_prg)
    v = psub.add_parser("verify", help="range identity, size, and preimage "
                        "census per length")
    v.add_argument("--n-max", type=int, default=12)
    _add_common(v)
    v.set_defaults(fn=cmd_prg)
    f = psub.add_parser("fool", help="fooling statistics against every small "
                        "canonical machine")
    f.add_argument("--max-states", type=int, default=2)
    f.add_argument("--n", required=True)
    _add_common(f)
    f.set_defaults(fn=cmd_prg)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, UndefinedRatioError, FileNotFoundError, BudgetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
