"""Command-line front end.

Commands
--------
field           print a field summary (p, n, q, modulus, generator)
eval            print the full value table of a function
ddt             differential spectrum of a function
fbct            second-order zero differential spectrum of a function
spectrum        both of the above in one report
flats           vanishing two-dimensional flats of a function (char 2)
sumfree         k-th-order sum-freedom check (char 2)
kloosterman     binary Kloosterman sum K(n) at the point 1
verify          run one closed-form checker against brute force
list-theorems   catalog of checkable statements with hypothesis summaries

Exit status: 0 on success, 1 when a verification found a mismatch,
2 on usage errors or when a statement's hypotheses are not met.

Identical invocations produce byte-identical output: JSON is emitted with
a fixed key order and timings are pinned to zero on this surface.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import Optional

from .field import Field, FieldError, make_field, omega
from .functions import FunctionError, parse_function
from .spectra import ddt_spectrum, fbct_spectrum, table_csv_lines
from .flats import flats_listing_lines, is_kth_sum_free, vanishing_flats
from .closed_forms import (HypothesisError, THEOREMS, kloosterman, verify)


@dataclass
class RunConfig:
    """Everything a command run depends on; equal configs give equal bytes."""
    command: str
    p: Optional[int] = None
    n: Optional[int] = None
    modulus: Optional[str] = None
    fn: Optional[str] = None
    theorem: Optional[str] = None
    t: Optional[int] = None
    k: Optional[int] = None
    gamma: Optional[str] = None
    format: str = "json"
    out: Optional[str] = None
    workers: int = 0            # 0 = available parallelism
    keep_table: bool = False
    list_items: bool = False
    seed: int = 0
    method: str = "both"


class UsageError(ValueError):
    pass


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ffspectra",
        description="Exact differential and second-order zero differential "
                    "spectra over finite fields, with closed-form checkers.")
    ap.add_argument("command", choices=[
        "field", "eval", "ddt", "fbct", "spectrum", "flats", "sumfree",
        "kloosterman", "verify", "list-theorems"])
    ap.add_argument("--p", type=int, help="field characteristic (default 2)")
    ap.add_argument("--n", type=int, help="extension degree")
    ap.add_argument("--mod", dest="modulus",
                    help="modulus coefficients c0,c1,...,cn (constant first)")
    ap.add_argument("--fn", help="function text: monomial:d=<int or formula> | "
                                 "inv-plus-trace | gamma-trace-inverse:t=<int>,"
                                 "gamma=<coeffs> | table:<codes> | table:@<path>")
    ap.add_argument("--theorem", help="statement id for the verify command")
    ap.add_argument("--t", type=int, help="exponent parameter t")
    ap.add_argument("--k", type=int, help="exponent parameter k, or the flat "
                                          "dimension for sumfree")
    ap.add_argument("--gamma", help="element coefficients for gamma-bearing "
                                    "functions")
    ap.add_argument("--format", choices=["csv", "json"], default="json")
    ap.add_argument("--out", help="output path (default: standard output)")
    ap.add_argument("--workers", type=int, default=0,
                    help="worker processes; 0 means available parallelism")
    ap.add_argument("--keep-table", action="store_true", dest="keep_table",
                    help="include the full q-by-q table in spectra output")
    ap.add_argument("--list", action="store_true", dest="list_items",
                    help="enumerate blocks in the flats command")
    ap.add_argument("--seed", type=int, default=0,
                    help="seed for randomized verification batches")
    ap.add_argument("--method", choices=["direct", "carlitz", "both"],
                    default="both", help="Kloosterman evaluation method")
    return ap


def _config_from_args(argv) -> RunConfig:
    ns = _build_parser().parse_args(argv)
    return RunConfig(command=ns.command, p=ns.p, n=ns.n, modulus=ns.modulus,
                     fn=ns.fn, theorem=ns.theorem, t=ns.t, k=ns.k,
                     gamma=ns.gamma, format=ns.format, out=ns.out,
                     workers=ns.workers, keep_table=ns.keep_table,
                     list_items=ns.list_items, seed=ns.seed, method=ns.method)


def _effective_workers(cfg: RunConfig) -> int:
    if cfg.workers and cfg.workers > 0:
        return cfg.workers
    return os.cpu_count() or 1


def _require_n(cfg: RunConfig) -> int:
    if cfg.n is None:
        raise UsageError("this command requires --n")
    return cfg.n


def _field_from(cfg: RunConfig) -> Field:
    modulus = None
    if cfg.modulus is not None:
        modulus = [int(c) for c in cfg.modulus.split(",")]
    return make_field(cfg.p if cfg.p is not None else 2,
                      _require_n(cfg), modulus)


def _function_from(cfg: RunConfig, field: Field):
    if not cfg.fn:
        raise UsageError("this command requires --fn")
    return parse_function(field, cfg.fn, k=cfg.k, t=cfg.t)


def _emit(cfg: RunConfig, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2)


# ---------------------------------------------------------------------------
# command bodies; each returns (exit_code, output_text)
# ---------------------------------------------------------------------------

def _cmd_field(cfg: RunConfig):
    field = _field_from(cfg)
    tb = field.tables()
    try:
        w = omega(field).code
    except FieldError:
        w = None
    obj = {"p": field.p, "n": field.n, "q": field.q,
           "modulus": field.modulus_text(), "generator": int(tb.gen),
           "char2": field.char2, "omega": w}
    if cfg.format == "csv":
        lines = [f"{k},{'' if v is None else v}" for k, v in obj.items()]
        return 0, "\n".join(lines)
    return 0, _json_text(obj)


def _cmd_eval(cfg: RunConfig):
    field = _field_from(cfg)
    F = _function_from(cfg, field)
    values = [int(v) for v in F.table()]
    if cfg.format == "csv":
        lines = ["x,F(x)"] + [f"{x},{v}" for x, v in enumerate(values)]
        return 0, "\n".join(lines)
    return 0, _json_text({"field": {"p": field.p, "n": field.n,
                                    "modulus": field.modulus_text()},
                          "function": F.text(), "values": values})


def _spectrum_obj(cfg: RunConfig, field: Field, F, kind: str):
    fn = ddt_spectrum if kind == "ddt" else fbct_spectrum
    rep = fn(F, keep_table=cfg.keep_table, workers=_effective_workers(cfg))
    return rep


def _cmd_one_spectrum(cfg: RunConfig, kind: str):
    field = _field_from(cfg)
    F = _function_from(cfg, field)
    rep = _spectrum_obj(cfg, field, F, kind)
    if cfg.format == "csv":
        if cfg.keep_table:
            return 0, "\n".join(table_csv_lines(rep.table))
        lines = ["value,count"] + [f"{v},{c}" for v, c in sorted(rep.histogram)]
        return 0, "\n".join(lines)
    return 0, _json_text(rep.to_json_obj())


def _cmd_spectrum(cfg: RunConfig):
    field = _field_from(cfg)
    F = _function_from(cfg, field)
    ddt = _spectrum_obj(cfg, field, F, "ddt")
    fbct = _spectrum_obj(cfg, field, F, "fbct")
    if cfg.format == "csv":
        lines = ["kind,value,count"]
        lines += [f"ddt,{v},{c}" for v, c in sorted(ddt.histogram)]
        lines += [f"fbct,{v},{c}" for v, c in sorted(fbct.histogram)]
        return 0, "\n".join(lines)
    return 0, _json_text({"ddt": ddt.to_json_obj(), "fbct": fbct.to_json_obj()})


def _cmd_flats(cfg: RunConfig):
    field = _field_from(cfg)
    F = _function_from(cfg, field)
    rep = vanishing_flats(F, list_blocks=cfg.list_items)
    if cfg.format == "csv":
        lines = [f"total_two_flats,{rep.total_two_flats}",
                 f"vanishing_count,{rep.vanishing_count}"]
        if cfg.list_items:
            lines += flats_listing_lines(rep, field)
        return 0, "\n".join(lines)
    obj = {"field": {"p": field.p, "n": field.n,
                     "modulus": field.modulus_text()},
           "function": F.text(),
           "total_two_flats": rep.total_two_flats,
           "vanishing_count": rep.vanishing_count}
    if cfg.list_items:
        obj["blocks"] = [list(b) for b in rep.listing]
    return 0, _json_text(obj)


def _cmd_sumfree(cfg: RunConfig):
    field = _field_from(cfg)
    F = _function_from(cfg, field)
    if cfg.k is None:
        raise UsageError("sumfree requires --k (flat dimension)")
    rep = is_kth_sum_free(F, cfg.k)
    if cfg.format == "csv":
        flat = ("" if rep.violating_flat is None
                else "|".join(str(c) for c in rep.violating_flat))
        return 0, "\n".join([f"k,{rep.k}",
                             f"is_sum_free,{str(rep.is_sum_free).lower()}",
                             f"violating_flat,{flat}"])
    return 0, _json_text({"k": rep.k, "is_sum_free": rep.is_sum_free,
                          "violating_flat":
                          (None if rep.violating_flat is None
                           else list(rep.violating_flat))})


def _cmd_kloosterman(cfg: RunConfig):
    n = _require_n(cfg)
    if cfg.method == "both":
        direct = kloosterman(n, method="direct")
        carlitz = kloosterman(n, method="carlitz")
        if direct != carlitz:
            return 1, _json_text({"n": n, "direct": direct,
                                  "carlitz": carlitz, "equal": False})
        obj = {"n": n, "direct": direct, "carlitz": carlitz}
    else:
        obj = {"n": n, cfg.method: kloosterman(n, method=cfg.method)}
    if cfg.format == "csv":
        lines = [f"{k},{v}" for k, v in obj.items() if k != "n"]
        return 0, "\n".join([f"n,{n}"] + lines)
    return 0, _json_text(obj)


def _cmd_verify(cfg: RunConfig):
    if not cfg.theorem:
        raise UsageError("verify requires --theorem (see list-theorems)")
    modulus = None
    if cfg.modulus is not None:
        modulus = [int(c) for c in cfg.modulus.split(",")]
    kwargs = dict(p=cfg.p, n=cfg.n, modulus=modulus, t=cfg.t, k=cfg.k)
    if cfg.gamma is not None:
        field = make_field(cfg.p if cfg.p is not None else 2,
                           _require_n(cfg), modulus)
        kwargs["gamma"] = field.from_text(cfg.gamma)
    kwargs = {k: v for k, v in kwargs.items() if v is not None}
    verdict = verify(cfg.theorem, seed=cfg.seed,
                     workers=_effective_workers(cfg), **kwargs)
    obj = verdict.to_json_obj(fixed_time=True)
    if verdict.status == "hypothesis_error":
        sys.stderr.write((verdict.notes[0] if verdict.notes else
                          "hypothesis not satisfied") + "\n")
        return 2, _json_text(obj)
    if cfg.format == "csv":
        lines = ["key,value"]
        for key in ("theorem", "passed", "cells_checked", "status"):
            val = obj[key]
            lines.append(f"{key},{json.dumps(val) if isinstance(val, bool) else val}")
        lines.append(f"first_mismatch,{json.dumps(obj['first_mismatch'])}")
        return (0 if verdict.passed else 1), "\n".join(lines)
    return (0 if verdict.passed else 1), _json_text(obj)


def _cmd_list_theorems(cfg: RunConfig):
    rows = [{"id": tid, "summary": meta["summary"],
             "params": list(meta["params"])}
            for tid, meta in THEOREMS.items()]
    if cfg.format == "csv":
        lines = ["id,summary"] + [f"{r['id']},\"{r['summary']}\"" for r in rows]
        return 0, "\n".join(lines)
    return 0, _json_text({"theorems": rows})


_COMMANDS = {
    "field": _cmd_field,
    "eval": _cmd_eval,
    "ddt": lambda cfg: _cmd_one_spectrum(cfg, "ddt"),
    "fbct": lambda cfg: _cmd_one_spectrum(cfg, "fbct"),
    "spectrum": _cmd_spectrum,
    "flats": _cmd_flats,
    "sumfree": _cmd_sumfree,
    "kloosterman": _cmd_kloosterman,
    "verify": _cmd_verify,
    "list-theorems": _cmd_list_theorems,
}


def dispatch(cfg: RunConfig) -> int:
    """Run one command; returns the process exit status."""
    try:
        code, text = _COMMANDS[cfg.command](cfg)
    except (UsageError, HypothesisError, FunctionError, FieldError,
            ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    _emit(cfg, text)
    return code


def main(argv=None) -> int:
    cfg = _config_from_args(sys.argv[1:] if argv is None else argv)
    return dispatch(cfg)


if __name__ == "__main__":
    sys.exit(main())
