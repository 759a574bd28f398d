"""Command-line front end.

Exit codes: 0 success, 1 a checked property failed, 2 bad input, 3 budget
exhausted (partial results are still printed and flagged).

Families are given as a builtin shorthand (``cyclic_p:2:3``,
``elementary_abelian:2:2``, ``abelian_p:2:4``), an inline JSON object or a
path to a JSON file. ``cyclic_p:2`` without a bound names the N-indexed
family; combine it with ``--truncation N`` to get a finite truncation.

Objects are ``unit``, ``zero``, ``chi:G``, ``e:G``, ``rep:G`` (the
representable functor), ``gamma:i``, a symbolic expression such as
``tensor(gamma_1,chi_3)``, a path to a Rep file, or a name defined in the
``objects`` table of a ``--config`` workspace file.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from . import checks
from .family import FamilyError, GroupFamily, check_family, check_n_stable, truncate
from .io import InputError, dumps, family_from_json, load_json, rep_from_json, rep_to_json
from .kan import adjunction_check, left_kan, right_kan
from .rep import (BudgetExceeded, RepError, chi, e_rep, gamma_rep, representable, support, unit,
                  validate, zero_rep)
from .serre import IdealSpec, brute_force_closure, decompose_chi, gamma_certificate, member, symbolic_member
from .spectrum import (N_STABLE_KINDS, builtin_truncation, decide_prime, described_ideals,
                       enumerate_serre_ideals, quotient_by_group_prime, reference_is_closed,
                       replay_uniqueness, representable_point_sets, spc, spc_n_stable, verify_p_infinity,
                       zariski_closed_finite)
from .symbolic import Named, basic_catalog, parse_named

OK, FAILED, BAD_INPUT, BUDGET = 0, 1, 2, 3

_BOUND_FIELD = {"cyclic_p": "max_exponent", "elementary_abelian": "max_rank", "abelian_p": "order_bound"}


class OutOfBudget(Exception):
    def __init__(self, report):
        super().__init__("budget exhausted")
        self.report = report


@dataclass
class Workspace:
    family: GroupFamily | None
    n_kind: tuple[str, int] | None
    objects: dict[str, Any] = field(default_factory=dict)
    fmt: str = "text"
    budget: int | None = None

    @property
    def indexing(self):
        rep = check_n_stable(self.family)
        return rep.indexing if rep.total_order else None


# --- input resolution -----------------------------------------------------------------------


def _family_spec(text: str) -> dict:
    text = text.strip()
    if text.startswith("{"):
        try:
            return json.loads(text)
        except json.JSONDecodeError as e:
            raise InputError(f"--family: column {e.colno}: {e.msg}") from None
    head = text.split(":")[0]
    if head in _BOUND_FIELD:
        parts = text.split(":")
        try:
            nums = [int(x) for x in parts[1:]]
        except ValueError:
            raise InputError(f"bad family shorthand {text!r}") from None
        if not 1 <= len(nums) <= 2:
            raise InputError(f"bad family shorthand {text!r}")
        spec = {"kind": head, "p": nums[0]}
        if len(nums) == 2:
            spec[_BOUND_FIELD[head]] = nums[1]
        return spec
    return load_json(text)


def _resolve_family(spec: dict, truncation: int | None) -> tuple[GroupFamily, tuple | None]:
    kind = spec.get("kind") if isinstance(spec, dict) else None
    if kind in _BOUND_FIELD and _BOUND_FIELD[kind] not in spec:
        if kind not in N_STABLE_KINDS:
            raise InputError(f"{kind} needs {_BOUND_FIELD[kind]}")
        p = int(spec["p"])
        top = 2 if truncation is None else truncation
        return builtin_truncation(kind, p, top), (kind, p)
    if truncation is not None:
        if kind not in N_STABLE_KINDS:
            raise InputError("--truncation applies to cyclic_p and elementary_abelian families")
        spec = dict(spec)
        spec[_BOUND_FIELD[kind]] = truncation
    try:
        return family_from_json(spec), None
    except FamilyError:
        raise
    except (ValueError, TypeError) as e:
        raise InputError(str(e)) from None


def load_workspace(args) -> Workspace:
    cfg: dict = {}
    if getattr(args, "config", None):
        cfg = load_json(args.config)
        if not isinstance(cfg, dict):
            raise InputError("workspace file must hold a JSON object")
    fam_src = args.family or cfg.get("family")
    if fam_src is None:
        raise InputError("no family given (use --family or a workspace file)")
    spec = fam_src if isinstance(fam_src, dict) else _family_spec(str(fam_src))
    truncation = args.truncation if args.truncation is not None else cfg.get("truncation")
    family, n_kind = _resolve_family(spec, truncation)
    ws = Workspace(family, n_kind, dict(cfg.get("objects", {})),
                   args.format or cfg.get("format", "text"),
                   args.budget if args.budget is not None else cfg.get("budget"))
    # every referenced name must resolve before any computation
    for ref in list(getattr(args, "object", None) or []) + list(getattr(args, "ideal", None) or []):
        resolve_object(ws, ref, dry=True)
    for name in ws.objects:
        resolve_object(ws, name, dry=True)
    return ws


def _symbolic(text: str) -> Named | None:
    try:
        return parse_named(text)
    except ValueError:
        return None


def resolve_object(ws: Workspace, ref, dry: bool = False, family: GroupFamily | None = None):
    """A Rep (or, in dry mode, ``None``) for an object reference."""
    fam = family or ws.family
    if isinstance(ref, dict):
        return None if dry else rep_from_json(ref, fam)
    ref = str(ref).strip()
    if ref in ws.objects:
        return resolve_object(ws, ws.objects[ref], dry, family)
    if ref in ("unit", "zero"):
        return None if dry else (unit(fam) if ref == "unit" else zero_rep(fam))
    if ":" in ref and not ref.endswith(".json"):
        kind, _, arg = ref.partition(":")
        if kind in ("chi", "e", "rep"):
            if arg not in fam.classes:
                raise InputError(f"object {ref!r}: no class {arg!r} in the family")
            if dry:
                return None
            return {"chi": chi, "e": e_rep, "rep": representable}[kind](fam, arg)
        if kind == "gamma":
            if not arg.isdigit():
                raise InputError(f"object {ref!r}: gamma needs a level index")
            if dry:
                return None
            idx = check_n_stable(fam).indexing
            if not idx:
                raise InputError("gamma objects need a totally ordered family")
            return gamma_rep(fam, int(arg), idx)
        raise InputError(f"unknown object constructor {kind!r}")
    named = _symbolic(ref)
    if named is not None:
        if dry:
            return None
        idx = check_n_stable(fam).indexing
        if not idx:
            raise InputError(f"symbolic object {ref!r} needs a totally ordered family")
        return named.realize(fam, idx)
    path = Path(ref)
    if not path.exists():
        raise InputError(f"unknown object reference {ref!r}")
    data = load_json(path)
    return None if dry else rep_from_json(data, fam)


# --- output -------------------------------------------------------------------------------------


def _text(obj, indent=0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
        return "\n".join(lines)
    if isinstance(obj, list):
        return "\n".join(f"{pad}- {x}" if not isinstance(x, (dict, list))
                         else f"{pad}-\n" + _text(x, indent + 1) for x in obj)
    return f"{pad}{obj}"


def emit(ws_fmt: str, report: dict, out: str | None = None, payload: dict | None = None) -> None:
    if out and payload is not None:
        Path(out).write_text(dumps(payload))
        report = dict(report, written=out)
    if ws_fmt == "json":
        sys.stdout.write(dumps(report))
    else:
        print(_text(report))


def _dims(X) -> dict:
    return {G: X.dims[G] for G in X.family.classes}


# --- commands -------------------------------------------------------------------------------------


def cmd_validate(ws: Workspace, args) -> tuple[int, dict]:
    fr = check_family(ws.family)
    report = {"family": ws.family.spec, "classes": list(ws.family.classes),
              "family_ok": fr.ok, "family_violations": fr.violations,
              "associativity_triples": fr.triples_checked,
              "associativity_skipped": fr.associativity_skipped, "objects": {}}
    ok = fr.ok
    refs = list(args.object or []) + [n for n in ws.objects if n not in (args.object or [])]
    for ref in refs:
        try:
            X = resolve_object(ws, ref)
        except RepError as e:
            report["objects"][ref] = {"ok": False, "violations": [str(e)]}
            ok = False
            continue
        bad = validate(X)
        report["objects"][ref] = {"ok": not bad, "dims": _dims(X), "violations": bad}
        ok = ok and not bad
    report["ok"] = ok
    return (OK if ok else FAILED), report


def _one_object(ws, args):
    if not args.object:
        raise InputError("this command needs --object")
    return [(ref, resolve_object(ws, ref)) for ref in args.object]


def cmd_support(ws: Workspace, args) -> tuple[int, dict]:
    rep = {}
    for ref, X in _one_object(ws, args):
        entry = {"support": sorted(support(X).points, key=ws.family.classes.index), "dims": _dims(X)}
        named = _symbolic(ref)
        if named is not None:
            entry["symbolic_support"] = str(named.descriptor())
        rep[ref] = entry
    return OK, {"family": ws.family.spec, "objects": rep}


def _closure_catalog(fam):
    return [chi(fam, G) for G in fam.classes] + [e_rep(fam, G) for G in fam.classes]


def cmd_member(ws: Workspace, args) -> tuple[int, dict]:
    objs = _one_object(ws, args)
    if not args.ideal:
        raise InputError("member needs at least one --ideal generator")
    gens = [resolve_object(ws, g) for g in args.ideal]
    ideal = IdealSpec.generated(ws.family, gens)
    results, code, payload = {}, OK, {}
    for ref, X in objs:
        verdict = member(X, ideal)
        entry = {"member": verdict,
                 "support": sorted(support(X).points, key=ws.family.classes.index),
                 "ideal_support": sorted(ideal.support.points, key=ws.family.classes.index)}
        names = [_symbolic(g) for g in args.ideal]
        nx = _symbolic(ref)
        if nx is not None and all(n is not None for n in names):
            gen = names[0]
            for n in names[1:]:
                gen = gen + n
            entry["symbolic_member"] = symbolic_member(nx, gen)
        if verdict:
            cert = decompose_chi(X)
            problems = cert.verify()
            entry["certificate_verified"] = not problems
            entry["certificate_pieces"] = [list(p) for p in cert.pieces()]
            payload[ref] = cert.to_json()
            if problems:
                code = FAILED
        if args.oracle:
            budget = ws.budget or 2000
            cl = brute_force_closure(gens, [X], budget=budget)
            entry["oracle_reached"] = 0 in cl
            entry["oracle_lower_bound"] = cl.lower_bound
            if 0 in cl and not verdict:
                code = FAILED
            elif cl.lower_bound and code == OK:
                code = BUDGET
        results[ref] = entry
    report = {"family": ws.family.spec, "objects": results}
    if code == BUDGET:
        report["partial"] = True
    return code, report, (payload if payload else None)


def cmd_decompose(ws: Workspace, args) -> tuple[int, dict]:
    out, payload, code = {}, {}, OK
    for ref, X in _one_object(ws, args):
        if args.method == "gamma":
            idx = ws.indexing
            if not idx:
                raise InputError("the gamma filtration needs a totally ordered family")
            cert = gamma_certificate(X, idx)
        else:
            cert = decompose_chi(X)
        problems = cert.verify()
        out[ref] = {"pieces": [list(p) for p in cert.pieces()], "verified": not problems,
                    "problems": problems}
        payload[ref] = cert.to_json()
        if problems:
            code = FAILED
    return code, {"family": ws.family.spec, "method": args.method, "certificates": out}, payload


def _spectrum_report(ws: Workspace) -> dict:
    if ws.n_kind:
        kind, p = ws.n_kind
        sp = spc_n_stable(kind, p)
        return sp.to_json()
    guard = ws.budget if ws.budget is not None else 12
    if len(ws.family) > guard:
        raise OutOfBudget({"family": ws.family.spec, "classes": len(ws.family), "guard": guard,
                           "partial": True})
    return spc(ws.family, guard).to_json()


def cmd_spectrum(ws: Workspace, args) -> tuple[int, dict]:
    return OK, _spectrum_report(ws)


def _along(ws: Workspace, text: str):
    kind, _, arg = (text or "").partition(":")
    try:
        if kind == "le":
            return truncate(ws.family, le=int(arg))[1]
        if kind == "gt":
            return truncate(ws.family, gt=int(arg))[1]
        if kind == "classes":
            cls = [c for c in arg.split(",") if c]
            missing = [c for c in cls if c not in ws.family.classes]
            if missing:
                raise InputError(f"--along names unknown classes {missing}")
            return truncate(ws.family, classes=cls)[1]
    except ValueError as e:
        raise InputError(f"--along {text!r}: {e}") from None
    raise InputError("kan needs --along le:N, gt:N or classes:A,B")


def cmd_kan(ws: Workspace, args) -> tuple[int, dict]:
    inc = _along(ws, args.along)
    if not args.object:
        raise InputError("kan needs --object (an object over the subfamily)")
    out, payload, code = {}, {}, OK
    for ref in args.object:
        X = resolve_object(ws, ref, family=inc.sub)
        L, R = left_kan(inc, X), right_kan(inc, X)
        adj = adjunction_check(inc, X, unit(inc.ambient))
        out[ref] = {"object_dims": _dims(X), "left_kan_dims": _dims(L), "right_kan_dims": _dims(R),
                    "adjunction_ok": adj.ok}
        payload[ref] = {"left_kan": rep_to_json(L), "right_kan": rep_to_json(R)}
        if not adj.ok:
            code = FAILED
    return code, {"ambient": ws.family.spec, "subfamily": list(inc.sub.classes),
                  "up_closed": inc.is_up_closed, "down_closed": inc.is_down_closed,
                  "objects": out}, payload


def cmd_check(ws: Workspace | None, args) -> tuple[int, dict]:
    suites = [fn for _, fn in checks.ACCEPTANCE] + checks.EXTRA
    if args.suite:
        names = {fn.__name__.removeprefix("check_"): fn for fn in suites}
        unknown = [s for s in args.suite if s not in names]
        if unknown:
            raise InputError(f"unknown suites {unknown}; choose from {sorted(names)}")
        suites = [names[s] for s in args.suite]
    results = []
    for fn in suites:
        results += fn()
    passed = sum(r.passed for r in results)
    report = {"results": [r.to_json() for r in results], "passed": passed,
              "failed": len(results) - passed}
    if (args.format or "text") == "text":
        for r in results:
            print(r.line())
        print(f"{passed} passed, {len(results) - passed} failed")
        return (OK if passed == len(results) else FAILED), None
    return (OK if passed == len(results) else FAILED), report


def cmd_report(ws: Workspace, args) -> tuple[int, dict]:
    report = {"spectrum": _spectrum_report(ws)}
    ok = True
    if ws.n_kind:
        kind, p = ws.n_kind
        top = args.truncation if args.truncation is not None else 16
        sp = spc_n_stable(kind, p)
        sets = representable_point_sets(top, 2)
        agree = sum(sp.is_closed(T) == reference_is_closed(T) for T in sets)
        ideals = described_ideals(min(top, 10), 3)
        primes = sorted({decide_prime(I).name for I in ideals if decide_prime(I).prime})
        replay_ok = True
        for I in ideals:
            if decide_prime(I).prime:
                try:
                    replay_uniqueness(I)
                except AssertionError:
                    replay_ok = False
        pinf = verify_p_infinity(basic_catalog(3), kind, p)
        report["closed_set_classification"] = {"sets_checked": len(sets), "agreeing_with_reference": agree}
        report["homeomorphism_checks"] = {"prime_replay_ok": replay_ok, "distinct_primes_seen": primes,
                                          "p_infinity_prime": pinf.ok}
        report["certificates"] = {k: v for k, v in sorted(pinf.certificates.items())}
        ok = agree == len(sets) and replay_ok and pinf.ok
    else:
        fam = ws.family
        L = enumerate_serre_ideals(fam, ws.budget or 20)
        closed = {}
        for G in fam.classes:
            closed["{" + G + "}"] = sorted(zariski_closed_finite(fam, [chi(fam, G)]))
        quot = {G: quotient_by_group_prime(fam, G) for G in fam.classes}
        report["closed_set_classification"] = {"ideals": len(L.ideals), "every_subset_closed": True,
                                               "point_witnesses": closed}
        report["homeomorphism_checks"] = {"lattice_round_trip": L.round_trip_ok(),
                                          "group_primes": [str(I) for I in L.primes()]}
        report["certificates"] = {G: {"e_G_regular_at_G": q.e_evaluates_to_regular, "maximal": q.maximal,
                                      "evaluation_kills_prime": q.kills_prime, "ok": q.ok}
                                  for G, q in quot.items()}
        ok = L.round_trip_ok() and all(q.ok for q in quot.values())
    report["ok"] = ok
    return (OK if ok else FAILED), report


COMMANDS = {"validate": cmd_validate, "support": cmd_support, "member": cmd_member,
            "decompose": cmd_decompose, "spectrum": cmd_spectrum, "kan": cmd_kan,
            "check": cmd_check, "report": cmd_report}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="globrep", description="Global representations over finite group families.")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--family", help="builtin shorthand, inline JSON or a JSON file")
    p.add_argument("--config", help="workspace JSON file with family, objects, format and budget")
    p.add_argument("--object", action="append", help="object reference (repeatable)")
    p.add_argument("--ideal", action="append", help="ideal generator reference (repeatable)")
    p.add_argument("--truncation", type=int, help="truncation level for N-indexed families")
    p.add_argument("--format", choices=("text", "json"))
    p.add_argument("--budget", type=int, help="search budget for oracles and enumeration guard")
    p.add_argument("--out", help="write certificates or Kan extensions here as JSON")
    p.add_argument("--along", help="subfamily for kan: le:N, gt:N or classes:A,B")
    p.add_argument("--method", choices=("chi", "gamma"), default="chi", help="filtration used by decompose")
    p.add_argument("--oracle", action="store_true", help="cross-check member with the closure search")
    p.add_argument("--suite", action="append", help="restrict check to the named suites")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    fmt = args.format or "text"
    try:
        if args.command == "check":
            code, report = cmd_check(None, args)
            if report is not None:
                emit(fmt, report)
            return code
        ws = load_workspace(args)
        fmt = ws.fmt
        res = COMMANDS[args.command](ws, args)
        code, report = res[0], res[1]
        payload = res[2] if len(res) > 2 else None
        emit(fmt, report, args.out, payload)
        return code
    except InputError as e:
        print(f"input error: {e}", file=sys.stderr)
        return BAD_INPUT
    except FamilyError as e:
        emit(fmt, {"ok": False, "family_violations": str(e).split("; ")})
        return FAILED
    except RepError as e:
        emit(fmt, {"ok": False, "error": str(e)})
        return FAILED
    except OutOfBudget as e:
        emit(fmt, e.report)
        return BUDGET
    except BudgetExceeded:
        emit(fmt, {"partial": True, "error": "budget exhausted"})
        return BUDGET


if __name__ == "__main__":
    sys.exit(main())
