"""Command line driver: read a problem file, run one command, print a table.

Problem files are JSON:

    {"field": {"p": 7, "k": 1},
     "N": {"moduli": [3]},
     "H": {"perm_gens": [[1, 0]]},
     "action": [[[-1]]],
     "reps": {"chi2": {"subgroup": ["n0"], "images": [[[2]]]},
              "sign": {"images": {"n0": [[1]], "h0": [[6]]}}}}

Generators of G are named n0, n1, ... (standard basis of N) then h0, h1,
... (the H permutations).  A representation of G gives images keyed by
those names; a representation of a subgroup lists the subgroup's
generators as words ("n0*h0", "n0^2", "1") and one image per word.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .errors import CertificationError, HypothesisError, RepGFError, ValidationError
from .fields import FieldSpec, make_field
from .groups import AbelianGroupSpec, FiniteGroup, SemidirectGroup, group_from_permutations, semidirect, subgroup
from .littlegroups import NO_FACTOR, classify, completeness_check, field_compat, match_irreducible
from .mackey import mackey_sufficient, monomial_criterion, endomorphism_equality_check, word_string
from .meataxe import is_irreducible, projective_point_count, spin_oracle
from .representations import Representation, induce, intertwining_number, require_semisimple, restrict
from .verify import InstanceChecker

__all__ = ["ProblemSpec", "parse_problem", "parse_word", "run_command", "emit_report", "parse_report", "main"]

COMMANDS = ("classify", "verify", "irr", "intertwine", "induce", "mackey", "match")

EXIT_CODES = {ValidationError: 2, HypothesisError: 3, CertificationError: 4}


@dataclass
class ProblemSpec:
    field: FieldSpec
    group: SemidirectGroup
    reps: dict = field(default_factory=dict)


def _at(where: str, exc: Exception) -> ValidationError:
    return ValidationError(f"{where}: {exc}")


def parse_word(G: FiniteGroup, text: str) -> int:
    """Evaluate a word like "n0*h0^2*n1^-1" in G's generator names."""
    names = {n: g for n, g in zip(G.gen_names, G.gens)}
    x = 0
    text = text.strip()
    if text in ("", "1", "e"):
        return 0
    for tok in text.split("*"):
        m = re.fullmatch(r"\s*([A-Za-z_]\w*)\s*(?:\^\s*(-?\d+))?\s*", tok)
        if not m or m.group(1) not in names:
            raise ValidationError(f"cannot parse word {text!r} (unknown factor {tok.strip()!r})")
        g = names[m.group(1)]
        e = int(m.group(2) or 1)
        if e < 0:
            g, e = G.inverse(g), -e
        for _ in range(e):
            x = G.mul(x, g)
    return x


def _matrix(F: FieldSpec, data, where: str) -> np.ndarray:
    try:
        rows = [[F.decode(v) for v in row] for row in data]
    except (TypeError, ValueError) as exc:
        raise _at(where, exc) from None
    if not rows or any(len(r) != len(rows) for r in rows):
        raise ValidationError(f"{where}: matrix must be square and nonempty")
    return np.array(rows, dtype=np.int64)


def _parse_rep(G: SemidirectGroup, F: FieldSpec, name: str, spec) -> Representation:
    where = f"reps.{name}"
    if not isinstance(spec, dict) or "images" not in spec:
        raise ValidationError(f"{where}: expected an object with an 'images' key")
    if "subgroup" in spec:
        words = spec["subgroup"]
        gens = [parse_word(G, w) for w in words]
        S = subgroup(G, gens, names=[str(w) for w in words])
        imgs = spec["images"]
        if isinstance(imgs, dict):
            imgs = [imgs[str(w)] for w in words]
    else:
        S = G
        imgs = spec["images"]
        if isinstance(imgs, dict):
            missing = [n for n in G.gen_names if n not in imgs]
            if missing:
                raise ValidationError(f"{where}: no image for generator(s) {missing}")
            imgs = [imgs[n] for n in G.gen_names]
    if len(imgs) != len(S.gens):
        raise ValidationError(f"{where}: {len(S.gens)} generators but {len(imgs)} images")
    mats = [_matrix(F, a, f"{where}.images[{i}]") for i, a in enumerate(imgs)]
    dim = spec.get("dim", mats[0].shape[0] if mats else 1)
    try:
        return Representation(S, F, mats, dim=dim, check=True)
    except ValidationError as exc:
        raise _at(where, exc) from None


def parse_problem(text: str) -> ProblemSpec:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"problem file is not valid JSON: {exc}") from None
    for key in ("field", "N", "H", "action"):
        if key not in data:
            raise ValidationError(f"problem file is missing the {key!r} key")
    fd = data["field"]
    try:
        F = make_field(int(fd["p"]), int(fd.get("k", 1)), fd.get("min_poly"))
    except (KeyError, TypeError) as exc:
        raise _at("field", exc) from None
    except ValidationError as exc:
        raise _at("field", exc) from None
    try:
        N = AbelianGroupSpec(tuple(data["N"]["moduli"]))
    except (KeyError, TypeError) as exc:
        raise _at("N", exc) from None
    except ValidationError as exc:
        raise _at("N", exc) from None
    try:
        H = group_from_permutations(data["H"].get("perm_gens", []))
    except ValidationError as exc:
        raise _at("H", exc) from None
    try:
        G = semidirect(N, H, data["action"])
    except ValidationError as exc:
        raise _at("action", exc) from None
    require_semisimple(G, F)
    reps = {name: _parse_rep(G, F, name, spec) for name, spec in sorted(data.get("reps", {}).items())}
    return ProblemSpec(F, G, reps)


# -- commands --------------------------------------------------------------------


def _get_rep(spec: ProblemSpec, name: str | None, flag: str) -> Representation:
    if name is None:
        raise ValidationError(f"this command needs {flag} <name>")
    if name not in spec.reps:
        raise ValidationError(f"unknown representation {name!r} (known: {sorted(spec.reps)})")
    return spec.reps[name]


def _maybe_restrict(spec: ProblemSpec, V: Representation, words):
    if not words:
        return V
    G = spec.group
    gens = [parse_word(G, w) for w in words]
    S = subgroup(G, gens, names=list(words))
    return restrict(V, S)


def _irr_verdict(V: Representation, seed: int, oracle: bool) -> dict:
    res = is_irreducible(V, seed=seed)
    out = {"irreducible": res.irreducible, "method": res.method}
    if res.witness is not None:
        out["witness"] = [[V.field.encode(x) for x in row] for row in res.witness]
    if oracle:
        if projective_point_count(V.field.q, V.dim) > 2**20:
            raise ValidationError("module too large for the exhaustive oracle")
        orc = spin_oracle(V, limit=None).irreducible
        out["oracle_irreducible"] = orc
        if orc != res.irreducible:
            raise CertificationError("exhaustive oracle disagrees with the irreducibility test")
    return out


def _group_of(V: Representation) -> dict:
    G = V.group
    return {"order": G.order, "gens": [word_string(G.root, g) for g in G.gens]}


def run_command(cmd: str, spec: ProblemSpec, seed: int = 0, rep: str | None = None, rep2: str | None = None,
                subgroup_words=None, oracle: bool = False) -> dict:
    G, F = spec.group, spec.field
    out = {"command": cmd, "seed": seed, "version": __version__, "group_order": G.order, "field": F.describe()}
    if cmd == "classify":
        entries = classify(G, F, seed=seed, oracle=oracle)
        total, complete = completeness_check(entries, G)
        out.update(
            entries=[e.as_dict() for e in entries],
            sum=total,
            complete=complete,
            field_compat=field_compat(G.N, F),
        )
    elif cmd == "verify":
        checker = InstanceChecker(G, F, seed=seed)
        checker.run()
        out["properties"] = checker.report()
        out["ok"] = all(not t.failures for t in checker.tally.values())
    elif cmd == "irr":
        V = _maybe_restrict(spec, _get_rep(spec, rep, "--rep"), subgroup_words)
        out.update(rep=rep, dim=V.dim, group=_group_of(V), **_irr_verdict(V, seed, oracle))
    elif cmd == "intertwine":
        V = _maybe_restrict(spec, _get_rep(spec, rep, "--rep"), subgroup_words)
        W = _maybe_restrict(spec, _get_rep(spec, rep2, "--rep2"), subgroup_words)
        if V.group != W.group:
            raise ValidationError("the two representations live on different groups (use --subgroup to restrict)")
        out.update(rep=rep, rep2=rep2, i=intertwining_number(V, W), group=_group_of(V))
    elif cmd == "induce":
        L = _maybe_restrict(spec, _get_rep(spec, rep, "--rep"), subgroup_words)
        LG = induce(L, G)
        out.update(rep=rep, source=_group_of(L), dim=LG.dim, images=LG.images_dict(),
                   **{"induced_" + k: v for k, v in _irr_verdict(LG, seed, oracle).items()})
    elif cmd == "mackey":
        L = _maybe_restrict(spec, _get_rep(spec, rep, "--rep"), subgroup_words)
        report = mackey_sufficient(L, G, seed=seed)
        out.update(rep=rep, source=_group_of(L), **report.as_dict())
        out["i_total"] = report.total
        out["endomorphism_equality"] = endomorphism_equality_check(L, G, seed=seed)
        if L.dim == 1:
            out["monomial_criterion"] = monomial_criterion(L, G)
        if oracle:
            out["oracle_irreducible"] = spin_oracle(induce(L, G), limit=None).irreducible
    elif cmd == "match":
        V = _get_rep(spec, rep, "--rep")
        entries = classify(G, F, seed=seed)
        m = match_irreducible(V, entries, G, seed=seed)
        out.update(rep=rep, match=None if m == NO_FACTOR else m.as_dict(), verdict=m if m == NO_FACTOR else "matched")
    else:
        raise ValidationError(f"unknown command {cmd!r}")
    return out


# -- reports ---------------------------------------------------------------------


def emit_report(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def parse_report(text: str) -> dict:
    return json.loads(text)


def _table(rows, headers) -> str:
    cells = [[str(h) for h in headers]] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def render_human(report: dict) -> str:
    cmd = report["command"]
    fd = report["field"]
    head = f"{cmd}: |G| = {report['group_order']}, GF({fd['p'] ** fd['k']})"
    if cmd == "classify":
        rows = [(e["j"], e["chi"], e["rho_dim"], e["theta_dim"], e["endo_dim"], e["irreducible"]) for e in report["entries"]]
        body = _table(rows, ("j", "chi", "dim rho", "dim theta", "i(theta,theta)", "irreducible"))
        tail = f"sum = {report['sum']}  complete = {report['complete']}  field_compat = {report['field_compat']}"
        return "\n".join([head, body, tail])
    if cmd == "verify":
        rows = [(p, t["checked"], t["skipped"], len(t["failures"])) for p, t in report["properties"].items()]
        lines = [head, _table(rows, ("property", "checked", "skipped", "failures"))]
        for p, t in report["properties"].items():
            lines += [f"FAIL {p}: {f}" for f in t["failures"]]
        lines.append("all checks passed" if report["ok"] else "FAILURES")
        return "\n".join(lines)
    if cmd == "mackey":
        rows = [(r["rep_word"], r["hx_order"], r["i_value"]) for r in report["double_cosets"]]
        lines = [head, _table(rows, ("x", "|H^(x)|", "i"))]
        lines.append(f"total = {report['total']}  i(L,L) = {report['i_LL']}  i(L^G,L^G) = {report['i_induced']}")
        lines.append(f"condition holds = {report['condition_holds']}  verdict: {report['verdict']}")
        lines.append(f"direct irreducibility of L^G = {report['direct_irreducible']}")
        return "\n".join(lines)
    skip = {"command", "seed", "version", "group_order", "field", "images", "witness"}
    lines = [head] + [f"{k} = {report[k]}" for k in sorted(report) if k not in skip]
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="repgf", description="Representations of N x| H over GF(q).")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("problem", help="problem file (JSON)")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--report", help="write the machine report (JSON) here")
    ap.add_argument("--oracle", action="store_true", help="cross-check with the exhaustive spin oracle")
    ap.add_argument("--rep")
    ap.add_argument("--rep2")
    ap.add_argument("--subgroup", nargs="+", metavar="WORD", help="restrict the named representations to this subgroup")
    ap.add_argument("--version", action="version", version=__version__)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with open(args.problem) as fh:
            spec = parse_problem(fh.read())
        report = run_command(args.command, spec, seed=args.seed, rep=args.rep, rep2=args.rep2,
                             subgroup_words=args.subgroup, oracle=args.oracle)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RepGFError as exc:
        code = next((c for t, c in EXIT_CODES.items() if isinstance(exc, t)), 1)
        print(f"error: {exc}", file=sys.stderr)
        return code
    print(render_human(report))
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(emit_report(report))
    if args.command == "verify" and not report["ok"]:
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
