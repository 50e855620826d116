"""Command-line driver: every command prints one deterministic JSON document.

Exit codes: 0 success, 1 mathematical failure, 2 usage or schema error.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import List, Optional, Tuple

from .algebra import (check_jordan, check_lie, find_unit, make_jgl, make_jpe, make_jq,
                      make_rank1)
from .errors import JordanAxiomFailure, NotUnital, SingularGram, TKKError
from .fock import (IntertwinerC, find_v_lambda, gram, intertwining_operator_check,
                   intertwining_truncated_check, quotient_dims, reproducing_kernel, sb_roundtrip,
                   segal_bargmann, sesquilinear_superhermitian_report)
from .io import dump_json, load_algebra, algebra_to_document
from .realisation import (BesselFamily, bessel_supercommute_check, character_space,
                          combine_characters, pi_lambda, rho_lambda, verify_homomorphism,
                          zero_character)
from .superpoly import DEFAULT_TRUNCATION
from .tkk import (VARIANTS, cayley, check_grading, tkk_construct, tkk_to_document,
                  verify_phi_periplectic, verify_phi_queer)

TRUNCATION_ENV = "TKKREP_TRUNCATION"


class UsageError(Exception):
    pass


def default_truncation() -> int:
    raw = os.environ.get(TRUNCATION_ENV)
    if not raw:
        return DEFAULT_TRUNCATION
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{TRUNCATION_ENV} must be an integer, got {raw!r}") from None


# ------------------------------------------------------------ session
def load_jordan(args):
    sel = args.algebra
    if sel == "rank1":
        return make_rank1()
    if sel == "jgl":
        return make_jgl(args.m, args.n)
    if sel in ("jpe", "jq"):
        if args.rank is None:
            raise UsageError(f"--rank is required for {sel}")
        return (make_jpe if sel == "jpe" else make_jq)(args.rank)
    return load_algebra(sel)


class Session:
    """Lazily built algebra, TKK algebra and character for one invocation."""

    def __init__(self, args):
        self.args = args
        self.J = load_jordan(args)
        self._g = None
        self._lam = None

    @property
    def g(self):
        if self._g is None:
            self._g = tkk_construct(self.J, self.args.variant)
        return self._g

    @property
    def lam(self):
        if self._lam is None:
            raw = self.args.lam
            if raw is None:
                self._lam = zero_character(self.g.g0)
            else:
                basis = character_space(self.g.g0)
                vals = [v for v in raw.split(",") if v.strip()]
                if len(vals) != len(basis):
                    raise UsageError(f"--lambda needs {len(basis)} value(s) for this character "
                                     f"space, got {len(vals)}")
                self._lam = combine_characters(basis, vals)
        return self._lam

    def header(self) -> dict:
        return {"algebra": self.J.name, "variant": self.args.variant}


# ------------------------------------------------------------ commands
def cmd_algebra_check(s: Session) -> Tuple[int, dict]:
    J = s.J
    ce = check_lie(J) if J.flavour == "lie" else check_jordan(J)
    m, n = J.dim
    doc = {"algebra": J.name, "flavour": J.flavour, "dim": [m, n], "passed": ce is None,
           "counterexample": ce.as_dict() if ce else None}
    return (0 if ce is None else 1), doc


def cmd_algebra_export(s: Session):
    return 0, algebra_to_document(s.J)


def cmd_tkk_build(s: Session):
    g = s.g
    ce = check_lie(g.lie)
    bad = check_grading(g)
    doc = tkk_to_document(g)
    doc["dim"] = list(g.lie.dim)
    doc["notes"] = list(g.notes)
    doc["lie_check"] = ce.as_dict() if ce else "pass"
    doc["grading_check"] = [g.labels[bad[0]], g.labels[bad[1]]] if bad else "pass"
    return (0 if ce is None and bad is None else 1), doc


def cmd_tkk_verify_phi(s: Session):
    a = s.args
    if a.algebra not in ("jpe", "jq"):
        raise UsageError("verify-phi needs --algebra jpe or jq")
    fn = verify_phi_periplectic if a.algebra == "jpe" else verify_phi_queer
    r = fn(a.rank, a.variant)
    return (0 if r.passed else 1), dict(s.header(), **r.as_dict())


def cmd_characters(s: Session):
    basis = character_space(s.g.g0)
    doc = dict(s.header(), dimension=len(basis), basis=[c.as_dict() for c in basis])
    return 0, doc


def cmd_bessel_show(s: Session):
    a = s.args
    fam = BesselFamily(s.J, s.lam)
    text = fam.render()
    doc = dict(s.header(), operators={lab: str(fam(lab)) for lab in s.J.labels})
    if a.golden:
        path = Path(a.golden)
        if a.bless:
            path.write_text(text)
            doc["golden"] = "blessed"
        else:
            if not path.exists():
                raise UsageError(f"golden file {path} does not exist (use --bless)")
            expected = path.read_text()
            same = expected == text
            doc["golden"] = "match" if same else "mismatch"
            if not same:
                exp = dict(l.split(" = ", 1) for l in expected.splitlines() if " = " in l)
                got = dict(l.split(" = ", 1) for l in text.splitlines() if " = " in l)
                doc["differences"] = sorted(k for k in set(exp) | set(got)
                                            if exp.get(k) != got.get(k))
                return 1, doc
    return 0, doc


def cmd_bessel_commute(s: Session):
    r = bessel_supercommute_check(s.J, s.lam, s.args.degree)
    return (0 if r.passed else 1), dict(s.header(), degree=s.args.degree, **r.as_dict())


def cmd_realisation_verify(s: Session):
    pi = pi_lambda(s.g, s.lam)
    r = pi if s.args.flavour == "schrodinger" else rho_lambda(s.g, s.lam, cayley(s.g), pi)
    res = verify_homomorphism(r, s.args.degree)
    doc = dict(s.header(), flavour=r.flavour, degree=s.args.degree, **res.as_dict())
    return (0 if res.passed else 1), doc


def cmd_gram(s: Session):
    G = gram(s.J, s.lam, s.args.degree)
    doc = dict(s.header(), **G.as_dict())
    if s.args.report:
        doc["report"] = sesquilinear_superhermitian_report(s.J, s.lam, s.args.degree)
    return 0, doc


def cmd_radical(s: Session):
    G = gram(s.J, s.lam, s.args.degree)
    return 0, dict(s.header(), degree=G.degree, dim=G.size, radical_dim=G.radical_dim,
                   radical=[str(p) for p in G.radical_polys()])


def cmd_vlambda(s: Session):
    V = find_v_lambda(s.J, s.lam, s.args.degree)
    return 0, dict(s.header(), **V.as_dict())


def cmd_quotient_dims(s: Session):
    V = find_v_lambda(s.J, s.lam, s.args.degree)
    q = quotient_dims(s.J, s.lam, V, s.args.k_max)
    return 0, dict(s.header(), v_degree=V.degree, v_dim=V.dim, **q.as_dict())


def cmd_kernel(s: Session):
    try:
        ks = reproducing_kernel(s.J, s.lam, s.args.degree)
    except SingularGram as exc:
        return 1, dict(s.header(), degree=s.args.degree, error="SingularGram", message=str(exc),
                       radical=[str(p) for p in exc.radical or []])
    return (0 if ks.valid else 1), dict(s.header(), **ks.as_dict())


def _check_N(s: Session, degree: int) -> int:
    N = s.args.N if s.args.N is not None else default_truncation()
    if N < degree + 2:
        raise UsageError(f"N must be at least degree + 2 = {degree + 2}")
    return N


def cmd_intertwine_check(s: Session):
    a = s.args
    N = a.N if a.N is not None else default_truncation()
    d = a.degree if a.degree is not None else N - 2
    _check_N(s, d)
    pi = pi_lambda(s.g, s.lam)
    rho = rho_lambda(s.g, s.lam, cayley(s.g), pi)
    C = IntertwinerC(pi.bessel, find_unit(s.J), N)
    op = intertwining_operator_check(pi, rho, C)
    tr = intertwining_truncated_check(pi, rho, C, d)
    ok = op["passed"] and tr["passed"]
    return (0 if ok else 1), dict(s.header(), N=N, operator_level=op, truncated=tr)


def cmd_sb_roundtrip(s: Session):
    d = s.args.degree
    N = _check_N(s, d)
    try:
        r = sb_roundtrip(s.lam, N, d, segal_bargmann(s.lam, N, s.J))
    except SingularGram as exc:
        return 1, dict(s.header(), error="SingularGram", message=str(exc))
    return (0 if r["max_abs_defect"] == "0" else 1), dict(s.header(), **r)


COMMANDS = {
    ("algebra", "check"): cmd_algebra_check,
    ("algebra", "export"): cmd_algebra_export,
    ("tkk", "build"): cmd_tkk_build,
    ("tkk", "verify-phi"): cmd_tkk_verify_phi,
    ("characters",): cmd_characters,
    ("bessel", "show"): cmd_bessel_show,
    ("bessel", "commute"): cmd_bessel_commute,
    ("realisation", "verify"): cmd_realisation_verify,
    ("gram",): cmd_gram,
    ("radical",): cmd_radical,
    ("vlambda",): cmd_vlambda,
    ("quotient-dims",): cmd_quotient_dims,
    ("kernel",): cmd_kernel,
    ("intertwine-check",): cmd_intertwine_check,
    ("sb", "roundtrip"): cmd_sb_roundtrip,
}

# per-command default for --degree
_DEGREE_DEFAULTS = {"bessel": 4, "realisation": 3, "gram": 1, "radical": 1, "vlambda": 2,
                    "quotient-dims": 1, "kernel": 1, "sb": 2}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tkkrep", description=__doc__.splitlines()[0])
    p.add_argument("command", nargs="+", help="command words, e.g. 'tkk build' or 'gram'")
    p.add_argument("--algebra", default="rank1",
                   help="builtin jgl|jpe|jq|rank1 or a path to a structure-constant JSON file")
    p.add_argument("--rank", type=int, help="n for jpe/jq")
    p.add_argument("--m", type=int, default=1, help="even size for jgl")
    p.add_argument("--n", type=int, default=1, help="odd size for jgl")
    p.add_argument("--variant", choices=VARIANTS, default="str")
    p.add_argument("--lambda", dest="lam",
                   help="comma-separated coefficients on the character-space basis "
                        "(names become real parameters); default is the zero character")
    p.add_argument("--N", type=int, help=f"truncation degree (default ${TRUNCATION_ENV} or "
                                          f"{DEFAULT_TRUNCATION})")
    p.add_argument("--degree", type=int, help="degree bound for the command")
    p.add_argument("--k-max", dest="k_max", type=int, default=4)
    p.add_argument("--flavour", choices=("schrodinger", "fock"), default="schrodinger")
    p.add_argument("--report", action="store_true", help="gram: add the superhermitian report")
    p.add_argument("--golden", help="bessel show: compare against this file")
    p.add_argument("--bless", action="store_true", help="bessel show: rewrite the golden file")
    p.add_argument("--output", help="write JSON here instead of stdout")
    return p


def _execute(argv) -> Tuple[int, dict, Optional[str]]:
    output = None
    try:
        args = build_parser().parse_args(argv)
        output = args.output
        key = tuple(args.command)
        fn = COMMANDS.get(key)
        if fn is None:
            known = ", ".join(" ".join(k) for k in COMMANDS)
            raise UsageError(f"unknown command {' '.join(key)!r}; known: {known}")
        if args.degree is None and key[0] in _DEGREE_DEFAULTS:
            args.degree = _DEGREE_DEFAULTS[key[0]]
        code, doc = fn(Session(args))
    except UsageError as exc:
        code, doc = 2, {"error": "usage", "message": str(exc)}
    except (JordanAxiomFailure, NotUnital) as exc:
        code, doc = 1, {"error": type(exc).__name__, "message": str(exc)}
    except (TKKError, ValueError) as exc:
        code, doc = 2, {"error": type(exc).__name__, "message": str(exc)}
    return code, doc, output


def run(argv: Optional[List[str]] = None) -> Tuple[int, dict]:
    """Parse and execute; returns (exit code, JSON-ready document)."""
    code, doc, _ = _execute(argv)
    return code, doc


def main(argv: Optional[List[str]] = None) -> int:
    code, doc, output = _execute(argv)
    text = dump_json(doc)
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
