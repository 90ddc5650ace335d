"""Command-line front end.

Every subcommand builds a JSON-ready payload with a top-level ``schema``
field.  Output goes to stdout or, with ``--output``, to a file written
atomically.  Exit codes: 0 success, 2 a verification reported a failure,
1 a usage or configuration error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from dataclasses import dataclass, field
from fractions import Fraction

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY = 2


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# configuration

def _int_list(text):
    text = str(text).strip()
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"expected a comma-separated list of integers, got {text!r}") from None


def _frac_list(text):
    try:
        return [Fraction(x) for x in str(text).split(",") if x.strip()]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"expected a comma-separated list of rationals, got {text!r}") from None


@dataclass
class SessionConfig:
    genus: int = 0
    mode: str = "symbolic"
    v: str | None = None
    alphas: list = field(default_factory=list)
    q: int = 2
    window: int = 4
    order: int = 3
    seed: int = 0
    format: str = "json"

    def validate(self):
        if self.genus < 0:
            raise UsageError("genus must be non-negative")
        if self.mode not in ("symbolic", "numeric"):
            raise UsageError("mode is 'symbolic' or 'numeric'")
        if self.mode == "numeric" and self.v is not None and len(self.alphas) != self.genus:
            raise UsageError("numeric mode needs one Weil number per genus unit")
        if self.window < 0 or self.order < 0:
            raise UsageError("window and order must be non-negative")
        if self.format not in ("json", "csv", "text"):
            raise UsageError("format is json, csv or text")
        return self

    def curve(self):
        from .curvezeta import CurveData
        if self.mode == "symbolic":
            return CurveData.symbolic(self.genus)
        if self.v is None:
            return CurveData.random_numeric(self.genus, self.seed)
        try:
            return CurveData.numeric(Fraction(self.v), [Fraction(a) for a in self.alphas])
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"invalid numeric curve: {exc}") from None

    def to_json(self):
        return {"genus": self.genus, "mode": self.mode, "v": self.v,
                "alphas": list(self.alphas), "q": self.q, "window": self.window,
                "order": self.order, "seed": self.seed}


SESSION_KEYS = {"genus": int, "mode": str, "v": str, "alphas": lambda s: s.split(","),
                "q": int, "window": int, "order": int, "seed": int, "format": str}


def read_config(path):
    """``key = value`` lines; ``#`` starts a comment."""
    out = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc.strerror}") from None
    for n, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{n}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in SESSION_KEYS:
            raise UsageError(f"{path}:{n}: unknown key {key!r}")
        try:
            out[key] = SESSION_KEYS[key](value)
        except ValueError:
            raise UsageError(f"{path}:{n}: bad value for {key}") from None
    return out


def session_from_args(args) -> SessionConfig:
    values = read_config(args.config) if args.config else {}
    for key in SESSION_KEYS:
        given = getattr(args, key, None)
        if given is not None:
            values[key] = given.split(",") if key == "alphas" else given
    if "alphas" in values:
        values["alphas"] = [a.strip() for a in values["alphas"] if a.strip()]
    if values.get("v") is not None:
        values.setdefault("mode", "numeric")
    return SessionConfig(**values).validate()


# ---------------------------------------------------------------------------
# subcommands; each returns (payload, rows, verified)

def _poly_coeffs(P):
    """Coefficient texts of a one-variable polynomial, lowest degree first."""
    terms = dict((z[0], c.to_text()) for z, c in P.terms())
    if not terms:
        return []
    lo, hi = min(terms), max(terms)
    return [terms.get(k, "0") for k in range(lo, hi + 1)]


def cmd_zeta(args, cfg):
    from .curvezeta import zeta
    C = cfg.curve()
    num, den = zeta(C).fraction()
    payload = {"curve": C.to_json(), "numerator": _poly_coeffs(num),
               "denominator": _poly_coeffs(den), "variable": "t"}
    rows = [{"part": part, "degree": k, "coefficient": c}
            for part in ("numerator", "denominator") for k, c in enumerate(payload[part])]
    return payload, rows, True


def _kernel(name, C, g):
    from . import curvezeta as cz
    table = {"gx": lambda: cz.kernel_gx(C), "gx-twisted": lambda: cz.kernel_gx_twisted(C),
             "zetatilde": lambda: cz.kernel_zetatilde(C), "k": lambda: cz.kernel_k(g),
             "hx": lambda: cz.kernel_hx(C)}
    if name not in table:
        raise UsageError(f"unknown kernel {name!r}")
    return table[name]()


def cmd_psi(args, cfg):
    from .exactalg import LaurentPoly
    from .shufflecore import RankError, psi, psi_direct
    C = cfg.curve()
    K = _kernel(args.kernel, C, cfg.genus)
    lam = _int_list(args.exponents)
    if not lam:
        raise UsageError("--exponents must be non-empty")
    P = LaurentPoly.monomial(K.ring, lam)
    try:
        out = psi(K, P).payload if args.route == "division" else psi_direct(K, P)
    except RankError as exc:
        raise UsageError(str(exc)) from None
    return {"kernel": args.kernel, "route": args.route, "exponents": lam,
            "curve": C.to_json(), "payload": out.to_json()}, None, True


def _generator_product(cfg, degrees, route, twisted):
    from .shufflecore import RankError, generator, product, twisted_mul
    from .curvezeta import kernel_gx
    C = cfg.curve()
    degs = _int_list(degrees)
    if not degs:
        raise UsageError("--degrees must be non-empty")
    gens = [generator(C.ring, d) for d in degs]
    try:
        if twisted:
            out = gens[0]
            for gen in gens[1:]:
                out = twisted_mul(C, out, gen, route)
        else:
            out = product(kernel_gx(C), gens, route)
    except RankError as exc:
        raise UsageError(str(exc)) from None
    return C, degs, out


def cmd_mul(args, cfg):
    C, degs, out = _generator_product(cfg, args.degrees, args.route, False)
    return {"degrees": degs, "route": args.route, "curve": C.to_json(),
            "payload": out.payload.to_json()}, None, True


def cmd_tmul(args, cfg):
    C, degs, out = _generator_product(cfg, args.degrees, args.route, True)
    return {"degrees": degs, "route": args.route, "curve": C.to_json(),
            "payload": out.payload.to_json()}, None, True


def cmd_wheel(args, cfg):
    from .exactalg import LaurentPoly
    from .shufflecore import ShuffleElement, wheel_check
    if cfg.genus < 1:
        raise UsageError("wheel conditions need genus >= 1")
    if args.constant:
        C = cfg.curve()
        r = args.rank
        A = ShuffleElement(r, LaurentPoly.one(C.ring, r))
        degs = None
    else:
        C, degs, A = _generator_product(cfg, args.degrees, "auto", False)
    if A.rank < 3:
        raise UsageError("the wheel locus needs rank >= 3")
    rows = [{"alpha": a.to_text(), "vanishes": wheel_check(A, C, a)} for a in C.weil_numbers()]
    vanishes = all(r["vanishes"] for r in rows)
    # generator products must vanish on every component, the constant must not
    ok = vanishes != args.constant
    return {"degrees": degs, "constant": args.constant, "rank": A.rank,
            "curve": C.to_json(), "components": rows, "vanishes": vanishes}, rows, ok


def cmd_bdet(args, cfg):
    from .shufflecore import RankError, b_matrix_det
    try:
        s, e = b_matrix_det(args.rank)
    except RankError as exc:
        raise UsageError(str(exc)) from None
    text = ("-" if s < 0 else "") + f"Δ^{{{e}}}"
    payload = {"rank": args.rank, "sign": s, "exponent": e, "determinant": text}
    return payload, [payload], True


def cmd_hn(args, cfg):
    from .hallside import hn_types
    lo, hi = _frac_list(args.slopes) if args.slopes else (Fraction(-cfg.window), Fraction(cfg.window))
    types = hn_types(args.rank, args.degree, (lo, hi))
    rows = [{"parts": json.dumps(t.to_json()), "slopes": ",".join(str(s) for s in t.slopes)}
            for t in types]
    return {"rank": args.rank, "degree": args.degree, "slope_window": [str(lo), str(hi)],
            "types": [t.to_json() for t in types]}, rows, True


def _table_rows(table):
    return [{"exponents": ",".join(map(str, c["exponents"])), "value": c["value"]}
            for c in table["coefficients"]]


def cmd_onevec(args, cfg):
    from .hallside import constant_term_onevec
    table = constant_term_onevec(args.rank, args.degree, cfg.window, cfg.genus).to_json()
    return {"table": table}, _table_rows(table), True


def cmd_semistable(args, cfg):
    from .hallside import RecursionWindowError, recombine_onevec, constant_term_onevec, semistable_1ss
    try:
        ss = semistable_1ss(args.rank, args.degree, cfg.window, cfg.genus)
    except RecursionWindowError as exc:
        raise UsageError(f"{exc} (required slope window {exc.required})") from None
    table = ss.to_json()
    payload = {"table": table}
    ok = True
    if args.verify:
        ok = recombine_onevec(ss).equals(constant_term_onevec(args.rank, args.degree,
                                                              cfg.window, cfg.genus))
        payload["round_trip"] = ok
    return payload, _table_rows(table), ok


def cmd_convergence(args, cfg):
    from .hallside import RecursionWindowError, buntriv_convergence
    try:
        rep = buntriv_convergence(2, args.degree, _frac_list(args.bounds), cfg.genus,
                                  args.semistable_window)
    except RecursionWindowError as exc:
        raise UsageError(f"{exc} (required {exc.required})") from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out = rep.to_json()
    rows = [{"slope_bound": b, "adic_degree": d}
            for b, d in zip(out["slope_bounds"], out["adic_degrees"])]
    return {"report": out}, rows, rep.strictly_increasing


def cmd_theta_skyscraper(args, cfg):
    from .thetamap import theta_skyscraper
    try:
        res = theta_skyscraper(args.rank, cfg.genus, args.variant)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out = res.to_json()
    return {"skyscraper": out}, None, out["consistent"]


def cmd_oracle(args, cfg):
    from . import oracle_p1
    if cfg.q not in oracle_p1.SUPPORTED_Q:
        raise UsageError(f"q must be one of {oracle_p1.SUPPORTED_Q}")
    if args.action == "compare":
        diffs = oracle_p1.compare(cfg.q, args.d1, args.d2, cfg.window)
        rows = [{"e": ",".join(map(str, d["e"])), "oracle": " ".join(d["oracle"]),
                 "shuffle": " ".join(d["shuffle"])} for d in diffs]
        return {"q": cfg.q, "d1": args.d1, "d2": args.d2, "window": cfg.window,
                "differences": diffs}, rows, not diffs
    res = oracle_p1.hecke_check(cfg.q, args.l)
    ok = res["action_equals_commutator"] and res["commutator_is_vector"] and res["matches_eigenvalue"]
    return {"q": cfg.q, "l": args.l, "hecke": res}, None, ok


def cmd_principal(args, cfg):
    from .principal import CharacterData, generator_chi, principal_product
    factors = _int_list(args.group) if args.group else []
    try:
        data = CharacterData(cfg.genus, factors, polynomial=args.polynomial)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    degs = _int_list(args.degrees)
    chars = [c.strip() for c in args.characters.split(";")] if args.characters else []
    if len(chars) != len(degs) or not degs:
        raise UsageError("give one character (';'-separated, e.g. '0;1') per degree")
    parsed = []
    for c in chars:
        chi = tuple(_int_list(c)) if c else ()
        if chi not in data.characters:
            raise UsageError(f"unknown character {c!r} for group {factors}")
        parsed.append(chi)
    if len(degs) > 3:
        raise UsageError("principal products support rank <= 3")
    gens = [generator_chi(data, chi, d) for chi, d in zip(parsed, degs)]
    out = principal_product(data, gens, args.route)
    return {"data": data.to_json(), "degrees": degs, "route": args.route,
            "product": out.to_json(data), "laurent": out.is_laurent}, None, True


def cmd_gk(args, cfg):
    from .rootsystems import gk_restriction, root_datum
    try:
        D = root_datum(args.type)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    lam = _int_list(args.weight) if args.weight else [0] * D.dim
    if len(lam) != D.dim:
        raise UsageError(f"weight needs {D.dim} coordinates for {args.type}")
    C = cfg.curve()
    terms = gk_restriction(D, C, lam, cfg.order)
    rows = [{"weight": ",".join(map(str, mu)), "coefficient": c.normalized().to_text()}
            for mu, c in sorted(terms.items())]
    return {"datum": D.to_json(), "weight": lam, "order": cfg.order, "curve": C.to_json(),
            "terms": [[list(mu), c.normalized().to_text()] for mu, c in sorted(terms.items())]}, \
        rows, True


def cmd_selftest(args, cfg):
    from .acceptance import CRITERIA, run_all
    numbers = _int_list(args.criteria) if args.criteria else [k for k, _, _ in CRITERIA]
    known = {k for k, _, _ in CRITERIA}
    if any(k not in known for k in numbers):
        raise UsageError(f"criteria must be among {sorted(known)}")
    results = run_all(numbers)
    for r in results:
        print(r.line(), file=sys.stderr)
    rows = [{"criterion": r.number, "name": r.name, "passed": r.passed} for r in results]
    return {"results": [r.to_json() for r in results],
            "passed": sum(r.passed for r in results), "total": len(results)}, rows, \
        all(r.passed for r in results)


COMMANDS = {
    "zeta": cmd_zeta, "psi": cmd_psi, "mul": cmd_mul, "tmul": cmd_tmul, "wheel": cmd_wheel,
    "bdet": cmd_bdet, "hn": cmd_hn, "onevec": cmd_onevec, "semistable": cmd_semistable,
    "convergence": cmd_convergence, "theta-skyscraper": cmd_theta_skyscraper,
    "oracle": cmd_oracle, "principal": cmd_principal, "gk": cmd_gk, "selftest": cmd_selftest,
}


# ---------------------------------------------------------------------------
# parsing and output

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--config", help="key = value session file")
    common.add_argument("--genus", type=int)
    common.add_argument("--mode", choices=("symbolic", "numeric"))
    common.add_argument("--v", help="numeric v = q^(-1/2), e.g. 1/2")
    common.add_argument("--alphas", help="numeric Weil numbers alpha_1..alpha_g, comma-separated")
    common.add_argument("--q", type=int, help="field size for the P1 oracle")
    common.add_argument("--window", type=int)
    common.add_argument("--order", type=int)
    common.add_argument("--seed", type=int)
    common.add_argument("--format", choices=("json", "csv", "text"))
    common.add_argument("--output", help="write the artifact here instead of stdout")

    parser = _Parser(prog="hallshuffle", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("zeta", parents=[common], help="zeta function of the curve")
    p = sub.add_parser("psi", parents=[common], help="weighted symmetrisation of a monomial")
    p.add_argument("--kernel", default="gx", choices=("gx", "gx-twisted", "zetatilde", "k", "hx"))
    p.add_argument("--exponents", required=True)
    p.add_argument("--route", default="division", choices=("division", "direct"))
    for name, helptext in (("mul", "shuffle product of degree-one generators"),
                           ("tmul", "twisted product of degree-one generators")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--degrees", required=True)
        p.add_argument("--route", default="auto", choices=("auto", "square", "direct"))
    p = sub.add_parser("wheel", parents=[common], help="wheel conditions of a generator product")
    p.add_argument("--degrees", default="0,0,0")
    p.add_argument("--constant", action="store_true", help="test the constant 1 instead")
    p.add_argument("--rank", type=int, default=3)
    p = sub.add_parser("bdet", parents=[common], help="determinant of the B matrix")
    p.add_argument("--rank", type=int, required=True)
    p = sub.add_parser("hn", parents=[common], help="Harder-Narasimhan types")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--slopes", help="slope window lo,hi (default -window,window)")
    for name in ("onevec", "semistable"):
        p = sub.add_parser(name, parents=[common], help=f"constant-term table of {name}")
        p.add_argument("--rank", type=int, default=2)
        p.add_argument("--degree", type=int, default=0)
        if name == "semistable":
            p.add_argument("--verify", action="store_true", help="check the HN round trip")
    p = sub.add_parser("convergence", parents=[common], help="adic degrees of truncated sums")
    p.add_argument("--degree", type=int, default=0)
    p.add_argument("--bounds", default="0,1,2,3")
    p.add_argument("--semistable-window", type=int, default=6)
    p = sub.add_parser("theta-skyscraper", parents=[common], help="image of the skyscraper class")
    p.add_argument("--rank", type=int, default=2)
    p.add_argument("--variant", default="twisted", choices=("twisted", "plain"))
    p = sub.add_parser("oracle", parents=[common], help="P1 brute-force oracle")
    p.add_argument("action", choices=("compare", "hecke"))
    p.add_argument("--d1", type=int, default=0)
    p.add_argument("--d2", type=int, default=0)
    p.add_argument("--l", type=int, default=0)
    p = sub.add_parser("principal", parents=[common], help="character-twisted products")
    p.add_argument("--group", help="invariant factors of the character group, e.g. 3")
    p.add_argument("--characters", default="", help="';'-separated residues, one per degree")
    p.add_argument("--degrees", required=True)
    p.add_argument("--polynomial", action="store_true")
    p.add_argument("--route", default="square", choices=("square", "direct"))
    p = sub.add_parser("gk", parents=[common], help="constant term of an induced function")
    p.add_argument("--type", required=True)
    p.add_argument("--weight")
    p = sub.add_parser("selftest", parents=[common], help="run the acceptance checks")
    p.add_argument("--criteria", help="comma-separated subset")
    return parser


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, float):
        return "inf" if x == float("inf") else x
    raise TypeError(f"not serialisable: {type(x).__name__}")


def render(command, cfg, payload, rows, verified):
    if cfg.format == "json":
        doc = {"schema": f"hallshuffle.{command}/{SCHEMA_VERSION}", "command": command,
               "config": cfg.to_json(), "verified": verified}
        doc.update(payload)
        return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False, default=_jsonable) + "\n"
    if rows is None:
        raise UsageError(f"{cfg.format} output is not available for {command}; use json")
    if not rows:
        return "" if cfg.format == "csv" else "(no rows)\n"
    cols = list(rows[0])
    if cfg.format == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        return buf.getvalue()
    widths = {c: max(len(c), *(len(str(r[c])) for r in rows)) for c in cols}
    lines = ["  ".join(c.ljust(widths[c]) for c in cols),
             "  ".join("-" * widths[c] for c in cols)]
    lines += ["  ".join(str(r[c]).ljust(widths[c]) for c in cols) for r in rows]
    return "\n".join(lines) + "\n"


def _write_atomic(path, text):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".hallshuffle-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _error(message, code, stream):
    doc = {"schema": f"hallshuffle.error/{SCHEMA_VERSION}", "error": message, "exit_code": code}
    stream.write(json.dumps(doc, sort_keys=True) + "\n")
    return code


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        cfg = session_from_args(args)
        payload, rows, verified = COMMANDS[args.command](args, cfg)
        text = render(args.command, cfg, payload, rows, verified)
    except UsageError as exc:
        return _error(str(exc), EXIT_USAGE, stderr)
    if args.output:
        try:
            _write_atomic(args.output, text)
        except OSError as exc:
            return _error(f"cannot write {args.output}: {exc.strerror}", EXIT_USAGE, stderr)
    else:
        stdout.write(text)
    return EXIT_OK if verified else EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
