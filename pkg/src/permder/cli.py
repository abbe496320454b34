"""Command-line driver.

Exit status: 0 when the command ran and every verification passed (a decided
negative verdict such as "not nice" counts as a pass), 1 when a verification
failed, 2 on input errors.
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from . import certificates as certs
from .algebra import AlgebraFormatError, StructureAlgebra, load_algebra, save_algebra
from .identities import AlphabetMismatch, ResourceBoundExceeded
from .presentations import BUILTIN_NAMES, builtin
from .terms import IdentityParseError, NotMultilinear

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _presentation_source(source: str) -> tuple[str, str]:
    """Text and name of a built-in presentation or an identity file."""
    if source in BUILTIN_NAMES:
        return builtin(source).to_text(), source
    path = Path(source)
    if not path.is_file():
        raise InputError(f"unknown variety {source!r}; built-ins: {', '.join(BUILTIN_NAMES)}")
    return path.read_text(), path.stem


def _algebra(path: str) -> StructureAlgebra:
    if not Path(path).is_file():
        raise InputError(f"no such file: {path}")
    return load_algebra(path)


# -- text rendering ------------------------------------------------------------------

def _render_text(cert: dict) -> str:
    cmd, res = cert["command"], cert["result"]
    lines = []
    if cmd == "dim":
        lines.append(str(res["dim"]))
    elif cmd == "check-identity":
        for v in res["values"]:
            status = "vanishes" if v["vanishes"] else "NONZERO"
            lines.append(f"{v['identity']}: {status}")
            if not v["vanishes"]:
                where = f" at ({', '.join(v['where'])})" if "where" in v else ""
                lines.append(f"  value{where}: {_fmt_value(v['value'])}")
    elif cmd == "replicate":
        lines.append(res["presentation"].rstrip("\n"))
    elif cmd == "sls-basis":
        lines.extend(res["monomials"])
        lines.append(f"count: {res['count']}")
    elif cmd == "envelope-test":
        lines.append(f"bound {res['bound']}, {res['pairs']} word pairs: "
                     f"{'pass' if not res['m_product_failures'] else 'FAIL'}")
        for e in res["identities"]:
            lines.append(f"{e['identity']}: {'pass' if e['passed'] else 'FAIL'} ({e['assignments']} triples)")
        lines.append(f"restriction to A: {'pass' if res['restriction'] else 'FAIL'}")
    elif cmd in ("nice", "special"):
        lines.append(cert["verdict"])
        if "violation" in res:
            v = res["violation"]
            lines.append(f"violated: {v['identity']} at ({', '.join(v['where'])})")
        nres = res if cmd == "nice" else res.get("niceness")
        if nres and "witness" in nres:
            w = nres["witness"]
            rel = " + ".join(f"{c}*{a}⊗{b}" if c != "1" else f"{a}⊗{b}" for a, b, c in w["relation"])
            lines.append(f"relation: {rel}; multiplier: {w['multiplier']}; value: {_fmt_value(w['value'])}")
        if "intersection" in res:
            i = res["intersection"]
            lines.append(f"dim(A∩{i['space']}) at bound {i['bound']}: {i['dim']}")
    elif cmd == "ideals":
        for k, v in res["dims"].items():
            lines.append(f"{k}: {v}")
        i = res["intersection"]
        lines.append(f"dim(A∩{i['space']}) at bound {i['bound']}: {i['dim']}")
        if "witness" in i:
            lines.append(f"witness: {_fmt_value(i['witness'])}")
        for key in ("poisson", "novikov_quotient"):
            if key in res:
                lines.append(f"{key}: {res[key]}")
    elif cmd == "cur":
        d = res["dims"]
        lines.append(f"dim N = {d['N']}, dim N0 = {d['N0']}, dim Nbar = {d['Nbar']}, dim Nhat = {d['Nhat']}")
        lines.append(f"Nhat Novikov: {res['nhat_novikov']}")
        for e in res["cur_identities"]:
            lines.append(f"Cur: {e['identity']}: {'pass' if e['passed'] else 'FAIL'}")
        lines.append(f"hat rank {res['hat_rank']}, ⊢ {res['hat_vdash']}, ⊣ {res['hat_dashv']}")
        lines.append(cert["verdict"])
    return "\n".join(lines) + "\n"


def _fmt_value(v) -> str:
    if isinstance(v, str):
        return v
    return " + ".join(f"{c}*{n}" for n, c in v) or "0"


def _emit(cert: dict, args) -> int:
    text = certs.dumps(cert)
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
    sys.stdout.write(text if args.format == "structured" else _render_text(cert))
    return EXIT_OK if cert["passed"] else EXIT_FAIL


# -- subcommands ---------------------------------------------------------------------------

def cmd_check_identity(args) -> int:
    text = Path(args.identities).read_text() if Path(args.identities).is_file() else args.identities
    alg = _algebra(args.algebra) if args.algebra else None
    return _emit(certs.check_identity_certificate(text, args.interpretation, alg), args)


def cmd_dim(args) -> int:
    text, name = _presentation_source(args.variety)
    if args.arity < 1:
        raise InputError("arity must be >= 1")
    return _emit(certs.dim_certificate(text, name, args.arity), args)


def cmd_replicate(args) -> int:
    text, name = _presentation_source(args.variety)
    cert = certs.replicate_certificate(text, name)
    if args.out:
        Path(args.out).write_text(cert["result"]["presentation"])
    sys.stdout.write(certs.dumps(cert) if args.format == "structured" else cert["result"]["presentation"])
    return EXIT_OK


def cmd_sls_basis(args) -> int:
    if args.arity < 1:
        raise InputError("arity must be >= 1")
    return _emit(certs.sls_basis_certificate(args.arity, not args.all_degree_n), args)


def cmd_envelope_test(args) -> int:
    a = _algebra(args.algebra)
    try:
        cert = certs.envelope_certificate(a, args.bound, args.pairs, args.seed)
    except certs.CertificateError as exc:
        raise InputError(str(exc)) from None
    return _emit(cert, args)


def cmd_nice(args) -> int:
    from .speciality import NotSLSError
    try:
        cert = certs.nice_certificate(_algebra(args.algebra))
    except NotSLSError as exc:
        raise InputError(f"not an SLS-algebra: {exc}") from None
    return _emit(cert, args)


def cmd_special(args) -> int:
    return _emit(certs.special_certificate(_algebra(args.algebra), args.bound if args.with_ideals else None), args)


def cmd_ideals(args) -> int:
    from .speciality import NotSLSError
    try:
        cert = certs.ideals_certificate(_algebra(args.algebra), args.bound, args.space, args.samples, args.seed)
    except NotSLSError as exc:
        raise InputError(f"not an SLS-algebra: {exc}") from None
    return _emit(cert, args)


def cmd_cur(args) -> int:
    from .cur import NotDiNovError
    a = _algebra(args.algebra)
    if not a.is_dialgebra:
        raise InputError("cur needs a dialgebra (product2 table)")
    try:
        cert = certs.cur_certificate(a)
    except NotDiNovError as exc:
        raise InputError(f"not a Novikov dialgebra: {exc}") from None
    return _emit(cert, args)


def cmd_fixtures(args) -> int:
    from . import fixtures as fx
    out = Path(args.out or "fixtures")
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for name, alg in (("sls1", fx.sls1_fixture()), ("sls2q", fx.sls2q_fixture())):
        path = out / f"{name}.alg"
        save_algebra(alg, path)
        written.append(path)
    rng = random.Random(args.seed)
    for k in range(args.count):
        for kind, make in (("lsym", fx.random_left_symmetric), ("novikov", fx.random_novikov),
                           ("dinov", fx.random_novikov_dialgebra)):
            path = out / f"{kind}-{args.seed}-{k}.alg"
            save_algebra(make(rng), path)
            written.append(path)
    for p in written:
        print(p)
    return EXIT_OK


def cmd_verify_certificate(args) -> int:
    cert = certs.load(Path(args.certificate).read_text())
    errors = certs.verify_certificate(cert)
    for e in errors:
        print(f"FAIL: {e}")
    if errors:
        return EXIT_FAIL
    print(f"certificate verified: {cert['command']}: {cert['verdict']}")
    return EXIT_OK


# -- parser --------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("--out", help="also write the structured certificate (or output file) here")

    p = argparse.ArgumentParser(prog="permder", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check-identity", parents=[common],
                       help="evaluate identities in free Perm Der or in a structure-constant algebra")
    s.add_argument("identities", help="identity file, or the identity text itself")
    s.add_argument("--algebra", help="algebra file; default is the free differential Perm-algebra")
    s.add_argument("--interpretation", choices=("derived", "perm"), default="derived",
                   help="meaning of the products in the free algebra")
    s.set_defaults(func=cmd_check_identity)

    s = sub.add_parser("dim", parents=[common], help="dimension of the multilinear component")
    s.add_argument("--variety", required=True, help=f"built-in ({', '.join(BUILTIN_NAMES)}) or identity file")
    s.add_argument("--arity", "-n", type=int, required=True)
    s.set_defaults(func=cmd_dim)

    s = sub.add_parser("replicate", parents=[common], help="emit the dialgebra presentation")
    s.add_argument("--variety", required=True)
    s.set_defaults(func=cmd_replicate)

    s = sub.add_parser("sls-basis", parents=[common], help="weight -1 Perm monomials of degree n")
    s.add_argument("--arity", "-n", type=int, required=True)
    s.add_argument("--all-degree-n", action="store_true", help="all degree-n monomials, not only multilinear")
    s.set_defaults(func=cmd_sls_basis)

    s = sub.add_parser("envelope-test", parents=[common], help="property suite for the enveloping dialgebra")
    s.add_argument("algebra")
    s.add_argument("--bound", "-D", type=int, default=4)
    s.add_argument("--pairs", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_envelope_test)

    s = sub.add_parser("nice", parents=[common], help="niceness of an SLS-algebra")
    s.add_argument("algebra")
    s.set_defaults(func=cmd_nice)

    s = sub.add_parser("special", parents=[common], help="decide speciality")
    s.add_argument("algebra")
    s.add_argument("--bound", "-D", type=int, default=4)
    s.add_argument("--with-ideals", action="store_true", help="also certify A∩J = 0 at the bound")
    s.set_defaults(func=cmd_special)

    s = sub.add_parser("ideals", parents=[common], help="K, I, V, J in the truncated tensor algebra")
    s.add_argument("algebra")
    s.add_argument("--bound", "-D", type=int, default=4)
    s.add_argument("--space", choices=("I", "V", "J"), default="J")
    s.add_argument("--samples", type=int, default=0, help="sampled congruence checks (nice inputs)")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_ideals)

    s = sub.add_parser("cur", parents=[common], help="split extension and current dialgebra checks")
    s.add_argument("algebra")
    s.set_defaults(func=cmd_cur)

    s = sub.add_parser("fixtures", help="write example algebras")
    s.add_argument("--out", default="fixtures", help="output directory")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--count", type=int, default=0, help="random algebras of each kind")
    s.set_defaults(func=cmd_fixtures)

    s = sub.add_parser("verify-certificate", help="recompute and re-check a certificate")
    s.add_argument("certificate")
    s.set_defaults(func=cmd_verify_certificate)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (IdentityParseError, InputError, AlgebraFormatError, NotMultilinear, AlphabetMismatch,
            ResourceBoundExceeded, certs.CertificateError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
