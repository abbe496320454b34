"""Replayable certificates.

A certificate is a JSON object holding the command, its full input (algebras
and presentations embedded as text), the computed result and a verdict.
``verify_certificate`` recomputes the result from the embedded input, compares
it with the stored one and re-checks any witnesses by direct evaluation.
"""

from __future__ import annotations

import json
import random

from . import diffperm
from .algebra import StructureAlgebra
from .envelope import envelope_suite
from .identities import (
    AlphabetMismatch, consequence_space, eval_in_free_perm, identity_witness, satisfies,
)
from .linalg import add_into, format_scalar, parse_scalar
from .presentations import builtin
from .replicate import replicate_variety
from .terms import parse_identities, parse_presentation

FORMAT = "permder-certificate"
VERSION = 1


class CertificateError(ValueError):
    pass


def dumps(cert: dict) -> str:
    return json.dumps(cert, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _wrap(command: str, inputs: dict, result: dict, verdict: str, passed: bool) -> dict:
    return {"format": FORMAT, "version": VERSION, "command": command, "input": inputs,
            "result": result, "verdict": verdict, "passed": passed}


# -- encoding helpers ------------------------------------------------------------------

def encode_algebra(a: StructureAlgebra) -> dict:
    d = a.to_dict()
    d["name"] = a.name
    return d


def decode_algebra(d: dict) -> StructureAlgebra:
    return StructureAlgebra.from_dict(d, d.get("name", ""))


def encode_vector(a: StructureAlgebra, v: dict) -> list:
    return [[a.basis[k], format_scalar(c)] for k, c in sorted(v.items()) if c]


def decode_vector(a: StructureAlgebra, pairs) -> dict:
    out: dict = {}
    for name, s in pairs:
        add_into(out, {a.basis_index(name): parse_scalar(s)})
    return out


def encode_tensor(a: StructureAlgebra, v: dict) -> list:
    return [["⊗".join(a.basis[k] for k in w), format_scalar(c)]
            for w, c in sorted(v.items(), key=lambda wc: (len(wc[0]), wc[0])) if c]


# -- certificate builders ------------------------------------------------------------------

def dim_certificate(pres_text: str, pres_name: str, arity: int) -> dict:
    pres = parse_presentation(pres_text, pres_name)
    space = consequence_space(pres, arity)
    result = {"dim": space.quotient_dim, "monomials": len(space.monomials), "rank": space.rank}
    return _wrap("dim", {"presentation": pres_text, "name": pres_name, "arity": arity},
                 result, str(space.quotient_dim), True)


def check_identity_certificate(ident_text: str, interpretation: str | None = None,
                               algebra: StructureAlgebra | None = None) -> dict:
    idents = parse_identities(ident_text)
    values = []
    for f in idents:
        if algebra is None:
            val = eval_in_free_perm(f, interpretation or "derived")
            values.append({"identity": str(f), "vanishes": val.is_zero(),
                           "value": diffperm.format_poly(val)})
        else:
            w = identity_witness(f, algebra)
            entry = {"identity": str(f), "vanishes": w is None}
            if w is not None:
                entry["where"] = [algebra.basis[k] for k in w[0]]
                entry["value"] = encode_vector(algebra, w[1])
            values.append(entry)
    target = ({"algebra": encode_algebra(algebra)} if algebra is not None
              else {"free": interpretation or "derived"})
    ok = all(v["vanishes"] for v in values)
    return _wrap("check-identity", {"identities": ident_text, "target": target},
                 {"values": values}, "all vanish" if ok else "nonzero", ok)


def replicate_certificate(pres_text: str, pres_name: str) -> dict:
    pres = parse_presentation(pres_text, pres_name)
    di = replicate_variety(pres)
    return _wrap("replicate", {"presentation": pres_text, "name": pres_name},
                 {"presentation": di.to_text(), "count": len(di.identities)}, di.name, True)


def sls_basis_certificate(arity: int, multilinear: bool = True) -> dict:
    basis = diffperm.enumerate_sls_basis(arity, multilinear)
    return _wrap("sls-basis", {"arity": arity, "multilinear": multilinear},
                 {"count": len(basis), "monomials": [str(m) for m in basis]}, str(len(basis)), True)


def envelope_certificate(a: StructureAlgebra, bound: int, pairs: int, seed: int) -> dict:
    bad = satisfies(a, builtin("lsym"))
    if bad is not None:
        raise CertificateError(f"input is not left-symmetric: {bad[0]} fails on {bad[1]}")
    res = envelope_suite(a, bound, pairs, random.Random(seed))
    return _wrap("envelope-test", {"algebra": encode_algebra(a), "bound": bound, "pairs": pairs, "seed": seed},
                 res, "pass" if res["passed"] else "fail", res["passed"])


def _niceness_result(a, report) -> dict:
    out = {"verdict": report.verdict, "relations": len(report.relations)}
    if report.nice:
        out["image_basis"] = [[a.basis[i], a.basis[j]] for i, j in report.image_basis]
        out["mu"] = {a.basis[x]: [encode_vector(a, v) for v in vs] for x, vs in sorted(report.mu.items())}
    else:
        rel, x, val = report.witness
        out["witness"] = {
            "relation": [[a.basis[i], a.basis[j], format_scalar(c)] for (i, j), c in sorted(rel.items())],
            "multiplier": a.basis[x],
            "value": encode_vector(a, val),
        }
    return out


def nice_certificate(a: StructureAlgebra) -> dict:
    from .speciality import check_nice
    report = check_nice(a)
    return _wrap("nice", {"algebra": encode_algebra(a)}, _niceness_result(a, report), report.verdict, True)


def special_certificate(a: StructureAlgebra, bound: int | None = None) -> dict:
    from .speciality import decide_special
    v = decide_special(a, bound)
    result: dict = {"special": v.special}
    if v.violation is not None:
        ident, where, val = v.violation
        result["violation"] = {"identity": str(ident), "where": [a.basis[k] for k in where],
                               "value": encode_vector(a, val)}
    if v.niceness is not None:
        result["niceness"] = _niceness_result(a, v.niceness)
    if v.intersection is not None:
        result["intersection"] = _intersection_result(a, v.intersection)
    ok = v.intersection is None or v.intersection.dim == 0
    return _wrap("special", {"algebra": encode_algebra(a), "bound": bound}, result,
                 "special" if v.special else "not special", ok)


def _intersection_result(a, c) -> dict:
    out = {"bound": c.bound, "space": c.space, "dim": c.dim}
    if c.witness is not None:
        out["witness"] = encode_vector(a, c.witness)
    return out


def ideals_certificate(a: StructureAlgebra, bound: int, space: str = "J", samples: int = 0,
                       seed: int = 0) -> dict:
    from .speciality import (check_intersection, check_nice, check_novikov_quotient, check_poisson,
                             compute_ideals)
    report = check_nice(a)
    span = compute_ideals(a, bound)
    inter = check_intersection(a, span, space)
    result = {"nice": report.nice, "dims": span.dims(), "intersection": _intersection_result(a, inter)}
    ok = True
    if report.nice:
        ok = inter.dim == 0
        if samples and bound >= 3:
            rng = random.Random(seed)
            p = check_poisson(a, span, samples, rng)
            q = check_novikov_quotient(a, span, samples, rng) if bound >= 4 else None
            result["poisson"] = "pass" if p is None else "fail"
            if bound >= 4:
                result["novikov_quotient"] = "pass" if q is None else "fail"
            ok = ok and p is None and q is None
    verdict = f"dim(A∩{space}) = {inter.dim}"
    return _wrap("ideals", {"algebra": encode_algebra(a), "bound": bound, "space": space,
                            "samples": samples, "seed": seed}, result, verdict, ok)


def cur_certificate(n: StructureAlgebra) -> dict:
    from .cur import verify_cur
    c = verify_cur(n)
    result = {
        "dims": c.dims,
        "nhat_novikov": c.nhat_novikov,
        "cur_identities": [{"identity": s, "passed": ok} for s, ok in c.cur_identities],
        "hat_rank": c.hat_rank,
        "hat_vdash": c.hat_vdash,
        "hat_dashv": c.hat_dashv,
        "not_constructed": "embedding of Nhat into a commutative differential algebra",
    }
    return _wrap("cur", {"algebra": encode_algebra(n)}, result, "pass" if c.passed else "fail", c.passed)


# -- verification ---------------------------------------------------------------------

def recompute(cert: dict) -> dict:
    cmd = cert.get("command")
    inp = cert.get("input", {})
    if cmd == "dim":
        return dim_certificate(inp["presentation"], inp["name"], inp["arity"])
    if cmd == "check-identity":
        tgt = inp["target"]
        if "algebra" in tgt:
            return check_identity_certificate(inp["identities"], algebra=decode_algebra(tgt["algebra"]))
        return check_identity_certificate(inp["identities"], interpretation=tgt["free"])
    if cmd == "replicate":
        return replicate_certificate(inp["presentation"], inp["name"])
    if cmd == "sls-basis":
        return sls_basis_certificate(inp["arity"], inp["multilinear"])
    if cmd == "envelope-test":
        return envelope_certificate(decode_algebra(inp["algebra"]), inp["bound"], inp["pairs"], inp["seed"])
    if cmd == "nice":
        return nice_certificate(decode_algebra(inp["algebra"]))
    if cmd == "special":
        return special_certificate(decode_algebra(inp["algebra"]), inp["bound"])
    if cmd == "ideals":
        return ideals_certificate(decode_algebra(inp["algebra"]), inp["bound"], inp["space"],
                                  inp["samples"], inp["seed"])
    if cmd == "cur":
        return cur_certificate(decode_algebra(inp["algebra"]))
    raise CertificateError(f"unknown certificate command {cmd!r}")


def _check_niceness_witness(a: StructureAlgebra, res: dict) -> list[str]:
    errors = []
    if res["verdict"] == "not-nice":
        w = res["witness"]
        rel = {(a.basis_index(x), a.basis_index(y)): parse_scalar(c) for x, y, c in w["relation"]}
        x = a.basis_index(w["multiplier"])
        total: dict = {}
        pushed: dict = {}
        for (i, j), c in rel.items():
            add_into(total, a.mul({i: 1}, {j: 1}), c)
            add_into(pushed, a.mul(a.mul({i: 1}, {x: 1}), {j: 1}), c)
        if total:
            errors.append("witness relation does not vanish")
        if not pushed or pushed != decode_vector(a, w["value"]):
            errors.append("witness value is wrong or zero")
    else:
        pairs = [(a.basis_index(x), a.basis_index(y)) for x, y in res["image_basis"]]
        from .linalg import Solver
        solver = Solver()
        for p in pairs:
            if solver.add(p, a.product[p[0]][p[1]]) is not None:
                errors.append("image basis is dependent")
        for xname, images in res["mu"].items():
            x = a.basis_index(xname)
            mu = [decode_vector(a, v) for v in images]
            for i in range(a.dim):
                for j in range(a.dim):
                    combo = solver.express(a.product[i][j])
                    if combo is None:
                        errors.append("image basis does not span A∘A")
                        continue
                    lhs: dict = {}
                    for p, c in combo.items():
                        add_into(lhs, mu[pairs.index(p)], c)
                    if lhs != a.mul(a.mul({i: 1}, {x: 1}), {j: 1}):
                        errors.append(f"μ_{xname} fails on ({a.basis[i]}, {a.basis[j]})")
    return errors


def verify_certificate(cert: dict) -> list[str]:
    """Problems found; an empty list means the certificate checks out."""
    if cert.get("format") != FORMAT or cert.get("version") != VERSION:
        raise CertificateError("not a certificate of this tool")
    errors = []
    fresh = json.loads(dumps(recompute(cert)))
    for key in ("result", "verdict", "passed"):
        if fresh[key] != cert.get(key):
            errors.append(f"recomputed {key} differs")
    cmd, res = cert["command"], cert["result"]
    if cmd in ("nice", "special"):
        a = decode_algebra(cert["input"]["algebra"])
        nres = res if cmd == "nice" else res.get("niceness")
        if nres is not None:
            errors += _check_niceness_witness(a, nres)
        if cmd == "special" and "violation" in res:
            errors += _check_violation(a, res["violation"])
    if cmd == "ideals" and "witness" in res["intersection"]:
        a = decode_algebra(cert["input"]["algebra"])
        from .speciality import compute_ideals
        span = compute_ideals(a, cert["input"]["bound"])
        w = decode_vector(a, res["intersection"]["witness"])
        if not w or not getattr(span, cert["input"]["space"]).contains({(k,): c for k, c in w.items()}):
            errors.append("intersection witness is not in the span")
    return errors


def _check_violation(a: StructureAlgebra, v: dict) -> list[str]:
    from .terms import parse_identity
    f = parse_identity(v["identity"])
    try:
        w = identity_witness(f, a)
    except AlphabetMismatch as exc:
        return [str(exc)]
    if w is None:
        return ["claimed violated identity holds"]
    return []


def load(text: str) -> dict:
    try:
        cert = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CertificateError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(cert, dict):
        raise CertificateError("certificate must be a JSON object")
    return cert


__all__ = [
    "CertificateError", "dumps", "load", "verify_certificate", "recompute", "encode_algebra",
    "decode_algebra", "encode_vector", "decode_vector", "encode_tensor", "dim_certificate",
    "check_identity_certificate", "replicate_certificate", "sls_basis_certificate",
    "envelope_certificate", "nice_certificate", "special_certificate", "ideals_certificate",
    "cur_certificate",
]
