"""``k3lat`` command line.

Exit status: 0 on success, 1 when the mathematics fails (invalid model,
failed claim, violated precondition), 2 for malformed input.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from importlib import resources
from fractions import Fraction
from pathlib import Path

from . import claims, families, fibration, hodge, lattice, mukai
from .serialize import dumps


class InputError(Exception):
    """Malformed user input; maps to exit status 2."""


class MathFailure(Exception):
    """A check ran and came out negative; the JSON result is still printed."""

    def __init__(self, payload):
        super().__init__("check failed")
        self.payload = payload


def _json_arg(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{what}: invalid JSON ({exc.msg})") from None


def _read_json_file(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg})") from None


def _parse(fn, *a):
    """Build an input object; any failure here is the caller's fault."""
    try:
        return fn(*a)
    except (ValueError, TypeError, KeyError, IndexError) as exc:
        raise InputError(str(exc)) from None


def _lattice_arg(args) -> lattice.Lattice:
    if args.name is not None and args.gram is not None:
        raise InputError("give either --name or --gram, not both")
    if args.name is not None:
        return _parse(lattice.standard, args.name)
    if args.gram is not None:
        return _parse(lattice.lattice_from_json, _json_arg(args.gram, "--gram"))
    raise InputError("a lattice is required (--name or --gram)")


def _span_arg(lat: lattice.Lattice, text: str, flag: str) -> lattice.Embedding:
    rows = _json_arg(text, flag)
    return _parse(lattice.span, lat, rows)


def _ns_arg(text: str) -> mukai.NSContext:
    obj = _json_arg(text, "--ns") if text.lstrip()[:1] in "[{\"" else text
    return _parse(lambda o: mukai.NSContext(lattice.lattice_from_json(o)), obj)


def _mukai_arg(text: str) -> mukai.MukaiVector:
    """``2,[1],2`` or a JSON object ``{"r":..,"c1":..,"s":..}``."""
    text = text.strip()
    obj = _json_arg(text if text.startswith("{") else f"[{text}]", "--v")
    if isinstance(obj, list) and len(obj) == 1 and isinstance(obj[0], list):
        obj = obj[0]
    if isinstance(obj, dict):
        obj = [obj.get("r"), obj.get("c1"), obj.get("s")]
    if not (isinstance(obj, list) and len(obj) == 3 and isinstance(obj[1], list)):
        raise InputError("Mukai vector must look like r,[c1...],s")
    return _parse(lambda o: mukai.MukaiVector(int(o[0]), tuple(int(x) for x in o[1]), int(o[2])), obj)


def _int_list(text: str, flag: str) -> list[int]:
    obj = _json_arg(text if text.strip().startswith("[") else f"[{text}]", flag)
    if not isinstance(obj, list) or not all(isinstance(x, int) for x in obj):
        raise InputError(f"{flag}: expected a list of integers")
    return obj


# -- lattice ------------------------------------------------------------------

def _lattice_info(args):
    lat = _lattice_arg(args)
    disc = lattice.discriminant(lat)
    out = {"rank": lat.rank, "signature": list(lat.signature()), "disc": disc, "even": lat.is_even}
    out["disc_group"] = lattice.discriminant_group(lat) if disc else None
    return out


def _lattice_complement(args):
    lat = _lattice_arg(args)
    return {"basis": [list(r) for r in lattice.orthogonal_complement(_span_arg(lat, args.span, "--span")).basis]}


def _lattice_saturate(args):
    lat = _lattice_arg(args)
    sat, index = lattice.saturation(_span_arg(lat, args.span, "--span"))
    return {"basis": [list(r) for r in sat.basis], "index": index}


def _lattice_kernel(args):
    lat = _lattice_arg(args)
    values = _int_list(args.values, "--values")
    char = _parse(lattice.Character, lat, args.modulus, tuple(values))
    ker = lattice.character_kernel(char)
    return {"basis": [list(r) for r in ker.basis], "order": char.order}


def _lattice_intersect(args):
    lat = _lattice_arg(args)
    a = _span_arg(lat, args.span, "--span")
    b = _span_arg(lat, args.other, "--other")
    return {"basis": [list(r) for r in lattice.intersect(a, b).basis]}


# -- families -----------------------------------------------------------------

def _families_solve(args):
    rows = families.enumerate_pairs(args.s1, args.s2, args.k_max, args.l_max)
    out = [{"k": k, "l": l, "lambda": lam} for k, l, lam in rows]
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["k", "l", "lambda"])
            w.writerows(rows)
    return out


def _families_partner(args):
    l = families.solve_partner(args.k, args.d)
    lam = families.correspondence_lambda(families.series_degree("X3k", args.k), families.series_degree("X3k1", l))
    return {"k": args.k, "d": args.d, "l": l, "lambda": lam}


def _families_obstruction(args):
    res = families.obstruction_residues(args.k, args.m)
    res["obstructed"] = families.x3k_x3m2_obstruction(args.k, args.m)
    return res


def _families_builtin(args):
    spec = _parse(families.builtin, args.name)
    out = {
        "name": spec.name,
        "ns": spec.ns.to_json(),
        "polarization": list(spec.polarization),
        "degree": spec.degree,
        "ambient_dim": spec.ambient_dim,
        "fiber": list(spec.fiber) if spec.fiber else None,
    }
    if spec.fiber:
        out["index"] = fibration.fibration_index(fibration.FibrationData(spec.ns, spec.fiber))
    return out


def _families_embeddings(args):
    results = families.reproduce_index_embeddings()
    out = [
        {
            "name": r.name,
            "expected": r.expected,
            "index_by_discriminant": r.index_by_discriminant,
            "index_by_basis": r.index_by_basis,
            "details": r.details,
            "pass": r.passed,
        }
        for r in results
    ]
    if not all(r.passed for r in results):
        raise MathFailure(out)
    return out


# -- mukai --------------------------------------------------------------------

def _mukai_vector_and_ns(args):
    if args.file:
        obj = _read_json_file(args.file)
        if not isinstance(obj, dict) or "mukai" not in obj or "ns" not in obj:
            raise InputError("file must contain 'mukai' and 'ns'")
        v = _parse(lambda m: mukai.MukaiVector(m["r"], tuple(m["c1"]), m["s"]), obj["mukai"])
        ctx = _parse(lambda o: mukai.NSContext(lattice.lattice_from_json(o)), obj["ns"])
        return v, ctx
    if args.v is None or args.ns is None:
        raise InputError("give --v and --ns, or --file")
    return _mukai_arg(args.v), _ns_arg(args.ns)


def _mukai_fineness(args):
    v, ctx = _mukai_vector_and_ns(args)
    return {"n": mukai.fineness_index(v, ctx)}


def _mukai_info(args):
    v, ctx = _mukai_vector_and_ns(args)
    return {
        "v": v.to_json(),
        "square": mukai.mukai_pairing(v, v, ctx),
        "isotropic": mukai.is_isotropic(v, ctx),
        "primitive": mukai.is_primitive(v),
        "n": mukai.fineness_index(v, ctx),
    }


def _mukai_pair(args):
    ctx = _ns_arg(args.ns)
    v, w = _mukai_arg(args.v), _mukai_arg(args.w)
    out = {"pairing": mukai.mukai_pairing(v, w, ctx)}
    if args.modulus is not None:
        out["residue"] = mukai.obstruction_residue(v, w, ctx, modulus=args.modulus)
    return out


def _mukai_chern(args):
    ctx = _ns_arg(args.ns)
    return mukai.from_chern(args.r, _int_list(args.c1, "--c1"), args.c2, ctx).to_json()


def _mukai_splitting(args):
    return {"types": [list(t) for t in mukai.p1_splitting_types(args.rank, args.degree, args.h0)]}


def _mukai_schubert(args):
    return {"pairing": mukai.schubert_pairing(_int_list(args.lam, "--lam"), _int_list(args.mu, "--mu"))}


# -- weierstrass -----------------------------------------------------------------

def _sample_text() -> str:
    return resources.files("k3lat").joinpath("data/weierstrass_sample.json").read_text()


def _weierstrass_check(args):
    obj = _read_json_file(args.file)
    w = _parse(fibration.WeierstrassModel.from_json, obj)
    delta_nonzero = not fibration.discriminant_form(w).is_zero()
    valid = fibration.is_valid(w)
    out = {
        "valid": valid,
        "delta_nonzero": delta_nonzero,
        "nodal_count": fibration.nodal_fiber_count(w) if delta_nonzero else None,
        "j_degree": fibration.j_degree(w) if delta_nonzero else None,
    }
    if not valid:
        raise MathFailure(out)
    return out


def _weierstrass_sample(args):
    return json.loads(_sample_text())


# -- hodge --------------------------------------------------------------------

def _hodge_coefficient(args):
    return {
        "coefficient": hodge.rank1_extension_coefficient(args.e_norm, args.r_norm),
        "multiple": hodge.extension_multiple(args.e_norm, args.r_norm),
    }


def _hodge_check(args):
    obj = _read_json_file(args.file)
    try:
        src = lattice.lattice_from_json(obj["source"])
        tgt = lattice.lattice_from_json(obj["target"])
        m = [[Fraction(x) for x in row] for row in obj["matrix"]]
    except (ValueError, TypeError, KeyError, ZeroDivisionError) as exc:
        raise InputError(f"bad isometry file: {exc}") from None
    out = {"is_isometry": _parse(hodge.is_isometry, m, src, tgt)}
    if not out["is_isometry"]:
        raise MathFailure(out)
    return out


# -- reproduce ------------------------------------------------------------------

def _reproduce(args):
    entries = claims.run_claims(args.filter)
    report = {
        "claims": [e.to_json() for e in entries],
        "total": len(entries),
        "passed": sum(e.passed for e in entries),
    }
    failed = [e.claim_id for e in entries if not e.passed]
    if failed:
        for cid in failed:
            print(f"FAIL {cid}", file=sys.stderr)
        raise MathFailure(report)
    return report


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="k3lat", description=__doc__.splitlines()[0])
    p.add_argument("--out", help="write the JSON result to this file instead of stdout")
    top = p.add_subparsers(dest="command", required=True)

    def leaf(sub, name, fn, help_):
        q = sub.add_parser(name, help=help_)
        q.set_defaults(func=fn)
        q.add_argument("--out", help=argparse.SUPPRESS, dest="out_leaf")
        return q

    lat = top.add_parser("lattice", help="lattice invariants and sublattices").add_subparsers(dest="sub", required=True)
    for name, fn, help_ in (
        ("info", _lattice_info, "rank, signature, discriminant and discriminant group"),
        ("complement", _lattice_complement, "orthogonal complement of --span"),
        ("saturate", _lattice_saturate, "primitive closure of --span and its index"),
        ("kernel", _lattice_kernel, "kernel of the character given by --values mod --modulus"),
        ("intersect", _lattice_intersect, "intersection of --span and --other"),
    ):
        q = leaf(lat, name, fn, help_)
        q.add_argument("--name", help="K3, U, E8neg or rank1:d")
        q.add_argument("--gram", help="Gram matrix as JSON")
        if name in ("complement", "saturate", "intersect"):
            q.add_argument("--span", required=True, help="spanning vectors as a JSON list of rows")
        if name == "intersect":
            q.add_argument("--other", required=True)
        if name == "kernel":
            q.add_argument("--values", required=True, help="character values on the basis")
            q.add_argument("--modulus", type=int, required=True)

    fam = top.add_parser("families", help="correspondence families between projective series").add_subparsers(
        dest="sub", required=True
    )
    q = leaf(fam, "solve", _families_solve, "enumerate (k, l, lambda) with a perfect-square product")
    q.add_argument("--s1", required=True, choices=families.SERIES)
    q.add_argument("--s2", required=True, choices=families.SERIES)
    q.add_argument("--k-max", type=int, default=50)
    q.add_argument("--l-max", type=int, default=500)
    q.add_argument("--csv", help="also write a CSV with columns k,l,lambda")
    q = leaf(fam, "partner", _families_partner, "l = 3 rho d^2 partner for X_3k")
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--d", type=int, default=1)
    q = leaf(fam, "obstruction", _families_obstruction, "mod-3 residues for X_3k x X_(3m+2)")
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--m", type=int, required=True)
    q = leaf(fam, "builtin", _families_builtin, "Picard data of a catalogued family")
    q.add_argument("name", choices=families.BUILTIN_NAMES)
    leaf(fam, "embeddings", _families_embeddings, "index-2 and index-9 transcendental embeddings")

    mk = top.add_parser("mukai", help="Mukai vectors and related counts").add_subparsers(dest="sub", required=True)
    for name, fn in (("fineness", _mukai_fineness), ("info", _mukai_info)):
        q = leaf(mk, name, fn, "fineness index n" if name == "fineness" else "square, primitivity and n")
        q.add_argument("--v", help="Mukai vector r,[c1...],s")
        q.add_argument("--ns", help="NS lattice: Gram JSON or standard name")
        q.add_argument("--file", help='JSON {"mukai": {...}, "ns": {...}}')
    q = leaf(mk, "pair", _mukai_pair, "Mukai pairing of --v and --w")
    q.add_argument("--v", required=True)
    q.add_argument("--w", required=True)
    q.add_argument("--ns", required=True)
    q.add_argument("--modulus", type=int)
    q = leaf(mk, "chern", _mukai_chern, "Mukai vector from rank, c1, c2")
    q.add_argument("--r", type=int, required=True)
    q.add_argument("--c1", required=True)
    q.add_argument("--c2", type=int, required=True)
    q.add_argument("--ns", required=True)
    q = leaf(mk, "splitting", _mukai_splitting, "split bundles on P^1 with given rank, degree, h0")
    q.add_argument("--rank", type=int, required=True)
    q.add_argument("--degree", type=int, required=True)
    q.add_argument("--h0", type=int, required=True)
    q = leaf(mk, "schubert", _mukai_schubert, "middle-degree Schubert pairing on Gr(2,4)")
    q.add_argument("--lam", required=True, help="partition, e.g. 2 or 1,1")
    q.add_argument("--mu", required=True)

    ws = top.add_parser("weierstrass", help="Weierstrass models over P^1").add_subparsers(dest="sub", required=True)
    q = leaf(ws, "check", _weierstrass_check, "validate a model file")
    q.add_argument("file")
    leaf(ws, "sample", _weierstrass_sample, "print the bundled sample model")

    hd = top.add_parser("hodge", help="rational isometries").add_subparsers(dest="sub", required=True)
    q = leaf(hd, "coefficient", _hodge_coefficient, "rank-one extension coefficient 1/lambda")
    q.add_argument("--e-norm", type=int, required=True)
    q.add_argument("--r-norm", type=int, required=True)
    q = leaf(hd, "check", _hodge_check, "test whether a matrix file is an isometry")
    q.add_argument("file")

    q = top.add_parser("reproduce", help="recompute every catalogued numeric claim")
    q.set_defaults(func=_reproduce)
    q.add_argument("--filter", choices=claims.GROUPS)
    q.add_argument("--out", help=argparse.SUPPRESS, dest="out_leaf")
    return p


def _emit(payload, out: str | None) -> None:
    text = dumps(payload) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out = getattr(args, "out_leaf", None) or args.out
    try:
        payload = args.func(args)
    except InputError as exc:
        print(f"k3lat: error: {exc}", file=sys.stderr)
        return 2
    except MathFailure as exc:
        _emit(exc.payload, out)
        return 1
    except (ValueError, RuntimeError) as exc:
        print(f"k3lat: {exc}", file=sys.stderr)
        return 1
    _emit(payload, out)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
