"""Command-line front end.

Fans are read from strict JSON documents::

    {"dim": 2, "rays": [[1, 0], [0, -1], [-1, 1]], "max_cones": [[1, 2], [2, 3], [3, 1]]}

or generated from a named family with ``--family NAME --param N`` (repeat
the pair to take a product).  Exit status is 0 on success, 2 on a parse or
validation error and 3 when a complete fan is required but not given.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from .class_group import compute_class_group
from .errors import FanValidationError, IncompleteFanError
from .fan import FAMILIES, Fan, build_fan, is_complete, make_family, product_fan
from .monoid import upsilon
from .orbits import bfs_oracle_classification, classes_from_partition, classify_aut0, closure_poset
from .roots import demazure_roots
from .symmetry import classify_aut, decompose_product, describe_product, fan_symmetries, is_transitive

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_PRECONDITION = 3

COMMANDS = ("clgroup", "roots", "upsilon", "classify", "classify-aut", "poset",
            "symmetries", "transitivity", "generate")

_KEYS = {"dim", "rays", "max_cones", "name"}


class FanParseError(ValueError):
    def __init__(self, message, line=None, column=None):
        loc = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + loc)
        self.line = line
        self.column = column


@dataclass(frozen=True)
class FanDocument:
    dim: int
    rays: tuple
    max_cones: tuple
    name: Optional[str] = None

    def to_fan(self) -> Fan:
        return build_fan(self.dim, self.rays, self.max_cones)

    def to_json(self) -> str:
        lines = [f'  "dim": {self.dim}']
        lines.append('  "rays": ' + json.dumps([list(v) for v in self.rays]))
        lines.append('  "max_cones": ' + json.dumps([list(c) for c in self.max_cones]))
        if self.name is not None:
            lines.append('  "name": ' + json.dumps(self.name, ensure_ascii=False))
        return "{\n" + ",\n".join(lines) + "\n}\n"

    @classmethod
    def from_fan(cls, fan: Fan, name: Optional[str] = None) -> "FanDocument":
        return cls(fan.dim, fan.rays, fan.max_cones, name)


def _int(x, what):
    if isinstance(x, bool) or not isinstance(x, int):
        raise FanParseError(f"{what} must be an integer, got {json.dumps(x)}")
    return x


def parse_fan_text(text: str) -> FanDocument:
    """Parse and validate a fan document; raises FanParseError or FanValidationError."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FanParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(obj, dict):
        raise FanParseError("fan document must be a JSON object")
    unknown = sorted(set(obj) - _KEYS)
    if unknown:
        raise FanParseError(f"unknown key(s): {', '.join(unknown)}")
    for key in ("dim", "rays", "max_cones"):
        if key not in obj:
            raise FanParseError(f"missing key {key!r}")
    dim = _int(obj["dim"], "dim")
    if not isinstance(obj["rays"], list):
        raise FanParseError("rays must be a list")
    rays = []
    for i, v in enumerate(obj["rays"], 1):
        if not isinstance(v, list):
            raise FanParseError(f"ray {i} must be a list of integers")
        rays.append(tuple(_int(x, f"ray {i} entry") for x in v))
    if not isinstance(obj["max_cones"], list):
        raise FanParseError("max_cones must be a list")
    cones = []
    for i, c in enumerate(obj["max_cones"], 1):
        if not isinstance(c, list):
            raise FanParseError(f"cone {i} must be a list of ray indices")
        cones.append(tuple(_int(x, f"cone {i} entry") for x in c))
    name = obj.get("name")
    if name is not None and not isinstance(name, str):
        raise FanParseError("name must be a string")
    doc = FanDocument(dim, tuple(rays), tuple(cones), name)
    doc.to_fan()
    return doc


def parse_fan_file(source) -> FanDocument:
    """Parse a fan document from a path, ``-`` for stdin, or literal JSON text."""
    if isinstance(source, Path) or (isinstance(source, str) and not source.lstrip().startswith("{")):
        text = sys.stdin.read() if str(source) == "-" else Path(source).read_text(encoding="utf-8")
    else:
        text = source
    return parse_fan_text(text)


def family_document(pairs: Sequence[tuple]) -> FanDocument:
    """Document for a family or a product of families given as (name, param) pairs."""
    if not pairs:
        raise ValueError("no family given")
    fan = None
    names = []
    for fam, param in pairs:
        f = make_family(fam, int(param))
        names.append(f"{fam}({int(param)})")
        fan = f if fan is None else product_fan(fan, f)
    return FanDocument.from_fan(fan, " x ".join(names))


# ----------------------------------------------------------------------------
# Reports
# ----------------------------------------------------------------------------

def _cone(c):
    return list(c)


def _cone_str(c):
    return "{" + ",".join(map(str, c)) + "}"


def _class_report(fan, cls):
    return {
        "cones": [_cone(c) for c in cls.cones],
        "generators": list(cls.monoid.generator_indices),
        "sigma_max": _cone(cls.sigma_max),
        "orbit_dimensions": list(cls.dimension_range),
    }


def _gens_str(gens):
    return "<" + ", ".join(f"[D{i}]" for i in gens) + ">" if gens else "<0>"


def _require_complete(fan):
    if not is_complete(fan):
        raise IncompleteFanError("fan is not complete; this command requires a complete fan")


def report_clgroup(fan, opts):
    _require_complete(fan)
    cg = compute_class_group(fan)
    classes = [str(cg.divisor_class(i)) for i in range(1, fan.n_rays + 1)]
    rep = {"command": "clgroup", "free_rank": cg.free_rank, "torsion": list(cg.torsion),
           "group": cg.describe(), "divisor_classes": classes}
    lines = [f"Cl(X) = {cg.describe()}"]
    lines += [f"[D{i}] = {c}" for i, c in enumerate(classes, 1)]
    return rep, "\n".join(lines)


def report_roots(fan, opts):
    _require_complete(fan)
    rs = demazure_roots(fan)
    roots = [{"m": list(r.m), "eta": r.eta_index, "semisimple": r.semisimple} for r in rs]
    nss = sum(r.semisimple for r in rs)
    rep = {"command": "roots", "count": len(rs), "semisimple_count": nss, "roots": roots}
    lines = [f"{len(rs)} roots ({nss} semisimple)"]
    for r in rs:
        tag = " semisimple" if r.semisimple else ""
        lines.append(f"m = {tuple(r.m)}  eta = v{r.eta_index}{tag}")
    return rep, "\n".join(lines)


def report_upsilon(fan, opts):
    _require_complete(fan)
    cg = compute_class_group(fan)
    ups = upsilon(fan, cg)
    entries = [{"generators": list(e.monoid.generator_indices), "cones": [_cone(c) for c in e.cones]}
               for e in ups]
    rep = {"command": "upsilon", "count": len(ups), "entries": entries}
    lines = [f"|Upsilon| = {len(ups)}"]
    for e in entries:
        cones = " ".join(_cone_str(c) for c in e["cones"])
        lines.append(f"{_gens_str(e['generators'])}: {cones}")
    return rep, "\n".join(lines)


def _aut0_classes(fan, cg, oracle):
    if oracle == "bfs":
        return classes_from_partition(fan, cg, bfs_oracle_classification(fan))
    return classify_aut0(fan, cg)


def report_classify(fan, opts):
    _require_complete(fan)
    cg = compute_class_group(fan)
    classes = _aut0_classes(fan, cg, opts.oracle)
    if len(classes) == 1:
        verdict = "Aut⁰ acts transitively"
    else:
        verdict = f"Aut⁰ has {len(classes)} orbits"
    rep = {"command": "classify", "oracle": opts.oracle, "cone_count": len(fan.cones),
           "classes": [_class_report(fan, c) for c in classes], "verdict": verdict}
    noun = "class" if len(classes) == 1 else "classes"
    lines = [f"{len(classes)} {noun}, {len(fan.cones)} cones"]
    for k, c in enumerate(rep["classes"]):
        cones = " ".join(_cone_str(x) for x in c["cones"])
        lo, hi = c["orbit_dimensions"]
        lines.append(f"class {k}: Gamma = {_gens_str(c['generators'])}, sigma_max = "
                     f"{_cone_str(c['sigma_max'])}, orbit dims {lo}..{hi}, cones {cones}")
    lines.append(verdict)
    return rep, "\n".join(lines)


def report_classify_aut(fan, opts):
    _require_complete(fan)
    cg = compute_class_group(fan)
    classes = _aut0_classes(fan, cg, opts.oracle)
    index = {c.cones: k for k, c in enumerate(classes)}
    merged = classify_aut(fan, cg, classes)
    groups = [[index[c.cones] for c in g] for g in merged]
    rep = {"command": "classify-aut", "aut0_classes": [_class_report(fan, c) for c in classes],
           "aut_classes": groups}
    lines = [f"{len(groups)} Aut-orbits from {len(classes)} Aut⁰-orbits"]
    for k, g in enumerate(groups):
        cones = " ".join(_cone_str(c) for i in g for c in classes[i].cones)
        lines.append(f"orbit {k}: Aut⁰-classes {g}, cones {cones}")
    return rep, "\n".join(lines)


def poset_dot(fan, classes, poset) -> str:
    lines = ["digraph orbit_closures {"]
    for k, c in enumerate(classes):
        label = f"{_gens_str(c.monoid.generator_indices)}\\nsigma_max = {_cone_str(c.sigma_max)}"
        lines.append(f'  n{k} [label="{label}"];')
    for i, j in poset.reduction:
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines)


def report_poset(fan, opts):
    _require_complete(fan)
    cg = compute_class_group(fan)
    classes = _aut0_classes(fan, cg, opts.oracle)
    poset = closure_poset(classes)
    rep = {"command": "poset", "classes": [_class_report(fan, c) for c in classes],
           "order": sorted(list(p) for p in poset.order),
           "covers": [list(p) for p in poset.reduction]}
    if opts.dot:
        return rep, poset_dot(fan, classes, poset)
    lines = [f"{len(classes)} classes, {len(poset.reduction)} cover relations"]
    for i, j in poset.reduction:
        lines.append(f"class {i} < class {j}")
    return rep, "\n".join(lines)


def report_symmetries(fan, opts):
    syms = fan_symmetries(fan)
    rep = {"command": "symmetries", "order": len(syms),
           "symmetries": [{"perm": list(s.perm), "matrix": [list(r) for r in s.matrix]} for s in syms]}
    lines = [f"|Aut(N, fan)| = {len(syms)}"]
    for s in syms:
        lines.append(f"f = {list(s.perm)}  psi = {[list(r) for r in s.matrix]}")
    return rep, "\n".join(lines)


def report_transitivity(fan, opts):
    _require_complete(fan)
    cg = compute_class_group(fan)
    trans = is_transitive(fan, cg)
    dec = decompose_product(fan, cg)
    rep = {"command": "transitivity", "transitive": trans,
           "product": list(dec) if dec is not None else None}
    if trans and dec is not None:
        text = f"transitive; X ≅ {describe_product(dec)}"
    elif trans:
        text = "transitive; product decomposition not found"
    else:
        n = len(classify_aut(fan, cg, classify_aut0(fan, cg)))
        text = f"not transitive ({n} Aut-orbits)"
    return rep, text


REPORTS = {
    "clgroup": report_clgroup,
    "roots": report_roots,
    "upsilon": report_upsilon,
    "classify": report_classify,
    "classify-aut": report_classify_aut,
    "poset": report_poset,
    "symmetries": report_symmetries,
    "transitivity": report_transitivity,
}


# ----------------------------------------------------------------------------
# Argument handling
# ----------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="toricorbits", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    family = argparse.ArgumentParser(add_help=False)
    family.add_argument("--family", action="append", default=[], choices=sorted(FAMILIES))
    family.add_argument("--param", action="append", default=[], type=int)
    gen = sub.add_parser("generate", parents=[family], help="emit a fan document for a family")
    gen.add_argument("tokens", nargs="*", help="family/parameter pairs, e.g. pp 1 pp 2")
    for name in COMMANDS[:-1]:
        p = sub.add_parser(name, parents=[family])
        p.add_argument("fan_file", nargs="?", help="fan JSON file, or - for stdin")
        p.add_argument("--json", action="store_true", help="structured output")
        if name in ("classify", "classify-aut", "poset"):
            p.add_argument("--oracle", choices=("monoid", "bfs"), default="monoid")
        if name == "poset":
            p.add_argument("--dot", action="store_true", help="emit a DOT digraph")
    return parser


def _family_pairs(opts) -> list:
    if len(opts.family) != len(opts.param):
        raise ValueError("each --family needs exactly one --param")
    return list(zip(opts.family, opts.param))


def _load(opts) -> FanDocument:
    pairs = _family_pairs(opts)
    if pairs:
        if opts.fan_file:
            raise ValueError("give either a fan file or --family, not both")
        return family_document(pairs)
    if not opts.fan_file:
        raise ValueError("no fan given: pass a fan file or --family/--param")
    return parse_fan_file(Path(opts.fan_file) if opts.fan_file != "-" else "-")


def run_command(argv: Sequence[str], out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    opts = _build_parser().parse_args(list(argv))
    try:
        if opts.command == "generate":
            tokens = opts.tokens
            if len(tokens) % 2:
                raise ValueError("generate expects family/parameter pairs")
            pairs = _family_pairs(opts) + [(tokens[k], int(tokens[k + 1]))
                                           for k in range(0, len(tokens), 2)]
            out.write(family_document(pairs).to_json())
            return EXIT_OK
        fan = _load(opts).to_fan()
        rep, text = REPORTS[opts.command](fan, opts)
    except (FanParseError, FanValidationError, ValueError, OSError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INVALID
    except IncompleteFanError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_PRECONDITION
    if opts.json:
        out.write(json.dumps(rep, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
    else:
        out.write(text + "\n")
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run_command(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
