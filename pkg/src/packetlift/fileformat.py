"""Parameter description files.

The grammar is JSON restricted to objects, arrays, strings, and integers:
no floats, no booleans, no null.  Every number that reaches arithmetic is
exact; rational matrix entries are written as strings like "-1/2".
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .params import (GROUP_KINDS, ClassicalParameter, ParameterError,
                     SummandSpec, UnsupportedParameter)

FILE_VERSION = 1


class FileFormatError(ValueError):
    """Syntax or schema problem, with position information when known."""

    def __init__(self, message: str, line: int | None = None,
                 column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class ParameterRecord:
    name: str
    parameter: ClassicalParameter
    generic_marked: bool = True
    theta_element: str | None = None
    theta_twist: tuple | None = None


@dataclass(frozen=True)
class SyntheticBlock:
    """Raw (S_phi, S_tilde, alpha) input for the multiplicity bridge."""

    name: str
    labels: tuple
    table: tuple                     # multiplication table, index form
    s_tilde: tuple                   # element indices of the subgroup
    alpha_target: tuple              # invariant factors
    alpha_matrix: tuple | None       # rows = target coords, or None
    declared: tuple = ()             # (tau_row, multiplicity) pairs


@dataclass(frozen=True)
class ParameterFile:
    version: int
    twist_factors: tuple
    designated: tuple | None         # generators of X inside the ambient
    parameters: tuple
    oracles: tuple                   # (parameter name, generator matrices)
    synthetic: tuple


def _position_of(text: str, token: str) -> tuple[int, int]:
    pos = text.find(token)
    if pos < 0:
        return 1, 1
    line = text.count("\n", 0, pos) + 1
    column = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, column


def _load_restricted(text: str):
    def reject_float(tok: str):
        line, column = _position_of(text, tok)
        raise FileFormatError("floating-point numbers are not allowed",
                              line, column)

    def reject_constant(tok: str):
        line, column = _position_of(text, tok)
        raise FileFormatError(f"constant {tok} is not allowed", line, column)

    try:
        doc = json.loads(text, parse_float=reject_float,
                         parse_constant=reject_constant)
    except json.JSONDecodeError as exc:
        raise FileFormatError(exc.msg, exc.lineno, exc.colno) from None
    _reject_bools(doc, text)
    return doc


def _reject_bools(node, text):
    if isinstance(node, bool) or node is None:
        token = {True: "true", False: "false", None: "null"}[node]
        line, column = _position_of(text, token)
        raise FileFormatError(
            "booleans and null are not allowed; use integers 0/1",
            line, column)
    if isinstance(node, dict):
        for v in node.values():
            _reject_bools(v, text)
    elif isinstance(node, list):
        for v in node:
            _reject_bools(v, text)


def _want(obj, key, kind, where):
    if key not in obj:
        raise FileFormatError(f"{where}: missing key {key!r}")
    val = obj[key]
    if kind is int and isinstance(val, bool):
        raise FileFormatError(f"{where}: key {key!r} must be an integer")
    if not isinstance(val, kind):
        raise FileFormatError(
            f"{where}: key {key!r} must be {kind.__name__}, got "
            f"{type(val).__name__}")
    return val


def _int_list(val, where):
    if not isinstance(val, list) or any(
            isinstance(v, bool) or not isinstance(v, int) for v in val):
        raise FileFormatError(f"{where} must be an array of integers")
    return tuple(val)


_RAT = re.compile(r"^-?\d+(/\d+)?$")


def _entry_to_fraction(val, where):
    if isinstance(val, bool):
        raise FileFormatError(f"{where}: matrix entries must be integers or "
                              "rational strings")
    if isinstance(val, int):
        return Fraction(val)
    if isinstance(val, str) and _RAT.match(val):
        try:
            return Fraction(val)
        except ZeroDivisionError:
            raise FileFormatError(f"{where}: zero denominator in {val!r}") \
                from None
    raise FileFormatError(
        f"{where}: bad matrix entry {val!r} (use an integer or \"p/q\")")


def _parse_summand(obj, twist_factors, where) -> SummandSpec:
    ident = _want(obj, "id", str, where)
    where = f"{where} (summand {ident!r})"
    dim = _want(obj, "dim", int, where)
    sd_type = _want(obj, "sd_type", str, where)
    mult = obj.get("multiplicity", 1)
    if isinstance(mult, bool) or not isinstance(mult, int):
        raise FileFormatError(f"{where}: multiplicity must be an integer")
    twist = None
    if "twist_char" in obj:
        exps = _int_list(obj["twist_char"], f"{where}: twist_char")
        if len(exps) != len(twist_factors):
            raise FileFormatError(
                f"{where}: twist_char has {len(exps)} exponents, X has rank "
                f"{len(twist_factors)}")
        for e, d in zip(exps, twist_factors):
            if not 0 <= e < d:
                raise FileFormatError(
                    f"{where}: twist_char exponent {e} out of range for Z/{d}")
        twist = exps
    unknown = set(obj) - {"id", "dim", "sd_type", "multiplicity", "twist_char"}
    if unknown:
        raise FileFormatError(f"{where}: unknown keys {sorted(unknown)}")
    try:
        return SummandSpec(ident=ident, dim=dim, sd_type=sd_type,
                           multiplicity=mult, twist_char=twist)
    except ParameterError as exc:
        raise FileFormatError(f"{where}: {exc}") from None


def _parse_parameter(obj, twist_factors, index) -> ParameterRecord:
    where = f"parameters[{index}]"
    name = _want(obj, "name", str, where)
    where = f"parameter {name!r}"
    kind = _want(obj, "group_kind", str, where)
    if kind not in GROUP_KINDS:
        raise FileFormatError(f"{where}: unknown group_kind {kind!r}")
    n = _want(obj, "n", int, where)
    raw_summands = _want(obj, "summands", list, where)
    summands = tuple(_parse_summand(s, twist_factors, where)
                     for s in raw_summands)
    discrete = obj.get("discrete", 0)
    if discrete not in (0, 1):
        raise FileFormatError(f"{where}: discrete must be 0 or 1")
    generic = obj.get("generic", 1)
    if generic not in (0, 1):
        raise FileFormatError(f"{where}: generic must be 0 or 1")
    theta_element = obj.get("theta_element")
    if theta_element is not None and not isinstance(theta_element, str):
        raise FileFormatError(f"{where}: theta_element must be a summand id")
    theta_twist = None
    if "theta_twist" in obj:
        theta_twist = _int_list(obj["theta_twist"], f"{where}: theta_twist")
        if len(theta_twist) != len(twist_factors):
            raise FileFormatError(f"{where}: theta_twist has wrong rank")
    unknown = set(obj) - {"name", "group_kind", "n", "summands", "discrete",
                          "generic", "theta_element", "theta_twist"}
    if unknown:
        raise FileFormatError(f"{where}: unknown keys {sorted(unknown)}")
    param = ClassicalParameter(group_kind=kind, n=n, summands=summands,
                               discrete=bool(discrete))
    try:
        param.validate()
    except UnsupportedParameter:
        raise
    except ParameterError as exc:
        raise FileFormatError(f"{where}: {exc}") from None
    if theta_element is not None and theta_element not in {
            s.ident for s in summands}:
        raise FileFormatError(
            f"{where}: theta_element {theta_element!r} is not a summand id")
    return ParameterRecord(name=name, parameter=param,
                           generic_marked=bool(generic),
                           theta_element=theta_element,
                           theta_twist=theta_twist)


def _parse_matrix(rows, where):
    if not isinstance(rows, list) or not rows:
        raise FileFormatError(f"{where}: matrix must be a nonempty array")
    out = []
    for r in rows:
        if not isinstance(r, list) or len(r) != len(rows):
            raise FileFormatError(f"{where}: matrix must be square")
        out.append(tuple(_entry_to_fraction(v, where) for v in r))
    return tuple(out)


def _parse_synthetic(obj, index) -> SyntheticBlock:
    where = f"synthetic[{index}]"
    name = _want(obj, "name", str, where)
    where = f"synthetic block {name!r}"
    labels = _want(obj, "labels", list, where)
    if not all(isinstance(x, (str, int)) and not isinstance(x, bool)
               for x in labels):
        raise FileFormatError(f"{where}: labels must be strings or integers")
    table = _want(obj, "table", list, where)
    n = len(labels)
    tbl = []
    for row in table:
        tbl.append(tuple(_int_list(row, f"{where}: table row")))
    if len(tbl) != n or any(len(r) != n for r in tbl):
        raise FileFormatError(f"{where}: table must be {n}x{n}")
    s_tilde = _int_list(_want(obj, "s_tilde", list, where), f"{where}: s_tilde")
    if any(not 0 <= i < n for i in s_tilde):
        raise FileFormatError(f"{where}: s_tilde indices out of range")
    alpha_target = _int_list(obj.get("alpha_target", []),
                             f"{where}: alpha_target")
    alpha_matrix = None
    if "alpha_matrix" in obj:
        rows = _want(obj, "alpha_matrix", list, where)
        alpha_matrix = tuple(_int_list(r, f"{where}: alpha_matrix row")
                             for r in rows)
        if len(alpha_matrix) != len(alpha_target):
            raise FileFormatError(
                f"{where}: alpha_matrix needs one row per target factor")
    declared = []
    for pair in obj.get("declared", []):
        pair = _int_list(pair, f"{where}: declared entry")
        if len(pair) != 2:
            raise FileFormatError(f"{where}: declared entries are [row, m] pairs")
        declared.append(pair)
    unknown = set(obj) - {"name", "labels", "table", "s_tilde", "alpha_target",
                          "alpha_matrix", "declared"}
    if unknown:
        raise FileFormatError(f"{where}: unknown keys {sorted(unknown)}")
    return SyntheticBlock(name=name, labels=tuple(labels), table=tuple(tbl),
                          s_tilde=s_tilde, alpha_target=alpha_target,
                          alpha_matrix=alpha_matrix, declared=tuple(declared))


def parse_parameter_file(text: str) -> ParameterFile:
    doc = _load_restricted(text)
    if not isinstance(doc, dict):
        raise FileFormatError("top level must be an object")
    version = _want(doc, "version", int, "file")
    if version != FILE_VERSION:
        raise FileFormatError(f"unsupported version {version}, expected "
                              f"{FILE_VERSION}")
    twist_factors = _int_list(_want(doc, "twist_group", list, "file"),
                              "twist_group")
    if any(d < 2 for d in twist_factors):
        raise FileFormatError("twist_group factors must be >= 2")
    designated = None
    if "designated" in doc:
        rows = _want(doc, "designated", list, "file")
        designated = tuple(_int_list(r, "designated generator") for r in rows)
        for g in designated:
            if len(g) != len(twist_factors):
                raise FileFormatError("designated generator has wrong rank")
    raw_params = _want(doc, "parameters", list, "file")
    records = tuple(_parse_parameter(p, twist_factors, i)
                    for i, p in enumerate(raw_params))
    names = [r.name for r in records]
    if len(set(names)) != len(names):
        raise FileFormatError("parameter names must be unique")

    oracles = []
    for ob in doc.get("oracles", []):
        where = "oracles entry"
        if not isinstance(ob, dict):
            raise FileFormatError(f"{where}: must be an object")
        pname = _want(ob, "parameter", str, where)
        if pname not in names:
            raise FileFormatError(
                f"oracle references unknown parameter {pname!r}")
        gens = _want(ob, "generators", list, where)
        mats = tuple(_parse_matrix(g, f"oracle for {pname!r}") for g in gens)
        unknown = set(ob) - {"parameter", "generators"}
        if unknown:
            raise FileFormatError(f"{where}: unknown keys {sorted(unknown)}")
        oracles.append((pname, mats))

    synthetic = tuple(_parse_synthetic(b, i)
                      for i, b in enumerate(doc.get("synthetic", [])))
    syn_names = [b.name for b in synthetic]
    if len(set(syn_names)) != len(syn_names):
        raise FileFormatError("synthetic block names must be unique")

    unknown = set(doc) - {"version", "twist_group", "designated", "parameters",
                          "oracles", "synthetic"}
    if unknown:
        raise FileFormatError(f"file: unknown top-level keys {sorted(unknown)}")

    return ParameterFile(version=version, twist_factors=twist_factors,
                         designated=designated, parameters=records,
                         oracles=tuple(oracles), synthetic=synthetic)


def _fraction_to_entry(frac: Fraction):
    if frac.denominator == 1:
        return int(frac)
    return f"{frac.numerator}/{frac.denominator}"


def serialize_parameter_file(pf: ParameterFile) -> str:
    """Canonical text for a parsed file; parse(serialize(parse(x))) == parse(x)."""
    doc = {"version": pf.version, "twist_group": list(pf.twist_factors)}
    if pf.designated is not None:
        doc["designated"] = [list(g) for g in pf.designated]
    params = []
    for rec in pf.parameters:
        p = rec.parameter
        entry = {
            "name": rec.name,
            "group_kind": p.group_kind,
            "n": p.n,
            "summands": [],
            "discrete": int(p.discrete),
            "generic": int(rec.generic_marked),
        }
        for s in p.summands:
            sd = {"id": s.ident, "dim": s.dim, "sd_type": s.sd_type,
                  "multiplicity": s.multiplicity}
            if s.twist_char is not None:
                sd["twist_char"] = list(s.twist_char)
            entry["summands"].append(sd)
        if rec.theta_element is not None:
            entry["theta_element"] = rec.theta_element
        if rec.theta_twist is not None:
            entry["theta_twist"] = list(rec.theta_twist)
        params.append(entry)
    doc["parameters"] = params
    if pf.oracles:
        doc["oracles"] = [
            {"parameter": name,
             "generators": [[[_fraction_to_entry(v) for v in row]
                             for row in mat] for mat in mats]}
            for name, mats in pf.oracles]
    if pf.synthetic:
        blocks = []
        for b in pf.synthetic:
            entry = {"name": b.name, "labels": list(b.labels),
                     "table": [list(r) for r in b.table],
                     "s_tilde": list(b.s_tilde),
                     "alpha_target": list(b.alpha_target)}
            if b.alpha_matrix is not None:
                entry["alpha_matrix"] = [list(r) for r in b.alpha_matrix]
            if b.declared:
                entry["declared"] = [list(p) for p in b.declared]
            blocks.append(entry)
        doc["synthetic"] = blocks
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"
