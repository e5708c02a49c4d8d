"""Analysis pipeline and report emission.

analyze_file runs the full computation for every parameter of a parsed
file and collects named pass/fail checks; render_text and render_machine
turn the result into deterministic bytes.  Identical input bytes give
identical output bytes in both formats.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from . import groups
from .abelian import AbHom, FinAbGroup
from .clifford import CliffordError
from .fileformat import ParameterFile, SyntheticBlock
from .lifting import (CoarseCounts, LiftingError, PairingOutcome,
                      RefinedPacket, TwistGroup, alpha_from_twist_chars,
                      build_coarse_packet, build_lifting, coarse_structure,
                      construct_pairing, multiplicity_bridge,
                      refined_decomposition)
from .oracle import OracleMismatch, OracleUnsupported, oracle_comparison
from .params import ComponentGroupData, component_group


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class ParameterReport:
    name: str
    data: ComponentGroupData
    counts: CoarseCounts | None
    s_tilde_desc: str | None
    pairing: PairingOutcome | None
    refined: RefinedPacket | None
    notes: tuple
    checks: tuple


@dataclass(frozen=True)
class SyntheticReport:
    name: str
    order: int
    sub_order: int
    multiplicities: tuple          # (tau rep row, m) pairs
    checks: tuple


@dataclass(frozen=True)
class Report:
    twist_factors: tuple
    parameters: tuple
    synthetic: tuple

    @property
    def all_passed(self) -> bool:
        return all(c.passed for p in self.parameters for c in p.checks) and \
            all(c.passed for b in self.synthetic for c in b.checks)

    def failures(self):
        out = []
        for p in self.parameters:
            out.extend(f"{p.name}: {c.name}: {c.detail}"
                       for c in p.checks if not c.passed)
        for b in self.synthetic:
            out.extend(f"{b.name}: {c.name}: {c.detail}"
                       for c in b.checks if not c.passed)
        return out


def _ab_to_fingroup(ab: FinAbGroup) -> groups.FinGroup:
    elems = [tuple(e) for e in ab.elements()]
    return groups.from_elements(elems, ab.add, ab.zero)


def _twist_group(pf: ParameterFile) -> TwistGroup:
    amb = FinAbGroup(pf.twist_factors)
    return TwistGroup(amb, pf.designated)


def _analyze_parameter(rec, X: TwistGroup, oracle_mats, force_oracle: bool,
                       nonarchimedean: bool) -> ParameterReport:
    checks = []
    notes = []
    data = component_group(rec.parameter)

    if oracle_mats is not None:
        try:
            comp = oracle_comparison(oracle_mats, rec.parameter)
            for name, ok, detail in comp.checks:
                checks.append(Check(f"oracle:{name}", ok, detail))
        except (OracleUnsupported, OracleMismatch) as exc:
            checks.append(Check("oracle:run", False, str(exc)))
    elif force_oracle:
        checks.append(Check("oracle:run", False,
                            "cross-check requested but no realization bundled"))

    missing = [s.ident for s in rec.parameter.carriers() if s.twist_char is None]
    if missing:
        notes.append(f"no twist characters for {', '.join(missing)}; "
                     "lifting stages skipped")
        return ParameterReport(rec.name, data, None, None, None, None,
                               tuple(notes), tuple(checks))

    try:
        alpha = alpha_from_twist_chars(data, X)
        datum = build_lifting(data, alpha, X, theta_element=rec.theta_element,
                              theta_twist=rec.theta_twist)
    except LiftingError as exc:
        checks.append(Check("twist-map-range", False, str(exc)))
        return ParameterReport(rec.name, data, None, None, None, None,
                               tuple(notes), tuple(checks))
    checks.append(Check("twist-map-range", True,
                        "image lies in the designated subgroup and the "
                        "sequence is exact"))

    counts = coarse_structure(datum, nonarchimedean=nonarchimedean)
    count_ok = (counts.orbit_size * counts.orbit_count == data.s_bar.order
                and counts.coarse_total
                == counts.orbit_count * counts.quotient_order
                and counts.quotient_order * counts.image_order_in_x
                == counts.x_order)
    if counts.comparison == "=":
        checks.append(Check("coarse-count-identity", count_ok,
                            f"orbit_size*orbit_count = {data.s_bar.order} and "
                            f"coarse_total = {counts.coarse_total}"))
    else:
        notes.append("archimedean mode: counts reported as upper bounds")

    packet = build_coarse_packet(datum)
    pairing = construct_pairing(datum, packet)
    if not pairing.succeeded:
        ob = pairing.obstruction
        checks.append(Check("pairing-consistency", False,
                            f"{ob.detail}; walk {' -> '.join(ob.walk)}"))
        return ParameterReport(rec.name, data, counts,
                               datum.s_tilde.describe(), pairing, None,
                               tuple(notes), tuple(checks))
    checks.append(Check("pairing-consistency", True,
                        "edge constraints admit an assignment"))

    if rec.generic_marked:
        a = dict(pairing.assignment.assignment)
        zero = datum.s_tilde.zero if datum.s_tilde.rank else ()
        ok = a.get(packet.generic_label) == zero
        checks.append(Check("generic-normalization", ok,
                            f"generic label {packet.generic_label} carries "
                            "the trivial character" if ok else
                            f"generic label {packet.generic_label} carries "
                            f"{a.get(packet.generic_label)}"))

    refined = None
    try:
        refined = refined_decomposition(datum, packet, pairing)
        checks.append(Check(
            "refined-partition", True,
            f"{counts.quotient_order} parts of size {len(refined.subset)}"))
    except LiftingError as exc:
        checks.append(Check("refined-partition", False, str(exc)))

    # restriction multiplicities on the abelian component group itself
    fin = _ab_to_fingroup(data.s_bar)
    tilde_idx = sorted(fin.index[tuple(e)] for e in datum.s_tilde_elements)
    table = multiplicity_bridge(fin, tilde_idx)
    mults = sorted({row.multiplicity for row in table.rows})
    checks.append(Check("abelian-multiplicity-one",
                        table.all_passed and mults == [1],
                        f"multiplicities {mults} over an abelian group"))

    return ParameterReport(rec.name, data, counts, datum.s_tilde.describe(),
                           pairing, refined, tuple(notes), tuple(checks))


def _analyze_synthetic(block: SyntheticBlock) -> SyntheticReport:
    from .corpus import rebuild_group
    g = rebuild_group(block)
    sub = tuple(sorted(block.s_tilde))
    checks = []
    try:
        alpha_q = None
        if block.alpha_matrix is not None:
            from .clifford import build_context
            ctx = build_context(g, sub)
            alpha_q = AbHom(ctx.q_ab, FinAbGroup(block.alpha_target),
                            block.alpha_matrix)
        table = multiplicity_bridge(g, sub, alpha_q=alpha_q,
                                    declared=dict(block.declared) or None)
    except (CliffordError, LiftingError, ValueError) as exc:
        checks.append(Check("bridge", False, str(exc)))
        return SyntheticReport(block.name, g.order, len(sub), (),
                               tuple(checks))
    for name, ok, detail in table.checks:
        checks.append(Check(name, ok, detail))
    mults = tuple(sorted({(r.tau_row, r.multiplicity) for r in table.rows}))
    return SyntheticReport(block.name, g.order, len(sub), mults,
                           tuple(checks))


def analyze_file(pf: ParameterFile, nonarchimedean: bool = True,
                 force_oracle: bool = False) -> Report:
    X = _twist_group(pf)
    mats = dict(pf.oracles)
    params = tuple(
        _analyze_parameter(rec, X, mats.get(rec.name), force_oracle,
                           nonarchimedean)
        for rec in pf.parameters)
    synth = tuple(_analyze_synthetic(b) for b in pf.synthetic)
    return Report(twist_factors=pf.twist_factors, parameters=params,
                  synthetic=synth)


# ---------------------------------------------------------------------------
# text emission


def _fmt_vec(v) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


def _table(rows, indent="  ") -> list:
    if not rows:
        return []
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return [indent + "  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip()
            for r in rows]


def render_text(report: Report) -> str:
    out = []
    out.append(f"twist group X of order "
               f"{FinAbGroup(report.twist_factors).order} "
               f"[{FinAbGroup(report.twist_factors).describe()}]")
    for p in report.parameters:
        param = p.data.parameter
        out.append("")
        out.append(f"parameter {p.name}  [{param.group_kind}, n={param.n}]")
        rows = [(s.ident, f"dim {s.dim}", s.sd_type,
                 f"mult {s.multiplicity}",
                 _fmt_vec(s.twist_char) if s.twist_char is not None else "-")
                for s in param.summands]
        out.extend(_table(rows))
        out.append(f"  A_φ ≅ {p.data.a_phi.describe()}")
        out.append(f"  S̄_φ ≅ {p.data.s_bar.describe()}")
        basis = [(lab, "->", _fmt_vec(vec)) for lab, vec in
                 zip(p.data.basis_labels, p.data.a_basis_vectors)]
        out.extend(_table(basis, indent="    "))
        if p.data.theta0_coset_nonempty:
            out.append("  theta0 coset: nonempty")
        if p.s_tilde_desc is not None:
            out.append(f"  S̄_φ̃ ≅ {p.s_tilde_desc}")
        if p.counts is not None:
            c = p.counts
            out.append(f"  mode = {c.mode} (counts {c.comparison})")
            out.append(f"  orbit_size = {c.orbit_size}")
            out.append(f"  orbit_count = {c.orbit_count}")
            out.append(f"  |X| = {c.x_order}, image order = "
                       f"{c.image_order_in_x}, quotient = {c.quotient_order}")
            out.append(f"  coarse_total = {c.coarse_total}")
        if p.pairing is not None and p.pairing.succeeded:
            asg = p.pairing.assignment
            out.append("  pairing:")
            out.extend(_table([(lab, "->", _fmt_vec(val))
                               for lab, val in asg.assignment], indent="    "))
            if asg.free_choices:
                out.append("  free transversal choices: "
                           + ", ".join(asg.free_choices))
            else:
                out.append("  free transversal choices: none")
        if p.refined is not None:
            out.append(f"  refined subset: {', '.join(p.refined.subset)}")
            out.append(f"  parts: {len(p.refined.parts)}")
        for note in p.notes:
            out.append(f"  note: {note}")
        for c in p.checks:
            mark = "pass" if c.passed else "FAIL"
            out.append(f"  [{mark}] {c.name}: {c.detail}")
    for b in report.synthetic:
        out.append("")
        out.append(f"synthetic {b.name}  [order {b.order}, subgroup "
                   f"{b.sub_order}]")
        if b.multiplicities:
            out.extend(_table([(f"tau row {t}", f"m = {m}")
                               for t, m in b.multiplicities]))
        for c in b.checks:
            mark = "pass" if c.passed else "FAIL"
            out.append(f"  [{mark}] {c.name}: {c.detail}")
    out.append("")
    out.append("all checks passed" if report.all_passed
               else f"{len(report.failures())} check(s) FAILED")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# machine emission


def _checks_doc(checks) -> list:
    return [{"name": c.name, "passed": int(c.passed), "detail": c.detail}
            for c in checks]


def _parameter_doc(p: ParameterReport) -> dict:
    param = p.data.parameter
    doc = {
        "name": p.name,
        "group_kind": param.group_kind,
        "n": param.n,
        "component_group": {
            "a_phi": list(p.data.a_phi.invariant_factors),
            "s_bar": list(p.data.s_bar.invariant_factors),
            "s_bar_describe": p.data.s_bar.describe(),
            "sigma0": list(p.data.s_bar_sigma0.invariant_factors),
            "basis_labels": list(p.data.basis_labels),
            "basis_vectors": [list(v) for v in p.data.a_basis_vectors],
            "theta0_coset_nonempty": int(p.data.theta0_coset_nonempty),
        },
        "checks": _checks_doc(p.checks),
    }
    if p.notes:
        doc["notes"] = list(p.notes)
    if p.counts is not None:
        c = p.counts
        doc["counts"] = {
            "mode": c.mode, "comparison": c.comparison,
            "orbit_size": c.orbit_size, "orbit_count": c.orbit_count,
            "x_order": c.x_order, "image_order_in_x": c.image_order_in_x,
            "quotient_order": c.quotient_order,
            "coarse_total": c.coarse_total,
        }
    if p.s_tilde_desc is not None:
        doc["s_tilde"] = p.s_tilde_desc
    if p.pairing is not None:
        if p.pairing.succeeded:
            asg = p.pairing.assignment
            doc["pairing"] = {
                "assignment": [[lab, list(val)] for lab, val in asg.assignment],
                "free_choices": list(asg.free_choices),
            }
        else:
            ob = p.pairing.obstruction
            doc["pairing"] = {
                "obstruction": {
                    "walk": list(ob.walk),
                    "edge_kinds": list(ob.edge_kinds),
                    "total_twist": list(ob.total_twist),
                },
            }
    if p.refined is not None:
        doc["refined"] = {
            "subset": list(p.refined.subset),
            "parts": [list(part) for part in p.refined.parts],
            "coset_reps": [list(r) for r in p.refined.coset_reps],
        }
    return doc


def render_machine(report: Report) -> str:
    doc = {
        "version": 1,
        "parameters": [_parameter_doc(p) for p in report.parameters],
    }
    if report.synthetic:
        doc["synthetic"] = [
            {"name": b.name, "order": b.order, "subgroup_order": b.sub_order,
             "multiplicities": [list(p) for p in b.multiplicities],
             "checks": _checks_doc(b.checks)}
            for b in report.synthetic]
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"
