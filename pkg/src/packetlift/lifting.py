"""Lifting exact sequence and packet structure.

Builds the kernel of the twist map on a component group, counts coarse
packet orbits, constructs the label pairing into the dual of the kernel
with twist/theta consistency (or returns an explicit obstruction), cuts
the refined coset decomposition, and bridges declared packet
multiplicities to restriction multiplicities via the Clifford engine.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import product

from .abelian import (AbHom, FinAbGroup, SubgroupData, characters, dual_group,
                      hom_kernel_image, subgroup_elements)
from .clifford import build_context, quotient_linear_characters, verify_clifford_suite
from .groups import FinGroup
from .params import ComponentGroupData

PIN = "<pinned>"  # virtual node carrying normalization constraints


class LiftingError(ValueError):
    """Ill-formed lifting input: bad domain, escaping image, broken packet."""


# ---------------------------------------------------------------------------
# twist groups


@dataclass(frozen=True)
class TwistGroup:
    """Group of twisting characters.

    `ambient` models the full character group a twist value may live in;
    `designated_generators` marks the subgroup X that images from the
    component group must stay inside.  None means X is all of ambient.
    """

    ambient: FinAbGroup
    designated_generators: tuple | None = None

    def __post_init__(self):
        if self.designated_generators is not None:
            gens = tuple(self.ambient.reduce(g)
                         for g in self.designated_generators)
            object.__setattr__(self, "designated_generators", gens)
            elems = subgroup_elements(self.ambient, gens)
        else:
            elems = frozenset(self.ambient.elements())
        object.__setattr__(self, "_x_elements", elems)

    @property
    def x_elements(self) -> frozenset:
        return self._x_elements

    @property
    def x_order(self) -> int:
        return len(self._x_elements)

    def contains(self, v) -> bool:
        return self.ambient.reduce(v) in self._x_elements


# ---------------------------------------------------------------------------
# the lifting datum: S_tilde = ker(alpha restricted to S_bar)


@dataclass(frozen=True)
class LiftingDatum:
    source: ComponentGroupData | None    # None for synthetic abelian inputs
    s_bar: FinAbGroup
    sigma0: FinAbGroup
    s_bar_embed: AbHom                   # s_bar -> sigma0
    twist: TwistGroup
    alpha: AbHom                         # sigma0 -> twist.ambient
    alpha_on_s_bar: AbHom
    s_tilde: FinAbGroup
    s_tilde_sub: SubgroupData            # s_tilde inside s_bar
    image_on_s_bar: SubgroupData         # alpha(s_bar) inside ambient
    image_on_sigma0: SubgroupData
    theta_element: object | None
    theta_twist: tuple | None            # twist value carried by the theta coset

    @property
    def s_tilde_elements(self) -> frozenset:
        return self.s_tilde_sub.elements()

    def image_subgroup_in_x(self) -> frozenset:
        """alpha(sigma0) cut down to the designated subgroup X."""
        return self.image_on_sigma0.elements() & self.twist.x_elements


def build_lifting(S, alpha: AbHom, X: TwistGroup, theta_element=None,
                  theta_twist=None) -> LiftingDatum:
    """Assemble the kernel datum of the twist map.

    S is either ComponentGroupData or a bare FinAbGroup (synthetic input,
    in which case the full group plays both roles).
    """
    if isinstance(S, ComponentGroupData):
        s_bar = S.s_bar
        sigma0 = S.s_bar_sigma0
        embed = S.s_bar_to_sigma0
        if theta_twist is not None and not S.theta0_coset_nonempty:
            raise LiftingError("theta twist supplied but the theta coset is empty")
    elif isinstance(S, FinAbGroup):
        s_bar = sigma0 = S
        embed = AbHom.identity(S)
    else:
        raise LiftingError(f"unsupported component input {type(S).__name__}")

    if alpha.source != sigma0:
        raise LiftingError(
            f"alpha domain {alpha.source.describe()} does not match "
            f"{sigma0.describe()}")
    if alpha.target != X.ambient:
        raise LiftingError(
            f"alpha target {alpha.target.describe()} is not the ambient "
            f"twist group {X.ambient.describe()}")

    alpha_on_s_bar = alpha.compose(embed)
    kernel, image = hom_kernel_image(alpha_on_s_bar)
    if kernel.group.order * image.group.order != s_bar.order:
        raise LiftingError("kernel/image orders break exactness")

    escaped = [v for v in sorted(image.elements()) if v not in X.x_elements]
    if escaped:
        raise LiftingError(
            f"alpha image escapes the designated twist subgroup at {escaped[0]}")

    for x in kernel.group.elements():
        if any(alpha_on_s_bar.apply(kernel.embed(x))):
            raise LiftingError("kernel embedding is not killed by alpha")

    _, image_sigma0 = hom_kernel_image(alpha)

    if theta_twist is not None:
        theta_twist = X.ambient.reduce(theta_twist)

    return LiftingDatum(
        source=S if isinstance(S, ComponentGroupData) else None,
        s_bar=s_bar, sigma0=sigma0, s_bar_embed=embed, twist=X,
        alpha=alpha, alpha_on_s_bar=alpha_on_s_bar,
        s_tilde=kernel.group, s_tilde_sub=kernel,
        image_on_s_bar=image, image_on_sigma0=image_sigma0,
        theta_element=theta_element, theta_twist=theta_twist)


def alpha_from_twist_chars(data: ComponentGroupData, X: TwistGroup) -> AbHom:
    """Assemble alpha on S_bar^{Sigma0} from per-summand twist values.

    Each carrier summand must declare twist_char as an element of the
    ambient twist group; for the orthogonal kinds the values must sum to
    zero so that the central sign pattern acts trivially.
    """
    carriers = data.parameter.carriers()
    values = []
    for s in carriers:
        if s.twist_char is None:
            raise LiftingError(f"summand {s.ident!r} lacks a twist character")
        values.append(X.ambient.reduce(s.twist_char))

    def a_of_sign_vector(v):
        out = X.ambient.zero
        for bit, val in zip(v, values):
            if bit:
                out = X.ambient.add(out, val)
        return out

    sigma0 = data.s_bar_sigma0
    if data.parameter.is_symplectic_kind:
        cols = [a_of_sign_vector(vec) for vec in data.a_basis_vectors]
    else:
        total = a_of_sign_vector(data.z_vector)
        if any(total):
            raise LiftingError(
                "twist characters do not vanish on the central sign pattern")
        k = data.k
        cols = [values[i] for i in range(k - 1)]
    if len(cols) != sigma0.rank:
        raise LiftingError("twist-character count does not match the domain")
    matrix = tuple(tuple(col[i] for col in cols)
                   for i in range(X.ambient.rank))
    return AbHom(sigma0, X.ambient, matrix)


# ---------------------------------------------------------------------------
# coarse packet counting


@dataclass(frozen=True)
class CoarseCounts:
    mode: str                  # "nonarchimedean" or "archimedean"
    comparison: str            # "=" exact, "<=" bounds only
    orbit_size: int
    orbit_count: int
    x_order: int
    image_order_in_x: int
    quotient_order: int
    coarse_total: int


def coarse_structure(L: LiftingDatum, nonarchimedean: bool = True) -> CoarseCounts:
    orbit_count = L.s_tilde.order
    orbit_size = L.s_bar.order // orbit_count
    if orbit_size * orbit_count != L.s_bar.order:
        raise LiftingError("orbit arithmetic does not factor the group order")
    inter = L.image_subgroup_in_x()
    x_order = L.twist.x_order
    quotient = x_order // len(inter)
    if quotient * len(inter) != x_order:
        raise LiftingError("image does not cut X into whole cosets")
    return CoarseCounts(
        mode="nonarchimedean" if nonarchimedean else "archimedean",
        comparison="=" if nonarchimedean else "<=",
        orbit_size=orbit_size, orbit_count=orbit_count,
        x_order=x_order, image_order_in_x=len(inter),
        quotient_order=quotient, coarse_total=orbit_count * quotient)


# ---------------------------------------------------------------------------
# coarse packets as labeled data


@dataclass
class CoarsePacket:
    """Label-level model of a coarse packet.

    twist_action maps (x, label) -> label for every x in the designated
    subgroup; theta_edges carry (src, dst, kappa) constraints where kappa
    is a character of S_tilde in exponent form; fiber_of optionally pins
    each label to its declared restriction fiber.
    """

    labels: tuple
    twist_action: dict
    theta_edges: tuple = ()
    generic_label: str | None = None
    fiber_of: dict | None = None
    coset_of: dict | None = None
    label_multiplicity: dict | None = None
    base_fibers: dict | None = None      # tau -> characters of s_bar above it
    central_label: str = "central-char"
    notes: tuple = ()


def _coset_tables(L: LiftingDatum):
    """Representatives and lookup for X / (alpha image cap X)."""
    inter = sorted(L.image_subgroup_in_x())
    amb = L.twist.ambient
    rep_of = {}
    reps = []
    for x in sorted(L.twist.x_elements):
        if x in rep_of:
            continue
        coset = sorted(amb.add(x, d) for d in inter)
        rep = coset[0]
        reps.append(rep)
        for y in coset:
            rep_of[y] = rep
    return tuple(sorted(reps)), rep_of


def _label(tau, w) -> str:
    t = ",".join(str(v) for v in tau)
    c = ",".join(str(v) for v in w)
    return f"pi[{t}|{c}]"


def build_coarse_packet(L: LiftingDatum, declare_fibers: bool = True,
                        include_theta: bool = True) -> CoarsePacket:
    """Canonical coarse packet: one label per (fiber, twist coset) pair."""
    dual = dual_group(L.s_tilde)
    taus = sorted(dual.elements())
    reps, rep_of = _coset_tables(L)
    amb = L.twist.ambient

    labels = tuple(_label(t, w) for t in taus for w in reps)
    coset_of = {_label(t, w): w for t in taus for w in reps}
    fiber_of = {_label(t, w): t for t in taus for w in reps}

    twist_action = {}
    for x in sorted(L.twist.x_elements):
        for t in taus:
            for w in reps:
                twist_action[(x, _label(t, w))] = _label(t, rep_of[amb.add(w, x)])

    notes = []
    theta_edges = []
    if include_theta and L.theta_twist is not None:
        if L.theta_twist in L.twist.x_elements:
            kappa = dual.zero
            for t in taus:
                for w in reps:
                    theta_edges.append((_label(t, w),
                                        _label(t, rep_of[amb.add(w, L.theta_twist)]),
                                        kappa))
        else:
            notes.append("theta twist lies outside the designated subgroup; "
                         "theta edges omitted")

    # restriction fibers of the base packet: characters of s_bar grouped by
    # their restriction to s_tilde; every fiber must be a full orbit
    base_fibers = {t: [] for t in taus}
    factors = L.s_tilde.invariant_factors
    for chi in characters(L.s_bar):
        t = []
        for j, d in enumerate(factors):
            gen = L.s_tilde_sub.embed(tuple(int(i == j) for i in range(L.s_tilde.rank)))
            rot = chi.rotation(gen) * d
            if rot.denominator != 1:
                raise LiftingError("restriction fiber is not a character")
            t.append(int(rot) % d)
        base_fibers[tuple(t)].append(chi.exponents)
    orbit_size = L.s_bar.order // L.s_tilde.order
    for t, members in base_fibers.items():
        if len(members) != orbit_size:
            raise LiftingError(
                f"fiber {t} has {len(members)} members, expected {orbit_size}")

    return CoarsePacket(
        labels=labels, twist_action=twist_action,
        theta_edges=tuple(theta_edges),
        generic_label=_label(dual.zero, rep_of[amb.zero]),
        fiber_of=fiber_of if declare_fibers else None,
        coset_of=coset_of,
        label_multiplicity={lab: 1 for lab in labels},
        base_fibers={t: tuple(sorted(m)) for t, m in base_fibers.items()},
        notes=tuple(notes))


# ---------------------------------------------------------------------------
# pairing construction: weighted union-find over the dual of S_tilde


@dataclass(frozen=True)
class Obstruction:
    walk: tuple                # closed label walk, first == last
    edge_kinds: tuple          # one per step
    total_twist: tuple         # nonzero character exponents around the walk
    detail: str


@dataclass(frozen=True)
class PairingAssignment:
    assignment: tuple          # sorted (label, exponent tuple) pairs
    free_choices: tuple        # component anchors that were set freely
    missing_generic: bool
    notes: tuple

    def as_dict(self) -> dict:
        return dict(self.assignment)


@dataclass(frozen=True)
class PairingOutcome:
    assignment: PairingAssignment | None
    obstruction: Obstruction | None

    @property
    def succeeded(self) -> bool:
        return self.obstruction is None


class _OffsetForest:
    """Union-find whose nodes carry offsets in a finite abelian group,
    keeping an explicit spanning forest so conflicts come back as walks."""

    def __init__(self, group: FinAbGroup):
        self.group = group
        self.parent = {}
        self.offset = {}           # a(node) = a(parent-chain root) + offset
        self.tree = {}             # node -> list of (other, delta, kind)

    def add(self, node):
        if node not in self.parent:
            self.parent[node] = node
            self.offset[node] = self.group.zero
            self.tree[node] = []

    def find(self, node):
        chain = []
        n = node
        while self.parent[n] != n:
            chain.append(n)
            n = self.parent[n]
        root = n
        acc = self.group.zero
        for m in reversed(chain):
            acc = self.group.add(acc, self.offset[m])
            self.parent[m] = root
            self.offset[m] = acc
        return root, self.offset[node]

    def union(self, u, v, kappa, kind):
        """Impose a(v) = a(u) + kappa; returns a conflict walk or None."""
        ru, ou = self.find(u)
        rv, ov = self.find(v)
        if ru != rv:
            # a(rv) = a(v) - ov = a(u) + kappa - ov = a(ru) + ou + kappa - ov
            self.parent[rv] = ru
            self.offset[rv] = self.group.sub(self.group.add(ou, kappa), ov)
            self.tree[u].append((v, kappa, kind))
            self.tree[v].append((u, self.group.neg(kappa), kind))
            return None
        implied = self.group.sub(ov, ou)
        if implied == self.group.reduce(kappa):
            return None
        walk, kinds = self._tree_path(v, u)
        total = self.group.sub(kappa, implied)
        return walk + (v,), kinds + (kind,), total

    def _tree_path(self, start, goal):
        prev = {start: None}
        queue = deque([start])
        while queue:
            n = queue.popleft()
            if n == goal:
                break
            for other, delta, kind in self.tree[n]:
                if other not in prev:
                    prev[other] = (n, kind)
                    queue.append(other)
        path = [goal]
        kinds = []
        n = goal
        while prev[n] is not None:
            n, kind = prev[n]
            path.append(n)
            kinds.append(kind)
        path.reverse()
        kinds.reverse()
        return tuple(path), tuple(kinds)


def construct_pairing(L: LiftingDatum, coarse: CoarsePacket) -> PairingOutcome:
    """Solve the edge constraints for an assignment label -> Irr(S_tilde).

    Twist edges force equal values, theta edges force a character shift,
    the generic label and any declared fibers pin values.  A conflict is
    returned as a closed walk whose accumulated twist is nonzero.
    """
    dual = dual_group(L.s_tilde)
    forest = _OffsetForest(dual)
    for lab in coarse.labels:
        forest.add(lab)
    forest.add(PIN)

    notes = list(coarse.notes)
    missing_generic = coarse.generic_label is None
    if missing_generic:
        notes.append("no generic label marked; normalization skipped")
    elif coarse.generic_label not in coarse.labels:
        raise LiftingError(f"generic label {coarse.generic_label!r} is unknown")
    elif (coarse.label_multiplicity is not None
          and coarse.label_multiplicity.get(coarse.generic_label, 1) != 1):
        raise LiftingError("generic member must have multiplicity one")

    edges = []
    for (x, lab), dst in sorted(coarse.twist_action.items()):
        edges.append((lab, dst, dual.zero, "twist"))
    for src, dst, kappa in coarse.theta_edges:
        if src not in forest.parent or dst not in forest.parent:
            raise LiftingError("theta edge references an unknown label")
        edges.append((src, dst, dual.reduce(kappa), "theta"))
    if not missing_generic:
        edges.append((PIN, coarse.generic_label, dual.zero, "generic"))
    if coarse.fiber_of is not None:
        for lab in coarse.labels:
            edges.append((PIN, lab, dual.reduce(coarse.fiber_of[lab]), "fiber"))

    for u, v, kappa, kind in edges:
        conflict = forest.union(u, v, kappa, kind)
        if conflict is not None:
            walk, kinds, total = conflict
            return PairingOutcome(assignment=None, obstruction=Obstruction(
                walk=walk, edge_kinds=kinds, total_twist=total,
                detail=(f"closed walk of {len(kinds)} edges accumulates the "
                        f"nontrivial twist {total}")))

    # resolve values: pinned components hang off PIN with a(PIN) = 0;
    # each free component anchors its smallest label to the trivial character
    pin_root, pin_off = forest.find(PIN)
    roots = {}
    for lab in coarse.labels:
        r, off = forest.find(lab)
        roots.setdefault(r, []).append((lab, off))
    base_of_root = {}
    free_choices = []
    for r, members in roots.items():
        if r == pin_root:
            base_of_root[r] = dual.neg(pin_off)
        else:
            anchor, off = min(members)
            base_of_root[r] = dual.neg(off)
            free_choices.append(anchor)

    assignment = {}
    for lab in coarse.labels:
        r, off = forest.find(lab)
        assignment[lab] = dual.add(base_of_root[r], off)

    # re-check every constraint against the final assignment
    for u, v, kappa, kind in edges:
        a_u = dual.zero if u == PIN else assignment[u]
        a_v = dual.zero if v == PIN else assignment[v]
        if a_v != dual.add(a_u, kappa):
            raise LiftingError(f"solved assignment violates a {kind} edge")

    return PairingOutcome(
        assignment=PairingAssignment(
            assignment=tuple(sorted(assignment.items())),
            free_choices=tuple(sorted(free_choices)),
            missing_generic=missing_generic,
            notes=tuple(notes)),
        obstruction=None)


def exhaustive_pairing_search(L: LiftingDatum, coarse: CoarsePacket,
                              max_candidates: int = 1 << 21) -> int:
    """Count all assignments satisfying every constraint, by brute force.

    Confirms obstructions independently of the union-find route; only
    feasible for small label sets.
    """
    dual = dual_group(L.s_tilde)
    labels = list(coarse.labels)
    values = sorted(dual.elements())
    total = len(values) ** len(labels)
    if total > max_candidates:
        raise LiftingError(f"{total} candidate assignments exceed the cap")

    constraints = []
    for (x, lab), dst in coarse.twist_action.items():
        constraints.append((lab, dst, dual.zero))
    for src, dst, kappa in coarse.theta_edges:
        constraints.append((src, dst, dual.reduce(kappa)))
    pins = {}
    if coarse.generic_label is not None:
        pins[coarse.generic_label] = dual.zero
    if coarse.fiber_of is not None:
        for lab in labels:
            pins[lab] = dual.reduce(coarse.fiber_of[lab])

    count = 0
    for combo in product(values, repeat=len(labels)):
        a = dict(zip(labels, combo))
        if any(a[lab] != val for lab, val in pins.items()):
            continue
        if all(a[dst] == dual.add(a[src], kap) for src, dst, kap in constraints):
            count += 1
    return count


# ---------------------------------------------------------------------------
# refined decomposition


@dataclass(frozen=True)
class RefinedPacket:
    subset: tuple                  # the part containing the generic label
    parts: tuple                   # full partition, sorted by coset rep
    coset_reps: tuple              # aligned with parts


def refined_decomposition(L: LiftingDatum, coarse: CoarsePacket,
                          pairing: PairingOutcome) -> RefinedPacket:
    if not pairing.succeeded:
        raise LiftingError("refinement requires a successful pairing")
    if coarse.coset_of is None:
        raise LiftingError("coarse packet lacks coset bookkeeping")
    if coarse.generic_label is None:
        raise LiftingError("generic label required to anchor the refined subset")

    by_coset = {}
    for lab in coarse.labels:
        by_coset.setdefault(coarse.coset_of[lab], []).append(lab)
    counts = coarse_structure(L)
    if len(by_coset) != counts.quotient_order:
        raise LiftingError(
            f"partition failure: {len(by_coset)} parts, expected "
            f"{counts.quotient_order}")
    sizes = {len(v) for v in by_coset.values()}
    if len(sizes) != 1:
        raise LiftingError(f"partition failure: unequal part sizes {sorted(sizes)}")
    if sum(len(v) for v in by_coset.values()) != len(coarse.labels):
        raise LiftingError("partition failure: a label is missing or duplicated")

    reps = tuple(sorted(by_coset))
    parts = tuple(tuple(sorted(by_coset[r])) for r in reps)
    generic_rep = coarse.coset_of[coarse.generic_label]
    subset = tuple(sorted(by_coset[generic_rep]))

    # each part must be the generic part translated by some twist
    for rep, part in zip(reps, parts):
        hit = False
        for x in sorted(L.twist.x_elements):
            moved = {coarse.twist_action[(x, lab)] for lab in subset}
            if moved == set(part):
                hit = True
                break
        if not hit:
            raise LiftingError(f"part at {rep} is not a twist of the generic part")

    return RefinedPacket(subset=subset, parts=parts, coset_reps=reps)


# ---------------------------------------------------------------------------
# multiplicity bridge through the Clifford engine


@dataclass(frozen=True)
class BridgeRow:
    pi_row: int                    # Irr(S_phi) row
    tau_row: int                   # Irr(S_tilde) row
    multiplicity: int
    x_rho_order: int
    stabilizer_index: int
    stabilizer_order: int
    kernel_image_order: int | None
    expected_kernel_image: int | None
    declared: int | None


@dataclass(frozen=True)
class BridgeTable:
    rows: tuple
    checks: tuple

    @property
    def all_passed(self) -> bool:
        return all(ok for _name, ok, _detail in self.checks)

    def failures(self):
        return [f"{name}: {detail}" for name, ok, detail in self.checks if not ok]


def multiplicity_bridge(s_phi: FinGroup, s_tilde_indices, alpha_q: AbHom | None = None,
                        declared: dict | None = None) -> BridgeTable:
    """Restriction multiplicities between a group and a normal subgroup with
    abelian quotient, checked against twist-group sizes and, when alpha_q is
    supplied on the quotient, against the kernel-image duality.

    declared maps an Irr(S_tilde) representative row to the multiplicity the
    packet data promises for every member over that orbit.
    """
    ctx = build_context(s_phi, s_tilde_indices)
    report = verify_clifford_suite(ctx)
    q_linear = quotient_linear_characters(ctx)
    g_rows = ctx.table_g.rows
    h_order = ctx.sub.order

    if alpha_q is not None and alpha_q.source != ctx.q_ab:
        raise LiftingError(
            f"alpha domain {alpha_q.source.describe()} does not match the "
            f"quotient {ctx.q_ab.describe()}")

    rows = []
    checks = []
    checks.append(("clifford-suite", report.all_passed,
                   "; ".join(report.failures()) or "all clifford checks hold"))

    sq_ok, sq_detail = True, ""
    decl_ok, decl_detail = True, ""
    dual_ok, dual_detail = True, ""
    dual_seen = False
    for orb in report.orbits:
        od = orb.orbit
        stab_order = len(od.stabilizer_indices)
        index = s_phi.order // stab_order
        m = orb.multiplicity
        for pi in orb.pi_rows:
            # X(rho): quotient characters fixing this row
            x_chars = [(chi, lam) for chi, lam in q_linear
                       if (g_rows[pi] * lam).values == g_rows[pi].values]
            x_order = len(x_chars)
            if m * m * index != x_order:
                sq_ok = False
                sq_detail = (f"pi row {pi}: m^2*index = {m * m * index} "
                             f"!= |X(rho)| = {x_order}")
            kernel_order = None
            expected = None
            if alpha_q is not None:
                ker_elems = [q for q in ctx.q_ab.elements()
                             if all(chi.rotation(q) == 0 for chi, _ in x_chars)]
                image = subgroup_elements(alpha_q.target,
                                          [alpha_q.apply(q) for q in ker_elems])
                kernel_order = len(image)
                expected = stab_order // h_order
                if m == 1:
                    dual_seen = True
                    if kernel_order != expected:
                        dual_ok = False
                        dual_detail = (f"pi row {pi}: |a(Ker X)| = {kernel_order} "
                                       f"!= |stab/S_tilde| = {expected}")
            for tau in od.orbit_rows:
                rows.append(BridgeRow(
                    pi_row=pi, tau_row=tau, multiplicity=m,
                    x_rho_order=x_order, stabilizer_index=index,
                    stabilizer_order=stab_order,
                    kernel_image_order=kernel_order,
                    expected_kernel_image=expected,
                    declared=None if declared is None
                    else declared.get(od.rep_row)))
        if declared is not None and od.rep_row in declared:
            if declared[od.rep_row] != m:
                decl_ok = False
                decl_detail = (f"orbit at row {od.rep_row}: declared "
                               f"{declared[od.rep_row]}, computed {m}")

    checks.append(("bridge-squared-identity", sq_ok,
                   sq_detail or "m^2 * index = |X(rho)| on every incidence"))
    if declared is not None:
        checks.append(("declared-multiplicity", decl_ok,
                       decl_detail or "declared multiplicities all match"))
    if alpha_q is not None:
        checks.append(("kernel-image-duality", dual_ok,
                       dual_detail or ("multiplicity-one duality holds"
                                       if dual_seen else "no m=1 incidence")))

    return BridgeTable(rows=tuple(rows), checks=tuple(checks))
