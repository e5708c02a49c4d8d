"""Summand-level model of bounded classical parameters and their component
groups.

A parameter is a formal sum of self-dual (or paired) summands with
dimensions and multiplicities.  The component group is elementary abelian,
realized concretely as a space of sign vectors over the "carrier" summands
(orthogonal type, odd multiplicity), cut down by the determinant condition
and the center quotient.  Everything is small F2 linear algebra; an
independent matrix oracle lives in the oracle module.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .abelian import AbHom, FinAbGroup, SubgroupData, subgroup_from_generators

SD_ORTH = "orthogonal"
SD_SYMP = "symplectic"
SD_PAIR = "non_self_dual_pair"
SD_TYPES = (SD_ORTH, SD_SYMP, SD_PAIR)

KIND_SP = "Sp(2n)"
KIND_SO_SPLIT = "SO(2n)_split"
KIND_SO_QUASI = "SO(2n)_quasisplit"
GROUP_KINDS = (KIND_SP, KIND_SO_SPLIT, KIND_SO_QUASI)


class ParameterError(ValueError):
    """Structurally invalid parameter data."""


class UnsupportedParameter(ParameterError):
    """Structurally valid but outside the verified support of the recipe."""


@dataclass(frozen=True)
class SummandSpec:
    ident: str
    dim: int
    sd_type: str
    multiplicity: int = 1
    twist_char: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.twist_char is not None:
            object.__setattr__(self, "twist_char", tuple(int(v) for v in self.twist_char))

    @property
    def contribution(self) -> int:
        """Dimension contributed to the dual standard representation."""
        base = self.dim * self.multiplicity
        return 2 * base if self.sd_type == SD_PAIR else base


@dataclass(frozen=True)
class ClassicalParameter:
    group_kind: str
    n: int
    summands: tuple[SummandSpec, ...]
    discrete: bool = False

    def __post_init__(self):
        object.__setattr__(self, "summands", tuple(self.summands))

    @property
    def is_symplectic_kind(self) -> bool:
        return self.group_kind == KIND_SP

    @property
    def is_orthogonal_kind(self) -> bool:
        return self.group_kind in (KIND_SO_SPLIT, KIND_SO_QUASI)

    @property
    def dual_dimension(self) -> int:
        return 2 * self.n + 1 if self.is_symplectic_kind else 2 * self.n

    def validate(self) -> None:
        if self.group_kind not in GROUP_KINDS:
            raise ParameterError(f"unknown group kind {self.group_kind!r}")
        if self.n < 0:
            raise ParameterError("rank must be nonnegative")
        ids = [s.ident for s in self.summands]
        if len(set(ids)) != len(ids):
            raise ParameterError("summand ids must be unique")
        for s in self.summands:
            if s.sd_type not in SD_TYPES:
                raise ParameterError(f"summand {s.ident!r}: unknown sd_type {s.sd_type!r}")
            if s.dim < 1:
                raise ParameterError(f"summand {s.ident!r}: dimension must be >= 1")
            if s.multiplicity < 1:
                raise ParameterError(f"summand {s.ident!r}: multiplicity must be >= 1")
            if s.multiplicity > 2:
                raise UnsupportedParameter(
                    f"summand {s.ident!r}: multiplicities above 2 are outside "
                    "the verified support")
            if s.sd_type == SD_SYMP and s.multiplicity % 2:
                raise ParameterError(
                    f"summand {s.ident!r}: symplectic summands need even "
                    "multiplicity to land in an orthogonal dual")
        total = sum(s.contribution for s in self.summands)
        if total != self.dual_dimension:
            raise ParameterError(
                f"summand contributions sum to {total}, expected "
                f"{self.dual_dimension} for {self.group_kind} with n={self.n}")
        if self.discrete:
            for s in self.summands:
                if s.multiplicity != 1:
                    raise ParameterError(
                        f"discrete parameter has summand {s.ident!r} with "
                        f"multiplicity {s.multiplicity}")
                if s.sd_type != SD_ORTH:
                    raise ParameterError(
                        f"discrete parameter has non-orthogonal summand {s.ident!r}")

    def carriers(self) -> tuple[SummandSpec, ...]:
        """Summands carrying a sign bit: orthogonal with odd multiplicity."""
        return tuple(s for s in self.summands
                     if s.sd_type == SD_ORTH and s.multiplicity % 2 == 1)


# ---------------------------------------------------------------------------
# component groups


def _f2_add(u, v):
    return tuple((a + b) % 2 for a, b in zip(u, v))


@dataclass(frozen=True)
class ComponentGroupData:
    """Component-group package of a classical parameter.

    Sign vectors live in F2^k indexed by the carriers in input order.
    a_phi coordinates follow a_basis_vectors; s_bar_sigma0 coordinates are
    the first k-1 sign coordinates after normalizing the center coset
    (orthogonal kinds) or simply a_phi coordinates (symplectic kind).
    """

    parameter: ClassicalParameter
    carrier_ids: tuple[str, ...]
    carrier_parities: tuple[int, ...]        # n_i mod 2 per carrier
    pivot: int | None                        # last odd-dimension carrier, if any
    a_phi: FinAbGroup
    a_basis_vectors: tuple[tuple[int, ...], ...]
    basis_labels: tuple[str, ...]            # summand id per a_phi generator
    s_bar: FinAbGroup
    s_bar_sigma0: FinAbGroup
    a_to_sigma0: AbHom
    s_bar_to_sigma0: AbHom                   # injective
    a_to_s_bar: AbHom                        # surjective
    theta0_coset_nonempty: bool

    @property
    def k(self) -> int:
        return len(self.carrier_ids)

    @property
    def z_vector(self) -> tuple[int, ...]:
        return (1,) * self.k

    def vector_of_a(self, x) -> tuple[int, ...]:
        x = self.a_phi.reduce(x)
        v = (0,) * self.k
        for coeff, basis_vec in zip(x, self.a_basis_vectors):
            if coeff:
                v = _f2_add(v, basis_vec)
        return v

    def a_of_vector(self, v) -> tuple[int, ...]:
        v = tuple(int(b) % 2 for b in v)
        if len(v) != self.k:
            raise ParameterError("sign vector has wrong length")
        if sum(b * p for b, p in zip(v, self.carrier_parities)) % 2:
            raise ParameterError("sign vector violates the determinant condition")
        if self.pivot is None:
            return self.a_phi.reduce(v)
        return self.a_phi.reduce(tuple(b for i, b in enumerate(v) if i != self.pivot))

    def sigma0_of_vector(self, v) -> tuple[int, ...]:
        v = tuple(int(b) % 2 for b in v)
        if len(v) != self.k:
            raise ParameterError("sign vector has wrong length")
        if self.parameter.is_symplectic_kind:
            return self.a_of_vector(v)
        if self.k == 0:
            return ()
        if v[-1]:
            v = _f2_add(v, self.z_vector)
        return self.s_bar_sigma0.reduce(v[:-1])

    def vector_of_sigma0(self, x) -> tuple[int, ...]:
        """Canonical sign-vector representative of a S̄^{Σ0} element."""
        x = self.s_bar_sigma0.reduce(x)
        if self.parameter.is_symplectic_kind:
            return self.vector_of_a(x)
        return tuple(x) + ((0,) if self.k else ())

    def s_bar_of_a(self, x) -> tuple[int, ...]:
        return self.a_to_s_bar.apply(x)


def component_group(param: ClassicalParameter) -> ComponentGroupData:
    param.validate()
    carriers = param.carriers()
    k = len(carriers)
    parities = tuple(s.dim % 2 for s in carriers)
    odd_positions = [i for i, p in enumerate(parities) if p]
    pivot = odd_positions[-1] if odd_positions else None

    if param.is_orthogonal_kind:
        has_odd_orth = any(s.sd_type == SD_ORTH and s.dim % 2 for s in param.summands)
        if has_odd_orth and pivot is None:
            # an odd-dimensional block hidden at even multiplicity would open
            # the theta0 coset without a carrier bit to express it
            raise UnsupportedParameter(
                "odd-dimensional orthogonal summand with even multiplicity is "
                "outside the verified support")
        theta0 = has_odd_orth
    else:
        theta0 = False

    def unit(i):
        return tuple(int(j == i) for j in range(k))

    if pivot is None:
        a_basis = tuple(unit(i) for i in range(k))
        labels = tuple(s.ident for s in carriers)
    else:
        a_basis = []
        labels = []
        for i in range(k):
            if i == pivot:
                continue
            v = list(unit(i))
            if parities[i]:
                v[pivot] ^= 1
            a_basis.append(tuple(v))
            labels.append(carriers[i].ident)
        a_basis = tuple(a_basis)
        labels = tuple(labels)
    a_phi = FinAbGroup((2,) * len(a_basis))

    if param.is_symplectic_kind:
        ident = AbHom.identity(a_phi)
        data = ComponentGroupData(
            parameter=param, carrier_ids=tuple(s.ident for s in carriers),
            carrier_parities=parities, pivot=pivot,
            a_phi=a_phi, a_basis_vectors=a_basis, basis_labels=labels,
            s_bar=a_phi, s_bar_sigma0=a_phi,
            a_to_sigma0=ident, s_bar_to_sigma0=ident, a_to_s_bar=ident,
            theta0_coset_nonempty=False)
    else:
        sigma0 = FinAbGroup((2,) * max(k - 1, 0))

        def sigma0_of(v):
            if k == 0:
                return ()
            if v[-1]:
                v = _f2_add(v, (1,) * k)
            return tuple(v[:-1])

        a_images = [sigma0_of(b) for b in a_basis]
        a_to_sigma0 = AbHom(a_phi, sigma0,
                            tuple(tuple(img[i] for img in a_images)
                                  for i in range(sigma0.rank)))
        sub = subgroup_from_generators(sigma0, a_images or [sigma0.zero])
        s_bar = sub.group
        s_bar_to_sigma0 = AbHom(s_bar, sigma0,
                                tuple(tuple(g[i] for g in sub.generators)
                                      for i in range(sigma0.rank)))
        # express each a_phi generator in s_bar coordinates by table lookup
        by_image = {sub.embed(x): x for x in s_bar.elements()}
        cols = [by_image[img] for img in a_images]
        a_to_s_bar = AbHom(a_phi, s_bar,
                           tuple(tuple(c[i] for c in cols)
                                 for i in range(s_bar.rank)))
        data = ComponentGroupData(
            parameter=param, carrier_ids=tuple(s.ident for s in carriers),
            carrier_parities=parities, pivot=pivot,
            a_phi=a_phi, a_basis_vectors=a_basis, basis_labels=labels,
            s_bar=s_bar, s_bar_sigma0=sigma0,
            a_to_sigma0=a_to_sigma0, s_bar_to_sigma0=s_bar_to_sigma0,
            a_to_s_bar=a_to_s_bar,
            theta0_coset_nonempty=theta0)

    if data.a_phi.order % data.s_bar.order:
        raise AssertionError("|S_bar| must divide |A_phi|")
    index = data.s_bar_sigma0.order // data.s_bar.order
    if index not in (1, 2):
        raise AssertionError("S_bar has index > 2 in S_bar_sigma0")
    if param.is_orthogonal_kind and (index == 2) != data.theta0_coset_nonempty:
        raise AssertionError("theta0 flag inconsistent with the Sigma0 index")
    return data


# ---------------------------------------------------------------------------
# theta0 detection


@dataclass(frozen=True)
class Theta0Report:
    nonempty: bool
    witness_id: str | None


def theta0_equivalence_check(param: ClassicalParameter) -> Theta0Report:
    """Whether the theta0 coset of the extended component group is hit,
    with the witnessing odd-dimensional orthogonal summand."""
    param.validate()
    if not param.is_orthogonal_kind:
        raise ParameterError("theta0 is trivial for the symplectic kind")
    witness = next((s.ident for s in param.summands
                    if s.sd_type == SD_ORTH and s.dim % 2), None)
    return Theta0Report(nonempty=witness is not None, witness_id=witness)


# ---------------------------------------------------------------------------
# endoscopic splitting


@dataclass(frozen=True)
class FactorShape:
    kind: str
    rank: int
    dual_dim: int


@dataclass(frozen=True)
class EndoscopicSplit:
    s: tuple[int, ...]
    sign_vector: tuple[int, ...]
    phi_1: ClassicalParameter
    phi_2: ClassicalParameter
    h_shape: tuple[FactorShape, FactorShape]
    gl_factors: tuple[str, ...] = field(default=())


def _factor_shape(dual_dim: int) -> FactorShape:
    if dual_dim % 2:
        return FactorShape(kind=KIND_SP, rank=(dual_dim - 1) // 2, dual_dim=dual_dim)
    return FactorShape(kind=KIND_SO_SPLIT, rank=dual_dim // 2, dual_dim=dual_dim)


def endoscopic_split(param: ClassicalParameter, s,
                     data: ComponentGroupData | None = None) -> EndoscopicSplit:
    if data is None:
        data = component_group(param)
    s = data.a_phi.reduce(s)
    v = data.vector_of_a(s)
    minus_ids = {cid for cid, bit in zip(data.carrier_ids, v) if bit}
    phi1_summands = tuple(x for x in param.summands if x.ident in minus_ids)
    phi2_summands = tuple(x for x in param.summands if x.ident not in minus_ids)
    n1 = sum(x.contribution for x in phi1_summands)
    n2 = sum(x.contribution for x in phi2_summands)
    if n1 + n2 != param.dual_dimension:
        raise AssertionError("fragment dimensions do not add up")
    shape1, shape2 = _factor_shape(n1), _factor_shape(n2)
    phi_1 = ClassicalParameter(group_kind=shape1.kind, n=shape1.rank,
                               summands=phi1_summands, discrete=False)
    phi_2 = ClassicalParameter(group_kind=shape2.kind, n=shape2.rank,
                               summands=phi2_summands, discrete=False)
    gl = tuple(x.ident for x in param.summands
               if x.sd_type == SD_PAIR or x.multiplicity > 1)
    return EndoscopicSplit(s=s, sign_vector=v, phi_1=phi_1, phi_2=phi_2,
                           h_shape=(shape1, shape2), gl_factors=gl)


def complement_element(data: ComponentGroupData, s) -> tuple[int, ...]:
    """The element acting by the opposite signs on every carrier.

    Exists in A_phi exactly for the orthogonal kinds (the all-ones vector
    satisfies the determinant condition there); raises for Sp.
    """
    v = data.vector_of_a(data.a_phi.reduce(s))
    flipped = _f2_add(v, data.z_vector)
    return data.a_of_vector(flipped)
