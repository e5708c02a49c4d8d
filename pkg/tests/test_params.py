"""Component groups of self-dual parameter data."""

import pytest

from packetlift.params import (KIND_SO_QUASI, KIND_SO_SPLIT, KIND_SP, SD_ORTH,
                               SD_PAIR, SD_SYMP, ClassicalParameter,
                               ParameterError, SummandSpec,
                               UnsupportedParameter, complement_element,
                               component_group, endoscopic_split,
                               theta0_equivalence_check)


def _p(kind, n, dims, mults=None, types=None, discrete=True):
    mults = mults or [1] * len(dims)
    types = types or [SD_ORTH] * len(dims)
    summands = tuple(
        SummandSpec(ident=chr(97 + i), dim=d, sd_type=t, multiplicity=m)
        for i, (d, m, t) in enumerate(zip(dims, mults, types)))
    return ClassicalParameter(group_kind=kind, n=n, summands=summands,
                              discrete=discrete)


def test_validation_errors():
    with pytest.raises(ParameterError):  # duplicate ids
        ClassicalParameter(KIND_SP, 1, (
            SummandSpec("a", 1, SD_ORTH), SummandSpec("a", 2, SD_ORTH)),
            False).validate()
    with pytest.raises(ParameterError):  # unknown type
        _p(KIND_SP, 1, [3], types=["weird"]).validate()
    with pytest.raises(ParameterError):  # dimension sum off
        _p(KIND_SP, 2, [1, 1, 1]).validate()
    with pytest.raises(ParameterError):  # symplectic odd multiplicity
        _p(KIND_SO_SPLIT, 1, [1, 1], types=[SD_SYMP, SD_SYMP],
           discrete=False).validate()
    with pytest.raises(UnsupportedParameter):  # multiplicity cap
        _p(KIND_SP, 1, [1], mults=[3], discrete=False).validate()
    with pytest.raises(ParameterError):  # discrete forces multiplicity one
        _p(KIND_SO_SPLIT, 2, [2], mults=[2]).validate()


def test_pair_summand_counts_twice():
    p = _p(KIND_SO_SPLIT, 2, [1, 1, 2], types=[SD_ORTH, SD_ORTH, SD_PAIR],
           discrete=False)
    assert p.summands[2].contribution == 4  # a pair contributes 2*dim
    with pytest.raises(ParameterError):
        p.validate()  # 1 + 1 + 4 = 6 != 2n = 4


def test_component_group_shapes():
    # symplectic kind: S_bar = A_phi = (Z/2)^(k-1)
    for k in (1, 3, 5):
        p = _p(KIND_SP, (k - 1) // 2, [1] * k)
        data = component_group(p)
        assert data.a_phi.order == 2 ** (k - 1)
        assert data.s_bar is data.a_phi or data.s_bar == data.a_phi
        assert not data.theta0_coset_nonempty

    # all even dims: A keeps full rank, theta0 empty
    p = _p(KIND_SO_SPLIT, 2, [2, 2])
    data = component_group(p)
    assert data.a_phi.order == 4
    assert data.s_bar.order == 2
    assert data.s_bar_sigma0.order == 2
    assert not data.theta0_coset_nonempty

    # odd dims present: theta0 coset opens, S_bar has index 2 in Sigma0
    p = _p(KIND_SO_QUASI, 3, [1, 1, 2, 2])
    data = component_group(p)
    assert data.a_phi.order == 8
    assert data.s_bar.order == 4
    assert data.s_bar_sigma0.order == 8
    assert data.theta0_coset_nonempty


def test_vector_round_trips():
    p = _p(KIND_SP, 2, [1, 1, 3])
    data = component_group(p)
    for a in data.a_phi.elements():
        v = data.vector_of_a(a)
        assert data.a_of_vector(v) == a
    for s in data.s_bar_sigma0.elements():
        v = data.sigma0_of_vector(data.vector_of_sigma0(s))
        assert v == s
    assert data.z_vector == (1, 1, 1)


def test_odd_multiplicity_even_dim_unsupported():
    p = _p(KIND_SO_SPLIT, 3, [1, 1, 2], mults=[2, 2, 1], discrete=False)
    with pytest.raises(UnsupportedParameter):
        component_group(p)


def test_theta0_witness():
    rep = theta0_equivalence_check(_p(KIND_SO_QUASI, 3, [1, 1, 2, 2]))
    assert rep.nonempty and rep.witness_id == "a"
    rep2 = theta0_equivalence_check(_p(KIND_SO_SPLIT, 2, [2, 2]))
    assert not rep2.nonempty and rep2.witness_id is None
    with pytest.raises(ParameterError):
        theta0_equivalence_check(_p(KIND_SP, 1, [1, 1, 1]))


def test_endoscopic_split_partitions_dimension():
    p = _p(KIND_SP, 2, [1, 1, 3])
    data = component_group(p)
    for s in data.a_phi.elements():
        sp = endoscopic_split(p, s, data)
        assert sp.phi_1.dual_dimension + sp.phi_2.dual_dimension \
            == p.dual_dimension
        ids = {x.ident for x in sp.phi_1.summands} \
            | {x.ident for x in sp.phi_2.summands}
        assert ids == {x.ident for x in p.summands}
        # an odd-dimensional fragment must land on the symplectic side
        assert sp.h_shape[0].dual_dim % 2 == (sp.h_shape[0].kind == KIND_SP)


def test_complement_element():
    p = _p(KIND_SO_SPLIT, 3, [2, 2, 2])
    data = component_group(p)
    for s in data.a_phi.elements():
        c = complement_element(data, s)
        v = data.vector_of_a(s)
        w = data.vector_of_a(c)
        assert all((x + y) % 2 == 1 for x, y in zip(v, w))
