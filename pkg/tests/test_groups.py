import numpy as np
import pytest

from formations.errors import ClosureExceedsCap, NotNormal
from formations.groups import (Permutation, as_group, center, centralizer,
                               commutator_subgroup, core, direct_product,
                               from_generators, generated_subgroup, is_normal,
                               normal_closure, normalizer, product_bits,
                               quotient, subgroup_from_bits)

from conftest import table_of
from oracle import (o_center, o_closure, o_derived, o_is_normal,
                    o_quotient_table)


def test_permutation_validation():
    with pytest.raises(ValueError):
        Permutation((0, 0, 1))
    p = Permutation.from_cycles(4, [(0, 1, 2)])
    assert p.images == (1, 2, 0, 3)
    assert (p * p.inverse()).images == (0, 1, 2, 3)


def test_from_generators_s3():
    g = from_generators([Permutation.from_cycles(3, [(0, 1)]),
                         Permutation.from_cycles(3, [(0, 1, 2)])], "S3")
    assert g.order == 6
    assert sorted(int(o) for o in g.element_orders()) == [1, 2, 2, 2, 3, 3]


def test_from_generators_identity_only():
    g = from_generators([Permutation.identity(4)], "triv")
    assert g.order == 1


def test_from_generators_q8_single_involution(groups):
    q8 = groups["Q8"]
    assert q8.order == 8
    assert sum(1 for o in q8.element_orders() if o == 2) == 1


def test_closure_cap():
    with pytest.raises(ClosureExceedsCap):
        from_generators([Permutation.from_cycles(5, [(0, 1)]),
                         Permutation.from_cycles(5, [(0, 1, 2, 3, 4)])], "S5", cap=100)


def test_determinism(groups):
    a = from_generators([Permutation.from_cycles(4, [(0, 1)]),
                         Permutation.from_cycles(4, [(0, 1, 2, 3)])], "S4")
    b = from_generators([Permutation.from_cycles(4, [(0, 1)]),
                         Permutation.from_cycles(4, [(0, 1, 2, 3)])], "S4")
    assert np.array_equal(a.table, b.table)
    assert a.fingerprint == b.fingerprint


def test_generated_subgroup(groups):
    s3, s4 = groups["S3"], groups["S4"]
    transposition = next(i for i in range(1, 6) if s3.element_orders()[i] == 2)
    assert generated_subgroup(s3, [transposition]).order == 2
    assert generated_subgroup(s3, []).order == 1
    # two double transpositions of S4 generate the Klein four group
    dts = [i for i in range(s4.order)
           if s4.element_orders()[i] == 2 and s4.labels[i].count("(") == 2]
    v4 = generated_subgroup(s4, dts[:2])
    assert v4.order == 4
    assert o_closure(table_of(s4), set(dts[:2])) == frozenset(int(m) for m in v4.members)


def test_quotient_s4_by_v4(groups):
    s4 = groups["S4"]
    v4 = _normal_v4(s4)
    q = quotient(s4, v4)
    assert q.base.order == 6
    # isomorphic-to-S3 fingerprint: nonabelian, element orders {1,2,2,2,3,3}
    assert not q.base.is_abelian()
    assert sorted(int(o) for o in q.base.element_orders()) == [1, 2, 2, 2, 3, 3]
    # projection is a homomorphism (exhaustive), kernel = preimage of identity
    for a in range(s4.order):
        for b in range(s4.order):
            assert q.projection[s4.table[a, b]] == q.base.table[q.projection[a], q.projection[b]]
    assert {i for i in range(s4.order) if q.projection[i] == 0} == \
        set(int(m) for m in v4.members)
    assert o_quotient_table(table_of(s4), frozenset(int(m) for m in v4.members)) == \
        [[int(x) for x in row] for row in q.base.table]


def _normal_v4(s4):
    from formations.lattice import all_subgroups
    lat = all_subgroups(s4)
    return next(s for s in lat.by_order(4) if is_normal(s4, s))


def test_quotient_full_kernel(groups):
    g = groups["S3"]
    q = quotient(g, g.full_subgroup())
    assert q.base.order == 1


def test_quotient_not_normal(groups):
    s3 = groups["S3"]
    t = generated_subgroup(s3, [_a_transposition(s3)])
    with pytest.raises(NotNormal):
        quotient(s3, t)


def _a_transposition(g):
    return next(i for i in range(1, g.order) if g.element_orders()[i] == 2)


def test_core(groups):
    s4 = groups["S4"]
    # point stabilizer of 4: elements whose cycle form never moves point 4
    stab_bits = 0
    for i in range(s4.order):
        moved = {t for cyc in s4.labels[i].strip("()").split(")(") for t in cyc.split()}
        if "4" not in moved:
            stab_bits |= 1 << i
    h = subgroup_from_bits(s4, stab_bits)
    assert h.order == 6
    assert core(s4, h).order == 1
    v4 = _normal_v4(s4)
    assert core(s4, v4) == v4


def test_core_c6_in_sl23(groups):
    sl = groups["SL23"]
    six = next(i for i in range(sl.order) if sl.element_orders()[i] == 6)
    c6 = generated_subgroup(sl, [six])
    assert c6.order == 6
    assert core(sl, c6).order == 2
    assert core(sl, c6).bits == center(sl).bits


def test_normal_closure(groups):
    s4, a4 = groups["S4"], groups["A4"]
    t = generated_subgroup(s4, [_a_transposition(s4)])
    assert normal_closure(s4, t).order == 24
    v4 = _normal_v4(s4)
    assert normal_closure(s4, v4) == v4
    c3 = generated_subgroup(a4, [next(i for i in range(a4.order) if a4.element_orders()[i] == 3)])
    assert normal_closure(a4, c3).order == 12


def test_centralizer(groups):
    s4, s3 = groups["S4"], groups["S3"]
    v4 = _normal_v4(s4)
    assert centralizer(s4, (int(m) for m in v4.members)) == v4
    assert centralizer(s4, []).order == 24
    assert centralizer(s4, [0]).order == 24
    three = next(i for i in range(s3.order) if s3.element_orders()[i] == 3)
    assert centralizer(s3, [three]).order == 3


def test_normalizer(groups):
    s3, a4 = groups["S3"], groups["A4"]
    t = generated_subgroup(s3, [_a_transposition(s3)])
    assert normalizer(s3, t) == t
    c3 = generated_subgroup(a4, [next(i for i in range(a4.order) if a4.element_orders()[i] == 3)])
    assert normalizer(a4, c3) == c3
    v4 = _normal_v4(groups["S4"])
    assert normalizer(groups["S4"], v4).order == 24


def test_center(groups):
    assert center(groups["S3"]).order == 1
    assert center(groups["C6"]).order == 6
    assert center(groups["Q8"]).order == 2
    for name in ("S3", "Q8", "SL23"):
        g = groups[name]
        assert frozenset(int(m) for m in center(g).members) == o_center(table_of(g))


def test_commutator_subgroup(groups):
    s3, s4, c6 = groups["S3"], groups["S4"], groups["C6"]
    assert commutator_subgroup(s3).order == 3
    assert commutator_subgroup(c6).order == 1
    d = commutator_subgroup(s4)
    assert d.order == 12
    assert frozenset(int(m) for m in d.members) == o_derived(table_of(s4))


def test_direct_product(groups):
    c2 = parse("C2")
    c3 = parse("C3")
    g = direct_product(c2, c3)
    assert g.order == 6
    assert int(max(g.element_orders())) == 6  # cyclic
    s3c2 = direct_product(groups["S3"], c2)
    assert s3c2.order == 12
    v4 = direct_product(c2, c2)
    assert v4.order == 4 and v4.exponent == 2


def parse(text):
    from formations.dsl import parse_group
    return parse_group(text)


def test_is_normal(groups):
    s4, s3 = groups["S4"], groups["S3"]
    assert is_normal(s4, _normal_v4(s4))
    assert is_normal(s4, s4.full_subgroup())
    assert is_normal(s4, s4.trivial_subgroup())
    t = generated_subgroup(s3, [_a_transposition(s3)])
    assert not is_normal(s3, t)
    tab = table_of(s3)
    assert o_is_normal(tab, frozenset(int(m) for m in t.members)) is False


def test_lagrange_and_core_sandwich(groups):
    from formations.lattice import all_subgroups
    for name in ("S4", "SL23", "Frob21"):
        g = groups[name]
        for h in all_subgroups(g).subgroups:
            assert g.order % h.order == 0
            c = core(g, h)
            nc = normal_closure(g, h)
            assert c.bits & h.bits == c.bits
            assert h.bits & nc.bits == h.bits
            assert is_normal(g, c) and is_normal(g, nc)


def test_materialize_roundtrip(groups):
    s4 = groups["S4"]
    v4 = _normal_v4(s4)
    sub = as_group(v4)
    assert sub.order == 4
    assert sub.exponent == 2
    assert [int(x) for x in sub.parent_embedding] == [int(m) for m in v4.members]


def test_product_bits(groups):
    s3 = groups["S3"]
    t = generated_subgroup(s3, [_a_transposition(s3)])
    c3 = generated_subgroup(s3, [next(i for i in range(s3.order) if s3.element_orders()[i] == 3)])
    assert product_bits(s3, t.bits, c3.bits) == s3.full_bits()
