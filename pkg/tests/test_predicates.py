import pytest

from subconj import (
    MEMBER,
    NON_MEMBER,
    UNDECIDED,
    ClassId,
    center,
    construct,
    decide,
    hierarchy_report,
    quotient,
    verify_witness,
)

PI_IDS = [c for c in ClassId if c.is_pi]
PLAIN_IDS = [c for c in ClassId if not c.is_pi]


@pytest.mark.parametrize("n", [5, 8, 12, 30])
def test_cyclic_groups_belong_everywhere(n):
    report = hierarchy_report(construct(f"Cyclic({n})"))
    assert set(report.verdicts.values()) == {MEMBER}


def test_e4_fails_already_for_cyclic_pi():
    v, w = decide(construct("ElementaryAbelian(2,2)"), ClassId.C_PI)
    assert v == NON_MEMBER
    assert w.order == 2  # three distinct normal C2s


def test_q8_fails_abelian_pi_with_two_c4s():
    v, w = decide(construct("GeneralizedQuaternion(8)"), ClassId.A_PI)
    assert v == NON_MEMBER
    assert w.order == 4
    assert w.sub_a.is_cyclic() and w.sub_b.is_cyclic()
    ok, method = verify_witness(construct("GeneralizedQuaternion(8)"), w)
    assert ok and method == "exhaustive-scan"


def test_sl23_belongs_to_b():
    v, _ = decide(construct("SL2(3)"), ClassId.B)
    assert v == MEMBER


def test_psl27_in_c_pi_but_not_a_pi():
    g = construct("PSL2(7)")
    assert decide(g, ClassId.C_PI)[0] == MEMBER
    v, w = decide(g, ClassId.A_PI)
    assert v == NON_MEMBER
    assert (w.order, w.prime) == (4, 2)
    cyclic_flags = sorted((w.sub_a.is_cyclic(), w.sub_b.is_cyclic()))
    assert cyclic_flags == [False, True]  # one C4, one E4


def test_sl27_in_a_but_not_b_pi():
    g = construct("SL2(7)")
    assert decide(g, ClassId.A)[0] == MEMBER
    v, w = decide(g, ClassId.B_PI)
    assert v == NON_MEMBER
    assert w.order == 8
    kinds = sorted((w.sub_a.is_cyclic(), w.sub_b.is_cyclic()))
    assert kinds == [False, True]  # quaternion vs cyclic
    ok, _ = verify_witness(g, w)
    assert ok


def test_a5_report_is_all_member():
    report = hierarchy_report(construct("Alternating(5)"), "A5")
    assert set(report.verdicts.values()) == {MEMBER}


def test_q8_report_fails_c_pi_downwards():
    report = hierarchy_report(construct("GeneralizedQuaternion(8)"))
    assert report.verdicts[ClassId.C_PI] == NON_MEMBER
    for cid in (ClassId.B_PI, ClassId.A_PI, ClassId.B, ClassId.A, ClassId.C):
        assert report.verdicts[cid] == NON_MEMBER


def test_s4_witness_is_the_classic_pair():
    v, w = decide(construct("Symmetric(4)"), ClassId.C_PI)
    assert v == NON_MEMBER
    assert w.order == 2
    a, b = w.element_lists()
    # a transposition subgroup against a double-transposition subgroup
    assert {len(x) for x in (a, b)} == {2}


def test_quotient_of_sl27_by_center_drops_out():
    g = construct("SL2(7)")
    q = quotient(g, center(g))
    v, w = decide(q, ClassId.A_PI)
    assert v == NON_MEMBER and w.order == 4


@pytest.mark.parametrize(
    "name",
    [
        "Symmetric(4)",
        "GeneralizedQuaternion(16)",
        "SL2(3)",
        "Dihedral(5)",
        "Dihedral(6)",
        "E4xC3",
        "E8xC7",
        "PSL2(7)",
        "SL2(7)",
        "Alternating(6)",
    ],
)
def test_chain_consistency(name):
    report = hierarchy_report(construct(name))
    order = [ClassId.B, ClassId.H, ClassId.N, ClassId.A, ClassId.C]
    for smaller, larger in zip(order, order[1:]):
        if report.verdicts[smaller] == MEMBER and report.verdicts[larger] != UNDECIDED:
            assert report.verdicts[larger] == MEMBER
    for plain in PLAIN_IDS:
        if report.verdicts[plain] == MEMBER:
            assert report.verdicts[plain.pi_counterpart] in (MEMBER, UNDECIDED)


@pytest.mark.parametrize(
    "name", ["Symmetric(5)", "SL2(5)", "PSL2(7)", "M11", "Q8xC3", "Dihedral(16)"]
)
def test_b_pi_equals_n_pi(name):
    report = hierarchy_report(construct(name))
    assert report.verdicts[ClassId.B_PI] == report.verdicts[ClassId.N_PI]
    assert report.verdicts[ClassId.B_PI] == report.verdicts[ClassId.H_PI]


@pytest.mark.parametrize(
    "name",
    ["Dihedral(7)", "SL2(3)", "E8x(C7xC3)", "Cyclic(20)", "E25xSL(2,3)"],
)
def test_solvable_a_pi_members_are_b_pi_members(name):
    report = hierarchy_report(construct(name))
    if report.verdicts[ClassId.A_PI] == MEMBER:
        assert report.verdicts[ClassId.B_PI] == MEMBER


def test_every_emitted_witness_reverifies():
    for name in ["Symmetric(4)", "GeneralizedQuaternion(16)", "PSL2(9)", "Dihedral(6)"]:
        g = construct(name)
        report = hierarchy_report(g)
        assert report.witnesses  # all four fail something
        for w in report.witnesses.values():
            ok, _ = verify_witness(g, w)
            assert ok


def test_capped_plain_class_is_undecided():
    g = construct("SL2(13)")  # order 2184 over the default full cap
    v, w = decide(g, ClassId.B)
    assert v == UNDECIDED and w is None


def test_capped_plain_class_still_detects_non_membership():
    g = construct("M11")  # order 7920; A_pi fails, so A must fail too
    v, w = decide(g, ClassId.A)
    assert v == NON_MEMBER
    assert w.class_id == ClassId.A
    assert w.prime == 2 and w.order == 4


def test_undecided_never_blocks_pi_verdicts():
    report = hierarchy_report(construct("M11"))
    for cid in PI_IDS:
        assert report.verdicts[cid] != UNDECIDED


def test_m11_is_in_c_pi_only():
    report = hierarchy_report(construct("M11"))
    assert report.verdicts[ClassId.C_PI] == MEMBER
    assert report.verdicts[ClassId.A_PI] == NON_MEMBER


def test_witness_prime_marks_pi_buckets():
    _, w = decide(construct("PSL2(9)"), ClassId.A_PI)
    assert w.prime is not None
    assert w.order % w.prime == 0
