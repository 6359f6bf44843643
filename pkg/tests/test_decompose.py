from fractions import Fraction

import pytest

from etaq.curves import WeierstrassCurve
from etaq.decompose import (
    DecompositionError,
    DecompositionResult,
    PrecisionError,
    TargetForm,
    TargetParseError,
    curve_coefficients,
    escalate_and_decompose,
    express_in_basis,
    load_basis,
    load_coefficients,
    load_target,
    parse_target,
    target_vector,
    verify_decomposition,
)
from etaq.etaquot import EtaQuotient, expansion_through
from etaq.gamma0 import sturm_bound
from etaq.linalg import rank
from etaq.search import enumerate_eta_quotients

from conftest import FIXTURES
from oracles import naive_expansion

A55 = EtaQuotient.parse("55; 1:3, 5:3, 11:3, 55:3")


@pytest.fixture(scope="module")
def t35():
    return load_target(FIXTURES / "target35.txt")


@pytest.fixture(scope="module")
def t55():
    return load_target(FIXTURES / "target55.txt")


@pytest.fixture(scope="module")
def basis35():
    return load_basis(FIXTURES / "basis35.txt")


def test_fixtures(t35, t55):
    assert (t35.level, t35.weight, t35.n_max) == (35, 2, 100)
    assert t35.coefficients[:9] == [1, 0, 1, -2, -1, 0, 1, 0, -2]
    assert (t55.level, t55.n_max) == (55, 100)
    assert t55.coefficients[:11] == [1, 1, 0, -1, 1, 0, 0, -3, -3, 1, -1]


def test_curve_targets_match_fixtures(t35, t55):
    assert curve_coefficients(WeierstrassCurve(0, 1, 1, -1, 0), 35, 100).coefficients == t35.coefficients
    assert curve_coefficients(WeierstrassCurve(1, -1, 0, -4, 3), 55, 100).coefficients == t55.coefficients


@pytest.mark.parametrize("text,needle", [
    ("# level: 35\n1 1\n3 1\n", "line 3: gap"),
    ("# level: 35\n1 1\n2 x\n", "line 3: non-integer"),
    ("# level: 35\n1 1\n2 0\n2 0\n", "line 4: duplicate"),
    ("# level: 35\n1 1\n2 1.5\n", "line 3: non-integer"),
    ("# level: 35\n1 1 1\n", "line 2: expected"),
    ("# level: 35\n# nothing\n", "no coefficients"),
    ("", "no coefficients"),
    ("1 1\n2 0\n", "level unknown"),
])
def test_parse_errors(text, needle):
    with pytest.raises(TargetParseError, match=needle):
        parse_target(text)


def test_parse_comments_and_explicit_level():
    t = parse_target("1 1   # leading\n\n2 -1\n", level=11)
    assert (t.level, t.weight, t.coefficients, t.source) == (11, 2, [1, -1], "file")


def test_express_35(t35, basis35):
    assert express_in_basis(t35, basis35, 35, 2) == [0, 1, 1]
    result = escalate_and_decompose(t35)
    assert result.stage_weight == 2 and result.multiplier is None
    assert dict(zip(result.basis, result.coefficients)) == dict(zip(basis35, [0, 1, 1]))
    assert verify_decomposition(result, 20)


def test_basis_element_gives_unit_vector(basis35):
    for j, g in enumerate(basis35):
        target = TargetForm(35, 2, expansion_through(g, 40)[1:])
        assert express_in_basis(target, basis35, 35, 2) == [int(i == j) for i in range(3)]
        result = escalate_and_decompose(target, basis=basis35)
        assert result.stage_weight == 2 and result.coefficients == [int(i == j) for i in range(3)]


def test_precision_error(basis35):
    short = parse_target("# level: 35\n1 1\n2 0\n3 1\n4 -2\n5 -1\n")
    with pytest.raises(PrecisionError, match="a\\(1..8\\)"):
        express_in_basis(short, basis35, 35, 2)


def test_curve_target_extends_on_demand():
    t = curve_coefficients(WeierstrassCurve(1, -1, 0, -4, 3), 55, 10)
    assert len(t.through(60)) == 61 and t.n_max == 60


def test_stage_two_fails_at_55(t55):
    report = enumerate_eta_quotients(55, 2)
    assert express_in_basis(t55, report.basis, 55, 2) is None


def test_escalation_at_55(t55):
    result = escalate_and_decompose(t55)
    assert result.stage_weight == 6
    assert result.multiplier == EtaQuotient.parse("55; 11:4, 55:4")
    assert len(result.basis) == 28
    assert verify_decomposition(result, 20)
    for q, g in zip(result.reduced_quotients(), result.basis):
        assert q * result.multiplier == g


def test_multiplier_override_at_55(t55):
    result = escalate_and_decompose(t55, multiplier=A55)
    assert result.stage_weight == 8 and len(result.basis) == 40
    assert verify_decomposition(result, 20)
    # the reduced quotients are weakly holomorphic: weight 2 but some cusp order negative
    assert all(q.weight == 2 for q in result.reduced_quotients())


def test_pivot_order_does_not_change_solution(t55):
    report = enumerate_eta_quotients(55, 6)
    a = EtaQuotient.parse("55; 11:4, 55:4")
    sols = {p: express_in_basis(t55, report.basis, 55, 6, a, pivot=p) for p in ("small", "first", "last")}
    assert sols["small"] == sols["first"] == sols["last"]


def test_perturbed_result_fails_verification(t35, basis35):
    result = escalate_and_decompose(t35, basis=basis35)
    assert verify_decomposition(result)
    bad = DecompositionResult(result.target, 2, None, result.basis, [c + (i == 1) for i, c in enumerate(result.coefficients)])
    assert not verify_decomposition(bad)


def test_result_round_trip(t55):
    result = escalate_and_decompose(t55)
    data = result.as_dict()
    assert all("/" in e["coefficient"] for e in data["entries"])
    again = DecompositionResult.from_dict(data, t55)
    assert again.coefficients == result.coefficients and again.basis == result.basis
    assert again.multiplier == result.multiplier


def test_target_vector_uses_shifted_target(t55):
    n = 60
    a = expansion_through(A55, n)
    f = [0] + t55.coefficients
    direct = [sum(a[i] * f[m - i] for i in range(m + 1)) for m in range(n + 1)]
    assert target_vector(t55, A55, n) == direct


def test_bad_overrides(t55):
    with pytest.raises(DecompositionError, match="weight"):
        escalate_and_decompose(t55, basis=[EtaQuotient.parse("55; 1:2, 11:2"), A55])
    with pytest.raises(DecompositionError):
        escalate_and_decompose(t55, multiplier=EtaQuotient.parse("55; 1:1, 55:1"))
    dup = [EtaQuotient.parse("55; 1:2, 11:2")] * 2
    with pytest.raises(DecompositionError, match="linearly dependent"):
        escalate_and_decompose(t55, basis=dup)


def test_table3_is_table1_over_multiplier():
    table1 = load_basis(FIXTURES / "table1.txt")
    table3 = load_basis(FIXTURES / "table3.txt")
    assert [g / A55 for g in table1] == table3


def test_table1_rank():
    # the shipped 40-element list has rank 39: its last element is a combination of the others
    table1 = load_basis(FIXTURES / "table1.txt")
    B = sturm_bound(55, 8)
    vecs = [expansion_through(g, B) for g in table1]
    assert rank(vecs) == 39
    assert rank(vecs[:39]) == 39
    assert rank(vecs + [expansion_through(g, B) for g in enumerate_eta_quotients(55, 8).basis]) == 40
    # same rank from the naive product expansions
    naive = []
    for g in table1:
        lead = sum(d * r for d, r in g.exponents.items()) // 24
        naive.append([0] * lead + naive_expansion(g.exponents, B + 1 - lead))
    assert naive == vecs


def test_table2_fixture_shape():
    c = load_coefficients(FIXTURES / "table2.txt")
    assert len(c) == 40
    assert c[15] == c[19] == c[21] == 0
    assert c[0] == Fraction(-6008649555929309389497, 819506238451459924562)
