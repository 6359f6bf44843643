from hypothesis import given, strategies as st

from etaq.arith import divisors, euler_phi, factorize, is_squarefree, kronecker, sigma1

from oracles import kronecker as kronecker_oracle


def test_divisors_and_sigma():
    assert divisors(35) == (1, 5, 7, 35)
    assert divisors(1) == (1,)
    assert sigma1(35) == 48
    assert sigma1(55) == 72
    assert euler_phi(35) == 24


def test_squarefree():
    assert is_squarefree(385)
    assert not is_squarefree(50)


@given(st.integers(1, 10**6))
def test_factorize_roundtrip(n):
    prod = 1
    for p, e in factorize(n).items():
        prod *= p**e
    assert prod == n


def test_kronecker_conventions():
    assert kronecker(3, 2) == -1
    assert kronecker(7, 2) == 1
    assert kronecker(4, 2) == 0
    assert kronecker(-5, -1) == -1
    assert kronecker(5, -1) == 1
    assert kronecker(1, 0) == 1
    assert kronecker(2, 0) == 0


@given(st.integers(-500, 500), st.integers(-300, 300))
def test_kronecker_matches_euler_criterion(a, n):
    assert kronecker(a, n) == kronecker_oracle(a, n)
