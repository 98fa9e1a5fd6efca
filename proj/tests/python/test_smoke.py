"""Smoke tests for the python surface of the C++ core."""

import math

import pytest

import moprl

NILP = {"dim": 2, "entries": [[[0, 0], [1, 0]], [[0, 0], [0, 0]]]}
HERMITE_A = {"family": "hermite-a", "A": NILP}


def test_weight_eval_closed_form():
    x = 0.7
    w = moprl.weight_eval(HERMITE_A, x)
    scale = math.exp(-x * x)
    assert w[0][0] == pytest.approx(scale * (1 + x * x), abs=1e-14)
    assert w[0][1] == pytest.approx(scale * x, abs=1e-14)
    assert w[1][1] == pytest.approx(scale, abs=1e-14)


def test_expm_nilpotent_is_exact():
    e = moprl.expm([[0, 2.5], [0, 0]])
    assert e[0][0] == 1.0
    assert e[0][1] == 2.5
    assert e[1][0] == 0.0


def test_g_poly_coefficients():
    coeffs = moprl.g_poly(HERMITE_A)
    assert len(coeffs) == 2
    assert coeffs[0][0][1] == 1.0  # the A block
    assert coeffs[1][0][0] == -1.0  # the -I slope


def test_moments_match_gaussian_integrals():
    table = moprl.compute_moments({"family": "scalar-hermite"}, max_order=4, tol=1e-12)
    mu0 = table["moments"][0]["entries"][0][0][0]
    mu2 = table["moments"][2]["entries"][0][0][0]
    assert mu0 == pytest.approx(math.sqrt(math.pi), abs=1e-12)
    assert mu2 == pytest.approx(math.sqrt(math.pi) / 2, abs=1e-12)


def test_ledger_recurrence_data():
    led = moprl.Ledger({"family": "scalar-hermite"}, n_max=6, tol=1e-12)
    for n in range(1, 6):
        assert led.beta(n)[0][0] == pytest.approx(n / 2, abs=1e-10)
        assert abs(led.alpha(n)[0][0]) < 1e-10
    # monic degree-2 coefficients: x^2 - 1/2
    coeffs = led.monic(2)
    assert coeffs[0][0][0] == pytest.approx(-0.5, abs=1e-11)
    assert coeffs[2][0][0] == 1.0


def test_ledger_dict_export():
    led = moprl.Ledger(HERMITE_A, n_max=3, tol=1e-12)
    d = led.to_dict()
    assert d["n_max"] == 3
    assert len(d["monic"]) == 4
    assert d["spec"]["family"] == "hermite-a"


def test_verify_scalar_suite_passes():
    rep = moprl.verify({"family": "scalar-hermite"}, n_max=4, tol=1e-12)
    assert rep["all_pass"] is True
    names = {c["name"] for c in rep["checks"]}
    assert "recurrence" in names and "lax" in names


def test_verify_suite_selection_and_unknown_names():
    rep = moprl.verify({"family": "scalar-hermite"}, n_max=2, suite=["recurrence"])
    assert len(rep["checks"]) == 1
    with pytest.raises(ValueError):
        moprl.verify({"family": "scalar-hermite"}, n_max=2, suite=["nope"])


def test_poly_u_validate():
    j4 = [[0.0] * 4 for _ in range(4)]
    for k in range(3):
        j4[k][k + 1] = 1.0
    a2 = [[0.5 * sum(j4[i][k] * j4[k][j] for k in range(4)) for j in range(4)] for i in range(4)]
    assert moprl.poly_u_validate(j4, a2) is True
    bad = [[1.0 if i == j == 0 else 0.0 for j in range(4)] for i in range(4)]
    assert moprl.poly_u_validate(j4, bad) is False


def test_ladder_export_and_frame():
    led = moprl.Ledger(HERMITE_A, n_max=4, tol=1e-12)
    lad = led.ladder(2)
    # the quadratic A-family has a constant A-coefficient equal to 2I
    a_poly = lad["A_poly"]["coeffs"]
    assert len(a_poly) == 1
    assert a_poly[0]["entries"][0][0][0] == pytest.approx(2.0, abs=1e-10)
    assert a_poly[0]["entries"][0][1][0] == pytest.approx(0.0, abs=1e-10)
    # B(x) = x I - A: top-left frame block at z = 0 is -B(0) = A
    f = led.frame(2, 0j)
    assert f[0][1] == pytest.approx(1.0, abs=1e-10)
    assert f[0][0] == pytest.approx(0.0, abs=1e-10)


def test_commutativity_probe():
    rep = moprl.commutativity_probe(HERMITE_A, [0.5, 1.0])
    assert rep["max_residual"] > 1e-3
    assert rep["reduces_to_scalar_candidate"] is False
    rep2 = moprl.commutativity_probe({"family": "scalar-hermite"}, [0.5, 1.0])
    assert rep2["max_residual"] == 0.0


def test_spec_errors_surface_as_value_errors():
    with pytest.raises(ValueError):
        moprl.weight_eval({"family": "martian"}, 0.0)


def test_numerical_failures_surface_as_arithmetic_errors():
    # the factor grows like e^{x^2} against the e^{-x^2} envelope
    bad = {"family": "hermite-b", "B": {"dim": 1, "entries": [[[1, 0]]]}}
    with pytest.raises(ArithmeticError):
        moprl.compute_moments(bad, max_order=2, tol=1e-8)


def test_rh_solution_determinant():
    led = moprl.Ledger(HERMITE_A, n_max=3, tol=1e-12)
    y = led.rh_solution(2, 1 + 1j)
    # 4x4 determinant by expansion through python's complex arithmetic
    import itertools

    def det(m):
        n = len(m)
        total = 0
        for perm in itertools.permutations(range(n)):
            sign = 1
            seen = list(perm)
            for i in range(n):
                for j in range(i + 1, n):
                    if seen[i] > seen[j]:
                        sign = -sign
            prod = 1
            for i in range(n):
                prod *= m[i][perm[i]]
            total += sign * prod
        return total

    assert det(y) == pytest.approx(1.0 + 0.0j, abs=1e-8)
