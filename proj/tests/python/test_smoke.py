import achern
import pytest


def test_fermat_quotient_of_two_at_three():
    assert achern.fermat_quotient(["2"], 3) == "-2"
    assert achern.frobenius(["2"], 3) == "2"


def test_zeta_frobenius():
    # N = 12: zeta^4 = zeta^2 - 1, so zeta^5 = zeta^3 - zeta
    assert achern.frobenius(["0", "1"], 5, N0=6, N=12) == "-1*z + 1*z^3"
    assert achern.fermat_quotient(["0", "1"], 5, N0=6, N=12) == "0"
    # ((1 + zeta^5) - (1 + zeta)^5) / 5, reduced
    assert achern.fermat_quotient(["1", "1"], 5, N0=6, N=12) == "1 + -1*z + -3*z^2 + -2*z^3"
    with pytest.raises(achern.AchernError):
        achern.frobenius(["1"], 3, N0=6, N=12)


def test_rational_reconstruct_and_legendre():
    m = 3**10
    assert achern.rational_reconstruct(str(m - 2), str(m)) == "-2"
    assert achern.legendre("2", 3) == -1
    assert achern.legendre("2", 7) == 1


def test_delta_command():
    code, report = achern.run({"command": "delta", "a": "2", "p": 3})
    assert code == 0
    assert report["results"][0]["delta"] == "-2"


def test_lift_not_global():
    code, report = achern.run({"command": "lift", "q": [[2]], "p": 3})
    assert code == 0
    lift = report["lifts"][0]
    assert lift["constant_term"] == [["-2"]]
    assert "not-global-along-1" in lift["flags"]


def test_verify_sp2_passes():
    code, report = achern.run({"command": "verify-theorems", "form": "sp(2)", "primes": [3, 5]})
    assert code == 0
    statuses = {v["claim"]: v["status"] for v in report["forms"][0]["verdicts"]}
    assert statuses["curvature_vanishes_sp2"] == "pass"


def test_empty_primes_is_input_error():
    code, report = achern.run({"command": "lift", "form": "sp(2)", "primes": []})
    assert code == 1
    assert report["status"] == "input_error"


def test_render_is_deterministic():
    cfg = {"command": "curvature", "form": "sp(4)", "primes": [3, 5]}
    a = achern.render(achern.run(cfg)[1], "markdown")
    b = achern.render(achern.run(cfg)[1], "markdown")
    assert a == b
    assert "Divisibility witnesses" in a
