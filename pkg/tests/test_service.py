import pytest
from fastapi.testclient import TestClient

from gelfond.service import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


class TestHealth:
    def test_health(self, client):
        r = client.get("/health")
        assert r.status_code == 200
        assert r.json() == {"status": "ok"}


class TestSum:
    def test_unit_sum(self, client):
        r = client.post("/sum", json={
            "weight": "unit", "x": "2^12", "q": 2, "alpha": "1/2",
            "P": "const:1"})
        assert r.status_code == 200
        body = r.json()
        assert body["term_count"] == 1 << 12
        assert body["modulus"] >= 0
        assert body["x"] == 1 << 12
        assert body["rhs_over_x"] is not None

    def test_modes_agree(self, client):
        payload = {"weight": "moebius", "x": 5000, "q": 2, "alpha": "2/3",
                   "P": "log:2/3"}
        b = client.post("/sum", json={**payload,
                                      "accumulation": "bucketed"}).json()
        c = client.post("/sum", json={**payload,
                                      "accumulation": "compensated"}).json()
        assert b["re"] == pytest.approx(c["re"], abs=1e-8)
        assert b["im"] == pytest.approx(c["im"], abs=1e-8)

    def test_mode_error_maps_to_422(self, client):
        r = client.post("/sum", json={
            "weight": "unit", "x": 100, "q": 2, "alpha": "0.3",
            "P": "const:1", "accumulation": "bucketed"})
        assert r.status_code == 422

    def test_bad_weight_rejected(self, client):
        r = client.post("/sum", json={
            "weight": "liouville", "x": 100, "q": 2, "alpha": "1/2",
            "P": "const:1"})
        assert r.status_code == 422


class TestTypeSums:
    def test_type1(self, client):
        r = client.post("/type1", json={
            "M": 8, "N": 64, "lo": 1, "hi": "2^9", "q": 2, "alpha": "1/2",
            "P": "const:1"})
        assert r.status_code == 200
        assert r.json()["value"] >= 0

    def test_type2_seeded_reproducible(self, client):
        payload = {"M": 8, "N": 32, "q": 2, "alpha": "1/2", "P": "const:1",
                   "coeff_seed": 5}
        a = client.post("/type2", json=payload).json()
        b = client.post("/type2", json=payload).json()
        assert a == b

    def test_type2_explicit_coeffs(self, client):
        ms = 8 - 8 // 2
        ns = 32 - 32 // 2
        r = client.post("/type2", json={
            "M": 8, "N": 32, "q": 2, "alpha": "1/2", "P": "const:1",
            "a": [1.0] * ms, "b": [1.0] * ns})
        assert r.status_code == 200


class TestFourier:
    def test_table_masses(self, client):
        r = client.post("/fourier", json={
            "kappa": 0, "lam": 8, "k": 10, "q": 2, "alpha": "1/2",
            "P": "const:1", "offsets": [0.0, 0.5]})
        body = r.json()
        assert len(body["masses"]) == 2
        for entry in body["masses"]:
            assert entry["mass"] <= 1.0 + 1e-9

    def test_capacity_maps_to_413(self, client):
        r = client.post("/fourier", json={
            "kappa": 0, "lam": 30, "k": 10, "q": 2, "alpha": "1/2",
            "P": "const:1"})
        assert r.status_code == 413

    def test_lemma(self, client):
        r = client.post("/fourier/lemma", json={
            "l": 6, "kappa": 1, "q": 2, "alpha": "1/2", "P": "const:4",
            "grid_bits": 8, "random_offsets": 16, "seed": 1})
        body = r.json()
        assert body["ok"] is True
        assert body["grid_size"] == 2**8 + 16

    def test_doubletrunc(self, client):
        r = client.post("/fourier/doubletrunc", json={
            "mu0": 0, "mu1": 6, "mu2": 12, "lam": 5, "k": 16, "q": 2,
            "alpha": "1/2", "P": "const:1"})
        assert r.status_code == 200
        assert r.json()["mass"] <= 1.0 + 1e-9


class TestCounting:
    def test_carry_with_agreement(self, client):
        r = client.post("/carry", json={
            "lam": 5, "kappa": 1, "rho": 2, "q": 2, "P": "const:1",
            "both_impls": True})
        body = r.json()
        assert body["agreement"] is True
        assert body["count"] >= 0

    def test_carry_hypothesis_maps_to_422(self, client):
        r = client.post("/carry", json={
            "lam": 4, "kappa": 1, "rho": 0, "q": 2, "P": "const:1"})
        assert r.status_code == 422

    def test_perturb_with_agreement(self, client):
        r = client.post("/perturb", json={
            "mu": 3, "nu": 5, "rho": 1, "q": 2, "both_impls": True})
        assert r.json()["agreement"] is True

    def test_mismatch(self, client):
        r = client.post("/mismatch", json={
            "mu": 2, "nu": 4, "rho": 1, "q": 2, "alpha": "1/2",
            "P": "const:1"})
        body = r.json()
        assert body["extra"]["mode"] == "exhaustive"


class TestAutomaton:
    def test_pair(self, client):
        r = client.post("/automaton", json={
            "k_states": 3, "P": "log:2/3", "q": 2})
        body = r.json()
        assert body["ok"] is True
        assert len(body["word_even"]) == body["m"]

    def test_exhausted_maps_to_422(self, client):
        r = client.post("/automaton", json={
            "k_states": 4, "P": "const:2", "q": 2, "max_m": 1000})
        assert r.status_code == 422


class TestRunlength:
    def test_exact(self, client):
        r = client.post("/runlength", json={"mode": "exact", "N": 3, "k": 1})
        assert r.json()["result"] == {"E": 6, "I": 2, "E_fraction": 0.75}

    def test_exact_needs_k(self, client):
        r = client.post("/runlength", json={"mode": "exact", "N": 3})
        assert r.status_code == 422

    def test_proposition(self, client):
        r = client.post("/runlength", json={
            "mode": "proposition", "N": 16, "A": 1.5})
        assert r.json()["result"]["ok"] is True

    def test_word_reproducible(self, client):
        payload = {"mode": "word", "N": 64, "seed": 3}
        a = client.post("/runlength", json=payload).json()
        b = client.post("/runlength", json=payload).json()
        assert a == b
        assert len(a["result"]["word"]) == 64

    def test_maxrun(self, client):
        r = client.post("/runlength", json={
            "mode": "maxrun", "N": 32, "A": 1.5, "samples": 20000,
            "seed": 1})
        assert r.json()["result"]["ok"] is True

    def test_weighted(self, client):
        r = client.post("/runlength", json={
            "mode": "weighted", "N": 10, "k": 3, "weight": "unit"})
        body = r.json()
        assert body["result"]["sum_plain"] == float(1 << 10)

    def test_weighted_capacity(self, client):
        r = client.post("/runlength", json={
            "mode": "weighted", "N": 30, "k": 3, "weight": "unit"})
        assert r.status_code == 413


class TestBoundsEndpoints:
    def test_admissible_const10(self, client):
        r = client.post("/admissible", json={
            "q": 2, "alpha": "1/2", "P": "const:10", "x_max": "10^4"})
        body = r.json()
        assert body["first_failure"] == 2
        assert body["ok"] is False

    def test_bounds(self, client):
        r = client.post("/bounds", json={
            "x": "2^20", "q": 2, "alpha": "1/2", "P": "log:2/3"})
        body = r.json()
        assert body["rhs_over_x"] > 0
        assert body["norm"] == 0.5
