import numpy as np
import pytest

from _corpus import corpus, renz
from fobnn_sat import build_formula, kernels
from fobnn_sat.classic import _masks, classic_stg
from fobnn_sat.kernels import _pykernels
from fobnn_sat.oracle import brute_force_transitions

IMPLS = kernels.available()


def test_backend_selection():
    assert kernels.BACKEND in IMPLS
    assert kernels.impl is IMPLS[kernels.BACKEND]
    assert "python" in IMPLS


@pytest.mark.parametrize("name", sorted(IMPLS))
@pytest.mark.parametrize("rn", corpus() + [renz()], ids=lambda r: r.name)
def test_oracle_kernels_agree(name, rn):
    impl = IMPLS[name]
    for ma in (None, "all"):
        f = build_formula(rn, mass_action=ma)
        ref = brute_force_transitions(f, impl=_pykernels)
        assert brute_force_transitions(f, impl=impl) == ref
        if len(rn.species) <= 3:
            ext = brute_force_transitions(f, extended=True, impl=_pykernels)
            assert brute_force_transitions(f, extended=True, impl=impl) == ext


@pytest.mark.parametrize("name", sorted(IMPLS))
def test_classic_kernels_agree(name):
    rng = np.random.default_rng(7)
    for _ in range(30):
        n = int(rng.integers(0, 7))
        m = int(rng.integers(0, 5))
        rm = rng.integers(0, 1 << n, size=m, dtype=np.int64) if n else np.zeros(m, dtype=np.int64)
        pm = rng.integers(0, 1 << n, size=m, dtype=np.int64) if n else np.zeros(m, dtype=np.int64)
        got = IMPLS[name].classic_edges(n, rm, pm)
        ref = _pykernels.classic_edges(n, rm, pm)
        assert got.dtype == np.int64 and got.shape[1:] == (2,)
        assert got.tolist() == ref.tolist()


@pytest.mark.parametrize("name", sorted(IMPLS))
def test_classic_stg_same_for_every_kernel(name):
    rn = renz()
    assert classic_stg(rn, impl=IMPLS[name]) == classic_stg(rn, impl=_pykernels)
    rm, pm = _masks(rn)
    assert rm.tolist() == [0b0011, 0b0100, 0b0100]
    assert pm.tolist() == [0b0100, 0b0011, 0b1010]


def test_empty_search_space():
    out = _pykernels.satisfying_assignments(
        *(np.zeros(0, dtype=np.intc),) * 2,
        np.zeros((4, 8, 8), dtype=np.intc),
        0,
        *(np.zeros(0, dtype=np.intc),) * 7,
    )
    assert out == [()]
