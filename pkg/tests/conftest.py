import pathlib

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from idealsync import _pykernels, kernels
from idealsync.automata import Acceptor, Semiautomaton

FIXTURES = pathlib.Path(__file__).parent / "fixtures"

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

try:
    from idealsync import _ckernels
except ImportError:  # extension not built
    _ckernels = None

BACKENDS = [pytest.param(_pykernels, id="python")]
if _ckernels is not None:
    BACKENDS.append(pytest.param(_ckernels, id="cython"))


@pytest.fixture(params=BACKENDS)
def backend(request, monkeypatch):
    """Route every kernel call through one backend for the test's duration."""
    mod = request.param
    for name in ("image_mask", "power_closure", "power_equals_dfa"):
        monkeypatch.setattr(kernels, name, getattr(mod, name))
    return mod


@st.composite
def semiautomata(draw, min_states=1, max_states=5, alphabet=("a", "b")):
    n = draw(st.integers(min_states, max_states))
    rows = [tuple(draw(st.integers(0, n - 1)) for _ in alphabet) for _ in range(n)]
    return Semiautomaton(alphabet, rows)


@st.composite
def acceptors(draw, min_states=1, max_states=5, alphabet=("a", "b")):
    base = draw(semiautomata(min_states, max_states, alphabet))
    n = base.n_states
    initial = draw(st.integers(0, n - 1))
    finals = draw(st.sets(st.integers(0, n - 1)))
    return Acceptor(base, initial, finals)


binary_words = st.lists(st.sampled_from("ab"), max_size=8).map(tuple)
