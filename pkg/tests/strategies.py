"""Hypothesis strategies for random product states."""

import math

from hypothesis import strategies as st

from nucleus_entanglement.dynamics import make_product_state


def amplitudes(size):
    mags = st.floats(0.05, 1.0)
    phases = st.floats(0.0, 2 * math.pi)
    return st.lists(st.tuples(mags, phases), min_size=size, max_size=size).map(
        lambda xs: [m * complex(math.cos(p), math.sin(p)) for m, p in xs]
    )


@st.composite
def product_states(draw, max_electron=6, max_nucleus=10, max_dim=6, nucleus_dim=None):
    e_levels = sorted(draw(st.sets(st.integers(1, max_electron), min_size=1, max_size=max_dim)))
    n_min, n_max = (1, max_dim) if nucleus_dim is None else (nucleus_dim, nucleus_dim)
    n_levels = sorted(draw(st.sets(st.integers(1, max_nucleus), min_size=n_min, max_size=n_max)))
    e_amps = draw(amplitudes(len(e_levels)))
    n_amps = draw(amplitudes(len(n_levels)))
    return make_product_state(zip(e_levels, e_amps), zip(n_levels, n_amps))
