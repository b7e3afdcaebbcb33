"""Hypothesis strategies built on the seeded generator, so shrinking acts on seeds."""

from hypothesis import strategies as st

from commamodel.chain import FactorKind
from commamodel.comma import StructureId
from commamodel.linalg import Matrix

primes = st.sampled_from([2, 3])
seeds = st.integers(min_value=0, max_value=2**63 - 1)
structures = st.sampled_from(list(StructureId))
kinds = st.sampled_from(list(FactorKind))


@st.composite
def matrices(draw, p=None, max_side=5):
    p = p or draw(primes)
    r = draw(st.integers(0, max_side))
    c = draw(st.integers(0, max_side))
    rows = [[draw(st.integers(0, p - 1)) for _ in range(c)] for _ in range(r)]
    return Matrix(p, rows) if r and c else Matrix.zeros(p, r, c)
