import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from kminkowski.calculus import OneForm, build_calculus
from kminkowski.coaction import build_context
from kminkowski.engine import Element
from kminkowski.minkowski import Metric
from kminkowski.scalars import GaussianRational, Scalar

settings.register_profile("ci", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("ci")


@pytest.fixture(scope="session")
def ctx2():
    return build_context(Metric.minkowski(2))


@pytest.fixture(scope="session")
def ctx3():
    return build_context(Metric.minkowski(3))


@pytest.fixture(scope="session")
def cal2(ctx2):
    return build_calculus(ctx2.metric)


small = st.integers(-4, 4)
gaussians = st.builds(lambda a, b, c: GaussianRational(a, b) if c == 1 else GaussianRational(a, b) / GaussianRational(c),
                      small, small, st.integers(1, 3))
scalars = st.dictionaries(st.integers(-2, 2), gaussians, max_size=3).map(Scalar)


def elements(pres, max_degree=3, max_terms=3):
    """Random normal-ordered elements: sums of scalar * word, with words taken raw and normalised."""
    ngen = len(pres.normal_words(1, 1))
    word = st.lists(st.integers(0, ngen - 1), max_size=max_degree).map(tuple)
    term = st.tuples(word, scalars)

    def build(terms):
        out = pres.zero()
        for w, c in terms:
            e = pres.one()
            for g in w:
                e = e * pres.gen(g)
            out = out + e.scale(c)
        return out

    return st.lists(term, max_size=max_terms).map(build)


def one_forms(cal, max_degree=2):
    coeff = elements(cal.pres, max_degree, 2)
    return st.lists(coeff, min_size=len(cal.basis), max_size=len(cal.basis)).map(
        lambda cs: OneForm(cal, dict(zip(cal.basis, cs))))


__all__ = ["elements", "one_forms", "scalars", "gaussians", "Element"]
