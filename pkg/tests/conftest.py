import os

from hypothesis import HealthCheck, settings, strategies as st

from divops.algebra import Poly

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", deadline=None, max_examples=50, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

SYMS = ("a", "b", "c")
small_int = st.integers(min_value=-4, max_value=4)
small_rat = st.fractions(min_value=-3, max_value=3, max_denominator=4)


def polys(symbols=SYMS, max_exp=2, max_terms=4, coeffs=small_int):
    exps = st.tuples(*[st.integers(0, max_exp) for _ in symbols])
    return st.dictionaries(exps, coeffs, max_size=max_terms).map(lambda d: Poly(symbols, d))


def pytest_terminal_summary(terminalreporter):
    try:
        import test_acceptance
    except ImportError:
        return
    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(test_acceptance.RESULTS[n])
