"""Shared strategies and the acceptance-criteria terminal summary."""

from fractions import Fraction
from typing import List

from hypothesis import HealthCheck, settings, strategies as st

from gct.poly import Polynomial

settings.register_profile(
    "exact",
    deadline=None,  # exact arithmetic has high variance per example
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("exact")


def small_fractions(max_abs: int = 9, max_den: int = 6) -> st.SearchStrategy:
    return st.builds(
        Fraction,
        st.integers(-max_abs, max_abs),
        st.integers(1, max_den),
    )


@st.composite
def polynomials(
    draw,
    num_vars: int = None,
    max_vars: int = 3,
    max_exp: int = 3,
    max_terms: int = 5,
    homogeneous_degree: int = None,
):
    v = num_vars if num_vars is not None else draw(st.integers(1, max_vars))
    n_terms = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n_terms):
        if homogeneous_degree is None:
            e = tuple(
                draw(st.integers(0, max_exp)) for _ in range(v)
            )
        else:
            # split homogeneous_degree into v non-negative parts
            cuts = sorted(
                draw(
                    st.lists(
                        st.integers(0, homogeneous_degree),
                        min_size=v - 1,
                        max_size=v - 1,
                    )
                )
            )
            bounds = [0] + cuts + [homogeneous_degree]
            e = tuple(bounds[i + 1] - bounds[i] for i in range(v))
        c = draw(small_fractions())
        if c != 0:
            terms[e] = c
    return Polynomial(v, terms)


@st.composite
def fraction_matrices(draw, max_rows: int = 5, max_cols: int = 5):
    rows = draw(st.integers(1, max_rows))
    cols = draw(st.integers(1, max_cols))
    return [
        [draw(small_fractions(max_abs=6, max_den=4)) for _ in range(cols)]
        for _ in range(rows)
    ]


# ---------------------------------------------------------------------------
# Acceptance-criteria reporting: tests append lines, the summary hook prints
# them after the run so each criterion shows one pass/fail line in the output.
# ---------------------------------------------------------------------------

ACCEPTANCE_LINES: List[str] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
