"""Shared fixtures and hypothesis strategies.

The "case study" model used across the suite: a binary confounder with
p(u) = 0.9 under which treatment is rarer (0.2 vs 0.6) and recovery more
modest in both arms. Its forward pass and interventional truths are
known in closed form and hand-checked, so the suite can use them as
frozen oracle values.
"""

import hypothesis.strategies as st
import pytest

from counterbound.model import ObservedJoint, Scm, SensitivityParams


@pytest.fixture
def case_scm() -> Scm:
    return Scm(
        p_u=0.9,
        p_x_given_u=0.2,
        p_x_given_u2=0.6,
        p_y_given_x_u=0.4,
        p_y_given_x_u2=0.6,
        p_y_given_x2_u=0.1,
        p_y_given_x2_u2=0.3,
    )


@pytest.fixture
def case_scm_proxy(case_scm) -> Scm:
    return Scm(**{**case_scm.to_json(), "p_v_given_u": 0.8, "p_v_given_u2": 0.3})


@pytest.fixture
def case_obs() -> ObservedJoint:
    # Forward pass of case_scm, hand-checked:
    #   p(x,y)   = 0.4*0.2*0.9 + 0.6*0.6*0.1 = 0.108
    #   p(x,y')  = 0.6*0.2*0.9 + 0.4*0.6*0.1 = 0.132
    #   p(x',y)  = 0.1*0.8*0.9 + 0.3*0.4*0.1 = 0.084
    #   p(x',y') = 0.9*0.8*0.9 + 0.7*0.4*0.1 = 0.676
    return ObservedJoint(pxy=0.108, pxy_=0.132, px_y=0.084, px_y_=0.676)


@pytest.fixture
def case_true_params() -> SensitivityParams:
    # Extremes of p(y | arm, u) over u in case_scm.
    return SensitivityParams(m_x=0.4, M_x=0.6, m_xp=0.1, M_xp=0.3)


def observed_joints(min_cell: float = 0.01) -> st.SearchStrategy[ObservedJoint]:
    def build(raw):
        total = sum(raw)
        return ObservedJoint(*(c / total for c in raw))

    cell = st.floats(min_value=min_cell, max_value=1.0,
                     allow_nan=False, allow_infinity=False)
    return st.builds(build, st.tuples(cell, cell, cell, cell))


@st.composite
def obs_with_params(draw):
    """An observed table plus sensitivity params inside its possible region."""
    obs = draw(observed_joints())
    fracs = [draw(st.floats(min_value=0.0, max_value=1.0)) for _ in range(4)]
    pyx = obs.p_y_given_x
    pyxp = obs.p_y_given_xp
    params = SensitivityParams(
        m_x=fracs[0] * pyx,
        M_x=pyx + fracs[1] * (1.0 - pyx),
        m_xp=fracs[2] * pyxp,
        M_xp=pyxp + fracs[3] * (1.0 - pyxp),
    )
    return obs, params


def scms(with_proxy: bool = False) -> st.SearchStrategy[Scm]:
    p = st.floats(min_value=0.01, max_value=0.99,
                  allow_nan=False, allow_infinity=False)
    kwargs = dict(
        p_u=p, p_x_given_u=p, p_x_given_u2=p,
        p_y_given_x_u=p, p_y_given_x_u2=p,
        p_y_given_x2_u=p, p_y_given_x2_u2=p,
    )
    if with_proxy:
        kwargs["p_v_given_u"] = p
        kwargs["p_v_given_u2"] = p
    return st.builds(Scm, **kwargs)
