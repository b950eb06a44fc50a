import math

import numpy as np
import pytest

# High-precision reference values, computed once with mpmath.nsum at 30 digits.
F_REF = {
    0.0: 1.2020569031595942854,
    0.05: 1.1054552367038634240,
    0.1: 1.0213603178124853831,
    0.25: 0.82504197243379084853,
    0.5: 0.61496570643107887993,
    0.9: 0.42830442463134970229,
    1.0: 0.39711677137965943279,
    2.0: 0.22605969410373562322,
    5.0: 0.096504751675606332736,
    10.0: 0.049148580151952258754,
    50.0: 0.0099665313726347572798,
}
S_REF = {
    0.0: 0.90154267736969571405,
    0.5: 0.36913453529384457785,
    0.99: 0.19310205056003530344,
    1.0: 0.19085627827121172066,
    10.0: 0.0028693009833508652998,
    50.0: 0.00010213724762479720332,
}
ZETA = {2: math.pi**2 / 6, 3: 1.2020569031595942854, 4: math.pi**4 / 90,
        5: 1.0369277551433699263, 7: 1.0083492773819228268, 9: 1.0020083928260822144}


def brute_tail(N, h, mu=2.0, extra=100_000):
    """Sum of terms N+1 .. N+extra plus an integral-test bound for the rest."""
    n = np.arange(N + 1, N + extra + 1, dtype=float)
    s = math.fsum((n * (n * n + h) ** (-mu)).tolist())
    M = N + extra
    rest_lo = ((M + 1) ** 2 + h) ** (1 - mu) / (2 * (mu - 1))
    rest_hi = (M**2 + h) ** (1 - mu) / (2 * (mu - 1))
    return s + rest_lo, s + rest_hi


@pytest.fixture
def f_ref():
    return F_REF


@pytest.fixture
def s_ref():
    return S_REF


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
