import itertools
import math

import numpy as np
import pytest

from nmentangle.amplitudes import PhysicalParams

LABELS = ("a1", "r1", "a2", "r2")

# 30-digit reference values (mpmath) of the closed-form expressions
Q = {0.1: 0.730115380179405829094838538793, 0.2: 0.53180208294425965118909677314}
PERIOD = {0.1: 3.14552702288800171372178825454, 0.2: 3.15741941699827645476544793939}


@pytest.fixture(params=[0.1, 0.2], ids=["lw0.1", "lw0.2"])
def ratio(request):
    return request.param


def params_for(ratio, alpha=1 / math.sqrt(10), **kw):
    return PhysicalParams.from_ratio(ratio, alpha, **kw)


def brute_partial_trace(psi, keep):
    """Reduced density matrix by explicit summation over basis labels."""
    keep_idx = [LABELS.index(q) for q in LABELS if q in keep]
    dim = 2 ** len(keep_idx)
    rho = np.zeros((dim, dim), dtype=complex)
    for i, j in itertools.product(range(16), repeat=2):
        bi = [(i >> (3 - k)) & 1 for k in range(4)]
        bj = [(j >> (3 - k)) & 1 for k in range(4)]
        if any(bi[k] != bj[k] for k in range(4) if k not in keep_idx):
            continue
        r = int("".join(str(bi[k]) for k in keep_idx), 2)
        c = int("".join(str(bj[k]) for k in keep_idx), 2)
        rho[r, c] += psi[i] * np.conj(psi[j])
    return rho


def random_pure(rng, n):
    v = rng.normal(size=n) + 1j * rng.normal(size=n)
    return v / np.linalg.norm(v)


def pytest_terminal_summary(terminalreporter):
    import sys

    results = getattr(sys.modules.get("test_acceptance"), "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for line in results:
            terminalreporter.write_line(line)
