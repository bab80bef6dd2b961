import os
import subprocess
import sys

import pytest

from fqzeta import _kernels_py as PY
from fqzeta.field import field_for_q

CY = pytest.importorskip("fqzeta._kernels")

FIELDS = [2, 3, 4, 5, 8, 9, 25, 251]


def _patterned(q, n, seed):
    """Deterministic coefficient lists; last entry forced nonzero."""
    out = [(seed * 31 + 17 * i * i + 5 * i) % q for i in range(n)]
    if n:
        out[-1] = out[-1] or 1
    return out


def _inputs(q):
    lists = [[]]
    for n in (1, 2, 3, 7, 20, 64):
        for seed in range(3):
            lists.append(_patterned(q, n, seed))
    return lists


@pytest.mark.parametrize("q", FIELDS)
def test_backends_agree(q):
    F = field_for_q(q)
    xs = _inputs(q)
    for a in xs:
        assert CY.neg(a, F) == PY.neg(a, F)
        assert CY.monic(a, F) == PY.monic(a, F)
        for c in {0, 1, q - 1, q // 2}:
            assert CY.scale(a, c, F) == PY.scale(a, c, F)
        for b in xs:
            assert CY.add(a, b, F) == PY.add(a, b, F)
            assert CY.sub(a, b, F) == PY.sub(a, b, F)
            assert CY.mul(a, b, F) == PY.mul(a, b, F)
            if b:
                assert CY.divmod_(a, b, F) == PY.divmod_(a, b, F)
                if a:
                    assert CY.gcd(a, b, F) == PY.gcd(a, b, F)
            if b and b[0]:
                assert CY.series_div(a, b, 30, F) == PY.series_div(a, b, 30, F)


def test_division_identity_python_backend():
    F = field_for_q(9)
    for a in _inputs(9):
        for b in _inputs(9)[1:]:
            qq, r = PY.divmod_(a, b, F)
            assert PY.add(PY.mul(qq, b, F), r, F) == a
            assert len(r) < len(b)


def test_division_by_zero():
    F = field_for_q(3)
    for K in (PY, CY):
        with pytest.raises(ZeroDivisionError):
            K.divmod_([1, 2], [], F)


def _run(code, **env):
    full = dict(os.environ, **env)
    return subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env=full)


def test_env_forces_python_backend():
    res = _run("import fqzeta.kernels as k; print(k.BACKEND)", FQZETA_BACKEND="python")
    assert res.stdout.strip() == "python"


def test_fallback_when_extension_missing():
    block = "import sys; sys.modules['fqzeta._kernels'] = None; "
    res = _run(block + "import fqzeta.kernels as k; print(k.BACKEND)", FQZETA_BACKEND="auto")
    assert res.stdout.strip() == "python"
    res = _run(block + "import fqzeta.kernels", FQZETA_BACKEND="cython")
    assert res.returncode != 0 and "fqzeta._kernels" in res.stderr


def test_results_identical_across_backends_end_to_end():
    code = ("from fqzeta.relations import derive_relation, verify_relation_exact;"
            "from fqzeta.multizeta import zeta_trunc; from fqzeta.field import field_for_q;"
            "r = derive_relation(3, 4, 5); print(r.dumps(), verify_relation_exact(r, 2)[0]);"
            "print(zeta_trunc(field_for_q(4), (2, 1), 25).to_json())")
    py = _run(code, FQZETA_BACKEND="python")
    cy = _run(code, FQZETA_BACKEND="cython")
    assert py.returncode == 0 and py.stdout == cy.stdout
