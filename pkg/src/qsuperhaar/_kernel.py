"""Select the compiled polynomial kernel, falling back to pure Python.

Set ``QSUPERHAAR_PURE_PYTHON=1`` to force the fallback.
"""
import os

BACKEND = "python"
if not os.environ.get("QSUPERHAAR_PURE_PYTHON"):
    try:
        from qsuperhaar._polykern import (  # noqa: F401
            padd, pcontent, pdivexact, pgcd, pmul, pneg, pscale, pshift, psub, trim,
        )
        BACKEND = "cython"
    except ImportError:
        pass
if BACKEND == "python":
    from qsuperhaar._polykern_py import (  # noqa: F401
        padd, pcontent, pdivexact, pgcd, pmul, pneg, pscale, pshift, psub, trim,
    )
