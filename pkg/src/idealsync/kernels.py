"""Backend selection for the subset-construction kernels.

The compiled extension is used when it was built; otherwise the
pure-Python module is loaded.  Set ``IDEALSYNC_PURE_PYTHON=1`` to force
the fallback.
"""

import os

if os.environ.get("IDEALSYNC_PURE_PYTHON"):
    from ._pykernels import image_mask, power_closure, power_equals_dfa

    BACKEND = "python"
else:
    try:
        from ._ckernels import image_mask, power_closure, power_equals_dfa

        BACKEND = "cython"
    except ImportError:
        from ._pykernels import image_mask, power_closure, power_equals_dfa

        BACKEND = "python"

__all__ = ["BACKEND", "image_mask", "power_closure", "power_equals_dfa"]
