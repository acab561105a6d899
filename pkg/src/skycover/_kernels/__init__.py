"""Flow-kernel backend selection.

Imports the compiled extension when present, otherwise the pure-Python
mirror. Setting the environment variable ``SKYCOVER_PURE=1`` forces the
fallback (useful for the backend-comparison benchmark and for debugging).
Both backends implement the same algorithms with the same tie-breaking and
produce bit-identical flows.
"""

import os

if os.environ.get("SKYCOVER_PURE") == "1":
    from . import pure as kernels
else:
    try:
        from . import _flow as kernels  # type: ignore[attr-defined]
    except ImportError:
        from . import pure as kernels

BACKEND: str = kernels.BACKEND
OK: int = kernels.OK
NEGATIVE_CYCLE: int = kernels.NEGATIVE_CYCLE
solve_max_flow = kernels.solve_max_flow
solve_mcmf = kernels.solve_mcmf
