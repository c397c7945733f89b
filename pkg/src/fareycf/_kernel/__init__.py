"""Kernel selection: compiled extension when present, pure Python otherwise.

Set FAREYCF_PURE=1 to force the fallback.  Both implementations execute the
same arithmetic in the same order, so results are bit-identical; tests assert
this whenever the extension is importable.
"""

import os

from . import pure

if os.environ.get("FAREYCF_PURE"):
    active = pure
else:
    try:
        from . import _fast as active  # type: ignore[attr-defined]
    except ImportError:
        active = pure

IMPL = active.IMPL
euclid_digits = active.euclid_digits
backward_tails = active.backward_tails
RuleTable = pure.RuleTable  # tiny, shared by both kernels
collect_thetas = active.collect_thetas
levy_components = active.levy_components
visit_counts = active.visit_counts
log_q_at = active.log_q_at
