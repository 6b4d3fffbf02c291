"""Kernel lane selection: compiled extension if available, pure Python otherwise.

Set QRTLAB_FORCE_PURE=1 to force the pure-Python lane (used by the test
suite to cross-check both lanes and by the benchmark for comparison).
"""

import os

from . import _poly_py as _pure

if os.environ.get("QRTLAB_FORCE_PURE") == "1":
    impl = _pure
else:
    try:
        from . import _poly_cy as impl  # type: ignore[no-redef]
    except ImportError:
        impl = _pure

KERNEL_NAME = impl.KERNEL_NAME

grlex_key = impl.grlex_key
add_terms = impl.add_terms
sub_terms = impl.sub_terms
neg_terms = impl.neg_terms
scale_terms = impl.scale_terms
mul_terms = impl.mul_terms
mul_term = impl.mul_term
leading = impl.leading
div_exact = impl.div_exact
eval_terms = impl.eval_terms
subst_partial = impl.subst_partial

pure = _pure
