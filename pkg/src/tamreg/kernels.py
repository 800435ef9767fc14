"""Backend selection for the hot loops.

The compiled extension is used when it was built and ``TAMREG_PURE_PYTHON``
is unset; otherwise the pure-Python module is used. Both expose
``levenshtein`` and ``char_ngram_counts`` with identical results.
"""
import os

from . import _pykernels

if os.environ.get("TAMREG_PURE_PYTHON"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _pykernels

BACKEND = "cython" if _impl is not _pykernels else "python"

levenshtein = _impl.levenshtein
char_ngram_counts = _impl.char_ngram_counts
