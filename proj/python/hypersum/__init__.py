"""Privacy-preserving summation over dual hypercube aggregation."""

try:
    from ._hypersum import *  # noqa: F401,F403  (installed package layout)
    from ._hypersum import __doc__ as _core_doc
except ImportError:
    from _hypersum import *  # noqa: F401,F403  (in-tree build layout)
    from _hypersum import __doc__ as _core_doc

__doc__ = _core_doc
