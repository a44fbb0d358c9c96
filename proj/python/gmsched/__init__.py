"""Generalized min-norm load balancing: generators, checkers and solvers.

Functions return plain dicts (the same documents the command line tool writes).
Pass documents back in as dicts or as JSON text.
"""

import json

from . import _core
from ._core import BudgetExceeded, ConstructionRejected, ParseError

__all__ = [
    "BudgetExceeded", "ConstructionRejected", "ParseError",
    "norm_value", "top_k", "check_norm_axioms",
    "gen_setsystem", "verify_setsystem",
    "gen_gap", "gap_certificate", "gap_check_certificate",
    "solve_lp", "brute_opt", "makespan", "check_fractional",
    "gen_labelcover", "brute_labelcover", "power_labelcover",
    "reduce", "completeness", "soundness_report",
]


def _text(doc):
    return doc if isinstance(doc, str) else json.dumps(doc)


def _wrap(fn, doc_args=()):
    def call(*args, **kwargs):
        args = [(_text(a) if i in doc_args else a) for i, a in enumerate(args)]
        out = fn(*args, **kwargs)
        return json.loads(out) if isinstance(out, str) else out
    call.__name__ = fn.__name__
    call.__doc__ = fn.__doc__
    return call


def norm_value(terms, v):
    """Value of sum_t c_t * top_{k_t}(v) for terms [(k, c), ...]."""
    return _core.norm_value([tuple(t) for t in terms], list(v))


top_k = _core.top_k
check_norm_axioms = _wrap(_core.check_norm_axioms)
gen_setsystem = _wrap(_core.gen_setsystem)
verify_setsystem = _wrap(_core.verify_setsystem, (0,))
gen_gap = _wrap(_core.gen_gap)
gap_certificate = _wrap(_core.gap_certificate, (0,))
gap_check_certificate = _wrap(_core.gap_check_certificate, (0,))
solve_lp = _wrap(_core.solve_lp, (0,))
brute_opt = _wrap(_core.brute_opt, (0,))
makespan = _wrap(_core.makespan, (0, 1))
check_fractional = _wrap(_core.check_fractional, (0, 1))
gen_labelcover = _wrap(_core.gen_labelcover)
brute_labelcover = _wrap(_core.brute_labelcover, (0,))
power_labelcover = _wrap(_core.power_labelcover, (0,))
reduce = _wrap(_core.reduce, (0,))
completeness = _wrap(_core.completeness, (0, 1))
soundness_report = _wrap(_core.soundness_report, (0, 1))
