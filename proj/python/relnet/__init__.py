"""Capacity tools for the 4-node relay network under the linear deterministic
channel model: region membership, genie bound generation, bit-level
scheduling, detour planning and end-to-end channel simulation.

All functions take gains as a sequence of 4 integers and rates either as a
dict {"r12": 2, ...} (missing keys are zero) or as a 12-element list in the
order r12, r13, r14, r21, r23, r24, r31, r32, r34, r41, r42, r43.
"""

try:
    from relnet._relnet import (  # noqa: F401
        InfeasibleScheduleError,
        NoPlanFoundError,
        TooLargeError,
        __version__,
        bound_equivalence,
        bounds,
        canonical,
        check,
        conditions,
        plan,
        schedule,
        simulate,
        sweep_exhaustive,
        sweep_random,
    )
except ImportError:  # build tree: the extension sits next to the package dir
    from _relnet import (  # noqa: F401
        InfeasibleScheduleError,
        NoPlanFoundError,
        TooLargeError,
        __version__,
        bound_equivalence,
        bounds,
        canonical,
        check,
        conditions,
        plan,
        schedule,
        simulate,
        sweep_exhaustive,
        sweep_random,
    )

STREAM_ORDER = (
    "r12", "r13", "r14", "r21", "r23", "r24",
    "r31", "r32", "r34", "r41", "r42", "r43",
)


def rates_from_list(values):
    """Map a 12-element rate list onto the named dict form."""
    if len(values) != len(STREAM_ORDER):
        raise ValueError("expected 12 rates")
    return dict(zip(STREAM_ORDER, values))
