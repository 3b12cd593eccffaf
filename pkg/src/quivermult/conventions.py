"""Global sign/basis conventions, exposed as a seam for mutation testing.

The library is bit-exact: every contract depends on the orientation sign
epsilon (+1 on forward arrows, -1 on reversed ones) and on the direction of
the nilpotent shift representing multiplication by z.  Tests flip these knobs
to confirm that the contract suites actually pin the conventions down.
"""

from contextlib import contextmanager

_state = {
    "eps_forward": 1,
    "eps_backward": -1,
    "shift_upper": True,
}


def eps(forward: bool) -> int:
    """Orientation sign of a double-quiver arrow."""
    return _state["eps_forward"] if forward else _state["eps_backward"]


def shift_upper() -> bool:
    """True when multiplication by z is the upper shift matrix."""
    return _state["shift_upper"]


@contextmanager
def override(eps_forward=None, eps_backward=None, shift_upper=None):
    """Temporarily replace convention knobs (mutation tests only)."""
    saved = dict(_state)
    if eps_forward is not None:
        _state["eps_forward"] = eps_forward
    if eps_backward is not None:
        _state["eps_backward"] = eps_backward
    if shift_upper is not None:
        _state["shift_upper"] = shift_upper
    try:
        yield
    finally:
        _state.update(saved)
