"""Hot enumeration kernels for the brute-force oracle.

Two interchangeable backends operate on sorted int64 position arrays:

* ``numba`` (default when importable): @njit two-pointer merges, and
* ``numpy``: vectorized searchsorted fallbacks.

Selection: set ``DDCT_KERNELS=numpy`` to force the fallback, or
``DDCT_KERNELS=numba`` to require the jit path (ImportError if missing).
Everything here is int64-only; the oracle routes to exact big-int Python
when positions could overflow.
"""
from __future__ import annotations

import os

import numpy as np

_REQUESTED = os.environ.get("DDCT_KERNELS", "").strip().lower()

_HAVE_NUMBA = False
if _REQUESTED != "numpy":
    try:
        from numba import njit

        _HAVE_NUMBA = True
    except ImportError:
        if _REQUESTED == "numba":
            raise


def backend_name() -> str:
    return "numba" if _HAVE_NUMBA else "numpy"


# -- numpy implementations ---------------------------------------------------


def _shift_member_count_np(pos: np.ndarray, shift: int) -> int:
    """#{a in pos : a + shift in pos} for a sorted array."""
    target = pos + shift
    idx = np.searchsorted(pos, target)
    idx[idx == pos.size] = 0
    return int(np.count_nonzero(pos[idx] == target))


def _shift_member_mask_np(pos: np.ndarray, shift: int) -> np.ndarray:
    target = pos + shift
    idx = np.searchsorted(pos, target)
    idx[idx == pos.size] = 0
    return pos[idx] == target


if _HAVE_NUMBA:

    @njit(cache=True)
    def _shift_member_count_nb(pos, shift):  # pragma: no cover - jit
        n = pos.size
        count = 0
        j = 0
        for i in range(n):
            t = pos[i] + shift
            while j < n and pos[j] < t:
                j += 1
            if j < n and pos[j] == t:
                count += 1
        return count

    @njit(cache=True)
    def _offset_mask_counts_nb(pos, t_shift):  # pragma: no cover - jit
        n = pos.size
        out = np.zeros(8, dtype=np.int64)
        jm = 0
        jz = 0
        jp = 0
        for i in range(n):
            mask = 0
            tm = pos[i] - 1 - t_shift
            while jm < n and pos[jm] < tm:
                jm += 1
            if jm < n and pos[jm] == tm:
                mask |= 1
            tz = pos[i] - t_shift
            while jz < n and pos[jz] < tz:
                jz += 1
            if jz < n and pos[jz] == tz:
                mask |= 2
            tp = pos[i] + 1 - t_shift
            while jp < n and pos[jp] < tp:
                jp += 1
            if jp < n and pos[jp] == tp:
                mask |= 4
            out[mask] += 1
        return out


def shift_member_count(pos: np.ndarray, shift: int) -> int:
    """#{a in pos : a + shift in pos}; pos sorted ascending int64."""
    if pos.size == 0:
        return 0
    if _HAVE_NUMBA:
        return int(_shift_member_count_nb(pos, np.int64(shift)))
    return _shift_member_count_np(pos, shift)


def offset_mask_counts(pos: np.ndarray, t_shift: int) -> np.ndarray:
    """Census of offset profiles against the translate pos + t_shift.

    Returns an int64 array c of length 8 where c[mask] counts positions a
    whose partners exist at offsets encoded by mask bits (1: -1, 2: 0,
    4: +1); partner at offset o means a + o - t_shift is in pos.
    """
    if pos.size == 0:
        return np.zeros(8, dtype=np.int64)
    if _HAVE_NUMBA:
        return _offset_mask_counts_nb(pos, np.int64(t_shift))
    masks = np.zeros(pos.size, dtype=np.int64)
    for bit, off in ((1, -1), (2, 0), (4, 1)):
        masks |= bit * _shift_member_mask_np(pos, off - t_shift)
    return np.bincount(masks, minlength=8).astype(np.int64)


def refine_positions(pos: np.ndarray, digits: np.ndarray, base: int) -> np.ndarray:
    """One refinement step: n*a + d over all digits; stays sorted because
    d < n."""
    return (pos[:, None] * np.int64(base) + digits[None, :]).ravel()
