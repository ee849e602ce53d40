"""Structural sanity checks on emitted DPAGs.

Setting ``CYCLICFCI_VALIDATE_OUTPUT=1`` makes every discovery run check its
output and raise ``AssertionError`` on a violation.
"""

import os

import numpy as np

from ..graphs import DPAG, Mark

ARROW, CIRCLE, TAIL = int(Mark.ARROW), int(Mark.CIRCLE), int(Mark.TAIL)


def validation_enabled():
    return os.environ.get("CYCLICFCI_VALIDATE_OUTPUT", "").strip().lower() in {"1", "true", "yes", "on"}


def arrowhead_shape_violations(P: DPAG):
    """Triples breaking the arrowhead-closure property of complete DPAGs.

    For distinct ``a, b, c``: ``a *-> b o-* c`` requires ``a *-> c``, and
    ``a -> b o-* c`` forbids ``a <-> c``.  Returns ``(a, b, c, reason)`` tuples.
    """
    m = P.marks
    out = []
    for b in range(P.n):
        circ = np.flatnonzero(m[:, b] == CIRCLE)  # c with a circle at b on b-c
        if circ.size == 0:
            continue
        into_b = np.flatnonzero(m[:, b] == ARROW)  # a with a *-> b
        for a in into_b:
            for c in circ:
                if a == c:
                    continue
                if m[a, c] != ARROW:
                    out.append((int(a), int(b), int(c), "missing a *-> c"))
                elif m[b, a] == TAIL and m[c, a] == ARROW:
                    out.append((int(a), int(b), int(c), "a -> b o-* c with a <-> c"))
    return out


def check_output(P: DPAG, where="discovery"):
    if not validation_enabled():
        return
    bad = arrowhead_shape_violations(P)
    if bad:
        a, b, c, why = bad[0]
        raise AssertionError(
            f"{where}: arrowhead shape violated at ({P.names[a]}, {P.names[b]}, {P.names[c]}): {why}"
        )
