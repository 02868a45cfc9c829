"""State-vector simulator for a row of anyons in the path basis.

Basis states are labelled by the running fusion products read left to
right: a row of n objects carries n+1 labels, the first pinned to the
vacuum and the last free.  A chain of n nontrivial anyons with vacuum
total charge has F(n-1) admissible labelings (Fibonacci numbers), which
is the dimension the simulator works in.

Objects in the row are either bare anyons (charge 0 or 1) or composites
formed by :meth:`Chain.merge`.  A composite's key records its total
charge together with the pair of objects it was formed from; that nested
record is exactly the data of the composite's internal fusion tree, so
distinct internal states stay orthogonal while all dynamics acts through
total charges only.  Braiding an adjacent pair is exact: a 2x2 recoupled
block when both charges and both ambient labels are nontrivial, a pure
phase or a relabeling otherwise.
"""
from __future__ import annotations

import numpy as np

from .model import F_NP, R_NP, fuse

_R00 = R_NP[0, 0]
_R11 = R_NP[1, 1]


def root(descriptor):
    """Total charge of an object: bare charge, or a composite's root."""
    return descriptor if isinstance(descriptor, int) else descriptor[0]


def paths_for(charges):
    """All admissible label sequences for bare charges, vacuum on the left."""
    out = [(0,)]
    for c in charges:
        if c not in (0, 1):
            raise ValueError(f"charges must be 0 or 1, got {c!r}")
        nxt = []
        for p in out:
            for label in fuse(p[-1], c):
                nxt.append(p + (label,))
        out = nxt
    return out


def is_admissible(charges, path):
    if len(path) != len(charges) + 1 or path[0] != 0:
        return False
    return all(path[i + 1] in fuse(path[i], root(c)) for i, c in enumerate(charges))


class Chain:
    """Superposition over (object descriptors, path labels) basis keys."""

    def __init__(self, amps):
        self.amps = dict(amps)

    @classmethod
    def from_path(cls, charges, path, amp=1.0 + 0j):
        charges, path = tuple(charges), tuple(path)
        if not is_admissible(charges, path):
            raise ValueError(f"path {path} not admissible for charges {charges}")
        return cls({(charges, path): amp})

    @classmethod
    def init_pairs(cls, pair_charges):
        """Adjacent pairs, each created from vacuum (definite path)."""
        charges, path = [], [0]
        for c in pair_charges:
            charges += [c, c]
            path += [c, 0]
        return cls.from_path(charges, path)

    def objects(self):
        for (ch, _p) in self.amps:
            return len(ch)
        return 0

    def braid_adjacent(self, i, ccw=True):
        """Exchange objects i and i+1 (1-indexed), star-over or star-under.

        Exact rules by total charges (a, b) of the two objects:
        either trivial: ambient relabeling with unit amplitude;
        both nontrivial: phase R00 or R11 when an ambient label is vacuum,
        else the recoupled 2x2 block F R F on the middle label.
        """
        out = {}
        sb = F_NP @ (R_NP if ccw else np.conj(R_NP)) @ F_NP
        r00 = _R00 if ccw else np.conj(_R00)
        r11 = _R11 if ccw else np.conj(_R11)
        for (ch, p), a in self.amps.items():
            di, dj = ch[i - 1], ch[i]
            ci, cj = root(di), root(dj)
            nch = ch[:i - 1] + (dj, di) + ch[i + 1:]
            if ci == 0 or cj == 0:
                l = list(p)
                l[i] = p[i + 1] if ci == 0 else p[i - 1]
                k = (nch, tuple(l))
                out[k] = out.get(k, 0) + a
            else:
                amb = (p[i - 1], p[i + 1])
                if amb == (0, 0):
                    k = (nch, p)
                    out[k] = out.get(k, 0) + a * r00
                elif amb in ((0, 1), (1, 0)):
                    k = (nch, p)
                    out[k] = out.get(k, 0) + a * r11
                else:
                    for mid in (0, 1):
                        l = list(p)
                        l[i] = mid
                        k = (nch, tuple(l))
                        out[k] = out.get(k, 0) + sb[mid, p[i]] * a
        return Chain(out)

    def apply_exchanges(self, exchanges):
        st = self
        for pos, ccw in exchanges:
            st = st.braid_adjacent(pos, ccw)
        return st

    def merge(self, i):
        """Fuse objects i and i+1 into one composite object.

        The label between them is recoupled into the composite's total
        charge (a genuine 2x2 rotation when all four surrounding charges
        are nontrivial, a relabeling otherwise); the constituent pair is
        kept in the new object's descriptor so that different formation
        histories remain orthogonal basis states.
        """
        out = {}
        for (ch, p), a in self.amps.items():
            da, db = ch[i - 1], ch[i]
            aa, bb = root(da), root(db)
            x, lpre, lpost = p[i], p[i - 1], p[i + 1]
            np_ = p[:i] + p[i + 1:]
            if aa == 1 and bb == 1 and lpre == 1 and lpost == 1:
                gw = [(g, F_NP[x, g]) for g in (0, 1)]
            else:
                gw = [
                    (g, 1.0)
                    for g in (0, 1)
                    if g in fuse(aa, bb) and lpost in fuse(lpre, g)
                ][:1]
            for g, w in gw:
                k = (ch[:i - 1] + ((g, (da, db)),) + ch[i + 1:], np_)
                out[k] = out.get(k, 0) + w * a
        return Chain(out)

    def norm(self):
        return float(sum(abs(a) ** 2 for a in self.amps.values()))

    def prune(self, tol=1e-300):
        self.amps = {k: v for k, v in self.amps.items() if abs(v) > tol}
        return self

    def cut_distribution(self, k):
        """(P[label 0], P[label 1]) for the path label after object k."""
        p1 = float(
            sum(abs(a) ** 2 for (ch, p), a in self.amps.items() if p[k] == 1)
        )
        return (self.norm() - p1, p1)

    def overlap(self, other):
        return sum(
            np.conj(other.amps.get(k, 0)) * a for k, a in self.amps.items()
        )
