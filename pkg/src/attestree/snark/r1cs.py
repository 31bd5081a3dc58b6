"""Rank-1 constraint system with labeled constraint groups.

Wires are integer indices; wire 0 is the constant ONE.  Public statement
wires must be allocated before any private wire so the Groth16 input
commitment covers a prefix of the wire vector.

Linear combinations are plain ``{wire: coeff}`` dicts.  Each constraint
``<A,w> * <B,w> = <C,w>`` carries two labels: a *group* (which logical
check it belongs to, used to name the first unsatisfied constraint when
proving fails) and a *cost class* (which gadget family it belongs to,
used for constraint accounting).
"""

from __future__ import annotations

from contextlib import contextmanager

from .field import R

ONE = 0

LC = dict[int, int]


class UnsatisfiedConstraint(Exception):
    """A witness does not satisfy the constraint system."""

    def __init__(self, group: str, index: int):
        self.group = group
        self.index = index
        super().__init__(f"relation unsatisfied: {group}")


def lc(wire: int, coeff: int = 1) -> LC:
    return {wire: coeff % R}

def lc_const(k: int) -> LC:
    return {ONE: k % R}

def lc_add(*terms: LC) -> LC:
    out: LC = {}
    for t in terms:
        for w, c in t.items():
            nc = (out.get(w, 0) + c) % R
            if nc:
                out[w] = nc
            elif w in out:
                del out[w]
    return out

def lc_sub(a: LC, b: LC) -> LC:
    return lc_add(a, lc_scale(b, -1))

def lc_scale(a: LC, k: int) -> LC:
    k %= R
    if k == 0:
        return {}
    return {w: c * k % R for w, c in a.items()}


class ConstraintSystem:
    def __init__(self, with_values: bool = False):
        self.with_values = with_values
        self.values: list[int] = [1]
        self.num_wires = 1
        self.num_public = 0
        self._private_started = False
        # parallel per-constraint arrays; rows are tuples of (wire, coeff)
        self.rows_a: list[tuple[tuple[int, int], ...]] = []
        self.rows_b: list[tuple[tuple[int, int], ...]] = []
        self.rows_c: list[tuple[tuple[int, int], ...]] = []
        self.group_of: list[int] = []
        self.class_of: list[int] = []
        self.groups: list[str] = ["<unlabeled>"]
        self.classes: list[str] = ["other"]
        self._group_ids: dict[str, int] = {"<unlabeled>": 0}
        self._class_ids: dict[str, int] = {"other": 0}
        self._cur_group = 0
        self._cur_class = 0

    # -- allocation ---------------------------------------------------------

    def alloc(self, value: int | None = None) -> int:
        self._private_started = True
        w = self.num_wires
        self.num_wires += 1
        if self.with_values:
            self.values.append(0 if value is None else value % R)
        return w

    def alloc_public(self, value: int | None = None) -> int:
        if self._private_started:
            raise RuntimeError("public wires must be allocated before private wires")
        w = self.num_wires
        self.num_wires += 1
        self.num_public += 1
        if self.with_values:
            self.values.append(0 if value is None else value % R)
        return w

    # -- labeling -----------------------------------------------------------

    @contextmanager
    def scope(self, group: str | None = None, klass: str | None = None):
        prev_g, prev_c = self._cur_group, self._cur_class
        if group is not None:
            gid = self._group_ids.get(group)
            if gid is None:
                gid = len(self.groups)
                self.groups.append(group)
                self._group_ids[group] = gid
            self._cur_group = gid
        if klass is not None:
            cid = self._class_ids.get(klass)
            if cid is None:
                cid = len(self.classes)
                self.classes.append(klass)
                self._class_ids[klass] = cid
            self._cur_class = cid
        try:
            yield
        finally:
            self._cur_group, self._cur_class = prev_g, prev_c

    # -- constraints ---------------------------------------------------------

    def enforce(self, a: LC, b: LC, c: LC) -> None:
        self.rows_a.append(tuple(a.items()))
        self.rows_b.append(tuple(b.items()))
        self.rows_c.append(tuple(c.items()))
        self.group_of.append(self._cur_group)
        self.class_of.append(self._cur_class)

    @property
    def num_constraints(self) -> int:
        return len(self.rows_a)

    def cost_breakdown(self) -> dict[str, int]:
        counts = [0] * len(self.classes)
        for cid in self.class_of:
            counts[cid] += 1
        return {self.classes[i]: counts[i] for i in range(len(self.classes)) if counts[i]}

    # -- evaluation ----------------------------------------------------------

    def value(self, a: LC) -> int:
        v = self.values
        return sum(c * v[w] for w, c in a.items()) % R

    def first_unsatisfied(self) -> tuple[int, str] | None:
        """Index and group of the first failing constraint, or None."""
        v = self.values
        for i in range(len(self.rows_a)):
            aw = sum(c * v[w] for w, c in self.rows_a[i]) % R
            bw = sum(c * v[w] for w, c in self.rows_b[i]) % R
            cw = sum(c * v[w] for w, c in self.rows_c[i]) % R
            if aw * bw % R != cw:
                return i, self.groups[self.group_of[i]]
        return None

    def is_satisfied(self) -> bool:
        return self.first_unsatisfied() is None

    def check(self) -> None:
        bad = self.first_unsatisfied()
        if bad is not None:
            raise UnsatisfiedConstraint(bad[1], bad[0])
