"""Finite abelian groups given by generators and a multiplication function."""

from collections import deque

from . import linalg


class FiniteAbelianGroup:
    """The group generated by ``generators`` under ``mul``.

    Elements must be hashable.  The group is enumerated once; relations
    among the generators are collected from the Cayley graph and
    diagonalized, giving a basis g_1..g_r with orders d_1..d_r and discrete
    logarithms in that basis.
    """

    def __init__(self, identity, generators, mul):
        self.identity = identity
        self.generators = list(generators)
        self.mul = mul
        k = len(self.generators)
        table = {identity: (0,) * k}
        queue = deque([identity])
        relations = []
        while queue:
            x = queue.popleft()
            vx = table[x]
            for i, g in enumerate(self.generators):
                y = mul(x, g)
                vy = vx[:i] + (vx[i] + 1,) + vx[i + 1:]
                if y in table:
                    rel = [a - b for a, b in zip(vy, table[y])]
                    if any(rel):
                        relations.append(rel)
                else:
                    table[y] = vy
                    queue.append(y)
        self.table = table
        self.order = len(table)
        if k == 0:
            self.relations = []
            self.invariants = []
            self._Q = []
            self.basis = []
            return
        # reduce the relation lattice; it has full rank since the group is finite
        H = linalg.hnf_rows(relations + [[self.order * int(i == j) for j in range(k)]
                                         for i in range(k)], k)
        self.relations = H
        diag, Q, Qi = linalg.diagonalize(H)
        keep = [j for j, d in enumerate(diag) if d != 1]
        self.invariants = [diag[j] for j in keep]
        self._Q = [[row[j] for j in keep] for row in Q]
        self.basis = [self.power_word([Qi[j][i] for i in range(k)]) for j in keep]

    def power_word(self, exps):
        """prod g_i^{e_i} over the original generators."""
        x = self.identity
        for g, e in zip(self.generators, exps):
            x = self.mul(x, self.pow(g, e % self.order))
        return x

    def pow(self, g, e):
        e %= self.order
        result = self.identity
        base = g
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def word(self, x):
        """Exponents of x in the original generators (one representative)."""
        return self.table[x]

    def dlog(self, x):
        """Coordinates of x in the basis, reduced modulo the invariants."""
        v = self.table[x]
        y = linalg.vec_mat(v, self._Q) if self._Q else []
        return tuple(c % d for c, d in zip(y, self.invariants))

    def from_dlog(self, y):
        x = self.identity
        for b, e in zip(self.basis, y):
            x = self.mul(x, self.pow(b, e))
        return x

    def elements(self):
        return list(self.table)

    def __contains__(self, x):
        return x in self.table

    def __len__(self):
        return self.order
