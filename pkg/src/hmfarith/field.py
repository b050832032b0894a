"""Totally real number fields and their elements.

Elements are stored as rational coordinate vectors over an integral basis
w_0 = 1, w_1, ..., w_{n-1} of the maximal order.  Multiplication uses the
structure constants of that basis.
"""

from fractions import Fraction
from functools import cached_property

import mpmath
import sympy

from . import linalg
from . import poly as P
from .errors import (IntegralBasisRequired, NotIrreducible, NotMonic, NotSquarefree,
                     NotTotallyReal, ZeroElement)


def squarefree_decomposition(n):
    """Return (s, t) with n = s^2 * t and t squarefree (sign kept on t)."""
    sign = -1 if n < 0 else 1
    n = abs(n)
    s, t = 1, 1
    for p, e in sympy.factorint(n).items():
        s *= p ** (e // 2)
        if e % 2:
            t *= p
    return s, sign * t


class TotallyRealField:
    """A totally real field Q[x]/(f) with a chosen integral basis."""

    def __init__(self, poly, integral_basis=None):
        f = [int(c) for c in P.trim(poly)]
        if not f or f[-1] != 1:
            raise NotMonic(f"defining polynomial must be monic, got {f}")
        self.poly = f
        self.degree = n = len(f) - 1
        if n < 1:
            raise NotMonic("degree must be at least 1")
        if n > 1 and P.degree(P.gcd_poly(f, P.derivative(f))) > 0:
            raise NotSquarefree(f"defining polynomial {f} is not squarefree")
        x = sympy.Symbol("x")
        if n > 1 and not sympy.Poly(list(reversed(f)), x).is_irreducible:
            raise NotIrreducible(f"defining polynomial {f} is reducible over Q")
        self._sturm = P.sturm_sequence(f)
        B = P.root_bound(f)
        if P.count_roots(self._sturm, -B, B) != n:
            raise NotTotallyReal(f"defining polynomial {f} has non-real roots")
        self._roots = P.isolate_real_roots(f)
        self._root_cache = {}

        # integral basis as rows of power-basis coordinates
        if integral_basis is not None:
            basis = [[Fraction(c) for c in row] + [Fraction(0)] * (n - len(row))
                     for row in integral_basis]
            if len(basis) != n or basis[0] != [Fraction(1)] + [Fraction(0)] * (n - 1):
                raise IntegralBasisRequired("integral basis must have n elements, first one 1")
        elif n == 1:
            basis = [[Fraction(1)]]
        elif n == 2:
            basis = self._quadratic_basis()
        else:
            disc = int(sympy.discriminant(sympy.Poly(list(reversed(f)), x)))
            if squarefree_decomposition(disc)[0] != 1:
                raise IntegralBasisRequired(
                    "degree >= 3 with non-squarefree polynomial discriminant needs an integral basis")
            basis = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        self._basis = basis
        self._basis_inv = linalg.mat_inverse(basis)
        self._reduce_powers()
        self._mult = self._structure_constants()
        self.trace_matrix = [[self._trace_coords(self._mul_coords(self._e(i), self._e(j)))
                              for j in range(n)] for i in range(n)]
        self.discriminant = int(linalg.det(self.trace_matrix))
        self._check_order()

    # -- construction helpers --------------------------------------------

    def _quadratic_basis(self):
        c, b, _ = self.poly
        disc = b * b - 4 * c
        f0, D = squarefree_decomposition(disc)
        if D % 4 != 1:
            D *= 4
            f0 //= 2
        # sqrt(D) = (2 theta + b) / f0 ; omega = (sigma + sqrt(D)) / 2
        sigma = D % 2
        omega = [Fraction(sigma * f0 + b, 2 * f0), Fraction(1, f0)]
        self.quadratic_D = D
        return [[Fraction(1), Fraction(0)], omega]

    def _reduce_powers(self):
        n = self.degree
        # x^k mod f for k < 2n - 1, as power-basis coordinates
        self._xpow = []
        for k in range(2 * n - 1):
            r = P.rem([0] * k + [1], self.poly)
            self._xpow.append([Fraction(r[i]) if i < len(r) else Fraction(0) for i in range(n)])

    def _power_mul(self, a, b):
        n = self.degree
        prod = [Fraction(0)] * (2 * n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        out = [Fraction(0)] * n
        for k, c in enumerate(prod):
            if c:
                for i, v in enumerate(self._xpow[k]):
                    if v:
                        out[i] += c * v
        return out

    def _structure_constants(self):
        n = self.degree
        table = []
        for i in range(n):
            row = []
            for j in range(n):
                pw = self._power_mul(self._basis[i], self._basis[j])
                row.append(tuple(linalg.vec_mat(pw, self._basis_inv)))
            table.append(row)
        for row in table:
            for v in row:
                if any(Fraction(c).denominator != 1 for c in v):
                    raise IntegralBasisRequired("supplied basis is not closed under multiplication")
        return [[tuple(int(c) for c in v) for v in row] for row in table]

    def _check_order(self):
        # disc(order) = disc(f) / index^2 must be an integer; for quadratic fields
        # the basis is maximal by construction.
        if self.degree == 2:
            assert self.discriminant == self.quadratic_D

    # -- coordinate arithmetic -----------------------------------------------

    def _e(self, i):
        return tuple(Fraction(int(i == j)) for j in range(self.degree))

    def _mul_coords(self, a, b):
        n = self.degree
        out = [Fraction(0)] * n
        for i, x in enumerate(a):
            if x:
                row = self._mult[i]
                for j, y in enumerate(b):
                    if y:
                        xy = x * y
                        for k, c in enumerate(row[j]):
                            if c:
                                out[k] += xy * c
        return tuple(out)

    def _trace_coords(self, a):
        # trace of multiplication by a
        n = self.degree
        t = Fraction(0)
        for i, x in enumerate(a):
            if x:
                t += x * sum(self._mult[i][j][j] for j in range(n))
        return t

    # -- public ------------------------------------------------------------

    def __repr__(self):
        return f"TotallyRealField({P.to_str(self.poly)})"

    def __eq__(self, other):
        return isinstance(other, TotallyRealField) and self.poly == other.poly \
            and self._basis == other._basis

    def __hash__(self):
        return hash(tuple(self.poly))

    def element(self, coords):
        return FieldElement(self, coords)

    def from_power_basis(self, coeffs):
        v = [Fraction(c) for c in coeffs] + [Fraction(0)] * (self.degree - len(coeffs))
        r = P.rem(v, self.poly) if len(v) > self.degree else v
        r = [Fraction(c) for c in r] + [Fraction(0)] * (self.degree - len(r))
        return FieldElement(self, linalg.vec_mat(r, self._basis_inv))

    def __call__(self, x):
        if isinstance(x, FieldElement):
            return x
        return FieldElement(self, [Fraction(x)] + [0] * (self.degree - 1))

    @property
    def one(self):
        return self(1)

    @property
    def zero(self):
        return self(0)

    def basis_elements(self):
        return [FieldElement(self, self._e(i)) for i in range(self.degree)]

    @property
    def generator(self):
        """The root theta of the defining polynomial."""
        return self.from_power_basis([0, 1])

    @cached_property
    def different(self):
        from .ideals import FractionalIdeal
        inv_diff = FractionalIdeal.from_rational_rows(self, linalg.mat_inverse(self.trace_matrix))
        return inv_diff.inverse()

    @cached_property
    def kd_data(self):
        """(gamma, minimal polynomial, index) for Kummer-Dedekind factoring.

        gamma is w_1 (or theta) and index = [O : Z[gamma]].
        """
        n = self.degree
        cands = [self.generator] + ([self.basis_elements()[1]] if n > 1 else [])
        best = None
        for g in cands:
            powers = [g ** k for k in range(n)]
            d = abs(linalg.det([list(p.coords) for p in powers]))
            if d == 0:
                continue
            index = int(d)
            if best is None or index < best[2]:
                best = (g, g.charpoly(), index)
        return best

    # -- embeddings --------------------------------------------------------

    def root_interval(self, j, width=None):
        """Isolating interval of the j-th smallest root, refined below ``width``."""
        iv = self._root_cache.get(j, self._roots[j])
        if width is not None:
            while iv[1] - iv[0] > width:
                iv = P.refine_root(self.poly, iv)
            self._root_cache[j] = iv
        return iv

    def embeddings(self, prec=128):
        """Real roots eta_1 < ... < eta_n as mpf values at ``prec`` bits."""
        width = Fraction(1, 2 ** (prec + 8))
        with mpmath.workprec(prec + 16):
            out = []
            for j in range(self.degree):
                lo, hi = self.root_interval(j, width)
                mid = (lo + hi) / 2
                out.append(mpmath.mpf(mid.numerator) / mid.denominator)
            return out

    def sign(self, x, j):
        """Exact sign of eta_j(x), for x != 0."""
        g = x.power_coords()
        if not any(g):
            raise ZeroElement("sign of zero")
        iv = self.root_interval(j)
        while True:
            lo, hi = P.interval_eval(g, iv[0], iv[1])
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            iv = P.refine_root(self.poly, iv)
            self._root_cache[j] = iv


class FieldElement:
    __slots__ = ("field", "coords", "_hash")

    def __init__(self, field, coords):
        self.field = field
        c = tuple(Fraction(x) for x in coords)
        if len(c) != field.degree:
            raise ValueError("coordinate vector has wrong length")
        self.coords = c
        self._hash = None

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, [a + b for a, b in zip(self.coords, o.coords)])

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, [-a for a in self.coords])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, [a - b for a, b in zip(self.coords, o.coords)])

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, [a * other for a in self.coords])
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field._mul_coords(self.coords, o.coords))

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroElement("inverse of zero")
        M = self.mult_matrix()
        # x * y = 1: y^T M = e_0 where row j of M is coords of w_j * self
        inv = linalg.mat_inverse(M)
        return FieldElement(self.field, inv[0])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, [a / other for a in self.coords])
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.coords == other.coords and (self.field is other.field or self.field == other.field)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coords)
        return self._hash

    def __repr__(self):
        return f"FieldElement({[str(c) for c in self.coords]})"

    def is_zero(self):
        return not any(self.coords)

    def is_integral(self):
        return all(c.denominator == 1 for c in self.coords)

    def denominator(self):
        return linalg.common_denominator(self.coords)

    def mult_matrix(self):
        """Row j holds the coordinates of w_j * self."""
        F = self.field
        return [list(F._mul_coords(F._e(j), self.coords)) for j in range(F.degree)]

    def norm(self):
        return linalg.det(self.mult_matrix())

    def trace(self):
        return self.field._trace_coords(self.coords)

    def power_coords(self):
        return linalg.vec_mat(list(self.coords), self.field._basis)

    def charpoly(self):
        """Characteristic polynomial of multiplication, ascending coefficients."""
        M = sympy.Matrix(self.mult_matrix())
        lam = sympy.Symbol("lam")
        cp = sympy.Poly(M.charpoly(lam).as_expr(), lam)
        coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(cp.all_coeffs())]
        return coeffs

    def embed(self, prec=128):
        roots = self.field.embeddings(prec)
        g = self.power_coords()
        with mpmath.workprec(prec + 16):
            out = []
            for r in roots:
                acc = mpmath.mpf(0)
                for c in reversed(g):
                    acc = acc * r + mpmath.mpf(c.numerator) / c.denominator
                out.append(acc)
        return out

    def signs(self):
        return tuple(self.field.sign(self, j) for j in range(self.field.degree))


def build_field(poly, integral_basis=None):
    """Construct a totally real field from ascending integer coefficients."""
    return TotallyRealField(poly, integral_basis)


def is_totally_positive(x):
    if x.is_zero():
        raise ZeroElement("total positivity of zero is undefined")
    return all(s > 0 for s in x.signs())


def quadratic_field(d):
    """Q(sqrt(d)) for squarefree d > 1, with the monogenic polynomial of omega."""
    if d % 4 == 1:
        return build_field([(1 - d) // 4, -1, 1])
    return build_field([-d, 0, 1])
