"""Coefficient fields: Q(theta) given by an irreducible rational polynomial.

Elements are power-basis coordinate vectors of Fractions.  The field also
remembers which complex root of its polynomial is used to embed it, and
optionally where a primitive m-th root of unity sits inside it.
"""

from fractions import Fraction

import mpmath
import sympy

from . import linalg
from . import poly as P
from .errors import InvariantViolation, NotIrreducible, ZeroElement


class NumberField:
    def __init__(self, poly, embedding=0, zeta=None):
        poly = [Fraction(c) for c in poly]
        poly = P.trim(poly)
        if not poly or poly[-1] == 0 or P.degree(poly) < 1:
            raise InvariantViolation("coefficient field needs a polynomial of degree >= 1")
        lead = poly[-1]
        self.poly = [c / lead for c in poly]
        self.degree = P.degree(self.poly)
        x = sympy.Symbol("x")
        sp = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(self.poly)], x)
        if self.degree > 1 and not sp.is_irreducible:
            raise NotIrreducible("coefficient polynomial is reducible over Q")
        self.embedding = embedding
        self.zeta = {}
        if zeta:
            for m, vec in zeta.items():
                self.set_zeta(m, vec)

    def __repr__(self):
        return f"NumberField({P.to_str(self.poly)})"

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.poly == other.poly

    def __hash__(self):
        return hash(tuple(self.poly))

    def __call__(self, x):
        if isinstance(x, NFElement):
            return x
        if isinstance(x, (list, tuple)):
            return NFElement(self, x)
        return NFElement(self, [Fraction(x)] + [Fraction(0)] * (self.degree - 1))

    @property
    def one(self):
        return self(1)

    @property
    def zero(self):
        return self(0)

    @property
    def gen(self):
        if self.degree == 1:
            return self(-self.poly[0])
        return self([0, 1] + [0] * (self.degree - 2))

    def _reduce(self, coeffs):
        r = P.rem([Fraction(c) for c in coeffs], self.poly) if len(coeffs) > self.degree else coeffs
        r = [Fraction(c) for c in r]
        return r + [Fraction(0)] * (self.degree - len(r))

    def roots(self, prec=128):
        with mpmath.workprec(prec + 32):
            cs = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(self.poly)]
            if self.degree == 1:
                return [-cs[1] / cs[0]]
            rs = mpmath.polyroots(cs, maxsteps=200, extraprec=prec + 64)
        return sorted(rs, key=lambda z: (float(mpmath.re(z)), float(mpmath.im(z))))

    def set_zeta(self, m, vec):
        z = self(vec)
        if z ** m != self.one or any(z ** d == self.one for d in range(1, m) if m % d == 0):
            raise InvariantViolation(f"supplied element is not a primitive {m}-th root of unity")
        self.zeta[m] = z

    def root_of_unity(self, a):
        """exp(2 pi i a) inside the field, for a Fraction a; None if unavailable."""
        a = Fraction(a) % 1
        d = a.denominator
        if d == 1:
            return self.one
        if d == 2:
            return -self.one
        for m, z in self.zeta.items():
            if m % d == 0:
                return z ** (a.numerator * (m // d))
        return None

    def automorphism(self, image):
        """The automorphism sending the generator to ``image``."""
        return FieldAutomorphism(self, self(image))

    def identity(self):
        return FieldAutomorphism(self, self.gen)


class NFElement:
    __slots__ = ("field", "coords")

    def __init__(self, field, coords):
        c = [Fraction(x) for x in coords]
        if len(c) > field.degree:
            c = field._reduce(c)
        c += [Fraction(0)] * (field.degree - len(c))
        self.field = field
        self.coords = tuple(c)

    def _coerce(self, o):
        if isinstance(o, NFElement):
            return o
        if isinstance(o, (int, Fraction)):
            return self.field(o)
        return None

    def __add__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return NFElement(self.field, [a + b for a, b in zip(self.coords, o.coords)])

    __radd__ = __add__

    def __neg__(self):
        return NFElement(self.field, [-a for a in self.coords])

    def __sub__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return NFElement(self.field, [a - b for a, b in zip(self.coords, o.coords)])

    def __rsub__(self, o):
        return -(self - o)

    def __mul__(self, o):
        if isinstance(o, (int, Fraction)):
            return NFElement(self.field, [a * o for a in self.coords])
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return NFElement(self.field, self.field._reduce(P.mul(list(self.coords), list(o.coords))))

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroElement("inverse of zero in the coefficient field")
        if self.field.degree == 1:
            return NFElement(self.field, [1 / self.coords[0]])
        M = self.mult_matrix()
        inv = linalg.mat_inverse(M)
        return NFElement(self.field, inv[0])

    def __truediv__(self, o):
        if isinstance(o, (int, Fraction)):
            return NFElement(self.field, [a / o for a in self.coords])
        return self * self._coerce(o).inverse()

    def __rtruediv__(self, o):
        return self._coerce(o) * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        r = self.field.one
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def __eq__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return self.coords == o.coords

    def __hash__(self):
        if self.is_rational():
            return hash(self.coords[0])
        return hash(self.coords)

    def __repr__(self):
        return f"NFElement({self.to_str()})"

    def to_str(self):
        if self.is_rational():
            return str(self.coords[0])
        terms = []
        for i, c in enumerate(self.coords):
            if c == 0:
                continue
            mon = "" if i == 0 else ("a" if i == 1 else f"a^{i}")
            if i == 0:
                terms.append(str(c))
            elif c == 1:
                terms.append(mon)
            elif c == -1:
                terms.append("-" + mon)
            else:
                terms.append(f"{c}*{mon}")
        return " + ".join(terms).replace("+ -", "- ")

    def is_zero(self):
        return not any(self.coords)

    def is_rational(self):
        return not any(self.coords[1:])

    def rational(self):
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.coords[0]

    def mult_matrix(self):
        """Row i holds the coordinates of theta^i * self."""
        F = self.field
        rows = []
        cur = list(self.coords)
        for _ in range(F.degree):
            rows.append(list(cur))
            cur = F._reduce([Fraction(0)] + cur)
        return rows

    def norm(self):
        return linalg.det(self.mult_matrix())

    def trace(self):
        M = self.mult_matrix()
        return sum(M[i][i] for i in range(len(M)))

    def minpoly(self):
        """Minimal polynomial over Q, ascending monic coefficients."""
        M = sympy.Matrix([[sympy.Rational(c.numerator, c.denominator) for c in row]
                          for row in self.mult_matrix()])
        lam = sympy.Symbol("lam")
        cp = sympy.Poly(M.charpoly(lam).as_expr(), lam)
        _, facs = sympy.factor_list(cp.as_expr(), lam)
        for f, _ in facs:
            fp = sympy.Poly(f, lam)
            coeffs = [Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1]))
                      for c in reversed(fp.all_coeffs())]
            lead = coeffs[-1]
            coeffs = [c / lead for c in coeffs]
            # the minimal polynomial is the factor vanishing at self
            acc = self.field.zero
            for c in reversed(coeffs):
                acc = acc * self + c
            if acc.is_zero():
                return coeffs
        raise AssertionError("no factor of the characteristic polynomial vanishes")

    def embed(self, prec=128, root=None):
        F = self.field
        if root is None:
            root = F.roots(prec)[F.embedding]
        with mpmath.workprec(prec + 16):
            acc = mpmath.mpf(0)
            for c in reversed(self.coords):
                acc = acc * root + mpmath.mpf(c.numerator) / c.denominator
        return acc


class FieldAutomorphism:
    """An automorphism of a coefficient field, given by the image of theta."""

    def __init__(self, field, image):
        self.field = field
        self.image = image
        acc = field.zero
        for c in reversed(field.poly):
            acc = acc * image + c
        if not acc.is_zero():
            raise InvariantViolation("image of the generator is not a root of its polynomial")

    def __call__(self, x):
        F = self.field
        x = F(x)
        acc = F.zero
        for c in reversed(x.coords):
            acc = acc * self.image + c
        return acc

    def compose(self, other):
        """self o other."""
        return FieldAutomorphism(self.field, self(other.image))

    def __eq__(self, other):
        return isinstance(other, FieldAutomorphism) and self.image == other.image

    def __hash__(self):
        return hash(self.image)

    def is_identity(self):
        return self.image == self.field.gen

    def cyclotomic_exponent(self, m):
        """t with sigma(zeta_m) = zeta_m^t, using the stored zeta_m."""
        z = self.field.zeta.get(m)
        if z is None:
            return 1
        w = self(z)
        for t in range(1, m + 1):
            if z ** t == w:
                return t
        raise InvariantViolation("automorphism does not preserve the roots of unity")


def rational_field():
    return NumberField([0, 1])
