"""Truncated power series  c_0 + c_1 X + ... + c_M X^M + O(X^{M+1})."""


class TruncatedSeries:
    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs, order=None):
        coeffs = list(coeffs)
        if order is None:
            order = len(coeffs) - 1
        coeffs = coeffs[:order + 1]
        coeffs += [0] * (order + 1 - len(coeffs))
        self.coeffs = coeffs
        self.order = order

    @classmethod
    def from_poly(cls, coeffs, order):
        return cls(coeffs, order)

    def _coerce(self, o):
        if isinstance(o, TruncatedSeries):
            return o
        return TruncatedSeries([o], self.order)

    def __add__(self, o):
        o = self._coerce(o)
        M = min(self.order, o.order)
        return TruncatedSeries([a + b for a, b in zip(self.coeffs[:M + 1], o.coeffs[:M + 1])], M)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, o):
        return self + (-self._coerce(o))

    def __mul__(self, o):
        o = self._coerce(o)
        M = min(self.order, o.order)
        out = [0] * (M + 1)
        for i, a in enumerate(self.coeffs[:M + 1]):
            if _zero(a):
                continue
            for j in range(M + 1 - i):
                b = o.coeffs[j]
                if not _zero(b):
                    out[i + j] = out[i + j] + a * b
        return TruncatedSeries(out, M)

    __rmul__ = __mul__

    def inverse(self):
        c0 = self.coeffs[0]
        if _zero(c0):
            raise ZeroDivisionError("series with zero constant term is not invertible")
        inv0 = 1 / c0
        out = [inv0]
        for m in range(1, self.order + 1):
            acc = 0
            for k in range(1, m + 1):
                a = self.coeffs[k]
                if not _zero(a):
                    acc = acc + a * out[m - k]
            out.append(-acc * inv0)
        return TruncatedSeries(out, self.order)

    def is_one(self):
        return self.coeffs[0] == 1 and all(_zero(c) for c in self.coeffs[1:])

    def __eq__(self, o):
        o = self._coerce(o)
        return self.order == o.order and all(_zero(a - b) for a, b in zip(self.coeffs, o.coeffs))

    def __getitem__(self, i):
        return self.coeffs[i]

    def __repr__(self):
        return f"TruncatedSeries({self.to_str()})"

    def to_str(self):
        parts = []
        for m, c in enumerate(self.coeffs):
            if _zero(c):
                continue
            cs = c.to_str() if hasattr(c, "to_str") else str(c)
            if " " in cs:
                cs = f"({cs})"
            if m == 0:
                parts.append(cs)
            else:
                parts.append(f"{cs}*X" + (f"^{m}" if m > 1 else ""))
        body = " + ".join(parts).replace("+ -", "- ") if parts else "0"
        return f"{body} + O(X^{self.order + 1})"


def _zero(c):
    if hasattr(c, "is_zero"):
        return c.is_zero()
    return c == 0
