"""Dense univariate polynomials over Q as ascending coefficient lists.

Also real-root isolation by Sturm sequences, which gives exact sign
decisions for elements of totally real fields.
"""

from fractions import Fraction


def trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p):
    return len(trim(p)) - 1


def add(p, q):
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def sub(p, q):
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) - (q[i] if i < len(q) else 0) for i in range(n)])


def mul(p, q):
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def scale(p, c):
    return trim([c * a for a in p])


def divmod_poly(p, q):
    p = [Fraction(a) for a in trim(p)]
    q = trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    dq = len(q) - 1
    lead = Fraction(q[-1])
    quot = [Fraction(0)] * max(len(p) - dq, 0)
    while len(p) - 1 >= dq and p:
        c = p[-1] / lead
        k = len(p) - 1 - dq
        quot[k] = c
        for i, b in enumerate(q):
            p[i + k] -= c * b
        p = trim(p)
    return trim(quot), p


def rem(p, q):
    return divmod_poly(p, q)[1]


def derivative(p):
    return trim([i * a for i, a in enumerate(p)][1:])


def monic(p):
    p = trim(p)
    lead = Fraction(p[-1])
    return [Fraction(a) / lead for a in p]


def gcd_poly(p, q):
    p, q = trim(p), trim(q)
    while q:
        p, q = q, rem(p, q)
    return monic(p) if p else []


def evaluate(p, x):
    acc = 0
    for a in reversed(p):
        acc = acc * x + a
    return acc


def compose(p, q):
    """p(q(x))."""
    out = []
    for a in reversed(trim(p)):
        out = add(mul(out, q), [a])
    return out


def to_str(p, var="x"):
    terms = []
    for i in range(len(p) - 1, -1, -1):
        a = p[i]
        if a == 0:
            continue
        if i == 0:
            mono = f"{a}"
        else:
            xs = var if i == 1 else f"{var}^{i}"
            if a == 1:
                mono = xs
            elif a == -1:
                mono = f"-{xs}"
            else:
                mono = f"{a}*{xs}"
        terms.append(mono)
    if not terms:
        return "0"
    s = terms[0]
    for t in terms[1:]:
        s += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
    return s


def sturm_sequence(p):
    seq = [trim(p), derivative(p)]
    while seq[-1] and degree(seq[-1]) > 0:
        r = rem(seq[-2], seq[-1])
        if not r:
            break
        seq.append(scale(r, -1))
    return seq


def _sign_changes(values):
    signs = [v for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def count_roots(seq, lo, hi):
    """Number of distinct real roots in (lo, hi] for a squarefree polynomial."""
    return _sign_changes([evaluate(s, lo) for s in seq]) - _sign_changes([evaluate(s, hi) for s in seq])


def root_bound(p):
    p = trim(p)
    lead = abs(Fraction(p[-1]))
    return 1 + max(abs(Fraction(a)) for a in p[:-1]) / lead if len(p) > 1 else Fraction(1)


def isolate_real_roots(p):
    """Disjoint intervals (lo, hi], sorted ascending, each holding one root.

    Endpoints are rationals that are not roots of p.
    """
    p = trim(p)
    seq = sturm_sequence(p)
    B = root_bound(p)
    out = []
    stack = [(-B, B)]
    while stack:
        lo, hi = stack.pop()
        k = count_roots(seq, lo, hi)
        if k == 0:
            continue
        if k == 1 and evaluate(p, hi) != 0:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        if evaluate(p, mid) == 0:
            # nudge off an exact rational root; the nudge is far smaller
            # than the gap to any other root once intervals are this small
            eps = (hi - lo) / 1024
            while count_roots(seq, mid - eps, mid + eps) > 1 or evaluate(p, mid - eps) == 0 \
                    or evaluate(p, mid + eps) == 0:
                eps /= 2
            out.append((mid - eps, mid + eps))
            stack.append((lo, mid - eps))
            stack.append((mid + eps, hi))
            continue
        stack.append((lo, mid))
        stack.append((mid, hi))
    out.sort()
    return out


def refine_root(p, interval):
    """Halve an isolating interval, keeping the root inside."""
    lo, hi = interval
    mid = (lo + hi) / 2
    fm = evaluate(p, mid)
    if fm == 0:
        eps = (hi - lo) / 8
        return (mid - eps, mid + eps)
    fl = evaluate(p, lo)
    if (fl > 0) != (fm > 0):
        return (lo, mid)
    return (mid, hi)


def interval_eval(p, lo, hi):
    """Enclosure [a, b] of p over [lo, hi] by interval Horner evaluation."""
    a = b = Fraction(0)
    for c in reversed(p):
        cands = (a * lo, a * hi, b * lo, b * hi)
        a, b = min(cands) + c, max(cands) + c
    return a, b
