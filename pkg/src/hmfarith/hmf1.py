"""The HMF1 text format for eigenform data.

A document is line oriented (UTF-8, LF endings, ``#`` starts a comment).
The first significant line is ``HMF1``; the blocks FIELD, CHAR, FORM and
COEFFS follow in that order::

    HMF1
    FIELD
    poly -5,0,1               # ascending integer coefficients, monic
    basis 1,0 1/2,1/2         # optional integral basis (power-basis rows)
    class hplus 1 h 1         # optional, required in degree >= 3
    CHAR
    modulus 1                 # ideal: HNF basis vectors, one comma group each
    gen 2 angle 1/2           # optional, repeatable: generator and value angle
    index 1                   # extension index in 1..h+
    FORM
    weight 2,2
    level 1                   # must equal the CHAR modulus
    coefffield 0,1            # coefficient field polynomial, ascending
    embedding 0               # optional, index into the sorted complex roots
    zeta 4 0,1                # optional, repeatable: primitive 4th root of unity
    bound 20
    label example             # optional
    COEFFS
    norm 1 ideal 1,0 0,1 value 1

Vectors are comma separated with no spaces; tokens are space separated.
Ideals are integral and written by the rows of their Hermite normal form in
integral-basis coordinates.
"""

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .characters import ResidueCharacter, adelize
from .dictionary import HilbertNewformData
from .errors import HMFError, InvariantViolation, ParseError
from .field import build_field
from .ideals import FractionalIdeal, factor_ideal
from .narrow import narrow_class_data
from .numfield import NumberField

BLOCKS = ("FIELD", "CHAR", "FORM", "COEFFS")
_VEC = re.compile(r"^-?\d+(/\d+)?(,-?\d+(/\d+)?)*$")


@dataclass
class HMF1Document:
    poly: list
    basis: list = None
    class_data: dict = None
    modulus: list = None
    gens: list = dc_field(default_factory=list)       # (coords, angle)
    index: int = 1
    weight: list = None
    level: list = None
    coeff_poly: list = None
    embedding: int = 0
    zeta: dict = dc_field(default_factory=dict)        # m -> coords
    bound: int = 0
    label: str = ""
    coeffs: list = dc_field(default_factory=list)      # (norm, hnf rows, values)
    # built objects
    field: object = None
    character: object = None
    form: object = None


def _fmt_q(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _fmt_vec(v):
    return ",".join(_fmt_q(x) for x in v)


def _fmt_ideal(rows):
    return " ".join(_fmt_vec(r) for r in rows)


class _Line:
    def __init__(self, no, text):
        self.no = no
        self.text = text
        self.tokens = text.split()
        self.pos = 0

    def col(self, i):
        # 1-based column of token i
        idx = 0
        for j, t in enumerate(self.tokens):
            idx = self.text.index(t, idx)
            if j == i:
                return idx + 1
            idx += len(t)
        return len(self.text) + 1

    def fail(self, msg, i=None):
        raise ParseError(msg, self.no, self.col(i) if i is not None else None)

    def vec(self, i, integral=False):
        if i >= len(self.tokens):
            self.fail("missing value", i)
        t = self.tokens[i]
        if not _VEC.match(t):
            self.fail(f"malformed vector {t!r}", i)
        try:
            out = [Fraction(x) for x in t.split(",")]
        except (ValueError, ZeroDivisionError):
            self.fail(f"malformed vector {t!r}", i)
        if integral and any(x.denominator != 1 for x in out):
            self.fail(f"expected integers in {t!r}", i)
        return [int(x) for x in out] if integral else out

    def int(self, i):
        v = self.vec(i, integral=True)
        if len(v) != 1:
            self.fail("expected a single integer", i)
        return v[0]

    def expect(self, i, word):
        if i >= len(self.tokens) or self.tokens[i] != word:
            self.fail(f"expected {word!r}", min(i, len(self.tokens)))


def _lines(text):
    if "\r" in text:
        raise ParseError("documents use LF line endings", 1)
    out = []
    for no, raw in enumerate(text.split("\n"), 1):
        body = raw.split("#", 1)[0].strip()
        if body:
            out.append(_Line(no, body))
    return out


def _ideal_rows(line, start, n):
    rows = []
    i = start
    while i < len(line.tokens) and _VEC.match(line.tokens[i]):
        r = line.vec(i, integral=True)
        if len(r) != n:
            line.fail(f"ideal vector has length {len(r)}, expected {n}", i)
        rows.append(r)
        i += 1
    if not rows:
        line.fail("missing ideal", start)
    return rows, i


def parse_hmf1(text, build=True):
    """Parse a document; with ``build`` the field, character and form are constructed."""
    lines = _lines(text)
    if not lines or lines[0].tokens != ["HMF1"]:
        raise ParseError("document must start with HMF1", lines[0].no if lines else 1, 1)
    blocks = {}
    current = None
    seen = []
    for ln in lines[1:]:
        if len(ln.tokens) == 1 and ln.tokens[0] in BLOCKS:
            name = ln.tokens[0]
            if name in seen:
                ln.fail(f"duplicate block {name}", 0)
            if seen and BLOCKS.index(name) < BLOCKS.index(seen[-1]):
                ln.fail(f"block {name} out of order", 0)
            seen.append(name)
            current = name
            blocks[name] = []
            continue
        if current is None:
            ln.fail("content before the first block", 0)
        blocks[current].append(ln)
    for name in BLOCKS:
        if name not in blocks:
            raise ParseError(f"missing block {name}", lines[-1].no)
    if seen != list(BLOCKS):
        raise ParseError("blocks must appear in the order FIELD, CHAR, FORM, COEFFS", lines[0].no)

    doc = HMF1Document(poly=None)
    for ln in blocks["FIELD"]:
        kw = ln.tokens[0]
        if kw == "poly":
            doc.poly = ln.vec(1, integral=True)
        elif kw == "basis":
            doc.basis = [ln.vec(i) for i in range(1, len(ln.tokens))]
        elif kw == "class":
            ln.expect(1, "hplus")
            ln.expect(3, "h")
            doc.class_data = {"h_plus": ln.int(2), "h": ln.int(4)}
        else:
            ln.fail(f"unknown FIELD keyword {kw!r}", 0)
    if doc.poly is None:
        raise ParseError("FIELD block needs a poly line", blocks["FIELD"][0].no if blocks["FIELD"] else 1)
    n = len(doc.poly) - 1

    for ln in blocks["CHAR"]:
        kw = ln.tokens[0]
        if kw == "modulus":
            doc.modulus, end = _ideal_rows(ln, 1, n)
            if end != len(ln.tokens):
                ln.fail("trailing tokens", end)
        elif kw == "gen":
            g = ln.vec(1)
            if len(g) != n:
                ln.fail(f"generator has length {len(g)}, expected {n}", 1)
            ln.expect(2, "angle")
            a = ln.vec(3)
            if len(a) != 1:
                ln.fail("angle must be a single rational", 3)
            doc.gens.append((g, a[0] % 1))
        elif kw == "index":
            doc.index = ln.int(1)
        else:
            ln.fail(f"unknown CHAR keyword {kw!r}", 0)
    if doc.modulus is None:
        raise ParseError("CHAR block needs a modulus line", blocks["CHAR"][0].no if blocks["CHAR"] else 1)

    for ln in blocks["FORM"]:
        kw = ln.tokens[0]
        if kw == "weight":
            doc.weight = ln.vec(1, integral=True)
        elif kw == "level":
            doc.level, end = _ideal_rows(ln, 1, n)
            if end != len(ln.tokens):
                ln.fail("trailing tokens", end)
        elif kw == "coefffield":
            doc.coeff_poly = ln.vec(1)
        elif kw == "embedding":
            doc.embedding = ln.int(1)
        elif kw == "zeta":
            doc.zeta[ln.int(1)] = ln.vec(2)
        elif kw == "bound":
            doc.bound = ln.int(1)
        elif kw == "label":
            doc.label = " ".join(ln.tokens[1:])
        else:
            ln.fail(f"unknown FORM keyword {kw!r}", 0)
    for what in ("weight", "level", "coeff_poly"):
        if getattr(doc, what) is None:
            raise ParseError(f"FORM block needs a {what.replace('_poly', 'field')} line",
                             blocks["FORM"][0].no if blocks["FORM"] else 1)
    dK = len(doc.coeff_poly) - 1
    for m, z in doc.zeta.items():
        if len(z) != dK:
            raise ParseError(f"zeta vector has length {len(z)}, expected {dK}")

    for ln in blocks["COEFFS"]:
        ln.expect(0, "norm")
        N = ln.int(1)
        ln.expect(2, "ideal")
        rows, i = _ideal_rows(ln, 3, n)
        ln.expect(i, "value")
        v = ln.vec(i + 1)
        if len(v) != dK:
            ln.fail(f"value has length {len(v)}, expected the coefficient-field degree {dK}", i + 1)
        if i + 2 != len(ln.tokens):
            ln.fail("trailing tokens", i + 2)
        doc.coeffs.append((N, rows, v, ln.no))
    if build:
        build_document(doc)
    doc.coeffs = [c[:3] for c in doc.coeffs]
    return doc


def _integral_ideal(F, rows, what):
    I = FractionalIdeal.from_int_rows(F, rows)
    if I.den != 1:
        raise InvariantViolation(f"{what} is not integral")
    return I


def build_document(doc):
    """Construct the field, Hecke character and newform datum, checking invariants."""
    F = build_field(doc.poly, doc.basis)
    doc.field = F
    modulus = _integral_ideal(F, doc.modulus, "CHAR modulus")
    level = _integral_ideal(F, doc.level, "FORM level")
    if modulus != level:
        raise InvariantViolation("CHAR modulus differs from the FORM level")
    if doc.gens:
        omega = ResidueCharacter.from_generator_values(
            modulus, [F.element(g) for g, _ in doc.gens],
            [a for _, a in doc.gens])
    else:
        omega = ResidueCharacter.trivial(modulus)
    narrow = narrow_class_data(F, level, doc.class_data)
    doc.character = adelize(omega, doc.index, narrow)
    K = NumberField(doc.coeff_poly, doc.embedding, doc.zeta or None)
    if not 0 <= doc.embedding < K.degree:
        raise InvariantViolation("embedding index out of range")
    coeffs = {}
    for entry in doc.coeffs:
        N, rows, v = entry[:3]
        I = _integral_ideal(F, rows, f"COEFFS ideal of norm {N}")
        if I.norm() != N:
            raise InvariantViolation(f"ideal {_fmt_ideal(rows)} has norm {I.norm()}, not {N}")
        if doc.bound and N > doc.bound:
            raise InvariantViolation(f"norm {N} exceeds the stated bound {doc.bound}")
        key = factor_ideal(I)
        if key in coeffs:
            raise InvariantViolation(f"ideal {_fmt_ideal(rows)} listed twice")
        coeffs[key] = K(v)
    if () not in coeffs:
        raise InvariantViolation("coefficient at the unit ideal is missing")
    doc.form = HilbertNewformData(F, tuple(doc.weight), level, doc.character, K, coeffs,
                                  doc.bound, doc.label)
    return doc


def serialize_hmf1(doc):
    """Canonical text of a document: fixed keyword order, HNF ideals, sorted coefficients."""
    F = doc.field or build_field(doc.poly, doc.basis)

    def canon(rows):
        return [list(r) for r in FractionalIdeal.from_int_rows(F, rows).hnf]

    out = ["HMF1", "FIELD", "poly " + _fmt_vec(doc.poly)]
    if doc.basis is not None:
        out.append("basis " + " ".join(_fmt_vec(r) for r in doc.basis))
    if doc.class_data:
        out.append(f"class hplus {doc.class_data['h_plus']} h {doc.class_data['h']}")
    out += ["CHAR", "modulus " + _fmt_ideal(canon(doc.modulus))]
    for g, a in doc.gens:
        out.append(f"gen {_fmt_vec(g)} angle {_fmt_q(Fraction(a) % 1)}")
    out.append(f"index {doc.index}")
    out += ["FORM", "weight " + _fmt_vec(doc.weight), "level " + _fmt_ideal(canon(doc.level)),
            "coefffield " + _fmt_vec(doc.coeff_poly)]
    if doc.embedding:
        out.append(f"embedding {doc.embedding}")
    for m in sorted(doc.zeta):
        out.append(f"zeta {m} {_fmt_vec(doc.zeta[m])}")
    out.append(f"bound {doc.bound}")
    if doc.label:
        out.append(f"label {doc.label}")
    out.append("COEFFS")
    rows = sorted(((N, canon(r), v) for N, r, v in doc.coeffs), key=lambda t: (t[0], t[1]))
    for N, r, v in rows:
        out.append(f"norm {N} ideal {_fmt_ideal(r)} value {_fmt_vec(v)}")
    return "\n".join(out) + "\n"


def document_from_form(f, gens=None, class_data=None):
    """An HMF1 document for a HilbertNewformData.

    The character is written on the basis of (O/n)^x chosen by the residue
    ring unless explicit generator/angle pairs are given.
    """
    from .ideals import ideal_from_key, key_norm
    F = f.field
    chi = f.character
    if gens is None:
        ring = chi.residue.ring
        G = ring.unit_group()
        gens = [(list(ring.lift(b).coords), a) for b, a in zip(G.basis, chi.residue.angles)]
    K = f.coeff_field
    coeffs = []
    for key, v in f.coeffs.items():
        I = ideal_from_key(F, key)
        coeffs.append((key_norm(F, key), [list(r) for r in I.hnf], list(v.coords)))
    doc = HMF1Document(poly=list(F.poly), basis=None, class_data=class_data,
                       modulus=[list(r) for r in f.level.hnf], gens=gens,
                       index=chi.extension_index, weight=list(f.weight),
                       level=[list(r) for r in f.level.hnf], coeff_poly=list(K.poly),
                       embedding=K.embedding, zeta={m: list(z.coords) for m, z in K.zeta.items()},
                       bound=f.bound, label=f.label, coeffs=coeffs)
    doc.field = F
    doc.character = chi
    doc.form = f
    return doc


def load_hmf1(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except UnicodeDecodeError as e:
        raise ParseError(f"not valid UTF-8: {e}")
    except OSError as e:
        raise HMFError(f"cannot read {path}: {e.strerror}")
    return parse_hmf1(text)
