"""Exact arithmetic in the coefficient ring Z[A^±1, B^±1, a^±1, (A-B)^-1].

Every value is a Laurent polynomial in the commuting variables a, A, B divided
by a power of (A - B), kept in canonical form: the denominator exponent is 0,
or (A - B) does not divide the numerator.  Equality, hashing and printing all
go through the canonical form, so exact comparisons are cheap.

The four constants driving the graph skein relations are

    alpha = (a - a^-1)/(A - B) + 1
    beta  = (A a^-1 - B a)/(A - B) - A - B
    gamma = (B^2 a - A^2 a^-1)/(A - B) + A B
    delta = (B^3 a - A^3 a^-1)/(A - B)

and the SO(N) specialization sends A -> q, B -> q^-1, a -> q^(N-1).
"""

from __future__ import annotations

from functools import lru_cache
import re

# A monomial is an exponent triple (ea, eA, eB) for a^ea * A^eA * B^eB.
Mono = tuple[int, int, int]

_M_ONE: Mono = (0, 0, 0)
_M_A: Mono = (0, 1, 0)
_M_B: Mono = (0, 0, 1)


class LaurentPoly:
    """Integer Laurent polynomial in a, A, B, stored as {monomial: coeff}."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Mono, int] | None = None):
        self.terms = {m: c for m, c in (terms or {}).items() if c != 0}

    @staticmethod
    def zero() -> "LaurentPoly":
        return LaurentPoly()

    @staticmethod
    def const(n: int) -> "LaurentPoly":
        return LaurentPoly({_M_ONE: n})

    @staticmethod
    def mono(ea: int, eA: int, eB: int, coeff: int = 1) -> "LaurentPoly":
        return LaurentPoly({(ea, eA, eB): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        r = dict(self.terms)
        for m, c in other.terms.items():
            s = r.get(m, 0) + c
            if s:
                r[m] = s
            else:
                del r[m]
        return LaurentPoly(r)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not self.terms or not other.terms:
            return LaurentPoly()
        r: dict[Mono, int] = {}
        for (a1, A1, B1), c1 in self.terms.items():
            for (a2, A2, B2), c2 in other.terms.items():
                m = (a1 + a2, A1 + A2, B1 + B2)
                s = r.get(m, 0) + c1 * c2
                if s:
                    r[m] = s
                elif m in r:
                    del r[m]
        return LaurentPoly(r)

    def scale(self, n: int) -> "LaurentPoly":
        if n == 0:
            return LaurentPoly()
        return LaurentPoly({m: n * c for m, c in self.terms.items()})

    def subst_at_A_eq_B(self) -> "LaurentPoly":
        """Substitute A = B (exponent of A folded into B); zero iff (A-B) divides."""
        r: dict[Mono, int] = {}
        for (ea, eA, eB), c in self.terms.items():
            m = (ea, 0, eA + eB)
            s = r.get(m, 0) + c
            if s:
                r[m] = s
            elif m in r:
                del r[m]
        return LaurentPoly(r)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.terms!r})"


_D = LaurentPoly({_M_A: 1, _M_B: -1})  # A - B


def _divide_by_A_minus_B(p: LaurentPoly) -> LaurentPoly | None:
    """Exact quotient p / (A - B), or None when the division has a remainder.

    Works as synthetic division in A over the Laurent ring in B, a: shift the
    A-exponents to be non-negative, run Horner against the root A = B, then
    shift back.  Exactness is equivalent to p vanishing at A = B, which is
    checked first because most candidates are not divisible.
    """
    if p.is_zero():
        return LaurentPoly()
    if not p.subst_at_A_eq_B().is_zero():
        return None
    min_A = min(m[1] for m in p.terms)
    # coefficients of A^t (t >= 0) as Laurent polys in (a, B)
    by_deg: dict[int, dict[tuple[int, int], int]] = {}
    for (ea, eA, eB), c in p.terms.items():
        by_deg.setdefault(eA - min_A, {})[(ea, eB)] = c
    deg = max(by_deg)
    # f = (A - B) q + r with q_t computed from the top down: q_{t-1} = c_t + B*q_t
    carry: dict[tuple[int, int], int] = {}
    quot: dict[Mono, int] = {}
    for t in range(deg, 0, -1):
        cur = dict(by_deg.get(t, {}))
        for (ea, eB), c in carry.items():
            s = cur.get((ea, eB), 0) + c
            if s:
                cur[(ea, eB)] = s
            elif (ea, eB) in cur:
                del cur[(ea, eB)]
        for (ea, eB), c in cur.items():
            quot[(ea, t - 1 + min_A, eB)] = c
        carry = {(ea, eB + 1): c for (ea, eB), c in cur.items()}
    # remainder = c_0 + B*q_0
    rem = dict(by_deg.get(0, {}))
    for (ea, eB), c in carry.items():
        s = rem.get((ea, eB), 0) + c
        if s:
            rem[(ea, eB)] = s
        elif (ea, eB) in rem:
            del rem[(ea, eB)]
    if rem:
        return None
    return LaurentPoly(quot)


class RingElem:
    """Canonical element num / (A - B)^dpow of the localized Laurent ring."""

    __slots__ = ("num", "dpow")

    def __init__(self, num: LaurentPoly, dpow: int = 0, _canonical: bool = False):
        if dpow < 0:
            raise ValueError("denominator power must be non-negative")
        if not _canonical:
            num, dpow = _normalize(num, dpow)
        self.num = num
        self.dpow = dpow

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "RingElem":
        return RingElem(LaurentPoly(), 0, _canonical=True)

    @staticmethod
    def one() -> "RingElem":
        return RingElem(LaurentPoly.const(1), 0, _canonical=True)

    @staticmethod
    def const(n: int) -> "RingElem":
        return RingElem(LaurentPoly.const(n), 0, _canonical=True)

    @staticmethod
    def mono(ea: int, eA: int, eB: int, coeff: int = 1) -> "RingElem":
        if coeff == 0:
            return RingElem.zero()
        return RingElem(LaurentPoly.mono(ea, eA, eB, coeff), 0, _canonical=True)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "RingElem") -> "RingElem":
        if self.dpow == 0 and other.dpow == 0:
            return RingElem(self.num + other.num, 0, _canonical=True)
        d = max(self.dpow, other.dpow)
        x = self.num
        for _ in range(d - self.dpow):
            x = x * _D
        y = other.num
        for _ in range(d - other.dpow):
            y = y * _D
        return RingElem(x + y, d)

    def __neg__(self) -> "RingElem":
        return RingElem(-self.num, self.dpow, _canonical=True)

    def __sub__(self, other: "RingElem") -> "RingElem":
        return self + (-other)

    def __mul__(self, other: "RingElem") -> "RingElem":
        # (A-B) is prime, so a product of two non-divisible numerators is
        # not divisible either: canonical factors with matching denominator
        # presence multiply to a canonical result.  A plain monomial factor
        # can likewise never introduce or cancel divisibility.
        if ((self.dpow > 0) == (other.dpow > 0)
                or (self.dpow == 0 and len(self.num.terms) == 1)
                or (other.dpow == 0 and len(other.num.terms) == 1)):
            return RingElem(self.num * other.num, self.dpow + other.dpow,
                            _canonical=True)
        return RingElem(self.num * other.num, self.dpow + other.dpow)

    def scale(self, n: int) -> "RingElem":
        return RingElem(self.num.scale(n), self.dpow)

    def __pow__(self, k: int) -> "RingElem":
        if k < 0:
            raise ValueError("only non-negative powers are supported")
        r = RingElem.one()
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RingElem)
            and self.dpow == other.dpow
            and self.num == other.num
        )

    def __hash__(self) -> int:
        return hash((self.dpow, self.num))

    def __repr__(self) -> str:
        return f"RingElem({to_canonical_text(self)!r})"

    # -- substitutions -----------------------------------------------------

    def swap_AB_invert_a(self) -> "RingElem":
        """Apply A <-> B, a <-> a^-1 (the mirror substitution).

        (A-B) maps to -(A-B), so the denominator contributes a sign.
        """
        num = LaurentPoly({(-ea, eB, eA): c for (ea, eA, eB), c in self.num.terms.items()})
        if self.dpow % 2:
            num = -num
        return RingElem(num, self.dpow, _canonical=True)


def _normalize(num: LaurentPoly, dpow: int) -> tuple[LaurentPoly, int]:
    if num.is_zero():
        return LaurentPoly(), 0
    while dpow > 0:
        q = _divide_by_A_minus_B(num)
        if q is None:
            break
        num = q
        dpow -= 1
    return num, dpow


def normalize(num: LaurentPoly, dpow: int) -> RingElem:
    """Canonical RingElem for num / (A - B)^dpow."""
    return RingElem(num, dpow)


def ring_sum(values) -> RingElem:
    """Sum of many elements with a single normalization at the end.

    Terms are accumulated in mutable buckets per denominator power and the
    buckets are brought to the common power once, so the cost is linear in
    the total number of monomials.
    """
    buckets: dict[int, dict[Mono, int]] = {}
    for x in values:
        bucket = buckets.setdefault(x.dpow, {})
        for m, c in x.num.terms.items():
            s = bucket.get(m, 0) + c
            if s:
                bucket[m] = s
            else:
                del bucket[m]
    if not buckets:
        return RingElem.zero()
    d = max(buckets)
    total = LaurentPoly()
    for dp, terms in buckets.items():
        num = LaurentPoly(terms)
        for _ in range(d - dp):
            num = num * _D
        total = total + num
    return RingElem(total, d)


# -- named generators --------------------------------------------------------

R_ZERO = RingElem.zero()
R_ONE = RingElem.one()
R_A = RingElem.mono(0, 1, 0)
R_B = RingElem.mono(0, 0, 1)
R_a = RingElem.mono(1, 0, 0)
R_a_inv = RingElem.mono(-1, 0, 0)
R_A_minus_B = RingElem(_D, 0, _canonical=True)


class Constants:
    """The four skein-relation constants, in canonical form."""

    __slots__ = ("alpha", "beta", "gamma", "delta")

    def __init__(self, alpha: RingElem, beta: RingElem, gamma: RingElem, delta: RingElem):
        self.alpha = alpha
        self.beta = beta
        self.gamma = gamma
        self.delta = delta


@lru_cache(maxsize=1)
def constants() -> Constants:
    alpha = RingElem(LaurentPoly({(1, 0, 0): 1, (-1, 0, 0): -1}), 1) + R_ONE
    beta = (
        RingElem(LaurentPoly({(-1, 1, 0): 1, (1, 0, 1): -1}), 1)
        - R_A
        - R_B
    )
    gamma = (
        RingElem(LaurentPoly({(1, 0, 2): 1, (-1, 2, 0): -1}), 1)
        + R_A * R_B
    )
    delta = RingElem(LaurentPoly({(1, 0, 3): 1, (-1, 3, 0): -1}), 1)
    return Constants(alpha, beta, gamma, delta)


# -- SO(N) specialization ----------------------------------------------------

# One-variable Laurent polynomials in q as {exponent: coeff}.
QLaurent = dict[int, int]


class DivisionFailure(ValueError):
    """(q - q^-1)^dpow does not divide the specialized numerator."""


def _q_divide_q2_minus_1(p: QLaurent) -> QLaurent | None:
    """Exact quotient p / (q^2 - 1) in Z[q^±1], or None."""
    if not p:
        return {}
    lo = min(p)
    coeffs = dict(p)
    hi = max(coeffs)
    quot: QLaurent = {}
    # Divide from the top: p = (q^2 - 1) q + r.
    for e in range(hi, lo + 1, -1):
        c = coeffs.get(e, 0)
        if c:
            quot[e - 2] = c
            coeffs[e - 2] = coeffs.get(e - 2, 0) + c
            del coeffs[e]
    rem = {e: c for e, c in coeffs.items() if c and e <= lo + 1}
    if rem:
        return None
    return quot


def specialize_soN(x: RingElem, N: int) -> QLaurent:
    """Substitute A -> q, B -> q^-1, a -> q^(N-1) and clear the denominator.

    Raises DivisionFailure when (q - q^-1)^dpow does not divide the
    substituted numerator; this never happens for values produced by the
    invariants (every invariant lies in the image of the specialization).
    """
    if N < 2:
        raise ValueError("N must be at least 2")
    p: QLaurent = {}
    for (ea, eA, eB), c in x.num.terms.items():
        e = eA - eB + (N - 1) * ea
        s = p.get(e, 0) + c
        if s:
            p[e] = s
        elif e in p:
            del p[e]
    # (q - q^-1)^d = q^-d (q^2 - 1)^d
    for _ in range(x.dpow):
        q = _q_divide_q2_minus_1(p)
        if q is None:
            raise DivisionFailure(
                f"value is not divisible by (q - q^-1)^{x.dpow} at N={N}"
            )
        p = q
    if x.dpow:
        p = {e + x.dpow: c for e, c in p.items()}
    return p


def qlaurent_text(p: QLaurent) -> str:
    """Render a one-variable Laurent polynomial, highest power first."""
    if not p:
        return "0"
    parts: list[str] = []
    for e in sorted(p, reverse=True):
        c = p[e]
        if e == 0:
            body = str(abs(c))
        else:
            v = "q" if e == 1 else f"q^{e}"
            body = v if abs(c) == 1 else f"{abs(c)}*{v}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


def qlaurent_mul(p: QLaurent, q: QLaurent) -> QLaurent:
    r: QLaurent = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = e1 + e2
            s = r.get(e, 0) + c1 * c2
            if s:
                r[e] = s
            elif e in r:
                del r[e]
    return r


# -- canonical text and parsing ----------------------------------------------

def _mono_factors(m: Mono) -> str:
    ea, eA, eB = m
    out = []
    for name, e in (("a", ea), ("A", eA), ("B", eB)):
        if e == 1:
            out.append(name)
        elif e != 0:
            out.append(f"{name}^{e}")
    return "*".join(out)


def to_canonical_text(x: RingElem) -> str:
    """Deterministic rendering; terms sorted by (expa, expA, expB) descending.

    Grammar: terms ``c*a^i*A^j*B^k`` joined by `` + `` / `` - ``; exponent 1
    and coefficient 1 are elided; an optional trailing ``/(A-B)^d`` carries
    the denominator.  Output round-trips through :func:`parse_ring_text`.
    """
    if x.num.is_zero():
        return "0"
    parts: list[str] = []
    for m in sorted(x.num.terms, reverse=True):
        c = x.num.terms[m]
        fac = _mono_factors(m)
        if not fac:
            body = str(abs(c))
        elif abs(c) == 1:
            body = fac
        else:
            body = f"{abs(c)}*{fac}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    num = " ".join(parts)
    if x.dpow == 0:
        return num
    if len(x.num.terms) > 1:
        num = f"({num})"
    return f"{num}/(A-B)^{x.dpow}"


_TERM_RE = re.compile(
    r"^(?P<coeff>\d+)?"
    r"(?P<vars>(?:\*?[aAB](?:\^-?\d+)?)*)$"
)
_VAR_RE = re.compile(r"([aAB])(?:\^(-?\d+))?")


def parse_ring_text(text: str) -> RingElem:
    """Parse the canonical text grammar back into a RingElem."""
    text = text.strip()
    if text == "0":
        return RingElem.zero()
    dpow = 0
    m = re.search(r"/\(A-B\)\^(\d+)$", text)
    if m:
        dpow = int(m.group(1))
        text = text[: m.start()].strip()
        if text.startswith("(") and text.endswith(")"):
            text = text[1:-1]
    toks = re.split(r"\s+(\+|-)\s+", text)
    terms: dict[Mono, int] = {}
    sign = 1
    pending = toks[0]
    items = [(sign, pending)]
    for i in range(1, len(toks), 2):
        items.append((1 if toks[i] == "+" else -1, toks[i + 1]))
    for sgn, tok in items:
        tok = tok.strip()
        if tok.startswith("-"):
            sgn = -sgn
            tok = tok[1:]
        mt = _TERM_RE.match(tok)
        if not mt:
            raise ValueError(f"bad term {tok!r}")
        coeff = int(mt.group("coeff")) if mt.group("coeff") else 1
        ea = eA = eB = 0
        for name, exp in _VAR_RE.findall(mt.group("vars") or ""):
            e = int(exp) if exp else 1
            if name == "a":
                ea += e
            elif name == "A":
                eA += e
            else:
                eB += e
        mono = (ea, eA, eB)
        s = terms.get(mono, 0) + sgn * coeff
        if s:
            terms[mono] = s
        elif mono in terms:
            del terms[mono]
    return RingElem(LaurentPoly(terms), dpow)
