"""Degrees, twist factors and order polynomials for twisted Cartan types.

For each supported type the table below stores the invariant degrees d_j of
the reflection representation together with the twist eigenvalue of each
fundamental invariant, written as an exact rational angle a/b meaning
exp(2*pi*i*a/b).  The degree and twist data are classical (Shephard-Todd /
Steinberg); everything else here, the Coxeter number h, the twisted Coxeter
number h0 = h/delta, the number of positive roots N and the order
polynomials of the group and of its Coxeter torus, is derived arithmetic.

A separate literature table of (h, h0) values per type is kept as a
checksum: `coxeter_datum` recomputes h and h0 from the degree/twist pairs
and refuses to return a datum that disagrees with the table.

For the Suzuki and Ree types the parameter q is not an integer (q^2 is an
odd power of 2 or 3), so torus order polynomials live over Z[sqrt(p)];
coefficients are stored as pairs (a, b) meaning a + b*sqrt(p).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cyclotomic import CycloInt, as_quadratic_pair, common_level
from .numtheory import euler_phi, valuation


class UnsupportedType(ValueError):
    """Requested (family, rank) is outside the built-in tables."""


FAMILIES = (
    "A", "B", "C", "D", "E6", "E7", "E8", "F4", "G2",
    "2A", "2B2", "2D", "3D4", "2E6", "2F4", "2G2",
)

_FIXED_RANK = {"E6": 6, "E7": 7, "E8": 8, "F4": 4, "G2": 2,
               "2B2": 2, "3D4": 4, "2E6": 6, "2F4": 4, "2G2": 2}

_DELTA = {"3D4": 3}
for _f in ("2A", "2B2", "2D", "2E6", "2F4", "2G2"):
    _DELTA[_f] = 2

_SUZUKI_REE_PRIME = {"2B2": 2, "2G2": 3, "2F4": 2}

_HALF = Fraction(1, 2)
_E_DEGREES = {
    "E6": (2, 5, 6, 8, 9, 12),
    "E7": (2, 6, 8, 10, 12, 14, 18),
    "E8": (2, 8, 12, 14, 18, 20, 24, 30),
    "F4": (2, 6, 8, 12),
    "G2": (2, 6),
}


@dataclass(frozen=True)
class TwistedType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise UnsupportedType(f"unknown family {self.family!r}")
        fixed = _FIXED_RANK.get(self.family)
        if fixed is not None and self.rank != fixed:
            raise UnsupportedType(f"{self.family} has rank {fixed}, not {self.rank}")
        minimum = {"A": 1, "B": 2, "C": 2, "D": 4, "2A": 2, "2D": 4}.get(self.family)
        if minimum is not None and self.rank < minimum:
            raise UnsupportedType(f"{self.family} needs rank >= {minimum}")

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}" if self.family in ("A", "B", "C", "D", "2A", "2D") else self.family

    def is_suzuki_ree(self) -> bool:
        return self.family in _SUZUKI_REE_PRIME

    @property
    def sqrt_prime(self) -> int | None:
        return _SUZUKI_REE_PRIME.get(self.family)


def _degree_twist_pairs(t: TwistedType) -> tuple[tuple[int, Fraction], ...]:
    f, n = t.family, t.rank
    if f == "A":
        return tuple((d, Fraction(0)) for d in range(2, n + 2))
    if f in ("B", "C"):
        return tuple((2 * j, Fraction(0)) for j in range(1, n + 1))
    if f == "D":
        return tuple((2 * j, Fraction(0)) for j in range(1, n)) + ((n, Fraction(0)),)
    if f in _E_DEGREES:
        return tuple((d, Fraction(0)) for d in _E_DEGREES[f])
    if f == "2A":
        return tuple((d, Fraction(0) if d % 2 == 0 else _HALF) for d in range(2, n + 2))
    if f == "2D":
        return tuple((2 * j, Fraction(0)) for j in range(1, n)) + ((n, _HALF),)
    if f == "3D4":
        return ((2, Fraction(0)), (4, Fraction(1, 3)), (4, Fraction(2, 3)), (6, Fraction(0)))
    if f == "2E6":
        return tuple((d, Fraction(0) if d % 2 == 0 else _HALF) for d in _E_DEGREES["E6"])
    if f == "2B2":
        return ((2, Fraction(0)), (4, _HALF))
    if f == "2G2":
        return ((2, Fraction(0)), (6, _HALF))
    if f == "2F4":
        return ((2, Fraction(0)), (6, _HALF), (8, Fraction(0)), (12, _HALF))
    raise UnsupportedType(f)


def _table_h_h0(t: TwistedType) -> tuple[int, int]:
    """Coxeter numbers straight from the literature tables (the checksum)."""
    f, n = t.family, t.rank
    if f == "A":
        return n + 1, n + 1
    if f in ("B", "C"):
        return 2 * n, 2 * n
    if f == "D":
        return 2 * n - 2, 2 * n - 2
    if f in ("E6", "E7", "E8", "F4", "G2"):
        h = {"E6": 12, "E7": 18, "E8": 30, "F4": 12, "G2": 6}[f]
        return h, h
    if f == "2A":
        return (2 * n + 2, n + 1) if n % 2 == 0 else (2 * n, n)
    if f == "2D":
        return 2 * n, n
    if f == "3D4":
        return 12, 4
    if f == "2E6":
        return 18, 9
    if f == "2B2":
        return 8, 4
    if f == "2F4":
        return 24, 12
    if f == "2G2":
        return 12, 6
    raise UnsupportedType(f)


def _orbit_count(t: TwistedType) -> int:
    """Number of twist orbits on the simple roots (the Coxeter length r)."""
    f, n = t.family, t.rank
    if f in ("A", "B", "C", "D") or f in _E_DEGREES:
        return n
    return {"2A": (n + 1) // 2, "2D": n - 1, "3D4": 2, "2E6": 4,
            "2B2": 1, "2G2": 1, "2F4": 2}[f]


@dataclass(frozen=True)
class CoxeterDatum:
    type: TwistedType
    m: int                       # dimension of the reflection representation
    degrees: tuple[int, ...]
    epsilons: tuple[Fraction, ...]   # twist eigenvalue angles, exp(2*pi*i*eps)
    h: int
    delta: int
    h0: int
    r: int
    N: int

    @property
    def sqrt_prime(self) -> int | None:
        return self.type.sqrt_prime


def cyclotomic_multiplicity(datum: CoxeterDatum, d: int) -> int:
    """a(d): how many invariants satisfy eps_j = exp(2*pi*i*d_j/d).

    This is the multiplicity of the d-th cyclotomic polynomial in the
    generic order of the group.
    """
    if d < 1:
        raise ValueError("d must be positive")
    return sum(1 for dj, ej in zip(datum.degrees, datum.epsilons)
               if Fraction(dj, d) % 1 == ej % 1)


def coxeter_datum(type: TwistedType) -> CoxeterDatum:
    """Build the full datum for a type and cross-check it against the
    literature h/h0 tables."""
    pairs = _degree_twist_pairs(type)
    degrees = tuple(d for d, _ in pairs)
    epsilons = tuple(e for _, e in pairs)
    delta = _DELTA.get(type.family, 1)
    datum = CoxeterDatum(
        type=type,
        m=len(degrees),
        degrees=degrees,
        epsilons=epsilons,
        h=0, delta=delta, h0=0,
        r=_orbit_count(type),
        N=sum(d - 1 for d in degrees),
    )
    # h is the largest d with a(d) > 0; candidates are bounded by delta*max degree
    h = max(d for d in range(1, delta * max(degrees) + 1)
            if cyclotomic_multiplicity(datum, d) > 0)
    table_h, table_h0 = _table_h_h0(type)
    if h != table_h or h % delta or h // delta != table_h0:
        raise AssertionError(
            f"degree table checksum failed for {type.name}: computed h={h}, "
            f"table (h, h0) = ({table_h}, {table_h0})")
    datum = CoxeterDatum(type=type, m=datum.m, degrees=degrees, epsilons=epsilons,
                         h=h, delta=delta, h0=h // delta, r=datum.r, N=datum.N)
    if cyclotomic_multiplicity(datum, h) != 1:
        raise AssertionError(f"a(h) != 1 for {type.name}")
    return datum


def twisted_coxeter_eigenvalues(datum: CoxeterDatum) -> list[Fraction]:
    """Angles of the eigenvalues of the twisted Coxeter rotation.

    The eigenvalues are eps_j^-1 * exp(2*pi*i*(d_j - 1)/h); angles are
    reduced mod 1.  Angles of exact order h must occur with multiplicity
    one, which is asserted.
    """
    angles = [(-e + Fraction(d - 1, datum.h)) % 1
              for d, e in zip(datum.degrees, datum.epsilons)]
    of_order_h = [a for a in angles if a.denominator == datum.h]
    assert len(of_order_h) == len(set(of_order_h)), \
        "eigenvalue of order h with multiplicity > 1"
    return angles


@dataclass(frozen=True)
class CycloPoly:
    """Polynomial in q over Z[sqrt(p)]; coefficient k is (a, b) = a + b*sqrt(p).

    For types without a twisted root length all sqrt parts are zero and p
    is None.
    """

    coeffs: tuple[tuple[int, int], ...]
    p: int | None

    def __post_init__(self):
        if self.p is None and any(b for _, b in self.coeffs):
            raise AssertionError("sqrt part in a rational polynomial")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def evaluate(self, q_or_qsq: int) -> int:
        """Evaluate at q.

        For ordinary types the argument is q itself.  For Suzuki/Ree types
        it is q^2 = p^(2m+1); the value is then computed in Z[sqrt(p)] and
        must come out rational, which is asserted.
        """
        if self.p is None:
            q = q_or_qsq
            return sum(a * q ** k for k, (a, _) in enumerate(self.coeffs))
        qsq = q_or_qsq
        v = valuation(qsq, self.p)
        if qsq != self.p ** v or v % 2 == 0:
            raise ValueError(f"q^2 must be an odd power of {self.p}")
        s = self.p ** ((v - 1) // 2)      # q = s * sqrt(p)
        rat, irr = 0, 0                   # value = rat + irr*sqrt(p)
        for k, (a, b) in enumerate(self.coeffs):
            c = s ** k * self.p ** (k // 2)
            if k % 2 == 0:
                rat += a * c
                irr += b * c
            else:
                rat += b * c * self.p
                irr += a * c
        if irr:
            raise AssertionError("order evaluation left a sqrt residue")
        return rat

    def pretty(self) -> str:
        root = f"sqrt({self.p})" if self.p is not None else None
        parts = []
        for k, (a, b) in enumerate(self.coeffs):
            qpow = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
            if a:
                parts.append(_term(a, qpow, None))
            if b:
                parts.append(_term(b, qpow, root))
        if not parts:
            return "0"
        out = parts[0]
        for t in parts[1:]:
            out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return out


def _term(c: int, qpow: str, root: str | None) -> str:
    factors = [f for f in (qpow, root) if f]
    if not factors:
        return str(c)
    body = "*".join(factors)
    if c == 1:
        return body
    if c == -1:
        return f"-{body}"
    return f"{c}*{body}"


class IntegralityFailure(ArithmeticError):
    """Cyclotomic expansion left coefficients outside Z[sqrt(p)]."""


def _angles_to_poly(factors: list[tuple[int, Fraction, Fraction]],
                    p: int | None) -> CycloPoly:
    """Expand prod_j (zeta^(top_j) * q^(k_j) - zeta^(low_j)) over Z[zeta_L]."""
    denoms = [a.denominator for _, top, low in factors for a in (top, low)]
    L = common_level(denoms + ([8 if p == 2 else 12] if p else [1]))
    poly: list[CycloInt] = [CycloInt.integer(L, 1)]
    for k, top, low in factors:
        z_top = CycloInt.zeta_power(L, int(top * L))
        z_low = CycloInt.zeta_power(L, int(low * L))
        new = [CycloInt.zero(L) for _ in range(len(poly) + k)]
        for i, c in enumerate(poly):
            new[i] = new[i] - c * z_low
            new[i + k] = new[i + k] + c * z_top
        poly = new
    try:
        coeffs = tuple(as_quadratic_pair(c, p) for c in poly)
    except ArithmeticError as exc:
        raise IntegralityFailure(str(exc)) from exc
    return CycloPoly(coeffs=coeffs, p=p)


ZERO_ANGLE = Fraction(0)


def group_order_poly(datum: CoxeterDatum) -> CycloPoly:
    """|G| = q^N * prod_j (q^(d_j) - eps_j^-1) as an exact polynomial."""
    factors = [(d, ZERO_ANGLE, (-e) % 1)
               for d, e in zip(datum.degrees, datum.epsilons)]
    body = _angles_to_poly(factors, datum.sqrt_prime)
    shifted = ((0, 0),) * datum.N + body.coeffs
    return CycloPoly(coeffs=shifted, p=body.p)


def torus_order_poly(datum: CoxeterDatum) -> CycloPoly:
    """|T_c| = det(q * c*sigma - 1) = prod_j (q*mu_j - 1) over Z[sqrt(p)][q].

    The raw determinant carries the sign det(c*sigma) = +-1 in its leading
    coefficient; the group order is the positive value, so the polynomial
    is normalized to be monic.
    """
    factors = [(1, a, ZERO_ANGLE) for a in twisted_coxeter_eigenvalues(datum)]
    poly = _angles_to_poly(factors, datum.sqrt_prime)
    lead = poly.coeffs[-1]
    if lead == (-1, 0):
        return CycloPoly(tuple((-a, -b) for a, b in poly.coeffs), poly.p)
    if lead != (1, 0):
        raise IntegralityFailure(f"non-unit leading torus coefficient {lead}")
    return poly


def weyl_fixed_order(datum: CoxeterDatum) -> int:
    """Order of the twist-fixed Weyl subgroup, prod of d_j over eps_j = 1.

    Classical consequence of Springer's theory of twisted invariants; it is
    exactly the data the order polynomial tables already carry.
    """
    out = 1
    for d, e in zip(datum.degrees, datum.epsilons):
        if e % 1 == 0:
            out *= d
    return out


def phi_degree_sum(datum: CoxeterDatum) -> int:
    """sum_d a(d) * phi(d); equals sum of the degrees (order formula check)."""
    return sum(cyclotomic_multiplicity(datum, d) * euler_phi(d)
               for d in range(1, datum.h + 1))


def parse_type(name: str, rank: int | None = None) -> TwistedType:
    """Parse names like 'A', 'E8', '2G2', '3D4', optionally with a rank."""
    name = name.strip()
    canonical = {f.upper(): f for f in FAMILIES}
    key = name.upper()
    if key in canonical:
        fam = canonical[key]
        fixed = _FIXED_RANK.get(fam)
        if rank is None:
            if fixed is None:
                raise UnsupportedType(f"family {fam} needs an explicit rank")
            rank = fixed
        return TwistedType(fam, rank)
    # allow a trailing rank in the name, e.g. "A2", "2A3", "B4"
    for fam in sorted(FAMILIES, key=len, reverse=True):
        if key.startswith(fam.upper()) and key[len(fam):].isdigit():
            inline = int(key[len(fam):])
            if rank is not None and rank != inline:
                raise UnsupportedType(f"conflicting ranks {inline} and {rank}")
            return TwistedType(fam, inline)
    raise UnsupportedType(f"cannot parse type {name!r}")
