"""Brute-force character theory for metacyclic groups D x| E.

D is cyclic of order ell^alpha, E cyclic of order m prime to ell, acting
faithfully: the action exponent n has order m already mod ell, and the
generator x of E acts on y in D by y -> x^-1 y x = y^n.  (That right-hand
convention is what makes Ext^1(k_i, k_j) nonzero exactly for i = j + 1
with the character numbering below.)

Ordinary character values are exact cyclotomic integers in Q(zeta_{m ell^alpha});
orthogonality is checked literally.  The Brauer characters of the m simple
modules are pinned by the Hensel lift zeta of n (eta_j sends x to zeta^j),
which fixes the row and column numbering of the decomposition matrix so
the comparison against the star tree is cell-exact, not up to permutation.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from .brauer_tree import PlanarBrauerTree, decomposition_matrix
from .cyclotomic import CycloInt
from .ell_arith import TruncatedPadic, hensel_root
from .numtheory import has_order, prime_power_split


class SingularSystem(ArithmeticError):
    """The Brauer-character system was not uniquely solvable (a bug)."""


class Mismatch(AssertionError):
    """Star tree and oracle disagree; carries the differing cell."""

    def __init__(self, reason: str, cell: tuple[int, int] | None = None):
        self.reason = reason
        self.cell = cell
        super().__init__(reason if cell is None else f"{reason} at cell {cell}")


@dataclass(frozen=True)
class MetacyclicGroup:
    d_order: int
    e_order: int
    n: int

    def __post_init__(self):
        split = prime_power_split(self.d_order)
        if split is None:
            raise ValueError(f"|D| = {self.d_order} must be a prime power")
        ell, _ = split
        if gcd(self.e_order, ell) != 1:
            raise ValueError("|E| must be prime to ell")
        if pow(self.n, self.e_order, self.d_order) != 1:
            raise ValueError(f"n^{self.e_order} != 1 mod {self.d_order}")
        if self.e_order > 1 and not has_order(self.n % ell, self.e_order, ell):
            raise ValueError(f"n must have order {self.e_order} mod {ell}")

    @property
    def ell(self) -> int:
        return prime_power_split(self.d_order)[0]

    @property
    def alpha(self) -> int:
        return prime_power_split(self.d_order)[1]

    @property
    def order(self) -> int:
        return self.d_order * self.e_order

    def zeta_lift(self) -> TruncatedPadic:
        """The root of unity of order |E| congruent to n, mod ell^(alpha+1)."""
        one = TruncatedPadic(1, self.ell, self.alpha + 1)
        if self.e_order == 1:
            return one
        return hensel_root(one, self.e_order, self.n % self.ell)


@dataclass(frozen=True)
class ConjClass:
    kind: str        # "one", "d" (element of D), or "e" (x^b coset)
    rep: int         # exponent a for y^a, or b for x^b
    size: int


@dataclass
class CharacterTable:
    group: MetacyclicGroup
    classes: list[ConjClass]
    # rows: m linear characters eta_0..eta_(m-1), then the induced
    # characters Theta_t over orbit representatives t
    names: list[str]
    values: list[list[CycloInt]]
    induced_reps: list[int]

    def degree(self, row: int) -> int:
        one = next(i for i, c in enumerate(self.classes) if c.kind == "one")
        v = self.values[row][one].as_integer()
        assert v is not None
        return v

    def check_orthogonality(self) -> bool:
        """Exact first and second orthogonality relations.

        Worked in Z[x]/(x^L - 1), where conjugation is the exponent flip
        and products are sparse convolutions; each inner product is
        reduced to the power basis once at the end.
        """
        order = self.group.order
        nrows = len(self.values)
        L = self.values[0][0].L
        raw = [[_raw_exponents(v, L) for v in row] for row in self.values]
        conj = [[{(L - k) % L: c for k, c in val.items()} for val in row]
                for row in raw]

        def inner(pairs) -> CycloInt:
            acc = [0] * L
            for weight, x, y in pairs:
                for kx, cx in x.items():
                    for ky, cy in y.items():
                        acc[(kx + ky) % L] += weight * cx * cy
            out = CycloInt.zero(L)
            for k, c in enumerate(acc):
                if c:
                    out = out + c * CycloInt.zeta_power(L, k)
            return out

        for i in range(nrows):
            for j in range(i, nrows):
                acc = inner((cls.size, vi, vjc) for cls, vi, vjc
                            in zip(self.classes, raw[i], conj[j]))
                if acc.as_integer() != (order if i == j else 0):
                    return False
        for a, ca in enumerate(self.classes):
            for b in range(a, len(self.classes)):
                acc = inner((1, row[a], crow[b])
                            for row, crow in zip(raw, conj))
                want = order // ca.size if a == b else 0
                if acc.as_integer() != want:
                    return False
        return True


def _raw_exponents(val: CycloInt, L: int) -> dict[int, int]:
    """Power-basis coordinates reread as a sparse zeta-exponent vector."""
    return {k: c for k, c in enumerate(val.coords) if c}


def _orbit_reps(g: MetacyclicGroup) -> list[int]:
    """Representatives (smallest exponent) of the E-orbits on D - {1}."""
    seen = set()
    reps = []
    for a in range(1, g.d_order):
        if a in seen:
            continue
        orbit = set()
        cur = a
        while cur not in orbit:
            orbit.add(cur)
            cur = cur * g.n % g.d_order
        reps.append(min(orbit))
        seen |= orbit
    return reps


def character_table(g: MetacyclicGroup) -> CharacterTable:
    """All irreducible ordinary characters with exact cyclotomic values.

    The m linear characters are inflated from E; the (ell^alpha - 1)/m
    induced characters come from the E-orbits of nontrivial characters of
    D and vanish off D.
    """
    L = g.e_order * g.d_order
    zeta_e = L // g.e_order      # zeta_m = zeta_L^(d_order)
    zeta_d = L // g.d_order      # zeta_(ell^alpha) = zeta_L^(e_order)
    classes = [ConjClass("one", 0, 1)]
    for a in _orbit_reps(g):
        classes.append(ConjClass("d", a, g.e_order))
    for b in range(1, g.e_order):
        classes.append(ConjClass("e", b, g.d_order))

    names, values, induced_reps = [], [], []
    for j in range(g.e_order):
        row = []
        for cls in classes:
            if cls.kind == "e":
                row.append(CycloInt.zeta_power(L, zeta_e * j * cls.rep))
            else:
                row.append(CycloInt.integer(L, 1))
        names.append(f"eta{j}")
        values.append(row)
    for t in _orbit_reps(g):
        row = []
        for cls in classes:
            if cls.kind == "one":
                row.append(CycloInt.integer(L, g.e_order))
            elif cls.kind == "d":
                acc = CycloInt.zero(L)
                cur = cls.rep
                for _ in range(g.e_order):
                    acc = acc + CycloInt.zeta_power(L, zeta_d * (t * cur % g.d_order))
                    cur = cur * g.n % g.d_order
                row.append(acc)
            else:
                row.append(CycloInt.zero(L))
        names.append(f"ind{t}")
        values.append(row)
        induced_reps.append(t)
    table = CharacterTable(g, classes, names, values, induced_reps)
    assert sum(table.degree(i) ** 2 for i in range(len(values))) == g.order
    assert table.check_orthogonality(), "orthogonality failed (table bug)"
    return table


def brute_decomposition_matrix(g: MetacyclicGroup) -> np.ndarray:
    """Decomposition matrix by restriction to the ell-regular classes.

    The Brauer characters are the m linear characters of E lifted through
    the fixed root of unity zeta = lift of n; each ordinary row is solved
    uniquely against that basis over Z/ell^(alpha+1).
    """
    table = character_table(g)
    m = g.e_order
    zeta = g.zeta_lift()
    mod = zeta.modulus
    # regular classes: identity and the x^b cosets, in that order
    reg = [i for i, c in enumerate(table.classes) if c.kind != "d"]
    exps = [0] + [c.rep for c in table.classes if c.kind == "e"]
    assert len(reg) == m
    # Brauer character matrix: phi_j(x^b) = zeta^(j b)
    v = np.zeros((m, m), dtype=object)
    for row, b in enumerate(exps):
        for j in range(m):
            v[row, j] = pow(zeta.value, j * b, mod)
    rows = []
    for i in range(len(table.values)):
        target = [_reduce_value(table.values[i][cls_idx], g, zeta)
                  for cls_idx in reg]
        rows.append(_solve_unit_system(v, target, g.ell, mod))
    out = np.array(rows, dtype=int)
    assert ((out == 0) | (out == 1)).all(), "unexpected decomposition numbers"
    return out


def _reduce_value(val: CycloInt, g: MetacyclicGroup,
                  zeta: TruncatedPadic) -> int:
    """Reduce a character value on a regular class into Z/ell^N.

    On the classes x^b the values are Z-combinations of |E|-th roots of
    unity; the reduction sends the canonical zeta_m to the Hensel lift of
    n, which is exactly the numbering convention of the simple modules.
    """
    mod = zeta.modulus
    L = val.L
    zeta_e_step = L // g.e_order
    # values on regular classes are integers (degrees, zeros) or single
    # |E|-th roots of unity (linear character values)
    a = val.as_integer()
    if a is not None:
        return a % mod
    for k in range(g.e_order):
        if val.coords == CycloInt.zeta_power(L, zeta_e_step * k).coords:
            return pow(zeta.value, k, mod)
    raise SingularSystem("unrecognized regular-class character value")


def _solve_unit_system(v: np.ndarray, target: list[int], ell: int,
                       mod: int) -> list[int]:
    """Solve v * d = target over Z/mod; v must be invertible mod ell."""
    m = v.shape[0]
    aug = np.zeros((m, m + 1), dtype=object)
    for i in range(m):
        for j in range(m):
            aug[i, j] = int(v[i, j]) % mod
        aug[i, m] = target[i] % mod
    for col in range(m):
        piv = next((r for r in range(col, m) if int(aug[r, col]) % ell), None)
        if piv is None:
            raise SingularSystem("Brauer character matrix not invertible")
        if piv != col:
            aug[[col, piv]] = aug[[piv, col]]
        inv = pow(int(aug[col, col]), -1, mod)
        for j in range(m + 1):
            aug[col, j] = int(aug[col, j]) * inv % mod
        for r in range(m):
            if r != col and int(aug[r, col]):
                f = int(aug[r, col])
                for j in range(m + 1):
                    aug[r, j] = (int(aug[r, j]) - f * int(aug[col, j])) % mod
    out = []
    for i in range(m):
        x = int(aug[i, m]) % mod
        # decomposition numbers are small nonnegative integers
        out.append(x if x <= mod // 2 else x - mod)
    return out


def verify_star(tree: PlanarBrauerTree, g: MetacyclicGroup) -> bool:
    """Cell-exact comparison of the star tree against the oracle.

    The tree must have been built by star_tree with the same parameters;
    the eta numbering on both sides is pinned by the same Hensel lift, so
    rows and columns must agree literally, not up to permutation.
    """
    meta = dict(tree.star_meta or ())
    if not meta:
        raise Mismatch("tree carries no star metadata")
    for key, want in (("d_order", g.d_order), ("e_order", g.e_order),
                      ("n", g.n % g.d_order)):
        if meta.get(key) != want:
            raise Mismatch(f"parameter {key}: tree has {meta.get(key)}, "
                           f"group has {want}")
    zeta = g.zeta_lift()
    if meta.get("zeta") != zeta.value or meta.get("zeta_precision") != zeta.n:
        raise Mismatch(f"zeta lift differs: tree {meta.get('zeta')}, "
                       f"oracle {zeta.value}")
    tree_d = decomposition_matrix(tree).matrix
    oracle_d = brute_decomposition_matrix(g)
    if tree_d.shape != oracle_d.shape:
        raise Mismatch(f"decomposition shapes differ: tree {tree_d.shape}, "
                       f"oracle {oracle_d.shape}")
    for i in range(tree_d.shape[0]):
        for j in range(tree_d.shape[1]):
            if int(tree_d[i, j]) != int(oracle_d[i, j]):
                raise Mismatch(
                    f"decomposition entries differ: tree {int(tree_d[i, j])}, "
                    f"oracle {int(oracle_d[i, j])}", cell=(i, j))
    return True
