"""Divisor-class bookkeeping for cyclic covers over a factorial base.

The Picard group of the base is modelled as an abstract finitely
generated abelian group Z^r + Z/t_1 + ... + Z/t_s with t_1 | ... | t_s.
No geometry is computed: a cover of order d is the data of reduced
branch divisors D_1, ..., D_{d-1} without common components, grouped by
local monodromy residue, together with a class L satisfying d*L =
sum_i i*[D_i].  Character classes, multiplication sections and the
irreducibility criterion are pure bookkeeping on these classes.

For a character exponent x the class L_x satisfies d*L_x =
sum_i ((x*i) mod d) * [D_i].  The recursion steps by L_{x+1} = L_x + L_1
minus the carry-weighted branch classes; the sign is the one that makes
d*L_x come out right and puts the product section of two eigensheaves
in H^0 of L_x + L_y - L_{x+y}.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm

__all__ = [
    "PicardModel",
    "DivisorClass",
    "RootDatum",
    "BranchAssignment",
    "IrreducibilityResult",
    "normalize_root",
    "carry",
    "multiplication_exponents",
    "character_class",
    "irreducibility",
    "component_count",
]


@dataclass(frozen=True)
class PicardModel:
    """Finitely generated abelian group Z^free_rank + sum Z/t_j."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be non-negative")
        prev = None
        for t in self.torsion:
            if t < 2:
                raise ValueError("torsion factors must be at least 2")
            if prev is not None and t % prev != 0:
                raise ValueError("torsion factors must form a divisibility chain")
            prev = t

    def element(self, free=(), torsion=()) -> DivisorClass:
        free = tuple(free)
        torsion = tuple(torsion)
        if len(free) != self.free_rank or len(torsion) != len(self.torsion):
            raise ValueError("coordinate lengths do not match the group")
        torsion = tuple(a % t for a, t in zip(torsion, self.torsion))
        return DivisorClass(self, free, torsion)

    def zero(self) -> DivisorClass:
        return self.element((0,) * self.free_rank, (0,) * len(self.torsion))


@dataclass(frozen=True)
class DivisorClass:
    model: PicardModel
    free: tuple[int, ...]
    torsion: tuple[int, ...]

    def _check(self, other: "DivisorClass"):
        if self.model != other.model:
            raise ValueError("classes live in different groups")

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        self._check(other)
        return self.model.element(
            tuple(a + b for a, b in zip(self.free, other.free)),
            tuple(a + b for a, b in zip(self.torsion, other.torsion)),
        )

    def __neg__(self) -> "DivisorClass":
        return self.model.element(
            tuple(-a for a in self.free), tuple(-a for a in self.torsion)
        )

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return self + (-other)

    def __rmul__(self, n: int) -> "DivisorClass":
        return self.model.element(
            tuple(n * a for a in self.free), tuple(n * a for a in self.torsion)
        )

    def is_zero(self) -> bool:
        return not any(self.free) and not any(self.torsion)

    def order(self) -> int | None:
        """Exact order in the group; None for infinite order."""
        if any(self.free):
            return None
        o = 1
        for a, t in zip(self.torsion, self.model.torsion):
            o = lcm(o, t // gcd(a, t))
        return o


@dataclass(frozen=True)
class RootDatum:
    """A d-th root datum: prime-divisor symbols with integer exponents.

    Positive exponents are numerator primes, negative exponents
    denominator primes; exponents divisible by d contribute nothing.
    """

    d: int
    factors: tuple[tuple[str, int], ...]

    def __post_init__(self):
        if self.d < 2:
            raise ValueError("order must be at least 2")
        seen = set()
        for sym, e in self.factors:
            if sym in seen:
                raise ValueError("repeated prime symbol %r" % sym)
            seen.add(sym)
            if e == 0:
                raise ValueError("exponents must be nonzero")


def normalize_root(rd: RootDatum) -> dict[int, tuple[str, ...]]:
    """Group root-datum symbols by exponent residue mod d.

    A symbol with exponent e lands at residue e mod d (dropped when the
    residue is 0); the set at residue i is the branch divisor carrying
    local monodromy i.
    """
    grouped: dict[int, list[str]] = {}
    for sym, e in rd.factors:
        r = e % rd.d
        if r == 0:
            continue
        grouped.setdefault(r, []).append(sym)
    return {r: tuple(sorted(syms)) for r, syms in sorted(grouped.items())}


def carry(d: int, a: int, b: int) -> int:
    """Overflow bit of adding canonical residues: a + b = ((a+b) mod d) + carry*d."""
    if not (0 <= a < d and 0 <= b < d):
        raise ValueError("arguments must be canonical residues in 0..d-1")
    return 1 if a + b >= d else 0


def multiplication_exponents(d: int, chi: int, xi: int) -> tuple[int, ...]:
    """Exponent bits of the product section, indexed by residue i = 1..d-1."""
    if not (0 <= chi < d and 0 <= xi < d):
        raise ValueError("character exponents must lie in 0..d-1")
    return tuple(carry(d, (chi * i) % d, (xi * i) % d) for i in range(1, d))


@dataclass(frozen=True)
class BranchAssignment:
    """Branch divisors grouped by monodromy residue, plus the root class L.

    divisors maps residue i to the (symbol, class) pairs of the reduced
    divisor D_i; symbols are globally distinct since the D_i share no
    components.  Validity requires d*L = sum_i i*[D_i] exactly.
    """

    d: int
    model: PicardModel
    L: DivisorClass
    divisors: tuple[tuple[int, tuple[tuple[str, DivisorClass], ...]], ...]

    def __post_init__(self):
        if self.d < 2:
            raise ValueError("order must be at least 2")
        if self.L.model != self.model:
            raise ValueError("L does not live in the given group")
        seen: set[str] = set()
        for i, items in self.divisors:
            if not (1 <= i <= self.d - 1):
                raise ValueError("divisor residue %d out of range" % i)
            for sym, cls in items:
                if sym in seen:
                    raise ValueError("symbol %r appears in two divisors" % sym)
                seen.add(sym)
                if cls.model != self.model:
                    raise ValueError("class of %r lives in a different group" % sym)
        total = self.model.zero()
        for i, _ in self.divisors:
            total = total + i * self.branch_class(i)
        if (self.d * self.L) != total:
            raise ValueError("d*L differs from the weighted branch class sum")

    def branch_class(self, i: int) -> DivisorClass:
        acc = self.model.zero()
        for j, items in self.divisors:
            if j == i:
                for _, cls in items:
                    acc = acc + cls
        return acc

    def support(self) -> tuple[int, ...]:
        return tuple(sorted(i for i, items in self.divisors if items))


def branch_assignment(d, model, L, divisors: dict) -> BranchAssignment:
    """Build a BranchAssignment from a residue -> [(symbol, class)] mapping."""
    packed = tuple(
        (i, tuple(sorted(divisors[i], key=lambda sc: sc[0]))) for i in sorted(divisors)
    )
    return BranchAssignment(d=d, model=model, L=L, divisors=packed)


def character_class(ba: BranchAssignment, chi: int) -> DivisorClass:
    """The class L_chi of the chi-eigensheaf, by the carry recursion."""
    if not (0 <= chi < ba.d):
        raise ValueError("character exponent out of range")
    acc = ba.model.zero()
    for step in range(chi):
        correction = ba.model.zero()
        for i in range(1, ba.d):
            if carry(ba.d, (step * i) % ba.d, i % ba.d):
                correction = correction + ba.branch_class(i)
        acc = acc + ba.L - correction
    return acc


@dataclass(frozen=True)
class IrreducibilityResult:
    irreducible: bool
    inertia_gcd: int
    torsion_order: int

    def __bool__(self) -> bool:
        return self.irreducible


def irreducibility(ba: BranchAssignment) -> IrreducibilityResult:
    """Connectivity test for the cover described by a BranchAssignment.

    Let m generate the subgroup of Z/d spanned by the populated residues
    (m = d when the cover is unramified).  The cover is irreducible iff
    the class L' = (d/m)L - sum_i (i/m)[D_i] has order exactly m; for
    m = 1 the class vanishes by validity, so the test is uniform.
    """
    m = ba.d
    for i in ba.support():
        m = gcd(m, i)
    lp = (ba.d // m) * ba.L
    for i in ba.support():
        lp = lp - (i // m) * ba.branch_class(i)
    order = lp.order()
    if order is None:
        raise AssertionError("m*L' must vanish, so L' has finite order")
    return IrreducibilityResult(irreducible=(order == m), inertia_gcd=m, torsion_order=order)


def component_count(d: int, monodromy_images, etale_order: int) -> int:
    """Connected components of a model cover of Z/d monodromy.

    The total monodromy image is generated by the listed local residues
    together with the subgroup of size `etale_order` coming from the
    unramified part; the count is the index of that image.
    """
    if etale_order <= 0 or d % etale_order != 0:
        raise ValueError("etale_order must divide d")
    g0 = gcd(d, d // etale_order)
    for i in monodromy_images:
        g0 = gcd(g0, i % d)
    return g0
