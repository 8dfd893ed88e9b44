"""Irredundant decomposition of the singular locus over smooth curves.

For g >= 3 the singular points of the moduli space are the curves with
an automorphism that is not generated by pseudoreflections; the only
pseudoreflection is the hyperelliptic involution in genus 3.  The locus
of curves with an order-p symmetry of a fixed numerical type is closed
and irreducible, so the singular locus decomposes into the maximal ones.
Redundancy happens exactly when the quotient data is special enough
that a general member carries extra symmetry; the classifier below
matches those special shapes, produces the bigger locus it lands in
(exactly where derivable, by a certified dimension bound otherwise) and
verifies strict dimension growth at runtime instead of trusting the
case analysis.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .branching import (
    SmoothLocus,
    BranchingSequence,
    enumerate_loci,
    smooth_locus,
)
from .combinat import is_prime, primes_upto, units_mod

__all__ = [
    "Verdict",
    "CaseTag",
    "NormalizerShape",
    "ContainerInfo",
    "ClassificationRecord",
    "DecompositionReport",
    "case_pattern",
    "container_info",
    "classify",
    "decompose_sing",
]


class Verdict(Enum):
    COMPONENT = "component"
    REDUNDANT = "redundant"
    EXCLUDED_PSEUDOREFLECTION = "excluded-pseudoreflection"
    MANUAL_REVIEW = "manual-review"


class CaseTag(Enum):
    GENUS2_QUOTIENT = "genus2-quotient-unramified"
    ELLIPTIC_QUOTIENT = "elliptic-quotient-two-points"
    RATIONAL_FOUR_POINTS = "rational-quotient-four-points"
    RATIONAL_INVOLUTION = "rational-three-points-involution"
    RATIONAL_ORDER_THREE = "rational-three-points-order-three"


class NormalizerShape(Enum):
    DIHEDRAL = "dihedral"
    DIHEDRAL_X2 = "dihedral-times-2"
    KLEIN_FOUR = "klein-four"
    CYCLIC_2P = "cyclic-2p"
    CYCLIC_3_EXTENSION = "cyclic-3-extension"


@dataclass(frozen=True)
class ContainerInfo:
    """A locus certified to contain the classified one.

    When the full branching datum of the container is derivable the
    record is exact and dim equals the container dimension; otherwise
    only the order q and a dimension lower bound are certified.
    """

    q: int
    g: int
    exact: bool
    dim_lower_bound: int
    counts: tuple[int, ...] | None = None
    h: int | None = None
    k: int | None = None
    dim: int | None = None

    def label(self) -> str:
        if self.exact and self.counts is not None:
            body = ",".join(str(c) for c in self.counts)
            return "M_{%d;%d,[(%s)]}" % (self.g, self.q, body)
        return "M_{%d;%d,[?]}" % (self.g, self.q)


@dataclass(frozen=True)
class ClassificationRecord:
    locus: SmoothLocus
    verdict: Verdict
    case_tag: CaseTag | None = None
    normalizer: NormalizerShape | None = None
    container: ContainerInfo | None = None
    notes: tuple[str, ...] = ()


@dataclass(frozen=True)
class DecompositionReport:
    """Irredundant decomposition, with witnesses and review flags.

    records covers the interior classification; boundary holds boundary
    components when assembled for the compactified space.
    """

    g: int
    records: tuple[ClassificationRecord, ...]
    boundary: tuple = ()
    warnings: tuple[str, ...] = ()
    notes: tuple[str, ...] = ()

    def components(self) -> tuple[ClassificationRecord, ...]:
        return tuple(r for r in self.records if r.verdict is Verdict.COMPONENT)

    def redundant(self) -> tuple[ClassificationRecord, ...]:
        return tuple(r for r in self.records if r.verdict is Verdict.REDUNDANT)

    def excluded(self) -> tuple[ClassificationRecord, ...]:
        return tuple(
            r for r in self.records if r.verdict is Verdict.EXCLUDED_PSEUDOREFLECTION
        )

    def manual_review(self) -> tuple[ClassificationRecord, ...]:
        return tuple(r for r in self.records if r.verdict is Verdict.MANUAL_REVIEW)


def _negated(multiset: tuple[int, ...], p: int) -> tuple[int, ...]:
    return tuple(sorted((-m) % p for m in multiset))


def _unit_equivalent(multiset: tuple[int, ...], target: tuple[int, ...], p: int) -> bool:
    target = tuple(sorted(target))
    for r in units_mod(p):
        if tuple(sorted((r * m) % p for m in multiset)) == target:
            return True
    return False


def _cube_root_coset(multiset: tuple[int, ...], p: int) -> bool:
    roots = sorted(m for m in range(1, p) if (m * m * m) % p == 1)
    if len(roots) != 3:
        return False
    if len(set(multiset)) != 3:
        return False
    a = multiset[0]
    coset = tuple(sorted((a * r) % p for r in roots))
    return tuple(sorted(multiset)) == coset


def case_pattern(locus: SmoothLocus) -> tuple[CaseTag | None, NormalizerShape | None]:
    """Match the quotient shape of a prime-order locus against the
    configurations whose general member carries extra symmetry."""
    p = locus.d
    if not is_prime(p):
        raise ValueError("prime order required")
    if locus.g < 3:
        raise ValueError("classification requires genus at least 3")
    h, k = locus.h, locus.k
    monod = locus.sequence().monodromies()
    if (h, k) == (2, 0):
        shape = NormalizerShape.KLEIN_FOUR if p == 2 else NormalizerShape.DIHEDRAL
        return CaseTag.GENUS2_QUOTIENT, shape
    if (h, k) == (1, 2):
        shape = NormalizerShape.KLEIN_FOUR if p == 2 else NormalizerShape.DIHEDRAL
        return CaseTag.ELLIPTIC_QUOTIENT, shape
    if h == 0 and k == 4 and tuple(sorted(monod)) == _negated(monod, p):
        # Negation-symmetric quadruple: {1, 1, -1, -1} up to a unit, or
        # {1, -1, n, -n} with n not a unit multiple of 1.
        if _unit_equivalent(monod, (1, 1, p - 1, p - 1), p):
            return CaseTag.RATIONAL_FOUR_POINTS, NormalizerShape.DIHEDRAL_X2
        return CaseTag.RATIONAL_FOUR_POINTS, NormalizerShape.DIHEDRAL
    if h == 0 and k == 3:
        if len(set(monod)) < len(monod):
            return CaseTag.RATIONAL_INVOLUTION, NormalizerShape.CYCLIC_2P
        if p % 3 == 1 and _cube_root_coset(monod, p):
            return CaseTag.RATIONAL_ORDER_THREE, NormalizerShape.CYCLIC_3_EXTENSION
    return None, None


def _min_locus_dim(g: int, q: int) -> int | None:
    loci = enumerate_loci(g, q)
    if not loci:
        return None
    return min(l.dim for l in loci)


def container_info(locus: SmoothLocus, tag: CaseTag) -> ContainerInfo:
    """The bigger locus a matched shape lands in.

    Exact containers: unramified genus-2 quotient lands in the order-2
    locus with 6 branch points at the same total genus (for p = 2, in
    the 4-dimensional double covers of elliptic curves); the elliptic
    two-point shape lands in the order-2 locus with 4 branch points;
    the rational three-point shape with a lifted involution comes from
    the plane model w^p = x^2 - 1, whose involution fixes p + 1 points
    over a rational quotient.  The remaining shapes only certify the
    symmetry order, so the bound is the smallest admissible dimension.
    """
    p = locus.d
    g = locus.g
    if tag is CaseTag.GENUS2_QUOTIENT:
        if p == 2:
            cont = smooth_locus(3, BranchingSequence(2, (4,)))
        else:
            cont = smooth_locus(p + 1, BranchingSequence(2, (6,)))
            if cont.h != 1 + (p - 3) // 2:
                raise AssertionError("container quotient genus mismatch")
        return ContainerInfo(
            q=2, g=cont.g, exact=True, dim_lower_bound=cont.dim,
            counts=cont.counts, h=cont.h, k=cont.k, dim=cont.dim,
        )
    if tag is CaseTag.ELLIPTIC_QUOTIENT:
        cont = smooth_locus(p, BranchingSequence(2, (4,)))
        if cont.h != 1 + (p - 3) // 2:
            raise AssertionError("container quotient genus mismatch")
        return ContainerInfo(
            q=2, g=cont.g, exact=True, dim_lower_bound=cont.dim,
            counts=cont.counts, h=cont.h, k=cont.k, dim=cont.dim,
        )
    if tag is CaseTag.RATIONAL_INVOLUTION:
        cont = smooth_locus(g, BranchingSequence(2, (p + 1,)))
        if cont.h != 0:
            raise AssertionError("container quotient genus mismatch")
        return ContainerInfo(
            q=2, g=g, exact=True, dim_lower_bound=cont.dim,
            counts=cont.counts, h=cont.h, k=cont.k, dim=cont.dim,
        )
    if tag is CaseTag.RATIONAL_FOUR_POINTS:
        q = 2
    elif tag is CaseTag.RATIONAL_ORDER_THREE:
        q = 3
    else:
        raise ValueError("unknown case tag")
    bound = _min_locus_dim(g, q)
    if bound is None:
        # No admissible locus of that order would contradict the matched
        # symmetry; flag for review rather than guessing.
        return ContainerInfo(q=q, g=g, exact=False, dim_lower_bound=-1)
    return ContainerInfo(q=q, g=g, exact=False, dim_lower_bound=bound)


_EXCLUDED_HYPERELLIPTIC = (3, 2, 0, 8)


def classify(locus: SmoothLocus) -> ClassificationRecord:
    """One verdict per admissible prime-order locus, g >= 3.

    The genus-3 hyperelliptic divisor itself is excluded (its involution
    acts as a pseudoreflection).  A matched shape is redundant when the
    certified container dimension strictly exceeds the locus dimension;
    a non-strict comparison or an uncertifiable container goes to manual
    review, never silently dropped.
    """
    if (locus.g, locus.d, locus.h, locus.k) == _EXCLUDED_HYPERELLIPTIC:
        return ClassificationRecord(
            locus=locus,
            verdict=Verdict.EXCLUDED_PSEUDOREFLECTION,
            notes=(
                "order-2 action with rational quotient at genus 3: the involution "
                "is a pseudoreflection, the locus is not in the singular set",
            ),
        )
    tag, shape = case_pattern(locus)
    if tag is None:
        return ClassificationRecord(locus=locus, verdict=Verdict.COMPONENT)
    cont = container_info(locus, tag)
    notes: list[str] = []
    if tag is CaseTag.GENUS2_QUOTIENT and locus.d == 2:
        notes.append(
            "also contained in the genus-3 hyperelliptic divisor; the certified "
            "container is the locus of double covers of elliptic curves"
        )
    if cont.dim_lower_bound > locus.dim:
        if cont.exact and (cont.g, cont.q, cont.h, cont.k) == _EXCLUDED_HYPERELLIPTIC:
            notes.append(
                "container is the genus-3 hyperelliptic divisor, which is itself "
                "outside the singular locus; recorded as redundant, review advised"
            )
        return ClassificationRecord(
            locus=locus,
            verdict=Verdict.REDUNDANT,
            case_tag=tag,
            normalizer=shape,
            container=cont,
            notes=tuple(notes),
        )
    notes.append("container dimension not strictly larger; review required")
    return ClassificationRecord(
        locus=locus,
        verdict=Verdict.MANUAL_REVIEW,
        case_tag=tag,
        normalizer=shape,
        container=cont,
        notes=tuple(notes),
    )


def decompose_sing(g: int) -> DecompositionReport:
    """Classify every admissible prime-order locus of genus g >= 3.

    Orders run over primes p <= 2g + 1; beyond that no order-p symmetry
    fits the genus.  Genus 2 is rejected: every genus-2 curve is
    hyperelliptic and the pseudoreflection bookkeeping starts at 3.
    """
    if g < 3:
        raise ValueError(
            "interior decomposition needs g >= 3; at genus 2 the whole moduli "
            "space is the order-2 locus with 6 branch points"
        )
    records: list[ClassificationRecord] = []
    for p in primes_upto(2 * g + 1):
        for locus in enumerate_loci(g, p):
            records.append(classify(locus))
    records.sort(key=lambda r: (r.locus.d, r.locus.counts))
    for rec in records:
        if rec.verdict is Verdict.REDUNDANT:
            assert rec.container is not None
            assert rec.container.dim_lower_bound > rec.locus.dim
    warnings = tuple(
        "%s: %s" % (r.locus.label(), note)
        for r in records
        for note in r.notes
        if r.verdict in (Verdict.REDUNDANT, Verdict.MANUAL_REVIEW)
    )
    notes: list[str] = []
    if g == 3:
        notes.append(
            "the genus-3 hyperelliptic divisor has 8 branch points by the genus "
            "formula (an order-2 rational quotient forces k = 2g + 2)"
        )
    notes.append(
        "order-2 data with elliptic quotient and two branch points only exist "
        "at genus 2 and are outside this classification"
    )
    return DecompositionReport(
        g=g, records=tuple(records), warnings=warnings, notes=tuple(notes)
    )
