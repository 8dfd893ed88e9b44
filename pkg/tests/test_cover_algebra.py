import itertools
import random

import pytest

from cycliccovers import cover_algebra as ca


def model_z():
    return ca.PicardModel(free_rank=1)


class TestPicardModel:
    def test_chain_validation(self):
        ca.PicardModel(1, (2, 4))
        with pytest.raises(ValueError):
            ca.PicardModel(1, (4, 2))
        with pytest.raises(ValueError):
            ca.PicardModel(0, (1,))

    def test_order(self):
        M = ca.PicardModel(1, (2, 6))
        assert M.element((1,), (0, 0)).order() is None
        assert M.element((0,), (1, 0)).order() == 2
        assert M.element((0,), (0, 1)).order() == 6
        assert M.element((0,), (1, 3)).order() == 2
        assert M.element((0,), (0, 2)).order() == 3
        assert M.zero().order() == 1

    def test_arithmetic(self):
        M = ca.PicardModel(2, (3,))
        a = M.element((1, 2), (2,))
        b = M.element((4, -1), (2,))
        assert a + b == M.element((5, 1), (1,))
        assert a - b == M.element((-3, 3), (0,))
        assert 3 * a == M.element((3, 6), (0,))


class TestNormalizeRoot:
    def test_grouping(self):
        rd = ca.RootDatum(4, (("s1", 5), ("s2", 2), ("t", -3)))
        # -3 is 1 mod 4, so t joins s1 at residue 1
        assert ca.normalize_root(rd) == {1: ("s1", "t"), 2: ("s2",)}

    def test_drops_multiples(self):
        assert ca.normalize_root(ca.RootDatum(3, (("s", 6),))) == {}

    def test_negative_exponent(self):
        rd = ca.RootDatum(2, (("s", 1), ("t", -1)))
        assert ca.normalize_root(rd) == {1: ("s", "t")}

    def test_never_residue_zero_and_disjoint(self):
        rng = random.Random(7)
        for _ in range(200):
            d = rng.randrange(2, 13)
            n = rng.randrange(1, 6)
            factors = tuple(
                ("s%d" % i, rng.choice([e for e in range(-3 * d, 3 * d + 1) if e]))
                for i in range(n)
            )
            grouped = ca.normalize_root(ca.RootDatum(d, factors))
            assert 0 not in grouped
            seen = [s for syms in grouped.values() for s in syms]
            assert len(seen) == len(set(seen))
            for r, syms in grouped.items():
                for s in syms:
                    e = dict(factors)[s]
                    assert e % d == r


class TestCarry:
    def test_examples(self):
        assert ca.carry(4, 3, 2) == 1
        assert ca.carry(4, 1, 2) == 0
        assert ca.carry(2, 1, 1) == 1

    def test_defining_identity(self):
        for d in range(2, 10):
            for a in range(d):
                for b in range(d):
                    assert a + b == (a + b) % d + ca.carry(d, a, b) * d

    def test_cocycle(self):
        for d in range(2, 13):
            for chi, xi, psi in itertools.product(range(d), repeat=3):
                e1 = ca.multiplication_exponents(d, chi, xi)
                e2 = ca.multiplication_exponents(d, (chi + xi) % d, psi)
                e3 = ca.multiplication_exponents(d, xi, psi)
                e4 = ca.multiplication_exponents(d, chi, (xi + psi) % d)
                for i in range(d - 1):
                    assert e1[i] + e2[i] == e3[i] + e4[i]


class TestMultiplicationExponents:
    def test_examples(self):
        assert ca.multiplication_exponents(2, 1, 1) == (1,)
        assert ca.multiplication_exponents(5, 2, 3) == (1, 1, 1, 1)
        assert ca.multiplication_exponents(4, 1, 1) == (0, 1, 1)


def random_assignment(rng, d=None):
    """A valid random BranchAssignment; residue 1 absorbs the defect."""
    d = d or rng.randrange(2, 13)
    free_rank = rng.randrange(0, 3)
    torsion = []
    t = rng.choice((0, 2, 3, 4, 6))
    if t:
        torsion.append(t)
        if rng.random() < 0.4:
            torsion.append(t * rng.choice((1, 2, 3)))
    M = ca.PicardModel(free_rank, tuple(torsion))

    def rnd_class():
        return M.element(
            tuple(rng.randrange(-4, 5) for _ in range(free_rank)),
            tuple(rng.randrange(0, tt) for tt in torsion),
        )

    L = rnd_class()
    divisors = {}
    total = M.zero()
    for i in range(2, d):
        if rng.random() < 0.4:
            items = []
            for s in range(rng.randrange(1, 3)):
                c = rnd_class()
                items.append(("s%d_%d" % (i, s), c))
                total = total + i * c
            divisors[i] = items
    fix = d * L - total
    divisors[1] = [("anchor", fix)]
    return ca.branch_assignment(d, M, L, divisors)


class TestCharacterClasses:
    def test_base_cases(self):
        rng = random.Random(1)
        for _ in range(20):
            ba = random_assignment(rng)
            assert ca.character_class(ba, 0) == ba.model.zero()
            assert ca.character_class(ba, 1) == ba.L

    def test_worked_example_order3(self):
        M = ca.PicardModel(2)
        a = M.element((3, 0), ())
        b = M.element((0, 3), ())
        L = M.element((1, 2), ())
        ba = ca.branch_assignment(3, M, L, {1: [("A", a)], 2: [("B", b)]})
        L2 = ca.character_class(ba, 2)
        assert L2 == 2 * L - b
        assert 3 * L2 == 2 * a + b

    def test_weighted_identity_randomised(self):
        rng = random.Random(42)
        for _ in range(500):
            ba = random_assignment(rng)
            for chi in range(ba.d):
                lhs = ba.d * ca.character_class(ba, chi)
                rhs = ba.model.zero()
                for i in range(1, ba.d):
                    rhs = rhs + ((chi * i) % ba.d) * ba.branch_class(i)
                assert lhs == rhs

    def test_section_class_matches_exponents(self):
        rng = random.Random(9)
        for _ in range(100):
            ba = random_assignment(rng)
            chi = rng.randrange(ba.d)
            xi = rng.randrange(ba.d)
            eps = ca.multiplication_exponents(ba.d, chi, xi)
            section = ba.model.zero()
            for i in range(1, ba.d):
                if eps[i - 1]:
                    section = section + ba.branch_class(i)
            lhs = (
                ca.character_class(ba, chi)
                + ca.character_class(ba, xi)
                - ca.character_class(ba, (chi + xi) % ba.d)
            )
            assert section == lhs

    def test_out_of_range(self):
        rng = random.Random(3)
        ba = random_assignment(rng, d=5)
        with pytest.raises(ValueError):
            ca.character_class(ba, 5)
        with pytest.raises(ValueError):
            ca.character_class(ba, -1)


class TestValidation:
    def test_rejects_broken_equivalence(self):
        M = model_z()
        L = M.element((1,), ())
        c = M.element((1,), ())
        with pytest.raises(ValueError):
            ca.branch_assignment(4, M, L, {2: [("D", c)]})

    def test_rejects_shared_symbols(self):
        M = model_z()
        z = M.zero()
        with pytest.raises(ValueError):
            ca.branch_assignment(2, M, z, {1: [("D", z), ("D", z)]})


class TestIrreducibility:
    def test_unit_support(self):
        M = model_z()
        c = M.element((4,), ())
        L = M.element((1,), ())
        ba = ca.branch_assignment(4, M, L, {1: [("D", c)]})
        assert ca.irreducibility(ba).irreducible
        assert ca.irreducibility(ba).inertia_gcd == 1

    def test_free_group_reducible(self):
        M = model_z()
        c = M.element((2,), ())
        L = M.element((1,), ())
        ba = ca.branch_assignment(4, M, L, {2: [("D", c)]})
        res = ca.irreducibility(ba)
        assert not res.irreducible
        assert res.inertia_gcd == 2 and res.torsion_order == 1

    def test_torsion_makes_irreducible(self):
        M = ca.PicardModel(1, (2,))
        c = M.element((2,), (1,))
        L = M.element((1,), (0,))
        ba = ca.branch_assignment(4, M, L, {2: [("D", c)]})
        res = ca.irreducibility(ba)
        assert res.irreducible
        assert res.inertia_gcd == 2 and res.torsion_order == 2

    def test_etale(self):
        M = ca.PicardModel(0, (4,))
        L = M.element((), (1,))
        ba = ca.branch_assignment(4, M, L, {})
        assert ca.irreducibility(ba).irreducible
        L2 = M.element((), (2,))
        ba2 = ca.branch_assignment(4, M, L2, {})
        assert not ca.irreducibility(ba2).irreducible


class TestComponentCount:
    def test_examples(self):
        assert ca.component_count(6, [2, 3], 6) == 1
        # brute-forced: the image is {0, 2} inside Z/4, giving 2 components
        assert ca.component_count(4, [2], 2) == 2
        assert ca.component_count(5, [], 1) == 5

    def test_brute_force_subgroup(self):
        for d in range(2, 13):
            for e in [x for x in range(1, d + 1) if d % x == 0]:
                for images in itertools.chain(
                    [()], itertools.combinations(range(1, d), 1),
                    itertools.combinations(range(1, d), 2),
                ):
                    gens = set(images) | {d // e}
                    H = {0}
                    frontier = [0]
                    while frontier:
                        x = frontier.pop()
                        for gn in gens:
                            y = (x + gn) % d
                            if y not in H:
                                H.add(y)
                                frontier.append(y)
                    assert ca.component_count(d, images, e) == d // len(H)

    def test_rejects_bad_index(self):
        with pytest.raises(ValueError):
            ca.component_count(6, [1], 4)


def enumerate_small_assignments(d, torsion):
    """Exhaustive valid assignments over Z/t with one divisor per residue
    of a chosen support."""
    M = ca.PicardModel(0, (torsion,))
    residues = range(1, d)
    for size in (0, 1, 2):
        for support in itertools.combinations(residues, size):
            for values in itertools.product(range(torsion), repeat=size):
                classes = {
                    i: M.element((), (v,)) for i, v in zip(support, values)
                }
                for lval in range(torsion):
                    L = M.element((), (lval,))
                    total = M.zero()
                    for i, c in classes.items():
                        total = total + i * c
                    if d * L != total:
                        continue
                    yield ca.branch_assignment(
                        d, M, L, {i: [("s%d" % i, c)] for i, c in classes.items()}
                    )


class TestOracleAgreement:
    @pytest.mark.parametrize("d", range(2, 13))
    def test_exhaustive_small(self, d):
        for torsion in (2, 3, 4, 5, 6):
            for ba in enumerate_small_assignments(d, torsion):
                res = ca.irreducibility(ba)
                etale_order = (d // res.inertia_gcd) * res.torsion_order
                count = ca.component_count(d, ba.support(), etale_order)
                assert res.irreducible == (count == 1)

    def test_randomised(self):
        rng = random.Random(11)
        for _ in range(300):
            ba = random_assignment(rng)
            res = ca.irreducibility(ba)
            etale_order = (ba.d // res.inertia_gcd) * res.torsion_order
            count = ca.component_count(ba.d, ba.support(), etale_order)
            assert res.irreducible == (count == 1)
