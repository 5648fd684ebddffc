import itertools
import math
import random

import numpy as np
import pytest

from modhyp.arith import euler_phi, is_square_mod_pp, primes_up_to
from modhyp.hyperbola import (
    EnumerationBudgetError,
    HyperbolaSpec,
    ResidueSet,
    enumerate_points,
    signed_sumset,
    sum_diff_cardinalities,
    sum_diff_sets,
    sum_diff_tables,
    unreduced_sum_diff,
)


def naive_signed_sumset(spec):
    """Definition-level reference: nested loops over unit tuples."""
    n, a = spec.n, spec.a
    units = [x for x in range(1, n) if math.gcd(x, n) == 1]
    signs = spec.signs
    out = set()
    for point in itertools.product(units, repeat=spec.d - 1):
        prod = 1
        for x in point:
            prod = prod * x % n
        last = a * pow(prod, -1, n) % n
        coords = (*point, last)
        out.add(sum(s * x for s, x in zip(signs, coords)) % n)
    return out


# ---------------------------------------------------------------- spec type


def test_spec_reduces_and_validates():
    spec = HyperbolaSpec(2, 2, 14, 5)
    assert spec.a == 4
    with pytest.raises(ValueError):
        HyperbolaSpec(2, 2, 5, 10)  # shared factor
    with pytest.raises(ValueError):
        HyperbolaSpec(1, 1, 1, 5)
    with pytest.raises(ValueError):
        HyperbolaSpec(2, 3, 1, 5)
    with pytest.raises(ValueError):
        HyperbolaSpec(2, 2, 1, 1)


def test_spec_signs():
    assert HyperbolaSpec(3, 2, 1, 5).signs == (1, 1, -1)
    assert HyperbolaSpec(2, 0, 1, 5).signs == (-1, -1)


# ---------------------------------------------------------------- ResidueSet


def test_residue_set_basics():
    rs = ResidueSet.from_iterable(9, [0, 3, 6, 3])
    assert len(rs) == 3
    assert list(rs) == [0, 3, 6]
    assert 3 in rs and 4 not in rs
    assert rs == ResidueSet.from_iterable(9, [6, 0, 3])
    assert rs != ResidueSet.from_iterable(10, [0, 3, 6])
    assert sorted(rs.complement()) == [1, 2, 4, 5, 7, 8]
    assert rs | ResidueSet.from_iterable(9, [1]) == ResidueSet.from_iterable(9, [0, 1, 3, 6])
    with pytest.raises(ValueError):
        rs | ResidueSet.from_iterable(8, [1])


def test_residue_set_mask_roundtrip():
    mask = np.zeros(70, dtype=bool)
    mask[[0, 1, 63, 64, 69]] = True
    rs = ResidueSet.from_mask(mask)
    assert rs.values() == [0, 1, 63, 64, 69]
    assert np.array_equal(rs.to_mask(), mask)


# ---------------------------------------------------------------- enumerate


def test_enumerate_examples():
    assert set(enumerate_points(HyperbolaSpec(2, 2, 4, 5))) == {
        (1, 4),
        (2, 2),
        (3, 3),
        (4, 1),
    }
    assert set(enumerate_points(HyperbolaSpec(2, 2, 1, 9))) == {
        (1, 1),
        (2, 5),
        (4, 7),
        (5, 2),
        (7, 4),
        (8, 8),
    }
    assert set(enumerate_points(HyperbolaSpec(3, 3, 1, 3))) == {
        (1, 1, 1),
        (1, 2, 2),
        (2, 1, 2),
        (2, 2, 1),
    }


def test_enumerate_order_and_count():
    for spec in [
        HyperbolaSpec(2, 2, 3, 20),
        HyperbolaSpec(3, 1, 2, 9),
        HyperbolaSpec(4, 2, 1, 6),
    ]:
        pts = list(enumerate_points(spec))
        assert len(pts) == euler_phi(spec.n) ** (spec.d - 1)
        assert pts == sorted(pts)  # lexicographic in the leading coordinates
        for pt in pts:
            assert math.prod(pt) % spec.n == spec.a
            assert all(1 <= c < spec.n and math.gcd(c, spec.n) == 1 for c in pt)


def test_enumerate_budget():
    with pytest.raises(EnumerationBudgetError) as err:
        list(enumerate_points(HyperbolaSpec(3, 3, 1, 101), budget=100))
    assert err.value.tuple_count == 100**2
    assert "10000" in str(err.value)


# ---------------------------------------------------------------- signed sumset


def test_signed_sumset_examples():
    s = signed_sumset(HyperbolaSpec(2, 2, 4, 5))
    assert sorted(s) == [0, 1, 4] and len(s) == 3
    d = signed_sumset(HyperbolaSpec(2, 1, 1, 9))
    assert sorted(d) == [0, 3, 6] and len(d) == 3
    full = signed_sumset(HyperbolaSpec(3, 3, 1, 11))
    assert len(full) == 11


def test_signed_sumset_matches_naive():
    rng = random.Random(5)
    cases = []
    for n in [5, 8, 9, 12, 16, 21, 30]:
        units = [a for a in range(1, n) if math.gcd(a, n) == 1]
        for d in (2, 3):
            for m in range(d + 1):
                cases.append(HyperbolaSpec(d, m, rng.choice(units), n))
    cases.append(HyperbolaSpec(4, 2, 1, 9))
    cases.append(HyperbolaSpec(4, 0, 5, 6))
    cases.append(HyperbolaSpec(5, 3, 1, 4))
    for spec in cases:
        assert set(signed_sumset(spec)) == naive_signed_sumset(spec), spec


def test_signed_sumset_workers_deterministic():
    spec = HyperbolaSpec(2, 2, 7, 5000)
    base = signed_sumset(spec, workers=1)
    assert signed_sumset(spec, workers=3) == base
    assert signed_sumset(spec, workers=8) == base


def test_signed_sumset_budget():
    with pytest.raises(EnumerationBudgetError):
        signed_sumset(HyperbolaSpec(2, 2, 1, 9), budget=5)


# ---------------------------------------------------------------- invariants


def test_reflection_symmetry_planar():
    for n in [7, 16, 45, 100]:
        for a in [1, 3]:
            if math.gcd(a, n) != 1:
                continue
            pts = set(enumerate_points(HyperbolaSpec(2, 2, a, n)))
            assert pts == {(y, x) for x, y in pts}
            dset = signed_sumset(HyperbolaSpec(2, 1, a, n))
            assert all((n - v) % n in dset for v in dset)


def test_sum_equals_reflected_difference_small():
    # sumset of a equals difference set of -a, as sets
    for n in range(2, 200):
        for a in range(1, n):
            if math.gcd(a, n) != 1:
                continue
            s, _ = sum_diff_sets(a, n)
            _, d = sum_diff_sets((-a) % n, n)
            assert s == d, (a, n)


def test_parity_at_two_powers():
    for t in range(1, 9):
        q = 2**t
        for a in range(1, q, 2):
            s, d = sum_diff_sets(a, q)
            assert all(v % 2 == 0 for v in s)
            assert all(v % 2 == 0 for v in d)


def test_doubling_bijection():
    # |difference set at p^t| equals the count of k with k^2 + a square,
    # k over [0, p^t) for odd p and [0, 2^(t-1)) at p = 2
    for p in primes_up_to(47):
        q, t = p, 1
        while q <= 2048:
            bound = q // 2 if p == 2 else q
            for a in range(1, min(q, 40)):
                if math.gcd(a, p) != 1:
                    continue
                _, d = sum_diff_sets(a, q)
                count = sum(1 for k in range(bound) if is_square_mod_pp(k * k + a, p, t))
                assert len(d) == count, (a, p, t)
            q *= p
            t += 1


def test_complement_symmetry():
    # coordinate negation: m-plus set of (-1)^d * a is the negated m-plus set of a
    # coordinate reversal: (d-m)-plus set of a is the negated m-plus set of a
    rng = random.Random(17)
    for d in (2, 3):
        for n in [5, 9, 16, 50, 201, 500]:
            units = [x for x in range(1, n) if math.gcd(x, n) == 1]
            a = rng.choice(units)
            for m in range(d + 1):
                base = signed_sumset(HyperbolaSpec(d, m, a, n))
                negated = ResidueSet.from_iterable(n, ((-v) % n for v in base))
                flipped_a = ((-1) ** d * a) % n
                assert signed_sumset(HyperbolaSpec(d, m, flipped_a, n)) == negated
                assert signed_sumset(HyperbolaSpec(d, d - m, a, n)) == negated


# ---------------------------------------------------------------- tables


def test_tables_match_per_a_oracle():
    for n in [2, 3, 5, 8, 12, 45, 60]:
        s_tab, d_tab = sum_diff_tables(n)
        s_card, d_card = sum_diff_cardinalities(n)
        for a in range(n):
            if math.gcd(a, n) != 1:
                assert not s_tab[a].any() and not d_tab[a].any()
                continue
            s, d = sum_diff_sets(a, n)
            assert np.array_equal(s_tab[a], s.to_mask())
            assert np.array_equal(d_tab[a], d.to_mask())
            assert int(s_card[a]) == len(s) and int(d_card[a]) == len(d)


def test_tables_reject_out_of_range():
    with pytest.raises(ValueError):
        sum_diff_tables(1)
    with pytest.raises(ValueError):
        sum_diff_tables(10**6)


# ---------------------------------------------------------------- unreduced


def test_unreduced_examples():
    assert unreduced_sum_diff(1, 5) == ({2, 5, 8}, {-1, 0, 1})
    assert unreduced_sum_diff(4, 5) == ({4, 5, 6}, {-3, 0, 3})
    assert unreduced_sum_diff(1, 2) == ({2}, {0})


def test_unreduced_ranges():
    for a, n in [(1, 30), (7, 16), (4, 15)]:
        sums, diffs = unreduced_sum_diff(a, n)
        assert all(2 <= v <= 2 * n - 2 for v in sums)
        assert all(-(n - 2) <= v <= n - 2 for v in diffs)
