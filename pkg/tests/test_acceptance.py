"""End-to-end acceptance checks, one test group per numbered criterion.

Run ``pytest tests/test_acceptance.py -v``; the terminal summary prints one
PASS/FAIL line per criterion.
"""

import math
import random
import time

import pytest

from invarlattice import (
    INFINITE,
    SIMPLEX,
    beta_poly,
    beta_rational,
    check_extremal,
    effective_order,
    extension_index,
    gamma_poly,
    gamma_rational,
    hard_floor,
    invariant_lattice,
    minkowski_rhs,
    shell_points,
    successive_minima,
    support_from,
    verify_all,
)
from invarlattice import bounds as bd
from invarlattice.bounds import DegreeProfile, is_prime
from invarlattice.cli import run_family
from invarlattice.errors import TheoryViolation

from oracles import NaiveProfile, all_supports, subgroup_order

# every report computed in this module, for the chain check (criterion 8)
SEEN = []


def chain_holds(r):
    return (r.gamma_r <= r.beta_r <= r.beta_poly
            and r.gamma_r <= r.gamma_poly <= r.beta_poly)


def record(report):
    SEEN.append(report)
    return report


def random_instances(count, seed, max_order=200, max_m=5):
    """Cyclic and product groups of order <= max_order with random supports."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        shape = rng.random()
        if shape < 0.6:
            orders = [rng.randint(2, max_order)]
        elif shape < 0.9:
            orders = [rng.randint(2, 14), rng.randint(2, 14)]
        else:
            orders = [rng.randint(2, 6) for _ in range(3)]
        if math.prod(orders) > max_order:
            continue
        raw = [tuple(rng.randrange(n) for n in orders) for _ in range(rng.randint(1, max_m))]
        s = support_from(orders, raw)
        if s.m:
            out.append(s)
    return out


# --- 1 ----------------------------------------------------------------------------------------

@pytest.mark.criterion(1)
def test_z7_golden():
    start = time.perf_counter()
    s = support_from([7], [1, 2, 4])
    values = (beta_poly(s), gamma_poly(s), beta_rational(s), gamma_rational(s))
    idx = (extension_index(s, 3, SIMPLEX), extension_index(s, 4, SIMPLEX),
           extension_index(s, 3, "cross"))
    report = record(verify_all(s))
    elapsed = time.perf_counter() - start
    assert values == (4, 4, 3, 3)
    assert idx == (INFINITE, 1, 1)
    assert (report.beta_poly, report.gamma_poly, report.beta_r, report.gamma_r) == (4, 4, 3, 3)
    assert elapsed < 1.0, f"{elapsed:.3f}s"


# --- 2 ----------------------------------------------------------------------------------------

FAMILY_CELLS = [(n, m) for n in range(3, 51) for m in range(1, min(6, n - 1) + 1)]


@pytest.fixture(scope="module")
def family_rows():
    start = time.perf_counter()
    rows = run_family(range(3, 51), range(1, 7))
    return rows, time.perf_counter() - start


@pytest.mark.criterion(2)
def test_family_sweep(family_rows):
    rows, elapsed = family_rows
    assert [(r[0], r[1]) for r in rows] == FAMILY_CELLS
    bad = [r for r in rows if not (r[3] == r[4] == r[2] == max(3, -(-r[0] // -(-r[1] // 2))))]
    assert not bad, bad[:5]
    assert elapsed < 60.0, f"{elapsed:.1f}s"


# --- 3 ----------------------------------------------------------------------------------------

@pytest.fixture(scope="module")
def random_reports():
    return [(s, record(verify_all(s, witnesses=False))) for s in random_instances(500, seed=2024)]


@pytest.mark.criterion(3)
def test_lower_bounds(random_reports):
    assert len(random_reports) == 500
    for s, r in random_reports:
        order = subgroup_order(list(s.group.factor_orders), [c.residues for c in s])
        assert r.effective_order == order
        assert r.gamma_r ** s.m >= order, s.describe()
        assert r.gamma_r >= hard_floor(s), s.describe()


# --- 4 ----------------------------------------------------------------------------------------

@pytest.mark.criterion(4)
@pytest.mark.parametrize("d", [2, 3, 4])
@pytest.mark.parametrize("m", [1, 2, 3])
def test_extremal_groups(d, m):
    basis = [tuple(int(i == j) for j in range(m)) for i in range(m)]
    s = support_from([d] * m, basis)
    g = gamma_rational(s)
    assert g == d
    ext = check_extremal(s, g)
    assert ext.extremal and ext.structure == f"(Z/{d}Z)^{m}"
    record(verify_all(s, witnesses=False))


def non_extremal_instances(count, seed):
    # the effective group is cyclic (m >= 2) or has rank <= 2 (m >= 3),
    # so it cannot be (Z/d)^m with the support as a basis
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        if rng.random() < 0.6:
            orders = [rng.randint(3, 120)]
            need = 2
        else:
            orders = [rng.randint(2, 10), rng.randint(2, 10)]
            need = 3
        raw = [tuple(rng.randrange(n) for n in orders) for _ in range(rng.randint(need, 5))]
        s = support_from(orders, raw)
        if s.m >= need:
            out.append(s)
    return out


@pytest.mark.criterion(4)
def test_non_extremal():
    instances = non_extremal_instances(200, seed=4)
    assert len(instances) == 200
    for s in instances:
        r = record(verify_all(s, witnesses=False))
        assert check_extremal(s, r.gamma_r).extremal is False
        assert r.theoretical.extremal is False
        assert r.gamma_r ** s.m > r.effective_order


# --- 5 ----------------------------------------------------------------------------------------

@pytest.mark.criterion(5)
def test_minkowski_on_family():
    for n, m in FAMILY_CELLS:
        s = bd.family_support(n, m)
        lam = successive_minima(s)
        assert math.prod(lam) <= math.factorial(m) * effective_order(s), (n, m, lam)


@pytest.mark.criterion(5)
def test_minkowski_on_random(random_reports):
    for s, r in random_reports:
        assert math.prod(r.successive_minima) <= math.factorial(s.m) * r.effective_order


@pytest.mark.criterion(5)
def test_minkowski_rhs_small_m():
    primes = [p for p in range(2, 1000) if is_prime(p)]
    for p in primes:
        assert minkowski_rhs(1, p) == p and minkowski_rhs(2, p) == p


# --- 6 ----------------------------------------------------------------------------------------

def prime_supports(p, count, seed):
    """``count`` random supports of Z/p with 3 <= m <= min(6, p-1); all of them if fewer exist."""
    top = min(6, p - 1)
    everything = sum(math.comb(p - 1, m) for m in range(3, top + 1))
    if everything <= count:
        return [c for m in range(3, top + 1) for c in all_supports(p, m)]
    rng = random.Random(seed)
    chosen = set()
    while len(chosen) < count:
        m = rng.randint(3, top)
        chosen.add(tuple(sorted(rng.sample(range(1, p), m))))
    return sorted(chosen)


@pytest.mark.criterion(6)
@pytest.mark.parametrize("p", [5, 7, 11, 13, 17, 19, 23, 29, 31])
def test_prime_upper_bound(p):
    supports = prime_supports(p, 100, seed=p)
    assert len(supports) == min(100, sum(math.comb(p - 1, m) for m in range(3, min(6, p - 1) + 1)))
    for chars in supports:
        s = support_from([p], chars)
        r = record(verify_all(s, witnesses=False))
        assert 2 * r.beta_r <= p + 3, (p, chars, r.beta_r)
        assert r.checks["prime_upper_bound"]


# --- 7 ----------------------------------------------------------------------------------------

def _oracle_cells():
    return [(n, m) for n in range(2, 21) for m in range(1, min(4, n - 1) + 1)]


@pytest.mark.criterion(7)
@pytest.mark.parametrize("n, m", _oracle_cells(), ids=lambda x: str(x))
def test_oracle_equivalence(n, m):
    for chars in all_supports(n, m):
        s = support_from([n], chars)
        lat = invariant_lattice(s)
        order = effective_order(s)
        assert lat.determinant == order == subgroup_order([n], [(c,) for c in chars])
        found = {}
        for geom in ("cross", "simplex"):
            ours = DegreeProfile(lat, geom, cap=order)
            naive = NaiveProfile([n], chars, geom)
            g, b = ours.gamma(), ours.beta()
            assert (g, b) == (naive.gamma(), naive.beta()), (n, chars, geom)
            assert ours.ranks[: b + 1] == naive.rank[: b + 1]
            assert [ours.index(d) for d in range(b + 1)] == naive.index[: b + 1]
            for d in range(b + 1):
                assert list(shell_points(lat, d, geom).points) == naive.shells[d], (n, chars, d)
            if geom == "cross":
                assert ours.minima() == naive.minima()
            found[geom] = (g, b)
        (g, b), (gp, bp) = found["cross"], found["simplex"]
        assert g <= b <= bp and g <= gp <= bp


# --- 8 ----------------------------------------------------------------------------------------

@pytest.mark.criterion(8)
def test_chain_on_everything_seen(random_reports):
    for n, m in FAMILY_CELLS:
        record(verify_all(bd.family_support(n, m), witnesses=False))
    assert len(SEEN) >= 500 + len(FAMILY_CELLS)
    broken = [(r.group, r.support) for r in SEEN if not chain_holds(r)]
    assert not broken, broken[:5]
    assert all(all(r.checks.values()) for r in SEEN)


@pytest.mark.criterion(8)
def test_chain_violation_is_a_hard_error(monkeypatch):
    real_beta = DegreeProfile.beta

    def too_small(self):
        return real_beta(self) - 10

    monkeypatch.setattr(DegreeProfile, "beta", too_small)
    with pytest.raises(TheoryViolation) as info:
        verify_all(support_from([7], [1, 2, 4]), witnesses=False)
    assert info.value.instance["group"] == [7]
    assert info.value.instance["check"] == "gamma_r<=beta_r"
