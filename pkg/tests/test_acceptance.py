"""Acceptance criteria, one test (or test group) per criterion.

Each check prints one PASS / FAIL-DOCUMENTED line.  Clauses that no correct
implementation can satisfy (printed reference values that contradict the
printed dataset itself, or constants whose stated derivation does not hold)
are asserted verbatim under ``xfail(strict=True)``: they must keep failing,
the reason documents why, and a companion test pins the recomputed value.
"""

import itertools
import math
import time
from fractions import Fraction

import numpy as np
import pytest
from scipy import stats

from discrete_pursuit.metrics import (
    GroundMetric,
    ground_adjacent_transposition,
    ground_zero_one,
    tv,
    wasserstein,
)
from discrete_pursuit.plato import load_table1
from discrete_pursuit.published import (
    ADJUSTED_FULL_REP,
    ADJUSTED_UU,
    FIRST_ORDER,
    KNOWN_DISCREPANCIES,
    PAIR_ROWS,
    RANKING_TABLE,
    REPUBLIC_MU2,
    REPUBLIC_MU2_TOL,
    SCAN_RANKS,
    SCAN_TOP3,
    TABLE15,
    TABLE15_TOL,
    THM51_REMARK,
    order_without,
)
from discrete_pursuit.pursuit import (
    adjusted_second_order,
    affine_scan,
    first_order,
    l1_between_adjusted,
    rank_profiles,
)
from discrete_pursuit.radon import MassFunction, fourier_z2k, invert, transform
from discrete_pursuit.reproduce import pair_ground_metric, uu_profiles
from discrete_pursuit.spaces import base_affine, base_subsets, space_z2k
from discrete_pursuit.theory import (
    VARIANCE_DERIVED,
    balls_in_boxes,
    beta_tail,
    chebyshev_fraction,
    peizer_pratt_beta,
    poisson_split,
    thm45_montecarlo,
    thm45_statistic,
    thm46_check,
    thm52_montecarlo,
)

SEED = 20260809


def line(cid: str, ok: bool, detail: str = "", documented: bool = False):
    status = "PASS" if ok else ("FAIL-DOCUMENTED" if documented else "FAIL")
    print(f"ACCEPTANCE {cid}: {status}" + (f"  ({detail})" if detail else ""))


@pytest.fixture(scope="module")
def corpus():
    return load_table1()


# ---------------------------------------------------------------- criterion 1


def test_c1_inversion_roundtrip():
    rng = np.random.default_rng(SEED)
    t0 = time.monotonic()
    designs = [base_affine(k, 1) for k in range(3, 9)]
    designs += [base_subsets(6, 2), base_subsets(6, 3), base_subsets(8, 4),
                base_subsets(12, 4)]
    worst = 0.0
    for base in designs:
        for _ in range(100):
            f = MassFunction(
                space=base.space, values=rng.uniform(0.0, 1.0, base.space.n)
            )
            rec = invert(transform(f, base))
            worst = max(worst, float(np.abs(rec.values - f.values).max()))
    elapsed = time.monotonic() - t0
    line("C1 inversion-roundtrip", worst < 1e-9 and elapsed < 10,
         f"max err {worst:.2e}, {elapsed:.1f}s")
    assert worst < 1e-9
    assert elapsed < 10


# ---------------------------------------------------------------- criterion 2


def test_c2_design_moments_exact():
    from discrete_pursuit.theory import design_moments

    rng = np.random.default_rng(SEED + 1)
    designs = {
        "hyperplanes-k3": base_affine(3, 1),
        "hyperplanes-k5": base_affine(5, 1),
        "subsets-6-2": base_subsets(6, 2),
        "subsets-7-3": base_subsets(7, 3),
        "affine-codim2-k4": base_affine(4, 2),
    }
    worst = 0.0
    for base in designs.values():
        f = MassFunction(space=base.space, values=rng.uniform(0, 1, base.space.n))
        m = design_moments(f, base)
        worst = max(worst, abs(m.exact_mean - m.empirical_mean),
                    abs(m.exact_var - m.empirical_var))
    # probability input: affine planes of codimension j have mean 2^-j
    mean_ok = True
    for j, base in [(1, designs["hyperplanes-k5"]), (2, designs["affine-codim2-k4"])]:
        v = rng.uniform(0, 1, base.space.n)
        f = MassFunction(space=base.space, values=v / v.sum())
        m = design_moments(f, base)
        mean_ok &= abs(m.exact_mean - 0.5**j) < 1e-12
        mean_ok &= abs(m.empirical_mean - 0.5**j) < 1e-12
    line("C2 design-moments", worst < 1e-12 and mean_ok, f"max delta {worst:.2e}")
    assert worst < 1e-12
    assert mean_ok


# ---------------------------------------------------------------- criterion 3


def test_c3_margin_tables(corpus):
    t0 = time.monotonic()
    worst = 0.0
    for book, printed in FIRST_ORDER.items():
        margins = first_order(corpus.mass_function(book))
        worst = max(worst, float(np.abs(margins - printed).max()))
    elapsed = time.monotonic() - t0
    line("C3 margin-tables", worst <= 0.005, f"max delta {worst:.4f}, {elapsed:.2f}s")
    assert worst <= 0.005
    assert elapsed < 1.0


def test_c3_adjusted_uu_tables(corpus):
    worst = 0.0
    for book, printed in ADJUSTED_UU.items():
        uu = adjusted_second_order(corpus.mass_function(book)).uu_vector()
        worst = max(worst, float(np.abs(uu - printed).max()))
    line("C3 adjusted-uu-tables", worst <= 0.01, f"max delta {worst:.4f}")
    assert worst <= 0.01


def _rep_table4_deltas(corpus):
    adj = adjusted_second_order(corpus.mass_function("Rep"))
    out = {}
    for r, (i, j) in enumerate(adj.pairs):
        printed = ADJUSTED_FULL_REP[(i, j)]
        for col, (a, b) in enumerate([(1, 1), (1, 0), (0, 1), (0, 0)]):
            name = ["UU", "U-", "-U", "--"][col]
            out[f"adjusted/Rep/({i},{j})/{name}"] = abs(
                adj.ratios[r, a, b] - printed[col]
            )
    return out


def test_c3_republic_full_table_undocumented_cells(corpus):
    deltas = _rep_table4_deltas(corpus)
    bad = {k: d for k, d in deltas.items() if d > 0.01 and k not in KNOWN_DISCREPANCIES}
    documented = {k for k, d in deltas.items() if d > 0.01}
    line(
        "C3 adjusted-full-table",
        not bad,
        f"{len(deltas) - len(documented)}/40 cells pass; "
        f"{len(documented)} printed cells are internally inconsistent",
        documented=bool(documented),
    )
    assert bad == {}
    # the failing set is exactly the documented set, no regressions either way
    assert documented == {k for k in KNOWN_DISCREPANCIES if k.startswith("adjusted/")}


@pytest.mark.xfail(
    strict=True,
    reason="ten printed cells of the full adjusted table for Rep contradict the "
    "printed corpus: the U-/-U columns print 1.00 where the sign-coupling "
    "identity forces 1.03-1.04, and the (1,5) row prints 1.10/1.00 for "
    "recomputed 1.05/1.03",
)
def test_c3_republic_full_table_all_cells(corpus):
    deltas = _rep_table4_deltas(corpus)
    assert max(deltas.values()) <= 0.01


def test_c3_l1_figures(corpus):
    adj = {b: adjusted_second_order(corpus.mass_function(b)) for b in corpus.book_names}
    pairs = {("Laws", "Phil"): 0.64, ("Rep", "Tim"): 0.6}
    ok = True
    for (a, b), quoted in pairs.items():
        got = l1_between_adjusted(adj[a], adj[b])
        ok &= abs(got - quoted) <= 0.03
    line("C3 l1-figures", ok, "0.64 and 0.6 reproduce; 0.83 is documented-failing")
    assert ok


@pytest.mark.xfail(
    strict=True,
    reason="the quoted Laws-Politicus figure 0.83 is inconsistent with the "
    "printed corpus (recomputation gives 0.736; even the printed rounded "
    "rows give 0.72)",
)
def test_c3_l1_laws_politicus(corpus):
    adj = {b: adjusted_second_order(corpus.mass_function(b)) for b in corpus.book_names}
    assert abs(l1_between_adjusted(adj["Laws"], adj["Pol"]) - 0.83) <= 0.03


# ---------------------------------------------------------------- criterion 4


def _computed_ranking(corpus, metric, ref):
    profiles = uu_profiles(corpus)
    ranks = RANKING_TABLE[(metric, ref)]
    pool = {b: v for b, v in profiles.items() if b == ref or b in ranks}
    ground = pair_ground_metric()
    ranked = rank_profiles(pool, reference=ref, metric=metric, ground=ground)
    return tuple(r.name for r in ranked if r.rank > 0)


def test_c4_rankings_laws_columns(corpus):
    ok = True
    for metric in ("hellinger", "tv", "wasserstein"):
        got = _computed_ranking(corpus, metric, "Laws")
        want = order_without(RANKING_TABLE[(metric, "Laws")])
        ok &= got == want
    line("C4 rankings-vs-Laws", ok, "all three metric columns reproduce")
    assert ok


@pytest.mark.xfail(
    strict=True,
    reason="the printed rankings against Rep swap Soph and Tim (and Pol/Laws in "
    "the tv column) relative to the printed corpus; the running text's own "
    "ordering (Rep, Tim, Soph) agrees with the recomputation",
)
def test_c4_rankings_rep_columns(corpus):
    for metric in ("hellinger", "tv", "wasserstein"):
        got = _computed_ranking(corpus, metric, "Rep")
        assert got == order_without(RANKING_TABLE[(metric, "Rep")])


def test_c4_rankings_rep_columns_recomputed(corpus):
    for metric in ("hellinger", "tv", "wasserstein"):
        got = _computed_ranking(corpus, metric, "Rep")
        assert got == ("Tim", "Soph", "Phil", "Laws", "Pol")
    line("C4 rankings-vs-Rep", False,
         "computed order Tim < Soph < Phil < Laws < Pol pinned", documented=True)


@pytest.mark.xfail(
    strict=True,
    reason="the quoted top-3 contrast set is not the top 3 for the printed "
    "corpus: |contrasts| rank the quoted directions 1st, 6th and 8th, with "
    "01101/01110/01111/11110 (shadows of the dominant 01100 effect) between",
)
def test_c4_scan_top3(corpus):
    scan = affine_scan(corpus.mass_function("Rep"), corpus.mass_function("Laws"))
    assert {e.z for e in scan.top(3)} == set(SCAN_TOP3)


def test_c4_scan_top3_recomputed(corpus):
    scan = affine_scan(corpus.mass_function("Rep"), corpus.mass_function("Laws"))
    assert [e.z for e in scan.top(3)] == ["01100", "01101", "01110"]
    ranks = {e.z: i for i, e in enumerate(scan.entries, start=1)}
    assert [ranks[z] for z in SCAN_TOP3] == [6, 1, 8]
    line("C4 scan-top3", False,
         "quoted set ranks 1/6/8 by |contrast|; computed top-3 pinned",
         documented=True)


@pytest.mark.xfail(
    strict=True,
    reason="all three printed rank columns disagree with the printed corpus in "
    "adjacent positions (Phil/Laws swapped at 00010 and 01100, Rep/Tim "
    "swapped at 01100, Phil placed 3rd instead of 5th at 11000), in either "
    "column orientation",
)
def test_c4_scan_orders(corpus):
    for z, ranks in SCAN_RANKS.items():
        dz = {b: float(fourier_z2k(corpus.mass_function(b))[int(z, 2)])
              for b in corpus.book_names}
        got = tuple(sorted(dz, key=lambda b: -dz[b]))
        want = order_without(ranks)
        assert got == want or got[::-1] == want


def test_c4_scan_orders_recomputed(corpus):
    expected = {
        "00010": ("Rep", "Tim", "Soph", "Pol", "Phil", "Laws"),
        "01100": ("Phil", "Laws", "Pol", "Soph", "Rep", "Tim"),
        "11000": ("Pol", "Phil", "Laws", "Soph", "Tim", "Rep"),
    }
    for z, want in expected.items():
        dz = {b: float(fourier_z2k(corpus.mass_function(b))[int(z, 2)])
              for b in corpus.book_names}
        assert tuple(sorted(dz, key=lambda b: -dz[b])) == want
    line("C4 scan-orders", False, "computed per-direction orders pinned",
         documented=True)


# ---------------------------------------------------------------- criterion 5


def test_c5_ground_metric():
    g = ground_adjacent_transposition(["11000", "00011"])
    ok = g.dist[0, 1] == 6.0
    pairs = list(itertools.combinations(range(5), 2))
    tuples = []
    for a, b in pairs:
        bits = ["0"] * 5
        bits[a] = bits[b] = "1"
        tuples.append("".join(bits))
    gm = ground_adjacent_transposition(tuples)
    for i, (a, b) in enumerate(pairs):
        for j, (a2, b2) in enumerate(pairs):
            ok &= gm.dist[i, j] == abs(a - a2) + abs(b - b2)
    line("C5 ground-metric", ok, "d(11000,00011)=6 and all 45 pair distances")
    assert ok


# ---------------------------------------------------------------- criterion 6


def _brute_force_transport(p_units, q_units, dist):
    m, n = len(p_units), len(q_units)
    best = math.inf

    def rec(i, cols, acc):
        nonlocal best
        if acc >= best:
            return
        if i == m:
            if all(r == 0 for r in cols):
                best = acc
            return

        def place(j, left, cost):
            if j == n:
                if left == 0:
                    rec(i + 1, cols, acc + cost)
                return
            for amt in range(min(left, cols[j]) + 1):
                cols[j] -= amt
                place(j + 1, left - amt, cost + amt * dist[i][j])
                cols[j] += amt

        place(0, p_units[i], 0.0)

    rec(0, list(q_units), 0.0)
    return best


def test_c6_wasserstein_oracle():
    rng = np.random.default_rng(SEED + 6)
    worst = 0.0
    for _ in range(200):
        size = int(rng.integers(2, 5))
        units = 8  # masses in eighths
        p = rng.multinomial(units, np.full(size, 1.0 / size))
        q = rng.multinomial(units, np.full(size, 1.0 / size))
        coords = rng.integers(0, 10, size=size)
        d = np.abs(coords[:, None] - coords[None, :]).astype(float)
        g = GroundMetric(labels=tuple(range(size)), dist=d)
        got = wasserstein(p / units, q / units, g)
        want = _brute_force_transport(list(p), list(q), d.tolist()) / units
        worst = max(worst, abs(got - want))
    line("C6 wasserstein-oracle", worst < 1e-9, f"max |flow - brute| {worst:.2e}")
    assert worst < 1e-9


# ---------------------------------------------------------------- criterion 7


@pytest.fixture(scope="module")
def thm45_run():
    t0 = time.monotonic()
    res = thm45_montecarlo(n=500, samples=10_000, seed=SEED, threads=2)
    return res, time.monotonic() - t0


def test_c7_statistic_and_runtime(thm45_run):
    res, elapsed = thm45_run
    exact = thm45_statistic(np.full(500, 1 / 500))
    ok = abs(exact + math.sqrt(500) / 2) < 1e-9 and elapsed < 30
    line(
        "C7 simplex-clt",
        ok,
        f"uniform input -> -sqrt(n)/2 exact; KS={res.ks_distance:.4f} "
        f"(0.03 target documented-failing), {elapsed:.1f}s",
        documented=res.ks_distance > 0.03,
    )
    assert ok
    assert abs(res.mean) <= 0.06  # systematic bias is ~ -0.045 at n=500
    assert 0.85 <= res.variance <= 1.15


@pytest.mark.xfail(
    strict=True,
    reason="the exact statistic has mean -(n^{3/2}/2) 2/(n(n+1)) ~ -0.0446 and "
    "skew ~ +0.44 at n=500, which keeps the Kolmogorov distance near 0.044 "
    "for every seed (20-seed sweep: 0.043..0.056); 0.03 is reachable only "
    "past n ~ 2000",
)
def test_c7_ks_at_stated_tolerance(thm45_run):
    res, _ = thm45_run
    assert res.ks_distance <= 0.03


def test_c7_ks_documented_band_and_convergence(thm45_run):
    res, _ = thm45_run
    assert 0.03 < res.ks_distance <= 0.06
    bigger = thm45_montecarlo(n=2000, samples=10_000, seed=SEED, threads=2)
    assert bigger.ks_distance < res.ks_distance  # the limit law does hold


# ---------------------------------------------------------------- criterion 8


@pytest.fixture(scope="module")
def thm52_run():
    return thm52_montecarlo(two_n=10_000, samples=1_000, seed=SEED, threads=2)


def test_c8_s_minus_mean_and_discrepancy(thm52_run):
    res = thm52_run
    mean_ok = abs(res.mean_s_minus - res.target_mean) <= 0.005
    disc_ok = abs(res.mean_discrepancy - math.log(2)) <= 0.01
    line(
        "C8 half-split-law",
        mean_ok and disc_ok,
        f"mean S-={res.mean_s_minus:.5f} (target 0.15343), "
        f"discrepancy={res.mean_discrepancy:.5f} (ln 2; the printed .301 is "
        f"log10 2), variance clause documented-failing",
        documented=True,
    )
    assert mean_ok
    assert disc_ok


@pytest.mark.xfail(
    strict=True,
    reason="3/2 - 2 ln 2 is the variance of the unnormalized numerator sum "
    "scaled by 1/sqrt(n); the normalized statistic sqrt(2n)(S- - (1-ln2)/2) "
    "has limiting variance 3/4 - ln2 - (1-ln2)^2/4 = 0.0333 (delta method; "
    "the printed cancellation step drops the covariance terms)",
)
def test_c8_scaled_variance_published_constant(thm52_run):
    res = thm52_run
    assert abs(res.scaled_variance - res.variance_published) <= 0.15 * res.variance_published


def test_c8_scaled_variance_derived_constant(thm52_run):
    res = thm52_run
    assert abs(res.scaled_variance - VARIANCE_DERIVED) <= 0.15 * VARIANCE_DERIVED


# ---------------------------------------------------------------- criterion 9


def test_c9_table15_attainable_cells():
    t0 = time.monotonic()
    deltas = {
        lam: abs(poisson_split(lam).value - TABLE15[lam - 1]) for lam in range(1, 11)
    }
    bad = {lam for lam, d in deltas.items() if d > TABLE15_TOL}
    documented = {
        int(k.split("=")[1]) for k in KNOWN_DISCREPANCIES if k.startswith("table15/")
    }
    line(
        "C9 table15",
        bad == documented,
        f"6/10 cells within 0.005; cells lam in {sorted(bad)} are printed "
        f"inconsistently (deltas up to {max(deltas.values()):.4f})",
        documented=True,
    )
    assert bad == documented
    # the recomputed values agree with an independent evaluation through
    # the scipy Poisson distribution
    for lam in sorted(documented):
        m = int(stats.poisson.ppf(0.5, lam)) - 1
        while stats.poisson.cdf(m + 1, lam) <= 0.5:
            m += 1
        while stats.poisson.cdf(m, lam) > 0.5:
            m -= 1
        value = 2 * stats.poisson.pmf(m, lam)  # integer lam: theta term vanishes
        assert poisson_split(lam).value == pytest.approx(value, abs=1e-12)
    assert time.monotonic() - t0 < 5


@pytest.mark.xfail(
    strict=True,
    reason="four printed cells (lam = 3, 4, 5, 10) differ from the exact "
    "formula 2 e^-lam lam^(lam-1)/(lam-1)! by 0.006-0.010, beyond the 0.005 "
    "tolerance (0.448 vs 0.44, 0.391 vs 0.40, 0.351 vs 0.36, 0.250 vs 0.24)",
)
def test_c9_table15_all_cells():
    for lam in range(1, 11):
        assert abs(poisson_split(lam).value - TABLE15[lam - 1]) <= TABLE15_TOL


def test_c9_balls_in_boxes():
    t0 = time.monotonic()
    draws = [balls_in_boxes(200_000, 100_000, seed=(SEED, i)) for i in range(3)]
    got = float(np.mean(draws))
    elapsed = time.monotonic() - t0
    ok = abs(got - 4 * math.exp(-2)) <= 0.02 and elapsed < 20
    line("C9 balls-in-boxes", ok, f"{got:.4f} vs 4e^-2=0.5413, {elapsed:.1f}s")
    assert abs(got - 4 * math.exp(-2)) <= 0.02
    assert elapsed < 20


# --------------------------------------------------------------- criterion 10


def test_c10_beta_tail_remark():
    r = THM51_REMARK
    product = r["blocks_plus_one"] * beta_tail(r["c"], r["n"], r["window"])
    ratio = product / r["product"]
    ok = 1 / 3 <= ratio <= 3
    detail = f"2049*beta = {product:.3e} vs quoted 2.595e-7 (ratio {ratio:.2f})"
    pp_ok = True
    for c in (128, 512):
        for eps in (0.05, 0.1, 0.15):
            exact = beta_tail(c, 2 * c, (0.5 - eps, 0.5 + eps))
            pp = peizer_pratt_beta(c, eps)
            pp_ok &= 0.5 <= pp / exact <= 2.0
    line("C10 beta-tails", ok and pp_ok, detail)
    assert ok
    assert pp_ok


# --------------------------------------------------------------- criterion 11


def _exact_mu2(corpus):
    # exact-rational oracle over the printed percentages
    total = sum(Fraction(str(v)) for v in corpus.books["Rep"])
    mean = total / 100 / 32
    return float(
        sum((Fraction(str(v)) / 100 - mean) ** 2 for v in corpus.books["Rep"])
    )


@pytest.mark.xfail(
    strict=True,
    reason="the quoted centered second moment 0.0021 does not match the printed "
    "first column: the exact-rational value is 0.004454; excluding the "
    "dominant final-syllable direction from the spectral decomposition "
    "gives 0.00207, which is likely what was computed",
)
def test_c11_republic_mu2_quoted(corpus):
    f = corpus.mass_function("Rep")
    mu2 = float(((f.values - f.total / 32) ** 2).sum())
    assert abs(mu2 - REPUBLIC_MU2) <= REPUBLIC_MU2_TOL


def _exact_exceedance_blocks(corpus, eps: Fraction) -> int:
    # exact-rational oracle: deviations are multiples of 1/2000, and one
    # direction sits exactly on |fbar - 1/2| = 0.04
    count = 0
    pcts = {x: Fraction(str(corpus.value("Rep", lab)))
            for x, lab in enumerate(corpus.space().labels)}
    for z in range(1, 32):
        s0 = sum(v for x, v in pcts.items() if bin(x & z).count("1") % 2 == 0)
        d = abs(s0 / 100 - Fraction(1, 2))
        count += 2 * int(d > eps)
    return count


def test_c11_republic_mu2_recomputed_and_exceedance_report(corpus):
    f = corpus.mass_function("Rep")
    mu2 = float(((f.values - f.total / 32) ** 2).sum())
    assert mu2 == pytest.approx(_exact_mu2(corpus), abs=1e-12)
    assert mu2 == pytest.approx(0.0044540, abs=1e-6)
    # the 62-block exceedance report: |fhat(11001)|/2 equals 0.04 exactly, so
    # the strict count is checked just off the boundary against the oracle
    base = base_affine(5, 1)
    assert _exact_exceedance_blocks(corpus, Fraction(399, 10000)) == 8
    assert _exact_exceedance_blocks(corpus, Fraction(401, 10000)) == 6
    _, frac_lo = chebyshev_fraction(f, base, eps=0.0399)
    _, frac_hi = chebyshev_fraction(f, base, eps=0.0401)
    assert frac_lo == pytest.approx(8 / 62, abs=1e-12)
    assert frac_hi == pytest.approx(6 / 62, abs=1e-12)
    bound, frac = chebyshev_fraction(f, base, eps=0.04)
    assert frac in (pytest.approx(6 / 62), pytest.approx(8 / 62))
    line(
        "C11 republic-moment",
        False,
        f"mu2={mu2:.6f} vs quoted 0.0021 (documented); exceedance report: "
        f"{1 - frac:.3f} of the 62 blocks within 0.04 (quoted 0.95 recorded, "
        f"not asserted), Chebyshev bound {bound:.3f}",
        documented=True,
    )


# --------------------------------------------------------------- criterion 12


def test_c12_fourier_identity_property():
    rng = np.random.default_rng(SEED + 12)
    count = 0
    for k in range(2, 7):
        base = base_affine(k, 1)
        a0 = np.array(
            [sorted(base.block(f"z={format(z, f'0{k}b')}:a=0").members)
             for z in range(1, 2**k)]
        )
        for _ in range(200):
            f = MassFunction(space=base.space, values=rng.dirichlet(np.ones(2**k)))
            fh = fourier_z2k(f)
            fbar0 = f.values[a0].sum(axis=1)
            assert np.abs(2 * fbar0 - 1 - fh[1:]).max() < 1e-12
            count += 1
    assert count == 1000
    line("C12 fourier-identity", True, "1000 random probabilities, k <= 6")


def test_c12_sign_coupling_property():
    rng = np.random.default_rng(SEED + 13)
    space = space_z2k(5)
    for _ in range(200):
        f = MassFunction(space=space, values=rng.dirichlet(np.ones(32)))
        adj = adjusted_second_order(f)
        for r in range(10):
            uu, ud, du, dd = (adj.ratios[r, 1, 1], adj.ratios[r, 1, 0],
                              adj.ratios[r, 0, 1], adj.ratios[r, 0, 0])
            if abs(uu - 1) < 1e-12:
                continue
            assert (uu < 1) == (ud > 1) == (du > 1) == (dd < 1)
    line("C12 sign-coupling", True, "200 random probability tables")


def test_c12_metric_axioms_and_tv_flow_identity():
    rng = np.random.default_rng(SEED + 14)
    for _ in range(15):
        n = int(rng.integers(2, 10))
        p, q, r = (rng.dirichlet(np.ones(n)) for _ in range(3))
        coords = np.sort(rng.uniform(0, 4, n))
        g = GroundMetric(labels=tuple(range(n)), dist=np.abs(coords[:, None] - coords[None, :]))
        assert tv(p, q) == pytest.approx(tv(q, p))
        assert tv(p, r) <= tv(p, q) + tv(q, r) + 1e-12
        w_pq = wasserstein(p, q, g)
        assert w_pq == pytest.approx(wasserstein(q, p, g), abs=1e-9)
        assert wasserstein(p, r, g) <= w_pq + wasserstein(q, r, g) + 1e-9
        g01 = ground_zero_one(list(range(n)))
        assert wasserstein(p, q, g01) == pytest.approx(tv(p, q), abs=1e-9)
    line("C12 metric-axioms", True, "axioms + tv = flow under 0/1 ground metric")


def test_c12_thread_count_determinism():
    a45 = thm45_montecarlo(n=120, samples=2_000, seed=SEED, threads=1)
    b45 = thm45_montecarlo(n=120, samples=2_000, seed=SEED, threads=4)
    assert (a45.ks_distance, a45.mean, a45.variance) == (
        b45.ks_distance, b45.mean, b45.variance
    )
    base = base_affine(5, 1)
    a46 = thm46_check(base, eps=0.5, num_trials=2_000, seed=SEED, threads=1)
    b46 = thm46_check(base, eps=0.5, num_trials=2_000, seed=SEED, threads=4)
    assert a46.batch_frequencies == b46.batch_frequencies
    assert a46.bound_proof_mean == b46.bound_proof_mean
    a52 = thm52_montecarlo(two_n=500, samples=600, seed=SEED, threads=1)
    b52 = thm52_montecarlo(two_n=500, samples=600, seed=SEED, threads=3)
    assert a52.mean_s_minus == b52.mean_s_minus
    line("C12 determinism", True, "results identical across worker-thread counts")
