"""Acceptance criteria AC1 to AC10.

Each test is tagged with its criterion; ``conftest.py`` prints one PASS/FAIL
line per criterion at the end of the run. Run just this suite with

    pytest tests/test_acceptance.py -v
"""

import io
import json
import random
import time
from fractions import Fraction

import jsonschema

from montyhall import closedform, enumeration, hypergeom, montecarlo
from montyhall.cli import ENVELOPE_SCHEMA, main
from montyhall.combinatorics import falling_factorial
from montyhall.hypergeom import UrnSample, chu_vandermonde_check
from montyhall.rationals import to_decimal
from montyhall.scenario import OutcomePredicate
from grid import count_predicates, game, shapes
from oracles import choose, subsets_without


def criterion(n: int):
    def tag(fn):
        fn.criterion = f"AC{n}"
        return fn

    return tag


def cli(argv: str):
    out = io.StringIO()
    code = main(argv.split(), out=out)
    return code, [json.loads(line) for line in out.getvalue().splitlines() if line.strip()]


# numerators of the 32 sequences of the 12-door example, in listing order,
# written with the symbols c, g, o; anterior and posterior picks split by "|"
TABLE = [
    ("ccc|cc", "c, c-1, c-2 | c-3, c-4"),
    ("ccc|cg", "c, c-1, c-2 | c-3, g-o"),
    ("ccc|gc", "c, c-1, c-2 | g-o, c-3"),
    ("ccc|gg", "c, c-1, c-2 | g-o, g-o-1"),
    ("ccg|cc", "c, c-1, g | c-2, c-3"),
    ("ccg|cg", "c, c-1, g | c-2, g-o-1"),
    ("ccg|gc", "c, c-1, g | g-o-1, c-2"),
    ("ccg|gg", "c, c-1, g | g-o-1, g-o-2"),
    ("cgc|cc", "c, g, c-1 | c-2, c-3"),
    ("cgc|cg", "c, g, c-1 | c-2, g-o-1"),
    ("cgc|gc", "c, g, c-1 | g-o-1, c-2"),
    ("cgc|gg", "c, g, c-1 | g-o-1, g-o-2"),
    ("cgg|cc", "c, g, g-1 | c-1, c-2"),
    ("cgg|cg", "c, g, g-1 | c-1, g-o-2"),
    ("cgg|gc", "c, g, g-1 | g-o-2, c-1"),
    ("cgg|gg", "c, g, g-1 | g-o-2, g-o-3"),
    ("gcc|cc", "g, c, c-1 | c-2, c-3"),
    ("gcc|cg", "g, c, c-1 | c-2, g-o-1"),
    ("gcc|gc", "g, c, c-1 | g-o-1, c-2"),
    ("gcc|gg", "g, c, c-1 | g-o-1, g-o-2"),
    ("gcg|cc", "g, c, g-1 | c-1, c-2"),
    ("gcg|cg", "g, c, g-1 | c-1, g-o-2"),
    ("gcg|gc", "g, c, g-1 | g-o-2, c-1"),
    ("gcg|gg", "g, c, g-1 | g-o-2, g-o-3"),
    ("ggc|cc", "g, g-1, c | c-1, c-2"),
    ("ggc|cg", "g, g-1, c | c-1, g-o-2"),
    ("ggc|gc", "g, g-1, c | g-o-2, c-1"),
    ("ggc|gg", "g, g-1, c | g-o-2, g-o-3"),
    ("ggg|cc", "g, g-1, g-2 | c, c-1"),
    ("ggg|cg", "g, g-1, g-2 | c, g-o-3"),
    ("ggg|gc", "g, g-1, g-2 | g-o-3, c"),
    ("ggg|gg", "g, g-1, g-2 | g-o-3, g-o-4"),
]


def _symbolic(term: str, c: int, g: int, o: int) -> int:
    names = {"c": c, "g": g, "o": o}
    parts = term.strip().split("-")
    value = names[parts[0]]
    for p in parts[1:]:
        value -= names[p] if p in names else int(p)
    return value


def _chain_check(label: str, c: int, g: int, o: int) -> tuple[int, ...]:
    """Availability chain for ``label``: cars and goats left at each pick."""
    cars, goats, out = c, g, []
    ante, post = label.split("|")
    for ch in ante:
        out.append(cars if ch == "c" else goats)
        cars, goats = (cars - 1, goats) if ch == "c" else (cars, goats - 1)
    goats -= o
    for ch in post:
        out.append(cars if ch == "c" else goats)
        cars, goats = (cars - 1, goats) if ch == "c" else (cars, goats - 1)
    return tuple(out)


@criterion(1)
def test_ac1_classic_game_all_routes():
    """AC1  classic game: three routes give exactly 2/3 in under 1 ms"""
    g = game(3, 1, 1, 1, 1)
    closedform.closed_form_for(g), enumeration.outcome_probability(g), hypergeom.hypergeom_for(g)
    t0 = time.perf_counter()
    values = (
        closedform.closed_form_for(g),
        enumeration.outcome_probability(g),
        hypergeom.hypergeom_for(g),
    )
    elapsed = time.perf_counter() - t0
    assert values == (Fraction(2, 3),) * 3
    assert elapsed < 1e-3, f"{elapsed * 1e3:.3f} ms"


@criterion(2)
def test_ac2_large_single_switch():
    """AC2  123,456,789 doors: 0.101, factor 1.010, and factor 12,345,678 at o = 111,111,110"""
    t0 = time.perf_counter()
    switch = closedform.mh2_switch_probability(12345678, 123456789, 1234567)
    factor = closedform.mh2_improvement_factor(123456789, 1234567)
    max_factor = closedform.mh2_improvement_factor(123456789, 111111110)
    elapsed = time.perf_counter() - t0
    assert to_decimal(switch, 3) == "0.101"
    assert to_decimal(factor, 3) == "1.010"
    assert elapsed < 10e-3, f"{elapsed * 1e3:.3f} ms"
    # (d-1)/(d-1-o) = 123456788/12345678 here; see the max-opening-factor erratum
    assert max_factor == 12345678, f"factor is {max_factor} = {float(max_factor):.7f}"


@criterion(3)
def test_ac3_twelve_door_example():
    """AC3  12-door example: 45000/55440 by all routes, 32 sequences match the table term by term"""
    t0 = time.perf_counter()
    g = game(12, 5, 3, 2, 2)
    seqs = enumeration.enumerate_sequences(g)
    n = closedform.mh3_at_least_one_numerator(5, 7, 2, 3, 2)
    d = closedform.mh3_denominator(12, 3, 2, 2)
    values = (
        Fraction(n, d),
        enumeration.probability_where(seqs, g.plan, g.predicate),
        hypergeom.hypergeom_for(g),
    )
    elapsed = time.perf_counter() - t0
    assert (n, d) == (45000, 55440)
    assert values == (Fraction(45000, 55440),) * 3
    assert len(seqs) == 32
    assert [str(w.sequence) for w in seqs] == [label for label, _ in TABLE]
    for w, (label, terms) in zip(seqs, TABLE):
        printed = tuple(_symbolic(t, 5, 7, 2) for t in terms.replace("|", ",").split(","))
        assert printed == _chain_check(label, 5, 7, 2), label
        assert w.numerator_trace == printed, label
        assert w.denominator_trace == (12, 11, 10, 7, 6)
    kept = sum(w.numerator for w in seqs if "c" in str(w.sequence).split("|")[1])
    assert kept == 45000
    assert elapsed < 0.1, f"{elapsed * 1e3:.1f} ms"


@criterion(4)
def test_ac4_anterior_erratum():
    """AC4  first picks win with 37/44 by subset counting; verify flags the 7/24 erratum, direction decrease"""
    oracle = 1 - subsets_without(12, 5, 3)
    assert oracle == 1 - Fraction(choose(7, 3), choose(12, 3)) == Fraction(37, 44)
    assert abs(float(oracle) - 0.8409) < 5e-5
    g = game(12, 5, 3, 2, 2)
    ante = g.with_predicate(OutcomePredicate("anterior", "at_least", 1))
    assert enumeration.outcome_probability(ante) == oracle
    assert closedform.mh3_at_least_one_probability(g.scenario, 3, 2, 2).stay_probability == oracle
    assert Fraction(7 * 6 * 5, 12 * 11 * 10) == Fraction(7, 44) != Fraction(7, 24)
    code, (env,) = cli("verify --variant mh3 --doors 12 --cars 5 --pick 3 --open 2 --switch-pick 2")
    assert code == 0
    assert any(note.startswith("anterior-seven-over-twenty-four:") for note in env["errata_notes"])
    assert env["details"]["direction"] == "decrease"


@criterion(5)
def test_ac5_multi_switch():
    """AC5  multi-switch: 10/18, posteriors 3/18 5/18 10/18, million-door triple, 500-point reduction"""
    rng = random.Random(5)
    grid = []
    for _ in range(500):
        d = rng.randint(3, 10**9)
        c = rng.randint(1, d - 2)
        grid.append((c, d, rng.randint(0, d - c - 1)))
    t0 = time.perf_counter()
    assert closedform.mh4_switch_probability(1, 6, [2, 1]) == Fraction(10, 18)
    assert closedform.mh4_door_posteriors(1, 6, [2, 1]) == [Fraction(k, 18) for k in (3, 5, 10)]
    assert closedform.mh4_door_posteriors(1, 1000000, [999996, 1]) == [
        Fraction(k, 3000000) for k in (3, 999999, 1999998)
    ]
    for c, d, o in grid:
        assert closedform.mh4_switch_probability(c, d, [o]) == Fraction(c * (d - 1), d * (d - 1 - o))
    elapsed = time.perf_counter() - t0
    assert elapsed < 0.1, f"{elapsed * 1e3:.1f} ms"


@criterion(6)
def test_ac6_route_equivalence_grid():
    """AC6  every grid game and count predicate: enumeration = closed form = hypergeometric, mass 1"""
    t0 = time.perf_counter()
    cells = 0
    for shape in shapes(max_doors=9, max_picks=6):
        d, c, p, o, q = shape
        base = game(*shape)
        seqs = enumeration.enumerate_sequences(base)
        assert sum(w.probability for w in seqs) == 1, shape
        for pred in count_predicates(p, q):
            g = base.with_predicate(pred)
            value = enumeration.probability_where(seqs, g.plan, pred)
            assert hypergeom.hypergeom_for(g) == value, (shape, pred)
            closed = closedform.closed_form_for(g)
            assert closed is None or closed == value, (shape, pred)
            cells += 1
    elapsed = time.perf_counter() - t0
    assert cells > 10_000
    assert elapsed < 60, f"{elapsed:.1f} s"


@criterion(7)
def test_ac7_all_cars_and_six_door_cases():
    """AC7  corrected all-cars form matches enumeration; 6-door cases give 2/9, 1/3, 2/3 with notes"""
    for shape in shapes(max_doors=9, max_picks=6):
        d, c, p, o, q = shape
        g = game(*shape)
        report = closedform.mh31_all_cars(g.scenario, p, o, q)
        both = Fraction(
            falling_factorial(c, p + q),
            falling_factorial(d, p) * falling_factorial(d - p - o, q),
        )
        assert report.both_phases == both
        for seg, value in (
            ("anterior", report.stay_probability),
            ("posterior", report.switch_probability),
            ("all", report.both_phases),
        ):
            assert enumeration.outcome_probability(g.with_predicate(OutcomePredicate(seg, "all_cars"))) == value
    printed = {1: "25/108", 2: "25/72", 3: "25/36"}
    got = []
    for o in (1, 2, 3):
        g = game(6, 1, 2, o, 1)
        got.append(enumeration.outcome_probability(g))
        code, (env,) = cli(f"verify --variant mh3 --doors 6 --cars 1 --pick 2 --open {o} --switch-pick 1")
        assert code == 0
        (note,) = [n for n in env["errata_notes"] if n.startswith("with-replacement-first-picks:")]
        assert printed[o] in note
    assert got == [Fraction(2, 9), Fraction(1, 3), Fraction(2, 3)]
    stay = closedform.mh3_anterior_at_least_one(1, 6, 2)
    assert stay == Fraction(1, 3) and got[0] < stay


@criterion(8)
def test_ac8_chu_vandermonde():
    """AC8  hypergeometric pmf sums to exactly 1 for every urn with N <= 30"""
    t0 = time.perf_counter()
    urns = 0
    for n_pop in range(0, 31):
        for reds in range(n_pop + 1):
            for draws in range(n_pop + 1):
                assert chu_vandermonde_check(UrnSample(n_pop, reds, draws)) == 1
                urns += 1
    elapsed = time.perf_counter() - t0
    assert urns == sum((n + 1) ** 2 for n in range(31))
    assert elapsed < 5, f"{elapsed:.2f} s"


@criterion(9)
def test_ac9_monte_carlo():
    """AC9  10^6 trials within 4 std errors for >= 99 of 100 seeds; counts identical for 1, 4, 16 workers"""
    t0 = time.perf_counter()
    trials = 10**6
    for g, exact in ((game(3, 1, 1, 1, 1), 2 / 3), (game(12, 5, 3, 2, 2), 45000 / 55440)):
        inside = 0
        for seed in range(100):
            est = montecarlo.simulate(g, trials, seed=seed)
            inside += abs(est.estimate - exact) <= 4 * est.std_error
        assert inside >= 99, (g.to_dict(), inside)
    g = game(12, 5, 3, 2, 2)
    counts = {montecarlo.simulate(g, trials, seed=2026, workers=w).successes for w in (1, 4, 16)}
    assert len(counts) == 1
    elapsed = time.perf_counter() - t0
    assert elapsed < 300, f"{elapsed:.0f} s"


@criterion(10)
def test_ac10_cli_contract(monkeypatch):
    """AC10 compute examples are schema-valid with exact fractions; verify exits 0 pristine, 1 corrupted"""
    examples = (
        ("compute --variant mh2 --doors 123456789 --cars 12345678 --open 1234567", None),
        ("compute --variant mh3 --doors 12 --cars 5 --pick 3 --open 2 --switch-pick 2", "45000/55440"),
        ("compute --variant mh4 --doors 6 --cars 1 --schedule 2,1", "10/18"),
    )
    for argv, raw in examples:
        code, (env,) = cli(argv)
        assert code == 0
        jsonschema.validate(env, ENVELOPE_SCHEMA)
        closed = env["results"]["closedform"]
        num, den = (int(x) for x in closed["fraction"].split("/"))
        assert Fraction(num, den).denominator == den
        if raw is not None:
            assert closed["raw"] == raw
    (mh2,) = cli(examples[0][0])[1]
    assert to_decimal(Fraction(mh2["results"]["closedform"]["fraction"]), 3) == "0.101"
    (mh4,) = cli(examples[2][0])[1]
    assert [p["raw"] for p in mh4["details"]["door_posteriors"]] == ["3/18", "5/18", "10/18"]

    argv = "verify --variant mh3 --doors 12 --cars 5 --pick 3 --open 2 --switch-pick 2"
    assert cli(argv)[0] == 0
    real = closedform.mh3_at_least_one_numerator
    monkeypatch.setattr(closedform, "mh3_at_least_one_numerator", lambda *a: real(*a) + 1)
    code, (env,) = cli(argv)
    assert code == 1 and env["agreement"] is False
