"""Acceptance criteria, one test per criterion, each printing a PASS/FAIL
line. Arithmetic is exact everywhere, so every comparison is equality; the
runtime caps are asserted as part of the criterion.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines live.
"""

import contextlib
import io
import json
import random
import re
import time
from fractions import Fraction

from helpers import random_series
from mnseries import cli
from mnseries.crossed import (
    augment_coefficients,
    check_crossed_system,
    check_morphism_extension,
    corrupt_twist,
    diagonal_change,
    good_preimage,
    multiply_regrouped,
    quadratic_conj_z,
    quotient_system,
    trivial_system,
    z2_sign_twist,
    QuotientSide,
    ScalarSide,
)
from mnseries.freeness import (
    digit_sum_check,
    free_monoid_check,
    group_algebra_independence,
    pingpong_check,
    type1_unit_generators,
    type3_generators,
)
from mnseries.groups import (
    Heisenberg,
    HeisenbergElement,
    LatticeGroup,
    SemidirectGroup,
    WreathGroup,
    quotient_descriptor,
)
from mnseries.magnus import verify_magnus_injectivity
from mnseries.scalars import QQ, PrimeField, QuadraticField
from mnseries.crossed import project_series
from mnseries.series import GradedSeries, flatten, regroup

HEIS = Heisenberg()
BS = SemidirectGroup()
WREATH = WreathGroup()
Z2 = LatticeGroup(2)
Z1 = LatticeGroup(1)


@contextlib.contextmanager
def criterion(number, description, limit_seconds):
    started = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE {number:02d} FAIL {description}")
        raise
    elapsed = time.perf_counter() - started
    if elapsed >= limit_seconds:
        print(f"ACCEPTANCE {number:02d} FAIL {description} (too slow: {elapsed:.2f}s)")
        raise AssertionError(f"criterion {number} exceeded {limit_seconds}s: {elapsed:.2f}s")
    print(f"ACCEPTANCE {number:02d} PASS {description} ({elapsed:.2f}s)")


def test_criterion_01_order_axioms():
    with criterion(1, "bi-invariant total orders on all built-in groups", 5.0):
        for group in (HEIS, BS, WREATH, Z2, Z1):
            start = time.perf_counter()
            rng = random.Random(101)
            for _ in range(1000):
                g = group.sample_element(rng)
                h = group.sample_element(rng)
                z = group.sample_element(rng)
                base = group.compare(g, h)
                assert group.compare(group.multiply(z, g), group.multiply(z, h)) == base
                assert group.compare(group.multiply(g, z), group.multiply(h, z)) == base
            assert time.perf_counter() - start < 1.0, f"{group.id} exceeded 1s"


def test_criterion_02_magnus_injectivity():
    with criterion(2, "161 reduced words of length <= 4 separate at degree 4", 5.0):
        report = verify_magnus_injectivity(2, 4, 4)
        assert report.injective and report.word_count == 161


def test_criterion_03_type2_free_monoid_and_negative_control():
    with criterion(3, "B(1,2) {tx,x} free to L=12; Heisenberg collision at L=4", 6.0):
        start = time.perf_counter()
        report = free_monoid_check(BS, list(BS.monoid_generators()), 12)
        assert report.verified
        assert report.details["elements"] == 8191 and report.details["words"] == 8191
        assert time.perf_counter() - start < 5.0
        start = time.perf_counter()
        control = free_monoid_check(HEIS, list(HEIS.monoid_generators()), 4)
        assert control.verdict == "counterexample"
        assert control.witness["words"] == ["xyyx", "yxxy"]
        assert time.perf_counter() - start < 1.0


def test_criterion_04_type3_free_monoid():
    with criterion(4, "wreath product {delta_0, t} free to L=10", 10.0):
        gens = type3_generators(WREATH)
        assert gens == (WREATH.element({0: 1}, 0), WREATH.element({}, 1))
        report = free_monoid_check(WREATH, list(gens), 10)
        assert report.verified
        assert report.details["words"] == 2**11 - 1


def test_criterion_05_digit_sums():
    with criterion(5, "digit sums distinct for r in {2,3,5/2,7/3} at N=12; r=1 fails; 1/r agrees", 10.0):
        ratios = (Fraction(2), Fraction(3), Fraction(5, 2), Fraction(7, 3))
        for r in ratios:
            report = digit_sum_check(r, 12)
            assert report.verified, f"r={r}"
            assert report.details["sums"] == 8191
        control = digit_sum_check(Fraction(1), 12)
        assert control.verdict == "counterexample"
        for r in ratios + (Fraction(1),):
            assert digit_sum_check(1 / r, 12).verdict == digit_sum_check(r, 12).verdict


def test_criterion_06_pingpong():
    with criterion(6, "ping-pong certificate at r=2, t=1, L=8", 2.0):
        report = pingpong_check(BS, Fraction(1), 8)
        assert report.verified
        assert report.details["orbit"] == 2**9 - 1


SERIES_CONTEXTS = (
    ("heisenberg-trivial", HEIS, QQ, None),
    ("twisted-z2", Z2, QQ, z2_sign_twist()),
    ("quadratic-conj", Z1, QuadraticField(2), quadratic_conj_z(2)),
)


def test_criterion_07_series_ring():
    with criterion(7, "inverses and associativity at D=6 in all three series contexts", 30.0):
        for name, ctx, field, system in SERIES_CONTEXTS:
            rng = random.Random(107)
            one = GradedSeries.one(ctx, 6, field, system)
            for _ in range(100):
                f = random_series(ctx, 6, field, rng, system=system, unit=True)
                inv = f.invert()
                assert f * inv == one, name
                assert inv * f == one, name
            for _ in range(100):
                f = random_series(ctx, 6, field, rng, system=system)
                g = random_series(ctx, 6, field, rng, system=system)
                h = random_series(ctx, 6, field, rng, system=system)
                assert (f * g) * h == f * (g * h), name


def test_criterion_08_regroup_flatten():
    with criterion(8, "regroup/flatten round trip and multiplicativity; quotient twist panel", 30.0):
        for group, tag in ((HEIS, "center"), (BS, "base")):
            qs = quotient_system(group, tag)
            qd = qs.descriptor
            rng = random.Random(108)
            for _ in range(100):
                f = random_series(group, 4, QQ, rng)
                g = random_series(group, 4, QQ, rng)
                assert flatten(regroup(f, qd)) == f
                assert regroup(f * g, qd) == multiply_regrouped(regroup(f, qd), regroup(g, qd), qs)
        qs = quotient_system(HEIS, "center")
        for a1 in range(-3, 4):
            for b1 in range(-3, 4):
                for a2 in range(-3, 4):
                    for b2 in range(-3, 4):
                        tw = qs.twist(Z2.element(a1, b1), Z2.element(a2, b2))
                        assert tw.terms == {HeisenbergElement(0, 0, a1 * b2): Fraction(1)}


def test_criterion_09_crossed_validity():
    with criterion(9, "validity identities: built-ins, 5 diagonal changes, corrupted twist caught", 5.0):
        builtins = [
            trivial_system(HEIS, QQ),
            trivial_system(BS, QQ),
            trivial_system(WREATH, QQ),
            trivial_system(Z2, QQ),
            trivial_system(Z1, QQ),
            z2_sign_twist(),
            quadratic_conj_z(2),
        ]
        for system in builtins:
            assert check_crossed_system(system, 100, seed=9).valid, system.id
        diagonals = [
            lambda g: Fraction(1),
            lambda g: Fraction(-1) if (g.coords[0] * g.coords[1]) % 2 else Fraction(1),
            lambda g: Fraction(-1) if g.coords[0] % 2 else Fraction(1),
            lambda g: Fraction(2) ** (g.coords[0] % 3),
            lambda g: Fraction(1, 3) if (g.coords[0] + g.coords[1]) % 2 else Fraction(1),
        ]
        base = z2_sign_twist()
        for d in diagonals:
            assert check_crossed_system(diagonal_change(base, d), 100, seed=9).valid
        corrupted = corrupt_twist(base, (Z2.element(1, 1), Z2.element(1, 0)), Fraction(2))
        assert not check_crossed_system(corrupted, 300, seed=9).valid


def test_criterion_10_group_algebra_independence():
    with criterion(10, "53 reduced words of length <= 3 independent over Q and F5", 120.0):
        for field, c in ((QQ, Fraction(1)), (PrimeField(5), PrimeField(5).from_int(1))):
            verdict = None
            for degree in (6, 7, 8, 9, 10):
                units = list(type1_unit_generators(HEIS, c, c, degree))
                report = group_algebra_independence(units, 3)
                verdict = report
                if report.verified:
                    break
            assert verdict.verified, f"rank deficient up to D=10 over {field.name}"
            assert verdict.bounds["D"] == 6, "expected full rank already at D=6"
            assert verdict.details["rank"] == 53


def test_criterion_11_augmentation_and_good_preimages():
    with criterion(11, "projection inverts good preimages; induced map is multiplicative", 5.0):
        qd = quotient_descriptor(HEIS, "center")
        rng = random.Random(111)
        for _ in range(100):
            A = random_series(Z2, 4, QQ, rng)
            assert project_series(good_preimage(A, qd), qd) == A
        qs = quotient_system(HEIS, "center")
        source = QuotientSide(qs)
        target = ScalarSide(trivial_system(Z2, QQ), Z2)

        def phi(coeff):
            total = QQ.zero
            for value in coeff.terms.values():
                total = total + value
            return total

        report = check_morphism_extension(
            phi, lambda q: q, source, target, samples=60, seed=11,
            series_map=augment_coefficients,
        )
        assert report.holds and report.multiplicative_pairs > 0


DOCUMENTED_COMMANDS = (
    ("verify-monoid", "--group", "bs12", "--gens", "B(1/1,1),B(0/1,1)", "--L", "12"),
    ("verify-monoid", "--group", "heis", "--gens", "H(1,0,0),H(0,1,0)", "--L", "4"),
    ("verify-group-algebra", "--group", "heis", "--c", "1", "--d", "1", "--L", "3", "--D", "6"),
    ("digit-sum", "--r", "5/2", "--N", "12"),
    ("magnus", "--words", "ab,ba", "--D", "4"),
    ("check-crossed", "--system", "z2-sign-twist", "--samples", "1000", "--seed", "7"),
    ("check-crossed", "--system", "quadratic-conj-Z", "--samples", "200", "--seed", "7"),
    ("check-crossed", "--system", "trivial", "--group", "heis", "--samples", "200", "--seed", "7"),
    ("pingpong", "--r", "2", "--t", "1", "--L", "8"),
    ("classify", "--group", "heis"),
    ("classify", "--group", "bs12"),
    ("classify", "--group", "wreath"),
)


def _run_captured(argv):
    buffer = io.StringIO()
    with contextlib.redirect_stdout(buffer):
        code = cli.run_command(list(argv))
    return code, buffer.getvalue()


def test_criterion_12_cli_determinism(tmp_path):
    with criterion(12, "every documented command is byte-deterministic modulo elapsed_ms", 60.0):
        strip = lambda text: re.sub(r'"?elapsed_ms"?: \d+', "elapsed_ms: 0", text)
        expand_src = tmp_path / "series.mns"
        expand_src.write_text("monoid=free:2 D=3 crossed=trivial\n0\t1\t1\n1\ta\t-1\n")
        commands = DOCUMENTED_COMMANDS + (
            ("expand", "--series-file", str(expand_src), "--invert"),
        )
        for argv in commands:
            for fmt in ("json", "text"):
                first_code, first_out = _run_captured(argv + ("--format", fmt, "--seed", "5"))
                second_code, second_out = _run_captured(argv + ("--format", fmt, "--seed", "5"))
                assert first_code == second_code, argv
                assert strip(first_out) == strip(second_out), argv
            code, out = _run_captured(argv + ("--format", "json", "--seed", "5"))
            report = json.loads(out)
            assert report["schema"] == "mnseries-report/1"
