"""End-to-end acceptance gate: one test per contract criterion.

Each test prints a single "criterion N: PASS/FAIL - ..." line directly to the
terminal (bypassing capture) before asserting, so a full run always shows one
line per criterion.
"""

import json
import time

import jsonschema
import pytest

from cubiclab import builders, lab
from cubiclab.builders import a_series
from cubiclab.cli import main
from cubiclab.lab import (
    COUNTEREXAMPLE,
    HOLDS,
    STANDARD_SUITE,
    REPORT_SCHEMA,
    CongruenceClaim,
    FamilyClaim,
    check_claim,
    expand_family,
    family_step_report,
    resolve_series,
    scan_offsets,
    verify_identity,
)
from cubiclab.oracle import enumerate_cubic, oracle_table, signed_count_dp
from cubiclab.series import EXACT, Ring, TruncatedSeries

ORDER_EXACT = 2000
ORDER_MOD = 100_000

SUITE_BY_ID = {check.id: check for check in STANDARD_SUITE}


@pytest.fixture(scope="module")
def suite():
    """Run the full standard suite once at contract orders; index by check id."""
    reports = lab.standard_suite(order_exact=ORDER_EXACT, order_mod=ORDER_MOD)
    return {report.id: report for report in reports}


def conclude(capsys, number: int, description: str, failures: list[str]) -> None:
    status = "FAIL" if failures else "PASS"
    with capsys.disabled():
        print(f"criterion {number}: {status} - {description}")
    assert not failures, "; ".join(failures)


def expect(failures: list[str], condition: bool, message: str) -> None:
    if not condition:
        failures.append(message)


def test_criterion_1_oracle_equivalence(capsys):
    failures: list[str] = []
    dp = signed_count_dp(ORDER_EXACT)
    series = a_series(EXACT, ORDER_EXACT)
    for n in range(41):
        count = enumerate_cubic(n)
        expect(failures, count.a_value == dp[n],
               f"enumeration vs DP disagree at n={n}: {count.a_value} != {dp[n]}")
        expect(failures, count.a_value == series.coeffs[n],
               f"enumeration vs series disagree at n={n}")
    table = oracle_table(41)
    for n, row in enumerate(table):
        count = enumerate_cubic(n)
        expect(failures, (row.even_parts_count, row.odd_parts_count)
               == (count.even_parts_count, count.odd_parts_count),
               f"DP table vs enumeration split disagree at n={n}")
    expect(failures, list(dp) == list(series.coeffs),
           "signed DP vs series coefficients differ below 2000")
    conclude(capsys, 1, "oracle equivalence: enumeration, signed DP, and the "
             "series agree on 0..40 and DP matches the series below 2000", failures)


def test_criterion_2_theta_cross_checks(capsys, suite):
    failures: list[str] = []
    for check_id in ("phi-plus-product", "phi-minus-product",
                     "psi-plus-product", "psi-minus-product"):
        report = suite[check_id]
        expect(failures, report.verdict == HOLDS, f"{check_id}: {report.verdict}")
        expect(failures, report.checked == ORDER_EXACT,
               f"{check_id}: checked {report.checked} != {ORDER_EXACT}")
    conclude(capsys, 2, "theta sum forms match their product forms exactly "
             f"to order {ORDER_EXACT}", failures)


DISSECTION_IDS = (
    "phi-minus-3dissection",
    "inv-psi-minus-3dissection",
    "inv-phi-minus-3dissection",
    "inv-psi-plus-3dissection",
)


def test_criterion_3_dissection_identities_and_corruption(capsys, suite):
    failures: list[str] = []
    for check_id in DISSECTION_IDS:
        report = suite[check_id]
        expect(failures, report.verdict == HOLDS, f"{check_id}: {report.verdict}")
        expect(failures, report.checked >= 1000,
               f"{check_id}: checked {report.checked} < 1000")
    window = 1200
    for check_id in DISSECTION_IDS:
        check = SUITE_BY_ID[check_id]
        clean = resolve_series(check.rhs, EXACT, window)
        for exponent in (0, 7, 123, window - 1):
            corrupted = clean + TruncatedSeries.monomial(EXACT, window, exponent)
            report = verify_identity(check.lhs, corrupted, window,
                                     check_id=f"{check_id}-corrupt-{exponent}")
            expect(failures, report.verdict == COUNTEREXAMPLE,
                   f"{check_id}: corruption at {exponent} not detected")
            expect(failures,
                   report.witness is not None and report.witness.index == exponent,
                   f"{check_id}: corruption at {exponent} misplaced "
                   f"(witness {report.witness})")
    conclude(capsys, 3, "three-way dissection identities hold exactly to order "
             f"{ORDER_EXACT}; every injected single-coefficient corruption is "
             "located at its exact exponent", failures)


CHAIN_EXACT_IDS = ("a3n2-gf-exact", "a3n1-gf-exact")
CHAIN_MOD_IDS = (
    "a3n2-gf-mod3",
    "a9n5-gf-mod3", "a9n5-cube-reduction", "a9n5-vanishes",
    "a9n8-gf-mod3", "a9n8-cube-reduction",
    "a27n26-gf-mod3", "a27n26-cube-reduction", "a27n26-vanishes",
    "a27n8-gf-mod3",
    "a3n1-cube-reduction-1", "a3n1-cube-reduction-2", "a3n1-gf-mod3",
)


def test_criterion_4_generating_function_chain(capsys, suite):
    failures: list[str] = []
    for check_id in CHAIN_EXACT_IDS:
        report = suite[check_id]
        expect(failures, report.verdict == HOLDS, f"{check_id}: {report.verdict}")
        expect(failures, report.checked >= 500,
               f"{check_id}: checked {report.checked} < 500")
    for check_id in CHAIN_MOD_IDS:
        report = suite[check_id]
        expect(failures, report.verdict == HOLDS, f"{check_id}: {report.verdict}")
        expect(failures, report.checked >= 3000,
               f"{check_id}: checked {report.checked} < 3000")
    conclude(capsys, 4, "generating-function chain: exact identities hold to "
             ">=500 and every mod-3 link, including both vanishing endpoints, "
             "holds to >=3000", failures)


def test_criterion_5_vanishing_scans_fast(capsys, suite):
    failures: list[str] = []
    expect(failures, suite["family1-j0"].verdict == HOLDS, "A(9n+5) scan failed")
    expect(failures, suite["family1-j0"].checked >= 11110,
           f"A(9n+5): only {suite['family1-j0'].checked} instances")
    expect(failures, suite["family2-j0"].verdict == HOLDS, "A(27n+26) scan failed")
    expect(failures, suite["family2-j0"].checked >= 3703,
           f"A(27n+26): only {suite['family2-j0'].checked} instances")
    # cold-cache timing: rebuild the mod-3 series from scratch and rescan
    builders.pochhammer.cache_clear()
    builders._inverse_pochhammer.cache_clear()
    builders.a_series.cache_clear()
    lab._A_PREFIX_CACHE.clear()
    start = time.perf_counter()
    first = check_claim(CongruenceClaim(9, 5, 3), ORDER_MOD)
    second = check_claim(CongruenceClaim(27, 26, 3), ORDER_MOD)
    elapsed = time.perf_counter() - start
    expect(failures, first.verdict == HOLDS and second.verdict == HOLDS,
           "cold-cache rescan failed")
    expect(failures, first.checked == 11111 and second.checked == 3703,
           f"cold-cache instance counts {first.checked}/{second.checked}")
    expect(failures, elapsed < 10.0, f"cold-cache scans took {elapsed:.2f}s")
    conclude(capsys, 5, "A(9n+5) and A(27n+26) vanish mod 3 at every index "
             f"below 10^5 (11111 and 3703 instances), cold-cache rescan in "
             f"{elapsed:.2f}s", failures)


def test_criterion_6_internal_congruence(capsys, suite):
    failures: list[str] = []
    report = suite["internal-27n8-3n1"]
    expect(failures, report.verdict == HOLDS, f"verdict {report.verdict}")
    expect(failures, report.checked == 3704,
           f"checked {report.checked} != 3704 instances below 10^5")
    conclude(capsys, 6, "internal congruence A(27n+8) == A(3n+1) (mod 3) holds "
             "for all 3704 instances below 10^5", failures)


def test_criterion_7_infinite_families(capsys, suite):
    failures: list[str] = []
    expected = {
        (1, 0): (9, 5), (1, 1): (81, 44), (1, 2): (729, 395),
        (2, 0): (27, 26), (2, 1): (243, 233), (2, 2): (2187, 2096),
    }
    for (family, j), (a, b) in expected.items():
        claim = expand_family(FamilyClaim(family, j))
        expect(failures, (claim.a, claim.b) == (a, b),
               f"family {family} j={j}: got ({claim.a},{claim.b}), want ({a},{b})")
        report = suite[f"family{family}-j{j}"]
        expect(failures, report.verdict == HOLDS,
               f"family{family}-j{j}: {report.verdict}")
        expect(failures, report.checked > 0, f"family{family}-j{j}: vacuous")
    # index arithmetic: consecutive members form an orbit of N -> 9N - 1,
    # and the paired residues agree below truncation
    for family in (1, 2):
        for j in (0, 1, 2, 3, 4):
            small = expand_family(FamilyClaim(family, j))
            big = expand_family(FamilyClaim(family, j + 1))
            expect(failures, big.a == 9 * small.a and big.b == 9 * small.b - 1,
                   f"family {family} j={j}->{j + 1} breaks the 9N-1 index map")
        for j in (0, 1):
            step = family_step_report(family, j, 50_000)
            expect(failures, step.verdict == HOLDS and step.checked > 0,
                   f"family {family} step j={j}: {step.verdict}")
    expect(failures, suite["families-overlap"].verdict == HOLDS,
           "overlap report errored")
    conclude(capsys, 7, "both families expand to the expected progressions, "
             "members j=0..2 vanish below 10^5, and the 9N-1 index bookkeeping "
             "is consistent", failures)


def test_criterion_8_negative_controls(capsys):
    failures: list[str] = []
    report = check_claim(CongruenceClaim(9, 8, 3), 2000)
    expect(failures, report.verdict == COUNTEREXAMPLE, f"verdict {report.verdict}")
    witness = report.witness
    expect(failures, witness is not None and witness.n == 0
           and witness.index == 8 and witness.residue == 2,
           f"witness {witness} != (n=0, index=8, residue=2)")
    surviving = scan_offsets(9, 3, 10_000)
    expect(failures, surviving == [5], f"surviving offsets mod 9: {surviving}")
    conclude(capsys, 8, "negative controls: A(9n+8) fails at n=0 with residue 2 "
             "(A(8)=2), and offset 5 is the only survivor mod 9 at order 10^4",
             failures)


def test_criterion_9_cli_contract(capsys):
    failures: list[str] = []
    code = main(["check", "claim", "9", "5", "3", "--order", "2000"])
    expect(failures, code == 0, f"holding claim exited {code}")
    code = main(["check", "claim", "9", "8", "3", "--order", "2000"])
    expect(failures, code == 1, f"failing claim exited {code}")
    code = main(["expand", "f0"])
    expect(failures, code == 2, f"parse error exited {code}")
    code = main([])
    expect(failures, code == 2, f"missing subcommand exited {code}")
    capsys.readouterr()
    suite_argv = ["check", "suite", "--order-exact", "120",
                  "--order-mod", "2500", "--json"]
    code = main(list(suite_argv))
    first_out = capsys.readouterr().out
    expect(failures, code == 0, f"suite run exited {code}")
    lines = first_out.splitlines()
    expect(failures, len(lines) == len(STANDARD_SUITE),
           f"{len(lines)} JSON lines != {len(STANDARD_SUITE)} checks")
    for line in lines:
        try:
            jsonschema.validate(json.loads(line), REPORT_SCHEMA)
        except (ValueError, jsonschema.ValidationError) as exc:
            expect(failures, False, f"invalid JSON line: {exc}")
            break
    code = main(list(suite_argv))
    second_out = capsys.readouterr().out
    expect(failures, code == 0, f"second suite run exited {code}")
    expect(failures, first_out == second_out, "suite output not deterministic")
    conclude(capsys, 9, "CLI contract: exit codes 0/1/2, schema-valid JSON "
             "report lines, deterministic suite output", failures)
