"""Congruence laboratory: machine-checked claims about the signed series.

Every check returns a CheckReport rather than raising, so a batch run always
produces one verdict per claim and a single bad identity cannot take down the
rest of the suite.  Verdicts are "Holds" (every compared value agreed),
"Counterexample" (with the first witness), or "Vacuous" (the truncation left
nothing to compare).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .builders import ThetaKind, a_series, evaluate_eta_expression, theta
from .dissection import dissect
from .etaexpr import EtaParseError, parse_eta_expression
from .series import Ring, TruncatedSeries

HOLDS = "Holds"
COUNTEREXAMPLE = "Counterexample"
VACUOUS = "Vacuous"

DEFAULT_ORDER_EXACT = 2000
DEFAULT_ORDER_MOD = 100000

# Dense mod-3 quotient identities cost O(order^2); cap them inside suite runs
# so the congruence scans can still use a large order cheaply.
CHAIN_IDENTITY_ORDER_CAP = 3000

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "CheckReport",
    "type": "object",
    "properties": {
        "id": {"type": "string"},
        "claim": {"type": "string"},
        "order": {"type": "integer", "minimum": 0},
        "checked": {"type": "integer", "minimum": 0},
        "verdict": {"enum": [HOLDS, COUNTEREXAMPLE, VACUOUS]},
        "witness": {
            "type": "object",
            "properties": {
                "n": {"type": "integer"},
                "index": {"type": "integer", "minimum": 0},
                "residue": {"type": "integer"},
                "lhs": {"type": "integer"},
                "rhs": {"type": "integer"},
            },
            "required": ["index", "residue"],
            "additionalProperties": False,
        },
    },
    "required": ["id", "claim", "order", "checked", "verdict"],
    "additionalProperties": False,
}


@dataclass(frozen=True)
class Witness:
    """First place a claim failed: series index, offending value, and when the
    claim ranges over a progression, the progression variable n."""

    index: int
    residue: int
    n: int | None = None
    lhs: int | None = None
    rhs: int | None = None

    def to_dict(self) -> dict:
        out = {"index": self.index, "residue": self.residue}
        if self.n is not None:
            out["n"] = self.n
        if self.lhs is not None:
            out["lhs"] = self.lhs
        if self.rhs is not None:
            out["rhs"] = self.rhs
        return out


@dataclass(frozen=True)
class CheckReport:
    id: str
    claim: str
    order: int
    checked: int
    verdict: str
    witness: Witness | None = None

    def to_dict(self) -> dict:
        out = {
            "id": self.id,
            "claim": self.claim,
            "order": self.order,
            "checked": self.checked,
            "verdict": self.verdict,
        }
        if self.witness is not None:
            out["witness"] = self.witness.to_dict()
        return out


@dataclass(frozen=True)
class CongruenceClaim:
    """The coefficients on an arithmetic progression vanish mod a modulus."""

    a: int
    b: int
    modulus: int

    def __post_init__(self):
        if self.a < 1:
            raise ValueError(f"progression step must be >= 1, got {self.a}")
        if self.b < 0:
            raise ValueError(f"progression offset must be >= 0, got {self.b}")
        if self.modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {self.modulus}")

    def describe(self) -> str:
        return f"A({self.a}n+{self.b}) == 0 (mod {self.modulus})"


@dataclass(frozen=True)
class FamilyClaim:
    """Member j of one of the two infinite congruence families.

    Family 1: A(9^(j+1) n + (39*9^j + 1)/8)  == 0 (mod 3)
    Family 2: A(3*9^(j+1) n + (23*9^(j+1) + 1)/8) == 0 (mod 3)
    """

    family: int
    j: int

    def __post_init__(self):
        if self.family not in (1, 2):
            raise ValueError(f"family must be 1 or 2, got {self.family}")
        if self.j < 0:
            raise ValueError(f"family index j must be >= 0, got {self.j}")


def expand_family(claim: FamilyClaim) -> CongruenceClaim:
    """Turn a family member into the concrete progression it asserts."""
    if claim.family == 1:
        a = 9 ** (claim.j + 1)
        numerator = 39 * 9**claim.j + 1
    else:
        a = 3 * 9 ** (claim.j + 1)
        numerator = 23 * 9 ** (claim.j + 1) + 1
    if numerator % 8:
        raise AssertionError(f"family offset {numerator} is not divisible by 8")
    return CongruenceClaim(a, numerator // 8, 3)


# -- series resolution --------------------------------------------------------

_PROGRESSION = re.compile(r"A\((\d+)n\+(\d+)\)")

_A_PREFIX_CACHE: dict[Ring, TruncatedSeries] = {}


def _a_prefix(ring: Ring, order: int) -> TruncatedSeries:
    """First `order` coefficients of the signed series, grown monotonically.

    One cached series per ring, extended on demand, so a batch of checks at
    mixed orders computes the underlying series once.
    """
    cached = _A_PREFIX_CACHE.get(ring)
    if cached is None or cached.order < order:
        cached = a_series(ring, order)
        _A_PREFIX_CACHE[ring] = cached
    return cached.truncate(order)


def resolve_series(source, ring: Ring, order: int) -> TruncatedSeries:
    """Turn a series token into `order` coefficients over `ring`.

    Accepts a TruncatedSeries as-is, a parsed term list, or a string:
    "A", theta names ("phi", "phi-", "psi", "psi-"), quotients of those
    ("1/psi-", "phi-/psi-"), progression extracts ("A(9n+5)"), or any
    sum-of-quotients expression over the f_a.
    """
    if isinstance(source, TruncatedSeries):
        return source
    if isinstance(source, (list, tuple)):
        return evaluate_eta_expression(source, ring, order)
    token = source.strip()
    named = _resolve_named(token, ring, order)
    if named is not None:
        return named
    if "/" in token and _all_named(token):
        num, den = token.split("/", 1)
        left = _resolve_named(num.strip(), ring, order)
        right = _resolve_named(den.strip(), ring, order)
        return left * right.invert()
    m = _PROGRESSION.fullmatch(token)
    if m:
        k, r = int(m.group(1)), int(m.group(2))
        if k < 2:
            raise ValueError(f"progression step must be >= 2 in {token!r}")
        if r >= k:
            raise ValueError(f"progression offset must be below the step in {token!r}")
        return dissect(_a_prefix(ring, k * order + r), k, r)
    return evaluate_eta_expression(parse_eta_expression(token), ring, order)


def _resolve_named(token: str, ring: Ring, order: int):
    if token == "A":
        return _a_prefix(ring, order)
    if token == "1":
        return TruncatedSeries.one(ring, order)
    alias = {"phi+": "phi", "psi+": "psi"}.get(token, token)
    try:
        kind = ThetaKind(alias)
    except ValueError:
        return None
    return theta(kind, ring, order)


def _all_named(token: str) -> bool:
    parts = token.split("/")
    return len(parts) == 2 and all(
        p.strip() in ("A", "1", "phi", "phi+", "phi-", "psi", "psi+", "psi-") for p in parts
    )


# -- checks -------------------------------------------------------------------


def verify_identity(
    lhs,
    rhs,
    order: int,
    modulus: int | None = None,
    *,
    check_id: str = "identity",
    description: str | None = None,
) -> CheckReport:
    """Compare two series termwise up to the common truncation order."""
    ring = Ring.exact() if modulus is None else Ring.mod(modulus)
    left = resolve_series(lhs, ring, order)
    right = resolve_series(rhs, ring, order)
    checked = min(left.order, right.order)
    if description is None:
        suffix = "" if modulus is None else f" (mod {modulus})"
        description = f"{_token_text(lhs)} == {_token_text(rhs)}{suffix}"
    if checked == 0:
        return CheckReport(check_id, description, order, 0, VACUOUS)
    diff = left.first_difference(right)
    if diff is None:
        return CheckReport(check_id, description, order, checked, HOLDS)
    l, r = left.coeffs[diff], right.coeffs[diff]
    residue = ring.normalize(l - r)
    witness = Witness(index=diff, residue=residue, lhs=l, rhs=r)
    return CheckReport(check_id, description, order, diff + 1, COUNTEREXAMPLE, witness)


def _token_text(source) -> str:
    if isinstance(source, TruncatedSeries):
        return "<series>"
    if isinstance(source, (list, tuple)):
        from .etaexpr import format_eta_expression

        return format_eta_expression(source)
    return str(source)


def check_claim(
    claim: CongruenceClaim,
    order: int = DEFAULT_ORDER_MOD,
    *,
    check_id: str | None = None,
    description: str | None = None,
) -> CheckReport:
    """Scan every index a*n+b below the truncation order for a nonzero residue."""
    series = _a_prefix(Ring.mod(claim.modulus), order)
    check_id = check_id or f"claim-{claim.a}n+{claim.b}-mod{claim.modulus}"
    description = description or claim.describe()
    checked = 0
    for index in range(claim.b, order, claim.a):
        residue = series.coeffs[index]
        if residue:
            n = (index - claim.b) // claim.a
            witness = Witness(index=index, residue=residue, n=n)
            return CheckReport(check_id, description, order, checked + 1, COUNTEREXAMPLE, witness)
        checked += 1
    verdict = HOLDS if checked else VACUOUS
    return CheckReport(check_id, description, order, checked, verdict)


def check_internal(order: int = DEFAULT_ORDER_MOD, *, check_id: str = "internal-27n8-3n1") -> CheckReport:
    """A(27n+8) == A(3n+1) (mod 3) for every n with 27n+8 below the order."""
    series = _a_prefix(Ring.mod(3), order)
    description = "A(27n+8) == A(3n+1) (mod 3)"
    checked = 0
    n = 0
    while 27 * n + 8 < order:
        big = series.coeffs[27 * n + 8]
        small = series.coeffs[3 * n + 1]
        if big != small:
            witness = Witness(index=27 * n + 8, residue=(big - small) % 3, n=n, lhs=big, rhs=small)
            return CheckReport(check_id, description, order, checked + 1, COUNTEREXAMPLE, witness)
        checked += 1
        n += 1
    verdict = HOLDS if checked else VACUOUS
    return CheckReport(check_id, description, order, checked, verdict)


def check_family(claim: FamilyClaim, order: int = DEFAULT_ORDER_MOD, *, check_id: str | None = None) -> CheckReport:
    expanded = expand_family(claim)
    check_id = check_id or f"family{claim.family}-j{claim.j}"
    description = f"family {claim.family}, j={claim.j}: {expanded.describe()}"
    return check_claim(expanded, order, check_id=check_id, description=description)


def family_step_report(
    family: int,
    j: int,
    order: int = DEFAULT_ORDER_MOD,
    *,
    check_id: str | None = None,
) -> CheckReport:
    """Index bookkeeping linking consecutive family members j and j+1.

    Member j+1 evaluates the series at index 9*N - 1 whenever member j
    evaluates it at N (same progression parameter n), so the members form an
    orbit of the map N -> 9*N - 1.  This checks the arithmetic relation and
    that the paired residues agree mod 3 for every pair below the truncation
    order.  Note 9*N - 1 lands on 27k+8 with 3k+1 == N only when N == 1 mod 3,
    and family indices are == 2 mod 3, so this pairing is NOT an instance of
    the internal congruence; it holds because both progressions vanish.
    """
    small = expand_family(FamilyClaim(family, j))
    big = expand_family(FamilyClaim(family, j + 1))
    if big.a != 9 * small.a or big.b != 9 * small.b - 1:
        raise AssertionError(
            f"family {family} members j={j},{j + 1} violate the 9N-1 index map"
        )
    check_id = check_id or f"family{family}-step-j{j}"
    description = (
        f"family {family} step j={j}->{j + 1}: A({big.a}n+{big.b}) == "
        f"A({small.a}n+{small.b}) (mod 3), indices linked by N -> 9N-1"
    )
    series = _a_prefix(Ring.mod(3), order)
    checked = 0
    n = 0
    while big.a * n + big.b < order:
        index = big.a * n + big.b
        lhs = series.coeffs[index]
        rhs = series.coeffs[small.a * n + small.b]
        if lhs != rhs:
            witness = Witness(index=index, residue=(lhs - rhs) % 3, n=n, lhs=lhs, rhs=rhs)
            return CheckReport(check_id, description, order, checked + 1, COUNTEREXAMPLE, witness)
        checked += 1
        n += 1
    verdict = HOLDS if checked else VACUOUS
    return CheckReport(check_id, description, order, checked, verdict)


def scan_offsets(a: int, modulus: int, order: int) -> list[int]:
    """Offsets b in [0, a) for which A(a*n+b) == 0 (mod modulus) below the order."""
    series = _a_prefix(Ring.mod(modulus), order)
    surviving = []
    for b in range(a):
        if all(series.coeffs[i] == 0 for i in range(b, order, a)):
            surviving.append(b)
    return surviving


def family_overlap_report(
    j_values=(0, 1, 2),
    order: int = DEFAULT_ORDER_MOD,
    *,
    check_id: str = "families-overlap",
) -> CheckReport:
    """Informational: pairwise intersections of the family index sets below order.

    The two families are presented as separate results; this records how their
    progressions interleave at finite truncation.  No verdict semantics beyond
    reporting what was observed, so the verdict is always Holds.
    """
    sets = {}
    for family in (1, 2):
        for j in j_values:
            c = expand_family(FamilyClaim(family, j))
            sets[f"family{family}-j{j}"] = frozenset(range(c.b, order, c.a))
    names = sorted(sets)
    overlaps = []
    for i, x in enumerate(names):
        for y in names[i + 1 :]:
            common = len(sets[x] & sets[y])
            if common:
                overlaps.append(f"{x} & {y}: {common}")
    checked = sum(len(s) for s in sets.values())
    if overlaps:
        detail = "; ".join(overlaps)
        claim = f"family index sets below {order}: nonempty intersections ({detail})"
    else:
        claim = f"family index sets below {order}: all pairwise intersections empty"
    return CheckReport(check_id, claim, order, checked, HOLDS)


# -- the suite ----------------------------------------------------------------


@dataclass(frozen=True)
class SuiteCheck:
    """One entry of the standard suite; kind selects the interpretation."""

    id: str
    kind: str  # identity | internal | family | overlap
    description: str = ""
    lhs: str = ""
    rhs: str = ""
    modulus: int | None = None
    scale: str = "exact"  # exact | chain (identities only)
    family: FamilyClaim | None = None


STANDARD_SUITE: tuple[SuiteCheck, ...] = (
    # Theta product forms: lattice sum vs Pochhammer quotient.
    SuiteCheck("phi-plus-product", "identity", "phi(q) equals its product form",
               lhs="phi", rhs="f2^5/(f1^2*f4^2)"),
    SuiteCheck("phi-minus-product", "identity", "phi(-q) equals its product form",
               lhs="phi-", rhs="f1^2/f2"),
    SuiteCheck("psi-plus-product", "identity", "psi(q) equals its product form",
               lhs="psi", rhs="f2^2/f1"),
    SuiteCheck("psi-minus-product", "identity", "psi(-q) equals its product form",
               lhs="psi-", rhs="f1*f4/f2"),
    SuiteCheck("a-gf-theta-quotient", "identity", "signed series equals phi(-q)/psi(-q)",
               lhs="A", rhs="phi-/psi-"),
    # 3-dissections of the four theta building blocks.
    SuiteCheck("phi-minus-3dissection", "identity", "3-dissection of phi(-q)",
               lhs="phi-", rhs="f9^2/f18 - 2*q*f3*f18^2/(f6*f9)"),
    SuiteCheck("inv-psi-minus-3dissection", "identity", "3-dissection of 1/psi(-q)",
               lhs="1/psi-",
               rhs="f18^9/(f3^2*f9^3*f12^2*f36^3) + q*f6^2*f18^3/(f3^3*f12^3)"
                   " + q^2*f6^4*f9^3*f36^3/(f3^4*f12^4*f18^3)"),
    SuiteCheck("inv-phi-minus-3dissection", "identity", "3-dissection of 1/phi(-q)",
               lhs="1/phi-",
               rhs="f6^4*f9^6/(f3^8*f18^3) + 2*q*f6^3*f9^3/f3^7 + 4*q^2*f6^2*f18^3/f3^6"),
    SuiteCheck("inv-psi-plus-3dissection", "identity", "3-dissection of 1/psi(q)",
               lhs="1/psi",
               rhs="f3^2*f9^3/f6^6 - q*f3^3*f18^3/f6^7 + q^2*f3^4*f18^6/(f6^8*f9^3)"),
    # The A(3n+2) generating function, exact and reduced mod 3.
    SuiteCheck("a3n2-gf-exact", "identity", "generating function of A(3n+2)",
               lhs="A(3n+2)",
               rhs="f2^4*f3^5*f12^3/(f1^4*f4^4*f6^4) - 2*f2*f6^5/(f1^2*f3*f4^3)"),
    SuiteCheck("a3n2-gf-mod3", "identity", "A(3n+2) generating function reduced mod 3",
               lhs="A(3n+2)",
               rhs="f2*f3^4*f12^2/(f1*f4*f6^3) - 2*f2*f6^5/(f1^2*f3*f12)",
               modulus=3, scale="chain"),
    # Vanishing of A(9n+5): extracted form, cube reduction, conclusion.
    SuiteCheck("a9n5-gf-mod3", "identity", "A(9n+5) generating function mod 3",
               lhs="A(9n+5)", rhs="f1*f6^3/(f2*f4) - 4*f2^8*f3^3/(f1^8*f4)",
               modulus=3, scale="chain"),
    SuiteCheck("a9n5-cube-reduction", "identity",
               "cube reduction merging the two A(9n+5) terms mod 3",
               lhs="f2^8*f3^3/(f1^8*f4)", rhs="f1*f6^3/(f2*f4)",
               modulus=3, scale="chain"),
    SuiteCheck("a9n5-vanishes", "identity", "A(9n+5) vanishes mod 3",
               lhs="A(9n+5)", rhs="0", modulus=3, scale="chain"),
    # The A(9n+8) step used by the deeper extraction.
    SuiteCheck("a9n8-gf-mod3", "identity", "A(9n+8) generating function mod 3",
               lhs="A(9n+8)",
               rhs="f2*f3^3*f12^3/(f4^2*f6^3) - 8*f2^7*f6^3/(f1^7*f4)",
               modulus=3, scale="chain"),
    SuiteCheck("a9n8-cube-reduction", "identity",
               "cube reduction rewriting the second A(9n+8) term mod 3",
               lhs="f2^7*f6^3/(f1^7*f4)", rhs="f2*f6^5/(f1*f3^2*f4)",
               modulus=3, scale="chain"),
    # Vanishing of A(27n+26).
    SuiteCheck("a27n26-gf-mod3", "identity", "A(27n+26) generating function mod 3",
               lhs="A(27n+26)",
               rhs="-f1^3*f12^3/f4^4 - 8*f2^9*f3^3*f12^3/(f1^6*f4^4*f6^3)",
               modulus=3, scale="chain"),
    SuiteCheck("a27n26-cube-reduction", "identity",
               "cube reduction merging the two A(27n+26) terms mod 3",
               lhs="f2^9*f3^3*f12^3/(f1^6*f4^4*f6^3)", rhs="f1^3*f12^3/f4^4",
               modulus=3, scale="chain"),
    SuiteCheck("a27n26-vanishes", "identity", "A(27n+26) vanishes mod 3",
               lhs="A(27n+26)", rhs="0", modulus=3, scale="chain"),
    # The internal congruence route: A(27n+8) and A(3n+1) share one mod-3 form.
    SuiteCheck("a27n8-gf-mod3", "identity", "A(27n+8) generating function mod 3",
               lhs="A(27n+8)",
               rhs="f1^3*f6^3/(f2*f4^3) - 2*f2^5*f6^9/(f1^4*f3^3*f4^2*f12^3)",
               modulus=3, scale="chain"),
    SuiteCheck("a3n1-gf-exact", "identity", "generating function of A(3n+1)",
               lhs="A(3n+1)",
               rhs="f2^2*f3^2*f6^2/(f1^3*f4^3) - 2*f6^11/(f1*f2*f3^4*f4^2*f12^3)"),
    SuiteCheck("a3n1-cube-reduction-1", "identity",
               "cube reduction of the first A(3n+1) term mod 3",
               lhs="f2^2*f3^2*f6^2/(f1^3*f4^3)", rhs="f1^3*f6^3/(f2*f4^3)",
               modulus=3, scale="chain"),
    SuiteCheck("a3n1-cube-reduction-2", "identity",
               "cube reduction of the second A(3n+1) term mod 3",
               lhs="f6^11/(f1*f2*f3^4*f4^2*f12^3)", rhs="f2^5*f6^9/(f1^4*f3^3*f4^2*f12^3)",
               modulus=3, scale="chain"),
    SuiteCheck("a3n1-gf-mod3", "identity",
               "A(3n+1) generating function mod 3 matches the A(27n+8) form",
               lhs="A(3n+1)",
               rhs="f1^3*f6^3/(f2*f4^3) - 2*f2^5*f6^9/(f1^4*f3^3*f4^2*f12^3)",
               modulus=3, scale="chain"),
    SuiteCheck("internal-27n8-3n1", "internal", "A(27n+8) == A(3n+1) (mod 3)"),
    # The two infinite families, first three members each.
    SuiteCheck("family1-j0", "family", family=FamilyClaim(1, 0)),
    SuiteCheck("family1-j1", "family", family=FamilyClaim(1, 1)),
    SuiteCheck("family1-j2", "family", family=FamilyClaim(1, 2)),
    SuiteCheck("family2-j0", "family", family=FamilyClaim(2, 0)),
    SuiteCheck("family2-j1", "family", family=FamilyClaim(2, 1)),
    SuiteCheck("family2-j2", "family", family=FamilyClaim(2, 2)),
    SuiteCheck("families-overlap", "overlap",
               "how the two families' index sets interleave (informational)"),
)


def standard_suite(
    order_exact: int = DEFAULT_ORDER_EXACT,
    order_mod: int = DEFAULT_ORDER_MOD,
    checks: tuple[SuiteCheck, ...] | None = None,
) -> list[CheckReport]:
    """Run the standard suite; always returns one report per check."""
    if order_exact < 1 or order_mod < 1:
        raise ValueError("orders must be >= 1")
    if checks is None:
        checks = STANDARD_SUITE
    chain_order = min(order_mod, CHAIN_IDENTITY_ORDER_CAP)
    reports = []
    for check in checks:
        try:
            if check.kind == "identity":
                order = order_exact if check.scale == "exact" else chain_order
                report = verify_identity(
                    check.lhs, check.rhs, order, modulus=check.modulus,
                    check_id=check.id, description=check.description or None,
                )
            elif check.kind == "internal":
                report = check_internal(order_mod, check_id=check.id)
            elif check.kind == "family":
                report = check_family(check.family, order_mod, check_id=check.id)
            elif check.kind == "overlap":
                report = family_overlap_report(order=order_mod, check_id=check.id)
            else:
                raise ValueError(f"unknown suite check kind {check.kind!r}")
        except (EtaParseError, ValueError) as exc:
            report = CheckReport(check.id, f"{check.description or check.id}: {exc}",
                                 0, 0, COUNTEREXAMPLE)
        reports.append(report)
    return reports
