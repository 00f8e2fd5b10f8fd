"""Golden suite: reference values for the worked examples, checked against fresh computations.

Each case yields a :class:`VerifyResult`.  ``provenance`` is "reference" for
values taken from the published worked examples and "derived" for values the
package derives independently (oracles, cross-checks, properties).  A case
passes iff expected and computed agree under its declared ``equivalence``.
"""

from __future__ import annotations

import contextlib
import io
import random
from math import gcd, lcm
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .center import _listed_candidates, canonical_central_elements, center_basis, center_rank_formula
from .exact import QMatrix, RationalPoly, companion_matrix, cyclotomic, monic_normalize, parse_poly, reciprocal_check
from .exact.snf import PolyMatrix
from .forms import (
    _common_ratio,
    QuadraticFormReport,
    compare_forms,
    forms_from_display,
    parse_quadratic,
    proportionality_witness,
    render_quadratic,
    scalar_square_test,
    variable_names,
)
from .knots.pd import PDCode, parse_pd
from .knots.pipeline import qk_form
from .knots.table import bundled_table, load_table, pretzel_knot
from .knots.wirtinger import alexander_divisors, alexander_matrix, strip_t, wirtinger
from .mapping_class import compose_twists, invariant_factors, qf_form
from .nilpotent import (
    Nil2Element,
    antisym,
    build_tau_lift,
    comm_dim,
    nil2_inv,
    nil2_mul,
    random_linear_part,
)

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"

# Reference displays of the worked examples, in the variables x, y, z, w.
TREFOIL_FORM = "x^2 - x*y + y^2"
DEGREE_TWO_FORMS = {
    "4_1": "x^2 - 3*x*y + y^2",
    "5_2": "2*x^2 - 3*x*y + 2*y^2",
    "6_1": "2*x^2 - 5*x*y + 2*y^2",
}
DEGREE_FOUR_FORMS = {
    "5_1": ("x^2 + x*y + y^2 + w*z + y*z + z^2 + w^2", "-w*x + w*y + x*y + w*z + x*z + y*z"),
    "6_2": (
        "w^2 + 2*w*x + x^2 + x*y + y^2 + w*z + y*z + z^2",
        "-2*w^2 + w*x - 2*x^2 + 3*w*y - x*y - 2*y^2 - w*z + 3*x*z - y*z - 2*z^2",
    ),
    "6_3": (
        "-w^2 + 6*w*x - x^2 + 2*w*y - x*y - y^2 - w*z + 2*x*z - y*z - z^2",
        "2*w^2 - 9*w*x + 2*x^2 - w*y + 3*x*y + 2*y^2 + 3*w*z - x*z + 3*y*z + 2*z^2",
    ),
}
PRETZEL_FORMS = {"3,3,-3": "12*x^2 + 30*x*y + 12*y^2", "9,3,-3": "6*x^2 + 15*x*y + 6*y^2"}
PRETZEL_RATIO = Fraction(2)
MCG_WORDS = {"f1": "2 3 -4 -5 1", "f2": "2 3 3 3 -4 -5 1"}
MCG_SUMMED_FORM = "w^2 - 2*x*w + x^2 - w*y + x*y + y^2 + w*z - x*z + y*z + z^2"
MCG_RATIO = Fraction(3)
MCG_CHARPOLY = "1 - 2t + 3t^2 - 2t^3 + t^4"
MCG_KNOTS = {"f1": "8_20", "f2": "12n_582"}
UNKNOT_PD = "X(1,1,2,2)"
LIFT_SAMPLES = 20


@dataclass(frozen=True)
class VerifyResult:
    criterion: int
    case: str
    expected: str
    computed: str
    status: str
    provenance: str
    equivalence: str = "exact"
    notes: str = ""

    def to_json(self) -> dict:
        return {
            "criterion": self.criterion,
            "case": self.case,
            "expected": {"value": self.expected, "provenance": self.provenance},
            "computed": self.computed,
            "status": self.status,
            "equivalence": self.equivalence,
            "notes": self.notes,
        }


def _status(ok: bool) -> str:
    return PASS if ok else FAIL


def content_normalized(g: QMatrix) -> QMatrix:
    """Divide a Gram by the positive gcd of the coefficients of its quadratic form."""
    coeffs = [g[i, i] for i in range(g.rows)] + [2 * g[i, j] for i in range(g.rows) for j in range(i + 1, g.cols)]
    coeffs = [c for c in coeffs if c]
    if not coeffs:
        return g
    num = 0
    den = 1
    for c in coeffs:
        num = gcd(num, c.numerator)
        den = lcm(den, c.denominator)
    return g.scale(Fraction(den, num))


class Suite:
    """Shared state of one verify run: knot table, lift seed and cached reports."""

    def __init__(self, lift_seed: int | None = None, table: str | None = None):
        self.lift_seed = lift_seed
        self.table_path = table
        self._table: dict[str, str] | None = None
        self._table_error: Exception | None = None
        self._knots: dict[tuple[str, int | None], QuadraticFormReport] = {}
        self._mcg: dict[str, QuadraticFormReport] = {}

    @property
    def table(self) -> dict[str, str]:
        if self._table is None and self._table_error is None:
            try:
                self._table = load_table(self.table_path)
            except Exception as exc:
                self._table_error = exc
        if self._table_error is not None:
            raise self._table_error
        return self._table

    def pd(self, name: str) -> PDCode:
        if name.startswith("P(") and name.endswith(")"):
            return pretzel_knot(name[2:-1])
        return parse_pd(self.table[name])

    def knot(self, name: str, seed: int | None = -1) -> QuadraticFormReport:
        """Report for a table knot or "P(p,q,r)"; seed -1 means the suite's seed."""
        seed = self.lift_seed if seed == -1 else seed
        key = (name, seed)
        if key not in self._knots:
            self._knots[key] = qk_form(self.pd(name), lift_seed=seed, name=name)
        return self._knots[key]

    def mcg(self, label: str) -> QuadraticFormReport:
        if label not in self._mcg:
            self._mcg[label] = qf_form(compose_twists(2, MCG_WORDS[label]))
        return self._mcg[label]

    def bundled_names(self) -> list[str]:
        return list(bundled_table())


def _guard(criterion: int, case: str, expected: str, provenance: str, fn: Callable[[], VerifyResult]) -> VerifyResult:
    try:
        return fn()
    except Exception as exc:
        return VerifyResult(criterion, case, expected, f"error: {exc}", FAIL, provenance, notes=type(exc).__name__)


def _display_report(displays: Sequence[str], r: QuadraticFormReport) -> QuadraticFormReport:
    return forms_from_display(displays, r.module_poly, r.t_action)


def _sign_flip_note(expected: QMatrix, computed: QMatrix) -> str:
    """Diagnostic: does the expected form equal the computed one after y -> -y?"""
    n = computed.rows
    if n != 2:
        return ""
    flip = QMatrix.from_rows([[1, 0], [0, -1]])
    if flip.T @ computed @ flip == expected:
        return "computed form equals the expected one after y -> -y"
    return ""


def _quadratic_form_case(
    criterion: int, case: str, expected_text: str, r: QuadraticFormReport, normalize: bool
) -> VerifyResult:
    names = variable_names(r.hk_dimension)
    expected = parse_quadratic(expected_text, names)
    computed = r.grams[0]
    if normalize:
        expected, computed = content_normalized(expected), content_normalized(computed)
    shown = render_quadratic(computed, names)
    notes = []
    if normalize:
        notes.append("both sides divided by their coefficient content")
    if computed == expected:
        return VerifyResult(criterion, case, expected_text, shown, PASS, "reference", "exact", "; ".join(notes))
    given = forms_from_display([render_quadratic(expected, names)], r.module_poly, r.t_action)
    if not given.isometry_ok:
        notes.append("expected form is not invariant under the action of t, so no unit substitution can match it")
    else:
        mine = forms_from_display([shown], r.module_poly, r.t_action)
        cmp = compare_forms(given, mine, height=2, unit_height=3)
        if cmp.unit_witness is not None:
            w = cmp.unit_witness
            notes.append(f"unit substitution u = {w.u} ({cmp.unit_witness_source})")
            return VerifyResult(criterion, case, expected_text, shown, PASS, "reference", "unit substitution", "; ".join(notes))
        notes.append("no unit substitution found")
    flip = _sign_flip_note(expected, computed)
    if flip:
        notes.append(flip)
    return VerifyResult(criterion, case, expected_text, shown, FAIL, "reference", "exact or unit substitution", "; ".join(notes))


# criterion 1 ---------------------------------------------------------------


def trefoil_cases(s: Suite) -> list[VerifyResult]:
    out = []
    out.append(
        _guard(1, "3_1 divisors", "1 - t + t^2", "reference", lambda: _divisor_case(1, "3_1 divisors", s.knot("3_1"), ["1 - t + t^2"]))
    )
    out.append(
        _guard(1, "3_1 center rank", "1", "reference", lambda: _value_case(1, "3_1 center rank", 1, s.knot("3_1").center.rank))
    )
    out.append(
        _guard(1, "3_1 form", TREFOIL_FORM, "reference", lambda: _quadratic_form_case(1, "3_1 form", TREFOIL_FORM, s.knot("3_1"), False))
    )
    return out


def _divisor_case(criterion: int, case: str, r: QuadraticFormReport, expected: Sequence[str]) -> VerifyResult:
    want = [monic_normalize(parse_poly(p)) for p in expected]
    got = [monic_normalize(d) for d in r.divisors]
    return VerifyResult(
        criterion, case, ", ".join(map(str, want)) or "none", ", ".join(map(str, got)) or "none", _status(want == got), "reference"
    )


def _value_case(criterion: int, case: str, expected, computed, provenance: str = "reference", notes: str = "") -> VerifyResult:
    return VerifyResult(criterion, case, str(expected), str(computed), _status(expected == computed), provenance, notes=notes)


# criterion 2 ---------------------------------------------------------------


def degree_two_cases(s: Suite) -> list[VerifyResult]:
    out = []
    for name, text in DEGREE_TWO_FORMS.items():
        case = f"{name} form"
        out.append(_guard(2, case, text, "reference", lambda n=name, t=text, c=case: _quadratic_form_case(2, c, t, s.knot(n), True)))
    return out


# criterion 3 ---------------------------------------------------------------


def degree_four_cases(s: Suite) -> list[VerifyResult]:
    out = []
    perms: dict[str, tuple[int, ...]] = {}
    for name, texts in DEGREE_FOUR_FORMS.items():
        case = f"{name} forms"

        def run(n=name, t=texts, c=case) -> VerifyResult:
            r = s.knot(n)
            given = _display_report(t, r)
            cmp = compare_forms(given, r, height=3, allow_permutation=True)
            shown = " ; ".join(r.display)
            w = cmp.unit_witness
            if w is None:
                note = "expected forms not invariant under t" if not given.isometry_ok else "no witness with c = 1"
                return VerifyResult(3, c, " ; ".join(t), shown, FAIL, "reference", "unit substitution and permutation", note)
            perms[n] = w.permutation
            note = f"u = {w.u}, permutation {w.permutation} ({cmp.unit_witness_source})"
            return VerifyResult(3, c, " ; ".join(t), shown, PASS, "reference", "unit substitution and permutation", note)

        out.append(_guard(3, case, " ; ".join(texts), "reference", run))
    consistent = len(perms) == len(DEGREE_FOUR_FORMS) and len(set(perms.values())) == 1
    out.append(
        VerifyResult(
            3,
            "common coordinate permutation",
            "one permutation for all degree-4 knots",
            ", ".join(f"{k}: {v}" for k, v in perms.items()) or "none",
            _status(consistent),
            "derived",
        )
    )
    return out


# criterion 4 ---------------------------------------------------------------


def pretzel_cases(s: Suite) -> list[VerifyResult]:
    names = {p: f"P({p})" for p in PRETZEL_FORMS}
    out = []
    for p, text in PRETZEL_FORMS.items():
        case = f"P({p}) form"

        def run(n=names[p], t=text, c=case) -> VerifyResult:
            r = s.knot(n)
            given = _display_report([t], r)
            cmp = compare_forms(given, r, height=2, unit_height=4)
            w = cmp.unit_witness
            ok = w is not None
            note = f"u = {w.u} ({cmp.unit_witness_source})" if ok else "no witness with c = 1"
            return VerifyResult(4, c, t, r.display[0], _status(ok), "reference", "unit substitution", note)

        out.append(_guard(4, case, text, "reference", run))
    first, second = (names[p] for p in PRETZEL_FORMS)

    def ratio() -> VerifyResult:
        w = proportionality_witness(s.knot(first), s.knot(second))
        got = "none" if w is None else f"c = {w.c}, u = {w.u}"
        ok = w is not None and w.c == PRETZEL_RATIO
        return VerifyResult(4, "pretzel proportionality scalar", f"c = {PRETZEL_RATIO}", got, _status(ok), "reference")

    out.append(_guard(4, "pretzel proportionality scalar", f"c = {PRETZEL_RATIO}", "reference", ratio))
    poly = parse_poly("2t^2 - 5t + 2")
    out.append(
        _guard(
            4,
            "square test of the pretzel scalar",
            "no",
            "reference",
            lambda: _value_case(4, "square test of the pretzel scalar", "no", scalar_square_test(PRETZEL_RATIO, poly)),
        )
    )

    def verdict() -> VerifyResult:
        cmp = compare_forms(s.knot(first), s.knot(second), height=2, unit_height=4)
        note = f"first witness c = {cmp.witness.c}" if cmp.witness else ""
        if cmp.unit_witness is not None:
            note += f"; witness with c = 1: u = {cmp.unit_witness.u} ({cmp.unit_witness_source})"
        return VerifyResult(4, "pretzel verdict", "inequivalent", cmp.verdict, _status(cmp.verdict == "inequivalent"), "reference", notes=note)

    out.append(_guard(4, "pretzel verdict", "inequivalent", "reference", verdict))
    return out


# criterion 5 ---------------------------------------------------------------

CENTER_POLYS = {
    1: ["1 - t + t^2", "1 - 3t + t^2", "1 + t^2"],
    2: ["1 - t + t^2 - t^3 + t^4", "1 - 2t + 3t^2 - 2t^3 + t^4", "1 - 3t + 5t^2 - 3t^3 + t^4", "1 + t + t^2 + t^3 + t^4"],
    3: ["1 + t + t^2 + t^3 + t^4 + t^5 + t^6", "1 - t + t^3 - t^5 + t^6", "1 - 2t + 2t^2 - 3t^3 + 2t^4 - 2t^5 + t^6"],
}


def center_cases(s: Suite) -> list[VerifyResult]:
    out = []
    for g, polys in CENTER_POLYS.items():
        for text in polys:
            case = f"canonical central elements g={g}: {text}"
            out.append(_guard(5, case, "displayed closed forms central", "reference", lambda t=text, c=case, gg=g: _center_case(c, t, gg)))
    return out


def _center_case(case: str, text: str, g: int) -> VerifyResult:
    f = monic_normalize(parse_poly(text))
    res = canonical_central_elements(f)
    e = build_tau_lift(companion_matrix(f)).E
    listed = _listed_candidates([f.coeff(i) for i in range(f.degree + 1)], g)
    accepted = res.elements or ()
    all_central = bool(accepted) and all(e @ v == v for v in accepted)
    verbatim = listed is not None and tuple(listed) == tuple(accepted)
    listed_ok = res.listed_central is not None and all(res.listed_central)
    discrepancy = not all(res.recursion_central)
    ok = all_central and listed_ok and (verbatim or discrepancy or all(res.recursion_central))
    computed = f"source: {res.source}; closed forms central: {listed_ok}; accepted verbatim: {verbatim}"
    notes = []
    if discrepancy:
        bad = [i + 1 for i, c in enumerate(res.recursion_central) if not c]
        notes.append(f"recursion candidates for l = {bad} are not fixed by E; closed forms used")
    return VerifyResult(5, case, "displayed closed forms central", computed, _status(ok), "reference", notes="; ".join(notes))


# criterion 6 ---------------------------------------------------------------


def rank_corpus(seed: int = 6) -> list[tuple[str, list[RationalPoly]]]:
    """At least 30 divisor chains of reciprocal monic polynomials of total degree <= 10."""
    corpus: list[tuple[str, list[RationalPoly]]] = []
    for n in range(3, 31):
        phi = cyclotomic(n)
        if phi.degree <= 10:
            corpus.append((f"Phi_{n}", [phi]))
    quad = lambda a: RationalPoly([1, a, 1])  # noqa: E731
    corpus.append(("(1 - t + t^2)^2", [quad(-1) * quad(-1)]))
    corpus.append(("(1 + t^2)^2", [quad(0) * quad(0)]))
    corpus.append(("(1 - 3t + t^2)^3", [quad(-3) ** 3]))
    rng = random.Random(seed)
    choices = [Fraction(a) for a in range(-6, 7) if abs(a) != 2] + [Fraction(-5, 2), Fraction(5, 2), Fraction(1, 3)]
    for _ in range(12):
        k = rng.randint(2, 5)
        f = RationalPoly([1])
        names = []
        for _ in range(k):
            a = rng.choice(choices)
            f = f * quad(a)
            names.append(f"(1 + {a}t + t^2)")
        corpus.append(("".join(names), [f]))
    # chains with several divisors f1 | f2, realized by block-diagonal companions
    corpus.append(("(1 - t + t^2) | (1 - t + t^2)", [quad(-1), quad(-1)]))
    corpus.append(("(1 - t + t^2) | (1 - t + t^2)^2", [quad(-1), quad(-1) * quad(-1)]))
    corpus.append(("(1 + t^2) | (1 + t^2)(1 - 3t + t^2)", [quad(0), quad(0) * quad(-3)]))
    corpus.append(("Phi_5 | Phi_5 Phi_3", [cyclotomic(5), cyclotomic(5) * cyclotomic(3)]))
    return corpus


def block_companion(divisors: Sequence[RationalPoly]) -> QMatrix:
    blocks = [companion_matrix(monic_normalize(d)) for d in divisors]
    n = sum(b.rows for b in blocks)
    m = QMatrix.zeros(n, n)
    rows = m.to_rows()
    k = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                rows[k + i][k + j] = b[i, j]
        k += b.rows
    return QMatrix.from_rows(rows)


def rank_oracle_cases(s: Suite) -> list[VerifyResult]:
    corpus = rank_corpus()
    disagreements = []
    certified = 0
    for label, divisors in corpus:
        formula = center_rank_formula(divisors)
        kernel = center_basis(build_tau_lift(block_companion(divisors))).rank
        if formula is None:
            continue
        certified += 1
        if formula != kernel:
            disagreements.append(f"{label}: formula {formula}, kernel {kernel}")
    ok = len(corpus) >= 30 and not disagreements
    return [
        VerifyResult(
            6,
            "rank formula against kernel rank",
            "0 disagreements on at least 30 inputs",
            f"{len(disagreements)} disagreements; {certified} of {len(corpus)} certified",
            _status(ok),
            "derived",
            notes="; ".join(disagreements),
        )
    ]


# criterion 7 ---------------------------------------------------------------


def lift_cases(s: Suite, samples: int = LIFT_SAMPLES) -> list[VerifyResult]:
    out = []
    base = (s.lift_seed or 0) * 1000 + 1
    for name in s.bundled_names():
        case = f"{name} lift independence"

        def run(n=name, c=case) -> VerifyResult:
            ref = s.knot(n, seed=None).grams
            bad = [
                seed
                for seed in range(base, base + samples)
                if qk_form(s.pd(n), lift_seed=seed, checks=False).grams != ref
            ]
            got = f"{samples - len(bad)} of {samples} random lifts identical"
            return VerifyResult(7, c, f"{samples} of {samples} identical", got, _status(not bad), "derived")

        out.append(_guard(7, case, f"{samples} of {samples} identical", "derived", run))
    return out


# criterion 8 ---------------------------------------------------------------


def _summed(r: QuadraticFormReport) -> QuadraticFormReport:
    return forms_from_display([render_quadratic(r.summed_gram(), r.variables)], r.module_poly, r.t_action)


def mapping_class_cases(s: Suite) -> list[VerifyResult]:
    out = []
    want = monic_normalize(parse_poly(MCG_CHARPOLY))
    for label in MCG_WORDS:
        case = f"{label} characteristic polynomial"
        out.append(
            _guard(8, case, str(want), "reference", lambda l=label, c=case: _value_case(8, c, want, s.mcg(l).extra["char_poly"]))
        )

    def shared() -> VerifyResult:
        a, b = (invariant_factors(s.mcg(l).extra["homology"]) for l in MCG_WORDS)
        return VerifyResult(
            8, "shared rational canonical form", "equal invariant factors", f"{list(map(str, a))} vs {list(map(str, b))}", _status(a == b), "reference"
        )

    out.append(_guard(8, "shared rational canonical form", "equal invariant factors", "reference", shared))

    def summed_f1() -> VerifyResult:
        r = s.mcg("f1")
        mine = _summed(r)
        given = _display_report([MCG_SUMMED_FORM], r)
        cmp = compare_forms(given, mine, height=2)
        w = cmp.unit_witness
        note = f"u = {w.u} ({cmp.unit_witness_source})" if w else "no witness with c = 1"
        return VerifyResult(8, "f1 summed form", MCG_SUMMED_FORM, mine.display[0], _status(w is not None), "reference", "unit substitution", note)

    out.append(_guard(8, "f1 summed form", MCG_SUMMED_FORM, "reference", summed_f1))

    def ratio() -> VerifyResult:
        a, b = s.mcg("f1").summed_gram(), s.mcg("f2").summed_gram()
        c = _common_ratio([b], [a])
        return VerifyResult(
            8, "f2 / f1 summed ratio", str(MCG_RATIO), "not proportional" if c is None else str(c), _status(c == MCG_RATIO), "reference"
        )

    out.append(_guard(8, "f2 / f1 summed ratio", str(MCG_RATIO), "reference", ratio))
    out.append(
        _guard(
            8,
            "square test of the mapping-class scalar",
            "no",
            "reference",
            lambda: _value_case(8, "square test of the mapping-class scalar", "no", scalar_square_test(MCG_RATIO, want)),
        )
    )

    def verdict() -> VerifyResult:
        cmp = compare_forms(_summed(s.mcg("f2")), _summed(s.mcg("f1")), height=2, unit_height=2)
        note = f"first witness c = {cmp.witness.c}, u = {cmp.witness.u}" if cmp.witness else ""
        if cmp.unit_witness is not None:
            note += f"; witness with c = 1: u = {cmp.unit_witness.u} ({cmp.unit_witness_source})"
        return VerifyResult(8, "mapping-class verdict", "inequivalent", cmp.verdict, _status(cmp.verdict == "inequivalent"), "reference", notes=note)

    out.append(_guard(8, "mapping-class verdict", "inequivalent", "reference", verdict))
    for label, knot in MCG_KNOTS.items():
        case = f"{label} against the knot {knot}"
        out.append(_guard(8, case, "summed forms agree with c = 1", "derived", lambda l=label, k=knot, c=case: _knot_mcg_case(s, c, l, k)))
    return out


def _knot_mcg_case(s: Suite, case: str, label: str, knot: str) -> VerifyResult:
    expected = "summed forms agree with c = 1"
    try:
        table = s.table
    except Exception as exc:
        return VerifyResult(8, case, expected, f"error: {exc}", FAIL, "derived")
    if knot not in table:
        return VerifyResult(8, case, expected, "knot not in table", SKIPPED, "derived", notes="supply it with --table")
    cmp = compare_forms(_summed(s.knot(knot)), _summed(s.mcg(label)), height=2)
    w = cmp.unit_witness
    got = f"u = {w.u} ({cmp.unit_witness_source})" if w else cmp.verdict
    return VerifyResult(8, case, expected, got, _status(w is not None), "derived", "unit substitution")


# criterion 9 ---------------------------------------------------------------


def _rand_vec(rng: random.Random, n: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(n))


def _rand_elem(rng: random.Random, m: int) -> Nil2Element:
    return Nil2Element(_rand_vec(rng, m), _rand_vec(rng, comm_dim(m)))


def _group_axioms(rng: random.Random, trials: int = 20) -> bool:
    for _ in range(trials):
        m = rng.randint(2, 5)
        a, b, c = (_rand_elem(rng, m) for _ in range(3))
        e = Nil2Element.identity(m)
        if nil2_mul(nil2_mul(a, b), c) != nil2_mul(a, nil2_mul(b, c)):
            return False
        if nil2_mul(a, e) != a or nil2_mul(e, a) != a or nil2_mul(a, nil2_inv(a)) != e:
            return False
    return True


PROPERTY_POLYS = ["1 - t + t^2", "1 - 3t + t^2", "1 - t + t^2 - t^3 + t^4", "1 - 2t + 3t^2 - 2t^3 + t^4", "2 - 5t + 2t^2"]


def _lift_identities(rng: random.Random, trials: int = 5) -> tuple[bool, bool, bool]:
    """(antisymmetric part rule for E, symmetry of B, tau is a homomorphism) on random data."""
    pp2 = sym = hom = True
    for text in PROPERTY_POLYS:
        t = companion_matrix(monic_normalize(parse_poly(text)))
        m = t.rows
        lift = build_tau_lift(t, random_linear_part(m, rng))
        sym = sym and all(b == b.T for b in lift.B)
        for _ in range(trials):
            x, y = _rand_vec(rng, m), _rand_vec(rng, m)
            pp2 = pp2 and lift.E @ antisym(x, y) == antisym(t @ x, t @ y)
            g, h = _rand_elem(rng, m), _rand_elem(rng, m)
            hom = hom and lift(nil2_mul(g, h)) == nil2_mul(lift(g), lift(h))
    return pp2, sym, hom


def fox_alexander(pd: PDCode) -> RationalPoly:
    """Alexander polynomial as a first minor of the Fox matrix, monic and free of t powers."""
    w = wirtinger(pd)
    if w.arc_count == 1:
        return RationalPoly([1])
    m = alexander_matrix(w)
    rows = m.to_rows()[1:]
    det = PolyMatrix.from_rows(rows).determinant()
    return monic_normalize(strip_t(det))


def property_cases(s: Suite, seed: int = 9) -> list[VerifyResult]:
    rng = random.Random(seed)
    out = [
        _guard(9, "nilpotent group axioms", "hold", "derived", lambda: _value_case(9, "nilpotent group axioms", True, _group_axioms(rng), "derived"))
    ]

    def lift_props() -> list[VerifyResult]:
        pp2, sym, hom = _lift_identities(rng)
        return [
            _value_case(9, "E acts on commutators as T does", True, pp2, "derived"),
            _value_case(9, "B symmetric", True, sym, "derived"),
            _value_case(9, "tau is a homomorphism", True, hom, "derived"),
        ]

    try:
        out.extend(lift_props())
    except Exception as exc:
        out.append(VerifyResult(9, "lift identities", "hold", f"error: {exc}", FAIL, "derived"))
    for name in s.bundled_names():
        case = f"{name} longitude and module properties"

        def run(n=name, c=case) -> VerifyResult:
            r = s.knot(n)
            pd = s.pd(n)
            divisors = alexander_divisors(wirtinger(pd)).divisors
            product = RationalPoly([1])
            for d in divisors:
                product = product * d
            checks = {
                "isometry": r.isometry_ok,
                "homogeneity": r.homogeneous_ok,
                "reciprocity": all(reciprocal_check(d) for d in divisors),
                "nonvanishing at 1 and -1": all(d(1) != 0 and d(-1) != 0 for d in divisors),
                "product equals the Fox minor": monic_normalize(product) == fox_alexander(pd),
            }
            failed = [k for k, v in checks.items() if not v]
            return VerifyResult(9, c, "all hold", "all hold" if not failed else "failed: " + ", ".join(failed), _status(not failed), "derived")

        out.append(_guard(9, case, "all hold", "derived", run))
    return out


# criterion 10 --------------------------------------------------------------


def unknot_cases(s: Suite) -> list[VerifyResult]:
    def report() -> VerifyResult:
        r = qk_form(UNKNOT_PD)
        got = f"divisors {len(r.divisors)}, dimension {r.hk_dimension}, forms {len(r.grams)}"
        ok = not r.divisors and r.hk_dimension == 0 and r.grams == ()
        return VerifyResult(10, "unknot report", "divisors 0, dimension 0, forms 0", got, _status(ok), "derived")

    def exit_code() -> VerifyResult:
        from .cli import main

        with contextlib.redirect_stdout(io.StringIO()):
            code = main(["knot", "--pd", UNKNOT_PD, "--json"])
        return _value_case(10, "unknot exit code", 0, code, "derived")

    return [
        _guard(10, "unknot report", "divisors 0, dimension 0, forms 0", "derived", report),
        _guard(10, "unknot exit code", "0", "derived", exit_code),
    ]


# criterion 11 --------------------------------------------------------------


def nondegeneracy_cases(s: Suite) -> list[VerifyResult]:
    out = []
    for name in s.bundled_names():
        case = f"{name} nondegeneracy"

        def run(n=name, c=case) -> VerifyResult:
            dets = s.knot(n).determinants
            got = ", ".join(str(d) for d in dets)
            return VerifyResult(
                11, c, "every coordinate determinant nonzero", got, _status(all(dets)), "derived", notes="supporting evidence only"
            )

        out.append(_guard(11, case, "every coordinate determinant nonzero", "derived", run))
    return out


CRITERIA: dict[int, Callable[[Suite], list[VerifyResult]]] = {
    1: trefoil_cases,
    2: degree_two_cases,
    3: degree_four_cases,
    4: pretzel_cases,
    5: center_cases,
    6: rank_oracle_cases,
    7: lift_cases,
    8: mapping_class_cases,
    9: property_cases,
    10: unknot_cases,
    11: nondegeneracy_cases,
}

ADVISORY = frozenset({11})


def run_verify(
    lift_seed: int | None = None, table: str | None = None, criteria: Iterable[int] | None = None, suite: Suite | None = None
) -> list[VerifyResult]:
    s = suite or Suite(lift_seed, table)
    out: list[VerifyResult] = []
    for k in sorted(criteria or CRITERIA):
        out.extend(CRITERIA[k](s))
    return out


def criterion_status(results: Sequence[VerifyResult], criterion: int) -> str:
    """fail if any case failed, skipped if all were skipped, else pass."""
    mine = [r for r in results if r.criterion == criterion]
    if any(r.status == FAIL for r in mine):
        return FAIL
    if mine and all(r.status == SKIPPED for r in mine):
        return SKIPPED
    return PASS


def overall_ok(results: Sequence[VerifyResult]) -> bool:
    """No failures outside the advisory criteria."""
    return not any(r.status == FAIL and r.criterion not in ADVISORY for r in results)


__all__ = [
    "ADVISORY",
    "CRITERIA",
    "FAIL",
    "PASS",
    "SKIPPED",
    "Suite",
    "VerifyResult",
    "content_normalized",
    "criterion_status",
    "fox_alexander",
    "overall_ok",
    "rank_corpus",
    "run_verify",
]
