"""Operator calculus on a discrete series representation as a rewrite system.

Words are products of operator letters on the smooth vectors of D_n^{+/-}:

========  ==================================================
``PH``    pi(H)
``PE``    pi(E)
``S``     pi(E)^{-1} (pi(H) + nu)
``T``     pi(E)^{-1} (1 - phi h)
``Kh``    the rank-one map f -> phi(f) h
``KEh``   the rank-one map f -> phi(f) pi(E) h
``W``     the product T pi(H), kept as an opaque letter
========  ==================================================

Two-letter rules are applied at the leftmost match until none applies.
Each application lowers the pair (number of PH/PE letters standing before
an S/T/Kh letter, counted per pair, then word length), so reduction stops.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .algebra.core import Algebra, Element, TensorAlgebra, anticommutator
from .algebra.standard import an_adjoint_quotient, clifford_an, dstar_an
from .results import VerificationResult, combine, timed
from .scalars import I, INV_SQRT2, ONE, SQRT2, FieldElement, fe

LETTERS = ("PH", "PE", "S", "T", "Kh", "KEh", "W")
_LOW = {"PH", "PE"}
_HIGH = {"S", "T", "Kh"}

Word = tuple[str, ...]


class OutsideFragmentError(RuntimeError):
    """A product the rule set deliberately does not cover was generated."""


@dataclass(frozen=True)
class Rule:
    name: str
    lhs: tuple[str, str]
    rhs: tuple[tuple[FieldElement, Word], ...]


@dataclass(frozen=True)
class Step:
    word: Word
    rule: str
    position: int
    result: tuple[tuple[FieldElement, Word], ...]

    def __str__(self) -> str:
        res = " + ".join(f"({c}) {' '.join(w) or '1'}" for c, w in self.result) or "0"
        return f"{' '.join(self.word)} --{self.rule}@{self.position}--> {res}"


def measure(word: Sequence[str]) -> tuple[int, int]:
    inversions, low_seen = 0, 0
    for letter in word:
        if letter in _LOW:
            low_seen += 1
        elif letter in _HIGH:
            inversions += low_seen
    return inversions, len(word)


def _rules(sign: int, n: int, fragment: str) -> dict[tuple[str, str], Rule]:
    r2 = INV_SQRT2
    nu = fe(-n) * INV_SQRT2
    si = fe(sign) * SQRT2 * I
    table = [
        ("R1", ("PH", "S"), [(ONE, ("S", "PH")), (-r2, ("S",))]),
        ("R2", ("PE", "S"), [(ONE, ("PH",)), (nu, ())]),
        ("R3", ("S", "PE"), [(ONE, ("PH",)), (nu + r2, ())]),
    ]
    if fragment == "full":
        if n != 1:
            raise ValueError("the full operator fragment is only set up for n = 1")
        table += [
            ("R4", ("PH", "T"), [(ONE, ("W",)), (-si, ("Kh",)), (-r2, ("T",))]),
            ("R5", ("PE", "T"), [(ONE, ()), (-ONE, ("Kh",))]),
            ("R6", ("T", "PE"), [(ONE, ())]),
            ("R7", ("T", "PH"), [(ONE, ("W",))]),
            ("R8", ("S", "Kh"), [(si, ("Kh",))]),
            ("R9", ("T", "Kh"), []),
            ("R10", ("Kh", "PE"), []),
            ("R11", ("Kh", "PH"), [(r2, ("Kh",))]),
            ("R12", ("PE", "Kh"), [(ONE, ("KEh",))]),
            ("R13", ("PH", "Kh"), [(r2, ("Kh",)), (si, ("KEh",))]),
            ("R14a", ("Kh", "Kh"), [(ONE, ("Kh",))]),
            ("R14b", ("Kh", "KEh"), []),
            ("R14c", ("KEh", "Kh"), [(ONE, ("KEh",))]),
            ("R14d", ("KEh", "PE"), []),
            ("R14e", ("KEh", "PH"), [(r2, ("KEh",))]),
        ]
    elif fragment != "hodge2":
        raise ValueError(f"unknown fragment {fragment!r}")
    return {lhs: Rule(name, lhs, tuple((fe(c), w) for c, w in rhs if fe(c))) for name, lhs, rhs in table}


_FORBIDDEN = {("S", "KEh"), ("T", "KEh")}


class OperatorWords(Algebra):
    """Words in the operator letters, multiplied by concatenation then reduced."""

    def __init__(self, sign: int = 1, n: int = 1, fragment: str = "full", check_measure: bool = True):
        super().__init__()
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        self.sign, self.n, self.fragment = sign, n, fragment
        self.name = f"End(D_{n}{'+' if sign > 0 else '-'})"
        self.one = ()
        self.rules = _rules(sign, n, fragment)
        self.check_measure = check_measure
        self.transcript: list[Step] | None = None
        self._normal_cache: dict[Word, dict[Word, FieldElement]] = {}

    # --- reduction ------------------------------------------------------

    def redex(self, word: Word) -> tuple[int, Rule] | None:
        for i in range(len(word) - 1):
            pair = (word[i], word[i + 1])
            if pair in _FORBIDDEN:
                raise OutsideFragmentError(f"product {' '.join(pair)} is outside the verified fragment")
            rule = self.rules.get(pair)
            if rule is not None:
                return i, rule
        return None

    def step(self, word: Word) -> Step | None:
        hit = self.redex(word)
        if hit is None:
            return None
        i, rule = hit
        result = tuple((c, word[:i] + w + word[i + 2:]) for c, w in rule.rhs)
        if self.check_measure:
            before = measure(word)
            for _, w in result:
                assert measure(w) < before, f"{rule.name} does not lower the measure on {word}"
        return Step(word, rule.name, i, result)

    def normal(self, word: Word) -> dict[Word, FieldElement]:
        hit = self._normal_cache.get(word)
        if hit is not None:
            return hit
        st = self.step(word)
        if st is None:
            out = {word: ONE}
        else:
            if self.transcript is not None:
                self.transcript.append(st)
            out = {}
            for c, w in st.result:
                for ww, cc in self.normal(w).items():
                    out[ww] = out.get(ww, fe(0)) + c * cc
            out = {w: c for w, c in out.items() if c}
        self._normal_cache[word] = out
        return out

    def _mul_mono(self, m1, m2):
        return self.normal(m1 + m2)

    def start_trace(self) -> None:
        """Clear caches and record every rule application from now on."""
        self._normal_cache.clear()
        self._cache.clear()
        self.transcript = []

    def stop_trace(self) -> list[Step]:
        out, self.transcript = self.transcript or [], None
        return out

    # --- text -------------------------------------------------------------

    def mono_key(self, m):
        return (len(m), tuple(LETTERS.index(x) for x in m))

    def fmt_mono(self, m) -> str:
        return " ".join(m) if m else "1"

    def parse_mono(self, text: str) -> Element:
        text = text.strip()
        if text in ("", "1", "id"):
            return self.unit()
        letters = tuple(text.split())
        for x in letters:
            if x not in LETTERS:
                raise ValueError(f"unknown operator letter {x!r}")
        return self.word(letters)

    def word(self, letters: Iterable[str]) -> Element:
        return Element(self, dict(self.normal(tuple(letters))))

    def __getitem__(self, name: str) -> Element:
        return self.word((name,))


def replay(words: OperatorWords, transcript: Sequence[Step]) -> int:
    """Re-derive each recorded step; returns the number of mismatching steps."""
    bad = 0
    for st in transcript:
        again = words.step(st.word)
        if again is None or again.rule != st.rule or again.position != st.position or again.result != st.result:
            bad += 1
    return bad


# --- the operators of the discrete series complex ----------------------------

@lru_cache(maxsize=None)
def operator_ambient(sign: int) -> TensorAlgebra:
    words = OperatorWords(sign)
    # Clifford and quotient factors first: their products often vanish
    return TensorAlgebra(f"A[D1{'+' if sign > 0 else '-'}]",
                         (clifford_an(), words, an_adjoint_quotient()), eval_order=(0, 2, 1))


def d1_elements(sign: int) -> dict[str, Element]:
    amb = operator_ambient(sign)
    cl, w, q = amb.factors
    t = amb.tensor
    ds = dstar_an()
    dst = cl.transpose(ds)
    d = (t(ds, 1, 1) + t(cl["θ_H"], w["PH"], 1) + t(cl["θ_H"], 1, q["H"])
         + t(cl["θ_E"], w["PE"], 1) + t(cl["θ_E"], 1, q["E"]))
    delta = (t(dst, w["T"], q["E"]).scale(2)
             + t(cl["H"], 1, q["H"]).scale(2)
             - t(cl["E"], w["S"], q["H"]).scale(2)
             + t(cl["E"], w["T"], q.unit() - q["H"].scale(SQRT2))
             + t(cl["E"], w.word(("S", "T")), q["E"]).scale(SQRT2))
    si = fe(sign) * SQRT2 * I
    two_si = fe(2 * sign) * I
    kh = w["Kh"]
    proj = (t((cl["θ_E"] + cl["θ_H"].scale(si)) * cl["E"], kh,
              q.unit() - q["H"].scale(SQRT2) + q["E"].scale(two_si))
            + t(cl["θ_H"] * cl["θ_E"] * cl["H"] * cl["E"], kh, q["E"].scale(two_si)))
    return {"d": d, "delta": delta, "proj": proj}


def _w_part(x: Element) -> Element:
    return Element(x.alg, {m: c for m, c in x.terms.items() if "W" in m[1]})


def verify_d1_hodge(sign: int) -> VerificationResult:
    label = "plus" if sign > 0 else "minus"

    def compute():
        e = d1_elements(sign)
        amb = e["d"].alg
        dd, dl = e["d"] * e["delta"], e["delta"] * e["d"]
        residual = dd + dl - (amb.unit() - e["proj"])
        w_left = _w_part(dd)
        w_right = _w_part(dl)
        return residual, {
            "w_terms_in_d_delta": w_left.support_size(),
            "w_terms_in_delta_d": w_right.support_size(),
            "w_terms_after_sum": _w_part(dd + dl).support_size(),
        }

    return timed(f"d1{label}.hodge", compute)


def verify_d1_projection(sign: int) -> VerificationResult:
    label = "plus" if sign > 0 else "minus"
    e = d1_elements(sign)
    p, d, delta = e["proj"], e["d"], e["delta"]
    q = an_adjoint_quotient()
    two_si = fe(2 * sign) * I
    parts = [
        timed(f"d1{label}.projection.idempotent", lambda: p * p - p),
        timed(f"d1{label}.projection.kills_differential_right", lambda: p * d),
        timed(f"d1{label}.projection.kills_codifferential_right", lambda: p * delta),
        timed(f"d1{label}.projection.kills_differential_left", lambda: d * p),
        timed(f"d1{label}.projection.kills_codifferential_left", lambda: delta * p),
        timed(f"d1{label}.projection.quotient_factor_vanishes",
              lambda: (q.unit() - q["H"].scale(SQRT2)) * q["E"].scale(two_si)),
    ]
    return combine(f"d1{label}.projection", parts)


def verify_d1_codifferential_square(sign: int) -> VerificationResult:
    label = "plus" if sign > 0 else "minus"
    return timed(f"d1{label}.codifferential.square", lambda: d1_elements(sign)["delta"] ** 2)


# --- twisted complex for general n ----------------------------------------

@lru_cache(maxsize=None)
def _hodge2_ambient(n: int) -> TensorAlgebra:
    return TensorAlgebra(f"A[D{n}]", (clifford_an(), OperatorWords(1, n, fragment="hodge2")))


def hodge2_scalar(lam, n: int) -> Element:
    """d delta + delta d on C*(an; D_n (x) C_lam), for the inverse-free pair (d, delta)."""
    amb = _hodge2_ambient(n)
    cl, w = amb.factors
    lam = fe(lam)
    d = (amb.tensor(dstar_an(), 1) + amb.tensor(cl["θ_H"], w["PH"] + lam)
         + amb.tensor(cl["θ_E"], w["PE"]))
    delta = amb.tensor(cl["H"], 1) - amb.tensor(cl["E"], w["S"])
    return anticommutator(d, delta)


def hodge2_expected(lam, n: int) -> FieldElement:
    return fe(lam) - fe(1 - n) * INV_SQRT2


def hodge2_symbolic(lam, n: int) -> VerificationResult:
    """Check that d delta + delta d is the scalar lam - (1-n)/sqrt2.

    Both sides are affine in lam, so agreement at lam and at lam + 1
    settles every value on the line through them.
    """
    lam = fe(lam)

    def compute():
        out = None
        for shift in (0, 1):
            value = lam + shift
            got = hodge2_scalar(value, n)
            res = got - got.alg.scalar(hodge2_expected(value, n))
            out = res if out is None else out + res
        return out, {"scalar": str(hodge2_expected(lam, n))}

    return timed(f"twisted_hodge[n={n},lambda={lam}]", compute)


def run_rewrite_suite(include_square: bool = True) -> list[VerificationResult]:
    results = []
    for sign in (1, -1):
        results.append(verify_d1_hodge(sign))
        results.extend(verify_d1_projection(sign).flatten())
        if include_square:
            results.append(verify_d1_codifferential_square(sign))
    for lam, n in ((0, 1), (0, 2), ("1/2*r2", 1), (0, 3), ("1/3", 4)):
        results.append(hodge2_symbolic(lam, n))
    return sorted(results, key=lambda r: r.name)


def trace_d1_hodge(sign: int) -> tuple[list[Step], int]:
    """Transcript of every reduction needed for the main identity, and its replay mismatch count."""
    amb = operator_ambient(sign)
    words = amb.factors[1]
    amb._cache.clear()
    words.start_trace()
    try:
        e = d1_elements(sign)
        _ = e["d"] * e["delta"] + e["delta"] * e["d"]
    finally:
        steps = words.stop_trace()
    return steps, replay(words, steps)
