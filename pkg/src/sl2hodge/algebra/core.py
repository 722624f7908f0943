"""Sparse elements of associative algebras given by a monomial product rule.

Every concrete algebra supplies ``mul_mono``: the normal form of the product
of two basis monomials, as a dict monomial -> coefficient.  ``Element`` then
handles linear combinations, and ``TensorAlgebra`` multiplies componentwise
without any Koszul signs.
"""

from __future__ import annotations

from typing import Callable, Hashable, Iterable, Mapping, Sequence

from ..scalars import ONE, ZERO, FieldElement, fe

Mono = Hashable


class AmbientMismatch(TypeError):
    """Raised when elements of two different algebras are combined."""


class Algebra:
    name: str = "algebra"
    one: Mono = ()

    def __init__(self):
        self._cache: dict[tuple[Mono, Mono], dict[Mono, FieldElement]] = {}

    def mul_mono(self, m1: Mono, m2: Mono) -> dict[Mono, FieldElement]:
        key = (m1, m2)
        hit = self._cache.get(key)
        if hit is None:
            hit = self._mul_mono(m1, m2)
            self._cache[key] = hit
        return hit

    def _mul_mono(self, m1: Mono, m2: Mono) -> dict[Mono, FieldElement]:
        raise NotImplementedError

    def mono_key(self, m: Mono):
        return m

    def fmt_mono(self, m: Mono) -> str:
        return str(m)

    def parse_mono(self, text: str) -> "Element":
        raise NotImplementedError(f"{self.name} has no monomial parser")

    # --- element constructors ---------------------------------------------

    def element(self, terms: Mapping[Mono, object] | None = None) -> "Element":
        return Element(self, {m: fe(c) for m, c in (terms or {}).items()})

    def unit(self) -> "Element":
        return Element(self, {self.one: ONE})

    def zero(self) -> "Element":
        return Element(self, {})

    def scalar(self, c) -> "Element":
        return Element(self, {self.one: fe(c)})

    def parse(self, text: str) -> "Element":
        return parse_element(self, text)

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name}>"


class Element:
    __slots__ = ("alg", "terms")

    def __init__(self, alg: Algebra, terms: dict[Mono, FieldElement]):
        self.alg = alg
        self.terms = {m: c for m, c in terms.items() if c}

    def _check(self, other: "Element") -> None:
        if other.alg is not self.alg:
            raise AmbientMismatch(f"cannot combine elements of {self.alg.name} and {other.alg.name}")

    def _lift(self, other) -> "Element":
        if isinstance(other, Element):
            self._check(other)
            return other
        return self.alg.scalar(other)

    def __add__(self, other) -> "Element":
        other = self._lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out[m] + c if m in out else c
        return Element(self.alg, out)

    __radd__ = __add__

    def __neg__(self) -> "Element":
        return Element(self.alg, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Element":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "Element":
        return self._lift(other) - self

    def scale(self, c) -> "Element":
        c = fe(c)
        if not c:
            return Element(self.alg, {})
        return Element(self.alg, {m: c * x for m, x in self.terms.items()})

    def __mul__(self, other) -> "Element":
        if not isinstance(other, Element):
            return self.scale(other)
        self._check(other)
        alg = self.alg
        acc: dict[Mono, FieldElement] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                prod = alg.mul_mono(m1, m2)
                if not prod:
                    continue
                c12 = c1 * c2
                for m, c in prod.items():
                    v = c12 * c
                    acc[m] = acc[m] + v if m in acc else v
        return Element(alg, acc)

    def __rmul__(self, other) -> "Element":
        return self.scale(other)

    def __pow__(self, k: int) -> "Element":
        out = self.alg.unit()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, Element):
            return self.alg is other.alg and self.terms == other.terms
        if isinstance(other, (int, FieldElement)):
            return self == self.alg.scalar(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def support_size(self) -> int:
        return len(self.terms)

    def coefficient(self, m: Mono) -> FieldElement:
        return self.terms.get(m, ZERO)

    def sorted_terms(self) -> list[tuple[Mono, FieldElement]]:
        return sorted(self.terms.items(), key=lambda t: self.alg.mono_key(t[0]))

    def map_coefficients(self, f: Callable[[FieldElement], FieldElement]) -> "Element":
        return Element(self.alg, {m: f(c) for m, c in self.terms.items()})

    def __str__(self) -> str:
        return format_element(self)

    def __repr__(self) -> str:
        return f"<{self.alg.name}: {format_element(self)}>"


def commutator(x: Element, y: Element) -> Element:
    return x * y - y * x


def anticommutator(x: Element, y: Element) -> Element:
    return x * y + y * x


def linear_map(alg_out: Algebra, x: Element, on_mono: Callable[[Mono], Element]) -> Element:
    """Extend a monomial map linearly."""
    out = alg_out.zero()
    for m, c in x.terms.items():
        out = out + on_mono(m).scale(c)
    return out


class TensorAlgebra(Algebra):
    """Componentwise product of several algebras; monomials are tuples."""

    def __init__(self, name: str, factors: Sequence[Algebra],
                 eval_order: Sequence[int] | None = None):
        super().__init__()
        self.name = name
        self.factors = tuple(factors)
        self.one = tuple(f.one for f in self.factors)
        self.eval_order = tuple(eval_order) if eval_order is not None else tuple(range(len(self.factors)))

    def _mul_mono(self, m1, m2):
        parts: list = [None] * len(self.factors)
        for k in self.eval_order:
            prod = self.factors[k].mul_mono(m1[k], m2[k])
            if not prod:
                return {}
            parts[k] = prod
        acc = {(): ONE}
        for prod in parts:
            nxt = {}
            for m, c in acc.items():
                for mf, cf in prod.items():
                    nxt[m + (mf,)] = c * cf
            acc = nxt
        return acc

    def mono_key(self, m):
        return tuple(f.mono_key(x) for f, x in zip(self.factors, m))

    def fmt_mono(self, m) -> str:
        return " ⊗ ".join(f.fmt_mono(x) for f, x in zip(self.factors, m))

    def parse_mono(self, text: str) -> Element:
        pieces = [p.strip() for p in text.split("⊗")]
        if len(pieces) != len(self.factors):
            raise ValueError(f"expected {len(self.factors)} tensor factors in {text!r}")
        return self.tensor(*(f.parse_mono(p) for f, p in zip(self.factors, pieces)))

    def tensor(self, *parts) -> Element:
        """Pure tensor of factor elements (scalars allowed for any slot)."""
        if len(parts) != len(self.factors):
            raise ValueError("wrong number of tensor factors")
        elems = []
        for f, p in zip(self.factors, parts):
            if isinstance(p, Element):
                if p.alg is not f:
                    raise AmbientMismatch(f"factor from {p.alg.name}, expected {f.name}")
                elems.append(p)
            else:
                elems.append(f.scalar(p))
        acc = {(): ONE}
        for e in elems:
            nxt = {}
            for m, c in acc.items():
                for mf, cf in e.terms.items():
                    nxt[m + (mf,)] = c * cf
            acc = nxt
        return Element(self, acc)

    def factor_part(self, x: Element, k: int, fixed: Sequence[Mono]) -> Element:
        """Coefficient of the k-th factor with the other factors fixed to the given monomials."""
        out = {}
        for m, c in x.terms.items():
            if all(m[j] == fixed[j] for j in range(len(m)) if j != k):
                out[m[k]] = out.get(m[k], ZERO) + c
        return Element(self.factors[k], out)


# --- text format -------------------------------------------------------------

def format_element(x: Element) -> str:
    if not x.terms:
        return "0"
    parts = []
    for m, c in x.sorted_terms():
        mono = x.alg.fmt_mono(m)
        if c == ONE:
            parts.append(mono)
        else:
            parts.append(f"({c}) {mono}")
    return " + ".join(parts)


def _split_top(text: str) -> list[str]:
    out, depth, start, i = [], 0, 0, 0
    while i < len(text):
        ch = text[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and text.startswith(" + ", i):
            out.append(text[start:i])
            start = i + 3
            i += 3
            continue
        i += 1
    out.append(text[start:])
    return out


def parse_element(alg: Algebra, text: str) -> Element:
    text = text.strip()
    if text == "0":
        return alg.zero()
    total = alg.zero()
    for term in _split_top(text):
        term = term.strip()
        coef = ONE
        if term.startswith("("):
            close = term.index(")")
            coef = fe(term[1:close])
            term = term[close + 1:].strip()
        total = total + alg.parse_mono(term).scale(coef)
    return total


def sum_elements(alg: Algebra, items: Iterable[Element]) -> Element:
    out = alg.zero()
    for it in items:
        out = out + it
    return out
