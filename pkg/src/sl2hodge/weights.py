"""Truncated weight models of the discrete series D_n^{+/-} and of H_mu.

A model has one basis vector v_k per weight k in a finite window with

    H0 v_k = k v_k,   H+ v_k = v_{k+1},   H- v_k = d_k v_{k-1},

where d_k = k(k-1) + c follows from [H+, H-] = -2 H0.  Columns next to a
truncated end are unreliable (the ladder falls off the window), so checks
only look at columns at least ``margin`` steps away from such an end.
No inverse of pi(E) is ever formed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .linalg import Matrix
from .results import VerificationResult, combine, timed
from .scalars import I, INV_SQRT2, ONE, SQRT2, ZERO, FieldElement, fe

MARGIN = 2


@dataclass
class WeightModel:
    tag: str          # "D+", "D-" or "H"
    param: FieldElement
    weights: list[int]
    H0: Matrix
    Hp: Matrix
    Hm: Matrix
    truncated: tuple[int, ...]  # basis indices that sit at a truncated end
    ladder: list[FieldElement] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.weights)

    @cached_property
    def E(self) -> Matrix:
        return (self.Hm - self.Hp + self.H0.scale(2 * I)).scale(fe("1/4"))

    @cached_property
    def H(self) -> Matrix:
        return (self.Hp + self.Hm).scale((2 * SQRT2 * I).inv())

    @cached_property
    def F(self) -> Matrix:
        return self.E - self.H0.scale(I)

    def interior(self, margin: int = MARGIN) -> list[int]:
        """Basis indices at distance >= margin from every truncated end."""
        return [k for k in range(self.dim) if all(abs(k - t) >= margin for t in self.truncated)]

    @property
    def label(self) -> str:
        if self.tag == "H":
            return f"H_{{{self.param}}}"
        return f"D_{self.param}{self.tag[1]}"

    def casimir_matrix(self) -> Matrix:
        E, H, F = self.E, self.H, self.F
        return (E @ F).scale(2) + H @ H - H.scale(INV_SQRT2)


def _rational(x: FieldElement) -> Fraction:
    if not x.is_rational():
        raise ValueError(f"{x} is not rational")
    return x.a


def build_model(tag: str, param, top: int) -> WeightModel:
    """Truncated model; ``top`` is the top weight N (discrete series) or window radius (H_mu)."""
    param = fe(param)
    if tag in ("D+", "D-"):
        n = _rational(param)
        if n.denominator != 1 or n < 1:
            raise ValueError(f"discrete series parameter must be a positive integer, got {param}")
        n = int(n)
        if top < n + 4:
            raise ValueError(f"top weight {top} must be at least n + 4 = {n + 4}")
        ks = list(range(n, top + 1))
        c = fe(-n * (n - 1))
        truncated = (len(ks) - 1,)
    elif tag == "H":
        mu = _rational(param)
        try:
            root = fe(1 + 8 * mu).sqrt()
        except ValueError:
            root = None
        if root is None or not root.is_rational():
            raise ValueError(f"1 + 8 mu must be the square of a rational, got mu = {param}")
        if 2 * top < 8:
            raise ValueError("window width must be at least 8")
        ks = list(range(-top, top + 1))
        c = fe(-2 * mu)
        truncated = (0, len(ks) - 1)
    else:
        raise ValueError(f"unknown representation tag {tag!r}")

    size = len(ks)
    h0, hp, hm = Matrix.zeros(size, size), Matrix.zeros(size, size), Matrix.zeros(size, size)
    ladder = []
    for j, k in enumerate(ks):
        dk = fe(k * (k - 1)) + c
        ladder.append(dk)
        h0.rows[j][j] = fe(k)
        if j + 1 < size:
            hp.rows[j + 1][j] = ONE
        if j >= 1:
            hm.rows[j - 1][j] = dk
    if tag == "D-":
        # weight mirror: H0 -> -H0 and the two ladder operators swap
        h0, hp, hm = h0.scale(-1), hm, hp
        ks = [-k for k in ks]
    model = WeightModel(tag, param, ks, h0, hp, hm, truncated, ladder)
    _assert_relations(model)
    return model


def _columns_residual(m: Matrix, cols: list[int]) -> int:
    return sum(1 for r in range(m.nrows) for c in cols if m.rows[r][c])


def _assert_relations(m: WeightModel) -> None:
    cols = m.interior(1)
    for lhs, rhs in ((m.H0 @ m.Hp - m.Hp @ m.H0, m.Hp),
                     (m.H0 @ m.Hm - m.Hm @ m.H0, -m.Hm),
                     (m.Hp @ m.Hm - m.Hm @ m.Hp, m.H0.scale(-2))):
        if _columns_residual(lhs - rhs, cols):
            raise AssertionError(f"ladder relations fail in {m.label}")


def bracket_residual(m: WeightModel) -> int:
    E, H, F = m.E, m.H, m.F
    cols = m.interior(1)
    out = 0
    for a, b, rhs in ((H, E, E.scale(INV_SQRT2)), (H, F, F.scale(-INV_SQRT2)),
                      (E, F, H.scale(INV_SQRT2))):
        out += _columns_residual(a @ b - b @ a - rhs, cols)
    return out


def casimir_value(m: WeightModel) -> FieldElement:
    """Expected Casimir scalar: n(n-1)/2 on D_n, mu on H_mu."""
    if m.tag == "H":
        return m.param
    n = m.param
    return n * (n - 1) * fe("1/2")


def casimir_check(m: WeightModel) -> VerificationResult:
    def compute():
        omega = m.casimir_matrix()
        cols = m.interior()
        scalar = omega.rows[cols[0]][cols[0]]
        bad = _columns_residual(omega - Matrix.scalar(m.dim, scalar), cols)
        bad += 0 if scalar == casimir_value(m) else 1
        return bad, {"scalar": str(scalar)}
    return timed(f"weights.{m.label}.casimir", compute)


# --- invariant functionals -----------------------------------------------------

def _normalize(row: list[FieldElement]) -> list[FieldElement]:
    lead = next((x for x in row if x), None)
    if lead is None:
        return row
    inv = lead.inv()
    return [x * inv for x in row]


def functional_space(m: WeightModel) -> list[list[FieldElement]]:
    """Row vectors phi with phi . pi(E) = 0 on every exact column."""
    cols = m.interior(1)
    sub = m.E.submatrix(list(range(m.dim)), cols)
    return [_normalize(v) for v in sub.T.nullspace()]


def _apply_row(phi: list[FieldElement], mat: Matrix) -> list[FieldElement]:
    return mat.T.apply(phi)


def invariant_functionals(m: WeightModel) -> list[tuple[list[FieldElement], FieldElement]]:
    """Eigen-functionals phi with phi . pi(H) = eps phi on the margin-2 window."""
    space = functional_space(m)
    window = m.interior(MARGIN)
    if not space:
        return []
    images = [_apply_row(phi, m.H) for phi in space]
    basis = Matrix.from_columns([[phi[k] for k in window] for phi in space])
    if basis.rank() < len(space):
        raise ValueError("window too small to separate the functionals")
    # matrix of pi(H) acting on the functional space, in the basis ``space``
    action = basis.solve(Matrix.from_columns([[img[k] for k in window] for img in images]))
    if action is None:
        raise ArithmeticError("phi . pi(H) leaves the functional space")
    out = []
    for eps in _eigenvalues(action):
        shifted = action - Matrix.scalar(action.nrows, eps)
        for coeffs in shifted.nullspace():
            phi = [ZERO] * m.dim
            for c, vec in zip(coeffs, space):
                phi = [x + c * y for x, y in zip(phi, vec)]
            out.append((_normalize(phi), eps))
    return out


def _eigenvalues(a: Matrix) -> list[FieldElement]:
    if a.nrows == 1:
        return [a.rows[0][0]]
    if a.nrows == 2:
        tr = a.rows[0][0] + a.rows[1][1]
        disc = tr * tr - a.det() * 4
        try:
            root = disc.sqrt()
        except ValueError:
            raise ArithmeticError(f"eigenvalues need sqrt({disc}), outside the field") from None
        vals = [(tr + root) / 2, (tr - root) / 2]
        return [vals[0]] if root.is_zero() else vals
    raise NotImplementedError("eigenvalues of matrices larger than 2x2")


def expected_eigenvalues(m: WeightModel) -> list[FieldElement]:
    if m.tag == "H":
        root = fe(1 + 8 * _rational(m.param)).sqrt()
        return [(1 + root) * INV_SQRT2 / 2, (1 - root) * INV_SQRT2 / 2]
    return [m.param * INV_SQRT2]


def functional_check(m: WeightModel) -> VerificationResult:
    def compute():
        found = invariant_functionals(m)
        window = m.interior(MARGIN)
        bad = 0
        for phi, eps in found:
            img = _apply_row(phi, m.H)
            bad += sum(1 for k in window if img[k] != eps * phi[k])
        got = sorted((str(e) for _, e in found))
        want = sorted(str(e) for e in expected_eigenvalues(m))
        bad += 0 if got == want else 1
        expected_dim = 2 if m.tag == "H" else 1
        bad += abs(len(functional_space(m)) - expected_dim)
        return bad, {"eigenvalues": got, "dimension": len(functional_space(m))}
    return timed(f"weights.{m.label}.invariant_functionals", compute)


def recurrence_residual(m: WeightModel, phi: list[FieldElement], eps: FieldElement | None = None) -> int:
    """phi_{k+1} = d_k phi_{k-1} + 2ik phi_k on the exact window (and the eigen form when eps is given)."""
    bad = 0
    for j in m.interior(1):
        k = m.weights[j]
        prev = phi[j - 1] if j >= 1 else ZERO
        nxt = phi[j + 1] if j + 1 < m.dim else ZERO
        dk = m.ladder[j]
        if m.tag == "D-":
            continue
        if nxt != dk * prev + 2 * I * fe(k) * phi[j]:
            bad += 1
        if eps is not None and j in m.interior(MARGIN):
            if nxt + dk * prev != 2 * SQRT2 * I * eps * phi[j]:
                bad += 1
    return bad


# --- lowest weight vector ------------------------------------------------------

def lowest_weight_vector(m: WeightModel) -> list[FieldElement]:
    if m.tag not in ("D+", "D-"):
        raise ValueError("only discrete series models have an extreme weight vector")
    v = [ZERO] * m.dim
    v[0] = ONE
    return v


def sign_of(m: WeightModel) -> int | None:
    """s in {+1, -1} with (pi(H) - n/sqrt2) h = pi(E)(s sqrt2 i h), or None."""
    h = lowest_weight_vector(m)
    lhs = (m.H - Matrix.scalar(m.dim, m.param * INV_SQRT2)).apply(h)
    eh = m.E.apply(h)
    for s in (1, -1):
        rhs = [x * fe(s) * SQRT2 * I for x in eh]
        if lhs == rhs:
            return s
    return None


def lowest_weight_checks(m: WeightModel) -> VerificationResult:
    h = lowest_weight_vector(m)
    killer = m.Hm if m.tag == "D+" else m.Hp

    def annihilated():
        return sum(1 for x in killer.apply(h) if x)

    def sign_relation():
        s = sign_of(m)
        return (0 if s is not None else 1), {"sign": s}

    return combine(f"weights.{m.label}.lowest_weight", [
        timed(f"weights.{m.label}.lowest_weight.annihilated", annihilated),
        timed(f"weights.{m.label}.lowest_weight.sign_relation", sign_relation),
    ])


def injectivity_check(m: WeightModel) -> VerificationResult:
    def compute():
        cols = m.interior(1)
        sub = m.E.submatrix(list(range(m.dim)), cols)
        return len(cols) - sub.rank()
    return timed(f"weights.{m.label}.raising_injective", compute)


# --- truncation independence -------------------------------------------------------

def summary(m: WeightModel) -> dict:
    omega = m.casimir_matrix()
    c = m.interior()[0]
    out = {"casimir": omega.rows[c][c]}
    funcs = invariant_functionals(m)
    out["functionals"] = {str(eps): dict(zip(m.weights, phi)) for phi, eps in funcs}
    if m.tag != "H":
        out["sign"] = sign_of(m)
    return out


def window_stability(small: WeightModel, large: WeightModel) -> VerificationResult:
    def compute():
        if (small.tag, small.param) != (large.tag, large.param):
            raise ValueError("window stability compares two truncations of the same representation")
        a, b = summary(small), summary(large)
        common = [small.weights[j] for j in small.interior(MARGIN)]
        bad = 0 if a["casimir"] == b["casimir"] else 1
        bad += 0 if a.get("sign") == b.get("sign") else 1
        if set(a["functionals"]) != set(b["functionals"]):
            bad += 1
        else:
            for eps, fa in a["functionals"].items():
                fb = b["functionals"][eps]
                # rescale so both agree at the first common weight where they are nonzero
                w0 = next((w for w in common if fa[w]), None)
                if w0 is None:
                    bad += 1
                    continue
                ratio = fb[w0] / fa[w0]
                bad += sum(1 for w in common if fb[w] != ratio * fa[w])
        return bad, {"common_weights": [min(common), max(common)]}
    return timed(f"weights.{small.label}.window_stability", compute)


def parse_rep(text: str) -> tuple[str, FieldElement]:
    """'D1+' -> ('D+', 1); 'D2-' -> ('D-', 2); 'H-1/9' -> ('H', -1/9)."""
    text = text.strip()
    m = re.fullmatch(r"D(\d+)([+-])", text)
    if m:
        return f"D{m.group(2)}", fe(int(m.group(1)))
    if text.startswith("H"):
        return "H", fe(text[1:].strip("_{}") or "0")
    raise ValueError(f"unknown representation {text!r}; use e.g. D1+, D2-, H-1/9")


def model_report(tag: str, param, top: int) -> list[VerificationResult]:
    m = build_model(tag, param, top)
    bigger = build_model(tag, param, top + 5)
    results = [
        timed(f"weights.{m.label}.brackets", lambda: bracket_residual(m)),
        casimir_check(m),
        functional_check(m),
        injectivity_check(m),
        window_stability(m, bigger),
    ]
    if tag != "H":
        results.extend(lowest_weight_checks(m).flatten())
    return sorted(results, key=lambda r: r.name)


__all__ = [
    "WeightModel", "build_model", "casimir_check", "casimir_value", "invariant_functionals",
    "functional_space", "functional_check", "lowest_weight_checks", "lowest_weight_vector",
    "sign_of", "window_stability", "injectivity_check", "bracket_residual", "recurrence_residual",
    "expected_eigenvalues", "parse_rep", "model_report", "MARGIN",
]
