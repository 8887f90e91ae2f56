"""Homogeneous polynomials, diagonal vector fields and their weights.

A polynomial is stored sparsely as a map from exponent vectors to complex
coefficients.  A diagonal field ``sum_i c_i Z_i d/dZ_i`` acts on the monomial
``Z^a`` by multiplication with ``<a, c>``, so it is tangent to ``F = 0``
exactly when this number is the same for every monomial of ``F``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np
from scipy.linalg import null_space

from .errors import (
    EmptyPolynomial,
    InputError,
    MalformedInput,
    NotHomogeneous,
    NotTangent,
    UnknownVariable,
)

FIELD_SUM_TOL = 1e-12
TANGENCY_TOL = 1e-9
NULLSPACE_RCOND = 1e-10

_NUM = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
# "a+bi" written without parentheses; only accepted in front of a factor.
_BARE_COMPLEX = re.compile(rf"({_NUM})([+-])({_NUM})?i(?=\*|Z|$)")
_IMAG = re.compile(rf"({_NUM})?i")
_REAL = re.compile(_NUM)
_VAR = re.compile(r"Z(\d+)(?:(?:\^|\*\*)(\d+))?")


def parse_complex(text: str) -> complex:
    """Parse ``a``, ``bi``, ``a+bi`` or ``a-bi`` (whitespace ignored)."""
    t = re.sub(r"\s+", "", text)
    if t.startswith("(") and t.endswith(")"):
        t = t[1:-1]
    if not t or "j" in t or not re.fullmatch(r"[0-9eE.+\-i]+", t):
        raise MalformedInput(f"bad complex literal {text!r}")
    if t.endswith("i"):
        body = t[:-1]
        # a bare "i" or "-i" has an implied unit coefficient
        if body == "" or body[-1] in "+-":
            body += "1"
        t = body + "j"
    try:
        value = complex(t)
    except ValueError:
        raise MalformedInput(f"bad complex literal {text!r}") from None
    if not np.isfinite(value.real) or not np.isfinite(value.imag):
        raise MalformedInput(f"non-finite literal {text!r}")
    return value


def format_complex(z: complex) -> str:
    """Inverse of :func:`parse_complex`; round-trips doubles exactly."""
    z = complex(z)
    if z.imag == 0:
        return repr(z.real)
    sign = "-" if np.signbit(z.imag) else "+"
    return f"{z.real!r}{sign}{abs(z.imag)!r}i"


def parse_vector(text: str) -> np.ndarray:
    """Comma separated complex literals, e.g. ``"1,-1,0.5+2i"``."""
    parts = [p for p in text.split(",")]
    if not text.strip() or any(not p.strip() for p in parts):
        raise MalformedInput(f"bad vector {text!r}")
    values = [parse_complex(p) for p in parts]
    if all(v.imag == 0 for v in values):
        return np.array([v.real for v in values])
    return np.array(values, dtype=complex)


@dataclass(frozen=True)
class HomogeneousPolynomial:
    """Sparse homogeneous polynomial in ``Z0..Zn``.

    ``terms`` is a tuple of ``(exponent_tuple, coefficient)`` pairs sorted in
    descending lexicographic order of the exponents.
    """

    n: int
    terms: tuple
    degree: int

    def __post_init__(self):
        if self.n < 2:
            raise InputError("ambient dimension n must be >= 2")
        if not self.terms:
            raise EmptyPolynomial("polynomial has no nonzero terms")
        seen = set()
        for exps, coeff in self.terms:
            if len(exps) != self.n + 1:
                raise InputError(f"exponent vector {exps} has wrong length")
            if any(e < 0 for e in exps):
                raise InputError(f"negative exponent in {exps}")
            if sum(exps) != self.degree:
                raise NotHomogeneous(
                    f"monomial {exps} has degree {sum(exps)}, expected {self.degree}")
            if coeff == 0:
                raise InputError("zero coefficient stored")
            if exps in seen:
                raise InputError(f"duplicate exponent {exps}")
            seen.add(exps)
        if self.degree < 1:
            raise NotHomogeneous("degree must be >= 1")

    @classmethod
    def from_terms(cls, n: int, terms: Mapping | Iterable) -> "HomogeneousPolynomial":
        """Merge like terms, drop zeros and infer the degree."""
        items = terms.items() if isinstance(terms, Mapping) else terms
        merged: dict[tuple, complex] = {}
        for exps, coeff in items:
            exps = tuple(int(e) for e in exps)
            merged[exps] = merged.get(exps, 0) + complex(coeff)
        merged = {e: c for e, c in merged.items() if c != 0}
        if not merged:
            raise EmptyPolynomial("polynomial has no nonzero terms")
        degrees = {sum(e) for e in merged}
        if len(degrees) != 1:
            raise NotHomogeneous(f"mixed total degrees {sorted(degrees)}")
        ordered = tuple(sorted(merged.items(), reverse=True))
        return cls(n=n, terms=ordered, degree=degrees.pop())

    @property
    def exponents(self) -> np.ndarray:
        return np.array([e for e, _ in self.terms], dtype=float)

    @property
    def coefficients(self) -> np.ndarray:
        return np.array([c for _, c in self.terms], dtype=complex)

    def term_map(self) -> dict:
        return dict(self.terms)

    def permuted(self, perm: Sequence[int]) -> "HomogeneousPolynomial":
        """Rename variables so that new ``Z_i`` is old ``Z_{perm[i]}``."""
        return HomogeneousPolynomial.from_terms(
            self.n, {tuple(e[p] for p in perm): c for e, c in self.terms})

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "terms": [{"exps": list(e), "re": c.real, "im": c.imag}
                      for e, c in self.terms],
        }

    def __str__(self) -> str:
        out = []
        for exps, coeff in self.terms:
            factors = [f"Z{i}" if e == 1 else f"Z{i}^{e}"
                       for i, e in enumerate(exps) if e]
            if coeff.imag != 0:
                sign, head = "+", f"({format_complex(coeff)})"
            else:
                sign = "-" if np.signbit(coeff.real) else "+"
                mag = abs(coeff.real)
                head = "" if mag == 1.0 else repr(mag)
            body = "*".join(([head] if head else []) + factors)
            out.append((sign, body))
        text = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sign, body in out[1:]:
            text += f" {sign} {body}"
        return text


def _parse_term(term: str, n: int) -> tuple[tuple, complex]:
    pos = 0
    coeff = complex(1)
    exps = [0] * (n + 1)
    first = True
    while pos < len(term):
        if not first:
            if term[pos] == "*" and not term.startswith("**", pos):
                pos += 1
            if pos >= len(term):
                raise MalformedInput(f"dangling '*' in term {term!r}")
        first = False
        if term[pos] == "(":
            close = term.find(")", pos)
            if close < 0:
                raise MalformedInput(f"unbalanced parenthesis in {term!r}")
            coeff *= parse_complex(term[pos:close + 1])
            pos = close + 1
            continue
        m = _VAR.match(term, pos)
        if m:
            idx = int(m.group(1))
            if idx > n:
                raise UnknownVariable(f"Z{idx} is not a coordinate of CP^{n}")
            exps[idx] += int(m.group(2)) if m.group(2) is not None else 1
            pos = m.end()
            continue
        for pattern in (_BARE_COMPLEX, _IMAG, _REAL):
            m = pattern.match(term, pos)
            if m:
                coeff *= parse_complex(m.group(0))
                pos = m.end()
                break
        else:
            raise MalformedInput(f"unexpected {term[pos:]!r} in term {term!r}")
    return tuple(exps), coeff


def _split_terms(text: str) -> list[tuple[int, str]]:
    """Split on top-level +/- signs, keeping "a+bi" literals and exponents intact."""
    terms = []
    sign = 1
    start = 0
    depth = 0
    i = 0
    if text and text[0] in "+-":
        sign = -1 if text[0] == "-" else 1
        start = i = 1
    while i < len(text):
        ch = text[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and i > start:
            prev = text[i - 1]
            if prev in "eE" and i >= 2 and (text[i - 2].isdigit() or text[i - 2] == "."):
                i += 1
                continue
            m = _BARE_COMPLEX.match(text, start)
            if m and m.start(2) == i:
                i = m.end()
                continue
            terms.append((sign, text[start:i]))
            sign = -1 if ch == "-" else 1
            start = i + 1
        i += 1
    terms.append((sign, text[start:]))
    return terms


def parse_polynomial(text: str, n: int | None = None) -> HomogeneousPolynomial:
    """Parse ``"c * Z0^e0 * Z1^e1 + ..."`` or the JSON form.

    ``n`` defaults to the largest variable index that occurs.  The JSON form
    ``{"n": 3, "terms": [{"exps": [...], "re": 1.0, "im": 0.0}, ...]}``
    carries its own ``n``.
    """
    stripped = text.strip()
    if stripped.startswith("{"):
        return _parse_json(stripped, n)
    compact = re.sub(r"\s+", "", text)
    if not compact:
        raise EmptyPolynomial("empty polynomial text")
    if n is None:
        indices = [int(i) for i in re.findall(r"Z(\d+)", compact)]
        if not indices:
            raise MalformedInput("no variables Z0..Zn found")
        n = max(indices)
    if n < 2:
        raise InputError("ambient dimension n must be >= 2")
    terms = []
    for sign, body in _split_terms(compact):
        if not body:
            raise MalformedInput(f"empty term in {text!r}")
        exps, coeff = _parse_term(body, n)
        terms.append((exps, sign * coeff))
    return HomogeneousPolynomial.from_terms(n, terms)


def _parse_json(text: str, n: int | None) -> HomogeneousPolynomial:
    try:
        data = json.loads(text)
        dim = int(data["n"])
        raw = [(t["exps"], complex(t.get("re", 0.0), t.get("im", 0.0)))
               for t in data["terms"]]
    except (ValueError, KeyError, TypeError) as exc:
        raise MalformedInput(f"bad JSON polynomial: {exc}") from None
    if n is not None and n != dim:
        raise InputError(f"JSON says n={dim} but n={n} was requested")
    for exps, _ in raw:
        if len(exps) != dim + 1:
            raise UnknownVariable(f"exponent vector {exps} needs length {dim + 1}")
    return HomogeneousPolynomial.from_terms(dim, raw)


@dataclass(frozen=True, eq=False)
class DiagonalField:
    """Coefficients of ``sum_i c_i Z_i d/dZ_i`` with ``sum_i c_i = 0``."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs)
        if c.ndim != 1 or c.size < 1:
            raise InputError("field coefficients must be a non-empty vector")
        if not np.iscomplexobj(c):
            c = c.astype(float)
        elif np.all(c.imag == 0):
            c = c.real.copy()
        if not np.all(np.isfinite(c)):
            raise InputError("field coefficients must be finite")
        scale = np.max(np.abs(c))
        if scale > 0 and abs(np.sum(c)) > FIELD_SUM_TOL * scale:
            raise InputError(
                f"field coefficients sum to {np.sum(c)}; use normalize_field")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def n(self) -> int:
        return self.coeffs.size - 1

    @property
    def is_real(self) -> bool:
        return not np.iscomplexobj(self.coeffs)

    @classmethod
    def zero(cls, n: int) -> "DiagonalField":
        return cls(np.zeros(n + 1))

    def permuted(self, perm: Sequence[int]) -> "DiagonalField":
        return DiagonalField(self.coeffs[list(perm)])

    def __add__(self, other):
        if not isinstance(other, DiagonalField):
            return NotImplemented
        return DiagonalField(self.coeffs + other.coeffs)

    def __mul__(self, alpha):
        if not np.isscalar(alpha):
            return NotImplemented
        return DiagonalField(alpha * self.coeffs)

    __rmul__ = __mul__

    def __neg__(self):
        return DiagonalField(-self.coeffs)

    def __repr__(self):
        return f"DiagonalField({self.coeffs.tolist()!r})"


def as_field(f) -> DiagonalField:
    return f if isinstance(f, DiagonalField) else DiagonalField(np.asarray(f))


def normalize_field(raw) -> tuple[DiagonalField, complex | float]:
    """Subtract the mean, which only changes the field by a multiple of Euler's.

    Returns the normalized field and the removed mean ``m``; a weight computed
    for the normalized field equals the raw weight minus ``m * d``.
    """
    c = np.asarray(raw)
    if c.ndim != 1 or c.size < 1:
        raise InputError("field coefficients must be a non-empty vector")
    shift = np.mean(c)
    centred = c - shift
    # second pass removes the rounding left when |c| is much larger than its spread
    residual = np.mean(centred)
    return DiagonalField(centred - residual), (shift + residual).item()


@dataclass(frozen=True)
class Weight:
    value: complex
    witness_exponent: tuple


def weight_of(P: HomogeneousPolynomial, f, tol: float = TANGENCY_TOL) -> Weight:
    """Return the eigenvalue ``k`` in ``f F = k F``.

    Raises NotTangent when the monomial weights spread by more than ``tol``
    times ``d * max|f_i|`` (the largest magnitude a weight can have).
    """
    f = as_field(f)
    if f.n != P.n:
        raise InputError(f"field has length {f.n + 1}, expected {P.n + 1}")
    weights = P.exponents @ f.coeffs
    scale = P.degree * np.max(np.abs(f.coeffs))
    spread = np.max(np.abs(weights - weights[0]))
    if spread > tol * scale:
        raise NotTangent(
            f"monomial weights range over {spread:.3g} (scale {scale:.3g}); "
            "field is not tangent to F = 0")
    value = weights[0]
    value = complex(value) if np.iscomplexobj(weights) else float(value)
    return Weight(value=value, witness_exponent=P.terms[0][0])


def tangency_constraints(P: HomogeneousPolynomial) -> np.ndarray:
    """Rows: the all-ones vector, then ``a^j - a^0`` for each further monomial."""
    exps = P.exponents
    return np.vstack([np.ones(P.n + 1), exps[1:] - exps[0]])


def tangent_field_basis(P: HomogeneousPolynomial,
                        tol: float = NULLSPACE_RCOND) -> list[DiagonalField]:
    """Orthonormal real basis of the traceless diagonal fields tangent to F = 0."""
    ns = null_space(tangency_constraints(P), rcond=tol)
    return [DiagonalField(ns[:, j]) for j in range(ns.shape[1])]
