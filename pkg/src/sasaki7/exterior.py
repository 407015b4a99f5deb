"""Exterior algebra of a 7-dimensional oriented space with a diagonal metric.

A blade ``η_{i1...ik}`` (1-based, increasing indices) is stored as the
7-bit integer with bits ``i1-1, ..., ik-1`` set.  A :class:`Form` is a
sparse map from blades to coefficients; it may mix degrees.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .scalars import ExactField, Field, format_scalar, parse_scalar

DIM = 7
FULL = (1 << DIM) - 1
BLADE_CHAR = "η"


def popcount(x: int) -> int:
    return bin(x).count("1")


def _swap_count(a: int, b: int) -> int:
    """Transpositions needed to sort ``η_a ∧ η_b`` into increasing order."""
    n = 0
    for j in range(DIM):
        if b >> j & 1:
            n += popcount(a >> (j + 1))
    return n


_SIGN = [[0] * (FULL + 1) for _ in range(FULL + 1)]
for _a in range(FULL + 1):
    for _b in range(FULL + 1):
        if not _a & _b:
            _SIGN[_a][_b] = -1 if _swap_count(_a, _b) & 1 else 1


def blade_sign(a: int, b: int) -> int:
    """Sign of ``η_a ∧ η_b`` relative to ``η_{a|b}``; 0 if they share a factor."""
    return _SIGN[a][b]


def blade_indices(blade: int) -> tuple[int, ...]:
    return tuple(i + 1 for i in range(DIM) if blade >> i & 1)


def blade_from_indices(indices: Iterable[int]) -> int:
    out = 0
    for i in indices:
        if not 1 <= i <= DIM:
            raise ValueError(f"index {i} out of range 1..{DIM}")
        out |= 1 << (i - 1)
    return out


def blade_name(blade: int) -> str:
    if blade == 0:
        return "1"
    return BLADE_CHAR + "".join(str(i) for i in blade_indices(blade))


def parse_blade(name: str) -> int:
    name = name.strip()
    if name == "1":
        return 0
    if name[0] in (BLADE_CHAR, "e", "n"):
        name = name[1:]
    return blade_from_indices(int(ch) for ch in name)


class Form:
    """Sparse element of the exterior algebra.

    Arithmetic follows Python operators: ``+``, ``-``, scalar ``*`` and ``/``,
    and ``^`` for the wedge product.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, object] | None = None):
        self._c = {k: v for k, v in (coeffs or {}).items() if v != 0}

    # construction -----------------------------------------------------
    @classmethod
    def scalar(cls, c=1) -> "Form":
        return cls({0: c})

    @classmethod
    def blade(cls, *indices: int, coef=1) -> "Form":
        """``coef * η_{i1} ∧ ... ∧ η_{ik}`` for indices in any order."""
        if len(set(indices)) != len(indices):
            return cls()
        blade, sign = 0, 1
        for i in indices:
            b = blade_from_indices([i])
            sign *= blade_sign(blade, b)
            blade |= b
        return cls({blade: coef if sign > 0 else -coef})

    @classmethod
    def from_names(cls, mapping: Mapping[str, object]) -> "Form":
        return cls({parse_blade(k): v for k, v in mapping.items()})

    # inspection -------------------------------------------------------
    def items(self):
        return self._c.items()

    def blades(self):
        return self._c.keys()

    def __getitem__(self, blade) -> object:
        if isinstance(blade, str):
            blade = parse_blade(blade)
        return self._c.get(blade, 0)

    def __len__(self) -> int:
        return len(self._c)

    def __bool__(self) -> bool:
        return bool(self._c)

    @property
    def grades(self) -> set[int]:
        return {popcount(b) for b in self._c}

    @property
    def degree(self) -> int | None:
        """Degree of a homogeneous form; ``None`` for the zero form."""
        g = self.grades
        if not g:
            return None
        if len(g) > 1:
            raise ValueError(f"mixed-degree form with grades {sorted(g)}")
        return g.pop()

    def max_abs(self) -> float:
        return max((abs(float(v)) for v in self._c.values()), default=0.0)

    def is_zero(self, field: Field | None = None) -> bool:
        if field is None:
            return not self._c
        return all(field.is_zero(v) for v in self._c.values())

    def map(self, fn: Callable[[object], object]) -> "Form":
        return Form({b: fn(v) for b, v in self._c.items()})

    # arithmetic -------------------------------------------------------
    def __add__(self, other: "Form") -> "Form":
        if not isinstance(other, Form):
            if other == 0:
                return self
            other = Form.scalar(other)
        out = dict(self._c)
        for b, v in other._c.items():
            out[b] = out.get(b, 0) + v
        return Form(out)

    __radd__ = __add__

    def __neg__(self) -> "Form":
        return Form({b: -v for b, v in self._c.items()})

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def __rsub__(self, other) -> "Form":
        return (-self) + other

    def __mul__(self, c) -> "Form":
        if isinstance(c, Form):
            return wedge(self, c)
        return Form({b: v * c for b, v in self._c.items()})

    def __rmul__(self, c) -> "Form":
        return Form({b: c * v for b, v in self._c.items()})

    def __truediv__(self, c) -> "Form":
        return Form({b: v / c for b, v in self._c.items()})

    def __xor__(self, other: "Form") -> "Form":
        return wedge(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Form):
            if other == 0:
                return not self._c
            return NotImplemented
        return (self - other)._c == {}

    __hash__ = None

    # output -----------------------------------------------------------
    def __repr__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for b in sorted(self._c, key=lambda x: (popcount(x), blade_indices(x))):
            v = self._c[b]
            text = format_scalar(v)
            name = blade_name(b)
            if name == "1":
                term = text
            elif text == "1":
                term = name
            elif text == "-1":
                term = "-" + name
            else:
                term = f"{text}*{name}" if "+" not in text[1:] and "-" not in text[1:] else f"({text})*{name}"
            parts.append(term)
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def to_json(self) -> dict[str, dict[str, str]]:
        out: dict[str, dict[str, str]] = {}
        for b in sorted(self._c, key=lambda x: (popcount(x), blade_indices(x))):
            out.setdefault(str(popcount(b)), {})[blade_name(b)] = format_scalar(self._c[b])
        return out

    @classmethod
    def from_json(cls, data: Mapping[str, Mapping[str, str]], field: Field | None = None) -> "Form":
        conv = field if field is not None else parse_scalar
        coeffs = {}
        for degree, blades in data.items():
            for name, value in blades.items():
                b = parse_blade(name)
                if popcount(b) != int(degree):
                    raise ValueError(f"blade {name} filed under degree {degree}")
                coeffs[b] = conv(value)
        return cls(coeffs)


def eta(*indices: int, coef=1) -> Form:
    """The blade ``η_{i1...ik}``; ``eta()`` is the constant 1."""
    return Form.blade(*indices, coef=coef)


def wedge(a: Form, b: Form) -> Form:
    out: dict[int, object] = {}
    for x, u in a.items():
        for y, v in b.items():
            s = _SIGN[x][y]
            if s:
                key = x | y
                term = u * v if s > 0 else -(u * v)
                out[key] = out.get(key, 0) + term
    return Form(out)


def wedge_all(forms: Iterable[Form]) -> Form:
    out = Form.scalar(1)
    for f in forms:
        out = wedge(out, f)
    return out


def _vector(v) -> dict[int, object]:
    if isinstance(v, int):
        if not 1 <= v <= DIM:
            raise ValueError(f"vector index {v} out of range 1..{DIM}")
        return {v - 1: 1}
    return {i: c for i, c in enumerate(v) if c != 0}


def interior(v, a: Form) -> Form:
    """Contraction ``v ⨼ a``; ``v`` is a 1-based frame index or 7 coordinates."""
    out: dict[int, object] = {}
    for i, vi in _vector(v).items():
        bit = 1 << i
        below = bit - 1
        for b, c in a.items():
            if b & bit:
                term = c * vi
                if popcount(b & below) & 1:
                    term = -term
                key = b ^ bit
                out[key] = out.get(key, 0) + term
    return Form(out)


def grade_project(a: Form, k: int) -> Form:
    return Form({b: v for b, v in a.items() if popcount(b) == k})


@dataclass(frozen=True)
class Metric:
    """Diagonal metric: the coframe ``(w_1 η_1, ..., w_7 η_7)`` is orthonormal."""

    weights: tuple = (1,) * DIM
    orientation: int = 1

    def __post_init__(self):
        if len(self.weights) != DIM:
            raise ValueError(f"need {DIM} weights")
        if self.orientation not in (1, -1):
            raise ValueError("orientation must be +1 or -1")
        if any(float(w) <= 0 for w in self.weights):
            raise ValueError("metric weights must be positive")

    @classmethod
    def unit(cls, orientation: int = 1) -> "Metric":
        return cls((1,) * DIM, orientation)

    @classmethod
    def squashed(cls, s, orientation: int = 1) -> "Metric":
        """Vertical directions 1..3 scaled by ``s``, horizontal ones unit."""
        return cls((s, s, s, 1, 1, 1, 1), orientation)

    @property
    def squares(self) -> tuple:
        return tuple(w * w for w in self.weights)

    def blade_norm2(self, blade: int):
        out = Fraction(1)
        for i in range(DIM):
            if blade >> i & 1:
                out = out / self.squares[i]
        return out

    def blade_weight(self, blade: int):
        """Product of the weights over the factors of ``blade``."""
        out = Fraction(1)
        for i in range(DIM):
            if blade >> i & 1:
                out = out * self.weights[i]
        return out

    def volume(self) -> Form:
        w = self.blade_weight(FULL)
        return Form({FULL: w if self.orientation > 0 else -w})

    def flat(self, v) -> Form:
        """Metric dual 1-form of a vector given in frame coordinates."""
        return Form({1 << i: self.squares[i] * c for i, c in _vector(v).items()})

    def sharp(self, a: Form) -> list:
        """Frame coordinates of the metric dual vector of a 1-form."""
        out = [0] * DIM
        for b, c in a.items():
            if popcount(b) != 1:
                raise ValueError("sharp needs a 1-form")
            i = b.bit_length() - 1
            out[i] = c / self.squares[i]
        return out

    def inner_vectors(self, u: Sequence, v: Sequence):
        return sum((self.squares[i] * u[i] * v[i] for i in range(DIM)), 0)


UNIT = Metric.unit()


def hodge(a: Form, g: Metric = UNIT) -> Form:
    a.degree  # raises on mixed degree
    out = {}
    for b, c in a.items():
        comp = FULL ^ b
        coef = c * g.blade_weight(comp) / g.blade_weight(b)
        if _SIGN[b][comp] * g.orientation < 0:
            coef = -coef
        out[comp] = coef
    return Form(out)


def form_inner(a: Form, b: Form, g: Metric = UNIT):
    da, db = a.degree, b.degree
    if da is not None and db is not None and da != db:
        raise ValueError(f"degree mismatch {da} != {db}")
    total = 0
    for blade, c in a.items():
        other = b[blade]
        if other != 0:
            total = total + c * other * g.blade_norm2(blade)
    return total


def norm2(a: Form, g: Metric = UNIT):
    return form_inner(a, a, g)


def matrix_derivation(mat, a: Form) -> Form:
    """Natural action of an endomorphism on forms, extended as a derivation.

    ``mat[i][j]`` is the ``e_{i+1}`` component of ``mat(e_{j+1})``, and on
    1-forms the action is ``(mat·α)(Y) = -α(mat Y)``.
    """
    out: dict[int, object] = {}
    for b, c in a.items():
        for i in range(DIM):
            if not b >> i & 1:
                continue
            rest = b ^ (1 << i)
            for j in range(DIM):
                m = mat[i][j]
                if m == 0 or rest >> j & 1:
                    continue
                lo, hi = (i, j) if i < j else (j, i)
                between = popcount(rest & ((1 << hi) - 1) & ~((1 << (lo + 1)) - 1))
                term = -(c * m)
                if between & 1:
                    term = -term
                key = rest | (1 << j)
                out[key] = out.get(key, 0) + term
    return Form(out)


def evaluate(a: Form, indices: Sequence[int]):
    """``a(e_{i1}, ..., e_{ik})`` for 1-based indices in any order."""
    probe = Form.blade(*indices)
    if not probe:
        return 0
    ((b, s),) = probe.items()
    v = a[b]
    return v if s > 0 else -v


def forms_equal(a: Form, b: Form, field: Field = ExactField(1)) -> bool:
    return (a - b).is_zero(field)
