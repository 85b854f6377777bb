"""The Boolean algebra of the Birman-Craggs-Johnson homomorphism.

Elements are F_2-combinations of square-free monomials in the barred
generators A_1..A_g, B_1..B_g; the empty monomial is the unit 1. The whole
algebra is modelled (any degree); the degree <= 3 part is a predicate, never a
truncation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import GenusMismatch, ShapeMismatch
from .symplectic import SpMatrixMod, letter_index, omega_vec, reduce_mod, trefoil_word, word_image

Monomial = frozenset  # of generator indices 0..2g-1


@dataclass(frozen=True)
class ClassMod2:
    bits: tuple[int, ...]

    def __post_init__(self):
        bits = tuple(int(b) % 2 for b in self.bits)
        if not bits or len(bits) % 2:
            raise ShapeMismatch("a mod-2 class needs 2g bits")
        object.__setattr__(self, "bits", bits)

    @property
    def g(self) -> int:
        return len(self.bits) // 2

    @classmethod
    def parse(cls, g: int, text: str) -> "ClassMod2":
        bits = [0] * (2 * g)
        for name in text.replace("+", " ").split():
            bits[letter_index(g, name)] ^= 1
        return cls(tuple(bits))

    def __add__(self, other: "ClassMod2") -> "ClassMod2":
        return ClassMod2(tuple(x ^ y for x, y in zip(self.bits, other.bits)))


@dataclass(frozen=True)
class BooleanPoly:
    g: int
    support: frozenset = frozenset()

    @classmethod
    def one(cls, g: int) -> "BooleanPoly":
        return cls(g, frozenset([frozenset()]))

    @classmethod
    def zero(cls, g: int) -> "BooleanPoly":
        return cls(g)

    @classmethod
    def generator(cls, g: int, idx: int) -> "BooleanPoly":
        return cls(g, frozenset([frozenset([idx])]))

    @classmethod
    def from_monomials(cls, g: int, monomials: Iterable[Iterable[int | str]]) -> "BooleanPoly":
        """Sum of monomials given as index or name lists; repeats cancel mod 2."""
        out: set = set()
        for mono in monomials:
            m = frozenset(letter_index(g, x) if isinstance(x, str) else int(x) for x in mono)
            out ^= {m}
        return cls(g, frozenset(out))

    def __add__(self, other: "BooleanPoly") -> "BooleanPoly":
        _same_g(self, other)
        return BooleanPoly(self.g, self.support ^ other.support)

    def __mul__(self, other: "BooleanPoly") -> "BooleanPoly":
        return bool_mul(self, other)

    def degree(self) -> int:
        return max((len(m) for m in self.support), default=-1)

    def in_B3(self) -> bool:
        return self.degree() <= 3

    def constant_term(self) -> int:
        return int(frozenset() in self.support)

    def sorted_monomials(self) -> list[tuple[int, ...]]:
        return sorted((tuple(sorted(m)) for m in self.support), key=lambda t: (len(t), t))

    def to_names(self) -> list[list[str]]:
        g = self.g
        return [[f"{'AB'[i >= g]}{i % g + 1}" for i in m] for m in self.sorted_monomials()]

    def pretty(self) -> str:
        if not self.support:
            return "0"
        sub = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")
        g = self.g
        terms = []
        for m in self.sorted_monomials():
            if not m:
                terms.append("1̄")
            else:
                terms.append(
                    "".join(f"{'AB'[i >= g]}̄{str(i % g + 1).translate(sub)}" for i in m)
                )
        return " + ".join(terms)

    def __str__(self) -> str:
        return self.pretty()


def _same_g(p: BooleanPoly, q: BooleanPoly) -> None:
    if p.g != q.g:
        raise GenusMismatch(f"genus {p.g} vs {q.g}")


def intersection_mod2(x: Sequence[int], y: Sequence[int]) -> int:
    return omega_vec(x, y) % 2


def bar_class(v: ClassMod2, order: Sequence[int] | None = None) -> BooleanPoly:
    """Expand the bar of a class with bar(x + y) = bar(x) + bar(y) + (x.y) 1.

    ``order`` is the order in which basis vectors are peeled off; the result
    does not depend on it.
    """
    g = v.g
    n = 2 * g
    order = range(n) if order is None else order
    acc = [0] * n
    out: set = set()
    const = 0
    for i in order:
        if not v.bits[i]:
            continue
        e = [int(j == i) for j in range(n)]
        out ^= {frozenset([i])}
        const ^= intersection_mod2(acc, e)
        acc[i] ^= 1
    if const:
        out ^= {frozenset()}
    return BooleanPoly(g, frozenset(out))


def bool_mul(p: BooleanPoly, q: BooleanPoly) -> BooleanPoly:
    _same_g(p, q)
    out: set = set()
    for m in p.support:
        for n in q.support:
            out ^= {m | n}
    return BooleanPoly(p.g, frozenset(out))


@dataclass(frozen=True)
class BPData:
    g: int
    pairs: tuple[tuple[ClassMod2, ClassMod2], ...]
    E: ClassMod2

    def __post_init__(self):
        if not self.pairs:
            raise ValueError("a bounding-pair datum needs at least one pair")


@dataclass(frozen=True)
class SepData:
    g: int
    pairs: tuple[tuple[ClassMod2, ClassMod2], ...]

    def __post_init__(self):
        if not self.pairs:
            raise ValueError("a separating-twist datum needs at least one pair")


def sigma_sep(data: SepData) -> BooleanPoly:
    out = BooleanPoly.zero(data.g)
    for C, D in data.pairs:
        out = out + bar_class(C) * bar_class(D)
    return out


def sigma_bp(data: BPData) -> BooleanPoly:
    factor = bar_class(data.E) + BooleanPoly.one(data.g)
    return sigma_sep(SepData(data.g, data.pairs)) * factor


def act_class(M: SpMatrixMod, v: ClassMod2) -> ClassMod2:
    return ClassMod2(M.M.apply(v.bits))


def sp2_act(M: SpMatrixMod, p: BooleanPoly) -> BooleanPoly:
    """Action of a mod-2 symplectic matrix: each bar(e) goes to bar(M e)."""
    g = p.g
    n = 2 * g
    images = [bar_class(ClassMod2(M.M.col(i))) for i in range(n)]
    out = BooleanPoly.zero(g)
    for mono in p.support:
        term = BooleanPoly.one(g)
        for i in mono:
            term = term * images[i]
        out = out + term
    return out


def mu_x(p: BooleanPoly, x=1):
    """Projection to the constant part, times x."""
    return p.constant_term() * x


def poincare_sigma() -> BooleanPoly:
    """sigma of the twist along the right-handed trefoil in genus 2."""
    M = reduce_mod(word_image(trefoil_word()), 2)
    base = sigma_sep(SepData(2, ((ClassMod2.parse(2, "a1"), ClassMod2.parse(2, "b1")),)))
    return sp2_act(M, base)
