"""Truncated Magnus expansion of free groups over F_p.

A word in x_1..x_r is sent to the noncommutative series with x_i -> 1 + X_i.
Series are stored flat: degree blocks of size r^k in increasing k, each block
indexed by the base-r value of the word (first letter most significant).
The Zassenhaus degree of a group element is the lowest positive degree where
its expansion differs from 1.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import DepthTooShallow, NotAutomorphismCandidate, ShapeMismatch
from .exactmat import IntMatrix, det


class AtLeast(int):
    """A lower bound returned when the truncation cannot see the exact degree."""

    def __repr__(self) -> str:
        return f"AtLeast({int(self)})"

    __str__ = __repr__


def is_bound(k: int) -> bool:
    return isinstance(k, AtLeast)


_TOKEN = re.compile(r"^x(\d+)(?:\^(-?\d+))?$")


@dataclass(frozen=True)
class FreeWord:
    rank: int
    letters: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        letters = tuple((int(i), int(e)) for i, e in self.letters)
        for i, e in letters:
            if not 1 <= i <= self.rank:
                raise ShapeMismatch(f"generator x{i} outside rank {self.rank}")
            if e not in (1, -1):
                raise ValueError("letters carry exponent +1 or -1")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def parse(cls, text: str, rank: int | None = None) -> "FreeWord":
        letters: list[tuple[int, int]] = []
        for tok in text.split():
            if tok == "1":
                continue
            m = _TOKEN.match(tok)
            if not m:
                raise ValueError(f"cannot parse word token {tok!r}")
            i, e = int(m.group(1)), int(m.group(2) or 1)
            letters += [(i, 1 if e > 0 else -1)] * abs(e)
        if rank is None:
            rank = max((i for i, _ in letters), default=1)
        return cls(rank, tuple(letters))

    @classmethod
    def generator(cls, rank: int, i: int) -> "FreeWord":
        return cls(rank, ((i, 1),))

    @classmethod
    def empty(cls, rank: int) -> "FreeWord":
        return cls(rank, ())

    def reduce(self) -> "FreeWord":
        stack: list[tuple[int, int]] = []
        for i, e in self.letters:
            if stack and stack[-1] == (i, -e):
                stack.pop()
            else:
                stack.append((i, e))
        return FreeWord(self.rank, tuple(stack))

    def inverse(self) -> "FreeWord":
        return FreeWord(self.rank, tuple((i, -e) for i, e in reversed(self.letters)))

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        if self.rank != other.rank:
            raise ShapeMismatch("words over free groups of different rank")
        return FreeWord(self.rank, self.letters + other.letters).reduce()

    def __pow__(self, n: int) -> "FreeWord":
        base = self if n >= 0 else self.inverse()
        return FreeWord(self.rank, base.letters * abs(n)).reduce()

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        out, run = [], None
        for letter in self.letters:
            if run and run[0] == letter:
                run[1] += 1
            else:
                if run:
                    out.append(run)
                run = [letter, 1]
        out.append(run)
        parts = []
        for (i, e), n in out:
            k = e * n
            parts.append(f"x{i}" if k == 1 else f"x{i}^{k}")
        return " ".join(parts)

    def exponent_sums(self) -> list[int]:
        sums = [0] * self.rank
        for i, e in self.letters:
            sums[i - 1] += e
        return sums


def commutator(u: FreeWord, v: FreeWord) -> FreeWord:
    """[u, v] = u v u^-1 v^-1."""
    return u * v * u.inverse() * v.inverse()


def _offsets(r: int, N: int) -> list[int]:
    offs = [0]
    for k in range(N + 1):
        offs.append(offs[-1] + r**k)
    return offs


@dataclass(frozen=True, eq=False)
class MagnusSeries:
    rank: int
    p: int
    N: int
    data: np.ndarray

    @classmethod
    def one(cls, rank: int, p: int, N: int) -> "MagnusSeries":
        data = np.zeros(_offsets(rank, N)[-1], dtype=np.int64)
        data[0] = 1
        return cls(rank, p, N, data)

    def __mul__(self, other: "MagnusSeries") -> "MagnusSeries":
        if (self.rank, self.p, self.N) != (other.rank, other.p, other.N):
            raise ShapeMismatch("series over different (rank, p, N)")
        return MagnusSeries(
            self.rank, self.p, self.N, kernels.series_mul(self.data, other.data, self.rank, self.N, self.p)
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MagnusSeries):
            return NotImplemented
        return (self.rank, self.p, self.N) == (other.rank, other.p, other.N) and bool(
            np.array_equal(self.data, other.data)
        )

    def homogeneous(self, k: int) -> dict[tuple[int, ...], int]:
        """Degree-k part as {word over 1..r: coefficient}."""
        offs = _offsets(self.rank, self.N)
        block = self.data[offs[k]:offs[k + 1]]
        out = {}
        for idx in np.flatnonzero(block):
            word, n = [], int(idx)
            for _ in range(k):
                word.append(n % self.rank + 1)
                n //= self.rank
            out[tuple(reversed(word))] = int(block[idx])
        return out

    @property
    def coeffs(self) -> dict[tuple[int, ...], int]:
        out = {}
        for k in range(self.N + 1):
            out.update(self.homogeneous(k))
        return out

    def lowest_positive_degree(self) -> int | None:
        offs = _offsets(self.rank, self.N)
        for k in range(1, self.N + 1):
            if self.data[offs[k]:offs[k + 1]].any():
                return k
        return None


def magnus_expand(w: FreeWord, p: int, N: int) -> MagnusSeries:
    if N < 1:
        raise ValueError("truncation degree must be >= 1")
    r = w.rank
    data = MagnusSeries.one(r, p, N).data
    for i, e in w.reduce().letters:
        data = kernels.mul_letter(data, i - 1, e, r, N, p)
    return MagnusSeries(r, p, N, np.asarray(data, dtype=np.int64))


def z_degree(w: FreeWord, p: int, N: int) -> int:
    """Zassenhaus degree of w, or AtLeast(N + 1) if w looks trivial up to N."""
    k = magnus_expand(w, p, N).lowest_positive_degree()
    return AtLeast(N + 1) if k is None else k


@dataclass(frozen=True)
class FreeEndo:
    rank: int
    images: tuple[FreeWord, ...]

    def __post_init__(self):
        images = tuple(self.images)
        if len(images) != self.rank or any(w.rank != self.rank for w in images):
            raise ShapeMismatch("an endomorphism of F_r needs r images of rank r")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, rank: int) -> "FreeEndo":
        return cls(rank, tuple(FreeWord.generator(rank, i) for i in range(1, rank + 1)))

    @classmethod
    def from_strings(cls, rank: int, images: Sequence[str]) -> "FreeEndo":
        return cls(rank, tuple(FreeWord.parse(s, rank) for s in images))

    def to_json(self) -> dict:
        return {"rank": self.rank, "images": [str(w) for w in self.images]}

    @classmethod
    def from_json(cls, obj: dict) -> "FreeEndo":
        return cls.from_strings(int(obj["rank"]), obj["images"])

    def h1_matrix(self) -> IntMatrix:
        """Exponent-sum matrix; column i is the class of f(x_i)."""
        cols = [w.exponent_sums() for w in self.images]
        return IntMatrix(list(zip(*cols)))

    def check_h1(self, p: int) -> None:
        if det(self.h1_matrix()) % p == 0:
            raise NotAutomorphismCandidate(f"induced map on H_1(F; Z/{p}) is singular")


def apply_endo(f: FreeEndo, w: FreeWord) -> FreeWord:
    if f.rank != w.rank:
        raise ShapeMismatch("rank of endomorphism and word differ")
    out: list[tuple[int, int]] = []
    for i, e in w.letters:
        img = f.images[i - 1]
        out += img.letters if e > 0 else img.inverse().letters
    return FreeWord(w.rank, tuple(out)).reduce()


def compose(f: FreeEndo, h: FreeEndo) -> FreeEndo:
    """f after h: x -> f(h(x))."""
    return FreeEndo(f.rank, tuple(apply_endo(f, w) for w in h.images))


def _displacement_degree(pairs: Iterable[tuple[FreeWord, FreeWord]], p: int, N: int) -> int:
    """min over (u, v) of z_degree(u v^-1) minus one, or AtLeast(N)."""
    m = N + 1
    for u, v in pairs:
        m = min(m, int(z_degree(u * v.inverse(), p, N)))
    return m - 1 if m <= N else AtLeast(N)


def ia_degree(f: FreeEndo, p: int, N: int) -> int:
    """Largest k with f(x) x^-1 in the (k+1)-st Zassenhaus term for all generators."""
    f.check_h1(p)
    gens = FreeEndo.identity(f.rank).images
    return _displacement_degree(zip(f.images, gens), p, N)


def commutator_ia_degree(f: FreeEndo, h: FreeEndo, p: int, N: int) -> int:
    """ia_degree of [f, h] = f h f^-1 h^-1, computed without inverting f or h.

    [f, h] sends y = hf(x) to fh(x), and the images hf(x) of the generators
    again generate modulo every Zassenhaus term, so comparing fh(x) with hf(x)
    on generators decides the depth.
    """
    f.check_h1(p)
    h.check_h1(p)
    fh, hf = compose(f, h), compose(h, f)
    return _displacement_degree(zip(fh.images, hf.images), p, N)


def tau_k(f: FreeEndo, k: int, p: int, N: int) -> dict[int, dict[tuple[int, ...], int]]:
    """Degree-(k+1) part of the expansion of f(x_i) x_i^-1, for each generator."""
    if N < k + 2:
        raise ValueError("tau_k needs N >= k + 2")
    depth = ia_degree(f, p, N)
    if depth < k:
        raise DepthTooShallow(f"ia_degree is {depth} < {k}")
    out = {}
    for i, img in enumerate(f.images, start=1):
        s = magnus_expand(img * FreeWord.generator(f.rank, i).inverse(), p, N)
        out[i] = s.homogeneous(k + 1)
    return out


# ---------------------------------------------------------------- random samplers


def random_word(rank: int, length: int, rng: random.Random) -> FreeWord:
    letters = [(rng.randint(1, rank), rng.choice((1, -1))) for _ in range(length)]
    return FreeWord(rank, tuple(letters)).reduce()


def random_stallings_word(rank: int, level: int, p: int, rng: random.Random, length: int = 3) -> FreeWord:
    """A random element of the level-th Stallings term via [G, S_{l-1}] (S_{l-1})^p."""
    if level <= 1:
        return random_word(rank, length, rng)
    prev = random_stallings_word(rank, level - 1, p, rng, length)
    choice = rng.randrange(3)
    if choice == 0:
        return commutator(random_word(rank, length, rng), prev)
    if choice == 1:
        return prev**p
    other = random_stallings_word(rank, level - 1, p, rng, length)
    return commutator(random_word(rank, 2, rng), prev) * other**p


def random_lower_central_word(rank: int, i: int, rng: random.Random, length: int = 2) -> FreeWord:
    """Left-normed commutator of i random words, an element of gamma_i."""
    w = random_word(rank, length, rng)
    for _ in range(i - 1):
        w = commutator(w, random_word(rank, length, rng))
    return w


def random_ia_endo(rank: int, k: int, p: int, rng: random.Random, length: int = 2) -> FreeEndo:
    """x_i -> c_i x_i with c_i drawn from the (k+1)-st Stallings term."""
    images = []
    for i in range(1, rank + 1):
        c = random_stallings_word(rank, k + 1, p, rng, length)
        images.append(c * FreeWord.generator(rank, i))
    return FreeEndo(rank, tuple(images))


def k12(rank: int) -> FreeEndo:
    """x_1 -> x_2 x_1 x_2^-1, other generators fixed."""
    images = list(FreeEndo.identity(rank).images)
    images[0] = FreeWord.parse("x2 x1 x2^-1", rank)
    return FreeEndo(rank, tuple(images))
