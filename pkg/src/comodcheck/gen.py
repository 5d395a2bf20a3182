"""Seeded random instance generation for law checks.

All generators draw from a ``random.Random`` owned by the caller, so a
fixed seed reproduces the same corpus byte for byte.  Dimensions are kept
at desk scale: the default cap is 4 per graded component and composite
spaces stay small enough for exact elimination to be instant.
"""

from __future__ import annotations

import random
import string

from .coalg import (Coalgebra, CoalgebraMorphism, direct_sum,
                    grouplike_coalgebra, grouplike_labels,
                    grouplike_morphism, product)
from .comod import Comodule, conjugate, graded_comodule
from .errors import UnsupportedBaseError
from .exactlin import Matrix
from .fields import Field


def rng_for(seed: int, *tags) -> random.Random:
    """Deterministic generator derived from a seed and string tags."""
    return random.Random(":".join([str(seed), *map(str, tags)]))


def random_labels(rng: random.Random, max_labels: int,
                  min_labels: int = 1) -> tuple:
    n = rng.randint(min_labels, max_labels)
    return tuple(string.ascii_lowercase[i] for i in range(n))


def random_grouplike(rng: random.Random, field: Field,
                     max_labels: int = 3) -> Coalgebra:
    return grouplike_coalgebra(field, random_labels(rng, max_labels))


def random_coalgebra(rng: random.Random, field: Field,
                     max_labels: int = 5) -> Coalgebra:
    """A random cosemisimple coalgebra built from the constructors."""
    kind = rng.randrange(3)
    if kind == 0:
        return random_grouplike(rng, field, max_labels)
    a = random_grouplike(rng, field, max(1, max_labels // 2))
    b = random_grouplike(rng, field, max(1, max_labels // 2))
    return direct_sum(a, b) if kind == 1 else product(a, b)[0]


def random_setmap_morphism(rng: random.Random, src: Coalgebra,
                           tgt: Coalgebra) -> CoalgebraMorphism:
    """A morphism of group-like coalgebras from a random label map."""
    src_labels = grouplike_labels(src)
    tgt_labels = grouplike_labels(tgt)
    mapping = {x: rng.choice(tgt_labels) for x in src_labels}
    return grouplike_morphism(src, tgt, mapping)


def random_graded_dims(rng: random.Random, n: int, max_dim: int,
                       max_total: int | None = None) -> list[int]:
    dims = [rng.randint(0, max_dim) for _ in range(n)]
    if max_total is not None:
        while sum(dims) > max_total:
            i = max(range(n), key=lambda j: dims[j])
            dims[i] -= 1
    return dims


def random_invertible(rng: random.Random, field: Field, n: int) -> Matrix:
    """A random invertible matrix with small entries."""
    if n == 0:
        return Matrix.zeros(field, 0, 0)
    while True:
        rows = [[field.of(rng.randint(-2, 2)) for _ in range(n)]
                for _ in range(n)]
        m = Matrix.from_rows(field, rows)
        if m.is_invertible():
            return m


def random_comodule(rng: random.Random, base: Coalgebra, max_dim: int = 4,
                    max_total: int | None = None,
                    conjugated: bool = False) -> Comodule:
    """A random comodule over a group-like base, optionally in a basis
    that scrambles the grading."""
    labels = grouplike_labels(base)
    if labels is None:
        raise UnsupportedBaseError(
            "instance generation needs a group-like base")
    dims = random_graded_dims(rng, len(labels), max_dim, max_total)
    v = graded_comodule(base, dims)
    if conjugated and v.dim:
        v = conjugate(v, random_invertible(rng, base.field, v.dim))
    return v


def corrupt_coalgebra(rng: random.Random, c: Coalgebra):
    """Structure constants obtained by corrupting a valid coalgebra.

    Returns (delta, epsilon) guaranteed to violate at least one axiom
    (corruptions are retried until the constructor rejects them).
    """
    n = c.dim
    f = c.field
    while True:
        delta = list(c.delta.data)
        eps = list(c.epsilon.data)
        which = rng.randrange(2)
        if which == 0 and n > 0:
            idx = rng.randrange(len(delta))
            delta[idx] = f.of(delta[idx] + rng.choice([1, 2, -1]))
        elif n > 0:
            idx = rng.randrange(len(eps))
            eps[idx] = f.of(eps[idx] + rng.choice([1, -1]))
        dm = Matrix(f, n * n, n, delta)
        em = Matrix(f, 1, n, eps)
        try:
            Coalgebra(f, n, dm, em)
        except Exception:
            return dm, em
