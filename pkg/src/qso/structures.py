"""Finite ordered relational structures.

A structure lives on the canonical domain ``{0, .., n-1}``; the linear order
``<`` is always the natural order on that domain and is never stored.  The
module also provides the two enumeration primitives everything else is built
on (tuples in lexicographic order, relation subsets in binary-counter order)
and the standard binary encoding of a structure.

Structure text format (line based, bit-exact):

    domain <n>
    relation <name> <arity>
    <tuple: space-separated integers, one per line>
    ...
    end
    relation <name> <arity>
    end

Every relation of the signature must be declared; a relation is empty only
when its block closes immediately with ``end``.  Parsing of this format
lives in :mod:`qso.parser`.

All types here are immutable after construction and every operation is pure,
so concurrent use needs no locking.
"""

from dataclasses import dataclass, field
from itertools import product
from typing import Iterator

from .config import DEFAULT_LIMITS, Limits
from .errors import BudgetExceededError

ORDER_SYMBOL = "<"


@dataclass(frozen=True)
class Signature:
    """Named relations with positive arities; ``<`` is implicit and reserved."""

    relations: tuple[tuple[str, int], ...]

    def __post_init__(self):
        seen = set()
        for name, arity in self.relations:
            if name == ORDER_SYMBOL:
                raise ValueError("the order symbol '<' may not be redeclared")
            if name in seen:
                raise ValueError(f"duplicate relation name {name!r}")
            if arity < 1:
                raise ValueError(f"relation {name!r} must have arity >= 1, got {arity}")
            seen.add(name)

    @classmethod
    def of(cls, **arities: int) -> "Signature":
        """Convenience constructor: ``Signature.of(E=2, V=1)``."""
        return cls(tuple(arities.items()))

    def arity(self, name: str) -> int:
        for rel, arity in self.relations:
            if rel == name:
                return arity
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(rel == name for rel, _ in self.relations)

    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.relations)


@dataclass(frozen=True)
class Structure:
    """A finite ordered structure over the domain ``{0, .., size-1}``.

    ``interpretation`` maps every relation name of the signature to a
    frozenset of tuples.  The linear order is the natural order on the
    domain and is not part of the interpretation.
    """

    signature: Signature
    size: int
    interpretation: dict[str, frozenset[tuple[int, ...]]] = field(default_factory=dict)

    def __post_init__(self):
        if self.size < 0:
            raise ValueError("domain size must be non-negative")
        fixed: dict[str, frozenset[tuple[int, ...]]] = {}
        for name, arity in self.signature.relations:
            tuples = frozenset(tuple(t) for t in self.interpretation.get(name, ()))
            for t in tuples:
                if len(t) != arity:
                    raise ValueError(f"tuple {t} has wrong arity for relation {name!r}")
                if any(not (0 <= e < self.size) for e in t):
                    raise ValueError(f"tuple {t} out of range for domain size {self.size}")
            fixed[name] = tuples
        extra = set(self.interpretation) - set(fixed)
        if extra:
            raise ValueError(f"interpretation for undeclared relations: {sorted(extra)}")
        object.__setattr__(self, "interpretation", fixed)

    @property
    def domain(self) -> range:
        return range(self.size)

    def relation(self, name: str) -> frozenset[tuple[int, ...]]:
        try:
            return self.interpretation[name]
        except KeyError:
            raise KeyError(f"relation {name!r} not in signature") from None


@dataclass(frozen=True)
class Assignment:
    """First-order, second-order and function-symbol assignments.

    ``fo`` maps variables to domain elements, ``so`` maps second-order
    variables to sets of tuples, and ``fn`` maps function symbol names to
    :class:`qso.fixpoint.FunctionTable` instances (kept untyped here to
    avoid an import cycle).
    """

    fo: dict[str, int] = field(default_factory=dict)
    so: dict[str, frozenset[tuple[int, ...]]] = field(default_factory=dict)
    fn: dict[str, object] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "fo", dict(self.fo))
        object.__setattr__(
            self, "so", {k: frozenset(tuple(t) for t in v) for k, v in self.so.items()}
        )
        object.__setattr__(self, "fn", dict(self.fn))


EMPTY_ASSIGNMENT = Assignment()


def tuples_lex(size: int, arity: int) -> list[tuple[int, ...]]:
    """All ``size**arity`` tuples over the domain, lexicographically ordered."""
    if size < 0:
        raise ValueError("domain size must be non-negative")
    if arity < 1:
        raise ValueError("arity must be >= 1")
    return list(product(range(size), repeat=arity))


def subset_count(size: int, arity: int) -> int:
    """Number of subsets of ``A^arity``, i.e. ``2**(size**arity)``."""
    return 2 ** (size**arity)


def enumerate_relations(
    size: int, arity: int, limits: Limits = DEFAULT_LIMITS
) -> Iterator[frozenset[tuple[int, ...]]]:
    """Yield every subset of ``A^arity`` exactly once, deterministically.

    The order is a binary counter over the characteristic bitstring: with the
    tuples in lexicographic order, subset number ``i`` contains tuple ``j``
    exactly when bit ``j`` (most significant first) of ``i`` is set.  The
    first subset is empty, the last is all of ``A^arity``.

    Raises :class:`BudgetExceededError` when ``2**(size**arity)`` exceeds the
    subset budget.
    """
    total = subset_count(size, arity)
    if total > limits.subset_budget:
        raise BudgetExceededError(
            f"enumerating {total} subsets of A^{arity} with |A| = {size} "
            f"exceeds the budget of {limits.subset_budget}"
        )
    universe = tuples_lex(size, arity)
    width = len(universe)
    for index in range(total):
        yield frozenset(
            universe[j] for j in range(width) if index >> (width - 1 - j) & 1
        )


def encode_relation(structure: Structure, name: str) -> str:
    """Characteristic bitstring of one relation over the lexicographic tuples."""
    arity = structure.signature.arity(name)
    tuples = structure.relation(name)
    return "".join(
        "1" if t in tuples else "0" for t in tuples_lex(structure.size, arity)
    )


def encode_structure(structure: Structure) -> str:
    """Binary encoding ``0^n 1 enc(R_1) .. enc(R_k)``.

    Relations are serialized in signature declaration order; the built-in
    order relation is not encoded.  The length is always
    ``n + 1 + sum(n**arity(R) for R in relations)``.
    """
    parts = ["0" * structure.size, "1"]
    for name, _ in structure.signature.relations:
        parts.append(encode_relation(structure, name))
    return "".join(parts)
