"""Abstract syntax for Boolean and quantitative formulae.

Two node families: ``BFormula`` is the Boolean (second-order) layer,
``QFormula`` the quantitative layer that embeds Boolean formulae as leaves.
Conjunction, implication, universal quantifiers and the conditional count
``(phi ~> alpha)`` are kept as explicit sugar nodes so that parsing and
rendering round-trip; :func:`desugar_boolean` / :func:`desugar_quantitative`
rewrite them into the core constructors when a normal form is needed.

Nodes are frozen dataclasses.  Every node carries an optional source span
that is excluded from equality, so structural comparison ignores where a
formula came from.
"""

from dataclasses import dataclass, field, fields
from typing import Iterator, Union


@dataclass(frozen=True)
class Span:
    """Byte offsets of a node in the source text, for diagnostics."""

    start: int
    end: int

    def __post_init__(self):
        if self.start > self.end:
            raise ValueError("span start must not exceed end")


def _span_field():
    return field(default=None, compare=False, repr=False)


class BFormula:
    """Base class of Boolean formula nodes."""

    span: Span | None


class QFormula:
    """Base class of quantitative formula nodes."""

    span: Span | None


# ---------------------------------------------------------------- Boolean ---


@dataclass(frozen=True)
class Eq(BFormula):
    left: str
    right: str
    span: Span | None = _span_field()


@dataclass(frozen=True)
class Less(BFormula):
    """The built-in linear order atom ``x < y``."""

    left: str
    right: str
    span: Span | None = _span_field()


@dataclass(frozen=True)
class Rel(BFormula):
    """Atom over a signature relation."""

    name: str
    args: tuple[str, ...]
    span: Span | None = _span_field()


@dataclass(frozen=True)
class Top(BFormula):
    """The tautology ``true``."""

    span: Span | None = _span_field()


@dataclass(frozen=True)
class SOAtom(BFormula):
    """Atom over a second-order variable; arity is the argument count."""

    name: str
    args: tuple[str, ...]
    span: Span | None = _span_field()


@dataclass(frozen=True)
class Not(BFormula):
    body: BFormula
    span: Span | None = _span_field()


@dataclass(frozen=True)
class Or(BFormula):
    left: BFormula
    right: BFormula
    span: Span | None = _span_field()


@dataclass(frozen=True)
class And(BFormula):
    """Sugar for ``!(!a | !b)``."""

    left: BFormula
    right: BFormula
    span: Span | None = _span_field()


@dataclass(frozen=True)
class Implies(BFormula):
    """Sugar for ``!a | b``."""

    left: BFormula
    right: BFormula
    span: Span | None = _span_field()


@dataclass(frozen=True)
class ExistsFO(BFormula):
    var: str
    body: BFormula
    span: Span | None = _span_field()


@dataclass(frozen=True)
class ForallFO(BFormula):
    """Sugar for ``!exists x. !body``."""

    var: str
    body: BFormula
    span: Span | None = _span_field()


@dataclass(frozen=True)
class ExistsSO(BFormula):
    var: str
    arity: int
    body: BFormula
    span: Span | None = _span_field()


@dataclass(frozen=True)
class ForallSO(BFormula):
    """Sugar for ``!exists X. !body``."""

    var: str
    arity: int
    body: BFormula
    span: Span | None = _span_field()


# ----------------------------------------------------------- quantitative ---


@dataclass(frozen=True)
class Bool(QFormula):
    """Boolean formula used as a 0/1-valued quantitative leaf."""

    formula: BFormula
    span: Span | None = _span_field()


@dataclass(frozen=True)
class Const(QFormula):
    """Integer constant; negative only in integer (Z) mode."""

    value: int
    span: Span | None = _span_field()


@dataclass(frozen=True)
class FnApp(QFormula):
    """Application ``h(x1, .., xl)`` of a function symbol to variables."""

    name: str
    args: tuple[str, ...]
    span: Span | None = _span_field()


@dataclass(frozen=True)
class Add(QFormula):
    left: QFormula
    right: QFormula
    span: Span | None = _span_field()


@dataclass(frozen=True)
class Mul(QFormula):
    left: QFormula
    right: QFormula
    span: Span | None = _span_field()


@dataclass(frozen=True)
class SumFO(QFormula):
    var: str
    body: QFormula
    span: Span | None = _span_field()


@dataclass(frozen=True)
class ProdFO(QFormula):
    var: str
    body: QFormula
    span: Span | None = _span_field()


@dataclass(frozen=True)
class SumSO(QFormula):
    var: str
    arity: int
    body: QFormula
    span: Span | None = _span_field()


@dataclass(frozen=True)
class ProdSO(QFormula):
    var: str
    arity: int
    body: QFormula
    span: Span | None = _span_field()


@dataclass(frozen=True)
class MaxBin(QFormula):
    left: QFormula
    right: QFormula
    span: Span | None = _span_field()


@dataclass(frozen=True)
class MinBin(QFormula):
    left: QFormula
    right: QFormula
    span: Span | None = _span_field()


@dataclass(frozen=True)
class MaxFO(QFormula):
    var: str
    body: QFormula
    span: Span | None = _span_field()


@dataclass(frozen=True)
class MinFO(QFormula):
    var: str
    body: QFormula
    span: Span | None = _span_field()


@dataclass(frozen=True)
class MaxSO(QFormula):
    var: str
    arity: int
    body: QFormula
    span: Span | None = _span_field()


@dataclass(frozen=True)
class MinSO(QFormula):
    var: str
    arity: int
    body: QFormula
    span: Span | None = _span_field()


@dataclass(frozen=True)
class CondCount(QFormula):
    """Conditional count ``(cond ~> value)``: sugar for ``cond*value + !cond``."""

    cond: BFormula
    value: QFormula
    span: Span | None = _span_field()


@dataclass(frozen=True)
class Lsfp(QFormula):
    """Least support-fixed-point binder over a function symbol.

    ``vars`` are the free first-order variables of the node; the body may
    mention only the bound symbol ``fname`` as a function symbol.
    """

    fname: str
    vars: tuple[str, ...]
    body: QFormula
    span: Span | None = _span_field()

    def __post_init__(self):
        if len(set(self.vars)) != len(self.vars):
            raise ValueError("lsfp variables must be pairwise distinct")
        if not self.vars:
            raise ValueError("lsfp needs at least one variable")


@dataclass(frozen=True)
class Path(QFormula):
    """Bounded walk counter between tuple nodes of a formula-defined graph."""

    source: tuple[str, ...]
    target: tuple[str, ...]
    cond: BFormula
    span: Span | None = _span_field()

    def __post_init__(self):
        if len(self.source) != len(self.target):
            raise ValueError("path endpoint tuples must have the same length")
        if not self.source:
            raise ValueError("path needs at least one variable per endpoint")
        both = self.source + self.target
        if len(set(both)) != len(both):
            raise ValueError("path endpoint variables must be pairwise distinct")


Formula = Union[BFormula, QFormula]

BINARY_BOOL = (Or, And, Implies)
FO_QUANT_BOOL = (ExistsFO, ForallFO)
SO_QUANT_BOOL = (ExistsSO, ForallSO)
FO_QUANT_NUM = (SumFO, ProdFO, MaxFO, MinFO)
SO_QUANT_NUM = (SumSO, ProdSO, MaxSO, MinSO)
BINARY_NUM = (Add, Mul, MaxBin, MinBin)


def children(node: Formula) -> Iterator[Formula]:
    """Direct subformulae of a node (Boolean or quantitative)."""
    for f in fields(node):
        value = getattr(node, f.name)
        if isinstance(value, (BFormula, QFormula)):
            yield value


def walk(node: Formula) -> Iterator[Formula]:
    """The node and all its descendants, preorder."""
    yield node
    for child in children(node):
        yield from walk(child)


def boolean_leaves(alpha: QFormula) -> Iterator[BFormula]:
    """Boolean formulae embedded in a quantitative formula.

    Covers ``Bool`` leaves, conditional-count conditions and path conditions.
    """
    for node in walk(alpha):
        if isinstance(node, Bool):
            yield node.formula
        elif isinstance(node, CondCount):
            yield node.cond
        elif isinstance(node, Path):
            yield node.cond


# ------------------------------------------------------------- desugaring ---


def desugar_boolean(phi: BFormula) -> BFormula:
    """Rewrite sugar into the core constructors (=, <, R, true, X, !, |, exists)."""
    if isinstance(phi, (Eq, Less, Rel, Top, SOAtom)):
        return phi
    if isinstance(phi, Not):
        return Not(desugar_boolean(phi.body))
    if isinstance(phi, Or):
        return Or(desugar_boolean(phi.left), desugar_boolean(phi.right))
    if isinstance(phi, And):
        return Not(Or(Not(desugar_boolean(phi.left)), Not(desugar_boolean(phi.right))))
    if isinstance(phi, Implies):
        return Or(Not(desugar_boolean(phi.left)), desugar_boolean(phi.right))
    if isinstance(phi, ExistsFO):
        return ExistsFO(phi.var, desugar_boolean(phi.body))
    if isinstance(phi, ForallFO):
        return Not(ExistsFO(phi.var, Not(desugar_boolean(phi.body))))
    if isinstance(phi, ExistsSO):
        return ExistsSO(phi.var, phi.arity, desugar_boolean(phi.body))
    if isinstance(phi, ForallSO):
        return Not(ExistsSO(phi.var, phi.arity, Not(desugar_boolean(phi.body))))
    raise TypeError(f"not a Boolean formula node: {type(phi).__name__}")


def desugar_quantitative(alpha: QFormula) -> QFormula:
    """Expand conditional counts and Boolean sugar throughout a formula."""
    if isinstance(alpha, Bool):
        return Bool(desugar_boolean(alpha.formula))
    if isinstance(alpha, (Const, FnApp)):
        return alpha
    if isinstance(alpha, CondCount):
        cond = desugar_boolean(alpha.cond)
        return Add(
            Mul(Bool(cond), desugar_quantitative(alpha.value)), Bool(Not(cond))
        )
    if isinstance(alpha, BINARY_NUM):
        return type(alpha)(
            desugar_quantitative(alpha.left), desugar_quantitative(alpha.right)
        )
    if isinstance(alpha, FO_QUANT_NUM):
        return type(alpha)(alpha.var, desugar_quantitative(alpha.body))
    if isinstance(alpha, SO_QUANT_NUM):
        return type(alpha)(alpha.var, alpha.arity, desugar_quantitative(alpha.body))
    if isinstance(alpha, Lsfp):
        return Lsfp(alpha.fname, alpha.vars, desugar_quantitative(alpha.body))
    if isinstance(alpha, Path):
        return Path(alpha.source, alpha.target, desugar_boolean(alpha.cond))
    raise TypeError(f"not a quantitative formula node: {type(alpha).__name__}")


# ---------------------------------------------------------- free variables ---


def free_vars_boolean(phi: BFormula) -> tuple[set[str], set[str]]:
    """Free first-order and second-order variables of a Boolean formula."""
    if isinstance(phi, (Eq, Less)):
        return {phi.left, phi.right}, set()
    if isinstance(phi, Rel):
        return set(phi.args), set()
    if isinstance(phi, Top):
        return set(), set()
    if isinstance(phi, SOAtom):
        return set(phi.args), {phi.name}
    if isinstance(phi, Not):
        return free_vars_boolean(phi.body)
    if isinstance(phi, BINARY_BOOL):
        lf, ls = free_vars_boolean(phi.left)
        rf, rs = free_vars_boolean(phi.right)
        return lf | rf, ls | rs
    if isinstance(phi, FO_QUANT_BOOL):
        fo, so = free_vars_boolean(phi.body)
        return fo - {phi.var}, so
    if isinstance(phi, SO_QUANT_BOOL):
        fo, so = free_vars_boolean(phi.body)
        return fo, so - {phi.var}
    raise TypeError(f"not a Boolean formula node: {type(phi).__name__}")


def free_variables(alpha: QFormula) -> tuple[set[str], set[str], set[str]]:
    """Free (first-order, second-order, function) symbols of a formula.

    An lsfp binder binds its tuple variables inside the body and its function
    symbol; the node's own free variables are exactly the binder tuple.  A
    path node's endpoint variables are free; its condition may not mention
    anything else.
    """
    if isinstance(alpha, Bool):
        fo, so = free_vars_boolean(alpha.formula)
        return fo, so, set()
    if isinstance(alpha, Const):
        return set(), set(), set()
    if isinstance(alpha, FnApp):
        return set(alpha.args), set(), {alpha.name}
    if isinstance(alpha, CondCount):
        cfo, cso = free_vars_boolean(alpha.cond)
        vfo, vso, vfn = free_variables(alpha.value)
        return cfo | vfo, cso | vso, vfn
    if isinstance(alpha, BINARY_NUM):
        lf, ls, lh = free_variables(alpha.left)
        rf, rs, rh = free_variables(alpha.right)
        return lf | rf, ls | rs, lh | rh
    if isinstance(alpha, FO_QUANT_NUM):
        fo, so, fn = free_variables(alpha.body)
        return fo - {alpha.var}, so, fn
    if isinstance(alpha, SO_QUANT_NUM):
        fo, so, fn = free_variables(alpha.body)
        return fo, so - {alpha.var}, fn
    if isinstance(alpha, Lsfp):
        return set(alpha.vars), set(), set()
    if isinstance(alpha, Path):
        return set(alpha.source) | set(alpha.target), set(), set()
    raise TypeError(f"not a quantitative formula node: {type(alpha).__name__}")


def is_sentence(alpha: QFormula) -> bool:
    """True when no first-order, second-order or function symbol is free."""
    fo, so, fn = free_variables(alpha)
    return not fo and not so and not fn


def so_arities(alpha: QFormula) -> dict[str, int]:
    """Arity of every second-order variable occurring in a formula.

    Arities come from binders and atom argument counts; a clash raises
    ``ValueError``.  Shadowing of the same name with a different arity is
    rejected for sanity.
    """
    arities: dict[str, int] = {}

    def note(name: str, arity: int):
        if arities.setdefault(name, arity) != arity:
            raise ValueError(
                f"second-order variable {name!r} used with arities "
                f"{arities[name]} and {arity}"
            )

    for node in walk(alpha):
        if isinstance(node, SOAtom):
            note(node.name, len(node.args))
        elif isinstance(node, (SO_QUANT_BOOL + SO_QUANT_NUM)):
            note(node.var, node.arity)
    return arities
