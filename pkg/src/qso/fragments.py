"""Syntactic fragment membership and classification.

The Boolean side distinguishes prenex classes (Sigma_0 .. Pi_2), pure
first-order formulae, the extended existential class Sigma_1[FO] whose
matrix atoms are equalities, second-order atoms or second-order-free
subformulae, the Horn shapes, and full second-order logic.  The quantitative
side distinguishes which counting operators appear.

Membership is purely syntactic: no equivalence search is performed, and a
formula is classified by the first fragment in a fixed containment-respecting
chain that admits it.  Prenex classes allow empty quantifier blocks, so
``Sigma_0`` formulae are also members of ``Sigma_1``, ``Pi_1`` and so on.
Membership in ``Sigma_1[FO]`` is accepted up to sound hoisting of
positive-polarity existentials: any accepted formula can be rewritten into
literal prenex shape by floating those quantifiers outward.
"""

from dataclasses import dataclass
from enum import Enum

from . import ast
from .ast import BFormula, QFormula


class BooleanCore(Enum):
    SIGMA_0 = "Sigma_0"
    SIGMA_1 = "Sigma_1"
    PI_1 = "Pi_1"
    SIGMA_2 = "Sigma_2"
    PI_2 = "Pi_2"
    FO = "FO"
    SIGMA_1_FO = "Sigma_1[FO]"
    HORN = "Horn"
    EXISTS_HORN = "ExistsHorn"
    SO = "SO"


class QuantShape(Enum):
    QFO = "QFO"
    SIGMA_QSO = "SigmaQSO"
    QSO = "QSO"
    MAX_QSO = "MaxQSO"
    MIN_QSO = "MinQSO"
    OPT_QSO = "OptQSO"
    RQFO = "RQFO"
    TQFO = "TQFO"
    FQSO = "FQSO"


@dataclass(frozen=True)
class Fragment:
    """Least syntactic fragment admitting a formula."""

    shape: QuantShape
    core: BooleanCore
    uses_integers: bool = False

    def __str__(self) -> str:
        suffix = " Z" if self.uses_integers else ""
        return f"{self.shape.value} {self.core.value}{suffix}"


# ------------------------------------------------------- Boolean membership ---


def has_so_quantifier(phi: BFormula) -> bool:
    return any(isinstance(n, ast.SO_QUANT_BOOL) for n in ast.walk(phi))


def has_so_atom(phi: BFormula) -> bool:
    return any(isinstance(n, ast.SOAtom) for n in ast.walk(phi))


def is_so_free(phi: BFormula) -> bool:
    """No second-order atoms and no second-order quantifiers."""
    return not has_so_atom(phi) and not has_so_quantifier(phi)


def is_quantifier_free(phi: BFormula) -> bool:
    quantifiers = ast.FO_QUANT_BOOL + ast.SO_QUANT_BOOL
    return not any(isinstance(n, quantifiers) for n in ast.walk(phi))


def _strip_block(phi: BFormula, kind: type) -> BFormula:
    while isinstance(phi, kind):
        phi = phi.body
    return phi


def matches_sigma0(phi: BFormula) -> bool:
    return is_quantifier_free(phi)


def matches_sigma1(phi: BFormula) -> bool:
    return is_quantifier_free(_strip_block(phi, ast.ExistsFO))


def matches_pi1(phi: BFormula) -> bool:
    return is_quantifier_free(_strip_block(phi, ast.ForallFO))


def matches_sigma2(phi: BFormula) -> bool:
    return matches_pi1(_strip_block(phi, ast.ExistsFO))


def matches_pi2(phi: BFormula) -> bool:
    return matches_sigma1(_strip_block(phi, ast.ForallFO))


def matches_fo(phi: BFormula) -> bool:
    """First-order core: second-order atoms allowed, quantifiers not."""
    return not has_so_quantifier(phi)


def matches_sigma1_fo_ext(phi: BFormula) -> bool:
    """Existential class with equalities, SO atoms and SO-free subformulae
    as matrix atoms, accepted up to hoisting of positive existentials."""
    return _s1ext(phi, positive=True)


def _s1ext(phi: BFormula, positive: bool) -> bool:
    if is_so_free(phi):
        return True
    if isinstance(phi, ast.SOAtom):
        return True
    if isinstance(phi, ast.Not):
        return _s1ext(phi.body, not positive)
    if isinstance(phi, (ast.Or, ast.And)):
        return _s1ext(phi.left, positive) and _s1ext(phi.right, positive)
    if isinstance(phi, ast.Implies):
        return _s1ext(phi.left, not positive) and _s1ext(phi.right, positive)
    if isinstance(phi, ast.ExistsFO):
        # A positive existential hoists to the prefix; a negated one is a
        # hidden universal over a second-order atom and falls outside.
        return positive and _s1ext(phi.body, positive)
    if isinstance(phi, ast.ForallFO):
        return (not positive) and _s1ext(phi.body, positive)
    return False


# ---------------------------------------------------------------- Horn shape ---


POSITIVE = "positive"
NEGATIVE = "negative"
FO_PART = "fo"


@dataclass(frozen=True)
class HornClause:
    """One clause ``forall xs (d1 | .. | dn)`` split into tagged disjuncts."""

    forall_vars: tuple[str, ...]
    positives: tuple[ast.SOAtom, ...]
    negatives: tuple[tuple[tuple[str, ...], ast.SOAtom], ...]  # (exists vars, atom)
    fo_parts: tuple[BFormula, ...]


@dataclass(frozen=True)
class HornShape:
    """Decomposition of a (possibly existentially prefixed) Horn formula."""

    exists_vars: tuple[str, ...]
    clauses: tuple[HornClause, ...]


def _flatten_conj(phi: BFormula) -> list[BFormula]:
    if isinstance(phi, ast.And):
        return _flatten_conj(phi.left) + _flatten_conj(phi.right)
    if isinstance(phi, ast.Not) and isinstance(phi.body, ast.Or):
        # !(a | b) is the conjunction of the negations
        return _flatten_conj(ast.Not(phi.body.left)) + _flatten_conj(
            ast.Not(phi.body.right)
        )
    if isinstance(phi, ast.Not) and isinstance(phi.body, ast.Not):
        return _flatten_conj(phi.body.body)
    return [phi]


def _flatten_disj(phi: BFormula) -> list[BFormula]:
    if isinstance(phi, ast.Or):
        return _flatten_disj(phi.left) + _flatten_disj(phi.right)
    if isinstance(phi, ast.Implies):
        return _flatten_disj(ast.Not(phi.left)) + _flatten_disj(phi.right)
    if isinstance(phi, ast.Not) and isinstance(phi.body, ast.And):
        return _flatten_disj(ast.Not(phi.body.left)) + _flatten_disj(
            ast.Not(phi.body.right)
        )
    if isinstance(phi, ast.Not) and isinstance(phi.body, ast.Not):
        return _flatten_disj(phi.body.body)
    return [phi]


def _classify_disjunct(d: BFormula):
    """Return a (kind, payload) pair or None when the disjunct is not allowed."""
    if is_so_free(d):
        return FO_PART, d
    if isinstance(d, ast.SOAtom):
        return POSITIVE, d
    # negative literal: exists v. .. exists w. !X(u, v, w), possibly with no
    # existential prefix at all
    exists_vars: list[str] = []
    node = d
    while isinstance(node, ast.ExistsFO):
        exists_vars.append(node.var)
        node = node.body
    if isinstance(node, ast.Not) and isinstance(node.body, ast.SOAtom):
        return NEGATIVE, (tuple(exists_vars), node.body)
    return None


def decompose_horn(phi: BFormula, allow_exists: bool = False):
    """Split a formula into Horn shape, or explain why it is not Horn.

    Returns ``(shape, None)`` on success and ``(None, reason)`` otherwise.
    A clause is a universally quantified disjunction whose disjuncts are
    positive literals ``X(xs)``, negative literals ``exists vs !X(us, vs)``
    or second-order-free formulae, with at most one positive literal.
    """
    exists_vars: list[str] = []
    node = phi
    if allow_exists:
        while isinstance(node, ast.ExistsFO):
            exists_vars.append(node.var)
            node = node.body
    clauses: list[HornClause] = []
    for conjunct in _flatten_conj(node):
        forall_vars: list[str] = []
        body = conjunct
        while isinstance(body, ast.ForallFO):
            forall_vars.append(body.var)
            body = body.body
        # universal quantifiers may be interleaved with conjunction
        inner = _flatten_conj(body)
        if len(inner) > 1:
            sub, reason = decompose_horn(body, allow_exists=False)
            if sub is None:
                return None, reason
            for clause in sub.clauses:
                clauses.append(
                    HornClause(
                        tuple(forall_vars) + clause.forall_vars,
                        clause.positives,
                        clause.negatives,
                        clause.fo_parts,
                    )
                )
            continue
        positives: list[ast.SOAtom] = []
        negatives: list[tuple[tuple[str, ...], ast.SOAtom]] = []
        fo_parts: list[BFormula] = []
        for d in _flatten_disj(body):
            kind = _classify_disjunct(d)
            if kind is None:
                return None, f"disjunct {type(d).__name__} is not a Horn literal"
            tag, payload = kind
            if tag == POSITIVE:
                positives.append(payload)
            elif tag == NEGATIVE:
                negatives.append(payload)
            else:
                fo_parts.append(payload)
        if len(positives) > 1:
            return None, f"clause has {len(positives)} positive literals"
        clauses.append(
            HornClause(
                tuple(forall_vars), tuple(positives), tuple(negatives), tuple(fo_parts)
            )
        )
    return HornShape(tuple(exists_vars), tuple(clauses)), None


def matches_horn(phi: BFormula) -> bool:
    shape, _ = decompose_horn(phi, allow_exists=False)
    return shape is not None


def matches_exists_horn(phi: BFormula) -> bool:
    shape, _ = decompose_horn(phi, allow_exists=True)
    return shape is not None


_CORE_CHAIN = (
    (BooleanCore.SIGMA_0, matches_sigma0),
    (BooleanCore.SIGMA_1, matches_sigma1),
    (BooleanCore.PI_1, matches_pi1),
    (BooleanCore.SIGMA_2, matches_sigma2),
    (BooleanCore.PI_2, matches_pi2),
    (BooleanCore.FO, lambda phi: is_so_free(phi)),
    (BooleanCore.SIGMA_1_FO, matches_sigma1_fo_ext),
    (BooleanCore.HORN, matches_horn),
    (BooleanCore.EXISTS_HORN, matches_exists_horn),
    (BooleanCore.FO, matches_fo),
    (BooleanCore.SO, lambda phi: True),
)


def core_membership(phi: BFormula, core: BooleanCore) -> bool:
    """Whether one Boolean formula belongs to the named fragment."""
    table = {
        BooleanCore.SIGMA_0: matches_sigma0,
        BooleanCore.SIGMA_1: matches_sigma1,
        BooleanCore.PI_1: matches_pi1,
        BooleanCore.SIGMA_2: matches_sigma2,
        BooleanCore.PI_2: matches_pi2,
        BooleanCore.FO: matches_fo,
        BooleanCore.SIGMA_1_FO: matches_sigma1_fo_ext,
        BooleanCore.HORN: matches_horn,
        BooleanCore.EXISTS_HORN: matches_exists_horn,
        BooleanCore.SO: lambda _phi: True,
    }
    return table[core](phi)


def classify_core(leaves: list[BFormula]) -> BooleanCore:
    """First fragment of the chain admitting every Boolean leaf."""
    if not leaves:
        return BooleanCore.SIGMA_0
    for core, predicate in _CORE_CHAIN:
        if all(predicate(leaf) for leaf in leaves):
            return core
    return BooleanCore.SO


# ------------------------------------------------------ quantitative shape ---


def _shape_of(alpha: QFormula) -> QuantShape:
    has = {
        "fo_prod": False,
        "so_sum": False,
        "so_prod": False,
        "max": False,
        "min": False,
        "lsfp": False,
        "path": False,
        "fn": False,
    }
    lsfp_depth = 0

    def scan(node: QFormula, inside_lsfp: bool):
        if isinstance(node, ast.ProdFO):
            has["fo_prod"] = True
        elif isinstance(node, ast.SumSO):
            has["so_sum"] = True
        elif isinstance(node, ast.ProdSO):
            has["so_prod"] = True
        elif isinstance(node, (ast.MaxBin, ast.MaxFO, ast.MaxSO)):
            has["max"] = True
        elif isinstance(node, (ast.MinBin, ast.MinFO, ast.MinSO)):
            has["min"] = True
        elif isinstance(node, ast.Lsfp):
            has["lsfp"] = True
        elif isinstance(node, ast.Path):
            has["path"] = True
        elif isinstance(node, ast.FnApp) and not inside_lsfp:
            has["fn"] = True
        for child in ast.children(node):
            if isinstance(child, QFormula):
                scan(child, inside_lsfp or isinstance(node, ast.Lsfp))

    scan(alpha, False)
    recursion = has["lsfp"] or has["path"] or has["fn"]
    opt = has["max"] or has["min"]
    if not recursion and not opt:
        if not has["so_sum"] and not has["so_prod"]:
            return QuantShape.QFO
        if not has["fo_prod"] and not has["so_prod"]:
            return QuantShape.SIGMA_QSO
        return QuantShape.QSO
    if not recursion:
        qfo_base = not has["so_sum"] and not has["so_prod"] and not has["fo_prod"]
        # max/min fragments build on first-order sums and products only
        qfo_base = not has["so_sum"] and not has["so_prod"]
        if qfo_base and has["max"] and not has["min"]:
            return QuantShape.MAX_QSO
        if qfo_base and has["min"] and not has["max"]:
            return QuantShape.MIN_QSO
        return QuantShape.OPT_QSO
    if not opt and not has["so_sum"] and not has["so_prod"]:
        if has["lsfp"] and not has["path"] and not has["fn"]:
            return QuantShape.RQFO
        if has["path"] and not has["lsfp"] and not has["fn"]:
            return QuantShape.TQFO
    return QuantShape.FQSO


def classify(alpha: QFormula) -> Fragment:
    """Least syntactic fragment of a quantitative formula.

    The Boolean core is computed over every embedded Boolean formula
    (including conditional-count and path conditions); lsfp bodies count
    toward the quantitative shape but their Boolean leaves join the core
    like any others.
    """
    leaves = list(ast.boolean_leaves(alpha))
    uses_integers = any(
        isinstance(n, ast.Const) and n.value < 0 for n in ast.walk(alpha)
    )
    return Fragment(_shape_of(alpha), classify_core(leaves), uses_integers)
