"""Formula AST over agent-indexed knowledge (K), belief (B) and intention (I).

The primitive grammar is ``p | ~phi | phi & phi | K_a phi | B_a phi | I_a phi``.
``Or``, ``Implies``, ``Iff``, ``Top`` and ``Bot`` are convenience nodes that
:func:`desugar` rewrites into the primitive grammar.  The secrecy operator and
factive ignorance are not AST cases at all; :func:`expand_secret` and
:func:`expand_factive_ignorance` build their expansions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import ClassVar, Iterator

AGENT_RE = re.compile(r"[A-Za-z0-9_]+\Z")
VAR_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")

# Variable behind the desugared form of Top; rejected by the parser.
TOP_VAR = "__top"

MODAL_OPS = ("K", "B", "I")


class Formula:
    """Base class of all formula nodes.  Instances are immutable."""

    __slots__ = ()

    def __invert__(self) -> Formula:
        return Not(self)

    def __and__(self, other: Formula) -> Formula:
        return And(self, other)

    def __or__(self, other: Formula) -> Formula:
        return Or(self, other)

    def __rshift__(self, other: Formula) -> Formula:
        return Implies(self, other)

    def __str__(self) -> str:
        from secretlogic.parser import print_formula

        return print_formula(self)


@dataclass(frozen=True, repr=False)
class Var(Formula):
    name: str

    def __post_init__(self):
        if not isinstance(self.name, str) or not VAR_RE.match(self.name):
            raise ValueError(f"bad variable name {self.name!r}")

    def __repr__(self):
        return f"Var({self.name!r})"


@dataclass(frozen=True, repr=False)
class Top(Formula):
    def __repr__(self):
        return "Top()"


@dataclass(frozen=True, repr=False)
class Bot(Formula):
    def __repr__(self):
        return "Bot()"


@dataclass(frozen=True, repr=False)
class Not(Formula):
    body: Formula

    def __repr__(self):
        return f"Not({self.body!r})"


@dataclass(frozen=True, repr=False)
class And(Formula):
    left: Formula
    right: Formula

    def __repr__(self):
        return f"And({self.left!r}, {self.right!r})"


@dataclass(frozen=True, repr=False)
class Or(Formula):
    left: Formula
    right: Formula

    def __repr__(self):
        return f"Or({self.left!r}, {self.right!r})"


@dataclass(frozen=True, repr=False)
class Implies(Formula):
    left: Formula
    right: Formula

    def __repr__(self):
        return f"Implies({self.left!r}, {self.right!r})"


@dataclass(frozen=True, repr=False)
class Iff(Formula):
    left: Formula
    right: Formula

    def __repr__(self):
        return f"Iff({self.left!r}, {self.right!r})"


@dataclass(frozen=True, repr=False)
class Modal(Formula):
    """An agent-indexed box.  Use the concrete subclasses K, B and I."""

    agent: str
    body: Formula
    op: ClassVar[str] = ""

    def __post_init__(self):
        if type(self) is Modal:
            raise TypeError("instantiate K, B or I instead of Modal")
        if not isinstance(self.agent, str) or not AGENT_RE.match(self.agent):
            raise ValueError(f"bad agent name {self.agent!r}")

    def __repr__(self):
        return f"{self.op}({self.agent!r}, {self.body!r})"


@dataclass(frozen=True, repr=False)
class K(Modal):
    op: ClassVar[str] = "K"


@dataclass(frozen=True, repr=False)
class B(Modal):
    op: ClassVar[str] = "B"


@dataclass(frozen=True, repr=False)
class I(Modal):  # noqa: E742
    op: ClassVar[str] = "I"


_BOX_CLASSES = {"K": K, "B": B, "I": I}

# Case tags fixing the total structural order.
_TAGS = {Var: 0, Top: 1, Bot: 2, Not: 3, And: 4, Or: 5, Implies: 6, Iff: 7, K: 8, B: 9, I: 10}

_BINARY = (And, Or, Implies, Iff)

FormulaSet = tuple  # tuple[Formula, ...], sorted by sort_key, no duplicates


def box(op: str, agent: str, body: Formula) -> Modal:
    """Build ``op_agent body`` for ``op`` in ``"K"``, ``"B"``, ``"I"``."""
    try:
        cls = _BOX_CLASSES[op]
    except KeyError:
        raise ValueError(f"unknown modality {op!r}") from None
    return cls(agent, body)


def sort_key(phi: Formula) -> tuple:
    """Key for the total structural order: case tag, agent, then children."""
    tag = _TAGS[type(phi)]
    if isinstance(phi, Var):
        return (tag, phi.name)
    if isinstance(phi, (Top, Bot)):
        return (tag,)
    if isinstance(phi, Not):
        return (tag, sort_key(phi.body))
    if isinstance(phi, Modal):
        return (tag, phi.agent, sort_key(phi.body))
    return (tag, sort_key(phi.left), sort_key(phi.right))


def children(phi: Formula) -> tuple[Formula, ...]:
    if isinstance(phi, (Not, Modal)):
        return (phi.body,)
    if isinstance(phi, _BINARY):
        return (phi.left, phi.right)
    return ()


def walk(phi: Formula) -> Iterator[Formula]:
    """Pre-order traversal of every AST node (with repetitions)."""
    stack = [phi]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(children(node)))


def size(phi: Formula) -> int:
    """Number of AST nodes."""
    return sum(1 for _ in walk(phi))


def depth(phi: Formula) -> int:
    kids = children(phi)
    return 1 + max((depth(c) for c in kids), default=0)


def modal_depth(phi: Formula) -> int:
    kids = children(phi)
    inner = max((modal_depth(c) for c in kids), default=0)
    return inner + 1 if isinstance(phi, Modal) else inner


def is_primitive(phi: Formula) -> bool:
    """True iff phi uses only Var/Not/And/K/B/I."""
    return all(isinstance(node, (Var, Not, And, Modal)) for node in walk(phi))


def top() -> Formula:
    """Desugared Top: ``v | ~v`` over the reserved variable, i.e. ``~(~v & ~~v)``."""
    v = Var(TOP_VAR)
    return Not(And(Not(v), Not(Not(v))))


def bot() -> Formula:
    return Not(top())


def _or(a: Formula, b: Formula) -> Formula:
    return Not(And(Not(a), Not(b)))


def _implies(a: Formula, b: Formula) -> Formula:
    # a -> b := ~a | b
    return _or(Not(a), b)


def desugar(phi: Formula) -> Formula:
    """Rewrite Or/Implies/Iff/Top/Bot into the primitive grammar."""
    if isinstance(phi, Var):
        return phi
    if isinstance(phi, Top):
        return top()
    if isinstance(phi, Bot):
        return bot()
    if isinstance(phi, Not):
        return Not(desugar(phi.body))
    if isinstance(phi, Modal):
        return type(phi)(phi.agent, desugar(phi.body))
    left, right = desugar(phi.left), desugar(phi.right)
    if isinstance(phi, And):
        return And(left, right)
    if isinstance(phi, Or):
        return _or(left, right)
    if isinstance(phi, Implies):
        return _implies(left, right)
    if isinstance(phi, Iff):
        return And(_implies(left, right), _implies(right, left))
    raise TypeError(f"not a formula: {phi!r}")


def expand_secret(a: str, b: str, phi: Formula) -> Formula:
    """``S_{a,b} phi = K_a phi & (B_a ~K_b phi & I_a (phi & ~K_b phi))``."""
    ignorance = Not(K(b, phi))
    return And(K(a, phi), And(B(a, ignorance), I(a, And(phi, ignorance))))


def expand_factive_ignorance(b: str, phi: Formula) -> Formula:
    """``T_b phi = phi & ~K_b phi``."""
    return And(phi, Not(K(b, phi)))


def iterate_box(op: str, agent: str, n: int, phi: Formula) -> Formula:
    if n < 0:
        raise ValueError("iteration count must be >= 0")
    for _ in range(n):
        phi = box(op, agent, phi)
    return phi


def subformulas(phi: Formula) -> FormulaSet:
    """All subformulas of a primitive formula, in structural order."""
    if not is_primitive(phi):
        raise ValueError("subformulas() needs a desugared formula; call desugar() first")
    return tuple(sorted(set(walk(phi)), key=sort_key))


def translate_t(phi: Formula) -> Formula:
    """Rewrite every ``I_a psi`` into ``I_a K_a t(psi)``; homomorphic elsewhere.

    Not idempotent: apply exactly once.
    """
    if isinstance(phi, Var):
        return phi
    if isinstance(phi, Not):
        return Not(translate_t(phi.body))
    if isinstance(phi, And):
        return And(translate_t(phi.left), translate_t(phi.right))
    if isinstance(phi, I):
        return I(phi.agent, K(phi.agent, translate_t(phi.body)))
    if isinstance(phi, Modal):
        return type(phi)(phi.agent, translate_t(phi.body))
    raise ValueError("translate_t() needs a desugared formula")


def agents_of(phi: Formula) -> frozenset[str]:
    return frozenset(node.agent for node in walk(phi) if isinstance(node, Modal))


def variables_of(phi: Formula) -> frozenset[str]:
    return frozenset(node.name for node in walk(phi) if isinstance(node, Var))


def modalities_of(phi: Formula) -> frozenset[tuple[str, str]]:
    """The (agent, op) pairs whose boxes occur in phi."""
    return frozenset((node.agent, node.op) for node in walk(phi) if isinstance(node, Modal))


def implication_parts(phi: Formula) -> list[tuple[Formula, Formula]]:
    """Readings of a formula as an implication ``A -> B``.

    Recognises sugared ``Implies``, the desugared shape ``~(~~A & ~B)`` and
    the shorter ``~(A & ~B)``.  A formula can have two readings.
    """
    if isinstance(phi, Implies):
        return [(phi.left, phi.right)]
    out = []
    if isinstance(phi, Not) and isinstance(phi.body, And) and isinstance(phi.body.right, Not):
        lhs, rhs = phi.body.left, phi.body.right.body
        if isinstance(lhs, Not) and isinstance(lhs.body, Not):
            out.append((lhs.body.body, rhs))
        out.append((lhs, rhs))
    return out


def resugar(phi: Formula) -> Formula:
    """Best-effort inverse of :func:`desugar` for display.

    ``desugar(resugar(phi)) == phi`` holds for every primitive phi.
    """
    if phi == top():
        return Top()
    if phi == bot():
        return Bot()
    if isinstance(phi, Var):
        return phi
    if isinstance(phi, Modal):
        return type(phi)(phi.agent, resugar(phi.body))
    if isinstance(phi, And):
        left, right = phi.left, phi.right
        fwd = _exact_implication(left)
        bwd = _exact_implication(right)
        if fwd and bwd and fwd == (bwd[1], bwd[0]):
            return Iff(resugar(fwd[0]), resugar(fwd[1]))
        return And(resugar(left), resugar(right))
    if isinstance(phi, Not):
        imp = _exact_implication(phi)
        if imp:
            return Implies(resugar(imp[0]), resugar(imp[1]))
        body = phi.body
        if isinstance(body, And) and isinstance(body.left, Not) and isinstance(body.right, Not):
            return Or(resugar(body.left.body), resugar(body.right.body))
        return Not(resugar(body))
    return phi


def _exact_implication(phi: Formula):
    # only the exact desugared shape ~(~~A & ~B)
    if (
        isinstance(phi, Not)
        and isinstance(phi.body, And)
        and isinstance(phi.body.left, Not)
        and isinstance(phi.body.left.body, Not)
        and isinstance(phi.body.right, Not)
    ):
        return (phi.body.left.body.body, phi.body.right.body)
    return None
