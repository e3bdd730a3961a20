"""Derivations, traced objects, and strategies over the rewriting relation.

Two views of a strategy live here.  An abstract strategy is a set of
derivations, queried through membership and bounded enumeration (the set is
usually infinite, so it is never materialized).  An intensional strategy is
a function from traced objects to the steps it allows next; `extension`
turns the latter into the former, prefix-closed by construction.

All exploration is deterministic: candidate steps are always visited in
(position, rule, bindings) order.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from collections import deque
from collections.abc import Callable
from dataclasses import dataclass

from .errors import ComposeError, FuelExhausted
from .rules import RewriteStep, RuleSet, StepLabel, all_redexes, apply_step
from .terms import Term, print_term


@dataclass(frozen=True)
class Derivation:
    """A composable sequence of rewrite steps starting at `source`.

    Empty derivations are allowed; then the target is the source itself.
    """

    source: Term
    steps: tuple = ()

    def __post_init__(self):
        if not isinstance(self.steps, tuple):
            object.__setattr__(self, "steps", tuple(self.steps))
        prev = self.source
        for step in self.steps:
            if step.source != prev:
                raise ComposeError(prev, step.source)
            prev = step.target

    @property
    def target(self) -> Term:
        return self.steps[-1].target if self.steps else self.source

    def __len__(self) -> int:
        return len(self.steps)

    def then(self, step: RewriteStep) -> Derivation:
        if step.source != self.target:
            raise ComposeError(self.target, step.source)
        return Derivation(self.source, self.steps + (step,))

    def compose(self, other: Derivation) -> Derivation:
        if other.source != self.target:
            raise ComposeError(self.target, other.source)
        return Derivation(self.source, self.steps + other.steps)

    def prefix(self, n: int) -> Derivation:
        return Derivation(self.source, self.steps[:n])

    def labels(self) -> tuple:
        return tuple(step.label for step in self.steps)

    def __str__(self) -> str:
        return print_derivation(self)


def print_derivation(d: Derivation) -> str:
    """One-line text form; an empty derivation prints as its source term."""
    parts = [print_term(d.source)]
    for step in d.steps:
        parts.append(
            f"-[{step.label.position},{step.label.rule_label}]-> "
            f"{print_term(step.target)}"
        )
    return " ".join(parts)


def derivation_to_json(d: Derivation) -> list:
    """JSON-ready form: one object per step, terms as canonical strings."""
    return [
        {
            "source": print_term(step.source),
            "position": str(step.label.position),
            "rule": step.label.rule_label,
            "subst": {n: print_term(t) for n, t in step.label.subst.items()},
            "target": print_term(step.target),
        }
        for step in d.steps
    ]


@dataclass(frozen=True)
class TracedObject:
    """A term together with the history that produced it.

    `trace` holds (object, step label) pairs in firing order; the empty
    trace denotes an initial object.  Extending through `step` keeps the
    replay invariant by construction; `is_valid` re-checks a trace that was
    assembled by hand.
    """

    trace: tuple = ()
    current: Term = None

    def __post_init__(self):
        if not isinstance(self.trace, tuple):
            object.__setattr__(self, "trace", tuple(self.trace))
        if self.current is None:
            raise ValueError("traced object needs a current term")

    @classmethod
    def of_derivation(cls, d: Derivation) -> TracedObject:
        return cls(tuple((s.source, s.label) for s in d.steps), d.target)

    def step(self, label: StepLabel, rs: RuleSet) -> TracedObject:
        fired = apply_step(self.current, label, rs)
        return TracedObject(self.trace + ((self.current, label),), fired.target)

    def is_valid(self, rs: RuleSet) -> bool:
        objs = [obj for obj, _ in self.trace] + [self.current]
        labels = [lab for _, lab in self.trace]
        for here, lab, there in zip(objs, labels, objs[1:]):
            try:
                fired = apply_step(here, lab, rs)
            except Exception:
                return False
            if fired.target != there:
                return False
        return True

    def __len__(self) -> int:
        return len(self.trace)


def traced(t: Term) -> TracedObject:
    """The initial traced object: empty history, current term `t`."""
    return TracedObject((), t)


def _label_key(label: StepLabel):
    return (label.position.path, label.rule_label, label.subst.pairs)


@dataclass(frozen=True, eq=False)
class IntensionalStrategy:
    """A function from traced objects to the set of steps allowed next.

    An empty choice means the strategy is undefined there (it stops).  The
    `memoryless` flag records that `choose` ignores the trace; exploration
    uses it to deduplicate states.  The rule set is carried along so chosen
    labels can be fired.
    """

    choose: Callable[[TracedObject], frozenset]
    memoryless: bool
    rules: RuleSet

    def sorted_choice(self, tr: TracedObject) -> list[StepLabel]:
        return sorted(self.choose(tr), key=_label_key)


class AbstractStrategy(ABC):
    """A set of derivations, seen through membership and bounded listing."""

    @abstractmethod
    def contains(self, d: Derivation) -> bool: ...

    @abstractmethod
    def enumerate(self, source: Term, max_len: int) -> set: ...


class DerivationSet(AbstractStrategy):
    """An explicitly given finite derivation set."""

    def __init__(self, derivations=()):
        self._members = frozenset(derivations)

    def contains(self, d: Derivation) -> bool:
        return d in self._members

    def enumerate(self, source: Term, max_len: int) -> set:
        return {
            d for d in self._members if d.source == source and len(d) <= max_len
        }


class Extension(AbstractStrategy):
    """The derivation set generated by an intensional strategy.

    A derivation belongs iff every step of it is among the strategy's
    choices at the traced prefix reaching that step.  The set is closed
    under taking prefixes by definition.
    """

    def __init__(self, zeta: IntensionalStrategy):
        self.zeta = zeta

    def contains(self, d: Derivation) -> bool:
        for i, step in enumerate(d.steps):
            tr = TracedObject.of_derivation(d.prefix(i))
            if step.label not in self.zeta.choose(tr):
                return False
            if apply_step(tr.current, step.label, self.zeta.rules) != step:
                return False
        return True

    def enumerate(self, source: Term, max_len: int) -> set:
        out = set()
        frontier = [Derivation(source)]
        while frontier:
            d = frontier.pop()
            out.add(d)
            if len(d) >= max_len:
                continue
            tr = TracedObject.of_derivation(d)
            for label in self.zeta.sorted_choice(tr):
                frontier.append(d.then(apply_step(d.target, label, self.zeta.rules)))
        return out


def extension(zeta: IntensionalStrategy, a: Term, max_len: int) -> set:
    """All derivations from `a` of length <= max_len that `zeta` generates."""
    return Extension(zeta).enumerate(a, max_len)


def apply_abstract(strategy: AbstractStrategy, a: Term, max_len: int) -> set:
    """Targets of the strategy's derivations from `a`, window-bounded."""
    return {d.target for d in strategy.enumerate(a, max_len)}


def memoryless(f: Callable[[Term], frozenset], rs: RuleSet) -> IntensionalStrategy:
    """Lift a per-term step chooser into a history-ignoring strategy."""
    return IntensionalStrategy(lambda tr: f(tr.current), True, rs)


def all_steps(rs: RuleSet) -> IntensionalStrategy:
    """The universal strategy: every redex is allowed at every point."""
    return memoryless(lambda t: frozenset(all_redexes(t, rs)), rs)


def innermost(rs: RuleSet) -> IntensionalStrategy:
    """Allow exactly the redexes at maximal positions in the prefix order.

    Maximal means no other redex sits strictly below; several incomparable
    positions can qualify at once.
    """

    def choose(t: Term) -> frozenset:
        labels = all_redexes(t, rs)
        pts = [lab.position for lab in labels]
        return frozenset(
            lab
            for lab in labels
            if not any(p.is_below(lab.position) for p in pts)
        )

    return memoryless(choose, rs)


def rightmost_innermost(rs: RuleSet) -> IntensionalStrategy:
    """Pick at most one innermost redex: rightmost position, first rule.

    Innermost positions are pairwise prefix-incomparable, so the rightmost
    one is the lexicographic maximum of their paths; when several rules
    apply there, declaration order in `rs` decides.
    """
    rank = {rule.label: i for i, rule in enumerate(rs)}
    inner = innermost(rs)

    def choose(tr: TracedObject) -> frozenset:
        labels = inner.choose(tr)
        if not labels:
            return frozenset()
        best_path = max(lab.position.path for lab in labels)
        at_best = [lab for lab in labels if lab.position.path == best_path]
        return frozenset({min(at_best, key=lambda lab: rank[lab.rule_label])})

    return IntensionalStrategy(choose, True, rs)


def bounded(k: int, base: IntensionalStrategy) -> IntensionalStrategy:
    """Defer to `base` while the trace is shorter than k-1, else stop.

    The cutoff is exactly |trace| < k-1, which caps generated derivations
    at length k-1 (not k); see the package docs on bounded strategies.
    """
    if k < 1:
        raise ValueError("bound must be at least 1")

    def choose(tr: TracedObject) -> frozenset:
        if len(tr) < k - 1:
            return base.choose(tr)
        return frozenset()

    return IntensionalStrategy(choose, False, base.rules)


def is_prefix_closed(ds) -> bool:
    """True iff every prefix of every member is itself a member."""
    members = set(ds)
    return all(d.prefix(i) in members for d in members for i in range(len(d)))


def normal_forms_under(zeta: IntensionalStrategy, a: Term, fuel: int) -> set:
    """Terms the strategy can reach from `a` and then offers no step at.

    Breadth-first over traced objects; each fired step costs one unit of
    fuel, and running out with work left raises FuelExhausted.  Memoryless
    strategies are deduplicated on the current term.
    """
    normals: set[Term] = set()
    frontier = deque([traced(a)])
    seen = {a} if zeta.memoryless else None
    while frontier:
        tr = frontier.popleft()
        choices = zeta.sorted_choice(tr)
        if not choices:
            normals.add(tr.current)
            continue
        for label in choices:
            if fuel <= 0:
                raise FuelExhausted(
                    f"normal-form search from {print_term(a)} ran out of fuel"
                )
            fuel -= 1
            nxt = tr.step(label, zeta.rules)
            if seen is not None:
                if nxt.current in seen:
                    continue
                seen.add(nxt.current)
            frontier.append(nxt)
    return normals
