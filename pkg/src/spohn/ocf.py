"""Ordinal conditional functions over finite multivariate state spaces.

An OCF assigns every state a rank: how implausible it is, 0 meaning fully
plausible and INF meaning impossible. At least one state always has rank 0.
The rank of a proposition is the rank of its least implausible state, a
proposition is believed when every rank-0 state satisfies it, and learning
is rank shifting: learning (A, alpha) makes the best A-state rank 0 and the
best non-A-state rank alpha. That shift is exactly reversible, which is the
point of using ranks instead of probabilities here.

States are value tuples in declared variable order; tables are dense,
row-major with the last variable varying fastest. Propositions are bitsets
over state indices. Everything is immutable; operations return new objects.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    EmptyCondition,
    EmptyProposition,
    FullProposition,
    ImpossibleEvidence,
    SpaceMismatch,
    UnknownValue,
    UnknownVariable,
)
from .ranks import (
    INF,
    NEG_INF,
    BeliefStrength,
    Rank,
    _Infinity,
    _NegInfinity,
    is_rank,
)


@dataclass(frozen=True)
class Variable:
    """A named variable with a finite domain of at least two value labels."""

    name: str
    domain: tuple[str, ...]

    def __post_init__(self):
        if not self.name:
            raise ValueError("variable name must be non-empty")
        object.__setattr__(self, "domain", tuple(self.domain))
        if len(self.domain) < 2:
            raise ValueError(f"variable {self.name!r} needs at least two values")
        if len(set(self.domain)) != len(self.domain):
            raise ValueError(f"variable {self.name!r} has duplicate values")


@dataclass(frozen=True)
class StateSpace:
    """Cartesian product of variable domains, with mixed-radix indexing."""

    variables: tuple[Variable, ...]
    _proj_cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if not self.variables:
            raise ValueError("state space needs at least one variable")
        names = [v.name for v in self.variables]
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names in state space")

    @cached_property
    def size(self) -> int:
        n = 1
        for v in self.variables:
            n *= len(v.domain)
        return n

    @cached_property
    def strides(self) -> tuple[int, ...]:
        out = [1] * len(self.variables)
        for i in range(len(self.variables) - 2, -1, -1):
            out[i] = out[i + 1] * len(self.variables[i + 1].domain)
        return tuple(out)

    @cached_property
    def names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.variables)

    @cached_property
    def _position(self) -> dict[str, int]:
        return {v.name: i for i, v in enumerate(self.variables)}

    @cached_property
    def _value_index(self) -> tuple[dict[str, int], ...]:
        return tuple({val: i for i, val in enumerate(v.domain)} for v in self.variables)

    def variable(self, name: str) -> Variable:
        pos = self._position.get(name)
        if pos is None:
            raise UnknownVariable(f"unknown variable {name!r}")
        return self.variables[pos]

    def value_digit(self, name: str, value: str) -> int:
        pos = self._position.get(name)
        if pos is None:
            raise UnknownVariable(f"unknown variable {name!r}")
        digit = self._value_index[pos].get(value)
        if digit is None:
            raise UnknownValue(f"variable {name!r} has no value {value!r}")
        return digit

    def index_of(self, assignment: Sequence[str] | Mapping[str, str]) -> int:
        if isinstance(assignment, Mapping):
            missing = set(self.names) - set(assignment)
            if missing:
                raise UnknownVariable(f"assignment missing variables {sorted(missing)}")
            assignment = [assignment[n] for n in self.names]
        if len(assignment) != len(self.variables):
            raise ValueError("assignment length does not match variable count")
        idx = 0
        for pos, value in enumerate(assignment):
            digit = self._value_index[pos].get(value)
            if digit is None:
                name = self.variables[pos].name
                raise UnknownValue(f"variable {name!r} has no value {value!r}")
            idx += digit * self.strides[pos]
        return idx

    def state_at(self, index: int) -> tuple[str, ...]:
        if not 0 <= index < self.size:
            raise IndexError(f"state index {index} out of range")
        out = []
        for v, stride in zip(self.variables, self.strides):
            digit, index = divmod(index, stride)
            out.append(v.domain[digit])
        return tuple(out)

    def states(self) -> Iterator[tuple[str, ...]]:
        return (self.state_at(i) for i in range(self.size))

    def canonical_subset(self, names: Iterable[str]) -> tuple[str, ...]:
        """The given names, deduplicated and put in declared order."""
        wanted = set(names)
        for n in wanted:
            if n not in self._position:
                raise UnknownVariable(f"unknown variable {n!r}")
        return tuple(n for n in self.names if n in wanted)

    def subspace(self, names: Iterable[str]) -> StateSpace:
        keep = self.canonical_subset(names)
        if not keep:
            raise ValueError("subspace needs at least one variable")
        return StateSpace(tuple(self.variable(n) for n in keep))

    def projection(self, names: Iterable[str]) -> list[int]:
        """Map each full state index to its index in subspace(names).

        Computed with an odometer sweep, O(size), and cached per subset.
        """
        keep = self.canonical_subset(names)
        if not keep:
            raise ValueError("projection needs at least one variable")
        cached = self._proj_cache.get(keep)
        if cached is not None:
            return cached
        kept_set = set(keep)
        sub_stride = 1
        reduced_stride = [0] * len(self.variables)
        for pos in range(len(self.variables) - 1, -1, -1):
            if self.variables[pos].name in kept_set:
                reduced_stride[pos] = sub_stride
                sub_stride *= len(self.variables[pos].domain)
        cards = [len(v.domain) for v in self.variables]
        proj = [0] * self.size
        digits = [0] * len(self.variables)
        ridx = 0
        for i in range(self.size):
            proj[i] = ridx
            for pos in range(len(self.variables) - 1, -1, -1):
                digits[pos] += 1
                ridx += reduced_stride[pos]
                if digits[pos] < cards[pos]:
                    break
                ridx -= digits[pos] * reduced_stride[pos]
                digits[pos] = 0
        self._proj_cache[keep] = proj
        return proj


@dataclass(frozen=True)
class Proposition:
    """A set of states, stored as a bitset over state indices."""

    space: StateSpace
    mask: int

    def __post_init__(self):
        if not 0 <= self.mask < (1 << self.space.size):
            raise ValueError("proposition mask outside the state space")

    @classmethod
    def empty(cls, space: StateSpace) -> Proposition:
        return cls(space, 0)

    @classmethod
    def full(cls, space: StateSpace) -> Proposition:
        return cls(space, (1 << space.size) - 1)

    @classmethod
    def of_states(cls, space: StateSpace, indices: Iterable[int]) -> Proposition:
        mask = 0
        for i in indices:
            if not 0 <= i < space.size:
                raise ValueError(f"state index {i} out of range")
            mask |= 1 << i
        return cls(space, mask)

    @classmethod
    def constrain(cls, space: StateSpace, constraints: Mapping[str, Iterable[str]]) -> Proposition:
        """States whose value for every constrained variable is among those allowed."""
        if not constraints:
            return cls.full(space)
        allowed: list[tuple[list[int], set[int]]] = []
        for name, values in constraints.items():
            digits = {space.value_digit(name, v) for v in values}
            allowed.append((space.projection((name,)), digits))
        mask = 0
        for i in range(space.size):
            if all(proj[i] in digits for proj, digits in allowed):
                mask |= 1 << i
        return cls(space, mask)

    def _check_space(self, other: Proposition) -> None:
        if self.space != other.space:
            raise SpaceMismatch("propositions live in different state spaces")

    def __and__(self, other: Proposition) -> Proposition:
        self._check_space(other)
        return Proposition(self.space, self.mask & other.mask)

    def __or__(self, other: Proposition) -> Proposition:
        self._check_space(other)
        return Proposition(self.space, self.mask | other.mask)

    def __invert__(self) -> Proposition:
        return Proposition(self.space, self.mask ^ ((1 << self.space.size) - 1))

    @property
    def is_empty(self) -> bool:
        return self.mask == 0

    @property
    def is_full(self) -> bool:
        return self.mask == (1 << self.space.size) - 1

    def count(self) -> int:
        return bin(self.mask).count("1")

    def has(self, index: int) -> bool:
        return bool((self.mask >> index) & 1)

    def indices(self) -> Iterator[int]:
        mask = self.mask
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low

    def states(self) -> list[tuple[str, ...]]:
        return [self.space.state_at(i) for i in self.indices()]


@dataclass(frozen=True)
class OCF:
    """A ranking of all states: dense, min 0, possibly infinite entries."""

    space: StateSpace
    ranks: tuple[Rank, ...]

    def __post_init__(self):
        object.__setattr__(self, "ranks", tuple(self.ranks))
        if len(self.ranks) != self.space.size:
            raise ValueError(
                f"rank table has {len(self.ranks)} entries, space has {self.space.size} states"
            )
        has_zero = False
        for r in self.ranks:
            if not is_rank(r):
                raise ValueError(f"invalid rank {r!r}")
            if r == 0:
                has_zero = True
        if not has_zero:
            raise ValueError("no state has rank 0")

    def rank_of(self, prop: Proposition) -> Rank:
        """Rank of a proposition: the rank of its best state."""
        if prop.space != self.space:
            raise SpaceMismatch("proposition is over a different state space")
        if prop.is_empty:
            raise EmptyProposition("the empty proposition has no rank")
        return min(self.ranks[i] for i in prop.indices())

    def is_believed(self, prop: Proposition) -> bool:
        """True when every rank-0 state satisfies the proposition."""
        if prop.space != self.space:
            raise SpaceMismatch("proposition is over a different state space")
        return all(prop.has(i) for i, r in enumerate(self.ranks) if r == 0)

    def belief_strength(self, prop: Proposition) -> BeliefStrength:
        """How firmly the proposition is held: negative when disbelieved.

        Defined only for proper non-empty propositions.
        """
        if prop.space != self.space:
            raise SpaceMismatch("proposition is over a different state space")
        if prop.is_empty:
            raise EmptyProposition("belief strength of the empty proposition is undefined")
        if prop.is_full:
            raise FullProposition("belief strength of the full space is undefined")
        k = self.rank_of(prop)
        if isinstance(k, _Infinity):
            return NEG_INF
        if k > 0:
            return -k
        return self.rank_of(~prop)

    def revise(self, prop: Proposition, strength: BeliefStrength) -> OCF:
        """Learn (prop, strength): best prop-state to 0, best complement-state to strength.

        A negative strength is the same lesson about the complement: learning
        A at -n is learning not-A at n, and the tables come out identical.
        Infinite strength defers to revise_certain; states already impossible
        stay impossible no matter what.
        """
        if prop.space != self.space:
            raise SpaceMismatch("proposition is over a different state space")
        if prop.is_empty:
            raise EmptyProposition("cannot learn the empty proposition")
        if isinstance(strength, _NegInfinity):
            return self.revise_certain(~prop)
        if isinstance(strength, int) and strength < 0:
            return self.revise(~prop, -strength)
        if prop.is_full:
            return self
        k_in = self.rank_of(prop)
        if isinstance(k_in, _Infinity):
            raise ImpossibleEvidence("the proposition is already ruled out")
        if isinstance(strength, _Infinity):
            return self.revise_certain(prop)
        k_out = self.rank_of(~prop)
        out = []
        for i, r in enumerate(self.ranks):
            if prop.has(i):
                out.append(r - k_in)
            elif isinstance(k_out, _Infinity):
                out.append(r)  # already certain in prop; complement stays impossible
            else:
                out.append(r - k_out + strength)
        return OCF(self.space, tuple(out))

    def revise_certain(self, prop: Proposition) -> OCF:
        """Learn prop with certainty: condition on it, excluding everything else."""
        if prop.space != self.space:
            raise SpaceMismatch("proposition is over a different state space")
        if prop.is_empty:
            raise EmptyProposition("cannot learn the empty proposition")
        if prop.is_full:
            return self
        k_in = self.rank_of(prop)
        if isinstance(k_in, _Infinity):
            raise ImpossibleEvidence("the proposition is already ruled out")
        out = tuple(
            (r - k_in) if prop.has(i) else INF for i, r in enumerate(self.ranks)
        )
        return OCF(self.space, out)

    def cond_rank(self, prop: Proposition, given: Proposition) -> Rank:
        """Rank of prop conditional on given; INF when they are incompatible."""
        if prop.space != self.space or given.space != self.space:
            raise SpaceMismatch("propositions are over a different state space")
        if given.is_empty:
            raise EmptyCondition("cannot condition on the empty proposition")
        k_given = self.rank_of(given)
        if isinstance(k_given, _Infinity):
            raise EmptyCondition("cannot condition on an impossible proposition")
        both = prop & given
        if both.is_empty:
            return INF
        return self.rank_of(both) - k_given

    def marginalize(self, names: Iterable[str]) -> OCF:
        """Project onto the named variables; each reduced state keeps its best rank."""
        keep = self.space.canonical_subset(names)
        if not keep:
            raise ValueError("must keep at least one variable")
        if keep == self.space.names:
            return self
        proj = self.space.projection(keep)
        sub = self.space.subspace(keep)
        out: list[Rank] = [INF] * sub.size
        for i, r in enumerate(self.ranks):
            j = proj[i]
            if r < out[j]:
                out[j] = r
        return OCF(sub, tuple(out))

    def is_independent(self, x: str, y: str, given: Iterable[str] = ()) -> bool:
        """Variable-level conditional independence of x and y given a set.

        Holds when conditioning on y never changes x's conditional ranks,
        cell by cell, at every jointly possible value of the conditioners.
        """
        z = self.space.canonical_subset(given)
        if x in z or y in z or x == y:
            raise ValueError("x, y and the conditioning set must be disjoint")
        self.space.variable(x)
        self.space.variable(y)
        m_xyz = self.marginalize((x, y, *z))
        m_yz = m_xyz.marginalize((y, *z))
        m_xz = m_xyz.marginalize((x, *z))
        m_z = m_xyz.marginalize(z) if z else None
        p_yz = m_xyz.space.projection((y, *z))
        p_xz = m_xyz.space.projection((x, *z))
        p_z = m_xyz.space.projection(z) if z else None
        for i, k_xyz in enumerate(m_xyz.ranks):
            k_yz = m_yz.ranks[p_yz[i]]
            if isinstance(k_yz, _Infinity):
                continue  # jointly impossible conditioners carry no constraint
            k_z = m_z.ranks[p_z[i]] if m_z is not None else 0
            k_xz = m_xz.ranks[p_xz[i]]
            left = k_xyz - k_yz
            right = k_xz - k_z
            if left != right:
                return False
        return True
