"""Evidence propagation on singly connected Spohnian networks.

Three entry points, one per evidence regime:

- propagate_single: one piece of evidence at one variable, any finite
  strength. The observed variable's marginal is revised, then each family
  that can reach the evidence is rebuilt from its connector, the one member
  through which every path from the evidence enters the family: the table
  is conditioned on the connector and the connector's revised marginal is
  added back. A family fires as soon as its connector's posterior is known,
  and every rebuilt table hands out posteriors for all of its members, so
  the wave moves outward one family at a time. Working per family rather
  than per skeleton edge matters at a node with several parents: evidence
  arriving through one parent may leave a co-parent's marginal untouched
  even though the family table shifts, and only the family rebuild gets
  that right.

- propagate_certain_multi: several pieces of certain evidence, applied by
  an asynchronous message engine. Messages carry per-value changes in
  implausibility for the shared variable of an edge. Because deliveries
  add deltas, the totals telescope and the final tables do not depend on
  delivery order; constant offsets picked up from cross traffic vanish in
  the single s-normalization performed per node at quiescence. Normalizing
  earlier would bake the constants in, so nothing is normalized mid-flight.

- propagate_uncertain_multi: target marginals are imposed by attaching a
  binary dummy child per target, observing it with certainty, running the
  certain engine, and discarding the dummies. With one target the final
  marginal equals the target exactly; with several targets on dependent
  variables the imposed marginals can land elsewhere, which is inherent to
  the construction and pinned by a regression test rather than "fixed".

The engine mutates only its own per-node working vectors; input networks
are never modified.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .diagram import InfluenceDiagram
from .errors import (
    AllInfinite,
    ContradictoryEvidence,
    DuplicateTargetVariable,
    ImpossibleEvidence,
    InvalidNetwork,
    SpaceMismatch,
    UnknownValue,
)
from .network import SpohnianNetwork
from .ocf import OCF, Proposition, StateSpace, Variable
from .ranks import (
    INF,
    NEG_INF,
    BeliefStrength,
    Rank,
    SignedDelta,
    rank_delta,
    s_normalize,
)


@dataclass(frozen=True)
class EvidenceSpec:
    """One observation: either a value proposition with a strength, or a
    whole target marginal for the variable (used by the uncertain mode)."""

    variable: str
    values: tuple[str, ...] | None = None
    target: tuple[Rank, ...] | None = None
    strength: BeliefStrength = INF

    def __post_init__(self):
        if self.values is not None:
            object.__setattr__(self, "values", tuple(self.values))
        if self.target is not None:
            object.__setattr__(self, "target", tuple(self.target))
        if (self.values is None) == (self.target is None):
            raise ValueError("evidence needs exactly one of values or target")
        if self.values is not None and not self.values:
            raise ValueError("evidence value list must be non-empty")


@dataclass(frozen=True)
class UpdateMessage:
    """Per-value implausibility changes for one variable, sent along one edge.

    edge is (sender, receiver); evidence injections use (v, v). deltas is
    indexed by the variable's domain order.
    """

    edge: tuple[str, str]
    variable: str
    deltas: tuple[SignedDelta, ...]


@dataclass(frozen=True)
class TraceEntry:
    seq: int
    edge: tuple[str, str]
    variable: str
    deltas: tuple[SignedDelta, ...]

    def format(self) -> str:
        rendered = ",".join(str(d) for d in self.deltas)
        return (
            f"seq={self.seq} edge={self.edge[0]}->{self.edge[1]} "
            f"var={self.variable} deltas=[{rendered}]"
        )


@dataclass(frozen=True)
class Schedule:
    """Delivery order for the message engine.

    fifo is fully deterministic; seeded draws the next message uniformly
    with a fixed seed, so runs are reproducible and every enqueued message
    is still delivered exactly once.
    """

    policy: str = "fifo"
    seed: int | None = None

    def __post_init__(self):
        if self.policy not in ("fifo", "random"):
            raise ValueError(f"unknown schedule policy {self.policy!r}")
        if self.policy == "random" and self.seed is None:
            raise ValueError("random schedule needs a seed")

    @classmethod
    def fifo(cls) -> Schedule:
        return cls("fifo")

    @classmethod
    def seeded(cls, seed: int) -> Schedule:
        return cls("random", seed)


def _require_valid(net: SpohnianNetwork) -> None:
    report = net.validate()
    if not report.ok:
        raise InvalidNetwork("; ".join(report.problems))


def _single_var_prop(space_1d, variable: str, values: Sequence[str]) -> Proposition:
    return Proposition.constrain(space_1d, {variable: values})


def _marginal_vector(vec: list[SignedDelta], digit_of: list[int], card: int) -> list[SignedDelta]:
    out: list[SignedDelta] = [INF] * card
    for i, r in enumerate(vec):
        j = digit_of[i]
        if r < out[j]:
            out[j] = r
    return out


def propagate_single(
    net: SpohnianNetwork,
    evidence: EvidenceSpec,
    trace: list[TraceEntry] | None = None,
) -> SpohnianNetwork:
    """Assimilate one observation and return the updated network.

    Infinite strength is the certain case and is handed to the message
    engine with a one-element evidence list; the result is the same
    conditioning, reached through the same machinery as multi-evidence runs.
    """
    _require_valid(net)
    if evidence.values is None:
        raise ValueError("single-evidence propagation needs a value proposition")
    d = net.diagram
    observed = evidence.variable
    domain = d.variable(observed).domain
    if evidence.strength is INF:
        return propagate_certain_multi(net, [evidence], trace=trace)
    if evidence.strength is NEG_INF:
        flipped = tuple(v for v in domain if v not in set(evidence.values))
        if not flipped:
            raise ImpossibleEvidence("certainly disbelieving the full domain is contradictory")
        return propagate_certain_multi(
            net, [EvidenceSpec(observed, values=flipped)], trace=trace
        )

    prior = net.marginal(observed)
    prop = _single_var_prop(prior.space, observed, evidence.values)
    post = prior.revise(prop, evidence.strength)

    post_marg: dict[str, OCF] = {observed: post}
    seq = 1
    if trace is not None:
        deltas = tuple(rank_delta(post.ranks[j], prior.ranks[j]) for j in range(len(domain)))
        trace.append(TraceEntry(seq, (observed, observed), observed, deltas))

    connector = {
        node: d.unique_connector(d.family(node), observed) for node in d.names
    }
    new_tables: dict[str, OCF] = {}
    pending = list(d.names)
    while pending:
        held: list[str] = []
        fired = False
        for node in pending:
            y = connector[node]
            if y is None:
                new_tables[node] = net.tables[node]
                fired = True
                continue
            if y not in post_marg:
                held.append(node)
                continue
            fired = True
            table = net.tables[node]
            post_y = post_marg[y]
            prior_y = table.marginalize((y,))
            deltas = tuple(
                rank_delta(post_y.ranks[j], prior_y.ranks[j])
                for j in range(len(prior_y.ranks))
            )
            if any(dv != 0 for dv in deltas):
                rebuilt = _rebuild_from_connector(table, y, post_y)
                if trace is not None and node != observed:
                    seq += 1
                    trace.append(TraceEntry(seq, (y, node), y, deltas))
            else:
                rebuilt = table
            new_tables[node] = rebuilt
            for member in rebuilt.space.names:
                if member not in post_marg:
                    post_marg[member] = rebuilt.marginalize((member,))
        if not fired:
            raise InvalidNetwork(
                "propagation stalled; the diagram is not singly connected"
            )
        pending = held
    return SpohnianNetwork(d, new_tables)


def _rebuild_from_connector(table: OCF, connector: str, post: OCF) -> OCF:
    """New family table: old table conditioned on the connector, plus the
    connector's revised marginal."""
    digit = table.space.projection((connector,))
    marg = table.marginalize((connector,))
    out: list[Rank] = []
    for i, r in enumerate(table.ranks):
        if r is INF:
            out.append(INF)
            continue
        j = digit[i]
        out.append(r - marg.ranks[j] + post.ranks[j])
    return OCF(table.space, tuple(out))


def propagate_certain_multi(
    net: SpohnianNetwork,
    evidence: Sequence[EvidenceSpec],
    schedule: Schedule = Schedule.fifo(),
    trace: list[TraceEntry] | None = None,
) -> SpohnianNetwork:
    """Assimilate several pieces of certain evidence by message passing.

    Every delivery adds the message's per-value deltas into the receiving
    family's working vector, advances the arrival edge's outbound snapshot
    by the same deltas (so nothing a neighbor said is echoed back at it),
    and forwards the change in each other shared marginal since it was last
    sent. Tables are s-normalized once, at quiescence; a node whose vector
    has gone entirely infinite names the contradiction.
    """
    _require_valid(net)
    d = net.diagram
    for ev in evidence:
        if ev.values is None:
            raise ValueError("certain propagation needs value evidence, not targets")
        if ev.strength is not INF:
            raise ValueError("certain propagation requires strength inf for every item")

    vec: dict[str, list[SignedDelta]] = {
        node: list(net.tables[node].ranks) for node in d.names
    }
    spaces: dict[str, StateSpace] = {node: net.tables[node].space for node in d.names}
    # Outbound snapshot per (node, incident edge): the shared-variable
    # marginal as of the last send, advanced by arrivals over that edge.
    snap: dict[tuple[str, tuple[str, str]], list[SignedDelta]] = {}
    for node in d.names:
        for edge in d.incident_edges(node):
            shared = edge[0]
            digit = spaces[node].projection((shared,))
            card = len(d.variable(shared).domain)
            snap[(node, edge)] = _marginal_vector(vec[node], digit, card)

    queue: list[UpdateMessage] = []
    for ev in evidence:
        domain = d.variable(ev.variable).domain
        chosen = set(ev.values)
        for v in chosen:
            if v not in domain:
                raise UnknownValue(f"variable {ev.variable!r} has no value {v!r}")
        prior = net.marginal(ev.variable)
        prop = _single_var_prop(prior.space, ev.variable, ev.values)
        if prior.rank_of(prop) is INF:
            raise ImpossibleEvidence(
                f"evidence on {ev.variable} is already ruled out by the network"
            )
        deltas = tuple(0 if v in chosen else INF for v in domain)
        queue.append(UpdateMessage((ev.variable, ev.variable), ev.variable, deltas))

    rng = random.Random(schedule.seed) if schedule.policy == "random" else None
    seq = 0
    while queue:
        msg = queue.pop(0) if rng is None else queue.pop(rng.randrange(len(queue)))
        seq += 1
        if trace is not None:
            trace.append(TraceEntry(seq, msg.edge, msg.variable, msg.deltas))
        node = msg.edge[1]
        space = spaces[node]
        digit = space.projection((msg.variable,))
        work = vec[node]
        deltas = msg.deltas
        for i in range(len(work)):
            dd = deltas[digit[i]]
            if dd is INF:
                work[i] = INF
            elif dd != 0 and work[i] is not INF:
                work[i] += dd
        arrival: tuple[str, str] | None = None
        if msg.edge[0] != msg.edge[1]:
            a, b = msg.edge
            arrival = (a, b) if (a, b) in d._edge_set else (b, a)
            snapshot = snap[(node, arrival)]
            for j, dd in enumerate(deltas):
                if dd is INF:
                    snapshot[j] = INF
                elif dd != 0 and snapshot[j] is not INF:
                    snapshot[j] += dd
        for edge in d.incident_edges(node):
            if edge == arrival:
                continue
            shared = edge[0]
            digit_s = space.projection((shared,))
            card = len(d.variable(shared).domain)
            current = _marginal_vector(work, digit_s, card)
            snapshot = snap[(node, edge)]
            out = tuple(rank_delta(current[j], snapshot[j]) for j in range(card))
            if any(dd != 0 for dd in out):
                snap[(node, edge)] = current
                receiver = edge[1] if edge[0] == node else edge[0]
                queue.append(UpdateMessage((node, receiver), shared, out))

    new_tables: dict[str, OCF] = {}
    for node in d.names:
        try:
            normalized = s_normalize(vec[node])
        except AllInfinite as exc:
            raise ContradictoryEvidence(
                f"evidence drives every cell of {node}'s table to infinity"
            ) from exc
        new_tables[node] = OCF(spaces[node], normalized)
    return SpohnianNetwork(d, new_tables)


def augment_with_dummy(
    net: SpohnianNetwork, variable: str, target: OCF
) -> tuple[SpohnianNetwork, Variable]:
    """Attach a binary dummy child whose observation imposes the target.

    The dummy's pair table puts target + offset under "observed" and the
    current marginal under "unobserved"; the offset keeps the variable's
    marginal untouched until the dummy is actually observed.
    """
    d = net.diagram
    var = d.variable(variable)
    want = StateSpace((var,))
    if target.space != want:
        raise SpaceMismatch(
            f"target for {variable} must be a single-variable ranking over it, "
            f"got one over {target.space.names}"
        )
    current = net.marginal(variable).ranks
    offset = 0
    for j, t in enumerate(target.ranks):
        if t is INF:
            continue
        c = current[j]
        if c is INF:
            raise ImpossibleEvidence(
                f"target gives finite rank to an impossible value of {variable}"
            )
        offset = max(offset, c - t)
    name = f"_observe_{variable}"
    taken = set(d.names)
    while name in taken:
        name = "_" + name
    dummy = Variable(name, ("observed", "unobserved"))
    pair_space = StateSpace((var, dummy))
    ranks: list[Rank] = []
    for j in range(len(var.domain)):
        ranks.append(target.ranks[j] + offset)
        ranks.append(current[j])
    new_diagram = InfluenceDiagram(
        d.variables + (dummy,), d.edges + ((variable, name),)
    )
    tables = dict(net.tables)
    tables[name] = OCF(pair_space, tuple(ranks))
    return SpohnianNetwork(new_diagram, tables), dummy


def propagate_uncertain_multi(
    net: SpohnianNetwork,
    targets: Sequence[tuple[str, OCF]],
    schedule: Schedule = Schedule.fifo(),
    trace: list[TraceEntry] | None = None,
) -> SpohnianNetwork:
    """Impose target marginals via dummy observations, then strip the dummies."""
    _require_valid(net)
    seen: set[str] = set()
    for name, _ in targets:
        if name in seen:
            raise DuplicateTargetVariable(f"two targets for variable {name!r}")
        seen.add(name)
    if not targets:
        return net
    augmented = net
    dummy_names: list[str] = []
    for name, target in targets:
        augmented, dummy = augment_with_dummy(augmented, name, target)
        dummy_names.append(dummy.name)
    evidence = [EvidenceSpec(dn, values=("observed",)) for dn in dummy_names]
    settled = propagate_certain_multi(augmented, evidence, schedule, trace)
    kept = {node: settled.tables[node] for node in net.diagram.names}
    return SpohnianNetwork(net.diagram, kept)
