"""ICSI problem instances and their derived combinatorial families.

An instance is a quadruple: m receivers, n messages, side-information sets
X_i, and a demand map f with f(i) never inside X_i.  All indices are
0-based internally; the JSON document format and CLI reports are 1-based.

The "confusable" vectors of an instance over GF(q) are those z that vanish
on some receiver's side information while being nonzero at that receiver's
demand; their supports form a family that depends only on the instance,
not on q.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import (
    BudgetExceeded,
    DemandInSideInfo,
    IndexOutOfRange,
    MalformedDocument,
)
from .field_linalg import DEFAULT_ENUM_BUDGET, Field, FVector


@dataclass(frozen=True)
class IcsiInstance:
    """An index-coding-with-side-information instance.

    demands[i] is the 0-based message index receiver i wants; side_info[i]
    is the 0-based set of messages receiver i already holds.
    """

    num_receivers: int
    num_messages: int
    demands: tuple[int, ...]
    side_info: tuple[frozenset[int], ...]

    def __post_init__(self):
        m, n = self.num_receivers, self.num_messages
        if m < 0 or n < 0:
            raise MalformedDocument("negative receiver or message count")
        if len(self.demands) != m or len(self.side_info) != m:
            raise MalformedDocument("demand/side-information arity mismatch")
        for i in range(m):
            d = self.demands[i]
            if not (0 <= d < n):
                raise IndexOutOfRange(f"demand of receiver {i + 1} out of range")
            for x in self.side_info[i]:
                if not (0 <= x < n):
                    raise IndexOutOfRange(f"side information of receiver {i + 1} out of range")
            if d in self.side_info[i]:
                raise DemandInSideInfo(
                    f"receiver {i + 1} demands message {d + 1} it already holds"
                )

    def complement(self, i: int) -> frozenset[int]:
        """Messages receiver i neither holds nor demands."""
        return frozenset(range(self.num_messages)) - self.side_info[i] - {self.demands[i]}


@dataclass(frozen=True)
class ReceiverFrame:
    """One receiver's view: demand, side information, and the rest."""

    index: int
    demand: int
    side_info: frozenset[int]
    complement: frozenset[int]


def receiver_frame(inst: IcsiInstance, i: int) -> ReceiverFrame:
    if not (0 <= i < inst.num_receivers):
        raise IndexOutOfRange(f"receiver index {i} out of range")
    return ReceiverFrame(i, inst.demands[i], inst.side_info[i], inst.complement(i))


def frames(inst: IcsiInstance) -> tuple[ReceiverFrame, ...]:
    return tuple(receiver_frame(inst, i) for i in range(inst.num_receivers))


# ---------------------------------------------------------------------------
# document format: {"m": int, "n": int, "f": [...], "X": [[...], ...]}, 1-based


def parse_instance(text: str) -> IcsiInstance:
    """Parse the JSON instance document (1-based indices)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedDocument(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise MalformedDocument("instance document must be a JSON object")
    try:
        m, n = doc["m"], doc["n"]
        f_list, x_list = doc["f"], doc["X"]
    except KeyError as exc:
        raise MalformedDocument(f"missing key {exc}") from exc
    if not (isinstance(m, int) and isinstance(n, int)):
        raise MalformedDocument("m and n must be integers")
    if not (isinstance(f_list, list) and isinstance(x_list, list)):
        raise MalformedDocument("f and X must be arrays")
    if len(f_list) != m or len(x_list) != m:
        raise MalformedDocument("f and X must each have m entries")
    demands = []
    side = []
    for i in range(m):
        fi = f_list[i]
        xi = x_list[i]
        if not isinstance(fi, int):
            raise MalformedDocument("demands must be integers")
        if not isinstance(xi, list) or not all(isinstance(v, int) for v in xi):
            raise MalformedDocument("side-information sets must be integer arrays")
        if len(set(xi)) != len(xi):
            raise MalformedDocument(f"duplicate side-information entry for receiver {i + 1}")
        if not (1 <= fi <= n):
            raise IndexOutOfRange(f"demand of receiver {i + 1} out of range")
        for v in xi:
            if not (1 <= v <= n):
                raise IndexOutOfRange(f"side information of receiver {i + 1} out of range")
        demands.append(fi - 1)
        side.append(frozenset(v - 1 for v in xi))
    return IcsiInstance(m, n, tuple(demands), tuple(side))


def instance_to_doc(inst: IcsiInstance) -> dict:
    """The JSON-ready 1-based document for an instance."""
    return {
        "m": inst.num_receivers,
        "n": inst.num_messages,
        "f": [d + 1 for d in inst.demands],
        "X": [sorted(x + 1 for x in xs) for xs in inst.side_info],
    }


# ---------------------------------------------------------------------------
# built-in instances


def example1() -> IcsiInstance:
    """Three receivers, each holding the two messages it does not demand."""
    return IcsiInstance(
        3, 3, (0, 1, 2),
        (frozenset({1, 2}), frozenset({0, 2}), frozenset({0, 1})),
    )


def pentagon() -> IcsiInstance:
    """Five receivers on a 5-cycle: each holds its two cycle neighbours."""
    side = [{1, 4}, {0, 2}, {1, 3}, {2, 4}, {0, 3}]
    return IcsiInstance(5, 5, tuple(range(5)), tuple(frozenset(s) for s in side))


def odd_cycle_complement(ell: int) -> IcsiInstance:
    """n = 2*ell + 1 receivers; receiver i holds everything except its cycle
    neighbours and itself (side-information graph = complement of the cycle)."""
    if ell < 2:
        raise MalformedDocument("odd-cycle-complement needs ell >= 2")
    n = 2 * ell + 1
    side = []
    for i in range(n):
        excluded = {(i - 1) % n, i, (i + 1) % n}
        side.append(frozenset(set(range(n)) - excluded))
    return IcsiInstance(n, n, tuple(range(n)), tuple(side))


def no_side_info(n: int) -> IcsiInstance:
    """n receivers, one demand each, no side information at all."""
    if n < 0:
        raise MalformedDocument("negative message count")
    return IcsiInstance(n, n, tuple(range(n)), tuple(frozenset() for _ in range(n)))


def builtin_instance(name: str) -> IcsiInstance:
    """Resolve a built-in instance name, e.g. 'pentagon' or
    'odd-cycle-complement:3'."""
    if name == "pentagon":
        return pentagon()
    if name == "example1":
        return example1()
    if name.startswith("odd-cycle-complement:"):
        return odd_cycle_complement(_int_suffix(name))
    if name.startswith("no-side-info:"):
        return no_side_info(_int_suffix(name))
    raise MalformedDocument(f"unknown built-in instance {name!r}")


def _int_suffix(name: str) -> int:
    try:
        return int(name.split(":", 1)[1])
    except ValueError as exc:
        raise MalformedDocument(f"bad parameter in {name!r}") from exc


# ---------------------------------------------------------------------------
# support family and confusable-vector enumeration


def in_support_family(inst: IcsiInstance, K: Iterable[int]) -> bool:
    """Whether nonempty K in [n] is the support of some confusable vector.

    Equivalent predicate: some receiver demands a message in K and holds
    nothing in K.  Independent of the field size.
    """
    kset = frozenset(K)
    if not kset:
        raise MalformedDocument("support family is over nonempty sets only")
    for v in kset:
        if not (0 <= v < inst.num_messages):
            raise IndexOutOfRange(f"message index {v} out of range")
    for i in range(inst.num_receivers):
        if inst.demands[i] in kset and not (inst.side_info[i] & kset):
            return True
    return False


class ErrorVectorStream:
    """Iterator over the confusable vectors of an instance over GF(q).

    Duplicates (vectors confusable for several receivers) are suppressed
    with a packed-integer visited set when q^n fits in 64 bits; otherwise
    the stream may repeat vectors and `duplicates_possible` is True.
    """

    def __init__(self, inst: IcsiInstance, field: Field, budget: int = DEFAULT_ENUM_BUDGET):
        self.duplicates_possible = field.q ** inst.num_messages > 1 << 64
        for i in range(inst.num_receivers):
            count = (field.q - 1) * field.q ** len(inst.complement(i))
            if count > budget:
                raise BudgetExceeded(
                    f"receiver {i + 1} contributes {count} vectors, over budget {budget}"
                )
        self._iter = self._generate(inst, field)

    @staticmethod
    def _generate(inst: IcsiInstance, field: Field) -> Iterator[FVector]:
        n = inst.num_messages
        q = field.q
        dedup = q ** n <= 1 << 64
        seen: set[int] = set()
        for i in range(inst.num_receivers):
            demand = inst.demands[i]
            free = sorted(inst.complement(i))
            for dval in field.nonzero():
                for tail in itertools.product(field.elements(), repeat=len(free)):
                    entries = [0] * n
                    entries[demand] = dval
                    for pos, val in zip(free, tail):
                        entries[pos] = val
                    if dedup:
                        key = 0
                        for x in entries:
                            key = key * q + x
                        if key in seen:
                            continue
                        seen.add(key)
                    yield FVector(field, tuple(entries))

    def __iter__(self) -> Iterator[FVector]:
        return self._iter

    def __next__(self) -> FVector:
        return next(self._iter)


def enumerate_error_vectors(
    inst: IcsiInstance, field: Field, budget: int = DEFAULT_ENUM_BUDGET
) -> ErrorVectorStream:
    """Stream every vector over GF(q) that some receiver can confuse with
    zero: nonzero at that receiver's demand, zero across its side
    information, arbitrary elsewhere outside both."""
    return ErrorVectorStream(inst, field, budget)
