"""
Symmetric event families.

A family is a ground set ``X = {0, ..., ground_size - 1}`` together with
distinct ``s``-subsets ``E_0, ..., E_{N-1}``. Keeping every element of ``X``
independently with probability ``p`` gives a random subset; event ``A_i``
holds when all of ``E_i`` is kept, and ``I`` is the set of indices whose event
holds. Sets of ground elements are handled as int bitmasks throughout.
"""
import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from clusterlab_core.errors import ImpossibleOutcomeError, InvalidInstanceError
from clusterlab_core.exactprob import ExactProb, Number
from clusterlab_core.guards import CHAIN_FREE_BITS, SYMMETRY_GROUND, check_guard
from clusterlab_core.pool import run_partitioned, split_range

logger = logging.getLogger(__name__)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def mask_of(elements: Iterable[int]) -> int:
    out = 0
    for e in elements:
        out |= 1 << e
    return out


def elements_of(mask: int) -> Tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


@dataclass(frozen=True)
class EventFamily:
    ground_size: int
    uniformity: int
    members: Tuple[Tuple[int, ...], ...]
    masks: Tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        members = tuple(tuple(m) for m in self.members)
        for m in members:
            if len(m) != self.uniformity:
                raise InvalidInstanceError(f"member {m} does not have {self.uniformity} elements")
            if any(b <= a for a, b in zip(m, m[1:])):
                raise InvalidInstanceError(f"member {m} is not strictly increasing")
            if m and (m[0] < 0 or m[-1] >= self.ground_size):
                raise InvalidInstanceError(f"member {m} leaves the ground set")
        if any(b <= a for a, b in zip(members, members[1:])):
            raise InvalidInstanceError("members must be distinct and in lexicographic order")
        object.__setattr__(self, "members", members)
        object.__setattr__(self, "masks", tuple(mask_of(m) for m in members))

    @property
    def N(self) -> int:
        return len(self.members)

    def check_index(self, i: int) -> None:
        if not 0 <= i < self.N:
            raise InvalidInstanceError(f"member index {i} out of range [0, {self.N})")


@dataclass(frozen=True)
class Outcome:
    family: EventFamily = field(repr=False)
    indices: Tuple[int, ...]

    def __post_init__(self):
        indices = tuple(sorted(set(self.indices)))
        for i in indices:
            self.family.check_index(i)
        object.__setattr__(self, "indices", indices)

    def __len__(self) -> int:
        return len(self.indices)

    def complement(self) -> Tuple[int, ...]:
        chosen = set(self.indices)
        return tuple(j for j in range(self.family.N) if j not in chosen)


@dataclass(frozen=True)
class IndexClasses:
    neutral: Tuple[int, ...]
    simple: Tuple[int, ...]
    complex: Tuple[int, ...]

    def default_order(self) -> Tuple[int, ...]:
        return self.neutral + self.simple + self.complex


@dataclass(frozen=True)
class ChainReport:
    order: Tuple[int, ...]
    pi_seq: Tuple[ExactProb, ...]
    revealed_size: int
    product_prob: ExactProb


def _outcome(family: EventFamily, Y) -> Outcome:
    if isinstance(Y, Outcome):
        if Y.family is not family and Y.family != family:
            raise InvalidInstanceError("outcome belongs to a different family")
        return Y
    return Outcome(family, tuple(Y))


def revealed_mask(family: EventFamily, Y) -> int:
    Y = _outcome(family, Y)
    out = 0
    for j in Y.indices:
        out |= family.masks[j]
    return out


def revealed_set(family: EventFamily, Y) -> Tuple[int, ...]:
    """R(Y): the ground elements covered by the members of Y."""
    return elements_of(revealed_mask(family, Y))


def overlaps(family: EventFamily, i: int, j: int) -> bool:
    family.check_index(i)
    family.check_index(j)
    return i != j and bool(family.masks[i] & family.masks[j])


def classify_indices(family: EventFamily, Y) -> IndexClasses:
    """Split the complement of Y by how many members of Y each index overlaps."""
    Y = _outcome(family, Y)
    chosen = [family.masks[i] for i in Y.indices]
    neutral, simple, complex_ = [], [], []
    for j in Y.complement():
        mj = family.masks[j]
        hits = 0
        for mi in chosen:
            if mi & mj:
                hits += 1
                if hits > 1:
                    break
        (neutral, simple, complex_)[min(hits, 2)].append(j)
    return IndexClasses(tuple(neutral), tuple(simple), tuple(complex_))


def is_possible(family: EventFamily, Y) -> bool:
    """Pr(I = Y) > 0, i.e. no member outside Y lies inside R(Y)."""
    Y = _outcome(family, Y)
    covered = revealed_mask(family, Y)
    return not any(family.masks[j] & ~covered == 0 for j in Y.complement())


def realized_outcome(family: EventFamily, subset: Iterable[int]) -> Outcome:
    subset = tuple(subset)
    if any(not 0 <= e < family.ground_size for e in subset):
        raise InvalidInstanceError("subset leaves the ground set")
    kept = mask_of(subset)
    return Outcome(family, tuple(i for i, m in enumerate(family.masks) if m & ~kept == 0))


def _compress(mask: int, free: Sequence[int]) -> int:
    """Re-index ``mask`` onto the positions of the free elements."""
    out = 0
    for pos, e in enumerate(free):
        if mask >> e & 1:
            out |= 1 << pos
    return out


def _first_hit_chunk(task) -> Tuple[List[List[int]], List[int]]:
    residuals, free_bits, start, stop = task
    hits = [[0] * (free_bits + 1) for _ in residuals]
    survive = [0] * (free_bits + 1)
    for subset in range(start, stop):
        c = popcount(subset)
        for k, res in enumerate(residuals):
            if res & subset == res:
                hits[k][c] += 1
                break
        else:
            survive[c] += 1
    return hits, survive


def _weight(p: Number, fixed: int, kept: int, free_bits: int) -> ExactProb:
    return p ** (fixed + kept) * (1 - p) ** (free_bits - kept)


def _free_residuals(family: EventFamily, Y: Outcome, order: Sequence[int]):
    covered = revealed_mask(family, Y)
    free = tuple(e for e in range(family.ground_size) if not covered >> e & 1)
    return covered, free, tuple(_compress(family.masks[j] & ~covered, free) for j in order)


def conditional_chain(
    family: EventFamily,
    Y,
    p: Number,
    order: Optional[Sequence[int]] = None,
    workers: int = 1,
) -> ChainReport:
    """
    Factor Pr(I = Y) as p^|R(Y)| times a product of conditional survival terms.

    ``pi_seq[k]`` is the probability that the residual of ``order[k]`` (its
    elements outside R(Y)) is fully kept, given that no earlier residual in
    the order is. Each term is computed by enumerating every subset of the
    free elements, recording which residual is hit first.
    """
    Y = _outcome(family, Y)
    if not is_possible(family, Y):
        raise ImpossibleOutcomeError(f"outcome {Y.indices} has probability zero")
    if order is None:
        order = classify_indices(family, Y).default_order()
    else:
        order = tuple(order)
        if sorted(order) != list(Y.complement()):
            raise InvalidInstanceError("order must be a permutation of the complement of Y")

    covered, free, residuals = _free_residuals(family, Y, order)
    free_bits = len(free)
    check_guard("chain_free_bits", free_bits, CHAIN_FREE_BITS)
    fixed = popcount(covered)

    tasks = [(residuals, free_bits, c.start, c.stop) for c in split_range(1 << free_bits, workers)]
    hits = [[0] * (free_bits + 1) for _ in residuals]
    survive = [0] * (free_bits + 1)
    for part_hits, part_survive in run_partitioned(_first_hit_chunk, tasks, workers):
        for k, row in enumerate(part_hits):
            for c, v in enumerate(row):
                hits[k][c] += v
        for c, v in enumerate(part_survive):
            survive[c] += v

    remaining: ExactProb = 1
    pis = []
    for row in hits:
        mass = sum(v * _weight(p, 0, c, free_bits) for c, v in enumerate(row) if v)
        pi = mass / remaining if remaining else 0
        pis.append(pi)
        remaining = remaining - mass
    product: ExactProb = p**fixed
    for pi in pis:
        product *= 1 - pi
    logger.debug("chain over %d terms, %d free elements", len(order), free_bits)
    return ChainReport(order=order, pi_seq=tuple(pis), revealed_size=fixed, product_prob=product)


def outcome_probability(family: EventFamily, Y, p: Number) -> ExactProb:
    """Pr(I = Y) by direct enumeration of the ground elements outside R(Y); 0 when impossible."""
    Y = _outcome(family, Y)
    covered, free, _ = _free_residuals(family, Y, ())
    free_bits = len(free)
    check_guard("chain_free_bits", free_bits, CHAIN_FREE_BITS)
    outside = [family.masks[j] for j in Y.complement()]
    counts: Dict[int, int] = {}
    for subset in range(1 << free_bits):
        kept = covered
        for pos, e in enumerate(free):
            if subset >> pos & 1:
                kept |= 1 << e
        if all(m & ~kept for m in outside):
            c = popcount(subset)
            counts[c] = counts.get(c, 0) + 1
    fixed = popcount(covered)
    return sum((v * _weight(p, fixed, c, free_bits) for c, v in counts.items()), 0)


def check_symmetry(family: EventFamily) -> bool:
    """True if the ground-set permutations preserving the family act transitively on members."""
    check_guard("symmetry_ground", family.ground_size, SYMMETRY_GROUND)
    if family.N <= 1:
        return True
    members = set(family.masks)
    reached = set()
    for perm in itertools.permutations(range(family.ground_size)):
        images = set()
        for m in family.masks:
            img = 0
            for e in elements_of(m):
                img |= 1 << perm[e]
            images.add(img)
        if images == members:
            img0 = 0
            for e in elements_of(family.masks[0]):
                img0 |= 1 << perm[e]
            reached.add(img0)
            if len(reached) == family.N:
                return True
    return False
