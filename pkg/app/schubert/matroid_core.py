"""
Matroids given by an explicit basis list.

Element labels are opaque strings. The order in which the ground set is given
is the canonical element order used by every downstream sign convention.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from itertools import combinations
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
from sympy import Poly, QQ, Symbol, div

from app.schubert.exceptions import (
    DivisionNotExact,
    ElementNotInGroundSet,
    EmptyBases,
    ExchangeAxiomFailure,
    GroundSetOverlap,
    NotAdmissible,
    ParseError,
    UnequalCardinality,
)

logger = logging.getLogger(__name__)

Subset = FrozenSet[str]

t = Symbol('t')


class Matroid:
    """
    A matroid on an ordered ground set, stored by its bases.

    Use ``Matroid.from_bases`` to build a validated matroid. The plain
    constructor trusts its input and is used internally for derived
    matroids (duals, minors, sums) whose axioms hold by construction.
    """

    def __init__(self, ground: Sequence[str], bases: Iterable[Iterable[str]], name: Optional[str] = None):
        self.ground: Tuple[str, ...] = tuple(ground)
        self.bases: FrozenSet[Subset] = frozenset(frozenset(b) for b in bases)
        self.name = name or 'M'
        self._position = {e: i for i, e in enumerate(self.ground)}
        self._rank_cache: Dict[Subset, int] = {}

    @classmethod
    def from_bases(cls, ground: Sequence[str], bases: Iterable[Iterable[str]], name: Optional[str] = None) -> 'Matroid':
        """
        Build a matroid and validate the basis axioms.

        Raises:
            ParseError: duplicate ground set labels
            EmptyBases: no bases given
            ElementNotInGroundSet: a basis uses an unknown label
            UnequalCardinality: bases of different sizes
            ExchangeAxiomFailure: basis exchange fails (details name the pair)
        """
        ground = tuple(str(e) for e in ground)
        if len(set(ground)) != len(ground):
            raise ParseError("Ground set contains duplicate labels", {'ground_set': list(ground)})

        basis_sets = [frozenset(str(e) for e in b) for b in bases]
        if not basis_sets:
            raise EmptyBases("A matroid needs at least one basis")

        known = set(ground)
        for b in basis_sets:
            unknown = b - known
            if unknown:
                raise ElementNotInGroundSet(
                    f"Basis uses elements outside the ground set: {sorted(unknown)}",
                    {'elements': sorted(unknown)}
                )

        sizes = {len(b) for b in basis_sets}
        if len(sizes) != 1:
            raise UnequalCardinality("Bases have different cardinalities", {'sizes': sorted(sizes)})

        unique = frozenset(basis_sets)
        for b1 in unique:
            for b2 in unique:
                for x in b1 - b2:
                    if not any((b1 - {x}) | {y} in unique for y in b2 - b1):
                        raise ExchangeAxiomFailure(
                            "Basis exchange axiom fails",
                            {'basis_a': sorted(b1), 'basis_b': sorted(b2), 'element': x}
                        )

        matroid = cls(ground, unique, name=name)
        logger.debug("Validated matroid %s: |E|=%d, rank %d, %d bases",
                     matroid.name, len(ground), matroid.rank, len(unique))
        return matroid

    # Basic structure

    def __eq__(self, other):
        if not isinstance(other, Matroid):
            return NotImplemented
        return self.ground == other.ground and self.bases == other.bases

    def __hash__(self):
        return hash((self.ground, self.bases))

    def __repr__(self):
        return f'<Matroid {self.name}: |E|={len(self.ground)}, rank {self.rank}>'

    @cached_property
    def rank(self) -> int:
        return len(next(iter(self.bases)))

    def sort(self, subset: Iterable[str]) -> Tuple[str, ...]:
        """Elements of subset in ground order."""
        return tuple(sorted(subset, key=self._position.__getitem__))

    def position(self, element: str) -> int:
        return self._position[element]

    def _check_subset(self, subset: Iterable[str]) -> Subset:
        subset = frozenset(subset)
        unknown = [e for e in subset if e not in self._position]
        if unknown:
            raise ElementNotInGroundSet(
                f"Elements not in ground set: {sorted(unknown)}",
                {'elements': sorted(unknown)}
            )
        return subset

    def rank_of(self, subset: Iterable[str]) -> int:
        subset = self._check_subset(subset)
        if subset not in self._rank_cache:
            self._rank_cache[subset] = max(len(b & subset) for b in self.bases)
        return self._rank_cache[subset]

    def closure(self, subset: Iterable[str]) -> Subset:
        subset = self._check_subset(subset)
        r = self.rank_of(subset)
        return subset | frozenset(e for e in self.ground
                                  if e not in subset and self.rank_of(subset | {e}) == r)

    def is_independent(self, subset: Iterable[str]) -> bool:
        subset = self._check_subset(subset)
        return self.rank_of(subset) == len(subset)

    def is_flat(self, subset: Iterable[str]) -> bool:
        subset = self._check_subset(subset)
        return self.closure(subset) == subset

    @cached_property
    def loops(self) -> Subset:
        return self.closure(frozenset())

    @cached_property
    def coloops(self) -> Subset:
        return frozenset.intersection(*self.bases)

    @cached_property
    def independent_sets(self) -> Tuple[Subset, ...]:
        found = {frozenset(s) for b in self.bases for k in range(len(b) + 1)
                 for s in combinations(sorted(b), k)}
        return tuple(sorted(found, key=self.subset_key))

    def subset_key(self, subset: Iterable[str]) -> Tuple:
        """Deterministic sort key: size first, then ground positions."""
        positions = sorted(self._position[e] for e in subset)
        return (len(positions), positions)

    @cached_property
    def flats(self) -> Tuple[Subset, ...]:
        found = {self.closure(s) for s in self.independent_sets}
        return tuple(sorted(found, key=lambda f: (self.rank_of(f),) + self.subset_key(f)))

    @cached_property
    def circuits(self) -> Tuple[Subset, ...]:
        found = []
        for size in range(1, len(self.ground) + 1):
            for combo in combinations(self.ground, size):
                s = frozenset(combo)
                if self.is_independent(s):
                    continue
                if all(self.is_independent(s - {e}) for e in s):
                    found.append(s)
        return tuple(found)

    # Invariants

    def flat_lattice(self) -> 'FlatLattice':
        return FlatLattice.from_matroid(self)

    def whitney_numbers(self) -> List[int]:
        counts = [0] * (self.rank + 1)
        for flat in self.flats:
            counts[self.rank_of(flat)] += 1
        return counts

    def f_vector(self) -> List[int]:
        counts = [0] * (self.rank + 1)
        for s in self.independent_sets:
            counts[len(s)] += 1
        return counts

    def characteristic_polynomial(self) -> Poly:
        """Sum over flats of mu(cl(empty), F) t^(d - r(F)); identically 0 when M has loops."""
        if self.loops:
            return Poly(0, t, domain=QQ)
        lattice = self.flat_lattice()
        mobius = lattice.mobius_from_bottom()
        expr = sum(mobius[f] * t ** (self.rank - lattice.rank_of[f]) for f in lattice.flats)
        return Poly(expr, t, domain=QQ)

    def reduced_characteristic_polynomial(self) -> Poly:
        """
        chi_M(t) / (t - 1), computed by exact division.

        Raises:
            DivisionNotExact: M has loops, or the division leaves a remainder
        """
        if self.loops:
            raise DivisionNotExact(
                "Reduced characteristic polynomial is undefined for matroids with loops",
                {'loops': list(self.sort(self.loops))}
            )
        quotient, remainder = div(self.characteristic_polynomial(), Poly(t - 1, t, domain=QQ))
        if not remainder.is_zero:
            raise DivisionNotExact("chi_M(t) is not divisible by t - 1",
                                   {'remainder': str(remainder.as_expr())})
        return quotient

    # Derived matroids

    def _fresh_label(self, preferred: str) -> str:
        label = preferred
        while label in self._position:
            label += "'"
        return label

    def dual(self) -> 'Matroid':
        ground = frozenset(self.ground)
        return Matroid(self.ground, [ground - b for b in self.bases], name=f'{self.name}*')

    def free_extension(self, label: str = '0') -> 'Matroid':
        """M+0: the new element goes first in the ground order."""
        label = self._fresh_label(label)
        bases = set(self.bases)
        if self.rank > 0:
            bases |= {s | {label} for s in self.independent_sets if len(s) == self.rank - 1}
        return Matroid((label,) + self.ground, bases, name=f'{self.name}+{label}')

    def free_coextension(self, label: str = '0') -> 'Matroid':
        """(M* + 0)*, on the ground set (0, e_1, ..., e_n)."""
        coextension = self.dual().free_extension(label).dual()
        coextension.name = f'coext({self.name})'
        return coextension

    def restriction(self, subset: Iterable[str]) -> 'Matroid':
        subset = self._check_subset(subset)
        r = self.rank_of(subset)
        bases = {b & subset for b in self.bases if len(b & subset) == r}
        return Matroid(self.sort(subset), bases, name=f'{self.name}|{self.label(subset)}')

    def contraction(self, subset: Iterable[str]) -> 'Matroid':
        """M/T; elements of T are removed, the rest keep their order."""
        subset = self._check_subset(subset)
        independent = max((s for s in self.independent_sets if s <= subset), key=len)
        bases = {b - independent for b in self.bases if independent <= b}
        ground = tuple(e for e in self.ground if e not in subset)
        return Matroid(ground, bases, name=f'{self.name}/{self.label(subset)}')

    def minor(self, independent: Iterable[str], flat: Iterable[str]) -> 'Matroid':
        """
        M(I, F): restrict to the flat F, then contract I.

        Loops of the result stay in its ground set.

        Raises:
            NotAdmissible: (I, F) is not an admissible pair
        """
        independent = self._check_subset(independent)
        flat = self._check_subset(flat)
        if not (independent <= flat and self.is_independent(independent) and self.is_flat(flat)):
            raise NotAdmissible(
                f"({self.label(independent)}, {self.label(flat)}) is not an admissible pair",
                {'I': list(self.sort(independent)), 'F': list(self.sort(flat))}
            )
        minor = self.restriction(flat).contraction(independent)
        minor.name = f'{self.name}({self.label(independent)},{self.label(flat)})'
        return minor

    def label(self, subset: Iterable[str]) -> str:
        """Compact label: elements concatenated in ground order, '∅' for the empty set."""
        elements = self.sort(subset)
        if not elements:
            return '∅'
        separator = '' if all(len(e) == 1 for e in self.ground) else ','
        return separator.join(elements)

    def connected_components(self) -> List[Tuple[str, ...]]:
        """Components of M, each in ground order, ordered by first element."""
        graph = nx.Graph()
        graph.add_nodes_from(self.ground)
        for circuit in self.circuits:
            elements = self.sort(circuit)
            graph.add_edges_from(zip(elements, elements[1:]))
        components = [self.sort(c) for c in nx.connected_components(graph)]
        return sorted(components, key=lambda c: self._position[c[0]])

    # Admissible pairs

    def admissible_pairs(self) -> List['AdmissiblePair']:
        pairs = [
            AdmissiblePair(I=s, F=f, rank=self.rank_of(f) - len(s))
            for f in self.flats
            for s in self.independent_sets
            if s <= f
        ]
        return sorted(pairs, key=self.pair_key)

    def pair_key(self, pair: 'AdmissiblePair') -> Tuple:
        return (pair.rank, self.subset_key(pair.F), self.subset_key(pair.I))

    def pair_label(self, pair: 'AdmissiblePair') -> str:
        return f'M({self.label(pair.I)},{self.label(pair.F)})'

    def minor_f_vector(self, pair: 'AdmissiblePair') -> List[int]:
        """f-vector of M(I, F), counted directly from independent sets of M."""
        counts = [0] * (pair.rank + 1)
        for s in self.independent_sets:
            if pair.I <= s <= pair.F:
                counts[len(s) - len(pair.I)] += 1
        return counts


@dataclass(frozen=True)
class AdmissiblePair:
    """(I, F) with I independent, F a flat and I contained in F; rank = r(F) - |I|."""
    I: Subset
    F: Subset
    rank: int


class PairOrder(Enum):
    LESS = 'less'
    GREATER = 'greater'
    EQUAL = 'equal'
    INCOMPARABLE = 'incomparable'


def pair_precedes(lower: AdmissiblePair, upper: AdmissiblePair) -> bool:
    """(J, G) precedes (I, F) iff I is contained in J and G in F."""
    return upper.I <= lower.I and lower.F <= upper.F


def pair_order(first: AdmissiblePair, second: AdmissiblePair) -> PairOrder:
    if first == second:
        return PairOrder.EQUAL
    if pair_precedes(first, second):
        return PairOrder.LESS
    if pair_precedes(second, first):
        return PairOrder.GREATER
    return PairOrder.INCOMPARABLE


@dataclass
class FlatLattice:
    """The lattice of flats, graded by rank, with covers and a memoised join."""
    flats: Tuple[Subset, ...]
    rank_of: Dict[Subset, int]
    covers: Tuple[Tuple[Subset, Subset], ...]
    closure: Callable[[Iterable[str]], Subset] = field(repr=False)
    _joins: Dict[FrozenSet[Subset], Subset] = field(default_factory=dict, repr=False)

    @classmethod
    def from_matroid(cls, matroid: Matroid) -> 'FlatLattice':
        flats = matroid.flats
        rank_of = {f: matroid.rank_of(f) for f in flats}
        covers = tuple(
            (lower, upper)
            for lower in flats
            for upper in flats
            if lower < upper and rank_of[upper] == rank_of[lower] + 1
        )
        return cls(flats=flats, rank_of=rank_of, covers=covers, closure=matroid.closure)

    @property
    def bottom(self) -> Subset:
        return self.flats[0]

    @property
    def top(self) -> Subset:
        return self.flats[-1]

    def join(self, a: Subset, b: Subset) -> Subset:
        key = frozenset((a, b))
        if key not in self._joins:
            self._joins[key] = self.closure(a | b)
        return self._joins[key]

    def mobius_from_bottom(self) -> Dict[Subset, int]:
        mu: Dict[Subset, int] = {}
        for f in self.flats:
            if f == self.bottom:
                mu[f] = 1
            else:
                mu[f] = -sum(mu[g] for g in self.flats if g < f)
        return mu


# Module-level operations

def direct_sum(first: Matroid, second: Matroid) -> Matroid:
    overlap = set(first.ground) & set(second.ground)
    if overlap:
        raise GroundSetOverlap(f"Ground sets overlap: {sorted(overlap)}", {'elements': sorted(overlap)})
    bases = [a | b for a in first.bases for b in second.bases]
    return Matroid(first.ground + second.ground, bases, name=f'{first.name}+{second.name}')


def n_p_i(matroid: Matroid, p: int, i: int) -> int:
    """Sum of f^i of M(I, F) over admissible pairs of rank p + i."""
    if p < 0 or i < 0:
        return 0
    return sum(matroid.minor_f_vector(pair)[i]
               for pair in matroid.admissible_pairs() if pair.rank == p + i)


def N_p(matroid: Matroid, p: int) -> int:
    if p < 0 or p > matroid.rank:
        return 0
    return sum((-1) ** i * n_p_i(matroid, p, i) for i in range(matroid.rank - p + 1))


def whitney_identity_holds(matroid: Matroid) -> bool:
    whitney = matroid.whitney_numbers()
    return all(N_p(matroid, p) == whitney[p] for p in range(matroid.rank + 1))


def coext_f_identity_check(matroid: Matroid) -> bool:
    """|coefficient of t^k in the reduced chi of the free coextension| = f^(d-k)."""
    reduced = matroid.free_coextension().reduced_characteristic_polynomial()
    f = matroid.f_vector()
    d = matroid.rank
    if reduced.degree() != d:
        return False
    return all(abs(reduced.nth(k)) == f[d - k] for k in range(d + 1))
