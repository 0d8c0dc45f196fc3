"""Reduced root systems in simple-root coordinates.

Conventions used throughout the package:

* ``cartan[i][j] = <alpha_i, alpha_j^v>``, the value of the j-th simple
  coroot on the i-th simple root.
* Roots are integer vectors in the simple-root basis, coroots integer
  vectors in the simple-coroot basis.
* Fundamental weights are the columns of ``(cartan^T)^-1`` (simple-root
  coordinates); fundamental coweights are the columns of ``cartan^-1``
  (simple-coroot coordinates).
* Nodes are numbered as in Bourbaki, starting from 0 in code and from 1 in
  anything shown to a user.
* Invariant forms are normalized per irreducible component so that short
  roots (for the form on V) and short coroots (for the form on V*) have
  square length 1.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .zlinalg import IntMatrix, RatMatrix, block_diagonal, invert_rational

FAMILIES = "ABCDEFG"


class InadmissibleTypeError(ValueError):
    """Label does not name a root system (bad family or rank)."""


class NotIrreducibleError(ValueError):
    """Operation is only defined for irreducible root systems."""


@dataclass(frozen=True, order=True)
class TypeLabel:
    family: str
    rank: int

    def __post_init__(self):
        fam, n = self.family, self.rank
        if fam not in FAMILIES:
            raise InadmissibleTypeError(f"unknown family {fam!r}")
        if not isinstance(n, int) or n < 1:
            raise InadmissibleTypeError(f"rank must be a positive integer, got {n!r}")
        ok = {
            "A": n >= 1,
            "B": n >= 2,
            "C": n >= 2,
            "D": n >= 3,
            "E": n in (6, 7, 8),
            "F": n == 4,
            "G": n == 2,
        }[fam]
        if not ok:
            raise InadmissibleTypeError(f"{fam}{n} is not an admissible type")

    @classmethod
    def parse(cls, text: str) -> "TypeLabel":
        m = re.fullmatch(r"\s*([A-Ga-g])\s*_?\s*(\d+)\s*", text)
        if not m:
            raise InadmissibleTypeError(f"cannot parse type label {text!r}")
        return cls(m.group(1).upper(), int(m.group(2)))

    @property
    def canonical(self) -> "TypeLabel":
        """Representative of the isomorphism class (C2 -> B2, D3 -> A3)."""
        if self.family == "C" and self.rank == 2:
            return TypeLabel("B", 2)
        if self.family == "D" and self.rank == 3:
            return TypeLabel("A", 3)
        return self

    @property
    def simply_laced(self) -> bool:
        return self.canonical.family in "ADE"

    def __str__(self):
        return f"{self.family}{self.rank}"


def all_labels(max_rank: int = 8) -> List[TypeLabel]:
    """Every admissible label of rank at most ``max_rank``, exceptional ones included."""
    out = []
    for fam in FAMILIES:
        for n in range(1, max_rank + 1):
            try:
                out.append(TypeLabel(fam, n))
            except InadmissibleTypeError:
                pass
    return out


def _dynkin_data(label: TypeLabel) -> Tuple[List[int], List[Tuple[int, int]]]:
    """Square lengths of simple roots (short = 1) and diagram edges, 0-based."""
    fam, n = label.family, label.rank
    chain = [(i, i + 1) for i in range(n - 1)]
    if fam == "A":
        return [1] * n, chain
    if fam == "B":
        return [2] * (n - 1) + [1], chain
    if fam == "C":
        return [1] * (n - 1) + [2], chain
    if fam == "D":
        if n == 3:
            return [1] * 3, [(0, 1), (0, 2)]
        return [1] * n, [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    if fam == "E":
        return [1] * n, [(0, 2), (1, 3)] + [(i, i + 1) for i in range(2, n - 1)]
    if fam == "F":
        return [2, 2, 1, 1], chain
    if fam == "G":
        return [1, 3], chain
    raise InadmissibleTypeError(str(label))  # pragma: no cover


@dataclass(frozen=True)
class Component:
    label: TypeLabel
    offset: int

    @property
    def nodes(self) -> range:
        return range(self.offset, self.offset + self.label.rank)


@dataclass(frozen=True)
class RootSystem:
    components: Tuple[Component, ...]
    cartan: IntMatrix
    roots: FrozenSet[Tuple[int, ...]]
    coroots: FrozenSet[Tuple[int, ...]]
    root_form: RatMatrix
    coroot_form: RatMatrix
    # d_root[i] = (alpha_i, alpha_i); d_coroot[i] = (alpha_i^v, alpha_i^v)^v
    d_root: Tuple[int, ...]
    d_coroot: Tuple[int, ...]
    _cache: Dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    @property
    def rank(self) -> int:
        return self.cartan.rows

    @property
    def name(self) -> str:
        return "x".join(str(c.label) for c in self.components) or "trivial"

    @property
    def irreducible(self) -> bool:
        return len(self.components) == 1

    @property
    def label(self) -> TypeLabel:
        if not self.irreducible:
            raise NotIrreducibleError(f"{self.name} is not irreducible")
        return self.components[0].label

    def __str__(self):
        return self.name

    def coroot_of(self, root: Sequence[int]) -> Tuple[int, ...]:
        """alpha -> alpha^v, from alpha^v = 2 alpha / (alpha, alpha) written in simple coroots."""
        length = _quad(self.root_form, root)
        out = tuple(Fraction(c) * self.d_root[i] / length for i, c in enumerate(root))
        assert all(x.denominator == 1 for x in out)
        return tuple(int(x) for x in out)

    def pair_root_coroot(self, root: Sequence, coroot: Sequence):
        """<x, y> for x in V (root coordinates) and y in V* (coroot coordinates)."""
        return sum(root[i] * sum(self.cartan[i, j] * coroot[j] for j in range(self.rank))
                   for i in range(self.rank))

    @property
    def positive_roots(self) -> List[Tuple[int, ...]]:
        return sorted((r for r in self.roots if sum(r) > 0), key=lambda r: (sum(r), r))

    @property
    def adjacency(self) -> List[List[int]]:
        n = self.rank
        return [[j for j in range(n) if j != i and self.cartan[i, j] != 0] for i in range(n)]

    # Fundamental (co)weights and basis changes are used constantly; cache them.
    def _cached(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]


def _quad(form: RatMatrix, v: Sequence[int]) -> Fraction:
    n = len(v)
    return sum(v[i] * form[i, j] * v[j] for i in range(n) for j in range(n))


def reflection_closure(cartan: IntMatrix, limit: int = 1_000_000) -> FrozenSet[Tuple[int, ...]]:
    """Orbit of the simple roots under the simple reflections.

    Reflection j sends x to x - <x, alpha_j^v> alpha_j, with
    ``<x, alpha_j^v> = sum_i x_i cartan[i][j]``.
    """
    n = cartan.rows
    cols = [cartan.column(j) for j in range(n)]
    start = [tuple(int(i == k) for i in range(n)) for k in range(n)]
    seen = set(start)
    queue = deque(start)
    while queue:
        x = queue.popleft()
        for j in range(n):
            c = sum(a * b for a, b in zip(x, cols[j]))
            if c:
                y = x[:j] + (x[j] - c,) + x[j + 1:]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
                    if len(seen) > limit:
                        raise RuntimeError("reflection closure did not terminate")
    return frozenset(seen)


def _from_gram(label: TypeLabel) -> RootSystem:
    lengths, edges = _dynkin_data(label)
    n = label.rank
    gram = [[Fraction(0)] * n for _ in range(n)]
    for i, l in enumerate(lengths):
        gram[i][i] = Fraction(l)
    for i, j in edges:
        gram[i][j] = gram[j][i] = Fraction(-max(lengths[i], lengths[j]), 2)
    cartan = IntMatrix.from_rows(
        [[2 * gram[i][j] / gram[j][j] for j in range(n)] for i in range(n)], cols=n
    )
    return _assemble([Component(label, 0)], cartan)


def _assemble(components: List[Component], cartan: IntMatrix) -> RootSystem:
    n = cartan.rows
    root_form = [[Fraction(0)] * n for _ in range(n)]
    coroot_form = [[Fraction(0)] * n for _ in range(n)]
    d_root = [0] * n
    d_coroot = [0] * n
    for comp in components:
        nodes = list(comp.nodes)
        # propagate square lengths along the diagram: c_ij l_j = c_ji l_i
        length = {nodes[0]: Fraction(1)}
        queue = deque([nodes[0]])
        while queue:
            i = queue.popleft()
            for j in nodes:
                if j not in length and cartan[i, j] != 0:
                    length[j] = length[i] * cartan[j, i] / cartan[i, j]
                    queue.append(j)
        short = min(length.values())
        length = {i: l / short for i, l in length.items()}
        long_ = max(length.values())
        for i in nodes:
            for j in nodes:
                ip = cartan[i, j] * length[j] / 2
                root_form[i][j] = ip
                coroot_form[i][j] = long_ * ip / (length[i] * length[j])
            d_root[i] = int(length[i])
            d_coroot[i] = int(long_ / length[i])
    roots = reflection_closure(cartan) if n else frozenset()
    coroots = reflection_closure(cartan.T) if n else frozenset()
    roots = roots | {tuple(-x for x in r) for r in roots}
    coroots = coroots | {tuple(-x for x in r) for r in coroots}
    return RootSystem(
        components=tuple(components),
        cartan=cartan,
        roots=frozenset(roots),
        coroots=frozenset(coroots),
        root_form=RatMatrix.from_rows(root_form, cols=n),
        coroot_form=RatMatrix.from_rows(coroot_form, cols=n),
        d_root=tuple(d_root),
        d_coroot=tuple(d_coroot),
    )


@lru_cache(maxsize=None)
def build(label) -> RootSystem:
    """Root system of an admissible type, e.g. ``build("E7")``."""
    if isinstance(label, str):
        label = TypeLabel.parse(label)
    return _from_gram(label)


def product(systems: Sequence[RootSystem]) -> RootSystem:
    if not systems:
        raise ValueError("product of an empty list of root systems")
    if len(systems) == 1:
        return systems[0]
    return _product(systems)


def _product(systems: Sequence[RootSystem]) -> RootSystem:
    components = []
    offset = 0
    for R in systems:
        for c in R.components:
            components.append(Component(c.label, offset + c.offset))
        offset += R.rank
    cartan = block_diagonal([R.cartan for R in systems]) if systems else IntMatrix.zeros(0, 0)
    return _assemble(components, cartan)


def trivial_system() -> RootSystem:
    """The rank-0 root system (empty product)."""
    return _product([])


def fundamental_weights(R: RootSystem) -> RatMatrix:
    """Columns are the f_i in simple-root coordinates."""
    return R._cached("fw", lambda: invert_rational(R.cartan.T))


def fundamental_coweights(R: RootSystem) -> RatMatrix:
    """Columns are the f_i^v in simple-coroot coordinates."""
    return R._cached("fcw", lambda: invert_rational(R.cartan))


# --- classification ---------------------------------------------------------


def classify_component(cartan: IntMatrix) -> TypeLabel:
    """Identify the type of a connected Cartan matrix (canonical alias)."""
    n = cartan.rows
    adj = [[j for j in range(n) if j != i and cartan[i, j] != 0] for i in range(n)]
    seen, stack = {0}, [0]
    while stack:
        for j in adj[stack.pop()]:
            if j not in seen:
                seen.add(j)
                stack.append(j)
    if len(seen) != n:
        raise NotIrreducibleError("Cartan matrix is not connected")
    if n == 1:
        return TypeLabel("A", 1)
    bonds = {(i, j): cartan[i, j] * cartan[j, i] for i in range(n) for j in adj[i] if i < j}
    if len(bonds) != n - 1:
        raise ValueError("Dynkin diagram contains a cycle")
    degrees = [len(a) for a in adj]
    multiple = [b for b in bonds.values() if b > 1]
    if not multiple:
        branch = [i for i in range(n) if degrees[i] == 3]
        if not branch and max(degrees) <= 2:
            return TypeLabel("A", n)
        if len(branch) != 1 or max(degrees) > 3:
            raise ValueError("not a finite-type Dynkin diagram")
        b = branch[0]
        arms = sorted(_arm_length(adj, b, j) for j in adj[b])
        if arms[:2] == [1, 1]:
            return TypeLabel("D", n).canonical
        if arms[0] == 1 and arms[1] == 2 and arms[2] in (2, 3, 4):
            return TypeLabel("E", n)
        raise ValueError("not a finite-type Dynkin diagram")
    if max(degrees) > 2 or len(multiple) != 1:
        raise ValueError("not a finite-type Dynkin diagram")
    if multiple[0] == 3:
        if n == 2:
            return TypeLabel("G", 2)
        raise ValueError("not a finite-type Dynkin diagram")
    if multiple[0] != 2:
        raise ValueError("not a finite-type Dynkin diagram")
    ends = [i for i in range(n) if degrees[i] == 1]
    path = _path_from(adj, ends[0])
    k = next(p for p in range(n - 1) if bonds[tuple(sorted((path[p], path[p + 1])))] == 2)
    if n == 4 and k == 1:
        return TypeLabel("F", 4)
    if k not in (0, n - 2):
        raise ValueError("not a finite-type Dynkin diagram")
    if k == 0:
        path = path[::-1]
    i, j = path[n - 2], path[n - 1]
    # |c_ij| = 2 means alpha_j is short relative to alpha_i
    family = "B" if abs(cartan[i, j]) == 2 else "C"
    return TypeLabel(family, n).canonical


def _arm_length(adj, center, start) -> int:
    length, prev, cur = 1, center, start
    while True:
        nxt = [j for j in adj[cur] if j != prev]
        if not nxt:
            return length
        prev, cur = cur, nxt[0]
        length += 1


def _path_from(adj, start) -> List[int]:
    path, prev = [start], None
    while True:
        nxt = [j for j in adj[path[-1]] if j != prev]
        if not nxt:
            return path
        prev = path[-1]
        path.append(nxt[0])


def linear_order(cartan: IntMatrix, nodes: Sequence[int]) -> Optional[List[int]]:
    """Order ``nodes`` along a path in the diagram, or ``None`` if they do not form one."""
    nodes = list(nodes)
    adj = {i: [j for j in nodes if j != i and cartan[i, j] != 0] for i in nodes}
    if len(nodes) == 1:
        return nodes
    ends = sorted(i for i in nodes if len(adj[i]) == 1)
    if len(ends) != 2 or any(len(a) > 2 for a in adj.values()):
        return None
    path = _path_from(adj, ends[0])
    return path if len(path) == len(nodes) else None


def diagram_automorphisms(R: RootSystem) -> List[Tuple[int, ...]]:
    """All node permutations ``p`` with ``cartan[p[i]][p[j]] == cartan[i][j]``."""
    n = R.rank
    C = R.cartan
    out = []

    def extend(p):
        k = len(p)
        if k == n:
            out.append(tuple(p))
            return
        for c in range(n):
            if c in p:
                continue
            if all(C[p[i], c] == C[i, k] and C[c, p[i]] == C[k, i] for i in range(k)):
                extend(p + [c])

    extend([])
    return out


# --- the maps phi and phi^v -------------------------------------------------

ROOT, COROOT, WEIGHT, COWEIGHT = "root", "coroot", "weight", "coweight"


@dataclass(frozen=True)
class LatticeMap:
    """Linear map between lattices given on distinguished bases.

    ``source``/``target`` are tags such as ``"coweight:B3"``; the matrix acts
    on column vectors of source coordinates.
    """

    source: str
    target: str
    matrix: RatMatrix

    def __call__(self, v: Sequence) -> Tuple[Fraction, ...]:
        return self.matrix @ v

    def __matmul__(self, other: "LatticeMap") -> "LatticeMap":
        if other.target != self.source:
            raise ValueError(f"cannot compose {self.source}<-... with ...->{other.target}")
        return LatticeMap(other.source, self.target, (self.matrix @ other.matrix).to_rational())

    def __sub__(self, other: "LatticeMap") -> "LatticeMap":
        if (self.source, self.target) != (other.source, other.target):
            raise ValueError("maps have different bases")
        return LatticeMap(self.source, self.target, (self.matrix - other.matrix).to_rational())

    def is_integral(self) -> bool:
        return self.matrix.is_integral()


def tag(kind: str, R: RootSystem) -> str:
    return f"{kind}:{R.name}"


def change_of_basis(R: RootSystem, source: str, target: str) -> LatticeMap:
    """Identity map of V (or V*) written from one basis into another."""
    n = R.rank
    mats = {
        (ROOT, ROOT): IntMatrix.identity(n).to_rational(),
        (WEIGHT, WEIGHT): IntMatrix.identity(n).to_rational(),
        (COROOT, COROOT): IntMatrix.identity(n).to_rational(),
        (COWEIGHT, COWEIGHT): IntMatrix.identity(n).to_rational(),
        (WEIGHT, ROOT): fundamental_weights(R),
        (ROOT, WEIGHT): R.cartan.T.to_rational(),
        (COWEIGHT, COROOT): fundamental_coweights(R),
        (COROOT, COWEIGHT): R.cartan.to_rational(),
    }
    if (source, target) not in mats:
        raise ValueError(f"no basis change from {source} to {target}")
    return LatticeMap(tag(source, R), tag(target, R), mats[(source, target)])


def phi(R: RootSystem, source: str = COROOT, target: str = ROOT) -> LatticeMap:
    """phi: V* -> V with phi(alpha^v) = d_alpha * alpha.

    On simple coroots -> simple roots it is ``diag(d_coroot)``; other bases
    are reached by composing with basis changes.
    """
    def make():
        core = LatticeMap(tag(COROOT, R), tag(ROOT, R),
                          IntMatrix.diagonal(R.d_coroot).to_rational())
        return change_of_basis(R, ROOT, target) @ core @ change_of_basis(R, source, COROOT)
    return R._cached(("phi", source, target), make)


def phi_dual(R: RootSystem, source: str = ROOT, target: str = COROOT) -> LatticeMap:
    """phi^v: V -> V* with phi^v(alpha) = d_{alpha^v} * alpha^v."""
    def make():
        core = LatticeMap(tag(ROOT, R), tag(COROOT, R),
                          IntMatrix.diagonal(R.d_root).to_rational())
        return change_of_basis(R, COROOT, target) @ core @ change_of_basis(R, source, ROOT)
    return R._cached(("phi_dual", source, target), make)


def in_root_lattice(R: RootSystem, v_root: Sequence) -> bool:
    return all(Fraction(x).denominator == 1 for x in v_root)


@dataclass
class CheckResult:
    check: str
    passed: bool
    witness: Optional[str] = None


def check_phi_properties(R: RootSystem) -> List[CheckResult]:
    """Mechanical check of the lattice properties of phi for ``R``.

    (a) phi(f_i^v) lies in the weight lattice; (b) phi(alpha_i^v) lies in the
    root lattice; (c) phi(f_i^v) = d_i f_i; (d) for irreducible ``R``,
    phi o phi^v is multiplication by the square length of a long root.
    """
    from .zlinalg import solve_in_lattice

    n = R.rank
    out = []
    fw = fundamental_weights(R)
    phi_cw_root = phi(R, COWEIGHT, ROOT)
    weight_gens = IntMatrix.identity(n)

    bad = []
    phi_w = phi(R, COWEIGHT, WEIGHT)
    for i in range(n):
        img_w = phi_w.matrix.column(i)
        if solve_in_lattice(weight_gens, img_w) is None:
            bad.append(f"phi(f{i + 1}v) = {_fmt(img_w)} (weight coords) not in weight lattice")
    out.append(CheckResult("phi.weight_lattice", not bad, "; ".join(bad) or None))

    bad = []
    phi_root = phi(R, COROOT, ROOT)
    for i in range(n):
        img = phi_root.matrix.column(i)
        if solve_in_lattice(IntMatrix.identity(n), img) is None:
            bad.append(f"phi(a{i + 1}v) = {_fmt(img)} not in root lattice")
    out.append(CheckResult("phi.root_lattice", not bad, "; ".join(bad) or None))

    bad = []
    for i in range(n):
        got = phi_cw_root.matrix.column(i)
        want = tuple(R.d_coroot[i] * x for x in fw.column(i))
        if got != want:
            bad.append(f"phi(f{i + 1}v) = {_fmt(got)} but d*f{i + 1} = {_fmt(want)}")
    out.append(CheckResult("phi.fundamental", not bad, "; ".join(bad) or None))

    if R.irreducible and n:
        comp = (phi(R) @ phi_dual(R)).matrix
        d_short = max(R.d_root)
        want = IntMatrix.identity(n).scale(d_short).to_rational()
        ok = comp == want
        out.append(CheckResult(
            "phi.phi_dual", ok,
            None if ok else f"phi o phi^v = {comp.tolist()} != {d_short}*id"))
    return out


def _fmt(v) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"
