"""The finite groups Delta = weights/roots and Delta_dual = coweights/coroots.

Both groups are presented on the fundamental (co)weight basis: the ambient
lattice is Z^n and the sublattice is spanned by the simple (co)roots written
in that basis. An element of a :class:`FiniteAbelianGroup` is a tuple of
residues, one per generator.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .rootsys import (
    COWEIGHT,
    WEIGHT,
    NotIrreducibleError,
    RootSystem,
    TypeLabel,
    phi,
)
from .zlinalg import (
    IntMatrix,
    RatMatrix,
    block_diagonal,
    hnf,
    integer_kernel,
    invert_rational,
    snf,
    solve_in_lattice,
)

Element = Tuple[int, ...]


@dataclass(frozen=True, order=True)
class QmodZ:
    """A class in Q/Z, stored as its representative in [0, 1)."""

    value: Fraction

    def __init__(self, x):
        x = x.value if isinstance(x, QmodZ) else Fraction(x)
        object.__setattr__(self, "value", x - (x.numerator // x.denominator))

    def __add__(self, other):
        return QmodZ(self.value + QmodZ(other).value)

    def __mul__(self, k: int):
        return QmodZ(self.value * k)

    __rmul__ = __mul__

    def __neg__(self):
        return QmodZ(-self.value)

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, QmodZ):
            return self.value == other.value
        if isinstance(other, (int, Fraction)):
            return self.value == QmodZ(other).value
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __str__(self):
        return str(self.value)

    def __repr__(self):
        return f"QmodZ({self.value})"


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Quotient of Z^n by a full-rank sublattice, on chosen generators.

    ``reduce(v) = (P @ v) mod orders`` sends an ambient integer vector to its
    coordinates; ``lift`` has the generators' ambient coordinates as columns.
    """

    orders: Tuple[int, ...]
    names: Tuple[str, ...]
    lift: IntMatrix
    reduce_matrix: IntMatrix
    relations: IntMatrix  # columns generate the sublattice

    @property
    def order(self) -> int:
        return prod(self.orders)

    @property
    def ngens(self) -> int:
        return len(self.orders)

    @property
    def ambient_rank(self) -> int:
        return self.relations.rows

    @property
    def zero(self) -> Element:
        return tuple(0 for _ in self.orders)

    def reduce(self, v: Sequence) -> Element:
        v = tuple(Fraction(x) for x in v)
        if any(x.denominator != 1 for x in v):
            raise ValueError(f"{v} is not a lattice vector")
        img = self.reduce_matrix @ tuple(int(x) for x in v)
        return tuple(x % d for x, d in zip(img, self.orders))

    def lift_element(self, g: Element) -> Tuple[int, ...]:
        return self.lift @ g

    def normalize(self, g: Sequence[int]) -> Element:
        return tuple(x % d for x, d in zip(g, self.orders))

    def add(self, g: Element, h: Element) -> Element:
        return self.normalize([a + b for a, b in zip(g, h)])

    def elements(self) -> Iterator[Element]:
        return itertools.product(*(range(d) for d in self.orders))

    def element_order(self, g: Element) -> int:
        k, cur = 1, self.normalize(g)
        while cur != self.zero:
            cur = self.add(cur, g)
            k += 1
        return k

    def __str__(self):
        return " + ".join(f"Z/{d}" for d in self.orders) or "0"


def _presentation(relations: IntMatrix, names: Sequence[str],
                  preferred: Optional[Sequence[int]] = None) -> FiniteAbelianGroup:
    """Present Z^n / relations, optionally on fundamental (co)weight generators.

    ``preferred`` lists node indices whose basis vectors should serve as the
    generators; if they do not generate with the Smith orders the raw Smith
    generators are kept.
    """
    n = relations.rows
    dec = snf(relations)
    U = dec.U
    diag = dec.diagonal
    if any(d == 0 for d in diag) or len(diag) < n:
        raise ValueError("sublattice is not of full rank")
    keep = [i for i, d in enumerate(diag) if d != 1]
    orders = tuple(diag[i] for i in keep)
    P = IntMatrix.from_rows([U.row(i) for i in keep], cols=n)
    Uinv = invert_rational(U).to_integer()
    L = IntMatrix.from_columns([Uinv.column(i) for i in keep], rows=n)
    raw_names = tuple(_combo_name(L.column(k), names) for k in range(len(keep)))
    group = FiniteAbelianGroup(orders, raw_names, L, P, relations)
    if preferred is not None and len(preferred) == len(orders):
        swapped = _rebase(group, [tuple(int(i == p) for i in range(n)) for p in preferred],
                          [names[p] for p in preferred])
        if swapped is not None:
            return swapped
    return group


def _rebase(group: FiniteAbelianGroup, gens: List[Tuple[int, ...]],
            names: List[str]) -> Optional[FiniteAbelianGroup]:
    """Same group on new generators, given as ambient vectors.

    New generator k must have order ``group.orders[k]``. Coordinates are
    converted by a table built from enumerating all combinations, which is
    fine for the tiny groups this package sees.
    """
    images = [group.reduce(g) for g in gens]
    table: Dict[Element, Element] = {}
    for coeffs in group.elements():
        acc = group.zero
        for c, img in zip(coeffs, images):
            acc = group.add(acc, tuple(c * x for x in img))
        if acc in table:
            return None
        table[acc] = coeffs
    # new coordinates of the old generators give the new reduction matrix
    rows = [[0] * group.ngens for _ in range(group.ngens)]
    for j in range(group.ngens):
        e = tuple(int(i == j) for i in range(group.ngens))
        for k, c in enumerate(table[e]):
            rows[k][j] = c
    T = IntMatrix.from_rows(rows, cols=group.ngens)
    P = (T @ group.reduce_matrix) if group.ngens else group.reduce_matrix
    return FiniteAbelianGroup(
        group.orders,
        tuple(names),
        IntMatrix.from_columns(gens, rows=group.ambient_rank),
        P,
        group.relations,
    )


def _combo_name(vec: Sequence[int], names: Sequence[str]) -> str:
    parts = []
    for c, nm in zip(vec, names):
        if c == 1:
            parts.append(nm)
        elif c == -1:
            parts.append("-" + nm)
        elif c:
            parts.append(f"{c}{nm}")
    return "+".join(parts).replace("+-", "-") or "0"


def _direct_sum(groups: Sequence[FiniteAbelianGroup]) -> FiniteAbelianGroup:
    n = sum(g.ambient_rank for g in groups)
    k = sum(g.ngens for g in groups)
    lift = [[0] * k for _ in range(n)]
    red = [[0] * n for _ in range(k)]
    r0 = c0 = 0
    for g in groups:
        for i in range(g.ambient_rank):
            for j in range(g.ngens):
                lift[r0 + i][c0 + j] = g.lift[i, j]
                red[c0 + j][r0 + i] = g.reduce_matrix[j, i]
        r0 += g.ambient_rank
        c0 += g.ngens
    return FiniteAbelianGroup(
        tuple(d for g in groups for d in g.orders),
        tuple(nm for g in groups for nm in g.names),
        IntMatrix.from_rows(lift, cols=k),
        IntMatrix.from_rows(red, cols=n),
        block_diagonal([g.relations for g in groups]),
    )


def preferred_generators(label: TypeLabel, dual: bool) -> Optional[List[int]]:
    """0-based nodes whose fundamental (co)weights generate the quotient.

    A_n and E6 use node 1, D_n odd uses node n, D_n even nodes n-1 and n.
    Other types have at most one nontrivial class; ``None`` lets the caller
    pick the first fundamental (co)weight outside the sublattice.
    """
    fam, n = label.family, label.rank
    if fam == "A" or (fam == "E" and n == 6):
        return [0]
    if fam == "D":
        return [n - 1] if n % 2 else [n - 2, n - 1]
    return None


def _quotient(R: RootSystem, dual: bool) -> FiniteAbelianGroup:
    pieces = []
    for comp in R.components:
        nodes = list(comp.nodes)
        C = R.cartan.submatrix(nodes, nodes)
        # simple roots in weight coordinates are the columns of C^T,
        # simple coroots in coweight coordinates the columns of C
        rel = C if dual else C.T
        suffix = "v" if dual else ""
        names = [f"f{i + 1}{suffix}" for i in range(comp.label.rank)]
        pref = preferred_generators(comp.label, dual)
        if pref is None:
            pref = _first_outside(rel)
        pieces.append(_presentation(rel, names, pref))
    if not pieces:
        return FiniteAbelianGroup((), (), IntMatrix.zeros(0, 0), IntMatrix.zeros(0, 0),
                                  IntMatrix.zeros(0, 0))
    group = pieces[0] if len(pieces) == 1 else _direct_sum(pieces)
    if len(R.components) > 1:
        # prefix names with component index to keep them unique
        names = []
        for ci, (comp, piece) in enumerate(zip(R.components, pieces)):
            names.extend(f"{comp.label}[{ci + 1}].{nm}" for nm in piece.names)
        group = FiniteAbelianGroup(group.orders, tuple(names), group.lift,
                                   group.reduce_matrix, group.relations)
    return group


def _first_outside(rel: IntMatrix) -> Optional[List[int]]:
    n = rel.rows
    dec = snf(rel)
    nontrivial = [d for d in dec.diagonal if d != 1]
    if len(nontrivial) != 1:
        return None if nontrivial else []
    for i in range(n):
        if solve_in_lattice(rel, [int(i == k) for k in range(n)]) is None:
            return [i]
    return None  # pragma: no cover


def weight_quotient(R: RootSystem) -> FiniteAbelianGroup:
    """Delta = Lambda_w / Lambda_r, on the fundamental weight basis."""
    return R._cached("delta", lambda: _quotient(R, dual=False))


def coweight_quotient(R: RootSystem) -> FiniteAbelianGroup:
    """Delta_dual = Lambda_w^v / Lambda_r^v, on the fundamental coweight basis."""
    return R._cached("delta_dual", lambda: _quotient(R, dual=True))


# --- homomorphisms ----------------------------------------------------------


@dataclass(frozen=True)
class GroupHom:
    source: FiniteAbelianGroup
    target: FiniteAbelianGroup
    # column k = image of source generator k, in target coordinates
    matrix: Tuple[Element, ...]

    def __call__(self, g: Element) -> Element:
        acc = self.target.zero
        for c, img in zip(self.source.normalize(g), self.matrix):
            acc = self.target.add(acc, tuple(c * x for x in img))
        return acc

    def is_zero(self) -> bool:
        return all(img == self.target.zero for img in self.matrix)

    def is_well_defined(self) -> bool:
        return all(
            self.target.normalize([d * x for x in img]) == self.target.zero
            for d, img in zip(self.source.orders, self.matrix)
        )

    def kernel(self) -> List[Element]:
        return [g for g in self.source.elements() if self(g) == self.target.zero]

    def is_injective(self) -> bool:
        return len(self.kernel()) == 1

    def is_bijective(self) -> bool:
        return self.source.order == self.target.order and self.is_injective()

    def __eq__(self, other):
        if not isinstance(other, GroupHom):
            return NotImplemented
        return self.source.orders == other.source.orders and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def table(self) -> List[List[int]]:
        """Matrix with rows indexed by target generators, columns by source generators."""
        return [[img[r] for img in self.matrix] for r in range(self.target.ngens)]


def induced_hom(source: FiniteAbelianGroup, target: FiniteAbelianGroup,
                lattice_map: RatMatrix) -> GroupHom:
    """Hom on quotients induced by a lattice map between the ambient lattices.

    Raises ``ValueError`` if the map sends a relation outside the target
    sublattice (the quotient map would not be well defined).
    """
    for j in range(source.relations.cols):
        img = lattice_map @ source.relations.column(j)
        if target.reduce(img) != target.zero:
            raise ValueError(f"relation {j + 1} maps to a nonzero class {target.reduce(img)}")
    images = tuple(target.reduce(lattice_map @ source.lift.column(k))
                   for k in range(source.ngens))
    return GroupHom(source, target, images)


def rho(R: RootSystem) -> GroupHom:
    """rho: Delta_dual -> Delta, induced by phi on coweights -> weights."""
    def make():
        return induced_hom(coweight_quotient(R), weight_quotient(R),
                           phi(R, COWEIGHT, WEIGHT).matrix)
    return R._cached("rho", make)


def kernel_invariant_factors(h: GroupHom) -> Tuple[int, ...]:
    """Invariant factors of ker h, computed on lattices.

    ker h is K / D Z^k where K = {x in Z^k : M x = 0 mod target orders} and D
    is the diagonal of source orders.
    """
    k, m = h.source.ngens, h.target.ngens
    if k == 0:
        return ()
    M = [[h.matrix[c][r] for c in range(k)] for r in range(m)]
    block = IntMatrix.from_rows(
        [M[r] + [-h.target.orders[s] if s == r else 0 for s in range(m)] for r in range(m)],
        cols=k + m,
    ) if m else None
    if block is None:
        gens = IntMatrix.identity(k)
    else:
        ker = integer_kernel(block)
        gens = IntMatrix.from_columns([ker.column(j)[:k] for j in range(ker.cols)], rows=k)
    H, _ = hnf(gens.T)
    basis = IntMatrix.from_rows([H.row(i) for i in range(H.rows) if any(H.row(i))], cols=k).T
    D = IntMatrix.diagonal(list(h.source.orders))
    X = (invert_rational(basis) @ D).to_integer()
    return tuple(d for d in snf(X).diagonal if d != 1)


@dataclass(frozen=True)
class KernelClass:
    kind: str  # "iso", "zero" or "trivial-center"
    kernel_factors: Tuple[int, ...]


def rho_kernel_class(R: RootSystem) -> KernelClass:
    if not R.irreducible:
        raise NotIrreducibleError(f"kernel classification needs an irreducible system, got {R}")
    h = rho(R)
    factors = kernel_invariant_factors(h)
    if h.source.order == 1:
        return KernelClass("trivial-center", factors)
    if h.is_bijective():
        return KernelClass("iso", factors)
    if h.is_zero():
        return KernelClass("zero", factors)
    return KernelClass("partial", factors)  # no irreducible type lands here


# --- pairings ---------------------------------------------------------------


@dataclass(frozen=True)
class PairingTable:
    left: FiniteAbelianGroup
    right: FiniteAbelianGroup
    values: Tuple[Tuple[QmodZ, ...], ...]

    def __call__(self, x: Element, y: Element) -> QmodZ:
        total = QmodZ(0)
        for i, a in enumerate(x):
            for j, b in enumerate(y):
                total = total + self.values[i][j] * (a * b)
        return total

    def as_strings(self) -> List[List[str]]:
        return [[str(v) for v in row] for row in self.values]

    def is_symmetric(self) -> bool:
        return all(self.values[i][j] == self.values[j][i]
                   for i in range(len(self.values)) for j in range(len(self.values)))

    def is_consistent(self) -> bool:
        """d_i times any entry in row i (or column j) vanishes."""
        rows_ok = all(not (v * d) for d, row in zip(self.left.orders, self.values) for v in row)
        cols_ok = all(not (row[j] * d) for row in self.values
                      for j, d in enumerate(self.right.orders))
        return rows_ok and cols_ok

    def is_perfect(self) -> bool:
        """Both adjoint maps are injective, by enumerating every element."""
        if self.left.order != self.right.order:
            return False
        right = list(self.right.elements())
        left = list(self.left.elements())
        seen = set()
        for x in left:
            sig = tuple(self(x, y) for y in right)
            if sig in seen:
                return False
            seen.add(sig)
        seen = set()
        for y in right:
            sig = tuple(self(x, y) for x in left)
            if sig in seen:
                return False
            seen.add(sig)
        return True


def weight_coweight_gram(R: RootSystem) -> RatMatrix:
    """<f_i, f_j^v>; equals the inverse of the Cartan matrix."""
    return invert_rational(R.cartan)


def duality_pairing(R: RootSystem) -> PairingTable:
    """Delta x Delta_dual -> Q/Z, <x, y> taken on lifts."""
    D, Dv = weight_quotient(R), coweight_quotient(R)
    G = weight_coweight_gram(R)
    vals = []
    for a in range(D.ngens):
        x = D.lift.column(a)
        row = []
        for b in range(Dv.ngens):
            y = Dv.lift.column(b)
            row.append(QmodZ(sum(x[i] * G[i, j] * y[j]
                                 for i in range(R.rank) for j in range(R.rank))))
        vals.append(tuple(row))
    return PairingTable(D, Dv, tuple(vals))


def induced_pairing(R: RootSystem, rho_map: Optional[GroupHom] = None) -> PairingTable:
    """Delta_dual x Delta_dual -> Q/Z, (x, y) -> <rho(y), x>.

    ``rho_map`` substitutes another homomorphism for rho; used to check that
    verification harnesses notice a wrong map.
    """
    h = rho(R) if rho_map is None else rho_map
    pair = duality_pairing(R)
    Dv = coweight_quotient(R)
    gens = [tuple(int(i == k) for i in range(Dv.ngens)) for k in range(Dv.ngens)]
    vals = tuple(tuple(pair(h(y), x) for y in gens) for x in gens)
    return PairingTable(Dv, Dv, vals)
