import pytest

from rootlattice import center
from rootlattice.reduction import (
    build_maps,
    claim_check,
    partition,
    verify_lemma2,
)
from rootlattice.rootsys import (
    COWEIGHT,
    NotIrreducibleError,
    TypeLabel,
    all_labels,
    build,
    fundamental_weights,
    phi,
    product,
)
from rootlattice.zlinalg import IntMatrix, solve_in_lattice

CATALOG = all_labels(8)
NAMES = [str(x) for x in CATALOG]


def test_partition_b3():
    P = partition(build("B3"))
    assert P.pi_r == (0, 1)
    assert P.pi_prime == (2,)
    assert [(c.nodes, str(c.label), c.d) for c in P.components] == [((2,), "A1", 2)]


def test_partition_c4():
    P = partition(build("C4"))
    assert P.pi_r == (1, 3)
    assert [(c.nodes, c.d) for c in P.components] == [((0,), 2), ((2,), 2)]


@pytest.mark.parametrize("n", range(1, 9))
def test_partition_a(n):
    P = partition(build(f"A{n}"))
    assert P.pi_r == ()
    assert len(P.components) == 1
    assert P.components[0].label == TypeLabel("A", n)
    assert P.components[0].d == 1


def test_partition_rejects_products():
    with pytest.raises(NotIrreducibleError):
        partition(product([build("A1"), build("A1")]))


@pytest.mark.parametrize("label", CATALOG, ids=NAMES)
def test_partition_invariants(label):
    R = build(label)
    P = partition(R)
    assert sorted(P.pi_r + P.pi_prime) == list(range(R.rank))
    fw = fundamental_weights(R)
    for i in range(R.rank):
        member = solve_in_lattice(IntMatrix.identity(R.rank), fw.column(i)) is not None
        assert member == (i in P.pi_r)
    short_family = label.family in "BCF"
    for comp in P.components:
        assert comp.label.family == "A"
        sub = R.cartan.submatrix(comp.nodes, comp.nodes)
        assert sub == build(comp.label).cartan
        assert all(R.d_coroot[i] == comp.d for i in comp.nodes)
        if label.family == "G":
            assert comp.d == 3
        elif short_family:
            assert comp.d in (1, 2)
        else:
            assert comp.d == 1


@pytest.mark.parametrize("n", range(1, 6))
def test_maps_identity_for_a(n):
    R = build(f"A{n}")
    M = build_maps(partition(R))
    eye = IntMatrix.identity(n).to_rational()
    assert M.s.matrix == eye and M.t.matrix == eye and M.t_dual.matrix == eye


def test_maps_b3():
    R = build("B3")
    M = build_maps(partition(R))
    assert M.t.matrix.column(0) == (0, 0, 2)
    assert M.t_dual.matrix.column(0) == (0, 0, 1)
    assert M.primed.name == "A1"


def test_maps_e7():
    R = build("E7")
    P = partition(R)
    assert P.pi_r == (0, 2, 3, 5)
    M = build_maps(P)
    assert M.primed.name == "A1xA1xA1"
    assert P.primed_order == (1, 4, 6)
    for k, node in enumerate(P.primed_order):
        assert M.t_dual.matrix.column(k) == tuple(int(i == node) for i in range(7))
    # nodes 2, 5, 7 are pairwise non-adjacent
    assert all(R.cartan[a, b] == 0 for a in (1, 4, 6) for b in (1, 4, 6) if a != b)


@pytest.mark.parametrize("label", CATALOG, ids=NAMES)
def test_s_coefficients_integral_and_t_relations(label):
    R = build(label)
    M = build_maps(partition(R))
    assert M.s.is_integral()
    # t(f'_a) = d_a f_a and t_dual(f'^v_a) = f^v_a on every generator
    for k, node in enumerate(M.partition.primed_order):
        assert M.t.matrix.column(k) == tuple(R.d_coroot[node] * int(i == node) for i in range(R.rank))
    # lattice-level commutativity phi o t_dual = t o phi'
    if M.primed.rank:
        lhs = phi(R, COWEIGHT, "weight") @ M.t_dual
        rhs = M.t @ phi(M.primed, COWEIGHT, "weight")
        assert lhs.matrix == rhs.matrix


@pytest.mark.parametrize("label", CATALOG, ids=NAMES)
def test_verify_lemma2(label):
    results = verify_lemma2(build(label))
    assert [r.check for r in results] == [
        "lemma2.inclusion", "lemma2.diagram", "lemma2.decomposition"]
    assert all(r.passed for r in results), results


@pytest.mark.parametrize("label", ["C4", "C5"])
def test_decomposition_reproduces_rho(label):
    R = build(label)
    M = build_maps(partition(R))
    Dv, D = center.coweight_quotient(R), center.weight_quotient(R)
    Rp = M.primed
    j = center.induced_hom(Dv, center.coweight_quotient(Rp), M.s.matrix)
    t_bar = center.induced_hom(center.weight_quotient(Rp), D, M.t.matrix)
    rho_p = center.rho(Rp)
    composed = [t_bar(rho_p(j(g))) for g in Dv.elements()]
    direct = [center.rho(R)(g) for g in Dv.elements()]
    assert composed == direct
    if label == "C5":
        assert direct == [(0,), (1,)]
    else:
        assert direct == [(0,), (0,)]


def test_dropping_multiplier_is_caught():
    R = build("B3")
    P = partition(R)
    bad = build_maps(P, t_multipliers=[1])
    results = {r.check: r for r in verify_lemma2(R, bad)}
    assert not results["lemma2.inclusion"].passed
    assert "f3v" in results["lemma2.inclusion"].witness
    assert not results["lemma2.decomposition"].passed


@pytest.mark.parametrize("label", CATALOG, ids=NAMES)
def test_claim_check(label):
    assert all(r.passed for r in claim_check(build(label)))


def test_claim_check_a_is_zero():
    R = build("A4")
    M = build_maps(partition(R))
    comp = (M.t_dual @ M.s).matrix
    assert comp == IntMatrix.identity(4).to_rational()
