import random

import pytest

from xverse.braid import BraidWord, braid_stats, parse_braid
from xverse.dga import (DgaError, build_dga, build_modified_dga, differential,
                        structured_matrices, verify_d_squared,
                        verify_d_squared_sampled, verify_phi_factorization,
                        verify_phi_factorization_sampled)
from xverse.ncpoly import NCPoly, gen
from xverse.phi import apply_phi

UNKNOT = BraidWord(1)
TREFOIL = parse_braid("1 1 1")
FIG8 = parse_braid("1 -2 1 -2")


def rand_knot(rng, n, ln):
    # a knot closure needs at least n - 1 letters and word length with
    # the parity of n - 1
    ln = max(ln, n - 1)
    if (ln - (n - 1)) % 2:
        ln += 1
    while True:
        b = BraidWord(n, tuple(rng.choice(
            [s * k for k in range(1, n) for s in (1, -1)]) for _ in range(ln)))
        if braid_stats(b).is_knot:
            return b


def test_unknot_differentials_exact():
    dga = build_dga(UNKNOT, "minus")
    d = {str(g): str(p) for g, p in dga.diff.items()}
    assert d["c11"] == "-1 - m*U + L*V + L*m"
    assert d["d11"] == "L^-1 + L^-1*m*U - V - m"
    assert d["e11"] == "-c11 - L*d11"
    assert d["f11"] == "-L^-1*c11 - d11"


def test_a_generators_closed():
    dga = build_dga(TREFOIL, "minus")
    for g in dga.generators:
        if g.family == "a":
            assert dga.diff[g].is_zero()


def test_trefoil_infinity_b21():
    dga = build_dga(TREFOIL, "infinity")
    assert str(dga.diff[gen("b", 2, 1)]) == "-L^-1*m^3*U*V^-1*a12 + a21"


def test_links_rejected():
    with pytest.raises(DgaError, match="links unsupported"):
        build_dga(parse_braid("1 -1"))
    with pytest.raises(DgaError):
        build_modified_dga(parse_braid("1 -1 2 -2"))


def test_unknown_flavor():
    with pytest.raises(DgaError):
        build_dga(TREFOIL, "sharp")


def test_differential_lowers_degree_homogeneously():
    dga = build_dga(FIG8, "minus")
    for g in dga.generators:
        img = dga.diff[g]
        if img.is_zero():
            continue
        assert img.homogeneous_degree() == g.degree - 1


def test_d_squared_all_flavors_small():
    for flavor in ("minus", "hat", "doublehat", "infinity"):
        for b in (UNKNOT, TREFOIL, FIG8):
            assert verify_d_squared(build_dga(b, flavor)) == []


def test_d_squared_modified_dga():
    for flavor in ("minus", "infinity"):
        for b in (UNKNOT, TREFOIL):
            assert verify_d_squared(build_modified_dga(b, flavor)) == []


def test_corrupted_presentation_detected():
    dga = build_dga(TREFOIL, "minus")
    m = structured_matrices(TREFOIL)
    for i in range(1, 3):
        for j in range(1, 3):
            g = gen("e", i, j)
            dga.diff[g] = dga.diff[g] - m.Bhat.at(i, j).specialize("minus", dga.sl)
    bad = {g for g, _ in verify_d_squared(dga)}
    assert {gen("e", 1, 2), gen("e", 2, 1)} <= bad


def test_modified_generator_count():
    dga = build_modified_dga(FIG8, "minus")
    n = 3
    families = {}
    for g in dga.generators:
        families[g.family] = families.get(g.family, 0) + 1
    assert families["a"] == n * (n - 1)
    assert families["c"] == n * n
    assert families["d"] == n * n
    assert families["e"] == n * (n + 1) // 2
    assert families["f"] == n * (n + 1) // 2


def test_leibniz_rule_examples():
    dga = build_dga(UNKNOT, "minus")
    c = NCPoly.generator("c", 1, 1)
    dc = dga.diff[gen("c", 1, 1)]
    # |c| = 1, so d(cc) = (dc)c - c(dc)
    assert differential(dga, c * c) == dc * c - c * dc
    assert differential(dga, NCPoly.one()).is_zero()
    with pytest.raises(DgaError):
        differential(dga, NCPoly.generator("c", 1, 2))


def test_leibniz_degree_zero_left_factor():
    dga = build_dga(TREFOIL, "minus")
    a12 = NCPoly.generator("a", 1, 2)
    b21 = NCPoly.generator("b", 2, 1)
    assert differential(dga, a12 * b21) == a12 * dga.diff[gen("b", 2, 1)]


def test_phi_factorization_examples():
    assert verify_phi_factorization(parse_braid("1")) == []
    assert verify_phi_factorization(BraidWord(3)) == []
    rng = random.Random(7)
    for _ in range(5):
        b = BraidWord(3, tuple(rng.choice([1, 2, -1, -2]) for _ in range(4)))
        assert verify_phi_factorization(b) == []


def test_sampled_verifiers_agree_with_symbolic():
    for b in (UNKNOT, TREFOIL, FIG8):
        for flavor in ("minus", "infinity"):
            assert verify_d_squared_sampled(build_dga(b, flavor), seed=3) == []
    for b in (TREFOIL, FIG8):
        assert verify_phi_factorization_sampled(b, seed=3) == []


def test_sampled_verifier_detects_corruption():
    dga = build_dga(TREFOIL, "minus")
    m = structured_matrices(TREFOIL)
    g = gen("e", 1, 2)
    dga.diff[g] = dga.diff[g] - m.Bhat.at(1, 2).specialize("minus", dga.sl)
    assert g in verify_d_squared_sampled(dga, seed=3)


def test_hat_matrices_coincide_at_units():
    m = structured_matrices(TREFOIL)

    # set U = V = m = 1 by dropping their exponents
    def strip(p):
        out = NCPoly.zero()
        for (word, b), c in p.terms.items():
            out += NCPoly({(word, (b[0], 0, 0, 0)): c})
        return out

    for i in range(1, 3):
        for j in range(1, 3):
            assert strip(m.Ahat.at(i, j)) == strip(m.Acheck.at(i, j))


def test_prop_27_identity_and_b_differentials():
    rng = random.Random(11)
    for _ in range(6):
        n = rng.randrange(2, 4)
        b = rand_knot(rng, n, rng.randrange(2, 6))
        m = structured_matrices(b)
        from xverse.phi import phi_matrices
        phi_l, phi_r = phi_matrices(b)
        phiAhat = m.Ahat.map(lambda p: apply_phi(b, p))
        phiAcheck = m.Acheck.map(lambda p: apply_phi(b, p))
        dC = m.Ahat - m.Lam @ phi_l @ m.Acheck
        dD = m.Acheck - m.Ahat @ phi_r @ m.LamInv
        lhs = m.Ahat - m.Lam @ phiAhat @ m.LamInv
        rhs = dC + (m.Lam @ phi_l) @ dD
        assert lhs == rhs
        lhs2 = m.Acheck - m.Lam @ phiAcheck @ m.LamInv
        rhs2 = dD + dC @ (phi_r @ m.LamInv)
        assert lhs2 == rhs2
        # the b-row differentials equal the same combination
        dga = build_dga(b, "minus")
        dBhat = m.Ahat - m.Lam @ phiAhat @ m.LamInv
        dBcheck = m.Acheck - m.Lam @ phiAcheck @ m.LamInv
        # applying the Leibniz differential to Bhat/Bcheck entries matches
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i == j:
                    continue
                bh = m.Bhat.at(i, j)
                bc = m.Bcheck.at(i, j)
                assert differential(dga, bh.specialize("minus", dga.sl)) == \
                    dBhat.at(i, j).specialize("minus", dga.sl)
                assert differential(dga, bc.specialize("minus", dga.sl)) == \
                    dBcheck.at(i, j).specialize("minus", dga.sl)


def test_lam_override_validation():
    w = braid_stats(TREFOIL).writhe
    good = [(1, 1, -w), (1, 0, 0)]
    dga = build_dga(TREFOIL, "minus", lam_override=good)
    assert verify_d_squared(dga) == []
    with pytest.raises(DgaError, match="det Lam mismatch"):
        build_dga(TREFOIL, "minus", lam_override=[(1, 0, 0), (1, 0, 0)])
    with pytest.raises(DgaError):
        build_dga(TREFOIL, "minus", lam_override=[(2, 1, -w), (1, 0, 0)])
