"""The transverse differential graded algebra of a braid closure.

Generators (over the base ring of ncpoly):

    a_ij (i != j)  degree 0
    b_ij (i != j)  degree 1
    c_ij, d_ij     degree 1
    e_ij, f_ij     degree 2

with matrix differentials

    dA = 0
    dB = A - Lam . phi_B(A) . Lam^-1
    dC = Ahat - Lam . PhiL . Acheck
    dD = Acheck - Ahat . PhiR . Lam^-1
    dE = Bhat - C - Lam . PhiL . D
    dF = Bcheck - D - C . PhiR . Lam^-1

where Lam = diag(L m^-w, 1, ..., 1) and the hatted/checked matrices are
built below.  Flavors specialize the coefficient ring: hat (U=0, V=1),
double-hat (U=V=0), infinity (L^a rewritten with (U/V)^(-a(sl+1)/2),
which turns Lam into the primed diagonal automatically).

The differential extends to products by the Koszul rule
d(xy) = (dx)y + (-1)^|x| x(dy).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .braid import BraidWord, braid_stats
from .ncpoly import GenMatrix, Generator, NCPoly, gen, pow_mod
from .phi import apply_phi, phi_matrices, sigma_images

FLAVORS = ("minus", "hat", "doublehat", "infinity")


class DgaError(ValueError):
    pass


def _gen_entry(family: str, diag: NCPoly | None):
    """Matrix with family generators off-diagonal; diag None means the
    family exists on the diagonal too."""
    def entry(i: int, j: int) -> NCPoly:
        if i == j and diag is not None:
            return diag
        return NCPoly.generator(family, i, j)
    return entry


@dataclass
class StructuredMatrices:
    n: int
    writhe: int
    A: GenMatrix
    B: GenMatrix
    A_lower: GenMatrix
    A_upper: GenMatrix
    Ahat: GenMatrix
    Acheck: GenMatrix
    Bhat: GenMatrix
    Bcheck: GenMatrix
    Lam: GenMatrix
    LamInv: GenMatrix


def _diag_override(entries, n: int, writhe: int) -> tuple[GenMatrix, GenMatrix]:
    """Validate a Lam override: unit monomials in L, m whose product is
    L m^-w, and return (Lam, LamInv)."""
    if len(entries) != n:
        raise DgaError(f"Lam override needs {n} entries")
    polys = []
    det = (1, 0, 0)  # coeff sign, L exp, m exp
    for e in entries:
        if isinstance(e, NCPoly):
            p = e
        else:
            coeff, lexp, mexp = e
            p = NCPoly.scalar(coeff, lam=lexp, mu=mexp)
        terms = list(p.terms.items())
        if len(terms) != 1:
            raise DgaError("Lam override entries must be unit monomials")
        (word, base), coeff = terms[0]
        if word or coeff not in (1, -1) or base[2] or base[3]:
            raise DgaError("Lam override entries must be unit monomials in L, m")
        det = (det[0] * coeff, det[1] + base[0], det[2] + base[1])
        polys.append(p)
    if det != (1, 1, -writhe):
        raise DgaError("det Lam mismatch")
    lam = GenMatrix.diagonal(polys)
    inv = []
    for p in polys:
        (word, base), coeff = next(iter(p.terms.items()))
        inv.append(NCPoly.scalar(coeff, lam=-base[0], mu=-base[1]))
    return lam, GenMatrix.diagonal(inv)


def structured_matrices(b: BraidWord, lam_override=None) -> StructuredMatrices:
    n = b.strands
    w = braid_stats(b).writhe
    A = GenMatrix.build(n, _gen_entry("a", NCPoly.scalar(-2)))
    Bm = GenMatrix.build(n, _gen_entry("b", NCPoly.zero()))

    def lower(i, j):
        if i > j:
            return NCPoly.generator("a", i, j)
        if i == j:
            return NCPoly.scalar(-1)
        return NCPoly.zero()

    def upper(i, j):
        if i < j:
            return NCPoly.generator("a", i, j)
        if i == j:
            return NCPoly.scalar(-1)
        return NCPoly.zero()

    A_lower = GenMatrix.build(n, lower)
    A_upper = GenMatrix.build(n, upper)
    mu_u = lambda p: p.scale_base(mu=1, u=1)
    Ahat = A_lower + A_upper.map(mu_u)
    Acheck = A_lower.map(lambda p: p.scale_base(v=1)) + A_upper.map(lambda p: p.scale_base(mu=1))
    Bhat = GenMatrix.build(n, lambda i, j: NCPoly.zero() if i == j else (
        NCPoly.generator("b", i, j) if i > j else mu_u(NCPoly.generator("b", i, j))))
    Bcheck = GenMatrix.build(n, lambda i, j: NCPoly.zero() if i == j else (
        NCPoly.generator("b", i, j).scale_base(v=1) if i > j
        else NCPoly.generator("b", i, j).scale_base(mu=1)))

    if lam_override is None:
        lam_entries = [NCPoly.scalar(1, lam=1, mu=-w)] + [NCPoly.one()] * (n - 1)
        inv_entries = [NCPoly.scalar(1, lam=-1, mu=w)] + [NCPoly.one()] * (n - 1)
        Lam, LamInv = GenMatrix.diagonal(lam_entries), GenMatrix.diagonal(inv_entries)
    else:
        Lam, LamInv = _diag_override(lam_override, n, w)

    return StructuredMatrices(n=n, writhe=w, A=A, B=Bm, A_lower=A_lower,
                              A_upper=A_upper, Ahat=Ahat, Acheck=Acheck,
                              Bhat=Bhat, Bcheck=Bcheck, Lam=Lam, LamInv=LamInv)


@dataclass
class DgaPresentation:
    braid: BraidWord
    flavor: str
    sl: int
    generators: list[Generator]
    diff: dict[Generator, NCPoly]
    lam_matrix: GenMatrix
    phi_l: GenMatrix
    phi_r: GenMatrix

    def degree(self, g: Generator) -> int:
        return g.degree


def _all_indices(n):
    return [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]


def _offdiag(n):
    return [(i, j) for i, j in _all_indices(n) if i != j]


def _require_knot(b: BraidWord):
    if not braid_stats(b).is_knot:
        raise DgaError("links unsupported")


def _specialize_all(diff, flavor, sl):
    return {g: p.specialize(flavor, sl) for g, p in diff.items()}


def build_dga(b: BraidWord, flavor: str = "minus", lam_override=None) -> DgaPresentation:
    if flavor not in FLAVORS:
        raise DgaError(f"unknown flavor {flavor!r}")
    _require_knot(b)
    n = b.strands
    stats = braid_stats(b)
    m = structured_matrices(b, lam_override)
    phi_l, phi_r = phi_matrices(b)

    phiA = m.A.map(lambda p: apply_phi(b, p))
    Cg = GenMatrix.build(n, lambda i, j: NCPoly.generator("c", i, j))
    Dg = GenMatrix.build(n, lambda i, j: NCPoly.generator("d", i, j))

    dB = m.A - m.Lam @ phiA @ m.LamInv
    dC = m.Ahat - m.Lam @ phi_l @ m.Acheck
    dD = m.Acheck - m.Ahat @ phi_r @ m.LamInv
    dE = m.Bhat - Cg - m.Lam @ phi_l @ Dg
    dF = m.Bcheck - Dg - Cg @ phi_r @ m.LamInv

    for i in range(1, n + 1):
        if not dB.at(i, i).is_zero():
            raise DgaError(f"nonzero diagonal in dB at {i}")

    diff: dict[Generator, NCPoly] = {}
    generators: list[Generator] = []
    for i, j in _offdiag(n):
        g = gen("a", i, j)
        generators.append(g)
        diff[g] = NCPoly.zero()
    for i, j in _offdiag(n):
        g = gen("b", i, j)
        generators.append(g)
        diff[g] = dB.at(i, j)
    for fam, mat in (("c", dC), ("d", dD), ("e", dE), ("f", dF)):
        for i, j in _all_indices(n):
            g = gen(fam, i, j)
            generators.append(g)
            diff[g] = mat.at(i, j)

    diff = _specialize_all(diff, flavor, stats.self_linking)
    lam = m.Lam.map(lambda p: p.specialize(flavor, stats.self_linking))
    return DgaPresentation(braid=b, flavor=flavor, sl=stats.self_linking,
                           generators=generators, diff=diff,
                           lam_matrix=lam, phi_l=phi_l, phi_r=phi_r)


def build_modified_dga(b: BraidWord, flavor: str = "minus",
                       lam_override=None) -> DgaPresentation:
    """The smaller presentation without b-generators: a, c, d plus
    e_{ij} for i <= j and f_{ij} for j <= i."""
    if flavor not in FLAVORS:
        raise DgaError(f"unknown flavor {flavor!r}")
    _require_knot(b)
    n = b.strands
    stats = braid_stats(b)
    m = structured_matrices(b, lam_override)
    phi_l, phi_r = phi_matrices(b)

    Cg = GenMatrix.build(n, lambda i, j: NCPoly.generator("c", i, j))
    Dg = GenMatrix.build(n, lambda i, j: NCPoly.generator("d", i, j))
    dC = m.Ahat - m.Lam @ phi_l @ m.Acheck
    dD = m.Acheck - m.Ahat @ phi_r @ m.LamInv
    LPD = m.Lam @ phi_l @ Dg
    CRL = Cg @ phi_r @ m.LamInv
    scale_u = lambda M: M.map(lambda p: p.scale_base(u=1))
    scale_v = lambda M: M.map(lambda p: p.scale_base(v=1))
    E_diag = Cg + LPD
    E_off = Cg - scale_u(Dg) + LPD - scale_u(CRL)
    F_diag = Dg + CRL
    F_off = Dg - scale_v(Cg) + CRL - scale_v(LPD)

    diff: dict[Generator, NCPoly] = {}
    generators: list[Generator] = []
    for i, j in _offdiag(n):
        g = gen("a", i, j)
        generators.append(g)
        diff[g] = NCPoly.zero()
    for fam, mat in (("c", dC), ("d", dD)):
        for i, j in _all_indices(n):
            g = gen(fam, i, j)
            generators.append(g)
            diff[g] = mat.at(i, j)
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            g = gen("e", i, j)
            generators.append(g)
            diff[g] = E_diag.at(i, i) if i == j else E_off.at(i, j)
    for i in range(1, n + 1):
        for j in range(1, i + 1):
            g = gen("f", i, j)
            generators.append(g)
            diff[g] = F_diag.at(i, i) if i == j else F_off.at(i, j)

    diff = _specialize_all(diff, flavor, stats.self_linking)
    lam = m.Lam.map(lambda p: p.specialize(flavor, stats.self_linking))
    return DgaPresentation(braid=b, flavor=flavor, sl=stats.self_linking,
                           generators=generators, diff=diff,
                           lam_matrix=lam, phi_l=phi_l, phi_r=phi_r)


def differential(dga: DgaPresentation, p: NCPoly) -> NCPoly:
    """Extend the generator differential by the Koszul Leibniz rule."""
    acc: dict = {}
    for (word, base), coeff in p.terms.items():
        sign = 1
        for pos, g in enumerate(word):
            if g not in dga.diff:
                raise DgaError(f"unknown generator {g}")
            dg = dga.diff[g]
            if not dg.is_zero():
                pre = word[:pos]
                post = word[pos + 1:]
                c0 = sign * coeff
                for (w2, b2), c2 in dg.terms.items():
                    t = (pre + w2 + post,
                         (base[0] + b2[0], base[1] + b2[1],
                          base[2] + b2[2], base[3] + b2[3]))
                    s = acc.get(t, 0) + c0 * c2
                    if s:
                        acc[t] = s
                    elif t in acc:
                        del acc[t]
            if g.degree % 2:
                sign = -sign
    out = NCPoly.__new__(NCPoly)
    out.terms = acc
    return out


def verify_d_squared(dga: DgaPresentation) -> list[tuple[Generator, NCPoly]]:
    """Compute d(d(g)) for every generator; returns the failing ones."""
    failures = []
    for g in dga.generators:
        r = differential(dga, dga.diff[g])
        if not r.is_zero():
            failures.append((g, r))
    return failures


def verify_phi_factorization(b: BraidWord) -> list[str]:
    """Check phi_B(M) = PhiL . M . PhiR for M in {A_lower, A_upper, Ahat,
    Acheck}; returns the names of failing identities."""
    m = structured_matrices(b)
    phi_l, phi_r = phi_matrices(b)
    failures = []
    for name, M in (("A_lower", m.A_lower), ("A_upper", m.A_upper),
                    ("Ahat", m.Ahat), ("Acheck", m.Acheck)):
        lhs = M.map(lambda p: apply_phi(b, p))
        rhs = phi_l @ M @ phi_r
        if lhs != rhs:
            failures.append(name)
    return failures


# ---------------------------------------------------------------------------
# Sampled identity checks.  Fully symbolic expansion of d(d(g)) or of the
# factorization identity can generate tens of millions of monomials before
# cancellation on unlucky words.  Instead, evaluate the generators at random
# square matrices over a large prime field; a nonzero difference polynomial
# of word degree below twice the matrix dimension cannot vanish on generic
# matrices, so by Schwartz-Zippel a mismatch survives evaluation except with
# probability about degree/prime per sample point.  Arithmetic is exact.
# ---------------------------------------------------------------------------

# Arithmetic runs in float64 so the batched products hit BLAS; with this
# prime every intermediate (dim * prime^2 for dim <= 31) stays below 2^53
# and is therefore exact.
_SAMPLE_PRIME = 16777213
_MAX_DIM = 31


def _word_span(p: NCPoly) -> int:
    return max((len(word) for word, _ in p.terms), default=0)


def _modp(arr, prime: int):
    """Reduce a nonnegative float64 array mod prime in place.

    np.mod on large float arrays is an order of magnitude slower than a
    multiply-and-floor reduction.  The floor of the rounded quotient can be
    off by one, so a single conditional correction follows."""
    import numpy as np
    q = np.floor(arr * (1.0 / prime))
    arr -= q * prime
    np.add(arr, prime, out=arr, where=arr < 0)
    np.subtract(arr, prime, out=arr, where=arr >= prime)
    return arr


def _rand_matrix(rng, dim: int, prime: int):
    import numpy as np
    return np.array([[rng.randrange(prime) for _ in range(dim)]
                     for _ in range(dim)], dtype=np.float64)


class _Bank:
    """Numbered store of dim x dim matrices; id 0 is the identity, so
    shorter id sequences can be padded with zeros."""

    def __init__(self, dim: int):
        import numpy as np
        self.mats = [np.eye(dim, dtype=np.float64)]
        self.ids: dict = {}
        self.dim = dim

    def add(self, key, mat) -> int:
        idx = self.ids.get(key)
        if idx is None:
            idx = len(self.mats)
            self.mats.append(mat)
            self.ids[key] = idx
        return idx

    def array(self):
        import numpy as np
        return np.stack(self.mats)


def _prod_sum(items, bank_arr, prime: int, dim: int):
    """Sum of coeff * product(bank[id] for id in ids) over items, all mod
    prime, computed as batched matrix products."""
    import numpy as np
    if not items:
        return np.zeros((dim, dim), dtype=np.float64)
    width = max(1, max(len(ids) for _, ids in items))
    idmat = np.zeros((len(items), width), dtype=np.intp)
    coeffs = np.empty(len(items), dtype=np.float64)
    for r, (c, ids) in enumerate(items):
        coeffs[r] = c % prime
        idmat[r, :len(ids)] = ids
    cur = bank_arr[idmat[:, 0]].copy()
    for pos in range(1, width):
        col = idmat[:, pos]
        act = np.nonzero(col)[0]
        if act.size == 0:
            continue
        if act.size == len(items):
            cur = _modp(cur @ bank_arr[col], prime)
        else:
            cur[act] = _modp(cur[act] @ bank_arr[col[act]], prime)
    cur = _modp(coeffs[:, None, None] * cur, prime)
    return _modp(cur.sum(axis=0), prime)


def _base_unit(base, scalars, prime: int) -> int:
    c = 1
    for e, s in zip(base, scalars):
        c = c * pow_mod(s, e, prime) % prime
    return c


def _eval_matrix(p: NCPoly, point, scalars, prime: int, dim: int,
                 bank: _Bank | None = None, bank_arr=None):
    """Evaluate at point (generator -> dim x dim matrix over F_prime) with
    the four base scalars sent to the units in scalars."""
    if bank is None:
        bank = _Bank(dim)
        for g, mat in point.items():
            bank.add(g, mat)
        bank_arr = bank.array()
    items = []
    for (word, base), coeff in p.terms.items():
        c = coeff * _base_unit(base, scalars, prime) % prime
        items.append((c, [bank.ids[g] for g in word]))
    return _prod_sum(items, bank_arr, prime, dim)


def _phi_point(b: BraidWord, values, scalars, prime: int, dim: int):
    """Numeric phi_B: push a point on the a-generators through the braid
    letter by letter.  Returns the point whose value at a_ij equals the
    evaluation of phi_B(a_ij) at the original point."""
    n = b.strands
    vals = dict(values)
    for letter in b.letters:
        cur = vals
        vals = dict(cur)
        for g, img in sigma_images(abs(letter), n, inverse=letter < 0).items():
            vals[g] = _eval_matrix(img, cur, scalars, prime, dim)
    return vals


def _phi_degree_bound(b: BraidWord) -> int:
    """Max word length over all phi_B(a_ij), by folding degrees."""
    n = b.strands
    degs = {gen("a", i, j): 1 for i in range(1, n + 1)
            for j in range(1, n + 1) if i != j}
    for letter in b.letters:
        cur = dict(degs)
        for g, img in sigma_images(abs(letter), n, inverse=letter < 0).items():
            degs[g] = max((sum(cur[x] for x in word) for word, _ in img.terms),
                          default=0)
    return max(degs.values())


def _sample_dim(span: int) -> int:
    dim = max(2, span // 2 + 1)
    if dim > _MAX_DIM:
        raise DgaError(f"identity degree {span} too large for sampling")
    return dim


def verify_d_squared_sampled(dga: DgaPresentation, seed: int = 0,
                             trials: int = 2) -> list[Generator]:
    """Check d(d(g)) = 0 for every generator by evaluation at random
    matrices; returns the generators whose image fails to vanish."""
    prime = _SAMPLE_PRIME
    # word degree of d(d(g)): one letter of a differential word is replaced
    # by that letter's differential
    spans = {g: _word_span(dga.diff[g]) for g in dga.generators}
    deg = 2
    for g in dga.generators:
        for word, _ in dga.diff[g].terms:
            for x in word:
                if spans[x]:
                    deg = max(deg, len(word) - 1 + spans[x])
    dim = _sample_dim(deg)
    rng = random.Random(seed)
    failures = []
    for _ in range(trials):
        point = {g: _rand_matrix(rng, dim, prime) for g in dga.generators}
        scalars = tuple(rng.randrange(1, prime) for _ in range(4))
        bank = _Bank(dim)
        for g, mat in point.items():
            bank.add(g, mat)
        bank_arr = bank.array()
        # letters with nonzero differential actually appearing in words
        needed = {g for gg in dga.generators
                  for word, _ in dga.diff[gg].terms for g in word
                  if not dga.diff[g].is_zero()}
        for g in sorted(needed, key=lambda x: (x.family, x.row, x.col)):
            val = _eval_matrix(dga.diff[g], point, scalars, prime, dim,
                               bank=bank, bank_arr=bank_arr)
            bank.add(("d", g), val)
        bank_arr = bank.array()
        for g in dga.generators:
            r = _differential_at(dga, dga.diff[g], bank, bank_arr,
                                 scalars, prime, dim)
            if r.any() and g not in failures:
                failures.append(g)
    return failures


def _differential_at(dga, p: NCPoly, bank: _Bank, bank_arr, scalars,
                     prime: int, dim: int):
    """Evaluate d(p) at the point without expanding it symbolically: each
    Leibniz summand is the word with one letter swapped for the value of
    its differential."""
    items = []
    for (word, base), coeff in p.terms.items():
        hot = [pos for pos, g in enumerate(word)
               if not dga.diff[g].is_zero()]
        if not hot:
            continue
        c = coeff * _base_unit(base, scalars, prime) % prime
        ids = [bank.ids[g] for g in word]
        sign = 1
        nxt = 0
        for pos, g in enumerate(word):
            if nxt < len(hot) and hot[nxt] == pos:
                swapped = list(ids)
                swapped[pos] = bank.ids[("d", g)]
                items.append((sign * c, swapped))
                nxt += 1
            if g.degree % 2:
                sign = -sign
    return _prod_sum(items, bank_arr, prime, dim)


def verify_phi_factorization_sampled(b: BraidWord, seed: int = 0,
                                     trials: int = 2) -> list[str]:
    """The factorization identities of verify_phi_factorization, checked
    by evaluation at random matrices instead of symbolic expansion."""
    import numpy as np
    prime = _SAMPLE_PRIME
    n = b.strands
    m = structured_matrices(b)
    phi_l, phi_r = phi_matrices(b)
    span_l = max(_word_span(e) for _, _, e in phi_l.entries())
    span_r = max(_word_span(e) for _, _, e in phi_r.entries())
    dim = _sample_dim(max(span_l + 1 + span_r, _phi_degree_bound(b)))
    rng = random.Random(seed)
    failures = []
    for _ in range(trials):
        point = {gen("a", i, j): _rand_matrix(rng, dim, prime)
                 for i in range(1, n + 1) for j in range(1, n + 1) if i != j}
        scalars = tuple(rng.randrange(1, prime) for _ in range(4))
        phi_pt = _phi_point(b, point, scalars, prime, dim)
        l_val = [[_eval_matrix(phi_l.at(i, j), point, scalars, prime, dim)
                  for j in range(1, n + 1)] for i in range(1, n + 1)]
        r_val = [[_eval_matrix(phi_r.at(i, j), point, scalars, prime, dim)
                  for j in range(1, n + 1)] for i in range(1, n + 1)]
        for name, M in (("A_lower", m.A_lower), ("A_upper", m.A_upper),
                        ("Ahat", m.Ahat), ("Acheck", m.Acheck)):
            mid = [[_eval_matrix(M.at(i, j), point, scalars, prime, dim)
                    for j in range(1, n + 1)] for i in range(1, n + 1)]
            left = [[sum(l_val[i][k] @ mid[k][j] % prime
                         for k in range(n)) % prime
                     for j in range(n)] for i in range(n)]
            ok = True
            for i in range(n):
                for j in range(n):
                    rhs = sum(left[i][k] @ r_val[k][j] % prime
                              for k in range(n)) % prime
                    lhs = _eval_matrix(M.at(i + 1, j + 1), phi_pt,
                                       scalars, prime, dim)
                    if ((lhs - rhs) % prime).any():
                        ok = False
            if not ok and name not in failures:
                failures.append(name)
    return failures
