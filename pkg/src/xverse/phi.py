"""The representation of the braid group on the degree-0 part of the free
algebra, and the left/right matrices extracted from the extra-strand trick.

For a single positive generator sigma_k the images on the a-generators are

    a_ki     -> -a_{k+1,i} - a_{k+1,k} a_{ki}      (i != k, k+1)
    a_ik     -> -a_{i,k+1} - a_{ik} a_{k,k+1}      (i != k, k+1)
    a_{k+1,i} -> a_{ki},   a_{i,k+1} -> a_{ik}
    a_{k,k+1} -> a_{k+1,k},  a_{k+1,k} -> a_{k,k+1}

and everything else is fixed.  The inverse images are hard-coded closed
forms (solved once from the above; the round-trip tests pin them).

Composition convention: for a word B = l1 l2 ... lm the automorphism is
phi_B = phi_{l1} o phi_{l2} o ... o phi_{lm}, so a polynomial is rewritten
letter by letter starting from the last letter.  This is the convention
under which the chain rules

    PhiL_{B1 B2} = PhiL_{B2}(phi_{B1} A) . PhiL_{B1}
    PhiR_{B1 B2} = PhiR_{B1} . PhiR_{B2}(phi_{B1} A)

hold in the stated form.
"""

from __future__ import annotations

from .braid import BraidWord, braid_transform
from .ncpoly import GenMatrix, Generator, NCPoly, gen


class PhiStructureError(RuntimeError):
    """The extra-strand extraction found a malformed word; implementation bug."""


def _a(i: int, j: int) -> NCPoly:
    return NCPoly.generator("a", i, j)


def sigma_images(k: int, n: int, inverse: bool = False) -> dict[Generator, NCPoly]:
    """Images of the affected a-generators under phi_{sigma_k} (or its
    inverse) acting on n strands.  Unlisted generators are fixed."""
    if not 1 <= k <= n - 1:
        raise ValueError(f"sigma_{k} does not act on {n} strands")
    images: dict[Generator, NCPoly] = {}
    others = [i for i in range(1, n + 1) if i not in (k, k + 1)]
    if not inverse:
        for i in others:
            images[gen("a", k, i)] = -_a(k + 1, i) - _a(k + 1, k) * _a(k, i)
            images[gen("a", i, k)] = -_a(i, k + 1) - _a(i, k) * _a(k, k + 1)
            images[gen("a", k + 1, i)] = _a(k, i)
            images[gen("a", i, k + 1)] = _a(i, k)
        images[gen("a", k, k + 1)] = _a(k + 1, k)
        images[gen("a", k + 1, k)] = _a(k, k + 1)
    else:
        for i in others:
            images[gen("a", k, i)] = _a(k + 1, i)
            images[gen("a", i, k)] = _a(i, k + 1)
            images[gen("a", k + 1, i)] = -_a(k, i) - _a(k, k + 1) * _a(k + 1, i)
            images[gen("a", i, k + 1)] = -_a(i, k) - _a(i, k + 1) * _a(k + 1, k)
        images[gen("a", k, k + 1)] = _a(k + 1, k)
        images[gen("a", k + 1, k)] = _a(k, k + 1)
    return images


def _check_a_only(p: NCPoly, n: int) -> None:
    for g in p.generators():
        if g.family != "a" or g.row > n or g.col > n:
            raise ValueError(f"phi acts on a-generators with indices <= {n}, got {g}")


def apply_phi(b: BraidWord, p: NCPoly) -> NCPoly:
    """Apply phi_B to a degree-0 polynomial."""
    _check_a_only(p, b.strands)
    n = b.strands
    for letter in reversed(b.letters):
        p = p.substitute(sigma_images(abs(letter), n, inverse=letter < 0))
    return p


def phi_matrices(b: BraidWord) -> tuple[GenMatrix, GenMatrix]:
    """The matrices (PhiL, PhiR) of B, via the extension to n+1 strands:

        phi_B^ext(a_{i,n+1}) = sum_l (PhiL)_{il} a_{l,n+1}
        phi_B^ext(a_{n+1,i}) = sum_l a_{n+1,l} (PhiR)_{li}
    """
    n = b.strands
    ext = BraidWord(n + 1, b.letters)
    phi_l = GenMatrix(n)
    phi_r = GenMatrix(n)
    for i in range(1, n + 1):
        img = apply_phi(ext, _a(i, n + 1))
        for (word, base), coeff in img.terms.items():
            marked = [g for g in word if g.row == n + 1 or g.col == n + 1]
            if len(marked) != 1 or word[-1] != marked[0] or marked[0].col != n + 1:
                raise PhiStructureError(f"bad word in phi^ext(a_{i},{n+1}): {word}")
            ell = marked[0].row
            phi_l.set(i, ell, phi_l.at(i, ell) + NCPoly({(word[:-1], base): coeff}))
        img = apply_phi(ext, _a(n + 1, i))
        for (word, base), coeff in img.terms.items():
            marked = [g for g in word if g.row == n + 1 or g.col == n + 1]
            if len(marked) != 1 or word[0] != marked[0] or marked[0].row != n + 1:
                raise PhiStructureError(f"bad word in phi^ext(a_{n+1},{i}): {word}")
            ell = marked[0].col
            phi_r.set(ell, i, phi_r.at(ell, i) + NCPoly({(word[1:], base): coeff}))
    for i, j, e in phi_l.entries():
        _check_a_only(e, n)
    for i, j, e in phi_r.entries():
        _check_a_only(e, n)
    return phi_l, phi_r


def verify_chain_rules(b: BraidWord, cut: int | None = None) -> list[str]:
    """Check the chain rules and matrix inverses on a factorization
    b = b1 b2 (cut at the middle by default).  Returns failure labels;
    empty means every identity holds."""
    n = b.strands
    if cut is None:
        cut = len(b.letters) // 2
    b1 = BraidWord(n, b.letters[:cut])
    b2 = BraidWord(n, b.letters[cut:])
    phi_l, phi_r = phi_matrices(b)
    l1, r1 = phi_matrices(b1)
    l2, r2 = phi_matrices(b2)
    images = {gen("a", i, j): apply_phi(b1, _a(i, j))
              for i in range(1, n + 1) for j in range(1, n + 1) if i != j}
    failures = []
    if l2.substitute(images) @ l1 != phi_l:
        failures.append("left chain rule")
    if r1 @ r2.substitute(images) != phi_r:
        failures.append("right chain rule")
    ident = GenMatrix.identity(n)
    linv, rinv = phi_matrix_inverses(b)
    if linv @ phi_l != ident or phi_l @ linv != ident:
        failures.append("left inverse")
    if rinv @ phi_r != ident or phi_r @ rinv != ident:
        failures.append("right inverse")
    return failures


def phi_matrix_inverses(b: BraidWord) -> tuple[GenMatrix, GenMatrix]:
    """Inverses of PhiL_B, PhiR_B, as PhiL_{B^{-1}} and PhiR_{B^{-1}} with
    every a_{ij} replaced by phi_B(a_{ij})."""
    n = b.strands
    linv, rinv = phi_matrices(braid_transform(b, "inverse"))
    images: dict[Generator, NCPoly] = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j:
                images[gen("a", i, j)] = apply_phi(b, _a(i, j))
    return linv.substitute(images), rinv.substitute(images)
