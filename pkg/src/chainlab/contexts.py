"""Word-problem contexts and soundness-first element certificates.

A context packages what we are willing to assume about a group when deciding
word equality:

* ``free``, ``free-abelian`` and ``raag`` contexts decide equality exactly via
  graph-group normal forms (the first two are the edgeless and complete
  special cases);
* a ``finite-quotient-battery`` context only probes words through finite
  permutation quotients, so it can *refute* equality but never prove it.

Certificates never overstate: a PROVEN verdict is backed by an exact
computation, everything else is labeled CONSISTENT or INCONCLUSIVE.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from .errors import UndecidableContextError
from .intmat import IntMatrix, smith_normal_form
from .words import (
    Presentation,
    RaagGraph,
    Word,
    complete_graph,
    free_graph,
    free_reduce,
    raag_normal_form,
    word,
)


class EqualityVerdict(enum.Enum):
    EQUAL = "equal-proven"
    UNEQUAL = "unequal-proven"
    CONSISTENT = "consistent"  # equal in every probe; not a proof


class CertificateStatus(enum.Enum):
    PROVEN_INFINITE = "proven-infinite"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class InfiniteOrderCertificate:
    status: CertificateStatus
    method: str
    detail: str

    @property
    def proven(self) -> bool:
        return self.status is CertificateStatus.PROVEN_INFINITE


class WordProblemContext:
    """Common interface; see the concrete contexts below."""

    kind: str
    presentation: Presentation
    decides_equality: bool

    def normal_form(self, w: Sequence[int]) -> Word:
        raise NotImplementedError

    def equal(self, u: Sequence[int], v: Sequence[int]) -> EqualityVerdict:
        raise NotImplementedError

    def is_trivial(self, w: Sequence[int]) -> Optional[bool]:
        """True/False when decided, None when this context cannot tell."""
        verdict = self.equal(w, ())
        if verdict is EqualityVerdict.EQUAL:
            return True
        if verdict is EqualityVerdict.UNEQUAL:
            return False
        return None


class RaagContext(WordProblemContext):
    """Exact word problem for a graph group via pile normal forms."""

    def __init__(self, graph: RaagGraph, names: Optional[Sequence[str]] = None, kind: str = "raag"):
        self.graph = graph
        self.presentation = graph.presentation(names)
        self.kind = kind
        self.decides_equality = True

    def normal_form(self, w: Sequence[int]) -> Word:
        return raag_normal_form(self.presentation.check_word(w), self.graph)

    def equal(self, u: Sequence[int], v: Sequence[int]) -> EqualityVerdict:
        if self.normal_form(u) == self.normal_form(v):
            return EqualityVerdict.EQUAL
        return EqualityVerdict.UNEQUAL

    def __repr__(self) -> str:
        return f"<{self.kind} context on {self.presentation.rank} generators>"


def free_context(rank: int, names: Optional[Sequence[str]] = None) -> RaagContext:
    return RaagContext(free_graph(rank), names, kind="free")


def free_abelian_context(rank: int, names: Optional[Sequence[str]] = None) -> RaagContext:
    return RaagContext(complete_graph(rank), names, kind="free-abelian")


def raag_context(graph: RaagGraph, names: Optional[Sequence[str]] = None) -> RaagContext:
    return RaagContext(graph, names)


class QuotientBatteryContext(WordProblemContext):
    """Probe words through finite quotients (permutation actions).

    Each probe must expose ``word_permutation(word) -> tuple``; coset tables
    do.  Inequality of images is a proof of inequality in the group; equality
    of all images is only consistency.  With no probes, the only sound
    equality proof is literal free-wise equality.
    """

    def __init__(self, presentation: Presentation, probes: Sequence[object] = ()):  #
        self.presentation = presentation
        self.probes = tuple(probes)
        self.kind = "finite-quotient-battery"
        self.decides_equality = False

    def normal_form(self, w: Sequence[int]) -> Word:
        raise UndecidableContextError(
            "a finite-quotient battery has no canonical normal form"
        )

    def equal(self, u: Sequence[int], v: Sequence[int]) -> EqualityVerdict:
        u = self.presentation.check_word(u)
        v = self.presentation.check_word(v)
        if free_reduce(u) == free_reduce(v):
            return EqualityVerdict.EQUAL
        for probe in self.probes:
            if probe.word_permutation(u) != probe.word_permutation(v):
                return EqualityVerdict.UNEQUAL
        return EqualityVerdict.CONSISTENT


def battery_context(presentation: Presentation, probes: Sequence[object] = ()) -> QuotientBatteryContext:
    return QuotientBatteryContext(presentation, probes)


# ------------------------------------------------------------- abelianization


def exponent_vector(w: Sequence[int], rank: int) -> tuple[int, ...]:
    v = [0] * rank
    for letter in word(w):
        if abs(letter) > rank:
            raise ValueError(f"letter {letter} out of range for rank {rank}")
        v[abs(letter) - 1] += 1 if letter > 0 else -1
    return tuple(v)


def relator_exponent_matrix(p: Presentation) -> IntMatrix:
    """Columns are the exponent vectors of the relators (rank x #relators)."""
    cols = [exponent_vector(r, p.rank) for r in p.relators]
    return IntMatrix(p.rank, len(cols), [[c[i] for c in cols] for i in range(p.rank)])


@lru_cache(maxsize=None)
def _relator_snf(p: Presentation):
    return smith_normal_form(relator_exponent_matrix(p), transforms=True)


@dataclass(frozen=True)
class AbelianizedImage:
    """Exponent vector of a word with its position relative to the relator lattice."""

    vector: tuple[int, ...]
    in_relator_lattice: bool          # image is trivial in the abelianization
    infinite_order_in_abelianization: bool  # image survives in the free part


def abelianized_image(w: Sequence[int], p: Presentation) -> AbelianizedImage:
    vec = exponent_vector(p.check_word(w), p.rank)
    res = _relator_snf(p)
    uv = [sum(res.U.data[i][k] * vec[k] for k in range(p.rank)) for i in range(p.rank)]
    factors = res.invariant_factors
    in_lattice = True
    in_saturation = True
    for i in range(p.rank):
        if i < len(factors):
            if uv[i] % factors[i] != 0:
                in_lattice = False
        elif uv[i] != 0:
            in_lattice = False
            in_saturation = False
    return AbelianizedImage(vec, in_lattice, not in_saturation)


def abelianization_structure(p: Presentation) -> tuple[int, tuple[int, ...]]:
    """(torsion-free rank, nontrivial torsion invariant factors) of the abelianization."""
    res = _relator_snf(p)
    torsion = tuple(f for f in res.invariant_factors if f > 1)
    return p.rank - res.rank, torsion


def torsion_basis_words(p: Presentation) -> tuple[Word, ...]:
    """Words whose abelianized images generate the torsion subgroup.

    For each invariant factor d > 1 of the abelianization, the corresponding
    basis vector pulled back through the Smith transform gives an explicit
    generator word (a product of generator powers).
    """
    res = _relator_snf(p)
    out = []
    for i, f in enumerate(res.invariant_factors):
        if f > 1:
            col = [res.U_inv.data[r][i] for r in range(p.rank)]
            w: list[int] = []
            for g, e in enumerate(col, start=1):
                w.extend([g if e > 0 else -g] * abs(e))
            out.append(tuple(w))
    return tuple(out)


# ------------------------------------------------------- order certificates


def infinite_order_certificate(w: Sequence[int], ctx: WordProblemContext) -> InfiniteOrderCertificate:
    """Certify that w has infinite order, or return INCONCLUSIVE.

    Soundness rules:

    * in a context with an exact word problem (graph groups are torsion-free),
      any nontrivial normal form is a proof;
    * otherwise the only tool is the abelianization: the image must survive in
      the *free part* (no positive multiple lies in the relator lattice).
      Surviving merely modulo the lattice is not enough -- the image could be
      a torsion class -- so that case stays INCONCLUSIVE.
    """
    p = ctx.presentation
    w = p.check_word(w)
    if ctx.decides_equality:
        nf = ctx.normal_form(w)
        if nf == ():
            return InfiniteOrderCertificate(
                CertificateStatus.INCONCLUSIVE, "normal-form", "trivial element"
            )
        return InfiniteOrderCertificate(
            CertificateStatus.PROVEN_INFINITE,
            "graph-group-normal-form",
            f"nontrivial normal form {nf} in a torsion-free group",
        )
    img = abelianized_image(w, p)
    if img.infinite_order_in_abelianization:
        return InfiniteOrderCertificate(
            CertificateStatus.PROVEN_INFINITE,
            "abelianization-free-part",
            f"exponent vector {img.vector} survives in the free part of the abelianization",
        )
    detail = "exponent vector lies in the saturation of the relator lattice"
    if free_reduce(w) == ():
        detail = "trivial element"
    return InfiniteOrderCertificate(CertificateStatus.INCONCLUSIVE, "abelianization-free-part", detail)
