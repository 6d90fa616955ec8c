"""
g_determinant_trick.py

Constructive determinant trick. Given a reduction Q of I, block ideals I_n
(generated by x_1..x_v, x_i sitting in block n_i) with

    I I_n  inside  I^{n+1} + sum_l Q^{max(n+1-l, 0)} I_l

and elements a_1..a_v of I, write every a_i x_i as r_i + sum_j c_ij x_j with
r_i in I^{n_i+1} and c_ij in Q^{max(n_i+1-n_j, 0)}, set b_ij = a_i [i=j] - c_ij
and delta = det(b_ij). Then

    sigma = a_1 ... a_v - delta  lies in  Q I^{v-1}
    delta x_i                    lies in  I^{v+n_i}

Entry (i, j) carries the grading offset n_i - n_j + 1; every term of the
cofactor expansion must have offsets summing to v.
"""

import logging
import random
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .a_exponent_core import ExponentVector, graded_lex_key, semigroup_subtract
from .b_ideal_engine import (
    MonomialIdeal,
    PowerLadder,
    RingElement,
    _ideal,
    element_in_ideal,
    ideal_contains_monomial,
    ideal_leq,
    ideal_product,
    ideal_sum,
    one_element,
    zero_element,
)
from .e_filtrations import BoundInstance, compute_v
from .helpers import CertificateError, HypothesisNotMet

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DeterminantCertificate:
    elements: Tuple[RingElement, ...]
    generators: Tuple[ExponentVector, ...]
    block_indices: Tuple[int, ...]
    witnesses: Tuple[Tuple[RingElement, ...], ...]
    matrix: Tuple[Tuple[RingElement, ...], ...]
    offsets: Tuple[Tuple[int, ...], ...]
    delta: RingElement
    sigma: RingElement

    @property
    def v(self) -> int:
        return len(self.generators)

    def to_report(self) -> dict:
        return {
            "v": self.v,
            "generators": [list(x) for x in self.generators],
            "blockIndices": list(self.block_indices),
            "elements": [a.to_config() for a in self.elements],
            "witnesses": [[c.to_config() for c in row] for row in self.witnesses],
            "delta": self.delta.to_config(),
            "sigma": self.sigma.to_config(),
        }


def _block_hypothesis(I: MonomialIdeal, Q: MonomialIdeal, blocks: Dict[int, MonomialIdeal],
                      i_powers: PowerLadder, q_powers: PowerLadder) -> None:
    for n, block in blocks.items():
        target = i_powers[n + 1]
        for ell, other in blocks.items():
            target = ideal_sum(target, ideal_product(q_powers[max(n + 1 - ell, 0)], other))
        if not ideal_leq(ideal_product(I, block), target):
            raise HypothesisNotMet(f"I I_{n} is not inside I^{n + 1} + sum Q^(n+1-l) I_l")


def _decompose(A, product: RingElement, n_i: int, generators, block_indices, i_powers: PowerLadder,
               q_powers: PowerLadder) -> List[Dict[ExponentVector, int]]:
    """Per-column coefficient maps c_ij for one row; the I^{n_i+1} part is dropped."""
    v = len(generators)
    columns: List[Dict[ExponentVector, int]] = [{} for _ in range(v)]
    order = sorted(range(v), key=lambda j: (-block_indices[j], graded_lex_key(generators[j])))
    for u, coeff in product.terms:
        if ideal_contains_monomial(i_powers[n_i + 1], u):
            continue
        for j in order:
            rest = semigroup_subtract(A, u, generators[j])
            if rest is None:
                continue
            if ideal_contains_monomial(q_powers[max(n_i + 1 - block_indices[j], 0)], rest):
                columns[j][rest] = columns[j].get(rest, 0) + coeff
                break
        else:
            raise CertificateError(f"monomial {list(u)} of a_i x_i has no decomposition against the blocks")
    return columns


def _determinant(matrix, offsets, v: int) -> RingElement:
    A = matrix[0][0].ambient

    def expand(row: int, columns: Tuple[int, ...], weight: int) -> RingElement:
        if row == v:
            if weight != v:
                raise CertificateError(f"cofactor term has grading {weight}, expected {v}")
            return one_element(A)
        total = zero_element(A)
        for position, col in enumerate(columns):
            entry = matrix[row][col]
            if entry.is_zero:
                continue
            minor = expand(row + 1, columns[:position] + columns[position + 1:], weight + offsets[row][col])
            term = entry * minor
            total = total - term if position % 2 else total + term
        return total

    return expand(0, tuple(range(v)), 0)


def determinant_trick(Q: MonomialIdeal, I: MonomialIdeal, blocks: Mapping[int, Sequence[ExponentVector]],
                      elements: Sequence[RingElement]) -> DeterminantCertificate:
    A = I.ambient
    block_ideals = {n: _ideal(A, gens) for n, gens in blocks.items() if gens}
    if any(n < 1 for n in block_ideals):
        raise HypothesisNotMet("block indices start at 1")
    generators: List[ExponentVector] = []
    block_indices: List[int] = []
    for n in sorted(block_ideals):
        for x in block_ideals[n].gens:
            generators.append(x)
            block_indices.append(n)
    v = len(generators)
    if v == 0:
        raise HypothesisNotMet("v = 0, there is nothing to certify")
    if len(elements) != v:
        raise HypothesisNotMet(f"need {v} elements a_i, got {len(elements)}")
    for a in elements:
        if not element_in_ideal(a, I):
            raise HypothesisNotMet(f"a_i = {a.to_config()} is not in I")
    i_powers, q_powers = PowerLadder(I), PowerLadder(Q)
    _block_hypothesis(I, Q, block_ideals, i_powers, q_powers)

    witnesses, matrix, offsets = [], [], []
    for i, (a, x, n_i) in enumerate(zip(elements, generators, block_indices)):
        product = a * RingElement.monomial(A, x)
        columns = _decompose(A, product, n_i, generators, block_indices, i_powers, q_powers)
        c_row = tuple(RingElement.from_terms(A, col) for col in columns)
        witnesses.append(c_row)
        matrix.append(tuple((a - c) if j == i else -c for j, c in enumerate(c_row)))
        offsets.append(tuple(n_i - n_j + 1 for n_j in block_indices))
    delta = _determinant(matrix, offsets, v)
    product = one_element(A)
    for a in elements:
        product = product * a
    certificate = DeterminantCertificate(
        tuple(elements), tuple(generators), tuple(block_indices), tuple(witnesses),
        tuple(matrix), tuple(tuple(r) for r in offsets), delta, product - delta)
    verify_certificate(certificate, Q, I, i_powers)
    logger.debug("determinant certificate with v = %d verified", v)
    return certificate


def verify_certificate(cert: DeterminantCertificate, Q: MonomialIdeal, I: MonomialIdeal,
                       i_powers: Optional[PowerLadder] = None) -> None:
    i_powers = i_powers or PowerLadder(I)
    A = I.ambient
    product = one_element(A)
    for a in cert.elements:
        product = product * a
    if cert.delta != product - cert.sigma:
        raise CertificateError("delta != a_1 ... a_v - sigma")
    if not element_in_ideal(cert.sigma, ideal_product(Q, i_powers[cert.v - 1])):
        raise CertificateError("sigma is not in Q I^(v-1)")
    for x, n in zip(cert.generators, cert.block_indices):
        if not element_in_ideal(cert.delta * RingElement.monomial(A, x), i_powers[cert.v + n]):
            raise CertificateError(f"delta x is not in I^{cert.v + n} for x = {list(x)}")


def certificate_for_instance(inst: BoundInstance, elements: Optional[Sequence[RingElement]] = None,
                             seed: int = 0) -> DeterminantCertificate:
    """Blocks from compute_v; without explicit elements, a_i are seeded picks among the generators of I."""
    vdata = compute_v(inst)
    blocks = vdata.block_generators()
    if elements is None:
        rng = random.Random(seed)
        elements = [RingElement.monomial(inst.ambient, rng.choice(inst.I.gens)) for _ in range(vdata.v)]
    return determinant_trick(inst.Q, inst.I, blocks, elements)
