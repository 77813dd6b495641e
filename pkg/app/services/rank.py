"""Exact rank of the adjoint tangent map over a prime field"""

from typing import Dict, List, Optional, Tuple

import numpy as np
from loguru import logger
from sympy import isprime

from app.config import settings
from app.exceptions import RankPreconditionError
from app.models.lines import WeierstrassSection
from app.models.tableau import Composition
from app.models.verification import RankCertificate

# Sparse matrix: (row, col, coefficient) triples
Sparse = List[Tuple[int, int, int]]


def rank_mod_p(matrix: np.ndarray, p: int) -> int:
    """Rank over F_p of an object-dtype integer matrix, by row reduction."""
    A = matrix % p
    rows, cols = A.shape
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        nonzero = np.flatnonzero(A[rank:, c])
        if nonzero.size == 0:
            continue
        pivot = rank + int(nonzero[0])
        if pivot != rank:
            A[[rank, pivot]] = A[[pivot, rank]]
        A[rank] = A[rank] * pow(int(A[rank, c]), -1, p) % p
        # entries stay in [0, p) after every elimination step
        A[rank + 1 :] = (A[rank + 1 :] - np.outer(A[rank + 1 :, c], A[rank])) % p
        rank += 1
    return rank


class RankService:
    def blocks(self, composition: Composition) -> List[int]:
        """Block (column) index of each matrix index 1..n, as a 1-based lookup list."""
        return [0] + [col for col, h in enumerate(composition.parts, start=1) for _ in range(h)]

    def nilradical_coords(self, composition: Composition) -> List[Tuple[int, int]]:
        block = self.blocks(composition)
        n = composition.n
        return [
            (i, j)
            for i in range(1, n + 1)
            for j in range(1, n + 1)
            if block[i] < block[j]
        ]

    def dimensions(self, composition: Composition) -> Tuple[int, int]:
        """(dim m, dim p') without building either basis."""
        n = composition.n
        squares = sum(h * h for h in composition.parts)
        dim_m = (n * n - squares) // 2
        return dim_m, dim_m + squares - composition.k

    def within_cap(self, composition: Composition) -> bool:
        dim_m, dim_p = self.dimensions(composition)
        return dim_m * dim_p <= settings.rank_max_cells

    def derived_parabolic_basis(self, composition: Composition) -> List[Sparse]:
        """Strictly upper block part, off-diagonal block entries, trace-zero diagonal differences."""
        block = self.blocks(composition)
        n = composition.n
        basis: List[Sparse] = []
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i != j and block[i] <= block[j]:
                    basis.append([(i, j, 1)])
        for i in range(1, n):
            if block[i] == block[i + 1]:
                basis.append([(i, i, 1), (i + 1, i + 1, -1)])
        return basis

    def tangent_matrix(
        self,
        basis: List[Sparse],
        m_coords: List[Tuple[int, int]],
        x: Dict[Tuple[int, int], int],
    ) -> np.ndarray:
        """Rows are [p, x] = px - xp in nilradical coordinates, unreduced."""
        index = {coord: pos for pos, coord in enumerate(m_coords)}
        by_row: Dict[int, List[Tuple[int, int]]] = {}
        by_col: Dict[int, List[Tuple[int, int]]] = {}
        for (i, j), value in x.items():
            by_row.setdefault(i, []).append((j, value))
            by_col.setdefault(j, []).append((i, value))

        A = np.zeros((len(basis), len(m_coords)), dtype=object)
        for r, element in enumerate(basis):
            for a, b, coef in element:
                # E_ab x puts row b of x into row a; x E_ab puts column a of x into column b
                for j, value in by_row.get(b, []):
                    A[r, index[(a, j)]] += coef * value
                for i, value in by_col.get(a, []):
                    A[r, index[(i, b)]] -= coef * value
        return A

    def rank_check(
        self,
        composition: Composition,
        section: WeierstrassSection,
        trials: Optional[int] = None,
        prime: Optional[int] = None,
        seed: Optional[int] = None,
    ) -> RankCertificate:
        """
        Sample points of e+V and measure the codimension of their tangent orbit

        Args:
            composition: Block sizes of the parabolic
            section: e and V coordinates
            trials: Sample count, default from settings
            prime: Field modulus, default 2^61 - 1
            seed: Random seed, default from settings (RANK_SEED)

        Returns:
            Certificate with the rank at each sample
        """
        trials = settings.rank_trials if trials is None else trials
        prime = settings.rank_prime if prime is None else prime
        seed = settings.rank_seed if seed is None else seed
        n = composition.n
        if trials < 1:
            raise RankPreconditionError(f"trials must be at least 1, got {trials}")
        if prime <= n * n or prime >= 2**63 or not isprime(prime):
            raise RankPreconditionError(
                f"modulus {prime} must be a prime above n^2 = {n * n} and below 2^63"
            )
        if not self.within_cap(composition):
            dim_m, dim_p = self.dimensions(composition)
            raise RankPreconditionError(
                f"tangent matrix {dim_p} x {dim_m} exceeds rank_max_cells = {settings.rank_max_cells}"
            )
        # one invariant generator per pair of neighbouring columns
        expected_defect = composition.k - len(set(composition.parts))

        m_coords = self.nilradical_coords(composition)
        basis = self.derived_parabolic_basis(composition)
        rng = np.random.default_rng(seed)

        ranks: List[int] = []
        samples: List[Dict[str, int]] = []
        for _ in range(trials):
            coefficients = [int(a) for a in rng.integers(1, prime, size=len(section.v_coords))]
            x: Dict[Tuple[int, int], int] = {coord: 1 for coord in section.e_coords}
            for coord, a in zip(section.v_coords, coefficients):
                x[coord] = (x.get(coord, 0) + a) % prime
            A = self.tangent_matrix(basis, m_coords, x)
            rank = rank_mod_p(A, prime) if A.size else 0
            ranks.append(rank)
            samples.append({f"{i},{j}": a for (i, j), a in zip(section.v_coords, coefficients)})

        certificate = RankCertificate(
            composition=list(composition.parts),
            prime=prime,
            seed=seed,
            trials=trials,
            dim_m=len(m_coords),
            dim_p=len(basis),
            ranks=ranks,
            expected_defect=expected_defect,
            samples=samples,
        )
        if not certificate.passed:
            logger.warning(
                f"Rank defect {certificate.defects} differs from {expected_defect} for {composition}"
            )
        return certificate


# Singleton instance
rank_service = RankService()
