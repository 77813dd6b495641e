"""Numbered tableau, precedence order and neighbouring columns"""

from typing import List, Optional, Tuple

from loguru import logger

from app.models.tableau import (
    Composition,
    Diagram,
    NeighborPair,
    PrecedenceOrder,
    Tableau,
)


class TableauService:
    """Service for the box geometry every other stage consumes"""

    def build_tableau(self, composition: Composition) -> Tuple[Diagram, Tableau]:
        """
        Number the diagram down each column, columns left to right

        Args:
            composition: Column heights

        Returns:
            The diagram view and its numbering
        """
        columns: List[List[int]] = []
        start = 1
        for height in composition.parts:
            columns.append(list(range(start, start + height)))
            start += height
        logger.debug(f"Built tableau for {composition} with n={composition.n}")
        return Diagram(composition), Tableau(composition=composition, columns=columns)

    def precedence_order(self, diagram: Diagram, tableau: Tableau) -> PrecedenceOrder:
        sequence = [entry for column in reversed(tableau.columns) for entry in column]
        rank = {entry: position for position, entry in enumerate(sequence, start=1)}
        return PrecedenceOrder(sequence=sequence, rank=rank)

    def left_neighbor(self, diagram: Diagram, col: int) -> Optional[int]:
        return diagram.left_neighbor(col)

    def neighboring_pairs(self, diagram: Diagram) -> List[NeighborPair]:
        pairs = []
        for col in range(1, diagram.k + 1):
            left = diagram.left_neighbor(col)
            if left is not None:
                pairs.append(NeighborPair(left=left, right=col, height=diagram.height(col)))
        return pairs


# Singleton instance
tableau_service = TableauService()
