"""ASCII, SVG and TikZ renderings of the tableau, the composition tableau and the matrix pattern"""

from enum import Enum
from typing import Dict, List, Optional, Tuple

from app.models.lines import CellLabel, LineLabel
from app.services.analysis import Analysis
from app.services.extraction import extraction_service


class RenderFormat(str, Enum):
    ASCII = "ascii"
    SVG = "svg"
    TIKZ = "tikz"


class RenderStyle(str, Enum):
    TABLEAU = "t"
    EXTENDED = "tinf"
    MATRIX = "matrix"


MATRIX_GLYPHS = {
    CellLabel.ZERO: ".",
    CellLabel.ONE: "1",
    CellLabel.STAR: "*",
    CellLabel.ONE_VS: "v",
}


class SvgCanvas:
    CELL = 36
    GAP = 28
    MARGIN = 24

    def __init__(self):
        self.svg = ""

    def header(self, width: float, height: float) -> None:
        self.svg += f"""<?xml version="1.0" standalone="no"?>
<!DOCTYPE svg PUBLIC "-//W3C//DTD SVG 1.1//EN" "http://www.w3.org/Graphics/SVG/1.1/DTD/svg11.dtd">
<svg version="1.1" width="{width:.0f}" height="{height:.0f}" viewBox="0 0 {width:.0f} {height:.0f}" xmlns="http://www.w3.org/2000/svg">
<defs><marker id="arrow" markerWidth="8" markerHeight="8" refX="7" refY="4" orient="auto"><path d="M0,0 L8,4 L0,8 z" fill="black"/></marker></defs>
"""

    def rectangle(self, x: float, y: float, size: float, fill: str = "white", extra: str = "") -> None:
        self.svg += (
            f'<rect x="{x:.1f}" y="{y:.1f}" width="{size:.1f}" height="{size:.1f}" '
            f'fill="{fill}" stroke="black" {extra}/>\n'
        )

    def text(self, x: float, y: float, string: str, extra: str = "") -> None:
        self.svg += f'<text x="{x:.1f}" y="{y:.1f}" text-anchor="middle" dominant-baseline="central" {extra}>{string}</text>\n'

    def polyline(self, points: List[Tuple[float, float]], css_class: str, label: str, dash: str = "") -> None:
        coords = " ".join(f"{x:.1f},{y:.1f}" for x, y in points)
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        self.svg += (
            f'<polyline class="{css_class}" points="{coords}" fill="none" stroke="black"'
            f'{dash_attr} marker-end="url(#arrow)"><title>{label}</title></polyline>\n'
        )
        (x1, y1), (x2, y2) = points[0], points[-1]
        self.text((x1 + x2) / 2, (y1 + y2) / 2 - 6, label, 'font-size="11"')

    def line(self, x1: float, y1: float, x2: float, y2: float, extra: str = "") -> None:
        self.svg += f'<line x1="{x1:.1f}" y1="{y1:.1f}" x2="{x2:.1f}" y2="{y2:.1f}" stroke="black" {extra}/>\n'

    def get_svg(self) -> str:
        return f"{self.svg}</svg>\n"


class TikzPicture:
    STYLES = (
        "x=1.4cm, y=-0.9cm, "
        "cell/.style={draw, minimum size=0.8cm}, "
        "repeat/.style={draw, minimum size=0.8cm, text=blue}, "
        "lineone/.style={->}, "
        "linestar/.style={->, dashed}, "
        "linevs/.style={dotted, thick, red}, "
        "block/.style={thin, gray}"
    )

    def __init__(self):
        self.commands: List[str] = []

    def node(self, style: str, x: float, y: float, text: str) -> None:
        self.commands.append(f"  \\node[{style}] at ({x:.2f},{y:.2f}) {{{text}}};")

    def draw(self, style: str, start: Tuple[float, float], end: Tuple[float, float], label: Optional[str] = None) -> None:
        node = f" node[midway, above] {{${label}$}}" if label else ""
        self.commands.append(
            f"  \\draw[{style}] ({start[0]:.2f},{start[1]:.2f}) -- ({end[0]:.2f},{end[1]:.2f}){node};"
        )

    def emit(self) -> str:
        body = "\n".join(self.commands)
        return f"\\begin{{tikzpicture}}[{self.STYLES}]\n{body}\n\\end{{tikzpicture}}\n"


class RenderService:
    """Emitters reproducing the three figure layouts"""

    def render(
        self,
        analysis: Analysis,
        fmt: RenderFormat = RenderFormat.ASCII,
        style: RenderStyle = RenderStyle.TABLEAU,
        include_vs: bool = True,
    ) -> str:
        emitter = {
            RenderFormat.ASCII: self._ascii,
            RenderFormat.SVG: self._svg,
            RenderFormat.TIKZ: self._tikz,
        }[fmt]
        return emitter(analysis, style, include_vs)

    # ---- shared geometry ----------------------------------------------

    def _cells(self, analysis: Analysis, style: RenderStyle) -> List[Tuple[int, int, int, bool]]:
        """(row, col, entry, repeat) for every glyph of the tableau styles."""
        if style == RenderStyle.TABLEAU:
            return [
                (row, col, entry, False)
                for col, column in enumerate(analysis.tableau.columns, start=1)
                for row, entry in enumerate(column, start=1)
            ]
        ext = analysis.extended
        return [
            (row, col, entry, ext.is_repeat(row, col))
            for row in range(1, ext.rows + 1)
            for col in range(1, ext.k + 1)
            if (entry := ext.cell(row, col)) is not None
        ]

    def _segments(
        self, analysis: Analysis, style: RenderStyle, include_vs: bool
    ) -> List[Tuple[str, Tuple[int, int], Tuple[int, int], str]]:
        """(kind, from cell, to cell, label); kind is one, star or vs."""
        segments = []
        ext, tableau = analysis.extended, analysis.tableau
        for line in analysis.lines.lines:
            right = line.right_box.as_tuple()
            if style == RenderStyle.TABLEAU:
                segments.append(
                    ("one" if line.label == LineLabel.ONE else "star", line.left_box.as_tuple(), right, line.label.value)
                )
            elif line.label == LineLabel.ONE:
                segments.append(("one", ext.fin(line.left_entry).as_tuple(), right, "1"))
            else:
                # drop from the step to the cell the entry descends into
                segments.append(("star", right, (right[0] + 1, right[1]), "*"))
        if style == RenderStyle.EXTENDED and include_vs:
            for j, l in analysis.section.evs_extras:
                segments.append(
                    ("vs", tableau.box_of(j).as_tuple(), tableau.box_of(l).as_tuple(), "1")
                )
        return segments

    # ---- ascii ----------------------------------------------------------

    def _ascii(self, analysis: Analysis, style: RenderStyle, include_vs: bool) -> str:
        if style == RenderStyle.MATRIX:
            return self._ascii_matrix(analysis, include_vs)
        cells = self._cells(analysis, style)
        width = len(str(analysis.composition.n)) + 2
        rows = max(row for row, _, _, _ in cells)
        grid: Dict[Tuple[int, int], str] = {
            (row, col): (f"({entry})" if repeat else f" {entry} ") for row, col, entry, repeat in cells
        }
        out = []
        for row in range(1, rows + 1):
            out.append(
                "".join(grid.get((row, col), "").rjust(width + 1) for col in range(1, analysis.composition.k + 1))
            )
        out.append("")
        for label, name in ((LineLabel.ONE, "1-lines"), (LineLabel.STAR, "*-lines")):
            pairs = " ".join(f"({i},{j})" for i, j in analysis.lines.pairs(label))
            out.append(f"{name}: {pairs}")
        if style == RenderStyle.EXTENDED and include_vs:
            extras = " ".join(f"({j},{l})" for j, l in analysis.section.evs_extras)
            out.append(f"VS extras: {extras}")
        return "\n".join(out) + "\n"

    def _ascii_matrix(self, analysis: Analysis, include_vs: bool) -> str:
        pattern = extraction_service.matrix_pattern(analysis.section, analysis.composition, include_vs)
        boundaries = set()
        total = 0
        for size in pattern.blocks[:-1]:
            total += size
            boundaries.add(total)
        out = []
        for i, row in enumerate(pattern.cells, start=1):
            text = ""
            for j, label in enumerate(row, start=1):
                text += MATRIX_GLYPHS[label] + ("|" if j in boundaries else " ")
            out.append(text.rstrip())
            if i in boundaries:
                out.append("-" * len(text.rstrip()))
        return "\n".join(out) + "\n"

    # ---- svg ------------------------------------------------------------

    def _svg(self, analysis: Analysis, style: RenderStyle, include_vs: bool) -> str:
        canvas = SvgCanvas()
        if style == RenderStyle.MATRIX:
            return self._svg_matrix(canvas, analysis, include_vs)
        pitch = canvas.CELL + canvas.GAP
        cells = self._cells(analysis, style)
        rows = max(row for row, _, _, _ in cells)

        def corner(row: int, col: int) -> Tuple[float, float]:
            return canvas.MARGIN + (col - 1) * pitch, canvas.MARGIN + (row - 1) * canvas.CELL

        canvas.header(
            2 * canvas.MARGIN + analysis.composition.k * pitch,
            2 * canvas.MARGIN + rows * canvas.CELL + canvas.CELL,
        )
        for row, col, entry, repeat in cells:
            x, y = corner(row, col)
            canvas.rectangle(x, y, canvas.CELL, "#dde8ff" if repeat else "white")
            canvas.text(x + canvas.CELL / 2, y + canvas.CELL / 2, str(entry))
        half = canvas.CELL / 2
        for kind, start, end, label in self._segments(analysis, style, include_vs):
            sx, sy = corner(*start)
            ex, ey = corner(*end)
            if kind == "star" and style == RenderStyle.EXTENDED:
                points = [(sx + half, sy + half + 8), (ex + half, ey + half - 8)]
            else:
                points = [(sx + canvas.CELL, sy + half), (ex, ey + half)]
            dash = {"one": "", "star": "5,3", "vs": "1,3"}[kind]
            canvas.polyline(points, f"line{kind}", label, dash)
        return canvas.get_svg()

    def _svg_matrix(self, canvas: SvgCanvas, analysis: Analysis, include_vs: bool) -> str:
        pattern = extraction_service.matrix_pattern(analysis.section, analysis.composition, include_vs)
        size = 18
        side = 2 * canvas.MARGIN + pattern.n * size
        canvas.header(side, side)
        for i, j, label in pattern.nonzero():
            x = canvas.MARGIN + (j - 1) * size
            y = canvas.MARGIN + (i - 1) * size
            fill = "red" if label == CellLabel.ONE_VS else "black"
            canvas.text(x + size / 2, y + size / 2, "1" if label != CellLabel.STAR else "*", f'fill="{fill}"')
        offset = 0
        for block in pattern.blocks:
            x = canvas.MARGIN + offset * size
            canvas.rectangle(x, x, block * size, "none", 'stroke-width="1.5"')
            offset += block
        return canvas.get_svg()

    # ---- tikz -----------------------------------------------------------

    def _tikz(self, analysis: Analysis, style: RenderStyle, include_vs: bool) -> str:
        picture = TikzPicture()
        if style == RenderStyle.MATRIX:
            pattern = extraction_service.matrix_pattern(analysis.section, analysis.composition, include_vs)
            for i, j, label in pattern.nonzero():
                text = {CellLabel.ONE: "1", CellLabel.STAR: "$*$", CellLabel.ONE_VS: "\\textcolor{red}{\\textbf{1}}"}[label]
                picture.node("", j * 0.4, i * 0.7, text)
            offset = 0
            for block in pattern.blocks:
                low, high = offset * 0.4 + 0.2, (offset + block) * 0.4 + 0.2
                picture.draw("block", (low, offset * 0.7 + 0.35), (high, offset * 0.7 + 0.35))
                offset += block
            return picture.emit()

        for row, col, entry, repeat in self._cells(analysis, style):
            picture.node("repeat" if repeat else "cell", col, row, str(entry))
        for kind, start, end, label in self._segments(analysis, style, include_vs):
            if kind == "star" and style == RenderStyle.EXTENDED:
                a, b = (start[1], start[0] + 0.3), (end[1], end[0] - 0.3)
            else:
                a, b = (start[1] + 0.3, start[0]), (end[1] - 0.3, end[0])
            picture.draw(f"line{kind}", a, b, {"one": "1", "star": "*", "vs": None}[kind])
        return picture.emit()


# Singleton instance
render_service = RenderService()
