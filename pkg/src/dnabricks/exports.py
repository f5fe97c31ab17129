"""Sequence table exports: CSV, LaTeX and a plain-text report.

All exports are deterministic byte transforms of an assembled strand list.
CSV and LaTeX carry the same logical rows in the same canonical order.
"""

from __future__ import annotations

from .seqgen import Strand

CSV_HEADER = "strand_id,kind,orientation,length_nt,domains,sequence"

_LATEX_SPECIALS = {
    "&": r"\&",
    "%": r"\%",
    "$": r"\$",
    "#": r"\#",
    "_": r"\_",
    "{": r"\{",
    "}": r"\}",
    "~": r"\textasciitilde{}",
    "^": r"\textasciicircum{}",
    "\\": r"\textbackslash{}",
}


def _row(strand: Strand) -> list[str]:
    return [
        strand.strand_id,
        strand.kind.value,
        strand.orientation.value,
        str(len(strand.sequence)),
        ";".join(d.coord_label() for d in strand.domains),
        strand.sequence,
    ]


def export_csv(strands: list[Strand]) -> bytes:
    """One row per strand; no field ever contains a comma, so no quoting."""
    lines = [CSV_HEADER]
    lines.extend(",".join(_row(s)) for s in strands)
    return ("\n".join(lines) + "\n").encode("utf-8")


def _latex_escape(text: str) -> str:
    return "".join(_LATEX_SPECIALS.get(ch, ch) for ch in text)


def export_latex(strands: list[Strand]) -> bytes:
    """A compilable longtable document with the same columns as the CSV."""
    lines = [
        r"\documentclass{article}",
        r"\usepackage{longtable}",
        r"\usepackage[margin=1.5cm]{geometry}",
        r"\begin{document}",
        r"\section*{Strand sequences}",
        r"\begin{longtable}{llllll}",
        r"strand\_id & kind & orientation & length\_nt & domains & sequence \\",
        r"\hline",
        r"\endhead",
    ]
    for s in strands:
        cells = [_latex_escape(c) for c in _row(s)]
        cells[5] = r"\texttt{" + cells[5] + "}"
        lines.append(" & ".join(cells) + r" \\")
    lines.extend([r"\end{longtable}", r"\end{document}"])
    return ("\n".join(lines) + "\n").encode("utf-8")


def export_report(strands: list[Strand], header_lines: list[str]) -> bytes:
    """Plain-text report: summary header block plus the strand table."""
    lines = list(header_lines)
    lines.append("")
    lines.append(CSV_HEADER.replace(",", "  "))
    for s in strands:
        lines.append("  ".join(_row(s)))
    return ("\n".join(lines) + "\n").encode("utf-8")
